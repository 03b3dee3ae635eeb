"""Associative algebras with a normal-form product.

An :class:`Element` is a finite linear combination of normal monomials.  The
owning :class:`Algebra` knows how to multiply two normal monomials.  Two
concrete families live here:

* :class:`PBWAlgebra` - ordered generators subject to commutation rules
  ``b a = a b + [b, a]`` for ``a < b``; monomials are weakly increasing tuples of
  generator ids.  Enveloping algebras and the Yangian derive from it.
* :class:`TensorAlgebra` - the tensor product of two algebras with
  componentwise multiplication.

Homomorphisms are generator-image tables extended multiplicatively
(:class:`HomMap`).
"""

from __future__ import annotations

import sys
from fractions import Fraction

from .scalars import Poly, is_scalar, norm, scalar_json, scalar_str

__all__ = [
    "Algebra",
    "Element",
    "HomMap",
    "PBWAlgebra",
    "TensorAlgebra",
    "commutator",
]

sys.setrecursionlimit(max(sys.getrecursionlimit(), 20000))


def _acc(d, key, c):
    s = d.get(key, 0) + c
    if type(s) is Fraction and s.denominator == 1:
        s = s.numerator
    if s:
        d[key] = s
    else:
        d.pop(key, None)


class Algebra:
    """Base class: subclasses implement :meth:`mul_mono` and printing hooks."""

    one_mono = ()

    def mul_mono(self, m1, m2):
        raise NotImplementedError

    def mono_str(self, m):
        return "*".join(map(str, m)) if m else "1"

    def mono_json(self, m):
        return list(m)

    def element(self, terms=None):
        return Element(self, terms or {})

    def one(self):
        return Element(self, {self.one_mono: 1})

    def zero(self):
        return Element(self, {})

    def scalar(self, c):
        c = norm(c)
        return Element(self, {self.one_mono: c} if c else {})

    def coerce(self, x):
        if isinstance(x, Element):
            if x.alg is not self:
                raise TypeError(f"carrier mismatch: {x.alg!r} vs {self!r}")
            return x
        if is_scalar(x):
            return self.scalar(x)
        raise TypeError(f"cannot coerce {type(x).__name__} into {self!r}")

    def mono_weight(self, m):
        return len(m)


class Element:
    """Linear combination of normal monomials with exact scalar coefficients."""

    __slots__ = ("alg", "terms")

    def __init__(self, alg, terms):
        self.alg = alg
        self.terms = terms

    # -- arithmetic -----------------------------------------------------
    def _other(self, other):
        if isinstance(other, Element):
            if other.alg is not self.alg:
                raise TypeError("carrier mismatch in algebra operation")
            return other
        if is_scalar(other):
            return self.alg.scalar(other)
        return None

    def __add__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        t = dict(self.terms)
        for m, c in o.terms.items():
            _acc(t, m, c)
        return Element(self.alg, t)

    __radd__ = __add__

    def __neg__(self):
        return Element(self.alg, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        t = dict(self.terms)
        for m, c in o.terms.items():
            _acc(t, m, -c)
        return Element(self.alg, t)

    def __rsub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return o - self

    def scale(self, c):
        c = norm(c)
        if not c:
            return Element(self.alg, {})
        if c == 1 and not isinstance(c, Poly):
            return self
        t = {}
        for m, a in self.terms.items():
            v = norm(a * c)
            if v:
                t[m] = v
        return Element(self.alg, t)

    def __mul__(self, other):
        if isinstance(other, Element):
            if other.alg is not self.alg:
                raise TypeError("carrier mismatch in algebra product")
            return self._mul(other)
        if is_scalar(other):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if is_scalar(other):
            return self.scale(other)
        return NotImplemented

    def __truediv__(self, other):
        if is_scalar(other) and not isinstance(other, Poly):
            return self.scale(Fraction(1) / other)
        return NotImplemented

    def __pow__(self, k):
        out = self.alg.one()
        for _ in range(k):
            out = out * self
        return out

    def _mul(self, other):
        alg = self.alg
        out = {}
        for m2, c2 in other.terms.items():
            for m1, c1 in self.terms.items():
                c = c1 * c2
                for m, c3 in alg.mul_mono(m1, m2).items():
                    _acc(out, m, c * c3)
        return Element(alg, out)

    # -- comparison -----------------------------------------------------
    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self.terms == o.terms

    __hash__ = None

    # -- inspection -----------------------------------------------------
    def coeff(self, m):
        return self.terms.get(m, 0)

    def constant(self):
        return self.terms.get(self.alg.one_mono, 0)

    def is_scalar(self):
        return all(m == self.alg.one_mono for m in self.terms)

    def map_coeffs(self, f):
        t = {}
        for m, c in self.terms.items():
            v = norm(f(c))
            if v:
                t[m] = v
        return Element(self.alg, t)

    def subs(self, mapping):
        """Substitute commuting parameters inside polynomial coefficients."""
        return self.map_coeffs(lambda c: c.subs(mapping) if isinstance(c, Poly) else c)

    def weight(self):
        w = self.alg.mono_weight
        return max((w(m) for m in self.terms), default=-1)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: (self.alg.mono_weight(t[0]), t[0]))

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.sorted_terms():
            ms = self.alg.mono_str(m)
            cs = scalar_str(c)
            if isinstance(c, Poly) and len(c.terms) > 1:
                cs = f"({cs})"
            if m == self.alg.one_mono:
                parts.append(cs)
            elif c == 1:
                parts.append(ms)
            elif c == -1:
                parts.append("-" + ms)
            else:
                parts.append(f"{cs}*{ms}")
        return " + ".join(parts).replace("+ -", "- ")

    def to_json(self):
        return {
            "monomials": [
                {"coeff": scalar_json(c), "factors": self.alg.mono_json(m)}
                for m, c in self.sorted_terms()
            ]
        }


def commutator(a, b):
    return a * b - b * a


class PBWAlgebra(Algebra):
    """Algebra on ordered generators ``0 < 1 < ...`` with commutation rules.

    Subclasses implement :meth:`bracket` returning ``[b, a]`` for generator
    ids ``b > a`` as a list of ``(word, coeff)`` pairs, where each word is any
    tuple of generator ids (not necessarily ordered).  Correctness requires
    the rules to come from a PBW-type presentation; the product then is the
    unique normal form.
    """

    def __init__(self):
        self._mg = {}
        self._br = {}

    def bracket(self, b, a):
        raise NotImplementedError

    def _bracket(self, b, a):
        key = (b, a)
        r = self._br.get(key)
        if r is None:
            r = self._br[key] = self.bracket(b, a)
        return r

    def gen(self, g):
        return Element(self, {(g,): 1})

    def mul_mono_gen(self, m, g):
        """Normal form of ``m * g`` for a normal monomial ``m``."""
        if not m or m[-1] <= g:
            return {m + (g,): 1}
        key = (m, g)
        r = self._mg.get(key)
        if r is not None:
            return r
        b = m[-1]
        prefix = m[:-1]
        out = {}
        # m g = prefix (g b + [b, g])
        for m1, c1 in self.mul_mono_gen(prefix, g).items():
            for m2, c2 in self.mul_mono_gen(m1, b).items():
                _acc(out, m2, c1 * c2)
        for word, c in self._bracket(b, g):
            for m2, c2 in self.mul_mono(prefix, word).items():
                _acc(out, m2, c * c2)
        self._mg[key] = out
        return out

    def mul_mono(self, m1, m2):
        if not m1:
            if not m2 or all(m2[i] <= m2[i + 1] for i in range(len(m2) - 1)):
                return {m2: 1}
        elif not m2:
            return {m1: 1}
        elif m1[-1] <= m2[0] and all(m2[i] <= m2[i + 1] for i in range(len(m2) - 1)):
            return {m1 + m2: 1}
        cur = {m1: 1}
        for g in m2:
            nxt = {}
            for m, c in cur.items():
                for m3, c3 in self.mul_mono_gen(m, g).items():
                    _acc(nxt, m3, c * c3)
            cur = nxt
        return cur

    def word(self, w, c=1):
        """Element given by an arbitrary (unordered) word of generator ids."""
        return Element(self, {}) if not c else Element(
            self, {m: norm(c * v) for m, v in self.mul_mono((), tuple(w)).items()}
        )

    def is_normal(self, m):
        return all(m[i] <= m[i + 1] for i in range(len(m) - 1))


class TensorAlgebra(Algebra):
    """``A ⊗ B``; monomials are pairs of normal monomials."""

    def __init__(self, left, right):
        self.left = left
        self.right = right
        self.one_mono = (left.one_mono, right.one_mono)

    def __repr__(self):
        return f"TensorAlgebra({self.left!r}, {self.right!r})"

    def mul_mono(self, m1, m2):
        a = self.left.mul_mono(m1[0], m2[0])
        b = self.right.mul_mono(m1[1], m2[1])
        if len(a) == 1 and len(b) == 1:
            (ka, ca), = a.items()
            (kb, cb), = b.items()
            return {(ka, kb): ca * cb}
        out = {}
        for ka, ca in a.items():
            for kb, cb in b.items():
                _acc(out, (ka, kb), ca * cb)
        return out

    def pure(self, a, b):
        """``a ⊗ b`` for elements or scalars of the factors."""
        a = self.left.coerce(a)
        b = self.right.coerce(b)
        out = {}
        for ka, ca in a.terms.items():
            for kb, cb in b.terms.items():
                _acc(out, (ka, kb), ca * cb)
        return Element(self, out)

    def mono_weight(self, m):
        return self.left.mono_weight(m[0]) + self.right.mono_weight(m[1])

    def mono_str(self, m):
        return f"{self.left.mono_str(m[0])}⊗{self.right.mono_str(m[1])}"

    def mono_json(self, m):
        return {"left": self.left.mono_json(m[0]), "right": self.right.mono_json(m[1])}

    def contract(self, x, f, g):
        """``sum c * f(a) * g(b)`` over the terms ``c * a⊗b`` of ``x``.

        ``f`` and ``g`` take monomial elements of the left and right factor
        and must land in a common algebra (``m ∘ (f ⊗ g)``).
        """
        out = None
        for (ka, kb), c in x.terms.items():
            a = Element(self.left, {ka: 1})
            b = Element(self.right, {kb: 1})
            term = (f(a) * g(b)) * c
            out = term if out is None else out + term
        return out if out is not None else 0


class HomMap:
    """Algebra (anti-)homomorphism defined on generators.

    ``image(g)`` returns an element of ``target`` (or a scalar) for each
    generator id ``g`` of the PBW source.  Monomial images are cached.
    """

    def __init__(self, source, target, image, anti=False, name=None):
        self.source = source
        self.target = target
        self._image = image
        self.anti = anti
        self.name = name
        self._gen = {}
        self._mono = {(): target.one()}

    def gen_image(self, g):
        r = self._gen.get(g)
        if r is None:
            r = self._gen[g] = self.target.coerce(self._image(g))
        return r

    def mono_image(self, m):
        r = self._mono.get(m)
        if r is not None:
            return r
        head = self.mono_image(m[:-1])
        last = self.gen_image(m[-1])
        r = last * head if self.anti else head * last
        self._mono[m] = r
        return r

    def __call__(self, x):
        if is_scalar(x):
            return self.target.scalar(x)
        if x.alg is not self.source:
            raise TypeError("element does not belong to the source algebra")
        out = {}
        for m, c in x.terms.items():
            for m2, c2 in self.mono_image(m).terms.items():
                _acc(out, m2, c * c2)
        return Element(self.target, out)

    def __repr__(self):
        return f"HomMap({self.name or '?'})"
