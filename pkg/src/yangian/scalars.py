"""Exact scalars: rationals and polynomials in commuting parameters.

Rationals are plain ``int`` or :class:`fractions.Fraction`; integral values are
kept as ``int`` because Fraction arithmetic is two orders of magnitude slower.
:class:`Poly` adds commuting named parameters (generic series coefficients,
weight variables of a Cartan subalgebra, and so on).
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational

__all__ = ["Poly", "Q", "is_scalar", "norm", "scalar_json", "scalar_str", "var"]


def norm(c):
    """Return ``c`` as an ``int`` when it is an integral Fraction."""
    if type(c) is Fraction and c.denominator == 1:
        return c.numerator
    return c


def Q(num, den=1):
    """Exact rational, normalized to ``int`` when integral."""
    return norm(Fraction(num, den))


def _mono_mul(a, b):
    if not a:
        return b
    if not b:
        return a
    d = dict(a)
    for v, e in b:
        d[v] = d.get(v, 0) + e
    return tuple(sorted(d.items()))


class Poly:
    """Commutative polynomial with rational coefficients.

    Monomials are sorted tuples of ``(name, exponent)`` pairs; the empty tuple
    is the constant monomial.  Zero coefficients are never stored, so equality
    is identity of the canonical dictionaries.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {}
        if terms:
            for m, c in terms.items():
                c = norm(c)
                if c:
                    self.terms[m] = c

    @classmethod
    def const(cls, c):
        p = cls()
        c = norm(c)
        if c:
            p.terms[()] = c
        return p

    @classmethod
    def _wrap(cls, terms):
        p = cls.__new__(cls)
        p.terms = terms
        return p

    def _coerce(self, other):
        if isinstance(other, Poly):
            return other
        if isinstance(other, (int, Rational)):
            return Poly.const(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        t = dict(self.terms)
        for m, c in o.terms.items():
            s = norm(t.get(m, 0) + c)
            if s:
                t[m] = s
            else:
                t.pop(m, None)
        return Poly._wrap(t)

    __radd__ = __add__

    def __neg__(self):
        return Poly._wrap({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Rational)) and not isinstance(other, Poly):
            if not other:
                return Poly()
            return Poly._wrap({m: norm(c * other) for m, c in self.terms.items()})
        if not isinstance(other, Poly):
            return NotImplemented
        t = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _mono_mul(m1, m2)
                t[m] = t.get(m, 0) + c1 * c2
        return Poly({m: c for m, c in t.items()})

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Rational)) and not isinstance(other, Poly):
            return self * (Fraction(1) / other)
        return NotImplemented

    def __pow__(self, k):
        if k < 0:
            raise ValueError("negative power of a polynomial")
        out = Poly.const(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.terms == o.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def constant(self):
        """Rational value if the polynomial is constant, else ``None``."""
        if not self.terms:
            return 0
        if len(self.terms) == 1 and () in self.terms:
            return self.terms[()]
        return None

    def variables(self):
        return sorted({v for m in self.terms for v, _ in m})

    def degree(self):
        return max((sum(e for _, e in m) for m in self.terms), default=-1)

    def subs(self, mapping):
        """Substitute variables by scalars or polynomials."""
        out = Poly()
        cache = {}
        for m, c in self.terms.items():
            term = Poly.const(c)
            for v, e in m:
                if v in mapping:
                    key = (v, e)
                    if key not in cache:
                        val = mapping[v]
                        val = val if isinstance(val, Poly) else Poly.const(val)
                        cache[key] = val ** e
                    term = term * cache[key]
                else:
                    term = term * Poly._wrap({((v, e),): 1})
            out = out + term
        return out

    def __repr__(self):
        return scalar_str(self)

    def to_json(self):
        return {
            "poly": [
                {"coeff": str(c), "vars": {v: e for v, e in m}}
                for m, c in sorted(self.terms.items())
            ]
        }


def var(name):
    """The polynomial consisting of the single variable ``name``."""
    return Poly._wrap({((name, 1),): 1})


def is_scalar(x):
    return isinstance(x, (int, Rational, Poly))


def _mono_str(m):
    return "*".join(v if e == 1 else f"{v}^{e}" for v, e in m)


def scalar_str(c):
    if isinstance(c, Poly):
        if not c.terms:
            return "0"
        parts = []
        for m, k in sorted(c.terms.items(), key=lambda t: (-sum(e for _, e in t[0]), t[0])):
            if not m:
                parts.append(str(k))
            elif k == 1:
                parts.append(_mono_str(m))
            elif k == -1:
                parts.append("-" + _mono_str(m))
            else:
                parts.append(f"{k}*{_mono_str(m)}")
        return " + ".join(parts).replace("+ -", "- ")
    return str(c)


def scalar_json(c):
    if isinstance(c, Poly):
        k = c.constant()
        if k is not None:
            return str(k)
        return c.to_json()
    return str(c)
