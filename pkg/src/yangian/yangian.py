"""The Yangian of gl_n: PBW normal forms, Hopf maps and the relation oracle.

Generators ``t^(r)_ij`` (``r >= 1``) are ordered by ``(r, i, j)``; ``t^(0)_ij``
is the scalar ``delta_ij`` and never stored.  The commutation rule used by
the normal-form engine is

    [t^(r)_ij, t^(s)_kl] = sum_{a=1}^{min(r,s)}
        t^(a-1)_kj t^(r+s-a)_il - t^(r+s-a)_kj t^(a-1)_il.

Monomials are never truncated: every series identity is read through
:class:`~yangian.series.Series` precision, and the coefficient of ``u^{-k}``
in any product of generator series only involves words of total level at
most ``k``, so nothing beyond the requested precision is ever formed.
"""

from __future__ import annotations

from itertools import product

from .algebra import Element, HomMap, PBWAlgebra, TensorAlgebra, _acc
from .series import Series, SeriesMatrix

__all__ = [
    "Yangian",
    "images_matrix",
    "raw_normal_form",
    "relation_oracle",
    "relation_violations",
]


class Yangian(PBWAlgebra):
    """``Y(n)`` on the index set ``indices`` (default ``1..n``)."""

    def __init__(self, n=None, indices=None):
        super().__init__()
        if indices is None:
            indices = list(range(1, n + 1))
        self.indices = list(indices)
        self.n = len(self.indices)
        self._pos = {a: p for p, a in enumerate(self.indices)}
        self._delta_cache = {}
        self._coproduct = None
        self._tensor = None

    def __repr__(self):
        return f"Y({self.n})"

    # -- generator encoding ----------------------------------------------
    def gid(self, i, j, r):
        n = self.n
        return (r - 1) * n * n + self._pos[i] * n + self._pos[j]

    def decode(self, g):
        n = self.n
        r, rest = divmod(g, n * n)
        p, q = divmod(rest, n)
        return self.indices[p], self.indices[q], r + 1

    def t(self, i, j, r):
        """``t^(r)_ij`` as an element; ``r = 0`` gives ``delta_ij``."""
        if r == 0:
            return self.scalar(1 if i == j else 0)
        return self.gen(self.gid(i, j, r))

    def _word_t(self, i, j, r):
        """Word fragment for ``t^(r)_ij``: ``None`` for zero, ``()`` for one."""
        if r == 0:
            return () if i == j else None
        return (self.gid(i, j, r),)

    def bracket(self, b, a):
        i, j, r = self.decode(b)
        k, l, s = self.decode(a)
        out = []
        for c in range(1, min(r, s) + 1):
            w1 = self._word_t(k, j, c - 1)
            w2 = self._word_t(i, l, r + s - c)
            if w1 is not None and w2 is not None:
                out.append((w1 + w2, 1))
            w1 = self._word_t(k, j, r + s - c)
            w2 = self._word_t(i, l, c - 1)
            if w1 is not None and w2 is not None:
                out.append((w1 + w2, -1))
        return out

    def mono_weight(self, m):
        n2 = self.n * self.n
        return sum(g // n2 + 1 for g in m)

    def mono_str(self, m):
        if not m:
            return "1"
        parts = []
        for g in m:
            i, j, r = self.decode(g)
            sep = "," if (i < 0 or j < 0 or i > 9 or j > 9) else ""
            parts.append(f"t{r}[{i}{sep}{j}]")
        return "*".join(parts)

    def mono_json(self, m):
        return [["t", *self.decode(g)[:2], self.decode(g)[2]] for g in m]

    # -- series ----------------------------------------------------------
    def T(self, D, var="u"):
        """Generator matrix ``T(u)`` known modulo ``u^{-D-1}``."""
        return images_matrix(self.indices, self.t, D, var)

    # -- Hopf structure --------------------------------------------------
    def tensor_square(self):
        if self._tensor is None:
            self._tensor = TensorAlgebra(self, self)
        return self._tensor

    def coproduct_map(self):
        if self._coproduct is None:
            YY = self.tensor_square()

            def image(g):
                i, j, r = self.decode(g)
                acc = YY.zero()
                for a in self.indices:
                    for p in range(r + 1):
                        acc = acc + YY.pure(self.t(i, a, p), self.t(a, j, r - p))
                return acc

            self._coproduct = HomMap(self, YY, image, name="coproduct")
        return self._coproduct

    def coproduct(self, x):
        return self.coproduct_map()(x)

    def counit(self, x):
        x = self.coerce(x)
        return x.constant()

    # -- gradings --------------------------------------------------------
    def degree(self, m, grading="deg1"):
        n2 = self.n * self.n
        if grading == "deg1":
            return sum(g // n2 + 1 for g in m)
        if grading == "deg2":
            return sum(g // n2 for g in m)
        raise ValueError("grading must be 'deg1' or 'deg2'")

    def graded_leading_term(self, x, grading="deg1"):
        x = self.coerce(x)
        if not x.terms:
            return x
        top = max(self.degree(m, grading) for m in x.terms)
        return Element(self, {m: c for m, c in x.terms.items() if self.degree(m, grading) == top})

    def random_word(self, rng, max_level, length):
        gens = [self.gid(i, j, r) for r in range(1, max_level + 1) for i in self.indices for j in self.indices]
        return tuple(rng.choice(gens) for _ in range(length))


def images_matrix(labels, image, D, var="u"):
    """Matrix ``delta_ij + sum_r image(i, j, r) u^{-r}`` modulo ``u^{-D-1}``."""

    def entry(i, j):
        coeffs = {0: 1 if i == j else 0}
        for r in range(1, D + 1):
            coeffs[r] = image(i, j, r)
        return Series(coeffs, (var,), D)

    return SeriesMatrix(labels, entry)


# -- an independent reference rewriter -----------------------------------

def _raw_bracket(Y, b, a):
    """``[t^(r)_ij, t^(s)_kl]`` from the two-parameter relation.

    Telescoping ``(u - v)[t_ij(u), t_kl(v)] = t_kj(u)t_il(v) - t_kj(v)t_il(u)``
    gives ``sum_{a=0}^{r-1} t^(a)_kj t^(r+s-1-a)_il - t^(r+s-1-a)_kj t^(a)_il``,
    a different (longer) expansion than the one used by :class:`Yangian`.
    """
    i, j, r = Y.decode(b)
    k, l, s = Y.decode(a)
    out = []
    for p in range(r):
        q = r + s - 1 - p
        w1, w2 = Y._word_t(k, j, p), Y._word_t(i, l, q)
        if w1 is not None and w2 is not None:
            out.append((w1 + w2, 1))
        w1, w2 = Y._word_t(k, j, q), Y._word_t(i, l, p)
        if w1 is not None and w2 is not None:
            out.append((w1 + w2, -1))
    return out


def raw_normal_form(Y, words, strategy="left"):
    """Normalize ``{word: coeff}`` by repeated adjacent swaps, no memo tables.

    ``strategy`` picks the leftmost or rightmost out-of-order pair.
    """
    todo = dict(words)
    done = {}
    while todo:
        w, c = todo.popitem()
        if not c:
            continue
        pos = None
        rng = range(len(w) - 1) if strategy == "left" else range(len(w) - 2, -1, -1)
        for p in rng:
            if w[p] > w[p + 1]:
                pos = p
                break
        if pos is None:
            _acc(done, w, c)
            continue
        b, a = w[pos], w[pos + 1]
        _acc(todo, w[:pos] + (a, b) + w[pos + 2:], c)
        for word, v in _raw_bracket(Y, b, a):
            _acc(todo, w[:pos] + word + w[pos + 2:], c * v)
    return Element(Y, done)


# -- relation oracle -----------------------------------------------------

def relation_violations(indices, image, carrier, bound, opposite=False):
    """Yield ``(i, j, k, l, r, s)`` where the defining relations fail.

    ``image(i, j, r)`` gives the image of ``t^(r)_ij`` (``r >= 1``) in
    ``carrier``; every relation with ``r + s <= bound`` is tested.  With
    ``opposite=True`` products are read in the opposite algebra, which tests
    an anti-homomorphism.
    """
    if opposite:
        def mul(a, b):
            return b * a
    else:
        def mul(a, b):
            return a * b

    cache = {}

    def x(i, j, r):
        if r == 0:
            return carrier.scalar(1 if i == j else 0)
        key = (i, j, r)
        if key not in cache:
            cache[key] = carrier.coerce(image(i, j, r))
        return cache[key]

    for r in range(1, bound):
        for s in range(1, bound - r + 1):
            for i, j, k, l in product(indices, repeat=4):
                lhs = mul(x(i, j, r), x(k, l, s)) - mul(x(k, l, s), x(i, j, r))
                rhs = carrier.zero()
                for a in range(1, min(r, s) + 1):
                    rhs = rhs + mul(x(k, j, a - 1), x(i, l, r + s - a)) - mul(x(k, j, r + s - a), x(i, l, a - 1))
                if lhs != rhs:
                    yield (i, j, k, l, r, s)


def relation_oracle(indices, image, carrier, bound, opposite=False):
    """True iff the images satisfy all defining relations with ``r + s <= bound``."""
    return next(relation_violations(indices, image, carrier, bound, opposite), None) is None
