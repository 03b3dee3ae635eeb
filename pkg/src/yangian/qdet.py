"""Quantum determinants, quantum minors and the identities they satisfy.

Every function takes the generator matrix as a :class:`SeriesMatrix` of
univariate series, so the same code serves the abstract Yangian and any
homomorphic image (for instance ``1 + E u^{-1}`` over ``U(gl_n)``).
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations, product
from math import factorial

from .algebra import HomMap
from .perms import perm_sign, permutations_with_sign, sort_sign
from .scalars import var
from .series import Series, SeriesMatrix, quasideterminant
from .yangian import relation_oracle

__all__ = [
    "ShiftCache",
    "block_qdet_check",
    "comatrix",
    "dtilde_solve",
    "generic_series_params",
    "liouville_z",
    "minor_commutation_check",
    "mu_f_map",
    "qdet",
    "qdet_factorization",
    "qdet_factorization_check",
    "qdet_two_by_two",
    "quantum_minor",
    "series_commute",
    "sylvester_check",
    "sylvester_matrix",
]


class ShiftCache:
    """Memoized shifts ``T(u + c)`` of a matrix of series."""

    def __init__(self, T):
        self.T = T
        self._cache = {0: T}

    def __call__(self, c):
        c = Fraction(c)
        if c not in self._cache:
            self._cache[c] = self.T.shift(c)
        return self._cache[c]


def _as_cache(T):
    return T if isinstance(T, ShiftCache) else ShiftCache(T)


def _product(factors):
    out = factors[0]
    for f in factors[1:]:
        out = out * f
    return out


def _sum(terms, like):
    acc = None
    for t in terms:
        acc = t if acc is None else acc + t
    return acc if acc is not None else like * 0


def qdet(T, rho=None, variant=1):
    """Quantum determinant by permutation expansion.

    ``variant=1`` expands along columns ``rho(1), ..., rho(n)`` with arguments
    ``u, u-1, ...``; ``variant=2`` along rows with arguments ``u-n+1, ..., u``.
    Both carry the factor ``sgn rho``.
    """
    C = _as_cache(T)
    labels = list(C.T.labels)
    n = len(labels)
    rho = list(labels) if rho is None else list(rho)
    s_rho = perm_sign([labels.index(x) for x in rho])
    terms = []
    for s, sigma in permutations_with_sign(labels):
        if variant == 1:
            fs = [C(-k)[sigma[k], rho[k]] for k in range(n)]
        else:
            fs = [C(-(n - 1 - k))[rho[k], sigma[k]] for k in range(n)]
        p = _product(fs)
        terms.append(p if s == 1 else -p)
    out = _sum(terms, C.T[labels[0], labels[0]])
    return out if s_rho == 1 else -out


def quantum_minor(T, upper, lower, form=1):
    """Quantum minor ``t^{upper}_{lower}(u)``.

    The two displayed expansions are selected by ``form``; both are
    skew-symmetric, which is enforced by sorting the index tuples first.
    """
    if len(upper) != len(lower):
        raise ValueError("upper and lower index tuples must have equal length")
    C = _as_cache(T)
    su, cu = sort_sign(upper)
    sl, cl = sort_sign(lower)
    zero = C.T[C.T.labels[0], C.T.labels[0]] * 0
    if su == 0 or sl == 0:
        return zero
    m = len(cu)
    terms = []
    for s, sigma in permutations_with_sign(range(m)):
        if form == 1:
            fs = [C(-k)[cu[sigma[k]], cl[k]] for k in range(m)]
        else:
            fs = [C(-(m - 1 - k))[cu[k], cl[sigma[k]]] for k in range(m)]
        p = _product(fs)
        terms.append(p if s == 1 else -p)
    out = _sum(terms, zero)
    return out if su * sl == 1 else -out


def comatrix(T):
    """Quantum comatrix via signed ``(n-1)``-minors."""
    C = _as_cache(T)
    labels = list(C.T.labels)
    n = len(labels)

    def entry(i, j):
        pi, pj = labels.index(i), labels.index(j)
        up = [a for a in labels if a != j]
        lo = [a for a in labels if a != i]
        if n == 1:
            return C.T[i, j] * 0 + 1
        m = quantum_minor(C, up, lo)
        return m if (pi + pj) % 2 == 0 else -m

    return SeriesMatrix(labels, entry)


def liouville_z(T, n=None):
    """``z(u)`` from ``z(u)^{-1} = (1/n) tr(T(u) T^{-1}(u-n))``."""
    n = T.size if n is None else n
    Tinv = T.inverse().shift(-n)
    zinv = (T * Tinv).trace() * Fraction(1, n)
    return zinv.invert()


def dtilde_solve(q, n):
    """Unique ``d(u) = 1 + O(u^{-1})`` with ``d(u) d(u-1) ... d(u-n+1) = q``."""
    D = q.prec[0]
    if not (q.coeff(0) == 1):
        raise ValueError("series must start with 1")
    coeffs = {0: 1}
    for k in range(1, D + 1):
        d = Series(coeffs, q.vars, k)
        prod = _product([d.shift(-i) for i in range(n)])
        coeffs[k] = (q.coeff(k) - prod.coeff(k)) * Fraction(1, n)
    return Series(coeffs, q.vars, D)


def generic_series_params(name, D):
    """``1 + f1 u^{-1} + ... + fD u^{-D}`` with fresh commuting parameters."""
    return Series({0: 1, **{k: var(f"{name}{k}") for k in range(1, D + 1)}}, ("u",), D)


def mu_f_map(Y, name="f"):
    """``T(u) -> f(u) T(u)`` for a generic series ``f`` (parameters ``name1, ...``)."""

    def image(g):
        i, j, r = Y.decode(g)
        acc = Y.zero()
        for p in range(r + 1):
            fp = 1 if p == 0 else var(f"{name}{p}")
            acc = acc + Y.t(i, j, r - p) * fp
        return acc

    return HomMap(Y, Y, image, name=f"mu_{name}")


def series_commute(a, b):
    """All coefficients of ``a`` commute with all coefficients of ``b``."""
    for x in a.terms.values():
        for y in b.terms.values():
            if x * y != y * x:
                return False
    return True


def qdet_factorization(T):
    """Factors ``t11(u), |T^(2)(u-1)|_22, ..., |T^(n)(u-n+1)|_nn``."""
    labels = list(T.labels)
    C = _as_cache(T)
    factors = []
    for m in range(1, len(labels) + 1):
        sub = C(-(m - 1)).submatrix(labels[:m])
        factors.append(quasideterminant(sub, labels[m - 1], labels[m - 1]))
    return factors


def qdet_factorization_check(T):
    """Product of the quasi-determinant factors equals qdet; factors commute."""
    factors = qdet_factorization(T)
    if _product(factors) != qdet(T):
        return False
    for a in range(len(factors)):
        for b in range(a + 1, len(factors)):
            if not series_commute(factors[a], factors[b]):
                return False
    return True


def block_qdet_check(T, m):
    """``qdet T(u) * qdet T*(-u+n-1)_AA = qdet T(u)_BB`` with ``T*(u) = T^{-1}(-u)``."""
    labels = list(T.labels)
    n = len(labels)
    A, B = labels[:m], labels[m:]
    lhs = qdet(T)
    if A:
        Tstar = T.inverse().negate_var()  # series in v: T*(v) = T^{-1}(-v)
        inner = qdet(Tstar.submatrix(A))
        lhs = lhs * inner.negate_var().shift(-(n - 1))
    if B:
        rhs = qdet(T.submatrix(B))
    else:
        rhs = lhs * 0 + 1
    return lhs == rhs


def sylvester_matrix(T, m):
    """``t~_ij(u) = t^{i, m+1..n}_{j, m+1..n}(u)`` for ``1 <= i, j <= m``."""
    labels = list(T.labels)
    C = _as_cache(T)
    A, B = labels[:m], labels[m:]
    return SeriesMatrix(A, lambda i, j: quantum_minor(C, [i] + B, [j] + B))


def sylvester_check(T, m, carrier, bound=None):
    """Both Sylvester claims: homomorphism property and the qdet identity.

    Returns ``(relations_ok, identity_ok)``.
    """
    labels = list(T.labels)
    D = T[labels[0], labels[0]].prec[0]
    St = sylvester_matrix(T, m)
    bound = D + 1 if bound is None else bound
    rel = relation_oracle(St.labels, lambda i, j, r: St[i, j].coeff(r), carrier, bound)
    B = labels[m:]
    lhs = qdet(St)
    if B:
        C = _as_cache(T)
        rhs = _product([qdet(T)] + [qdet(C(-k).submatrix(B)) for k in range(1, m)])
    else:
        rhs = qdet(T)
    return rel, lhs == rhs


def _swap_in(seq, positions, values):
    out = list(seq)
    for p, x in zip(positions, values):
        out[p] = x
    return tuple(out)


def minor_commutation_check(T, max_size=2, vanishing=True):
    """Commutation relations between quantum minors ``t^A_B(u)`` and ``t^C_D(v)``.

    Both sides are multiplied by ``(u-v-k+1)...(u-v-k+min(k,l))`` and compared
    as series in ``u^{-1}, v^{-1}``.  Index tuples run over increasing tuples
    (minors are skew-symmetric).  With ``vanishing`` the commutators
    ``[t_{c_i d_j}(u), t^C_D(v)]`` are also checked to vanish.
    """
    C = _as_cache(T)
    labels = list(C.T.labels)
    vars2 = ("u", "v")
    cache = {}

    def minor(up, lo, pos):
        key = (tuple(up), tuple(lo), pos)
        if key not in cache:
            m = quantum_minor(C, up, lo)
            cache[key] = m.embed(vars2, (pos,))
        return cache[key]

    def linear(c):
        return Series({(-1, 0): 1, (0, -1): -1, (0, 0): c}, vars2)

    sizes = range(1, min(max_size, len(labels)) + 1)
    for k, l in product(sizes, sizes):
        m = min(k, l)
        clear = [linear(-k + q) for q in range(1, m + 1)]
        full = clear[0]
        for f in clear[1:]:
            full = full * f
        for A, B, Cc, Dd in product(
            combinations(labels, k), combinations(labels, k), combinations(labels, l), combinations(labels, l)
        ):
            lhs = full * (minor(A, B, 0) * minor(Cc, Dd, 1) - minor(Cc, Dd, 1) * minor(A, B, 0))
            rhs = lhs * 0
            for p in range(1, m + 1):
                weight = 1
                for f in clear[p:]:
                    weight = f * weight
                weight = weight * ((-1) ** (p - 1) * factorial(p))
                for I in combinations(range(k), p):
                    for J in combinations(range(l), p):
                        first = minor(_swap_in(A, I, [Cc[j] for j in J]), B, 0) * minor(
                            _swap_in(Cc, J, [A[i] for i in I]), Dd, 1
                        )
                        second = minor(Cc, _swap_in(Dd, J, [B[i] for i in I]), 1) * minor(
                            A, _swap_in(B, I, [Dd[j] for j in J]), 0
                        )
                        rhs = rhs + weight * (first - second)
            if lhs != rhs:
                return False
    if vanishing:
        for l in sizes:
            for Cc, Dd in product(combinations(labels, l), combinations(labels, l)):
                mv = minor(Cc, Dd, 1)
                for c, d in product(Cc, Dd):
                    tu = minor((c,), (d,), 0)
                    if tu * mv != mv * tu:
                        return False
    return True


def qdet_two_by_two(T):
    """The four column/row expansions of ``qdet T(u)`` for ``n = 2``."""
    C = _as_cache(T)
    a, b = C.T.labels
    t, t1 = C(0), C(-1)
    return [
        t[a, a] * t1[b, b] - t[b, a] * t1[a, b],
        t[b, b] * t1[a, a] - t[a, b] * t1[b, a],
        t1[a, a] * t[b, b] - t1[a, b] * t[b, a],
        t1[b, b] * t[a, a] - t1[b, a] * t[a, b],
    ]
