"""Operators on tensor powers ``(C^n)^{⊗m}`` with exact or algebra-valued entries.

Basis vectors of the tensor power are tuples of labels.  Operators are stored
sparsely as ``{row: {col: entry}}``; entries may be scalars, algebra elements
or series, and products respect the order of noncommuting entries.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product

from .perms import permutations_with_sign
from .series import Series, SeriesMatrix

__all__ = [
    "TensorOp",
    "antisymmetrizer",
    "flip",
    "fundamental_check",
    "fused_R",
    "fused_R_reversed",
    "one_dim_Q",
    "quaternary_check",
    "rtt_check",
    "tau",
    "yang_R",
    "ybe_check",
]


def _is_zero(x):
    if isinstance(x, Series):
        return x.is_zero()
    return not x


def _exact_zero(x):
    if isinstance(x, Series):
        return not x.terms and all(p is None for p in x.prec)
    return not x


class TensorOp:
    __slots__ = ("data", "labels", "m")

    def __init__(self, labels, m, data=None):
        self.labels = tuple(labels)
        self.m = m
        self.data = data if data is not None else {}

    # -- constructors --------------------------------------------------
    def basis(self):
        return list(product(self.labels, repeat=self.m))

    @classmethod
    def identity(cls, labels, m, one=1):
        return cls(labels, m, {b: {b: one} for b in product(labels, repeat=m)})

    @classmethod
    def local(cls, X, a, m):
        """``X`` acting in tensor factor ``a`` (1-based) of ``m`` factors."""
        labels = X.labels
        data = {}
        for b in product(labels, repeat=m):
            row = {}
            for j in labels:
                for i in labels:
                    if b[a - 1] != i:
                        continue
                    x = X[i, j]
                    if _exact_zero(x):
                        continue
                    col = b[: a - 1] + (j,) + b[a:]
                    row[col] = x
            if row:
                data[b] = row
        return cls(labels, m, data)

    # -- arithmetic ----------------------------------------------------
    def _check(self, other):
        if other.labels != self.labels or other.m != self.m:
            raise ValueError("tensor operators act on different spaces")

    def __add__(self, other):
        if not isinstance(other, TensorOp):
            return self + TensorOp.identity(self.labels, self.m, other)
        self._check(other)
        data = {r: dict(c) for r, c in self.data.items()}
        for r, cols in other.data.items():
            row = data.setdefault(r, {})
            for c, x in cols.items():
                row[c] = row[c] + x if c in row else x
        return TensorOp(self.labels, self.m, data)

    __radd__ = __add__

    def __neg__(self):
        return TensorOp(self.labels, self.m, {r: {c: -x for c, x in cols.items()} for r, cols in self.data.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, TensorOp):
            self._check(other)
            data = {}
            for r, cols in self.data.items():
                row = {}
                for k, x in cols.items():
                    ok = other.data.get(k)
                    if not ok:
                        continue
                    for c, y in ok.items():
                        p = x * y
                        row[c] = row[c] + p if c in row else p
                if row:
                    data[r] = row
            return TensorOp(self.labels, self.m, data)
        return TensorOp(self.labels, self.m, {r: {c: x * other for c, x in cols.items()} for r, cols in self.data.items()})

    def __rmul__(self, other):
        return TensorOp(self.labels, self.m, {r: {c: other * x for c, x in cols.items()} for r, cols in self.data.items()})

    def apply(self, vec):
        """Apply to a column vector ``{basis: entry}``."""
        out = {}
        for r, cols in self.data.items():
            acc = None
            for c, x in cols.items():
                y = vec.get(c)
                if y is None or _exact_zero(y):
                    continue
                p = x * y
                acc = p if acc is None else acc + p
            if acc is not None:
                out[r] = acc
        return out

    def entry(self, r, c):
        return self.data.get(r, {}).get(c, 0)

    def trace(self):
        acc = 0
        for r, cols in self.data.items():
            if r in cols:
                acc = acc + cols[r]
        return acc

    def is_zero(self):
        return all(_is_zero(x) for cols in self.data.values() for x in cols.values())

    def __eq__(self, other):
        if not isinstance(other, TensorOp):
            other = TensorOp.identity(self.labels, self.m, other)
        return (self - other).is_zero()

    __hash__ = None

    def map(self, f):
        return TensorOp(self.labels, self.m, {r: {c: f(x) for c, x in cols.items()} for r, cols in self.data.items()})

    def rank(self):
        """Rank of a scalar operator (exact Gaussian elimination)."""
        basis = self.basis()
        rows = [[Fraction(self.entry(r, c)) for c in basis] for r in basis]
        rank = 0
        ncol = len(basis)
        for col in range(ncol):
            piv = next((i for i in range(rank, len(rows)) if rows[i][col]), None)
            if piv is None:
                continue
            rows[rank], rows[piv] = rows[piv], rows[rank]
            for i in range(len(rows)):
                if i != rank and rows[i][col]:
                    f = rows[i][col] / rows[rank][col]
                    rows[i] = [a - f * b for a, b in zip(rows[i], rows[rank])]
            rank += 1
        return rank


# -- standard operators ------------------------------------------------

def flip(labels, a, b, m):
    """Permutation operator ``P_ab`` swapping factors ``a`` and ``b``."""
    data = {}
    for v in product(labels, repeat=m):
        w = list(v)
        w[a - 1], w[b - 1] = w[b - 1], w[a - 1]
        data[tuple(w)] = {v: 1}
    return TensorOp(labels, m, data)


def one_dim_Q(labels, a, b, m, theta=None):
    """``Q_ab = sum e^t_ij ⊗ e_ji`` in factors ``a, b``.

    With ``theta=None`` the transpose is the plain one (``Q = sum e_ij ⊗ e_ij``);
    otherwise ``e^t_ij = theta(i, j) e_{-j,-i}``.
    """
    data = {}
    for v in product(labels, repeat=m):
        for i in labels:
            for j in labels:
                # operator e_ij ⊗ e_ij (plain) or theta_ij e_{-j,-i} ⊗ e_ji
                if theta is None:
                    r1, c1, r2, c2, coef = i, j, i, j, 1
                else:
                    r1, c1, r2, c2, coef = -j, -i, j, i, theta(i, j)
                if v[a - 1] != c1 or v[b - 1] != c2:
                    continue
                w = list(v)
                w[a - 1], w[b - 1] = r1, r2
                row = data.setdefault(tuple(w), {})
                row[v] = row.get(v, 0) + coef
    return TensorOp(labels, m, data)


def yang_R(labels, u, a=1, b=2, m=2):
    """``R_ab(u) = 1 - P_ab / u`` at a nonzero rational ``u``."""
    if u == 0:
        raise ZeroDivisionError("R(u) has a pole at u = 0")
    return TensorOp.identity(labels, m) - flip(labels, a, b, m) * (Fraction(1) / u)


def antisymmetrizer(labels, m):
    data = {}
    for col in product(labels, repeat=m):
        for s, sigma in permutations_with_sign(range(m)):
            row = tuple(col[sigma[k]] for k in range(m))
            r = data.setdefault(row, {})
            r[col] = r.get(col, 0) + s
    for r in list(data):
        data[r] = {c: x for c, x in data[r].items() if x}
        if not data[r]:
            del data[r]
    return TensorOp(labels, m, data)


def fused_R(labels, us):
    """``(R_{m-1,m})(R_{m-2,m}R_{m-2,m-1})...(R_{1m}...R_{12})``."""
    m = len(us)
    out = TensorOp.identity(labels, m)
    for i in range(m - 1, 0, -1):
        for j in range(m, i, -1):
            out = out * yang_R(labels, us[i - 1] - us[j - 1], i, j, m)
    return out


def fused_R_reversed(labels, us):
    """``(R_12...R_1m)...(R_{m-2,m-1}R_{m-2,m})(R_{m-1,m})``."""
    m = len(us)
    out = TensorOp.identity(labels, m)
    for i in range(1, m):
        for j in range(i + 1, m + 1):
            out = out * yang_R(labels, us[i - 1] - us[j - 1], i, j, m)
    return out


def ybe_check(labels, u, v):
    """``R12(u) R13(u+v) R23(v) = R23(v) R13(u+v) R12(u)`` at rational points."""
    lhs = yang_R(labels, u, 1, 2, 3) * yang_R(labels, u + v, 1, 3, 3) * yang_R(labels, v, 2, 3, 3)
    rhs = yang_R(labels, v, 2, 3, 3) * yang_R(labels, u + v, 1, 3, 3) * yang_R(labels, u, 1, 2, 3)
    return lhs == rhs


# -- series identities --------------------------------------------------

def _biv(T, pos):
    """Embed a matrix of ``u``-series as series in ``(u, v)`` at ``pos``."""
    return T.map(lambda s: s.embed(("u", "v"), (pos,)))


def rtt_check(T):
    """Pole-cleared ternary relation ``R(u-v)T1(u)T2(v) = T2(v)T1(u)R(u-v)``."""
    labels = T.labels
    Tu = TensorOp.local(_biv(T, 0), 1, 2)
    Tv = TensorOp.local(_biv(T, 1), 2, 2)
    u_minus_v = Series({(-1, 0): 1, (0, -1): -1}, ("u", "v"))
    Rc = TensorOp.identity(labels, 2, u_minus_v) - flip(labels, 1, 2, 2)
    return Rc * Tu * Tv == Tv * Tu * Rc


def quaternary_check(S, theta):
    """Pole-cleared ``R(u-v) S1(u) R^t(-u-v) S2(v) = S2(v) R^t(-u-v) S1(u) R(u-v)``."""
    labels = S.labels
    Su = TensorOp.local(_biv(S, 0), 1, 2)
    Sv = TensorOp.local(_biv(S, 1), 2, 2)
    u_minus_v = Series({(-1, 0): 1, (0, -1): -1}, ("u", "v"))
    u_plus_v = Series({(-1, 0): 1, (0, -1): 1}, ("u", "v"))
    R = TensorOp.identity(labels, 2, u_minus_v) - flip(labels, 1, 2, 2)
    Rt = TensorOp.identity(labels, 2, u_plus_v) + one_dim_Q(labels, 1, 2, 2, theta)
    return R * Su * Rt * Sv == Sv * Rt * Su * R


def fundamental_check(T, offsets):
    """``R(u_1..u_m) T_1(u_1)...T_m(u_m) = T_m(u_m)...T_1(u_1) R(u_1..u_m)``.

    The arguments are ``u_a = u + offsets[a]``, so the fused R-matrix is a
    constant operator.
    """
    m = len(offsets)
    labels = T.labels
    R = fused_R(labels, list(offsets))
    Ts = [TensorOp.local(T.shift(offsets[a]), a + 1, m) for a in range(m)]
    lhs = R
    for X in Ts:
        lhs = lhs * X
    rhs = Ts[-1]
    for X in reversed(Ts[:-1]):
        rhs = rhs * X
    return lhs == rhs * R


def tau(T, C, k):
    """``tau_k(u, C) = tr A_n T_1(u) ... T_k(u-k+1) C_{k+1} ... C_n``."""
    labels = T.labels
    n = len(labels)
    op = antisymmetrizer(labels, n)
    for a in range(1, k + 1):
        op = op * TensorOp.local(T.shift(-(a - 1)), a, n)
    Cm = C if isinstance(C, SeriesMatrix) else SeriesMatrix(labels, C)
    for a in range(k + 1, n + 1):
        op = op * TensorOp.local(Cm, a, n)
    return op.trace()


def scalar_factor(X, A):
    """``c`` with ``X = A c`` for a nonzero scalar operator ``A``.

    Returns ``None`` when ``X`` is not of that form.
    """
    for r, cols in A.data.items():
        for col, a in cols.items():
            if a:
                c = X.entry(r, col) * Fraction(1, a)
                return c if X == A * c else None
    raise ValueError("reference operator is zero")


def fused_column(ops, col):
    """``ops[0] * ops[1] * ... * e_col`` as a vector (right to left)."""
    vec = {col: 1}
    for X in reversed(ops):
        vec = X.apply(vec)
    return vec
