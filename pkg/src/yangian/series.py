"""Truncated formal series in ``u^{-1}`` with coefficients in any carrier.

A :class:`Series` stores ``sum c_k x^k`` with ``x = u^{-1}``; negative ``k`` are
positive powers of ``u``.  Several independent variables are supported (for
two-variable identities such as ``[e(u), f(v)]``); exponents are then tuples.
Each variable carries a precision ``D``: coefficients with exponent ``> D`` in
that variable are unknown and never stored or reported.  ``None`` means the
series is exact in that variable.

Coefficients may be scalars or :class:`~yangian.algebra.Element` values;
products keep the left-to-right order of the factors.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial

from .algebra import Element
from .scalars import Poly, is_scalar, norm, scalar_json, scalar_str

__all__ = ["PrecisionError", "Series", "SeriesMatrix", "binom", "quasideterminant"]


class PrecisionError(ValueError):
    """Raised when a coefficient beyond the known precision is requested."""


def binom(a, j):
    """Generalized binomial coefficient ``a choose j`` for rational ``a``."""
    num = 1
    for i in range(j):
        num *= a - i
    return norm(Fraction(num) / factorial(j)) if j else 1


def _min(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


def _add(a, b):
    return None if a is None or b is None else a + b


class Series:
    __slots__ = ("prec", "terms", "vars")

    def __init__(self, terms=None, vars=("u",), prec=None):
        if isinstance(vars, str):
            vars = (vars,)
        if not isinstance(prec, tuple):
            prec = (prec,) * len(vars)
        self.vars = vars
        self.prec = prec
        t = {}
        if terms:
            for k, c in terms.items():
                if not isinstance(k, tuple):
                    k = (k,)
                if any(p is not None and e > p for e, p in zip(k, prec)):
                    continue
                if c:
                    t[k] = c
        self.terms = t

    @classmethod
    def _raw(cls, terms, vars, prec):
        s = cls.__new__(cls)
        s.vars = vars
        s.terms = terms
        s.prec = prec
        return s

    # -- constructors ------------------------------------------------------
    @classmethod
    def const(cls, c, vars=("u",), prec=None):
        if isinstance(vars, str):
            vars = (vars,)
        return cls({(0,) * len(vars): c}, vars, prec)

    @classmethod
    def from_coeffs(cls, coeffs, var="u", prec=None):
        """Univariate series ``sum coeffs[k] u^{-k}`` from a mapping or list."""
        if isinstance(coeffs, (list, tuple)):
            coeffs = dict(enumerate(coeffs))
        return cls(coeffs, (var,), prec)

    @classmethod
    def u_poly(cls, coeffs, var="u"):
        """Exact polynomial ``sum coeffs[p] u^p``."""
        return cls({-p: c for p, c in enumerate(coeffs)}, (var,), None)

    @classmethod
    def geometric(cls, a, prec, var="u"):
        """``(1 - a u^{-1})^{-1}`` for a scalar ``a``."""
        return cls({k: a**k for k in range(prec + 1)}, (var,), prec)

    # -- basic protocol ----------------------------------------------------
    @property
    def nvars(self):
        return len(self.vars)

    def _same(self, other):
        if other.vars != self.vars:
            raise TypeError(f"series variable mismatch: {self.vars} vs {other.vars}")

    def _lift(self, other):
        if isinstance(other, Series):
            self._same(other)
            return other
        if is_scalar(other) or isinstance(other, Element):
            return Series._raw({(0,) * self.nvars: other} if other else {}, self.vars, (None,) * self.nvars)
        return None

    def valuation(self, i=0):
        """Lower bound for the exponents in variable ``i`` (known or not)."""
        v = min((k[i] for k in self.terms), default=None)
        p = self.prec[i]
        if p is not None:
            v = p + 1 if v is None else min(v, p + 1)
        return v

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        prec = tuple(_min(a, b) for a, b in zip(self.prec, o.prec))
        t = {}
        for src in (self.terms, o.terms):
            for k, c in src.items():
                if any(p is not None and e > p for e, p in zip(k, prec)):
                    continue
                if k in t:
                    s = t[k] + c
                    if s:
                        t[k] = s
                    else:
                        del t[k]
                else:
                    t[k] = c
        return Series._raw(t, self.vars, prec)

    __radd__ = __add__

    def __neg__(self):
        return Series._raw({k: -c for k, c in self.terms.items()}, self.vars, self.prec)

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def _mul_series(self, o, left_first=True):
        a, b = (self, o) if left_first else (o, self)
        nv = self.nvars
        prec = []
        for i in range(nv):
            va, vb = a.valuation(i), b.valuation(i)
            pa, pb = a.prec[i], b.prec[i]
            d = None
            if pa is not None and vb is not None:
                d = pa + vb
            if pb is not None and va is not None:
                d = _min(d, pb + va)
            prec.append(d)
        prec = tuple(prec)
        t = {}
        if nv == 1:
            p0 = prec[0]
            bt = sorted(b.terms.items())
            for (ka,), ca in a.terms.items():
                for (kb,), cb in bt:
                    k = ka + kb
                    if p0 is not None and k > p0:
                        break
                    v = ca * cb
                    if not v:
                        continue
                    key = (k,)
                    if key in t:
                        s = t[key] + v
                        if s:
                            t[key] = s
                        else:
                            del t[key]
                    else:
                        t[key] = v
        else:
            for ka, ca in a.terms.items():
                for kb, cb in b.terms.items():
                    k = tuple(x + y for x, y in zip(ka, kb))
                    if any(p is not None and e > p for e, p in zip(k, prec)):
                        continue
                    v = ca * cb
                    if not v:
                        continue
                    if k in t:
                        s = t[k] + v
                        if s:
                            t[k] = s
                        else:
                            del t[k]
                    else:
                        t[k] = v
        return Series._raw(t, self.vars, prec)

    def __mul__(self, other):
        if isinstance(other, Series):
            self._same(other)
            return self._mul_series(other)
        if is_scalar(other) or isinstance(other, Element):
            return self.map(lambda c: c * other)
        return NotImplemented

    def __rmul__(self, other):
        if is_scalar(other) or isinstance(other, Element):
            return self.map(lambda c: other * c)
        return NotImplemented

    def __truediv__(self, other):
        if is_scalar(other) and not isinstance(other, Poly):
            inv = Fraction(1) / other
            return self.map(lambda c: c * inv)
        return NotImplemented

    def __pow__(self, k):
        out = Series.const(1, self.vars)
        for _ in range(k):
            out = out * self
        return out

    def map(self, f):
        t = {}
        for k, c in self.terms.items():
            v = f(c)
            if v:
                t[k] = v
        return Series._raw(t, self.vars, self.prec)

    def is_zero(self):
        return not any(bool(c) for c in self.terms.values())

    def __eq__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return (self - o).is_zero()

    __hash__ = None

    # -- coefficient access -------------------------------------------------
    def coeff(self, k, default=0):
        if not isinstance(k, tuple):
            k = (k,)
        for e, p in zip(k, self.prec):
            if p is not None and e > p:
                raise PrecisionError(f"exponent {k} beyond precision {self.prec}")
        return self.terms.get(k, default)

    def __getitem__(self, k):
        return self.coeff(k)

    def exponents(self):
        return sorted(self.terms)

    def truncate(self, prec):
        if not isinstance(prec, tuple):
            prec = (prec,) * self.nvars
        prec = tuple(_min(a, b) for a, b in zip(self.prec, prec))
        t = {k: c for k, c in self.terms.items()
             if not any(p is not None and e > p for e, p in zip(k, prec))}
        return Series._raw(t, self.vars, prec)

    def first_nonzero(self):
        """Smallest exponent with a nonzero coefficient, or ``None``."""
        ks = [k for k, c in self.terms.items() if bool(c)]
        return min(ks) if ks else None

    # -- substitutions -----------------------------------------------------
    def _index(self, var):
        if var is None:
            if self.nvars != 1:
                raise ValueError("variable must be named for multivariate series")
            return 0
        if isinstance(var, int):
            return var
        return self.vars.index(var)

    def shift(self, c, var=None):
        """Substitute ``u -> u + c`` for a rational ``c``."""
        if isinstance(c, Poly):
            raise TypeError("shifts must be explicit rationals")
        c = norm(Fraction(c))
        i = self._index(var)
        if not c:
            return self
        p = self.prec[i]
        if p is None and any(k[i] > 0 for k in self.terms):
            raise PrecisionError("cannot shift an exact series with negative powers of u")
        t = {}
        for k, coef in self.terms.items():
            e = k[i]
            j = 0
            while True:
                ne = e + j
                if p is not None and ne > p:
                    break
                b = binom(-e, j)
                if e <= 0 and j > -e:
                    break
                if b:
                    key = k[:i] + (ne,) + k[i + 1:]
                    v = coef * norm(b * c**j)
                    if key in t:
                        s = t[key] + v
                        if s:
                            t[key] = s
                        else:
                            del t[key]
                    elif v:
                        t[key] = v
                j += 1
        return Series._raw(t, self.vars, self.prec)

    def negate_var(self, var=None):
        """Substitute ``u -> -u``."""
        i = self._index(var)
        return Series._raw(
            {k: (-c if k[i] % 2 else c) for k, c in self.terms.items()}, self.vars, self.prec
        )

    def rename(self, *names):
        return Series._raw(dict(self.terms), tuple(names), self.prec)

    def embed(self, vars, positions):
        """View as a series in ``vars``; variable ``j`` goes to ``positions[j]``."""
        n = len(vars)
        prec = [None] * n
        for j, pos in enumerate(positions):
            prec[pos] = self.prec[j]
        t = {}
        for k, c in self.terms.items():
            key = [0] * n
            for j, pos in enumerate(positions):
                key[pos] = k[j]
            t[tuple(key)] = c
        return Series._raw(t, tuple(vars), tuple(prec))

    def mul_u_power(self, p, var=None):
        """Multiply by ``u^p``."""
        i = self._index(var)
        prec = list(self.prec)
        if prec[i] is not None:
            prec[i] -= p
        t = {k[:i] + (k[i] - p,) + k[i + 1:]: c for k, c in self.terms.items()}
        return Series._raw(t, self.vars, tuple(prec))

    # -- univariate analysis ----------------------------------------------
    def _uni(self):
        if self.nvars != 1:
            raise ValueError("operation requires a univariate series")
        return self.prec[0]

    def invert(self, prec=None):
        """Two-sided inverse.

        The lowest term must be an invertible scalar times a power of ``u``.
        Exact polynomials need an explicit ``prec`` for the result.
        """
        D = self._uni()
        v = self.first_nonzero()
        if v is None:
            raise ZeroDivisionError("series is zero to known precision")
        v = v[0]
        lead = self.terms[(v,)]
        if isinstance(lead, Element):
            if not lead.is_scalar():
                raise ValueError("leading coefficient is not a scalar")
            lead = lead.constant()
        if isinstance(lead, Poly):
            lc = lead.constant()
            if lc is None:
                raise ValueError("leading coefficient must be a rational")
            lead = lc
        if D is None:
            if prec is None:
                raise PrecisionError("inverse of an exact series needs a precision")
            D = prec + 2 * v
            target = prec
        else:
            target = D - 2 * v if prec is None else min(prec, D - 2 * v)
        inv_lead = Fraction(1) / lead
        # unit part: 1 + b with b_k = lead^{-1} c_{k+v}
        width = target + v
        b = {}
        for (k,), c in self.terms.items():
            kk = k - v
            if 0 < kk <= width:
                b[kk] = c * inv_lead
        y = [1]
        for k in range(1, width + 1):
            acc = 0
            for j in range(1, k + 1):
                bj = b.get(j)
                if bj is None:
                    continue
                yk = y[k - j]
                if yk:
                    acc = acc + bj * yk
            y.append(-acc)
        t = {}
        for k, c in enumerate(y):
            if bool(c):
                t[(k - v,)] = c * inv_lead if inv_lead != 1 else c
        return Series._raw(t, self.vars, (target,))

    def dx(self):
        """Derivative with respect to ``x = u^{-1}``."""
        D = self._uni()
        t = {}
        for (k,), c in self.terms.items():
            if k:
                t[(k - 1,)] = c * k
        return Series._raw(t, self.vars, (None if D is None else D - 1,))

    def log(self):
        """Formal logarithm of a series with constant term 1."""
        D = self._uni()
        if D is None:
            raise PrecisionError("log needs a finite precision")
        b = self - 1
        if b.first_nonzero() is not None and b.first_nonzero()[0] <= 0:
            raise ValueError("log requires constant term 1 and no positive powers of u")
        out = Series({}, self.vars, D)
        power = Series.const(1, self.vars)
        for j in range(1, D + 1):
            power = power * b
            out = out + power * Fraction((-1) ** (j + 1), j)
        return out

    def exp(self):
        """Formal exponential of a series without constant term."""
        D = self._uni()
        if D is None:
            raise PrecisionError("exp needs a finite precision")
        fn = self.first_nonzero()
        if fn is not None and fn[0] <= 0:
            raise ValueError("exp requires a series of positive valuation")
        out = Series.const(1, self.vars, D)
        power = Series.const(1, self.vars)
        for j in range(1, D + 1):
            power = power * self
            out = out + power * Fraction(1, factorial(j))
        return out

    # -- output -------------------------------------------------------------
    def _mono(self, k):
        parts = []
        for v, e in zip(self.vars, k):
            if e == 0:
                continue
            p = -e
            parts.append(v if p == 1 else f"{v}^{p}" if p > 0 else f"{v}^({p})")
        return "*".join(parts)

    def __repr__(self):
        parts = []
        for k in sorted(self.terms):
            c = self.terms[k]
            cs = scalar_str(c) if is_scalar(c) else repr(c)
            if isinstance(c, Element) and len(c.terms) > 1 or (isinstance(c, Poly) and len(c.terms) > 1):
                cs = f"({cs})"
            m = self._mono(k)
            parts.append(cs if not m else f"{cs}*{m}")
        body = " + ".join(parts) if parts else "0"
        tail = ", ".join(f"O({v}^{-(p + 1)})" for v, p in zip(self.vars, self.prec) if p is not None)
        return f"{body} + {tail}" if tail else body

    def to_json(self):
        def cj(c):
            return c.to_json() if isinstance(c, Element) else scalar_json(c)

        if self.nvars == 1:
            return {
                "var": self.vars[0],
                "prec": self.prec[0],
                "terms": [{"exp": -k[0], "coeff": cj(self.terms[k])} for k in sorted(self.terms)],
            }
        return {
            "vars": list(self.vars),
            "prec": list(self.prec),
            "terms": [{"exp": [-e for e in k], "coeff": cj(self.terms[k])} for k in sorted(self.terms)],
        }


class SeriesMatrix:
    """Square matrix indexed by ``labels`` with entries in a ring.

    Entries are usually :class:`Series` but any objects supporting ``+`` and
    ``*`` (algebra elements, scalars) work for the non-inverting operations.
    """

    __slots__ = ("_pos", "labels", "rows")

    def __init__(self, labels, entries):
        self.labels = tuple(labels)
        self._pos = {a: i for i, a in enumerate(self.labels)}
        if callable(entries):
            self.rows = [[entries(i, j) for j in self.labels] for i in self.labels]
        else:
            self.rows = [list(r) for r in entries]
        n = len(self.labels)
        if len(self.rows) != n or any(len(r) != n for r in self.rows):
            raise ValueError("matrix shape does not match its index set")

    @classmethod
    def identity(cls, labels, one=1, zero=0):
        return cls(labels, lambda i, j: one if i == j else zero)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[self._pos[i]][self._pos[j]]

    @property
    def size(self):
        return len(self.labels)

    def _check(self, other):
        if not isinstance(other, SeriesMatrix) or other.labels != self.labels:
            raise ValueError("index-set mismatch")

    def map(self, f):
        return SeriesMatrix(self.labels, [[f(x) for x in r] for r in self.rows])

    def __add__(self, other):
        if isinstance(other, SeriesMatrix):
            self._check(other)
            return SeriesMatrix(
                self.labels, [[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)]
            )
        # scalar-like: add to the diagonal
        return SeriesMatrix(
            self.labels, [[x + other if i == j else x for j, x in enumerate(r)] for i, r in enumerate(self.rows)]
        )

    __radd__ = __add__

    def __neg__(self):
        return self.map(lambda x: -x)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, SeriesMatrix):
            self._check(other)
            n = self.size
            out = []
            for i in range(n):
                row = []
                for j in range(n):
                    acc = None
                    for k in range(n):
                        a = self.rows[i][k]
                        b = other.rows[k][j]
                        if _zeroish(a) or _zeroish(b):
                            continue
                        p = a * b
                        acc = p if acc is None else acc + p
                    row.append(acc if acc is not None else 0)
                out.append(row)
            return SeriesMatrix(self.labels, out)
        return self.map(lambda x: x * other)

    def __rmul__(self, other):
        return self.map(lambda x: other * x)

    def trace(self):
        acc = 0
        for i in range(self.size):
            acc = acc + self.rows[i][i]
        return acc

    def transpose(self):
        n = self.size
        return SeriesMatrix(self.labels, [[self.rows[j][i] for j in range(n)] for i in range(n)])

    def theta_transpose(self, theta):
        """``(A^t)_{ij} = theta(i, j) a_{-j,-i}`` on a signed index set."""
        if any(-a not in self._pos for a in self.labels):
            raise ValueError("theta-transpose needs a signed index set")
        return SeriesMatrix(self.labels, lambda i, j: _scale(self[-j, -i], theta(i, j)))

    def submatrix(self, rows, cols=None):
        cols = rows if cols is None else cols
        if list(rows) != list(cols) and len(rows) != len(cols):
            raise ValueError("submatrix must be square")
        # rows and columns are relabelled by the row labels
        entries = [[self[i, j] for j in cols] for i in rows]
        return SeriesMatrix(list(rows) if list(rows) == list(cols) else range(len(rows)), entries)

    def series_map(self, f):
        return self.map(lambda x: f(x) if isinstance(x, Series) else x)

    def shift(self, c):
        return self.series_map(lambda s: s.shift(c))

    def negate_var(self):
        return self.series_map(lambda s: s.negate_var())

    def is_zero(self):
        for r in self.rows:
            for x in r:
                if not _is_zero(x):
                    return False
        return True

    def __eq__(self, other):
        if isinstance(other, SeriesMatrix):
            self._check(other)
        return (self - other).is_zero()

    __hash__ = None

    def inverse(self):
        """Inverse of a matrix of univariate series with identity leading term."""
        n = self.size
        D = None
        var = None
        for r in self.rows:
            for x in r:
                if isinstance(x, Series):
                    D = _min(D, x.prec[0])
                    var = x.vars
                    if x.first_nonzero() is not None and x.first_nonzero()[0] < 0:
                        raise ValueError("matrix entries must not contain positive powers of u")
        if D is None:
            raise PrecisionError("matrix inverse needs entries of finite precision")
        coeff = [[[_coeff(self.rows[i][j], k) for j in range(n)] for i in range(n)] for k in range(D + 1)]
        for i in range(n):
            for j in range(n):
                c = coeff[0][i][j]
                if not (c == (1 if i == j else 0)):
                    raise ValueError("leading coefficient of the matrix is not the identity")
        ys = [[[1 if i == j else 0 for j in range(n)] for i in range(n)]]
        for k in range(1, D + 1):
            yk = [[0] * n for _ in range(n)]
            for m in range(1, k + 1):
                A = coeff[m]
                B = ys[k - m]
                for i in range(n):
                    Ai = A[i]
                    for l in range(n):
                        a = Ai[l]
                        if _zeroish(a):
                            continue
                        Bl = B[l]
                        for j in range(n):
                            b = Bl[j]
                            if _zeroish(b):
                                continue
                            yk[i][j] = yk[i][j] - a * b
            ys.append(yk)
        return SeriesMatrix(
            self.labels,
            [
                [Series({k: ys[k][i][j] for k in range(D + 1)}, var, D) for j in range(n)]
                for i in range(n)
            ],
        )

    def __repr__(self):
        return "\n".join(
            f"[{a},{b}]: {self.rows[i][j]!r}"
            for i, a in enumerate(self.labels)
            for j, b in enumerate(self.labels)
        )

    def to_json(self):
        def ej(x):
            if isinstance(x, (Series, Element)):
                return x.to_json()
            return scalar_json(x)

        return {
            "labels": list(self.labels),
            "entries": [[ej(x) for x in r] for r in self.rows],
        }


def _zeroish(x):
    """Exactly zero (safe to skip in sums without losing precision data)."""
    if isinstance(x, Series):
        return not x.terms and all(p is None for p in x.prec)
    return not x


def _is_zero(x):
    if isinstance(x, Series):
        return x.is_zero()
    return not x


def _scale(x, c):
    if c == 1:
        return x
    return x * c


def _coeff(x, k):
    if isinstance(x, Series):
        return x.coeff(k)
    return x if k == 0 else 0


def quasideterminant(M, i, j):
    """``|M|_{ij} = ((M^{-1})_{ji})^{-1}``."""
    if M.size == 1:
        return M[i, j]
    inv = M.inverse()
    return inv[j, i].invert()
