"""Homomorphisms out of the Yangian and the two sl_2 realizations.

A :class:`MapHandle` is a generator-image table extended lazily; it becomes
*certified* once its relation checker passes at a stated bound.  Images of
``t^(r)_ij`` are read off coefficient by coefficient from matrices of
series, recomputed at a higher precision when a deeper level is requested.
"""

from __future__ import annotations

from fractions import Fraction

from .algebra import HomMap, commutator
from .lie import EnvAlgebra, make_gl
from .perms import permutations_with_sign
from .qdet import liouville_z, mu_f_map, quantum_minor
from .series import Series, SeriesMatrix
from .yangian import Yangian, relation_oracle

__all__ = [
    "MAPS",
    "MapHandle",
    "antipode",
    "antipode_axiom_check",
    "antipode_square_check",
    "automorphism",
    "capelli_minor_map",
    "compose",
    "evaluation_map",
    "power_map",
    "psi_commutes_with_centralizer",
    "psi_map",
    "resolvent_map",
    "sl2_A_checks",
    "sl2_A_realization",
    "sl2_B_checks",
    "sl2_B_hopf_checks",
    "sl2_B_realization",
    "sl2_B_series",
    "tensor_series",
]


class MapHandle:
    """A map given by images of generators.

    For maps out of a Yangian the generator keys are ``(i, j, r)`` and
    ``checker`` defaults to the relation oracle (read in the opposite algebra
    when ``anti`` is set).  Other sources pass their own ``checker(handle,
    bound) -> bool``.
    """

    def __init__(self, name, source, target, image, bound, indices=None, anti=False, checker=None):
        self.name = name
        self.source = source
        self.target = target
        self.indices = list(indices) if indices is not None else None
        self.anti = anti
        self.bound = bound
        self._image = image
        self._checker = checker
        self._cache = {}
        self.certified = False

    def __repr__(self):
        state = "certified" if self.certified else "uncertified"
        return f"MapHandle({self.name}, {state} at bound {self.bound})"

    def image(self, *key):
        if len(key) == 1:
            key = key[0]
        r = self._cache.get(key)
        if r is None:
            r = self._cache[key] = self.target.coerce(self._image(*key) if isinstance(key, tuple) else self._image(key))
        return r

    def check(self, bound=None):
        bound = self.bound if bound is None else bound
        if self._checker is not None:
            return self._checker(self, bound)
        return relation_oracle(self.indices, self.image, self.target, bound, opposite=self.anti)

    def certify(self, bound=None):
        ok = self.check(bound)
        if ok:
            self.bound = self.bound if bound is None else bound
        self.certified = ok
        return ok

    def as_hom(self, Y):
        """The map as an (anti-)homomorphism on elements of the Yangian ``Y``."""
        if list(Y.indices) != self.indices:
            raise ValueError("Yangian index set does not match the map")
        return HomMap(Y, self.target, lambda g: self.image(*Y.decode(g)), anti=self.anti, name=self.name)


class _LevelTable:
    """Coefficients of a matrix of series built on demand at growing precision."""

    def __init__(self, build):
        self._build = build
        self.D = 0
        self.M = None

    def __call__(self, i, j, r):
        if r > self.D:
            self.D = max(r, 2 * self.D, 2)
            self.M = self._build(self.D)
        return self.M[i, j].coeff(r)


def compose(outer, inner, name=None):
    """``outer ∘ inner`` for maps out of Yangians; ``inner`` must land in a Yangian."""
    hom = outer.as_hom(inner.target)
    return MapHandle(
        name or f"{outer.name}∘{inner.name}",
        inner.source,
        outer.target,
        lambda i, j, r: hom(inner.image(i, j, r)),
        min(outer.bound, inner.bound),
        indices=inner.indices,
        anti=inner.anti != outer.anti,
    )


# -- maps into U(gl_n) --------------------------------------------------------

def _gl(n):
    return EnvAlgebra(make_gl(n))


def evaluation_map(n, U=None, bound=4):
    """``t_ij(u) -> delta_ij + E_ij u^{-1}``."""
    U = U or _gl(n)
    return MapHandle(
        "evaluation", f"Y({n})", U,
        lambda i, j, r: U.E(i, j) if r == 1 else U.zero(),
        bound, indices=range(1, n + 1),
    )


def power_map(n, U=None, bound=4):
    """``t^(r)_ij -> (E^r)_ij``."""
    U = U or _gl(n)
    return MapHandle(
        "power", f"Y({n})", U,
        lambda i, j, r: U.matrix_power_entry(r, i, j),
        bound, indices=range(1, n + 1),
    )


def _one_plus_E(U, labels, D, shift=0):
    """``1 + E (u - shift)^{-1}`` as a matrix of series."""

    def entry(i, j):
        coeffs = {0: 1 if i == j else 0}
        e = U.E(i, j)
        for k in range(D):
            coeffs[k + 1] = e * Fraction(shift) ** k
        return Series(coeffs, ("u",), D)

    return SeriesMatrix(labels, entry)


def resolvent_map(n, U=None, bound=4):
    """``T(u) -> (1 - E u^{-1})^{-1}`` through the series inverse."""
    U = U or _gl(n)
    labels = list(range(1, n + 1))
    table = _LevelTable(lambda D: (1 - (_one_plus_E(U, labels, D) - 1)).inverse())
    return MapHandle("resolvent", f"Y({n})", U, table, bound, indices=labels)


def _capelli_det(U, rows, cols, D):
    """Column-ordered Capelli determinant of ``1 + E u^{-1}`` on ``rows x cols``.

    Column ``k`` (from 0) carries the argument ``u - k``.
    """
    factors = [_one_plus_E(U, sorted(set(rows) | set(cols)), D, shift=k) for k in range(len(cols))]
    acc = Series({}, ("u",), D)
    for s, sigma in permutations_with_sign(rows):
        term = Series.const(1, ("u",))
        for k, c in enumerate(cols):
            term = term * factors[k][sigma[k], c]
        acc = acc + term if s == 1 else acc - term
    return acc


def capelli_minor_map(m, n, U=None, bound=3):
    """``t_ij(u) -> det(1 + E u^{-1})_{B_i B_j}`` with ``B_i = {i, m+1, ..., n}``."""
    if not 1 <= m <= n:
        raise ValueError("need 1 <= m <= n")
    U = U or _gl(n)
    tail = list(range(m + 1, n + 1))
    labels = list(range(1, m + 1))
    table = _LevelTable(
        lambda D: SeriesMatrix(labels, lambda i, j: _capelli_det(U, [i] + tail, [j] + tail, D))
    )
    return MapHandle(f"capelli_minor({m},{n})", f"Y({m})", U, table, bound, indices=labels)


def psi_map(m, n, U=None, bound=3):
    """``t_ij(u) -> qdet(1 + E u^{-1})_{B_i B_j}`` as a quantum minor of the evaluation matrix."""
    if not 1 <= m <= n:
        raise ValueError("need 1 <= m <= n")
    U = U or _gl(n)
    tail = list(range(m + 1, n + 1))
    labels = list(range(1, m + 1))
    full = list(range(1, n + 1))
    def level(D):
        T = _one_plus_E(U, full, D)
        return SeriesMatrix(labels, lambda i, j: quantum_minor(T, [i] + tail, [j] + tail))

    table = _LevelTable(level)
    return MapHandle(f"psi({m},{n})", f"Y({m})", U, table, bound, indices=labels)


def psi_commutes_with_centralizer(handle, m, n, level):
    """Images of ``t^(r)_ij`` with ``r <= level`` commute with every ``E_kl``, ``k, l > m``."""
    U = handle.target
    block = [U.E(k, l) for k in range(m + 1, n + 1) for l in range(m + 1, n + 1)]
    for r in range(1, level + 1):
        for i in handle.indices:
            for j in handle.indices:
                x = handle.image(i, j, r)
                if any(commutator(x, e) for e in block):
                    return False
    return True


# -- automorphisms of Y(n) ------------------------------------------------------

def _rational_inverse(B):
    n = len(B)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == k)) for k in range(n)] for i, row in enumerate(B)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col]), None)
        if piv is None:
            raise ValueError("matrix B is singular")
        a[col], a[piv] = a[piv], a[col]
        p = a[col][col]
        a[col] = [x / p for x in a[col]]
        for r in range(n):
            if r != col and a[r][col]:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [row[n:] for row in a]


AUTOMORPHISM_KINDS = ("mu_f", "shift_a", "conj_B", "neg_u", "transpose", "inverse")


def automorphism(kind, Y, data=None, bound=3):
    """One of the standard (anti-)automorphisms of ``Y`` as a handle.

    ``mu_f`` takes a parameter name (default ``"f"``), ``shift_a`` a rational
    ``a`` and ``conj_B`` a square rational matrix (list of rows).
    ``neg_u``, ``transpose`` and ``inverse`` are anti-automorphisms.
    """
    labels = list(Y.indices)
    anti = False
    if kind == "mu_f":
        hom = mu_f_map(Y, data or "f")
        image = lambda i, j, r: hom(Y.t(i, j, r))
    elif kind == "shift_a":
        a = Fraction(data)
        image = _LevelTable(lambda D: Y.T(D).shift(a))
    elif kind == "conj_B":
        B = [[Fraction(x) for x in row] for row in data]
        Binv = _rational_inverse(B)
        pos = {x: p for p, x in enumerate(labels)}

        def image(i, j, r):
            acc = Y.zero()
            for a in labels:
                for b in labels:
                    c = B[pos[i]][pos[a]] * Binv[pos[b]][pos[j]]
                    if c:
                        acc = acc + Y.t(a, b, r) * c
            return acc
    elif kind == "neg_u":
        anti = True
        image = lambda i, j, r: Y.t(i, j, r) * (-1) ** r
    elif kind == "transpose":
        anti = True
        image = lambda i, j, r: Y.t(j, i, r)
    elif kind == "inverse":
        anti = True
        image = _LevelTable(lambda D: Y.T(D).inverse())
    else:
        raise ValueError(f"unknown automorphism kind {kind!r}; expected one of {AUTOMORPHISM_KINDS}")
    name = kind if data is None or kind == "conj_B" else f"{kind}({data})"
    return MapHandle(name, repr(Y), Y, image, bound, indices=labels, anti=anti)


def antipode(Y, bound=3):
    """``S: T(u) -> T^{-1}(u)``, an anti-automorphism."""
    h = automorphism("inverse", Y, bound=bound)
    h.name = "antipode"
    return h


def antipode_square_check(Y, D):
    """``S^2(T(u)) = z(u + n) T(u + n)`` coefficientwise up to ``u^{-D}``."""
    n = Y.n
    S = antipode(Y).as_hom(Y)
    T = Y.T(D)
    rhs = (T.map(lambda s: liouville_z(T) * s)).shift(n)
    for i in Y.indices:
        for j in Y.indices:
            for r in range(1, D + 1):
                if S(S(Y.t(i, j, r))) != rhs[i, j].coeff(r):
                    return False
    return True


def antipode_axiom_check(Y, D):
    """``m (S ⊗ id) Δ = ε = m (id ⊗ S) Δ`` on all generators up to level ``D``."""
    S = antipode(Y).as_hom(Y)
    YY = Y.tensor_square()
    for i in Y.indices:
        for j in Y.indices:
            for r in range(1, D + 1):
                d = Y.coproduct(Y.t(i, j, r))
                if YY.contract(d, S, lambda b: b) != 0:
                    return False
                if YY.contract(d, lambda a: a, S) != 0:
                    return False
    return True


# -- the first sl_2 realization ---------------------------------------------------

A_GENERATORS = ("e", "f", "h", "Je", "Jf", "Jh")

# [x, y] for x, y in {e, f, h} as coefficients on {e, f, h}
_SL2_BRACKET = {
    ("e", "f"): {"h": 1},
    ("f", "e"): {"h": -1},
    ("h", "e"): {"e": 2},
    ("e", "h"): {"e": -2},
    ("h", "f"): {"f": -2},
    ("f", "h"): {"f": 2},
}


def sl2_A_realization(Y=None, bound=1):
    """Images of ``e, f, h, J(e), J(f), J(h)`` in ``Y(2)``."""
    Y = Y or Yangian(2)
    t = Y.t
    c = (t(1, 1, 1) + t(2, 2, 1) - 1) * Fraction(1, 2)
    images = {
        "e": t(1, 2, 1),
        "f": t(2, 1, 1),
        "h": t(1, 1, 1) - t(2, 2, 1),
        "Je": t(1, 2, 2) - c * t(1, 2, 1),
        "Jf": t(2, 1, 2) - c * t(2, 1, 1),
        "Jh": t(1, 1, 2) - t(2, 2, 2) - c * (t(1, 1, 1) - t(2, 2, 1)),
    }
    return MapHandle(
        "sl2_A", "A", Y, images.__getitem__, bound,
        checker=lambda h, b: all(sl2_A_checks(h).values()),
    )


def sl2_A_checks(handle):
    """Named results for the defining relations and Hopf structure of the images."""
    Y = handle.target
    x = handle.image
    out = {}

    def lin(coeffs, prefix=""):
        acc = Y.zero()
        for g, c in coeffs.items():
            acc = acc + x(prefix + g) * c
        return acc

    out["[e,f]=h"] = commutator(x("e"), x("f")) == x("h")
    out["[h,e]=2e"] = commutator(x("h"), x("e")) == x("e") * 2
    out["[h,f]=-2f"] = commutator(x("h"), x("f")) == x("f") * (-2)
    ok = True
    for a in "efh":
        for b in "efh":
            if commutator(x(a), x("J" + b)) != lin(_SL2_BRACKET.get((a, b), {}), "J"):
                ok = False
    out["[x,J(y)]=J([x,y])"] = ok
    lhs = commutator(commutator(x("Je"), x("Jf")), x("Jh"))
    out["cubic"] = lhs == (x("Je") * x("f") - x("e") * x("Jf")) * x("h")

    YY = Y.tensor_square()
    delta = Y.coproduct
    tt = YY.pure(x("e"), x("f")) + YY.pure(x("f"), x("e")) + YY.pure(x("h"), x("h")) * Fraction(1, 2)
    ok_x = ok_j = True
    for a in "efh":
        xa = x(a)
        if delta(xa) != YY.pure(xa, 1) + YY.pure(1, xa):
            ok_x = False
        J = x("J" + a)
        rhs = YY.pure(J, 1) + YY.pure(1, J) + commutator(YY.pure(xa, 1), tt) * Fraction(1, 2)
        if delta(J) != rhs:
            ok_j = False
    out["coproduct x"] = ok_x
    out["coproduct J(x)"] = ok_j
    out["counit"] = all(Y.counit(x(g)) == 0 for g in A_GENERATORS)
    S = antipode(Y).as_hom(Y)
    out["antipode x"] = all(S(x(a)) == -x(a) for a in "efh")
    out["antipode J(x)"] = all(S(x("J" + a)) == -x("J" + a) + x(a) for a in "efh")
    return out


# -- the second sl_2 realization ----------------------------------------------------

def sl2_B_series(Y, D):
    """``e(u), f(u), h(u)`` built from ``T(u)`` of ``Y(2)`` modulo ``u^{-D-1}``."""
    T = Y.T(D)
    inv22 = T[2, 2].invert()
    e = inv22 * T[1, 2]
    f = T[2, 1] * inv22
    h = T[1, 1] * inv22 - T[2, 1] * inv22 * T[1, 2] * inv22
    return {"e": e, "f": f, "h": h}


def sl2_B_realization(D=3, Y=None):
    """Handle on generators ``(x, k)`` for ``x`` in ``e, f, h``; ``x_k`` is the ``u^{-k-1}`` coefficient."""
    if D < 3:
        raise ValueError("the second realization needs D >= 3")
    Y = Y or Yangian(2)
    ser = sl2_B_series(Y, D)
    return MapHandle(
        "sl2_B", "B", Y, lambda g, k: ser[g].coeff(k + 1), D,
        checker=lambda h, b: all(sl2_B_checks(Y, D, ser).values()),
    )


def _uv(s, pos):
    return s.embed(("u", "v"), (pos,))


def sl2_B_checks(Y, D, ser=None):
    """Series and component forms of the defining relations, plus the composite formulas."""
    ser = ser or sl2_B_series(Y, D)
    e, f, h = ser["e"], ser["f"], ser["h"]
    eu, ev = _uv(e, 0), _uv(e, 1)
    fu, fv = _uv(f, 0), _uv(f, 1)
    hu, hv = _uv(h, 0), _uv(h, 1)
    u_minus_v = Series({(-1, 0): 1, (0, -1): -1}, ("u", "v"))

    def br(a, b):
        return a * b - b * a

    def anti(a, b):
        return a * b + b * a

    out = {}
    out["[h(u),h(v)]=0"] = br(hu, hv).is_zero()
    out["[e(u),f(v)]"] = u_minus_v * br(eu, fv) == -(hu - hv)
    out["[e(u),e(v)]"] = u_minus_v * br(eu, ev) == -((eu - ev) * (eu - ev))
    out["[f(u),f(v)]"] = u_minus_v * br(fu, fv) == (fu - fv) * (fu - fv)
    out["[h(u),e(v)]"] = u_minus_v * br(hu, ev) == -anti(hu, eu - ev)
    out["[h(u),f(v)]"] = u_minus_v * br(hu, fv) == anti(hu, fu - fv)

    def c(s, k):
        return s.coeff(k + 1)

    K = D - 1  # largest k with x_k known
    ok = {"[h_k,h_l]=0": True, "[e_k,f_l]=h_{k+l}": True, "[h_0,e_k]=2e_k": True,
          "[h_0,f_k]=-2f_k": True, "e shift": True, "f shift": True, "h-e shift": True, "h-f shift": True}
    for k in range(K + 1):
        if commutator(c(h, 0), c(e, k)) != c(e, k) * 2:
            ok["[h_0,e_k]=2e_k"] = False
        if commutator(c(h, 0), c(f, k)) != c(f, k) * (-2):
            ok["[h_0,f_k]=-2f_k"] = False
        for l in range(K + 1):
            if commutator(c(h, k), c(h, l)):
                ok["[h_k,h_l]=0"] = False
            if k + l <= K and commutator(c(e, k), c(f, l)) != c(h, k + l):
                ok["[e_k,f_l]=h_{k+l}"] = False
            if k + 1 <= K and l + 1 <= K:
                def shifted(a, b, k=k, l=l):
                    return commutator(c(a, k + 1), c(b, l)) - commutator(c(a, k), c(b, l + 1))
                if shifted(e, e) != anti(c(e, k), c(e, l)):
                    ok["e shift"] = False
                if shifted(f, f) != -anti(c(f, k), c(f, l)):
                    ok["f shift"] = False
                if shifted(h, e) != c(h, k) * c(e, l) + c(e, l) * c(h, k):
                    ok["h-e shift"] = False
                if shifted(h, f) != -(c(h, k) * c(f, l) + c(f, l) * c(h, k)):
                    ok["h-f shift"] = False
    out.update(ok)

    A = sl2_A_realization(Y)
    e0, f0, h0 = c(e, 0), c(f, 0), c(h, 0)
    out["composite e,f,h"] = A.image("e") == e0 and A.image("f") == f0 and A.image("h") == h0
    out["composite J(e)"] = A.image("Je") == c(e, 1) - anti(e0, h0) * Fraction(1, 4)
    out["composite J(f)"] = A.image("Jf") == c(f, 1) - anti(f0, h0) * Fraction(1, 4)
    out["composite J(h)"] = A.image("Jh") == c(h, 1) + (anti(e0, f0) - h0 * h0) * Fraction(1, 2)
    return out


def tensor_series(YY, a, b):
    """``a(u) ⊗ b(u)``: coefficientwise tensor product, collected by total degree."""
    left = a.map(lambda x: YY.pure(x, 1))
    right = b.map(lambda x: YY.pure(1, x))
    return left * right


def sl2_B_hopf_checks(Y, D):
    """Coproduct, antipode and counit formulas of the second realization against ``Y(2)``."""
    if D > 4:
        raise ValueError("the Hopf check is limited to D <= 4")
    ser = sl2_B_series(Y, D)
    e, f, h = ser["e"], ser["f"], ser["h"]
    YY = Y.tensor_square()
    delta = Y.coproduct
    one = Series.const(1, ("u",))

    def power(s, k):
        out = one
        for _ in range(k):
            out = out * s
        return out

    f1, e1 = f.shift(1), e.shift(1)
    de = tensor_series(YY, e, one)
    df = tensor_series(YY, one, f)
    dh = Series({}, ("u",), D)
    for k in range(D + 1):
        sign = (-1) ** k
        de = de + tensor_series(YY, power(f1, k) * h, power(e, k + 1)) * sign
        df = df + tensor_series(YY, power(f, k + 1), h * power(e1, k)) * sign
        dh = dh + tensor_series(YY, power(f1, k) * h, h * power(e1, k)) * (sign * (k + 1))
    out = {
        "coproduct e(u)": e.map(delta) == de,
        "coproduct f(u)": f.map(delta) == df,
        "coproduct h(u)": h.map(delta) == dh,
    }

    S = antipode(Y).as_hom(Y)
    g = (h + f1 * e).invert()
    out["antipode e(u)"] = e.map(S) == -(g * e)
    g2 = (h + f * e1).invert()
    out["antipode f(u)"] = f.map(S) == -(f * g2)
    out["antipode h(u)"] = h.map(S) == g * (1 - f1 * g * e)
    out["counit"] = (
        all(Y.counit(x) == 0 for x in e.terms.values())
        and all(Y.counit(x) == 0 for x in f.terms.values())
        and h.map(lambda x: Y.scalar(Y.counit(x))) == 1
    )
    return out


# -- registry ---------------------------------------------------------------------

MAPS = {
    "evaluation": lambda n=2, m=None: evaluation_map(n),
    "resolvent": lambda n=2, m=None: resolvent_map(n),
    "power": lambda n=2, m=None: power_map(n),
    "capelli_minor": lambda n=3, m=2: capelli_minor_map(m, n),
    "psi": lambda n=3, m=2: psi_map(m, n),
    "antipode": lambda n=2, m=None: antipode(Yangian(n)),
    "sl2_A": lambda n=2, m=None: sl2_A_realization(),
    "sl2_B": lambda n=2, m=None: sl2_B_realization(3),
}
