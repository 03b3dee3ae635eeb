"""Casimir elements of gl_n, o_N and sp_N and their Harish-Chandra images.

Polynomials in ``u`` with coefficients in an enveloping algebra are exact
:class:`~yangian.series.Series` (negative exponents are powers of ``u``);
Harish-Chandra images are :class:`~yangian.scalars.Poly` values in the
variables ``u, l1, ..., ln``.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import (
    combinations,
    combinations_with_replacement,
    pairwise,
    permutations,
    product,
)
from math import factorial

from .lie import EnvAlgebra, make_g, make_gl, make_o_skew, signed_indices
from .perms import perm_sign, permutations_with_sign
from .scalars import Poly, var
from .series import Series, SeriesMatrix, quasideterminant
from .twisted import map_piN

__all__ = [
    "D_standard",
    "capelli_C_g",
    "capelli_C_gl",
    "capelli_C_skew",
    "cayley_hamilton_g",
    "cayley_hamilton_gl",
    "central_coefficients",
    "chi_poly",
    "d_elements",
    "graphical_families_g",
    "graphical_families_gl",
    "graphical_g_images",
    "graphical_gl_images",
    "hafnian",
    "newton_g_check",
    "newton_gl_check",
    "pf_elements",
    "pf_hf_central_families",
    "pfaffian",
    "sym_target",
]

U_VAR = var("u")


def _l(i):
    return var(f"l{i}")


# -- polynomials in u -------------------------------------------------------------

def _lin(U, a, x, diag):
    """``(u + a) * diag + x`` as an exact polynomial in ``u``."""
    if diag:
        return Series({-1: 1, 0: U.coerce(x) + a}, ("u",), None)
    return Series({0: U.coerce(x)}, ("u",), None)


def poly_coeffs(P):
    """``{power of u: coefficient}`` of an exact polynomial series."""
    if P.prec[0] is not None or any(k[0] > 0 for k in P.terms):
        raise ValueError("not a polynomial in u")
    return {-k[0]: c for k, c in P.terms.items()}


def central_coefficients(P, U):
    return all(U.is_central(U.coerce(c)) for c in poly_coeffs(P).values())


def chi_poly(P, U):
    """Harish-Chandra image of a central polynomial in ``u`` as a polynomial in ``u, l_i``."""
    out = Poly()
    for p, c in poly_coeffs(P).items():
        out = out + U.hc_image_l(U.coerce(c)) * U_VAR**p
    return out


# -- Capelli determinants -------------------------------------------------------------

def capelli_C_gl(n, U=None):
    """``C(u) = sum sgn p (u+E)_{p(1),1} ... (u+E-n+1)_{p(n),n}``."""
    U = U or EnvAlgebra(make_gl(n))
    labels = list(range(1, n + 1))
    total = Series({}, ("u",), None)
    for s, p in permutations_with_sign(labels):
        term = Series.const(1, ("u",))
        for k in range(n):
            term = term * _lin(U, -k, U.E(p[k], labels[k]), p[k] == labels[k])
        total = total + term if s == 1 else total - term
    return total, U


def capelli_C_g(case, N, arrangement=None, U=None):
    """``(-1)^n sum sgn(p p') (u+rho_{-n}+F)_{-a_{p(1)}, a_{p'(1)}} ... (u+rho_n+F)_{...}``."""
    U = U or EnvAlgebra(make_g(case, N))
    spec = U.spec
    idx = signed_indices(N)
    a = list(idx) if arrangement is None else list(arrangement)
    if sorted(a) != idx:
        raise ValueError("arrangement must be a permutation of the index set")
    n = N // 2
    total = Series({}, ("u",), None)
    for p in permutations(range(1, N + 1)):
        pp = map_piN(p) + (N,)
        sgn = perm_sign(p) * perm_sign(pp)
        term = Series.const(1, ("u",))
        for k in range(N):
            row, col = -a[p[k] - 1], a[pp[k] - 1]
            term = term * _lin(U, spec.rho(idx[k]), U.F(row, col), row == col)
        total = total + term if sgn == 1 else total - term
    return (total if n % 2 == 0 else -total), U


def _skew_sigma(N, k):
    n = N // 2
    return Fraction(N, 2) - k if k <= n else Fraction(N, 2) - k + 1


def capelli_C_skew(N, U=None):
    """Capelli-type determinant in the skew realization of ``o_N``."""
    U = U or EnvAlgebra(make_o_skew(N))
    total = Series({}, ("u",), None)
    for p in permutations(range(1, N + 1)):
        pp = map_piN(p) + (N,)
        sgn = perm_sign(p) * perm_sign(pp)
        term = Series.const(1, ("u",))
        for k in range(1, N + 1):
            r, c = p[k - 1], pp[k - 1]
            term = term * _lin(U, _skew_sigma(N, k), U.F(r, c), r == c)
        total = total + term if sgn == 1 else total - term
    return total, U


def D_standard(N, U=None):
    """``D(u) = sum sgn p (u+F+m)_{p(1),1} ... (u+F-m+1)_{p(N),N}``, ``m = N/2``."""
    if N > 4:
        raise ValueError("D(u) is limited to N <= 4")
    U = U or EnvAlgebra(make_o_skew(N))
    m = Fraction(N, 2)
    labels = list(range(1, N + 1))
    total = Series({}, ("u",), None)
    for s, p in permutations_with_sign(labels):
        term = Series.const(1, ("u",))
        for k in range(N):
            term = term * _lin(U, m - k, U.F(p[k], labels[k]), p[k] == labels[k])
        total = total + term if s == 1 else total - term
    return total, U


def capelli_chi_target(case, N):
    """``prod (u^2 - l_i^2)``, times ``u + 1/2`` for odd ``N``."""
    out = Poly.const(1)
    for i in range(1, N // 2 + 1):
        out = out * (U_VAR**2 - _l(i) ** 2)
    if N % 2:
        out = out * (U_VAR + Fraction(1, 2))
    return out


def capelli_gl_chi_target(n):
    out = Poly.const(1)
    for i in range(1, n + 1):
        out = out * (U_VAR + _l(i))
    return out


# -- Newton formulas -------------------------------------------------------------------

def _inv_linear(b, P):
    """``(u - b)^{-1}`` modulo ``u^{-P-1}``."""
    return Series.geometric(Fraction(b), P - 1).mul_u_power(-1)


def _newton_series(traces, b, P, pref=None):
    """``1 + pref * sum_k (-1)^k traces[k] (u - b)^{-k-1}`` modulo ``u^{-P-1}``."""
    g = _inv_linear(b, P)
    acc = Series({}, ("u",), P)
    power = g
    for k in range(P):
        acc = acc + power * (traces(k) * (-1) ** k)
        power = power * g
    if pref is not None:
        acc = pref * acc
    return Series.const(1, ("u",), P) + acc


def _pp_product(ls, P):
    """``prod (1 + 1/(u + l))`` modulo ``u^{-P-1}``."""
    out = Series.const(1, ("u",), P)
    for l in ls:
        out = out * (Series.const(1, ("u",), P) + Series({j + 1: (-l) ** j for j in range(P)}, ("u",), P))
    return out


def newton_gl_check(n, K, with_chi=True):
    """``C(u) (1 + sum (-1)^k tr E^k (u-n+1)^{-k-1}) = C(u+1)`` down to ``u^{-K}``."""
    C, U = capelli_C_gl(n)
    P = K + n
    lhs_series = _newton_series(lambda k: U.gelfand_invariant(k), n - 1, P)
    ok = (C * lhs_series).truncate(K) == C.shift(1).truncate(K)
    out = {"newton": ok}
    if with_chi:
        chis = {}

        def chi_tr(k):
            if k not in chis:
                chis[k] = U.hc_image_l(U.coerce(U.gelfand_invariant(k)))
            return chis[k]

        lhs = _newton_series(chi_tr, n - 1, K)
        out["perelomov-popov"] = lhs == _pp_product([_l(i) for i in range(1, n + 1)], K)
    return out


def _newton_prefactor(case, P):
    """``(2u+1)/(2u+1∓1)``."""
    if case == "o":
        return Series({0: 1, 1: Fraction(1, 2)}, ("u",), None)
    return Series({0: 1, 1: Fraction(1, 2)}, ("u",), None) * Series.geometric(Fraction(-1), P)


def newton_g_check(case, N, K, with_chi=True):
    """Newton formula for ``g_n`` (with ``C̄`` for odd ``N``) and its Harish-Chandra image."""
    C, U = capelli_C_g(case, N)
    spec = U.spec
    n = N // 2
    rho_n = spec.rho(n)
    P = K + N + 2
    pref = _newton_prefactor(case, P)
    series = _newton_series(lambda k: U.gelfand_invariant(k), -rho_n, P, pref)
    if N % 2 == 0:
        ok = (C * series).truncate(K) == C.shift(1).truncate(K)
    else:
        # 2u(2u+3) C(u) L(u) = (2u+1)(2u+2) C(u+1), i.e. Cbar(u) L(u) = Cbar(u+1)
        left = Series.u_poly([0, 6, 4]) * C
        right = Series.u_poly([2, 6, 4]) * C.shift(1)
        ok = (left * series).truncate(K) == right.truncate(K)
    out = {"newton": ok}
    if with_chi:
        chis = {}

        def chi_tr(k):
            if k not in chis:
                chis[k] = U.hc_image_l(U.coerce(U.gelfand_invariant(k)))
            return chis[k]

        lhs = _newton_series(chi_tr, -rho_n, K, _newton_prefactor(case, K))
        ls = []
        for i in range(1, n + 1):
            ls += [_l(i), -_l(i)]
        if N % 2:
            ls.append(0)
        out["perelomov-popov"] = lhs == _pp_product(ls, K)
    return out


# -- Cayley-Hamilton --------------------------------------------------------------------

def _substitute(P, M, U):
    """``sum_p c_p M^p`` with central coefficients placed on the left."""
    coeffs = poly_coeffs(P)
    labels = M.labels
    zero = U.zero()
    power = SeriesMatrix.identity(labels, U.one(), zero)
    total = SeriesMatrix(labels, lambda i, j: zero)
    for p in range(max(coeffs) + 1):
        c = coeffs.get(p)
        if c is not None:
            cU = U.coerce(c)
            total = total + power.map(lambda x, cU=cU: cU * x)
        power = power * M
    return total


def _is_zero_matrix(M):
    return all(not x for r in M.rows for x in r)


def cayley_hamilton_gl(n):
    """``C(-E+n-1) = 0`` and ``C(-E^t) = 0``."""
    if n > 3:
        raise ValueError("Cayley-Hamilton check is limited to n <= 3")
    C, U = capelli_C_gl(n)
    E = U.generator_matrix()
    M1 = (-E) + (n - 1)
    M2 = -E.transpose()
    return {
        "C(-E+n-1)=0": _is_zero_matrix(_substitute(C, M1, U)),
        "C(-E^t)=0": _is_zero_matrix(_substitute(C, M2, U)),
    }


def cayley_hamilton_g(case, N):
    """``C(-F - rho_n) = 0``."""
    if N > 4:
        raise ValueError("Cayley-Hamilton check is limited to N <= 4")
    C, U = capelli_C_g(case, N)
    F = U.generator_matrix()
    M = (-F) + (-U.spec.rho(N // 2))
    return _is_zero_matrix(_substitute(C, M, U))


# -- graphical constructions ---------------------------------------------------------------

def _paths(vertices, start, k):
    """All vertex sequences ``start = v0, ..., vk = start``."""
    for mid in product(vertices, repeat=k - 1):
        yield (start,) + mid + (start,)


def _path_monomial(path, label, U):
    out = U.one()
    for a, b in pairwise(path):
        out = out * label(a, b)
    return out


def _path_families(vertices, m, label, U, kmax, avoid=None):
    """``simple``, ``all``, ``first_return`` and ``returns`` weighted path sums."""
    fam = {"simple": {}, "all": {}, "psi": {}, "phi": {}}
    for k in range(1, kmax + 1):
        acc = {key: U.zero() for key in fam}
        for path in _paths(vertices, m, k):
            interior = path[1:-1]
            if avoid is not None and avoid in interior:
                continue
            x = _path_monomial(path, label, U)
            acc["all"] = acc["all"] + x
            if m not in interior:
                acc["simple"] = acc["simple"] + x
            returns = [t for t in range(1, k + 1) if path[t] == m]
            acc["psi"] = acc["psi"] + x * returns[0]
            acc["phi"] = acc["phi"] + x * Fraction(k, len(returns))
        for key, table in fam.items():
            table[k] = acc[key]
    return fam


def _convolve(seqs, total, U):
    """``sum_{i_1+...+i_r = total} x^(1)_{i_1} ... x^(r)_{i_r}`` with ``x_0 = 1``."""
    acc = U.zero()
    for parts in product(range(total + 1), repeat=len(seqs)):
        if sum(parts) != total:
            continue
        term = U.one()
        for s, i in zip(seqs, parts):
            if i:
                term = term * s[i]
        acc = acc + term
    return acc


def graphical_families_gl(n, kmax, U=None):
    """``Lambda_k, S_k, Psi_k, Phi_k`` for ``k <= kmax`` and the per-``m`` pieces."""
    if n > 3 or kmax > 4:
        raise ValueError("graphical families are limited to n <= 3, kmax <= 4")
    U = U or EnvAlgebra(make_gl(n))
    per_m = {}
    for m in range(1, n + 1):
        verts = list(range(1, m + 1))

        def label(a, b, m=m):
            return U.E(a, b) - (m - 1) if a == b else U.E(a, b)

        fam = _path_families(verts, m, label, U, kmax)
        lam = {k: fam["simple"][k] * (-1) ** (k - 1) for k in fam["simple"]}
        per_m[m] = {"Lambda": lam, "S": fam["all"], "Psi": fam["psi"], "Phi": fam["phi"]}
    agg = {"Lambda": {}, "S": {}, "Psi": {}, "Phi": {}}
    for k in range(1, kmax + 1):
        agg["Lambda"][k] = _convolve([per_m[m]["Lambda"] for m in range(1, n + 1)], k, U)
        agg["S"][k] = _convolve([per_m[m]["S"] for m in range(1, n + 1)], k, U)
        agg["Psi"][k] = sum((per_m[m]["Psi"][k] for m in range(1, n + 1)), U.zero())
        agg["Phi"][k] = sum((per_m[m]["Phi"][k] for m in range(1, n + 1)), U.zero())
    return {"per_m": per_m, "aggregate": agg, "U": U}


def _quasidet_series(U, verts, m, label, sign, kmax):
    """``|1 + sign * t X|_{mm}`` with ``t = u^{-1}`` for the labelled graph matrix ``X``."""

    def entry(a, b):
        x = label(a, b) * sign
        return Series({0: 1 if a == b else 0, 1: x}, ("u",), kmax)

    return quasideterminant(SeriesMatrix(verts, entry), m, m)


def graphical_gl_quasidet_check(n, kmax, fams=None):
    """Path sums agree with the quasi-determinant generating series for every ``m``."""
    fams = fams or graphical_families_gl(n, kmax)
    U = fams["U"]
    ok = {}
    for m, fam in fams["per_m"].items():
        verts = list(range(1, m + 1))

        def label(a, b, m=m):
            return U.E(a, b) - (m - 1) if a == b else U.E(a, b)

        plus = _quasidet_series(U, verts, m, label, 1, kmax)
        minus = _quasidet_series(U, verts, m, label, -1, kmax)
        inv = minus.invert()
        phi = -(minus.log().dx())
        psi = minus * inv.dx()
        ok[m] = all(
            plus.coeff(k) == fam["Lambda"][k]
            and inv.coeff(k) == fam["S"][k]
            and psi.coeff(k - 1) == fam["Psi"][k]
            and phi.coeff(k - 1) == fam["Phi"][k]
            for k in range(1, kmax + 1)
        )
    return all(ok.values())


def graphical_families_g(case, N, kmax, U=None):
    """Even-degree families ``Lambda_2k, S_2k, Phi_2k`` for ``2k <= kmax``."""
    n = N // 2
    if n > 2 or kmax > 4:
        raise ValueError("graphical families are limited to n <= 2, kmax <= 4")
    U = U or EnvAlgebra(make_g(case, N))
    spec = U.spec
    per_m = {}
    for m in range(1, n + 1):
        verts = [i for i in signed_indices(N) if -m <= i <= m]
        rho_m = spec.rho(m)

        def label(a, b, rho_m=rho_m):
            return U.F(a, b) + rho_m if a == b else U.F(a, b)

        full = _path_families(verts, m, label, U, kmax)
        tilde = _path_families(verts, m, label, U, kmax, avoid=-m)
        per_m[m] = {
            "Lambda": {k: full["simple"][k] * (-1) ** (k - 1) for k in full["simple"]},
            "Lambda~": {k: -tilde["simple"][k] for k in tilde["simple"]},
            "S": full["all"],
            "S~": {k: tilde["all"][k] * (-1) ** k for k in tilde["all"]},
            "Phi": full["phi"],
            "Phi~": {k: tilde["phi"][k] * (-1) ** k for k in tilde["phi"]},
            "label": label,
            "verts": verts,
        }
    agg = {"Lambda": {}, "S": {}, "Phi": {}}
    for k in range(2, kmax + 1, 2):
        seqL, seqS = [], []
        for m in range(1, n + 1):
            seqL += [per_m[m]["Lambda~"], per_m[m]["Lambda"]]
            seqS += [per_m[m]["S~"], per_m[m]["S"]]
        agg["Lambda"][k] = _convolve(seqL, k, U)
        agg["S"][k] = _convolve(seqS, k, U)
        agg["Phi"][k] = sum((per_m[m]["Phi~"][k] + per_m[m]["Phi"][k] for m in range(1, n + 1)), U.zero())
    return {"per_m": per_m, "aggregate": agg, "U": U}


def graphical_g_vs_sdet(case, N, kmax, fams=None):
    """Path sums reproduce the evaluated quasi-determinant factors of the Sklyanin determinant.

    With ``t = u^{-1}`` and ``X = F^(m) + rho_m`` the factors satisfy
    ``|S~^(m)(-u-m+h)|_mm (1 - rho_m t) = 1 + sum Lambda~_k t^k`` and
    ``|S^(m)(u-m+h)|_mm (1 + rho_m t) = 1 + sum Lambda_k t^k`` (``h = 1/2`` or ``0``).
    """
    from .twisted import build_S_eval, sdet_factorization

    fams = fams or graphical_families_g(case, N, kmax)
    U = fams["U"]
    Sm = build_S_eval(case, N, kmax, U)
    factors = sdet_factorization(Sm)
    if N % 2:
        factors = factors[1:]
    for m in range(1, N // 2 + 1):
        fam = fams["per_m"][m]
        rho_m = U.spec.rho(m)
        ft, f = factors[2 * (m - 1)], factors[2 * (m - 1) + 1]
        lhs_t = ft * Series({0: 1, 1: -rho_m}, ("u",), None)
        lhs = f * Series({0: 1, 1: rho_m}, ("u",), None)
        for k in range(1, kmax + 1):
            if lhs_t.coeff(k) != fam["Lambda~"][k] or lhs.coeff(k) != fam["Lambda"][k]:
                return False
    return True


def graphical_gl_images(n, kmax, fams=None):
    """Centrality, ``Psi_k = Phi_k`` and the images ``e_k, h_k, p_k`` of the aggregates."""
    fams = fams or graphical_families_gl(n, kmax)
    U, agg = fams["U"], fams["aggregate"]
    ks = range(1, kmax + 1)
    return {
        "central": all(U.is_central(agg[f][k]) for f in agg for k in ks),
        "Psi_k = Phi_k": all(agg["Psi"][k] == agg["Phi"][k] for k in ks),
        "image of Lambda_k": all(U.hc_image_l(agg["Lambda"][k]) == sym_target("e", n, k) for k in ks),
        "image of S_k": all(U.hc_image_l(agg["S"][k]) == sym_target("h", n, k) for k in ks),
        "image of Psi_k": all(U.hc_image_l(agg["Psi"][k]) == sym_target("p", n, k) for k in ks),
    }


def graphical_g_images(case, N, kmax, fams=None):
    """Centrality and images ``(-1)^k e_k, h_k, 2 p_k`` in ``l_i^2`` of the even-degree families."""
    fams = fams or graphical_families_g(case, N, kmax)
    U, agg = fams["U"], fams["aggregate"]
    n = N // 2
    ks = range(2, kmax + 1, 2)
    return {
        "central": all(U.is_central(agg[f][k]) for f in agg for k in ks),
        "image of Lambda_2k": all(
            U.hc_image_l(agg["Lambda"][k]) * (-1) ** (k // 2) == sym_target("e2", n, k // 2) for k in ks
        ),
        "image of S_2k": all(U.hc_image_l(agg["S"][k]) == sym_target("h2", n, k // 2) for k in ks),
        "image of Phi_2k": all(
            U.hc_image_l(agg["Phi"][k]) * Fraction(1, 2) == sym_target("p2", n, k // 2) for k in ks
        ),
    }


# -- Pfaffians and Hafnians ---------------------------------------------------------------

def _matchings(items):
    """Perfect matchings of a list of positions as lists of pairs."""
    if not items:
        yield []
        return
    a = items[0]
    for i in range(1, len(items)):
        b = items[i]
        rest = items[1:i] + items[i + 1:]
        for m in _matchings(rest):
            yield [(a, b)] + m


def _matching_sign(pairs):
    flat = [x for pr in pairs for x in pr]
    return perm_sign(flat)


def _pair_sum(I, entry, U, signed):
    """``1/(2^k k!) sum_sigma [sgn sigma] prod entry(i_sigma(2j-1), i_sigma(2j))`` via matchings."""
    if len(I) % 2:
        raise ValueError("index family must have even cardinality")
    k = len(I) // 2
    total = U.zero()
    for pairs in _matchings(list(range(len(I)))):
        s = _matching_sign(pairs) if signed else 1
        for order in permutations(pairs):
            term = U.one()
            for a, b in order:
                term = term * entry(I[a], I[b])
            total = total + term * s
    return total * Fraction(1, factorial(k))


def _full_sum(I, entry, U, signed):
    k = len(I) // 2
    total = U.zero()
    for s, sigma in permutations_with_sign(range(len(I))):
        term = U.one()
        for j in range(k):
            term = term * entry(I[sigma[2 * j]], I[sigma[2 * j + 1]])
        total = total + (term * s if signed else term)
    return total * Fraction(1, 2**k * factorial(k))


def _pf_entry(U):
    if U.spec.realization == "o-skew":
        return lambda a, b: U.F(a, b)
    return lambda a, b: U.F(a, -b)


def _hf_entry(U):
    return lambda a, b: U.F(a, -b) * (1 if a > 0 else -1)


def pfaffian(U, I, method="matchings"):
    """``Pf F^I`` in the signed or skew realization of ``o_N``."""
    I = sorted(I)
    if method == "full":
        return _full_sum(I, _pf_entry(U), U, True)
    return _pair_sum(I, _pf_entry(U), U, True)


def hafnian(U, I, method="matchings"):
    """``Hf F^I`` for a sorted multiset ``I`` of indices of ``sp_2n``."""
    I = sorted(I)
    if method == "full":
        return _full_sum(I, _hf_entry(U), U, False)
    return _pair_sum(I, _hf_entry(U), U, False)


def pf_elements(U):
    """``c_0, ..., c_n`` from Pfaffians (signed or skew realization)."""
    spec = U.spec
    skew = spec.realization == "o-skew"
    idx = list(spec.indices)
    n = spec.N // 2
    cs = [U.one()]
    for k in range(1, n + 1):
        acc = U.zero()
        for I in combinations(idx, 2 * k):
            if skew:
                p = pfaffian(U, I)
                acc = acc + p * p
            else:
                Istar = sorted(-i for i in I)
                acc = acc + pfaffian(U, I) * pfaffian(U, Istar)
        cs.append(acc if skew else acc * (-1) ** k)
    return cs


def d_elements(U, kmax):
    """``d_1, ..., d_kmax`` from Hafnians in ``sp_2n``."""
    idx = list(U.spec.indices)
    ds = [U.one()]
    for k in range(1, kmax + 1):
        acc = U.zero()
        for I in combinations_with_replacement(idx, 2 * k):
            mult = 1
            for i in set(I):
                mult *= factorial(I.count(i))
            sgn = (-1) ** sum(1 for i in I if i < 0)
            Istar = sorted(-i for i in I)
            acc = acc + hafnian(U, I) * hafnian(U, Istar) * Fraction(sgn, mult)
        ds.append(acc * (-1) ** k)
    return ds


def pfdec_check(case_N, cs=None, C=None, U=None):
    """``C(u) = sum c_k prod_{i <= n-k} (u^2 - rho_i^2)`` (times ``u + 1/2`` for odd ``N``)."""
    N = case_N
    if C is None:
        C, U = capelli_C_g("o", N, U=U)
    cs = cs or pf_elements(U)
    n = N // 2
    rhs = Series({}, ("u",), None)
    for k in range(n + 1):
        factor = Series.const(1, ("u",))
        for i in range(1, n - k + 1):
            factor = factor * Series.u_poly([-U.spec.rho(i) ** 2, 0, 1])
        rhs = rhs + factor * cs[k]
    if N % 2:
        rhs = Series.u_poly([Fraction(1, 2), 1]) * rhs
    return C == rhs


def skew_pfdec_check(N):
    """The same decomposition in the skew realization with ``rho_i -> sigma_{n-i+1}``."""
    C, U = capelli_C_skew(N)
    cs = pf_elements(U)
    n = N // 2
    rhs = Series({}, ("u",), None)
    for k in range(n + 1):
        factor = Series.const(1, ("u",))
        for i in range(1, n - k + 1):
            factor = factor * Series.u_poly([-_skew_sigma(N, n - i + 1) ** 2, 0, 1])
        rhs = rhs + factor * cs[k]
    if N % 2:
        rhs = Series.u_poly([Fraction(1, 2), 1]) * rhs
    return C == rhs


def pfsqu_check(N):
    """``D(u) = sum c_k (u+m-k)(u+m-k-1)...(u-m+k+1)`` in the skew realization."""
    D, U = D_standard(N)
    cs = pf_elements(U)
    m = Fraction(N, 2)
    rhs = Series({}, ("u",), None)
    for k in range(N // 2 + 1):
        factor = Series.const(1, ("u",))
        for j in range(N - 2 * k):
            factor = factor * Series.u_poly([m - k - j, 1])
        rhs = rhs + factor * cs[k]
    return D == rhs


def pfdet_check(N):
    """``(Pf F)^2 = C(0) = D(0)`` for even ``N`` in the skew realization."""
    if N % 2:
        raise ValueError("needs even N")
    U = EnvAlgebra(make_o_skew(N))
    pf = pfaffian(U, range(1, N + 1))
    C, _ = capelli_C_skew(N, U)
    D, _ = D_standard(N, U)
    C0 = U.coerce(poly_coeffs(C).get(0, 0))
    D0 = U.coerce(poly_coeffs(D).get(0, 0))
    return pf * pf == C0 and C0 == D0


def hfdec_check(N, K, U=None, ds=None):
    """``c(u)^{-1} = 1 + sum d_k / ((u^2-(n+1)^2)...(u^2-(n+k)^2))`` modulo ``u^{-K-1}``."""
    kmax = K // 2
    C, U = capelli_C_g("sp", N, U=U)
    n = N // 2
    ds = ds or d_elements(U, kmax)
    denom = Series.const(1, ("u",))
    for i in range(1, n + 1):
        denom = denom * Series.u_poly([-U.spec.rho(i) ** 2, 0, 1])
    c = C * denom.invert(K + 2 * n)
    cinv = c.truncate(K).invert()
    rhs = Series.const(1, ("u",), K)
    for k in range(1, kmax + 1):
        d = Series.const(1, ("u",))
        for j in range(1, k + 1):
            d = d * Series.u_poly([-(n + j) ** 2, 0, 1])
        rhs = rhs + d.invert(K) * ds[k]
    return cinv.truncate(K) == rhs.truncate(K)


def pf_hf_central_families(case, N, hf_terms=None):
    """Named checks for the Pfaffian (``o``) or Hafnian (``sp``) central families."""
    n = N // 2
    out = {}
    if case == "o":
        U = EnvAlgebra(make_g("o", N))
        cs = pf_elements(U)
        out["c_k central"] = all(U.is_central(c) for c in cs)
        out["decomposition of C(u)"] = pfdec_check(N, cs, U=U)
        chis = [U.hc_image_l(c) for c in cs]
        out["images of c_k (factorial targets)"] = all(
            chis[k] == sym_target("factorial_e", n, k, U.spec) for k in range(n + 1)
        )
        out["images of c_k (from the image of C(u))"] = chis == chi_c_from_capelli("o", N)
        if N <= 4:
            S = EnvAlgebra(make_o_skew(N))
            out["skew c_k central"] = all(S.is_central(c) for c in pf_elements(S))
            out["skew decomposition of C(u)"] = skew_pfdec_check(N)
            D, S = D_standard(N, S)
            out["D(u) central"] = central_coefficients(D, S)
            out["D(u) decomposition"] = pfsqu_check(N)
            if N % 2 == 0:
                out["(Pf F)^2 = C(0) = D(0)"] = pfdet_check(N)
        return out
    if case != "sp" or N % 2:
        raise ValueError("Hafnian families need sp with even N")
    U = EnvAlgebra(make_g("sp", N))
    K = 2 * (hf_terms or 3)
    ds = d_elements(U, K // 2)
    out["d_k central"] = all(U.is_central(d) for d in ds)
    out["images of d_k (factorial targets)"] = all(
        U.hc_image_l(ds[k]) == sym_target("factorial_h", n, k, U.spec) for k in range(len(ds))
    )
    out["inverse of c(u)"] = hfdec_check(N, K, U, ds)
    return out


# -- symmetric-function targets ---------------------------------------------------------------

def _elementary(xs, k):
    out = Poly()
    for c in combinations(xs, k):
        t = Poly.const(1)
        for x in c:
            t = t * x
        out = out + t
    return out


def _complete(xs, k):
    out = Poly()
    for c in combinations_with_replacement(xs, k):
        t = Poly.const(1)
        for x in c:
            t = t * x
        out = out + t
    return out


def _series_coeff(factors, k):
    """Coefficient of ``t^k`` in a product of power series given as coefficient lists."""
    acc = {0: Poly.const(1)}
    for f in factors:
        nxt = {}
        for a, x in acc.items():
            for b, y in enumerate(f):
                if a + b > k:
                    break
                nxt[a + b] = nxt.get(a + b, Poly()) + x * y
        acc = nxt
    return acc.get(k, Poly())


def sym_target(family, n, k, spec=None):
    """Finite-``n`` symmetric-function targets for Harish-Chandra comparisons.

    ``e, h, p`` are in ``l_1..l_n``; ``e2, h2, p2`` in ``l_i^2``; ``shifted_*``
    are the shifted families in ``lam_i`` for ``gl_n``; ``twisted_*`` use
    ``l_i^2 - rho_i^2``; ``factorial_e`` and ``factorial_h`` are the images of
    ``c_k`` and ``d_k``.
    """
    ls = [_l(i) for i in range(1, n + 1)]
    if family in ("e", "h", "p", "e2", "h2", "p2"):
        xs = ls if len(family) == 1 else [x * x for x in ls]
        base = family[0]
        if base == "e":
            return _elementary(xs, k)
        if base == "h":
            return _complete(xs, k)
        return sum((x**k for x in xs), Poly())
    if family.startswith("shifted_"):
        lams = [var(f"lam{i}") - i for i in range(1, n + 1)]
        kind = family[len("shifted_"):]
        if kind == "p":
            return sum((y**k - Poly.const(-i) ** k for i, y in enumerate(lams, 1)), Poly())
        if kind == "e":
            factors = [[Poly.const(1), y] for y in lams] + [
                [Poly.const(i) ** j for j in range(k + 1)] for i in range(1, n + 1)
            ]
        else:
            factors = [[Poly.const(1), Poly.const(i)] for i in range(1, n + 1)] + [
                [y**j for j in range(k + 1)] for y in lams
            ]
        return _series_coeff(factors, k)
    if spec is None:
        raise ValueError(f"family {family!r} needs the Lie algebra data")
    rho2 = [Poly.const(spec.rho(i) ** 2) for i in range(1, n + 1)]
    if family.startswith("twisted_"):
        kind = family[len("twisted_"):]
        l2 = [x * x for x in ls]
        if kind == "p":
            return sum((a**k - b**k for a, b in zip(l2, rho2)), Poly())
        if kind == "e":
            factors = [[Poly.const(1), a] for a in l2] + [[(-b) ** j for j in range(k + 1)] for b in rho2]
        else:
            factors = [[Poly.const(1), -b] for b in rho2] + [[a**j for j in range(k + 1)] for a in l2]
        return _series_coeff(factors, k)
    if family == "factorial_e":
        out = Poly()
        for I in combinations(range(1, n + 1), k):
            t = Poly.const(1)
            for j, i in enumerate(I, 1):
                t = t * (_l(i) ** 2 - spec.rho(i - j + 1) ** 2)
            out = out + t
        return out * (-1) ** k
    if family == "factorial_h":
        out = Poly()
        for I in combinations_with_replacement(range(1, n + 1), k):
            t = Poly.const(1)
            for j, i in enumerate(I, 1):
                t = t * (_l(i) ** 2 - (i + j - 1) ** 2)
            out = out + t
        return out
    raise ValueError(f"unknown family {family!r}")


def chi_c_from_capelli(case, N, chiC=None):
    """``chi(c_k)`` read off from ``chi(C(u))`` by the decomposition in ``u^2 - rho_i^2``."""
    n = N // 2
    spec = make_g(case, N)
    target = capelli_chi_target(case, N) if chiC is None else chiC
    if N % 2:
        # drop the (u + 1/2) factor: evaluate the quotient by substitution on a basis
        target = _divide_linear(target, Fraction(-1, 2))
    out = []
    rem = target
    # peel coefficients from the top: rem = sum_k c_k prod_{i<=n-k}(u^2 - rho_i^2)
    for k in range(n + 1):
        deg = 2 * (n - k)
        basis = Poly.const(1)
        for i in range(1, n - k + 1):
            basis = basis * (U_VAR**2 - spec.rho(i) ** 2)
        ck = _u_coeff(rem, deg)
        out.append(ck)
        rem = rem - basis * ck
    if rem:
        raise ArithmeticError("Harish-Chandra image does not decompose")
    return out


def _u_coeff(p, d):
    """Coefficient of ``u^d`` in a polynomial over ``l``-variables."""
    out = Poly()
    for mono, c in p.terms.items():
        powers = dict(mono)
        if powers.get("u", 0) == d:
            rest = tuple((v, e) for v, e in mono if v != "u")
            out = out + Poly({rest: c})
    return out


def _divide_linear(p, r):
    """Quotient of ``p`` by ``u - r`` (exact division in the ``u`` variable)."""
    deg = max((dict(m).get("u", 0) for m in p.terms), default=0)
    coeffs = [_u_coeff(p, d) for d in range(deg + 1)]
    q = [Poly()] * deg
    carry = Poly()
    for d in range(deg, 0, -1):
        carry = coeffs[d] + carry * r
        q[d - 1] = carry
    if coeffs[0] + carry * r:
        raise ArithmeticError("not divisible")
    out = Poly()
    for d, c in enumerate(q):
        out = out + c * U_VAR**d
    return out

