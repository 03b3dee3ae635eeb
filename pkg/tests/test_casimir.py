from fractions import Fraction
from itertools import permutations

import pytest

from yangian import EnvAlgebra, make_g, make_gl, make_o_skew, signed_indices, var
from yangian import casimir as cs

U_ = var("u")


def l(i):
    return var(f"l{i}")


# -- Capelli determinants -----------------------------------------------------------------

def test_capelli_gl2_by_hand():
    C, U = cs.capelli_C_gl(2)
    E = U.E
    coeffs = cs.poly_coeffs(C)
    assert coeffs[2] == 1
    assert coeffs[1] == E(1, 1) + E(2, 2) - 1
    assert coeffs[0] == E(1, 1) * E(2, 2) - E(1, 1) - E(2, 1) * E(1, 2)


def test_capelli_sp2_by_hand():
    # (u + 1 + F_{-1,-1})(u - 1 + F_11) - F_{1,-1} F_{-1,1}
    C, U = cs.capelli_C_g("sp", 2)
    F = U.F
    coeffs = cs.poly_coeffs(C)
    assert coeffs[2] == 1
    assert F(-1, -1) == -F(1, 1)
    assert coeffs.get(1, 0) == 0
    assert coeffs[0] == (F(-1, -1) + 1) * (F(1, 1) - 1) - F(1, -1) * F(-1, 1)


def test_capelli_n1():
    C, U = cs.capelli_C_gl(1)
    assert cs.poly_coeffs(C) == {1: 1, 0: U.E(1, 1)}
    assert cs.chi_poly(C, U) == U_ + l(1)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_capelli_gl_central_and_image(n):
    C, U = cs.capelli_C_gl(n)
    assert cs.central_coefficients(C, U)
    assert cs.chi_poly(C, U) == cs.capelli_gl_chi_target(n)


@pytest.mark.parametrize("case,N", [("o", 2), ("sp", 2), ("o", 3), ("o", 4), ("sp", 4), ("o", 5)])
def test_capelli_g_central_and_image(case, N):
    C, U = cs.capelli_C_g(case, N)
    assert cs.central_coefficients(C, U)
    assert cs.chi_poly(C, U) == cs.capelli_chi_target(case, N)


def test_capelli_chi_target_odd():
    assert cs.capelli_chi_target("o", 3) == (U_**2 - l(1) ** 2) * (U_ + Fraction(1, 2))
    assert cs.capelli_chi_target("o", 1) == U_ + Fraction(1, 2)


def test_capelli_arrangement_independent():
    U = EnvAlgebra(make_g("o", 3))
    ref, _ = cs.capelli_C_g("o", 3, U=U)
    for a in permutations(signed_indices(3)):
        C, _ = cs.capelli_C_g("o", 3, arrangement=list(a), U=U)
        assert C == ref


def test_capelli_bad_arrangement():
    with pytest.raises(ValueError):
        cs.capelli_C_g("o", 3, arrangement=[-1, 1, 2])


def test_poly_coeffs_rejects_series():
    from yangian import Series

    with pytest.raises(ValueError):
        cs.poly_coeffs(Series({1: 1}, ("u",), 3))


# -- Newton and Cayley-Hamilton ------------------------------------------------------------

@pytest.mark.parametrize("n,K", [(1, 5), (2, 5), (3, 4)])
def test_newton_gl(n, K):
    assert cs.newton_gl_check(n, K) == {"newton": True, "perelomov-popov": True}


@pytest.mark.parametrize("case,N", [("sp", 2), ("o", 3), ("o", 4), ("o", 2)])
def test_newton_g(case, N):
    assert cs.newton_g_check(case, N, 4) == {"newton": True, "perelomov-popov": True}


@pytest.mark.parametrize("n", [1, 2, 3])
def test_cayley_hamilton_gl(n):
    checks = cs.cayley_hamilton_gl(n)
    assert len(checks) == 2 and all(checks.values()), checks


def test_cayley_hamilton_gl_limit():
    with pytest.raises(ValueError):
        cs.cayley_hamilton_gl(4)


@pytest.mark.parametrize("case,N", [("sp", 2), ("o", 3), ("o", 4)])
def test_cayley_hamilton_g(case, N):
    assert cs.cayley_hamilton_g(case, N)


def test_cayley_hamilton_wrong_shift_fails():
    # substituting -E without the n-1 shift must not annihilate C
    C, U = cs.capelli_C_gl(2)
    M = -U.generator_matrix()
    assert not cs._is_zero_matrix(cs._substitute(C, M, U))


def test_cayley_hamilton_gl1_by_hand():
    # C(u) = u + E11, so C(-E11) = 0
    C, U = cs.capelli_C_gl(1)
    M = -U.generator_matrix()
    assert cs._is_zero_matrix(cs._substitute(C, M, U))


# -- graphical families ---------------------------------------------------------------------

@pytest.mark.parametrize("n", [1, 2, 3])
def test_graphical_gl_quasidet(n):
    assert cs.graphical_gl_quasidet_check(n, 3)


@pytest.mark.parametrize("n", [2, 3])
def test_graphical_gl_images(n):
    checks = cs.graphical_gl_images(n, 3)
    assert all(checks.values()), checks


def test_graphical_gl_first_terms():
    fams = cs.graphical_families_gl(2, 2)
    U, agg = fams["U"], fams["aggregate"]
    E = U.E
    # the single-vertex loop and the shifted second vertex
    assert fams["per_m"][1]["Lambda"][1] == E(1, 1)
    assert agg["Lambda"][1] == E(1, 1) + E(2, 2) - 1
    assert agg["Psi"][1] == agg["Phi"][1]


def test_graphical_gl_limit():
    with pytest.raises(ValueError):
        cs.graphical_families_gl(4, 2)


@pytest.mark.parametrize("case,N", [("sp", 2), ("o", 4), ("o", 3)])
def test_graphical_g(case, N):
    checks = cs.graphical_g_images(case, N, 4)
    assert all(checks.values()), checks
    assert cs.graphical_g_vs_sdet(case, N, 4)


# -- Pfaffians and Hafnians --------------------------------------------------------------------

def test_sp2_hafnian_of_repeated_index():
    U = EnvAlgebra(make_g("sp", 2))
    assert cs.hafnian(U, [1, 1]) == U.F(1, -1)
    assert cs.hafnian(U, [1, 1], method="full") == U.F(1, -1)


def test_pfaffian_pair_is_entry():
    U = EnvAlgebra(make_o_skew(4))
    assert cs.pfaffian(U, [1, 2]) == U.F(1, 2)
    V = EnvAlgebra(make_g("o", 4))
    assert cs.pfaffian(V, [1, 2]) == V.F(1, -2)


@pytest.mark.parametrize("spec", [make_o_skew(4), make_g("o", 4), make_o_skew(6)], ids=["skew4", "o4", "skew6"])
def test_pfaffian_matchings_equal_full_sum(spec):
    U = EnvAlgebra(spec)
    idx = list(spec.indices)
    assert cs.pfaffian(U, idx) == cs.pfaffian(U, idx, method="full")
    assert cs.pfaffian(U, idx[:2]) == cs.pfaffian(U, idx[:2], method="full")


def test_hafnian_matchings_equal_full_sum():
    U = EnvAlgebra(make_g("sp", 4))
    for I in ([-2, -1, 1, 2], [1, 1, 2, 2], [-1, -1, 1, 1]):
        assert cs.hafnian(U, I) == cs.hafnian(U, I, method="full")


@pytest.mark.parametrize("N", [2, 3, 4, 5])
def test_pfaffian_decomposition(N):
    assert cs.pfdec_check(N)


@pytest.mark.parametrize("N", [2, 3, 4])
def test_skew_decomposition(N):
    assert cs.skew_pfdec_check(N)


@pytest.mark.parametrize("N", [2, 3, 4])
def test_pfsqu(N):
    assert cs.pfsqu_check(N)


@pytest.mark.parametrize("N", [2, 4])
def test_pfdet(N):
    assert cs.pfdet_check(N)


def test_pfdet_odd():
    with pytest.raises(ValueError):
        cs.pfdet_check(3)


def test_D_standard_limit():
    with pytest.raises(ValueError):
        cs.D_standard(5)


@pytest.mark.parametrize("N,K", [(2, 6), (4, 4)])
def test_hafnian_decomposition(N, K):
    assert cs.hfdec_check(N, K)


def test_first_pfaffian_element_image():
    # chi(c_1) = -sum (l_i^2 - rho_i^2)
    for case, N in [("o", 4), ("o", 5)]:
        U = EnvAlgebra(make_g(case, N))
        c1 = cs.pf_elements(U)[1]
        spec = U.spec
        expected = -sum((l(i) ** 2 - spec.rho(i) ** 2 for i in range(1, N // 2 + 1)), var("u") * 0)
        assert U.hc_image_l(c1) == expected


@pytest.mark.parametrize("case,N", [("o", 3), ("o", 4), ("o", 5), ("sp", 2), ("sp", 4)])
def test_central_families(case, N):
    kw = {"hf_terms": 2} if case == "sp" else {}
    checks = cs.pf_hf_central_families(case, N, **kw)
    assert all(checks.values()), [k for k, v in checks.items() if not v]


def test_hafnian_family_needs_sp():
    with pytest.raises(ValueError):
        cs.pf_hf_central_families("sp", 3)


# -- symmetric-function targets -------------------------------------------------------------------

def test_sym_targets_small():
    assert cs.sym_target("e", 2, 2) == l(1) * l(2)
    assert cs.sym_target("h", 2, 2) == l(1) ** 2 + l(1) * l(2) + l(2) ** 2
    assert cs.sym_target("p", 2, 3) == l(1) ** 3 + l(2) ** 3
    assert cs.sym_target("e2", 2, 1) == l(1) ** 2 + l(2) ** 2


def test_shifted_targets_degree_one():
    lam = [var("lam1"), var("lam2")]
    assert cs.sym_target("shifted_p", 2, 1) == lam[0] + lam[1]
    # e and h agree in degree one
    assert cs.sym_target("shifted_e", 2, 1) == cs.sym_target("shifted_h", 2, 1)


def test_twisted_targets_need_spec():
    with pytest.raises(ValueError):
        cs.sym_target("twisted_p", 2, 1)
    with pytest.raises(ValueError):
        cs.sym_target("nonsense", 2, 1, make_g("o", 4))


def test_twisted_p_target():
    spec = make_g("o", 4)
    assert cs.sym_target("twisted_p", 2, 1, spec) == l(1) ** 2 - 1 + l(2) ** 2


@pytest.mark.parametrize("case,N", [("o", 3), ("o", 4), ("o", 5)])
def test_chi_c_matches_factorial_target(case, N):
    spec = make_g(case, N)
    chis = cs.chi_c_from_capelli(case, N)
    assert [chis[k] for k in range(N // 2 + 1)] == [cs.sym_target("factorial_e", N // 2, k, spec) for k in range(N // 2 + 1)]


def test_gelfand_images_match_newton_data():
    U = EnvAlgebra(make_gl(2))
    g1 = U.gelfand_invariant(1)
    assert U.hc_image(g1) == cs.sym_target("shifted_p", 2, 1)
    # l_i = lam_i - i + 1
    assert U.hc_image_l(g1) == l(1) + l(2) + 1
