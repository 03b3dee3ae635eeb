from fractions import Fraction
from itertools import product

import pytest

from yangian import EnvAlgebra, Series, Yangian, homs, make_gl
from yangian.algebra import HomMap
from yangian.qdet import sylvester_matrix

IDX = [1, 2]


@pytest.fixture(scope="module")
def Y2():
    return Yangian(2)


def _eval_hom(Y, U):
    n2 = Y.n * Y.n

    def image(g):
        i, j, r = Y.decode(g)
        return U.E(i, j) if r == 1 else U.zero()

    del n2
    return HomMap(Y, U, image, name="evaluation")


# -- maps into U(gl_n) ------------------------------------------------------------------

def test_evaluation_level_two_vanishes():
    h = homs.evaluation_map(2)
    for i, j in product(IDX, repeat=2):
        assert h.image(i, j, 2) == 0
        assert h.image(i, j, 1) == h.target.E(i, j)


@pytest.mark.parametrize("make", [homs.evaluation_map, homs.resolvent_map, homs.power_map])
def test_maps_certify(make):
    h = make(2)
    assert not h.certified
    assert h.certify(4)
    assert h.certified


def test_resolvent_images_are_powers():
    h = homs.resolvent_map(2)
    U = h.target
    for i, j, r in product(IDX, IDX, range(1, 5)):
        assert h.image(i, j, r) == U.matrix_power_entry(r, i, j)


def test_evaluation_after_inverse_at_minus_u_is_resolvent(Y2):
    D = 3
    U = EnvAlgebra(make_gl(2))
    pi = _eval_hom(Y2, U)
    M = Y2.T(D).inverse().negate_var()
    res = homs.resolvent_map(2, U)
    for i, j, r in product(IDX, IDX, range(1, D + 1)):
        assert pi(M[i, j].coeff(r)) == res.image(i, j, r)


def test_inverse_at_minus_u_is_homomorphism(Y2):
    h = homs.MapHandle(
        "inv_neg", "Y(2)", Y2, lambda i, j, r: Y2.T(r).inverse().negate_var()[i, j].coeff(r), 3, indices=IDX
    )
    assert h.certify()


def test_capelli_minor_m_equals_n_is_evaluation():
    U = EnvAlgebra(make_gl(2))
    cap = homs.capelli_minor_map(2, 2, U)
    ev = homs.evaluation_map(2, U)
    for i, j, r in product(IDX, IDX, range(1, 4)):
        assert cap.image(i, j, r) == ev.image(i, j, r)


def test_capelli_minor_m1_n2():
    U = EnvAlgebra(make_gl(2))
    E = U.E
    D = 4
    cap = homs.capelli_minor_map(1, 2, U)

    def one_plus(i, j, shift):
        # delta_ij + E_ij (u - shift)^{-1}
        return Series({0: int(i == j), **{k + 1: E(i, j) * Fraction(shift) ** k for k in range(D)}}, prec=D)

    det = one_plus(1, 1, 0) * one_plus(2, 2, 1) - one_plus(2, 1, 0) * one_plus(1, 2, 1)
    for r in range(1, D + 1):
        assert cap.image(1, 1, r) == det.coeff(r)


def test_capelli_minor_m2_n3_certifies():
    assert homs.capelli_minor_map(2, 3).certify(3)


def test_psi_commutes_with_block():
    h = homs.psi_map(2, 3)
    assert h.certify(3)
    assert homs.psi_commutes_with_centralizer(h, 2, 3, 3)
    U = h.target
    for i, j, r in product(IDX, IDX, [1, 2]):
        x = h.image(i, j, r)
        assert x * U.E(3, 3) == U.E(3, 3) * x


def test_psi_m_equals_n_is_evaluation():
    U = EnvAlgebra(make_gl(2))
    psi = homs.psi_map(2, 2, U)
    ev = homs.evaluation_map(2, U)
    for i, j, r in product(IDX, IDX, range(1, 4)):
        assert psi.image(i, j, r) == ev.image(i, j, r)


def test_psi_matches_sylvester_then_evaluation():
    D = 2
    Y3 = Yangian(3)
    U = EnvAlgebra(make_gl(3))
    pi = _eval_hom(Y3, U)
    St = sylvester_matrix(Y3.T(D), 2)
    psi = homs.psi_map(2, 3, U)
    for i, j, r in product(IDX, IDX, range(1, D + 1)):
        assert pi(St[i, j].coeff(r)) == psi.image(i, j, r)


def test_psi_differs_from_capelli_minor_only_by_construction():
    # both land on the same images: the two code paths agree
    U = EnvAlgebra(make_gl(3))
    psi = homs.psi_map(2, 3, U)
    cap = homs.capelli_minor_map(2, 3, U)
    for i, j, r in product(IDX, IDX, range(1, 3)):
        assert psi.image(i, j, r) == cap.image(i, j, r)


# -- automorphisms ----------------------------------------------------------------------

@pytest.mark.parametrize(
    "kind,data",
    [("mu_f", None), ("shift_a", Fraction(1, 2)), ("conj_B", [[1, 2], [0, 1]]), ("neg_u", None), ("transpose", None), ("inverse", None)],
)
def test_automorphisms_certify(kind, data, Y2):
    assert homs.automorphism(kind, Y2, data).certify(3)


def test_shift_round_trip(Y2):
    h = homs.compose(homs.automorphism("shift_a", Y2, Fraction(-1, 2)), homs.automorphism("shift_a", Y2, Fraction(1, 2)))
    for i, j, r in product(IDX, IDX, range(1, 4)):
        assert h.image(i, j, r) == Y2.t(i, j, r)


def test_transpose_reverses_products(Y2):
    h = homs.automorphism("transpose", Y2).as_hom(Y2)
    t = Y2.t
    x = t(1, 2, 1) * t(2, 1, 1)
    assert h(x) == t(1, 2, 1) * t(2, 1, 1)
    assert h(x) != t(2, 1, 1) * t(1, 2, 1)


def test_singular_conjugation(Y2):
    with pytest.raises(ValueError):
        homs.automorphism("conj_B", Y2, [[1, 2], [2, 4]])


def test_unknown_kind(Y2):
    with pytest.raises(ValueError):
        homs.automorphism("frobenius", Y2)


# -- antipode ---------------------------------------------------------------------------

def test_antipode_of_one(Y2):
    S = homs.antipode(Y2).as_hom(Y2)
    assert S(Y2.one()) == 1


def test_antipode_level_one(Y2):
    S = homs.antipode(Y2).as_hom(Y2)
    for i, j in product(IDX, repeat=2):
        assert S(Y2.t(i, j, 1)) == -Y2.t(i, j, 1)


def test_antipode_square(Y2):
    assert homs.antipode_square_check(Y2, 3)


def test_antipode_axiom(Y2):
    assert homs.antipode_axiom_check(Y2, 3)


# -- sl2 realizations -----------------------------------------------------------------

def test_first_realization(Y2):
    A = homs.sl2_A_realization(Y2)
    checks = homs.sl2_A_checks(A)
    assert all(checks.values()), [k for k, v in checks.items() if not v]
    x = A.image
    assert x("h") * x("e") - x("e") * x("h") == x("e") * 2


def test_first_realization_cubic_at_higher_truncation():
    A = homs.sl2_A_realization(Yangian(2), bound=5)
    assert A.certify()


def test_second_realization(Y2):
    checks = homs.sl2_B_checks(Y2, 4)
    assert all(checks.values()), [k for k, v in checks.items() if not v]


def test_second_realization_leading(Y2):
    ser = homs.sl2_B_series(Y2, 3)
    e0, f0, h0 = ser["e"].coeff(1), ser["f"].coeff(1), ser["h"].coeff(1)
    assert e0 * f0 - f0 * e0 == h0


def test_second_realization_hopf(Y2):
    checks = homs.sl2_B_hopf_checks(Y2, 3)
    assert all(checks.values()), [k for k, v in checks.items() if not v]


def test_second_realization_coproduct_leading(Y2):
    ser = homs.sl2_B_series(Y2, 3)
    YY = Y2.tensor_square()
    e0 = ser["e"].coeff(1)
    assert Y2.coproduct(e0) == YY.pure(e0, 1) + YY.pure(1, e0)
    h = ser["h"]
    assert Y2.counit(h.coeff(0)) == 1 and all(Y2.counit(h.coeff(k)) == 0 for k in range(1, 4))
    S = homs.antipode(Y2).as_hom(Y2)
    assert S(e0) == -e0


def test_hopf_check_depth_limit(Y2):
    with pytest.raises(ValueError):
        homs.sl2_B_hopf_checks(Y2, 5)


def test_registry_names():
    assert {"evaluation", "resolvent", "power", "capelli_minor", "psi", "antipode", "sl2_A", "sl2_B"} <= set(homs.MAPS)
