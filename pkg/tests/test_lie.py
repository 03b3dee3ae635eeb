from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from yangian import EnvAlgebra, commutator, make_g, make_gl, make_o_skew, var
from yangian.casimir import capelli_C_g, chi_poly
from yangian.lie import weyl_invariant


def mat_comm(a, b):
    def mul(x, y):
        out = {}
        for (i, k), v in x.items():
            for (k2, j), w in y.items():
                if k == k2:
                    out[(i, j)] = out.get((i, j), 0) + v * w
        return out

    ab, ba = mul(a, b), mul(b, a)
    keys = set(ab) | set(ba)
    return {k: ab.get(k, 0) - ba.get(k, 0) for k in keys if ab.get(k, 0) != ba.get(k, 0)}


def as_matrix(spec, x):
    """Matrix realization of a degree-one element."""
    out = {}
    for m, c in x.terms.items():
        (g,) = m
        for key, v in spec.matrices[g].items():
            out[key] = out.get(key, 0) + c * v
    return {k: v for k, v in out.items() if v}


# -- constructors ------------------------------------------------------------------

def test_gl2_bracket():
    U = EnvAlgebra(make_gl(2))
    assert commutator(U.E(1, 2), U.E(2, 1)) == U.E(1, 1) - U.E(2, 2)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_gl_dimension(n):
    assert make_gl(n).dim == n * n


@pytest.mark.parametrize("spec", [make_gl(3), make_g("o", 5), make_g("sp", 4), make_o_skew(4)], ids=repr)
def test_brackets_match_matrix_commutators(spec):
    U = EnvAlgebra(spec)
    gens = U.basis_elements()
    for a, b in product(gens, repeat=2):
        assert as_matrix(spec, commutator(a, b)) == mat_comm(as_matrix(spec, a), as_matrix(spec, b))


def test_jacobi_gl3_exhaustive():
    U = EnvAlgebra(make_gl(3))
    gens = U.basis_elements()
    for x, y, z in product(gens, repeat=3):
        jac = commutator(x, commutator(y, z)) + commutator(y, commutator(z, x)) + commutator(z, commutator(x, y))
        assert not jac


def test_orthogonal_diagonal_antidiagonal_vanishes():
    U = EnvAlgebra(make_g("o", 4))
    assert not U.F(1, -1)
    assert not U.F(2, -2)


def test_sp2_antidiagonal_element():
    spec = make_g("sp", 2)
    U = EnvAlgebra(spec)
    assert as_matrix(spec, U.F(1, -1)) == {(1, -1): 2}


@pytest.mark.parametrize("case,N,dim", [("o", 5, 10), ("sp", 4, 10), ("o", 4, 6), ("o", 3, 3), ("sp", 2, 3)])
def test_classical_dimensions(case, N, dim):
    assert make_g(case, N).dim == dim


def test_sp_needs_even_rank():
    with pytest.raises(ValueError):
        make_g("sp", 3)


def test_skew_o3_bracket():
    U = EnvAlgebra(make_o_skew(3))
    F12 = {(1, 2): 1, (2, 1): -1}
    F13 = {(1, 3): 1, (3, 1): -1}
    F23 = {(2, 3): 1, (3, 2): -1}
    c = mat_comm(F12, F13)
    sign = 1 if c == F23 else -1
    assert commutator(U.F(1, 2), U.F(1, 3)) == U.F(2, 3) * sign


@pytest.mark.parametrize("N", [2, 3, 4, 5])
def test_skew_dimension_and_symmetry(N):
    U = EnvAlgebra(make_o_skew(N))
    assert U.spec.dim == N * (N - 1) // 2
    for i in range(1, N + 1):
        for j in range(1, N + 1):
            assert U.F(i, j) == -U.F(j, i)


# -- products and matrix powers -------------------------------------------------------

def test_reordering_product():
    U = EnvAlgebra(make_gl(2))
    E12, E21 = U.E(1, 2), U.E(2, 1)
    assert E12 * E21 == E21 * E12 + U.E(1, 1) - U.E(2, 2)
    assert E12 * 1 == E12


def test_commer_relation():
    U = EnvAlgebra(make_gl(2))
    idx = [1, 2]
    for s in range(4):
        for i, j, k, l in product(idx, repeat=4):
            lhs = commutator(U.E(i, j), U.matrix_power_entry(s, k, l))
            rhs = U.matrix_power_entry(s, i, l) * int(k == j) - U.matrix_power_entry(s, k, j) * int(i == l)
            assert lhs == rhs


def test_matrix_power_zero_is_identity():
    U = EnvAlgebra(make_gl(3))
    for i, j in product([1, 2, 3], repeat=2):
        assert U.matrix_power_entry(0, i, j) == int(i == j)


def test_square_entry():
    U = EnvAlgebra(make_gl(2))
    E = U.E
    expected = E(1, 1) ** 2 + E(2, 1) * E(1, 2) + E(1, 1) - E(2, 2)
    assert U.matrix_power_entry(2, 1, 1) == expected
    # expected is already normal ordered: E21 < E11 < E22 < E12
    assert set(expected.terms) == set(U.matrix_power_entry(2, 1, 1).terms)


def test_quadruple_identity():
    U = EnvAlgebra(make_gl(2))
    P = U.matrix_power_entry
    for r in range(4):
        for s in range(4 - r):
            for i, j, k, l in product([1, 2], repeat=4):
                lhs = commutator(P(r + 1, i, j), P(s, k, l)) - commutator(P(r, i, j), P(s + 1, k, l))
                rhs = P(r, k, j) * P(s, i, l) - P(s, k, j) * P(r, i, l)
                assert lhs == rhs


def test_first_gelfand_invariant():
    U = EnvAlgebra(make_gl(3))
    assert U.gelfand_invariant(1) == U.E(1, 1) + U.E(2, 2) + U.E(3, 3)


def test_second_gelfand_invariant_central():
    U = EnvAlgebra(make_gl(2))
    g2 = U.gelfand_invariant(2)
    for i, j in product([1, 2], repeat=2):
        assert commutator(U.E(i, j), g2) == 0


def test_centrality():
    U = EnvAlgebra(make_gl(3))
    assert U.is_central(U.one())
    assert U.is_central(U.gelfand_invariant(2))
    U2 = EnvAlgebra(make_gl(2))
    assert not U2.is_central(U2.E(1, 2))


def test_carrier_mismatch():
    a, b = EnvAlgebra(make_gl(2)), EnvAlgebra(make_gl(2))
    with pytest.raises(TypeError):
        a.E(1, 2) * b.E(2, 1)


# -- Harish-Chandra projection --------------------------------------------------------------

def test_hc_pure_cartan():
    U = EnvAlgebra(make_gl(2))
    assert U.hc_image(U.E(1, 1) * U.E(2, 2)) == var("lam1") * var("lam2")


def test_hc_reorder_then_drop():
    U = EnvAlgebra(make_gl(2))
    assert U.hc_image(U.E(1, 2) * U.E(2, 1)) == var("lam1") - var("lam2")
    assert U.hc_image(U.E(2, 1) * U.E(1, 2)) == 0


def test_hc_multiplicative_on_center():
    U = EnvAlgebra(make_gl(2))
    g1, g2 = U.gelfand_invariant(1), U.gelfand_invariant(2)
    assert U.hc_image(g1 * g2) == U.hc_image(g1) * U.hc_image(g2)
    assert U.hc_image(g2 * g2) == U.hc_image(g2) ** 2


def test_hc_second_gelfand_invariant():
    # g_2 = sum E_ij E_ji; only E_12 E_21 survives off the diagonal, contributing lam1 - lam2
    U = EnvAlgebra(make_gl(2))
    lam1, lam2 = var("lam1"), var("lam2")
    assert U.hc_image(U.gelfand_invariant(2)) == lam1**2 + lam2**2 + lam1 - lam2


@pytest.mark.parametrize("case,N", [("o", 3), ("o", 4), ("sp", 2), ("sp", 4), ("o", 5)])
def test_weyl_invariance_of_capelli_image(case, N):
    C, U = capelli_C_g(case, N)
    assert weyl_invariant(chi_poly(C, U), U.spec)


def test_weyl_invariance_even_orthogonal_restriction():
    spec = make_g("o", 4)
    l1, l2 = var("l1"), var("l2")
    # l1*l2 is invariant under even sign changes only
    assert weyl_invariant(l1 * l2, spec)
    assert not weyl_invariant(l1 * l2, make_g("sp", 4))


def test_second_casimir_g_central():
    U = EnvAlgebra(make_g("o", 4))
    F = U.generator_matrix()
    assert U.is_central((F * F).trace())


def test_json_form():
    U = EnvAlgebra(make_gl(2))
    js = (U.E(1, 2) * U.E(2, 1)).to_json()
    facs = [m["factors"] for m in js["monomials"]]
    assert [["E", 2, 1], ["E", 1, 2]] in facs


# -- properties ----------------------------------------------------------------------------

def _element(U, data):
    gens = U.basis_elements()
    x = U.zero()
    for word, c in data:
        term = U.one()
        for g in word:
            term = term * gens[g % len(gens)]
        x = x + term * c
    return x


words = st.lists(st.tuples(st.lists(st.integers(0, 8), max_size=2), st.integers(-3, 3)), min_size=1, max_size=3)


@settings(max_examples=40, deadline=None)
@given(words, words, words)
def test_pbw_associativity(a, b, c):
    U = EnvAlgebra(make_gl(3))
    x, y, z = (_element(U, d) for d in (a, b, c))
    assert (x * y) * z == x * (y * z)


def _degree(x):
    return max((len(m) for m in x.terms), default=-1)


def _symbol(x):
    d = _degree(x)
    return {m: c for m, c in x.terms.items() if len(m) == d}


def _sym_product(a, b):
    out = {}
    for m1, c1 in a.items():
        for m2, c2 in b.items():
            m = tuple(sorted(m1 + m2))
            out[m] = out.get(m, 0) + c1 * c2
    return {m: c for m, c in out.items() if c}


@settings(max_examples=40, deadline=None)
@given(words, words)
def test_filtration(a, b):
    U = EnvAlgebra(make_gl(3))
    x, y = _element(U, a), _element(U, b)
    if not x or not y:
        return
    p, q = _degree(x), _degree(y)
    prod = x * y
    assert _symbol(prod) == _sym_product(_symbol(x), _symbol(y))
    assert _degree(commutator(x, y)) <= p + q - 1
