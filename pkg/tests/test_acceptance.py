"""Acceptance criteria at their stated scale.

Every test prints one ``PASS``/``FAIL`` line naming the criterion, the failed
sub-checks (if any) and the elapsed time, then asserts.  All comparisons are
exact.  Run with ``pytest tests/test_acceptance.py -m acceptance``.
"""

import random
import time
from itertools import permutations, product

import pytest

from yangian import EnvAlgebra, Series, SeriesMatrix, Yangian, homs, make_gl, tensor
from yangian import casimir as cs
from yangian import qdet as qd
from yangian import twisted as tw
from yangian.algebra import Element
from yangian.yangian import raw_normal_form, relation_oracle

pytestmark = pytest.mark.acceptance


def eval_matrix(n, D):
    U = EnvAlgebra(make_gl(n))
    labels = list(range(1, n + 1))
    T = SeriesMatrix(labels, lambda i, j: Series({0: int(i == j), 1: U.E(i, j)}, ("u",), D))
    return T, U


def verdict(capsys, number, title, checks, started, limit=None):
    elapsed = time.perf_counter() - started
    failed = [name for name, ok in checks.items() if not ok]
    if limit is not None and elapsed > limit:
        failed.append(f"runtime {elapsed:.1f}s over {limit}s")
    status = "FAIL" if failed else "PASS"
    line = f"[{status}] criterion {number:2d}: {title} ({len(checks)} checks, {elapsed:.2f}s)"
    if failed:
        line += "  failed: " + "; ".join(failed)
    with capsys.disabled():
        print("\n" + line)
    assert not failed, line


# -- 1 ------------------------------------------------------------------------------------

def test_criterion_01_relation_engine(capsys):
    start = time.perf_counter()
    Y = Yangian(2)
    rng = random.Random(2024)
    words = [Y.random_word(rng, 5, rng.randint(2, 4)) for _ in range(500)]

    def normal_forms():
        for w in words:
            x = Y.word(w)
            if raw_normal_form(Y, {w: 1}, "left") != x or raw_normal_form(Y, {w: 1}, "right") != x:
                return False
            if any(not Y.is_normal(m) or Y.word(m) != Element(Y, {m: 1}) for m in x.terms):
                return False
        return True

    checks = {"500 words: idempotent and strategy independent": normal_forms()}
    checks["evaluation map"] = homs.evaluation_map(2).check(4)
    checks["resolvent map"] = homs.resolvent_map(2).check(4)
    checks["power map"] = homs.power_map(2).check(4)
    checks["Capelli minor map Y(1) -> U(gl_2)"] = homs.capelli_minor_map(1, 2).check(4)
    checks["Capelli minor map Y(2) -> U(gl_3)"] = homs.capelli_minor_map(2, 3).check(4)
    verdict(capsys, 1, "relation engine soundness", checks, start, limit=120)


# -- 2 ------------------------------------------------------------------------------------

def test_criterion_02_quantum_determinant(capsys):
    start = time.perf_counter()
    Y = Yangian(2)
    T = Y.T(4)
    q = qd.qdet(T)
    checks = {f"n=2 expression {a}": expr == q for a, expr in enumerate(qd.qdet_two_by_two(T), 1)}
    Te, _ = eval_matrix(3, 4)
    ref = qd.qdet(Te)
    checks["both expansions for all rho (evaluated n=3)"] = all(
        qd.qdet(Te, rho, v) == ref for rho in permutations([1, 2, 3]) for v in (1, 2)
    )
    checks["[d_k, t^(r)_ij] = 0, k <= 4, r <= 3"] = all(
        q.coeff(k) * Y.t(i, j, r) == Y.t(i, j, r) * q.coeff(k)
        for k in range(1, 5)
        for r in range(1, 4)
        for i, j in product([1, 2], repeat=2)
    )
    verdict(capsys, 2, "quantum determinant", checks, start)


# -- 3 ------------------------------------------------------------------------------------

def test_criterion_03_hopf(capsys):
    start = time.perf_counter()
    Y = Yangian(2)
    YY = Y.tensor_square()
    q = qd.qdet(Y.T(3))
    checks = {
        "coproduct is a homomorphism (r+s <= 4)": relation_oracle(
            Y.indices, lambda i, j, r: Y.coproduct(Y.t(i, j, r)), YY, 4
        ),
        "coproduct of qdet through u^-3": q.map(Y.coproduct) == homs.tensor_series(YY, q, q),
        "antipode axiom (D=3)": homs.antipode_axiom_check(Y, 3),
        "antipode squared (D=3)": homs.antipode_square_check(Y, 3),
    }
    verdict(capsys, 3, "Hopf structure", checks, start)


# -- 4 ------------------------------------------------------------------------------------

def test_criterion_04_liouville_comatrix(capsys):
    start = time.perf_counter()
    checks = {}
    for label, T in (("Y(2), D=4", Yangian(2).T(4)), ("U(gl_3), D=3", eval_matrix(3, 3)[0])):
        n = T.size
        q = qd.qdet(T)
        one = SeriesMatrix.identity(T.labels, q, 0)
        C = qd.comatrix(T)
        checks[f"comatrix ({label})"] = C * T.shift(-(n - 1)) == one
        checks[f"transposed comatrix ({label})"] = C.shift(-1).transpose() * T.transpose() == one
        checks[f"Liouville ({label})"] = qd.liouville_z(T) * q == q.shift(-1)
    verdict(capsys, 4, "Liouville formula and comatrix", checks, start)


# -- 5 ------------------------------------------------------------------------------------

def test_criterion_05_factorizations(capsys):
    start = time.perf_counter()
    Y = Yangian(2)
    T3, U3 = eval_matrix(3, 3)
    checks = {
        "quasi-determinant product, permutable (Y(2), D=4)": qd.qdet_factorization_check(Y.T(4)),
        "quasi-determinant product, permutable (U(gl_3), D=3)": qd.qdet_factorization_check(T3),
        "block qdet (n=2, m=1)": qd.block_qdet_check(Y.T(4), 1),
    }
    rel, ident = qd.sylvester_check(Y.T(4), 1, Y)
    checks["Sylvester relations (n=2, m=1)"] = rel
    checks["Sylvester qdet identity (n=2, m=1)"] = ident
    rel, ident = qd.sylvester_check(T3, 2, U3)
    checks["Sylvester relations (n=3, m=2, evaluated)"] = rel
    checks["Sylvester qdet identity (n=3, m=2, evaluated)"] = ident
    verdict(capsys, 5, "factorizations", checks, start)


# -- 6 ------------------------------------------------------------------------------------

def test_criterion_06_sl2_realizations(capsys):
    start = time.perf_counter()
    Y = Yangian(2)
    A = homs.sl2_A_realization(Y, bound=5)
    checks = {f"first realization: {k}": v for k, v in homs.sl2_A_checks(A).items()}
    checks["first realization certified at D=5"] = A.certify(5)
    checks.update({f"second realization: {k}": v for k, v in homs.sl2_B_checks(Y, 4).items()})
    checks.update({f"second realization Hopf: {k}": v for k, v in homs.sl2_B_hopf_checks(Y, 3).items()})
    verdict(capsys, 6, "sl2 realizations", checks, start)


# -- 7 ------------------------------------------------------------------------------------

def test_criterion_07_twisted(capsys):
    start = time.perf_counter()
    checks = {}
    for case, N, D in (("o", 2, 3), ("sp", 2, 3), ("o", 3, 2)):
        Sm = tw.build_S_embedded(N, case, D)
        checks[f"quaternary ({case}, N={N}, D={D})"] = tw.quaternary(Sm)
        checks[f"symmetry ({case}, N={N}, D={D})"] = tw.symmetry_check(Sm)
    for case in ("o", "sp"):
        Sm = tw.build_S_embedded(2, case, 3)
        sd = tw.sdet_formula(Sm)
        checks[f"sdet formula = antisymmetrizer ({case})"] = sd == tw.sdet_antisym(Sm)
        checks[f"sdet formula = qdet product ({case})"] = sd == tw.sdet_product(Sm)
        for form in (1, 2):
            checks[f"N=2 expression {form} ({case})"] = tw.sdet_example_N2(Sm, form) == sd
        for name, ok in tw.zeta_checks(Sm, sd).items():
            checks[f"zeta {name} ({case}, N=2)"] = ok
        for name, ok in tw.sdet_factorization_check(Sm, sd).items():
            checks[f"factorization {name} ({case}, N=2)"] = ok
    Sm = tw.build_S_eval("o", 3, 3)
    sd = tw.sdet_formula(Sm)
    for name, ok in tw.zeta_checks(Sm, sd).items():
        checks[f"zeta {name} (o, N=3, evaluated)"] = ok
    for name, ok in tw.sdet_factorization_check(Sm, sd).items():
        checks[f"factorization {name} (o, N=3, evaluated)"] = ok
    verdict(capsys, 7, "twisted Yangians", checks, start)


# -- 8 ------------------------------------------------------------------------------------

def test_criterion_08_pi_fibers(capsys):
    start = time.perf_counter()
    checks = {}
    for N in (3, 4, 5):
        f = tw.fiber_analysis(N)
        checks[f"N={N}: power-of-two sizes"] = f["powers_of_two"]
        checks[f"N={N}: counts equal c(N-1, k)"] = f["counts"] == f["stirling"]
        checks[f"N={N}: fibers cover S_N"] = f["matches"]
    verdict(capsys, 8, "pi_N fibers", checks, start, limit=60)


# -- 9 ------------------------------------------------------------------------------------

def test_criterion_09_newton(capsys):
    start = time.perf_counter()
    checks = {}
    for n, K in ((2, 5), (3, 4)):
        for name, ok in cs.newton_gl_check(n, K).items():
            checks[f"{name} gl_{n} to u^-{K}"] = ok
    for case, N in (("sp", 2), ("o", 3), ("o", 4)):
        for name, ok in cs.newton_g_check(case, N, 4).items():
            checks[f"{name} {case}_{N} to u^-4"] = ok
    verdict(capsys, 9, "Newton and Perelomov-Popov formulas", checks, start)


# -- 10 -----------------------------------------------------------------------------------

def test_criterion_10_cayley_hamilton(capsys):
    start = time.perf_counter()
    checks = {}
    for n in (2, 3):
        for name, ok in cs.cayley_hamilton_gl(n).items():
            checks[f"{name} in U(gl_{n})"] = ok
    for case, N in (("sp", 2), ("o", 3), ("o", 4)):
        checks[f"C(-F-rho_n)=0 in U({case}_{N})"] = cs.cayley_hamilton_g(case, N)
    verdict(capsys, 10, "Cayley-Hamilton", checks, start, limit=300)


# -- 11 -----------------------------------------------------------------------------------

def test_criterion_11_graphical(capsys):
    start = time.perf_counter()
    checks = {}
    for n in (2, 3):
        fams = cs.graphical_families_gl(n, 3)
        checks[f"gl_{n}: path sums = quasi-determinant series"] = cs.graphical_gl_quasidet_check(n, 3, fams)
        for name, ok in cs.graphical_gl_images(n, 3, fams).items():
            checks[f"gl_{n}: {name}"] = ok
    for case, N in (("sp", 2), ("o", 4)):
        fams = cs.graphical_families_g(case, N, 2)
        for name, ok in cs.graphical_g_images(case, N, 2, fams).items():
            checks[f"{case}_{N}: {name}"] = ok
    verdict(capsys, 11, "graphical Casimir elements", checks, start)


# -- 12 -----------------------------------------------------------------------------------

def test_criterion_12_pfaffians_hafnians(capsys):
    start = time.perf_counter()
    checks = {
        "(Pf F)^2 = C(0) = D(0) in U(o_4)": cs.pfdet_check(4),
        "decomposition of C(u) in U(o_4)": cs.pfdec_check(4),
        "decomposition of C(u) in U(o_5)": cs.pfdec_check(5),
        "D(u) decomposition in U(o_4)": cs.pfsqu_check(4),
        "inverse of c(u) in U(sp_4), k <= 2": cs.hfdec_check(4, 4),
    }
    for case, N, kw in (("o", 4, {}), ("o", 5, {}), ("sp", 4, {"hf_terms": 2})):
        for name, ok in cs.pf_hf_central_families(case, N, **kw).items():
            checks[f"{case}_{N}: {name}"] = ok
    verdict(capsys, 12, "Pfaffians and Hafnians", checks, start)


# -- 13 -----------------------------------------------------------------------------------

def test_criterion_13_commutative_families(capsys):
    start = time.perf_counter()
    C = SeriesMatrix([1, 2], lambda i, j: i if i == j else 0)

    def commute(T):
        xs = list(tensor.tau(T, C, 1).terms.values()) + list(tensor.tau(T, C, 2).terms.values())
        return all(a * b == b * a for a in xs for b in xs)

    checks = {
        "tau_1, tau_2 coefficients commute in Y(2)": commute(Yangian(2).T(3)),
        "evaluation images commute in U(gl_2)": commute(eval_matrix(2, 3)[0]),
    }
    verdict(capsys, 13, "commutative families", checks, start)
