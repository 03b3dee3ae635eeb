"""Named verification suites.

A suite is a function ``params -> list of (anchor, thunk)``; each thunk returns
``True``, ``False`` or a witness string describing the first mismatch.
:func:`run_suite` evaluates the thunks in order and assembles a report.
"""

from __future__ import annotations

import random
import time
from fractions import Fraction
from itertools import permutations

from . import casimir, homs, tensor, twisted
from . import qdet as qd
from .lie import EnvAlgebra, make_gl
from .scalars import Poly, scalar_str
from .series import Series, SeriesMatrix
from .yangian import Yangian, raw_normal_form, relation_oracle

__all__ = ["DEFAULTS", "SUITES", "SuiteError", "run_suite", "series_witness"]

DEFAULTS = {"n": 2, "N": 2, "case": "o", "D": 3, "seed": 0, "kmax": 4}


class SuiteError(ValueError):
    """Unknown suite or invalid parameters."""


def series_witness(a, b):
    """``None`` if ``a == b``; otherwise the first differing coefficient."""
    diff = a - b
    if diff.is_zero():
        return None
    k = min(k for k, c in diff.terms.items() if c)
    c = diff.terms[k]
    try:
        text = str(c) if not isinstance(c, (int, Fraction, Poly)) else scalar_str(c)
    except Exception:  # noqa: BLE001 - witness text is best effort
        text = repr(c)
    return f"coefficient of {_mono(diff.vars, k)} differs by {text}"


def _mono(vars, k):
    return "*".join(f"{v}^{-e}" if e else f"{v}^0" for v, e in zip(vars, k))


def _equal(a, b):
    return lambda: series_witness(a, b) or True


def _eval_matrix(n, D):
    U = EnvAlgebra(make_gl(n))
    labels = list(range(1, n + 1))
    T = SeriesMatrix(labels, lambda i, j: Series({0: 1 if i == j else 0, 1: U.E(i, j)}, ("u",), D))
    return T, U


# -- Yangian core -------------------------------------------------------------------

def suite_relations(p):
    n, D, seed = p["n"], max(p["D"], 1), p["seed"]
    Y = Yangian(n)
    rng = random.Random(seed)
    words = [Y.random_word(rng, D, rng.randint(2, 4)) for _ in range(p.get("words", 100))]

    def normalization():
        for w in words:
            x = Y.word(w)
            left = raw_normal_form(Y, {w: 1}, "left")
            right = raw_normal_form(Y, {w: 1}, "right")
            again = Y.zero()
            for m, c in x.terms.items():
                again = again + Y.word(m, c)
            if not (x == left == right == again):
                return f"word {w}"
        return True

    bound = p.get("bound", 4)
    out = [("normal form idempotent and strategy independent", normalization)]
    for name, make in (
        ("evaluation", homs.evaluation_map),
        ("resolvent", homs.resolvent_map),
        ("power", homs.power_map),
    ):
        out.append((f"{name} map relations", lambda make=make: make(n).check(bound)))
    out.append(("capelli minor map relations", lambda: homs.capelli_minor_map(1, n).check(bound)))

    def transpose_fails():
        U = EnvAlgebra(make_gl(n))
        return not relation_oracle(Y.indices, lambda i, j, r: U.E(j, i) if r == 1 else 0, U, 2)

    out.append(("plain transpose is not a homomorphism", transpose_fails))
    return out


def suite_hopf(p):
    n, D = p["n"], p["D"]
    Y = Yangian(n)
    YY = Y.tensor_square()

    def coproduct_hom():
        return relation_oracle(Y.indices, lambda i, j, r: Y.coproduct(Y.t(i, j, r)), YY, 4)

    def coproduct_qdet():
        q = qd.qdet(Y.T(D))
        return series_witness(q.map(Y.coproduct), homs.tensor_series(YY, q, q)) or True

    return [
        ("coproduct is a homomorphism", coproduct_hom),
        ("coproduct of qdet", coproduct_qdet),
        ("antipode axiom", lambda: homs.antipode_axiom_check(Y, D)),
        ("antipode squared", lambda: homs.antipode_square_check(Y, D)),
    ]


# -- quantum determinants -------------------------------------------------------------

def suite_qdet_center(p):
    n, D = p["n"], max(p["D"], 4)
    Y = Yangian(n)
    T = Y.T(D)
    out = []
    if n == 2:
        q = qd.qdet(T)
        for a, expr in enumerate(qd.qdet_two_by_two(T), 1):
            out.append((f"n=2 expression {a}", _equal(expr, q)))

    def expansions():
        Te, _ = _eval_matrix(3, 3)
        ref = qd.qdet(Te)
        for rho in permutations([1, 2, 3]):
            for variant in (1, 2):
                w = series_witness(qd.qdet(Te, rho, variant), ref)
                if w:
                    return f"rho={rho} variant={variant}: {w}"
        return True

    def central():
        q = qd.qdet(T)
        for k in range(1, min(D, 4) + 1):
            for r in range(1, min(D, 4)):
                for i in Y.indices:
                    for j in Y.indices:
                        x = Y.t(i, j, r)
                        if q.coeff(k) * x != x * q.coeff(k):
                            return f"d_{k} with t^({r})_{i}{j}"
        return True

    out.append(("row and column expansions agree (evaluated n=3)", expansions))
    out.append(("qdet coefficients are central", central))
    return out


def suite_liouville(p):
    n, D = p["n"], max(p["D"], 3)
    checks = []
    for label, (T, _) in (("abstract", (Yangian(n).T(D + 1), None)), ("evaluated gl_3", _eval_matrix(3, D))):
        q = qd.qdet(T)
        one = SeriesMatrix.identity(T.labels, q, 0)
        C = qd.comatrix(T)
        checks.append((f"comatrix identity ({label})", lambda C=C, T=T, one=one: C * T.shift(-(T.size - 1)) == one))
        Ct = C.shift(-1).transpose()
        checks.append((f"transposed comatrix identity ({label})", lambda Ct=Ct, T=T, one=one: Ct * T.transpose() == one))
        z = qd.liouville_z(T)
        checks.append((f"Liouville formula ({label})", _equal(z * q, q.shift(-1))))
    return checks


def suite_factorizations(p):
    D = max(p["D"], 3)
    Y = Yangian(2)
    T = Y.T(D + 1)
    T3, U3 = _eval_matrix(3, D)
    return [
        ("quasi-determinant factorization (abstract n=2)", lambda: qd.qdet_factorization_check(T)),
        ("quasi-determinant factorization (evaluated n=3)", lambda: qd.qdet_factorization_check(T3)),
        ("block qdet identity (n=2, m=1)", lambda: qd.block_qdet_check(Y.T(D), 1)),
        ("Sylvester (abstract n=2, m=1)", lambda: all(qd.sylvester_check(T, 1, Y))),
        ("Sylvester (evaluated n=3, m=2)", lambda: all(qd.sylvester_check(T3, 2, U3))),
    ]


def suite_minors(p):
    D = p["D"]
    T3, _ = _eval_matrix(3, D)
    return [
        ("minor commutation (abstract n=2)", lambda: qd.minor_commutation_check(Yangian(2).T(D))),
        ("minor commutation (evaluated n=3)", lambda: qd.minor_commutation_check(T3)),
    ]


def suite_commutative(p):
    D = p["D"]
    Y = Yangian(2)
    T = Y.T(D)
    C = SeriesMatrix([1, 2], lambda i, j: (i if i == j else 0))

    def family(T):
        t1, t2 = tensor.tau(T, C, 1), tensor.tau(T, C, 2)
        xs = list(t1.terms.values()) + list(t2.terms.values())
        return all(a * b == b * a for a in xs for b in xs)

    Te, _ = _eval_matrix(2, D)
    return [
        ("tau_1, tau_2 commute (abstract)", lambda: family(T)),
        ("tau_1, tau_2 commute (evaluated)", lambda: family(Te)),
    ]


# -- tensor calculus ---------------------------------------------------------------------

def suite_tensor(p):
    D = p["D"]
    Y = Yangian(2)
    Te, _U = _eval_matrix(2, D)
    labels = [1, 2]
    return [
        ("Yang-Baxter n=2", lambda: tensor.ybe_check(labels, 2, 3)),
        ("Yang-Baxter n=3", lambda: tensor.ybe_check([1, 2, 3], 2, 3)),
        ("fused R orderings agree", lambda: tensor.fused_R(labels, [5, 3, 1]) == tensor.fused_R_reversed(labels, [5, 3, 1])),
        ("fused R at unit steps is A_m", lambda: tensor.fused_R(labels, [2, 1, 0]) == tensor.antisymmetrizer(labels, 3)),
        ("ternary relation (abstract)", lambda: tensor.rtt_check(Y.T(D))),
        ("ternary relation (evaluated)", lambda: tensor.rtt_check(Te)),
        ("fused relation m=3", lambda: tensor.fundamental_check(Y.T(D), [0, -1, -2])),
    ]


# -- homomorphisms ---------------------------------------------------------------------------

def suite_sl2(p):
    D = max(p["D"], 3)
    Y = Yangian(2)
    out = []
    for name, ok in homs.sl2_A_checks(homs.sl2_A_realization(Y)).items():
        out.append((f"first realization: {name}", lambda ok=ok: ok))
    for name, ok in homs.sl2_B_checks(Y, D + 1).items():
        out.append((f"second realization: {name}", lambda ok=ok: ok))
    for name, ok in homs.sl2_B_hopf_checks(Y, min(D, 4)).items():
        out.append((f"second realization Hopf: {name}", lambda ok=ok: ok))
    return out


def suite_maps(p):
    bound = p.get("bound", 3)
    return [(f"{name} map relations", lambda make=make: make().check(bound)) for name, make in homs.MAPS.items()]


# -- twisted Yangians -----------------------------------------------------------------------------

def _S(p):
    return twisted.build_S_embedded(p["N"], p["case"], p["D"])


def suite_twisted_relations(p):
    Sm = _S(p)
    return [
        ("quaternary relation", lambda: twisted.quaternary(Sm)),
        ("symmetry relation", lambda: twisted.symmetry_check(Sm)),
        ("relations in components", lambda: twisted.twisted_relation_check(Sm)),
    ]


def suite_sdet_crosscheck(p):
    Sm = _S(p)
    sd = twisted.sdet_formula(Sm)
    out = [("explicit formula = antisymmetrizer", _equal(sd, twisted.sdet_antisym(Sm)))]
    out.append(("explicit formula = qdet product", _equal(sd, twisted.sdet_product(Sm))))
    if Sm.N == 2:
        for form in (1, 2):
            out.append((f"N=2 expression {form}", _equal(sd, twisted.sdet_example_N2(Sm, form))))
        labels = list(reversed(Sm.S.labels))
        out.append(("arrangement independence", _equal(sd, twisted.sdet_formula(Sm, labels))))
    return out


def suite_twisted_center(p):
    Sm = _S(p)
    sd = twisted.sdet_formula(Sm)
    out = [
        ("sdet coefficients are central", lambda: twisted.sdet_center_check(Sm, min(Sm.D, 3), 2, sd)),
        ("odd/even relation", lambda: twisted.odd_even_check(Sm, sd)),
    ]
    for name, ok in twisted.zeta_checks(Sm, sd).items():
        out.append((f"zeta: {name}", lambda ok=ok: ok))
    for name, ok in twisted.sdet_factorization_check(Sm, sd).items():
        out.append((f"factorization: {name}", lambda ok=ok: ok))
    for name, ok in twisted.comatrix_checks(Sm, sd).items():
        out.append((f"comatrix: {name}", lambda ok=ok: ok))
    return out


def suite_pi_fibers(p):
    out = []
    for N in range(3, max(p["N"], 5) + 1):
        out.append((f"fiber sizes and Stirling counts N={N}", lambda N=N: twisted.fiber_analysis(N)["matches"]))
    return out


# -- Casimir elements ------------------------------------------------------------------------------

def suite_casimir_gl(p):
    n, K = p["n"], p.get("K", 5)
    C, U = casimir.capelli_C_gl(n)
    out = [
        ("Capelli coefficients central", lambda: casimir.central_coefficients(C, U)),
        ("Capelli image", lambda: casimir.chi_poly(C, U) == casimir.capelli_gl_chi_target(n)),
    ]
    for name, ok in casimir.newton_gl_check(n, K).items():
        out.append((f"Newton: {name}", lambda ok=ok: ok))
    if n <= 3:
        for name, ok in casimir.cayley_hamilton_gl(n).items():
            out.append((f"Cayley-Hamilton {name}", lambda ok=ok: ok))
    kmax = min(p["kmax"], 4 if n <= 2 else 3)
    fams = casimir.graphical_families_gl(n, kmax)
    out.append(("graphical: path sums = quasi-determinant series", lambda: casimir.graphical_gl_quasidet_check(n, kmax, fams)))
    for name, ok in casimir.graphical_gl_images(n, kmax, fams).items():
        out.append((f"graphical: {name}", lambda ok=ok: ok))
    return out


def suite_casimir_g(p):
    case, N, K = p["case"], p["N"], p.get("K", 4)
    C, U = casimir.capelli_C_g(case, N)
    out = [
        ("Capelli coefficients central", lambda: casimir.central_coefficients(C, U)),
        ("Capelli image", lambda: casimir.chi_poly(C, U) == casimir.capelli_chi_target(case, N)),
    ]
    for name, ok in casimir.newton_g_check(case, N, K).items():
        out.append((f"Newton: {name}", lambda ok=ok: ok))
    if N <= 4:
        out.append(("Cayley-Hamilton", lambda: casimir.cayley_hamilton_g(case, N)))
    if N // 2 <= 2:
        fams = casimir.graphical_families_g(case, N, 4)
        for name, ok in casimir.graphical_g_images(case, N, 4, fams).items():
            out.append((f"graphical: {name}", lambda ok=ok: ok))
        out.append(("graphical: factors of the Sklyanin determinant", lambda: casimir.graphical_g_vs_sdet(case, N, 4, fams)))
    return out


def suite_pfaffian(p):
    case, N = p["case"], p["N"]
    out = []
    for name, ok in casimir.pf_hf_central_families(case, N).items():
        out.append((name, lambda ok=ok: ok))
    return out


SUITES = {
    "relations": suite_relations,
    "hopf": suite_hopf,
    "qdet-center": suite_qdet_center,
    "liouville": suite_liouville,
    "factorizations": suite_factorizations,
    "minors": suite_minors,
    "commutative": suite_commutative,
    "tensor": suite_tensor,
    "maps": suite_maps,
    "sl2": suite_sl2,
    "twisted-relations": suite_twisted_relations,
    "sdet-crosscheck": suite_sdet_crosscheck,
    "twisted-center": suite_twisted_center,
    "pi-fibers": suite_pi_fibers,
    "casimir-gl": suite_casimir_gl,
    "casimir-g": suite_casimir_g,
    "pfaffian": suite_pfaffian,
}


def _validate(name, params):
    if name not in SUITES:
        raise SuiteError(f"unknown suite {name!r}; known: {', '.join(sorted(SUITES))}")
    p = dict(DEFAULTS)
    p.update({k: v for k, v in params.items() if v is not None})
    if p["case"] not in ("o", "sp"):
        raise SuiteError("case must be 'o' or 'sp'")
    if p["case"] == "sp" and p["N"] % 2:
        raise SuiteError("the symplectic case needs even N")
    for key in ("n", "N", "D"):
        if int(p[key]) < 1:
            raise SuiteError(f"{key} must be positive")
    if p["n"] > 3 or p["N"] > 5 or p["D"] > 6:
        raise SuiteError("parameters exceed desk scale (n <= 3, N <= 5, D <= 6)")
    return p


def run_suite(name, params=None, timing=True):
    """Run a suite and return its report as a dict."""
    p = _validate(name, params or {})
    start = time.perf_counter()
    checks = []
    for anchor, thunk in SUITES[name](p):
        try:
            res = thunk()
        except ArithmeticError as exc:
            res = f"error: {exc}"
        record = {"anchor": anchor, "status": "pass" if res is True else "fail"}
        if res is not True:
            record["witness"] = res if isinstance(res, str) else "check returned false"
        checks.append(record)
    report = {"suite": name, "params": {k: p[k] for k in sorted(p)}, "checks": checks}
    if timing:
        report["time_ms"] = round((time.perf_counter() - start) * 1000)
    return report
