"""Command-line driver: verification suites, map certification, computations.

Exit status is 0 when every check passes, 1 when any check fails and 2 for
usage or parameter errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import casimir, homs, twisted
from . import qdet as qd
from .algebra import Element
from .lie import EnvAlgebra, make_g, make_o_skew
from .scalars import Poly, scalar_json, scalar_str
from .series import Series, SeriesMatrix
from .suites import SUITES, SuiteError, run_suite
from .yangian import Yangian

EXIT_PASS, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(ValueError):
    pass


# -- serialization ---------------------------------------------------------------

def to_json(x):
    if isinstance(x, (Series, SeriesMatrix, Element, Poly)):
        return x.to_json()
    if isinstance(x, dict):
        return {str(k): to_json(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [to_json(v) for v in x]
    if isinstance(x, (bool, int, str)) or x is None:
        return x
    return scalar_json(x)


def to_text(x, indent=0):
    if isinstance(x, dict):
        pad = " " * indent
        width = max((len(str(k)) for k in x), default=0)
        lines = []
        for k, v in x.items():
            if isinstance(v, dict):
                lines.append(f"{pad}{k}")
                lines.append(to_text(v, indent + 2))
            else:
                lines.append(f"{pad}{str(k).ljust(width)}  {to_text(v)}")
        return "\n".join(lines)
    if isinstance(x, (list, tuple)):
        return ", ".join(to_text(v) for v in x)
    if isinstance(x, Poly):
        return scalar_str(x)
    return str(x)


def emit(payload, fmt, out=None):
    out = out or sys.stdout
    if fmt == "json":
        out.write(json.dumps(to_json(payload), sort_keys=False) + "\n")
    else:
        out.write(to_text(payload) + "\n")


def report_text(report):
    lines = [f"suite {report['suite']}  " + " ".join(f"{k}={v}" for k, v in report["params"].items())]
    width = max((len(c["anchor"]) for c in report["checks"]), default=0)
    for c in report["checks"]:
        line = f"  {c['anchor'].ljust(width)}  {c['status']}"
        if "witness" in c:
            line += f"  ({c['witness']})"
        lines.append(line)
    if "time_ms" in report:
        lines.append(f"  time {report['time_ms']} ms")
    return "\n".join(lines)


# -- subcommands ------------------------------------------------------------------

def _params(args):
    return {k: getattr(args, k, None) for k in ("n", "N", "case", "D", "seed", "kmax")}


def cmd_suite(args):
    name = args.name or args.suite
    if not name:
        raise UsageError("a suite name is required")
    try:
        report = run_suite(name, _params(args), timing=not args.no_timing)
    except SuiteError as exc:
        raise UsageError(str(exc)) from exc
    if args.format == "json":
        text = json.dumps(report, sort_keys=True) + "\n"
    else:
        text = report_text(report) + "\n"
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_PASS if all(c["status"] == "pass" for c in report["checks"]) else EXIT_FAIL


def cmd_maps(args):
    if args.action == "list":
        emit({"maps": sorted(homs.MAPS)}, args.format)
        return EXIT_PASS
    if args.name not in homs.MAPS:
        raise UsageError(f"unknown map {args.name!r}; known: {', '.join(sorted(homs.MAPS))}")
    handle = homs.MAPS[args.name]()
    ok = handle.certify(args.bound)
    emit({"map": args.name, "bound": args.bound if args.bound is not None else handle.bound, "certified": ok}, args.format)
    return EXIT_PASS if ok else EXIT_FAIL


def compute(obj, args):
    """The value of a named object as a JSON-able payload."""
    n = args.n or 2
    D = args.D if args.D is not None else 3
    if obj in ("qdet", "qcomatrix", "liouville", "dtilde"):
        T = Yangian(n).T(D)
        if obj == "qdet":
            return {"qdet": qd.qdet(T)}
        if obj == "qcomatrix":
            return {"comatrix": qd.comatrix(T)}
        if obj == "liouville":
            return {"z": qd.liouville_z(T)}
        return {"dtilde": qd.dtilde_solve(qd.qdet(T), n)}
    if obj == "qminor":
        if not args.upper or not args.lower:
            raise UsageError("qminor needs --upper and --lower")
        T = Yangian(n).T(D)
        return {"minor": qd.quantum_minor(T, _ints(args.upper), _ints(args.lower))}
    if obj == "stirling":
        N = args.N or 4
        c = twisted.stirling_first(N - 1)
        return {"N": N, "c": {k: c[k] for k in range(1, N)}}
    if obj == "piN":
        if not args.perm:
            raise UsageError("piN needs --perm")
        p = _ints(args.perm)
        if sorted(p) != list(range(1, len(p) + 1)):
            raise UsageError("--perm must list a permutation of 1..N")
        return {"perm": p, "image": list(twisted.map_piN(tuple(p)) + (len(p),))}
    if obj == "fibers":
        N = args.N or 4
        if not 2 <= N <= 7:
            raise UsageError("fibers needs 2 <= N <= 7")
        return twisted.fiber_analysis(N)
    if obj == "sdet":
        N = args.N or 2
        case = args.case or "o"
        Sm = twisted.build_S_embedded(N, case, D) if N <= 3 else twisted.build_S_eval(case, N, D)
        return {"construction": Sm.construction, "sdet": twisted.sdet_formula(Sm)}
    if obj == "hc":
        return hc_payload(args)
    raise UsageError(f"unknown object {obj!r}")


def hc_payload(args):
    target = args.target or "capelli"
    algebra = args.algebra or "gl"
    if target != "capelli":
        raise UsageError("only --target capelli is available")
    if algebra == "gl":
        n = args.n or 2
        C, U = casimir.capelli_C_gl(n)
        chi = casimir.chi_poly(C, U)
        return {"image": chi, "equals_product": chi == casimir.capelli_gl_chi_target(n)}
    N = args.N or 2
    C, U = casimir.capelli_C_g(algebra, N)
    chi = casimir.chi_poly(C, U)
    return {"image": chi, "equals_product": chi == casimir.capelli_chi_target(algebra, N)}


def _ints(text):
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x]
    except ValueError as exc:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from exc


def cmd_compute(args):
    emit(compute(args.object, args), args.format)
    return EXIT_PASS


def cmd_casimir(args):
    alg = args.algebra
    kmax = args.kmax or 2
    fam = args.family
    if alg == "gl":
        n = args.n or 2
        if fam == "capelli":
            C, U = casimir.capelli_C_gl(n)
            chi = casimir.chi_poly(C, U)
            payload = {"C": C, "image": chi, "checks": {
                "central": casimir.central_coefficients(C, U),
                "image": chi == casimir.capelli_gl_chi_target(n)}}
        elif fam == "newton":
            payload = {"checks": casimir.newton_gl_check(n, kmax + 3)}
        elif fam == "graphical":
            fams = casimir.graphical_families_gl(n, kmax)
            U = fams["U"]
            payload = {
                "elements": {f"{f}_{k}": v for f, d in fams["aggregate"].items() for k, v in d.items()},
                "images": {f"{f}_{k}": U.hc_image_l(v) for f, d in fams["aggregate"].items() for k, v in d.items()},
                "checks": casimir.graphical_gl_images(n, kmax, fams),
            }
        else:
            raise UsageError(f"family {fam!r} is not available for gl")
    elif alg in ("o", "sp"):
        N = args.N or 2
        if alg == "sp" and N % 2:
            raise UsageError("sp needs even N")
        if fam == "capelli":
            C, U = casimir.capelli_C_g(alg, N)
            chi = casimir.chi_poly(C, U)
            payload = {"C": C, "image": chi, "checks": {
                "central": casimir.central_coefficients(C, U),
                "image": chi == casimir.capelli_chi_target(alg, N)}}
        elif fam == "newton":
            payload = {"checks": casimir.newton_g_check(alg, N, kmax + 2)}
        elif fam == "graphical":
            if N > 5:
                raise UsageError("graphical families need N <= 5")
            k = 2 * max(1, min(kmax, 2))
            fams = casimir.graphical_families_g(alg, N, k)
            U = fams["U"]
            payload = {
                "elements": {f"{f}_{j}": v for f, d in fams["aggregate"].items() for j, v in d.items()},
                "images": {f"{f}_{j}": U.hc_image_l(v) for f, d in fams["aggregate"].items() for j, v in d.items()},
                "checks": casimir.graphical_g_images(alg, N, k, fams),
            }
        elif fam in ("pfaffian", "hafnian"):
            if (fam == "pfaffian") != (alg == "o"):
                raise UsageError("Pfaffians belong to o, Hafnians to sp")
            U = EnvAlgebra(make_g(alg, N))
            elems = casimir.pf_elements(U) if alg == "o" else casimir.d_elements(U, kmax)
            payload = {
                "elements": {f"{'c' if alg == 'o' else 'd'}_{k}": e for k, e in enumerate(elems)},
                "images": {f"{'c' if alg == 'o' else 'd'}_{k}": U.hc_image_l(e) for k, e in enumerate(elems)},
                "checks": casimir.pf_hf_central_families(alg, N, kmax),
            }
        else:
            raise UsageError(f"family {fam!r} is not available for {alg}")
    elif alg == "o-skew":
        N = args.N or 2
        if fam == "D":
            if N > 4:
                raise UsageError("D(u) needs N <= 4")
            D, U = casimir.D_standard(N)
            payload = {"D": D, "checks": {"central": casimir.central_coefficients(D, U),
                                          "decomposition": casimir.pfsqu_check(N)}}
        elif fam == "pfaffian":
            U = EnvAlgebra(make_o_skew(N))
            elems = casimir.pf_elements(U)
            payload = {"elements": {f"c_{k}": e for k, e in enumerate(elems)},
                       "checks": {"central": all(U.is_central(e) for e in elems)}}
        else:
            raise UsageError(f"family {fam!r} is not available for o-skew")
    else:
        raise UsageError(f"unknown algebra {alg!r}")
    emit(payload, args.format)
    return EXIT_PASS if all(payload["checks"].values()) else EXIT_FAIL


# -- parser --------------------------------------------------------------------------

def _common(p):
    p.add_argument("--n", type=int, help="rank of gl_n")
    p.add_argument("--N", type=int, help="size N of o_N or sp_N")
    p.add_argument("--case", choices=("o", "sp"))
    p.add_argument("--D", type=int, help="truncation: series known modulo u^{-D-1}")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--kmax", type=int)
    p.add_argument("--format", choices=("json", "text"), default="json")


def build_parser():
    parser = argparse.ArgumentParser(prog="yangian", description=__doc__.splitlines()[0])
    parser.add_argument("--list-suites", action="store_true", help="print the suite names and exit")
    parser.add_argument("--suite", help="shortcut for 'suite NAME'")
    _common(parser)
    parser.add_argument("--no-timing", action="store_true", help="omit time_ms so reports are byte-identical")
    parser.add_argument("--output", help="write the report to a file")
    sub = parser.add_subparsers(dest="command")

    s = sub.add_parser("suite", help="run a verification suite")
    s.add_argument("name", nargs="?")
    _common(s)
    s.add_argument("--no-timing", action="store_true")
    s.add_argument("--output")
    s.set_defaults(func=cmd_suite, suite=None)

    m = sub.add_parser("maps", help="list or certify registered maps")
    m.add_argument("action", choices=("list", "certify"))
    m.add_argument("--name")
    m.add_argument("--bound", type=int)
    m.add_argument("--format", choices=("json", "text"), default="json")
    m.set_defaults(func=cmd_maps)

    c = sub.add_parser("compute", help="print a computed object")
    c.add_argument("object", choices=("qdet", "qminor", "qcomatrix", "liouville", "dtilde",
                                       "stirling", "piN", "fibers", "sdet", "hc"))
    _common(c)
    c.add_argument("--upper")
    c.add_argument("--lower")
    c.add_argument("--perm")
    c.add_argument("--target")
    c.add_argument("--algebra", choices=("gl", "o", "sp"))
    c.set_defaults(func=cmd_compute)

    k = sub.add_parser("casimir", help="construct Casimir elements and check their properties")
    k.add_argument("--algebra", choices=("gl", "o", "sp", "o-skew"), default="gl")
    k.add_argument("--family", choices=("capelli", "newton", "graphical", "pfaffian", "hafnian", "D"),
                   default="capelli")
    _common(k)
    k.set_defaults(func=cmd_casimir)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.list_suites:
            sys.stdout.write("\n".join(sorted(SUITES)) + "\n")
            return EXIT_PASS
        if args.command is None:
            if args.suite:
                args.name = None
                return cmd_suite(args)
            parser.print_usage(sys.stderr)
            return EXIT_USAGE
        return args.func(args)
    except UsageError as exc:
        sys.stderr.write(f"yangian: error: {exc}\n")
        return EXIT_USAGE
    except ValueError as exc:
        sys.stderr.write(f"yangian: error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
