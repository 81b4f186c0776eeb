"""Command-line interface.

Exit codes: 0 success, 1 usage or input error, 2 a check failed (or a
polynomial was refuted), 3 only conjecture-probe refutations.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction

from . import apolarity as ap
from . import combinatorics as cb
from . import verify as vf
from .errors import MCPermError
from .fileio import InputError, as_monotone, as_rows, load_json, load_matrix, load_polynomial
from .matrices import (FerrersMatrix, build_y_form, eulerian_matrix, multiset_eulerian_matrix,
                       shifted_eulerian_matrix)
from .permanent import (ENUMERATION_CAP, SYMBOLIC_CAP, alpha_permanent, k_permanent,
                        k_sub_mcp_polynomial, mcp_polynomial, permanent)
from .polyalg import ALPHA, T, Polynomial, UnivariatePolynomial, Var, as_rational, y, z
from .stability import (DEFAULT_TRIALS, rayleigh_check, random_points, real_rooted,
                        stability_sample_test)

EXIT_OK, EXIT_USAGE, EXIT_FAIL, EXIT_PROBE = 0, 1, 2, 3


@dataclass
class Config:
    seed: int = 0
    trials: int = DEFAULT_TRIALS
    caps: dict = field(default_factory=lambda: {
        "perm-enumeration": ENUMERATION_CAP,
        "factorial-enumeration": cb.FACTORIAL_CAP,
        "symbolic-n": SYMBOLIC_CAP,
    })
    report: str | None = None


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


def _csv_ints(text: str) -> list[int]:
    try:
        vals = [int(p) for p in text.split(",") if p.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")
    if not vals:
        raise argparse.ArgumentTypeError("expected at least one integer")
    return vals


def _seed(text: str) -> int:
    try:
        s = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"seed must be an integer, got {text!r}")
    if not 0 <= s < 2 ** 64:
        raise argparse.ArgumentTypeError("seed must lie in [0, 2^64)")
    return s


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {v}")
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="mcperm", description=(
        "Exact permanents of monotone column and Ferrers matrices, "
        "stability checks, and identity verification."))
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)
    sub.required = True

    p = sub.add_parser("perm", help="permanent, k-permanent or alpha-permanent of a matrix")
    p.add_argument("--input", required=True, help="matrix JSON or CSV file")
    p.add_argument("--engine", default="auto",
                   choices=["auto", "inclusion-exclusion", "ryser", "subset-dp", "enumerate"],
                   help="permanent engine (default: auto)")
    p.add_argument("--k", type=int, help="compute the k-permanent instead")
    p.add_argument("--alpha", nargs="?", const="alpha", metavar="VALUE",
                   help="alpha-permanent; symbolic alpha unless VALUE is given")

    p = sub.add_parser("mcp-poly", help="per(z_j + a_ij) of a monotone column matrix")
    p.add_argument("--input", required=True, help="matrix JSON or CSV file")
    p.add_argument("--k", type=int, help="k-permanent version for rectangular matrices")
    p.add_argument("--diagonal", action="store_true",
                   help="set every z_j = t and report real-rootedness")

    p = sub.add_parser("check-stability", help="try to refute real stability of a polynomial")
    p.add_argument("--input", required=True, help="file holding one polynomial in canonical text")
    p.add_argument("--trials", type=_positive, default=DEFAULT_TRIALS,
                   help=f"random lines to test (default: {DEFAULT_TRIALS})")
    p.add_argument("--seed", type=_seed, default=0, help="random seed (default: 0)")
    p.add_argument("--rayleigh", metavar="I,J",
                   help="also check the Rayleigh difference for variables I,J (names or 1-based)")
    p.add_argument("--points", type=_positive, default=1000,
                   help="points for --rayleigh (default: 1000)")
    p.add_argument("--report", help="write the JSON report here as well")

    p = sub.add_parser("stats", help="statistics of a permutation")
    p.add_argument("--perm", required=True, help="permutation word, e.g. 341526978 or 3,1,2")

    p = sub.add_parser("eulerian", help="descent generating polynomials via permanents")
    p.add_argument("--n", type=_positive, help="size of the symmetric group")
    p.add_argument("--v", "--multiset", dest="v", type=_csv_ints, metavar="V1,V2,...",
                   help="multiset composition instead of --n")
    p.add_argument("--shift", type=_positive, default=1,
                   help="count only descents by at least this much (default: 1)")
    p.add_argument("--alpha", action="store_true",
                   help="weight each permutation by alpha^(cycles)")
    p.add_argument("--diagonal", action="store_true",
                   help="set every y_j = t and report real-rootedness")
    p.add_argument("--engine", default="permanent", choices=["permanent", "enumeration"],
                   help="compute via a permanent or by enumeration (default: permanent)")

    p = sub.add_parser("apolar", help="apolarity form, complement, Mobius transform, Grace demo")
    p.add_argument("action", choices=["form", "complement", "mobius", "grace-demo"])
    p.add_argument("--input", required=True, help="JSON file with the action's inputs")
    p.add_argument("--trials", type=_positive, help="grace-demo trials (overrides the file)")
    p.add_argument("--seed", type=_seed, help="grace-demo seed (overrides the file)")

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("suite", choices=list(vf.SUITES) + ["all"])
    p.add_argument("--n", type=_positive, help="size parameter of the suite")
    p.add_argument("--v", "--multiset", dest="v", type=_csv_ints, metavar="V1,V2,...",
                   help="composition for multiset-eulerian")
    p.add_argument("--trials", type=_positive, help="lines per stability test")
    p.add_argument("--points", type=_positive, help="points per Rayleigh pair")
    p.add_argument("--seed", type=_seed, default=0, help="random seed (default: 0)")
    p.add_argument("--jobs", type=_positive, default=1, help="worker processes (default: 1)")
    p.add_argument("--input", help="run the suite on this single matrix")
    p.add_argument("--report", help="write the JSON report to this path ('-' for stdout)")
    p.add_argument("--timing", action="store_true",
                   help="include wall time in the report (breaks byte-for-byte reruns)")
    return parser


# -- helpers ---------------------------------------------------------------------


def _fmt(value) -> str:
    return str(value)


def _write_report(text: str, path: str | None) -> None:
    if not path:
        return
    if path == "-":
        print(text)
        return
    try:
        with open(path, "w") as fh:
            fh.write(text + "\n")
    except OSError as exc:
        raise InputError(f"report: cannot write {path} ({exc.strerror})") from None


def _parse_var(text: str, variables) -> Var:
    text = text.strip()
    if text.isdigit():
        i = int(text)
        if not 1 <= i <= len(variables):
            raise InputError(f"rayleigh: index {i} outside 1..{len(variables)}")
        return variables[i - 1]
    try:
        return Var.parse(text)
    except MCPermError as exc:
        raise InputError(f"rayleigh: {exc}") from None


def _poly_arg(value, where: str) -> UnivariatePolynomial:
    """A univariate polynomial from JSON: coefficient list, text in t, or {roots, leading}."""
    if isinstance(value, list):
        try:
            return UnivariatePolynomial([as_rational(Fraction(str(c))) for c in value])
        except (ValueError, ZeroDivisionError):
            raise InputError(f"{where}: coefficients must be rationals") from None
    if isinstance(value, str):
        from .polyalg import parse_polynomial
        try:
            return parse_polynomial(value).to_univariate(T)
        except MCPermError as exc:
            raise InputError(f"{where}: {exc}") from None
    if isinstance(value, dict) and "roots" in value:
        try:
            roots = [as_rational(Fraction(str(r))) for r in value["roots"]]
            lead = as_rational(Fraction(str(value.get("leading", 1))))
        except (ValueError, ZeroDivisionError):
            raise InputError(f"{where}: roots must be rationals") from None
        return UnivariatePolynomial.from_roots(roots, lead)
    raise InputError(f"{where}: expected a coefficient list, polynomial text or roots")


def _complex(value, where: str) -> complex:
    if isinstance(value, (int, float)):
        return complex(value)
    if isinstance(value, list) and len(value) == 2 and all(isinstance(c, (int, float))
                                                           for c in value):
        return complex(value[0], value[1])
    raise InputError(f"{where}: expected a number or [re, im]")


# -- commands ------------------------------------------------------------------------


def cmd_perm(args, cfg: Config) -> int:
    M = as_rows(load_matrix(args.input))
    if args.alpha is not None:
        if args.k is not None:
            raise InputError("k: cannot combine --k with --alpha")
        alpha = ALPHA if args.alpha == "alpha" else as_rational(Fraction(args.alpha))
        print(_fmt(alpha_permanent(M, alpha, cap=cfg.caps["perm-enumeration"])))
    elif args.k is not None:
        print(_fmt(k_permanent(M, args.k, "enumerate" if args.engine == "enumerate" else "auto")))
    else:
        print(_fmt(permanent(M, args.engine)))
    return EXIT_OK


def cmd_mcp_poly(args, cfg: Config) -> int:
    A = as_monotone(load_matrix(args.input))
    if args.k is not None:
        p = k_sub_mcp_polynomial(A, args.k)
    else:
        p = mcp_polynomial(A)
    if args.diagonal:
        u = p.diagonalize([z(j) for j in range(1, A.cols + 1)], T).to_univariate(T)
        print(u)
        print(f"real_rooted: {str(real_rooted(u)).lower()}")
    else:
        print(p)
    return EXIT_OK


def cmd_check_stability(args, cfg: Config) -> int:
    p = load_polynomial(args.input)
    verdict = stability_sample_test(p, trials=args.trials, seed=args.seed)
    report = {"schema": vf.SCHEMA_VERSION, "polynomial": str(p), "seed": args.seed,
              "trials": args.trials, "verdict": verdict.to_dict()}
    failed = not verdict.passed
    if args.rayleigh:
        variables = p.variables()
        parts = args.rayleigh.split(",")
        if len(parts) != 2:
            raise InputError("rayleigh: expected two variables I,J")
        vi, vj = (_parse_var(s, variables) for s in parts)
        if not p.is_multiaffine():
            raise InputError("rayleigh: the polynomial is not multiaffine")
        pts = random_points(len(variables), args.points, [args.seed, 1])
        res = rayleigh_check(p, vi, vj, pts, variables)
        report["rayleigh"] = {"pair": list(res.pair), "points": args.points,
                              "passed": res.passed, "witness": res.witness}
        failed |= not res.passed
    text = json.dumps(report, indent=2, sort_keys=True)
    print(text)
    _write_report(text, args.report)
    return EXIT_FAIL if failed else EXIT_OK


def cmd_stats(args, cfg: Config) -> int:
    try:
        sigma = cb.parse_permutation(args.perm)
    except MCPermError as exc:
        raise InputError(f"perm: {exc}") from None
    out = {"perm": cb.format_permutation(sigma)}
    out.update(cb.stats(sigma).to_dict())
    out["cycles"] = ["(" + " ".join(map(str, c)) + ")" for c in cb.cycles(sigma)]
    out["linear_map"] = cb.format_permutation(cb.riordan_linear_map(sigma))
    if len(sigma) >= 2:
        out["pi_map"] = cb.format_permutation(cb.pi_map(sigma))
    print(json.dumps(out, indent=2, sort_keys=True))
    return EXIT_OK


def cmd_eulerian(args, cfg: Config) -> int:
    if (args.n is None) == (args.v is None):
        raise InputError("n: give exactly one of --n and --v/--multiset")
    cap = cfg.caps["factorial-enumeration"]
    if args.v is not None:
        if args.shift != 1 or args.alpha:
            raise InputError("v: --shift and --alpha apply to --n only")
        if args.engine == "permanent":
            p = vf.multiset_permanent_side(args.v)
        else:
            p = cb.multiset_descent_poly_direct(args.v, cap)
        ys = [y(i) for i in range(1, len(args.v) + 1)]
    else:
        n = args.n
        if n > cap:
            raise InputError(f"n: {n} exceeds the enumeration cap {cap}")
        if args.engine == "permanent":
            E = eulerian_matrix(n) if args.shift == 1 else shifted_eulerian_matrix(n, args.shift)
            M = build_y_form(E)
            p = alpha_permanent(M) if args.alpha else Polynomial.coerce(permanent(M))
        elif args.alpha:
            if args.shift != 1:
                raise InputError("shift: --alpha supports only shift 1")
            p = cb.lrmin_descent_poly_direct(n, cap=cap)
        else:
            p = cb.shifted_descent_poly_direct(n, args.shift, cap)
        ys = [y(i) for i in range(1, n + 1)]
    if args.diagonal:
        q = p.diagonalize(ys, T)
        if args.alpha:
            print(q)
        else:
            u = q.to_univariate(T)
            print(u)
            print(f"real_rooted: {str(real_rooted(u)).lower()}")
    else:
        print(p)
    return EXIT_OK


def _region(data: dict):
    if "disk" in data:
        d = data["disk"]
        if not isinstance(d, dict) or "radius" not in d:
            raise InputError("disk: expected {center, radius}")
        radius = d["radius"]
        if not isinstance(radius, (int, float)) or radius < 0:
            raise InputError("disk.radius: expected a nonnegative number")
        return ap.Disk(_complex(d.get("center", 0), "disk.center"), float(radius))
    if "half_plane" in data:
        h = data["half_plane"]
        if not isinstance(h, dict):
            raise InputError("half_plane: expected {point, normal}")
        normal = _complex(h.get("normal", [0, 1]), "half_plane.normal")
        if normal == 0:
            raise InputError("half_plane.normal: must be nonzero")
        return ap.HalfPlane(_complex(h.get("point", 0), "half_plane.point"), normal)
    return ap.Disk(0, 1.0)


def cmd_apolar(args, cfg: Config) -> int:
    data = load_json(args.input)
    if args.action == "form":
        f = _poly_arg(data.get("f"), "f")
        g = _poly_arg(data.get("g"), "g")
        if f.degree != g.degree:
            raise InputError(f"g: degree {g.degree} differs from degree {f.degree} of f")
        print(ap.apolarity_form(f, g))
        print(f"apolar: {str(ap.is_apolar(f, g)).lower()}")
        return EXIT_OK
    if args.action == "complement":
        g = _poly_arg(data.get("g"), "g")
        free = data.get("free", [0] * max(g.degree - 1, 0))
        try:
            free = [as_rational(Fraction(str(c))) for c in free]
        except (ValueError, ZeroDivisionError):
            raise InputError("free: parameters must be rationals") from None
        if len(free) != g.degree - 1:
            raise InputError(f"free: expected {g.degree - 1} parameters, got {len(free)}")
        print(ap.apolar_complement(g, free))
        return EXIT_OK
    if args.action == "mobius":
        f = _poly_arg(data.get("f"), "f")
        m = data.get("map")
        if not isinstance(m, list) or len(m) != 4:
            raise InputError("map: expected [a, b, c, d]")
        try:
            phi = ap.MobiusMap(*(as_rational(Fraction(str(c))) for c in m))
        except (ValueError, ZeroDivisionError):
            raise InputError("map: entries must be rationals") from None
        except MCPermError as exc:
            raise InputError(f"map: {exc}") from None
        print(ap.mobius_transform(f, phi))
        return EXIT_OK
    region = _region(data)
    trials = args.trials if args.trials is not None else data.get("trials", 100)
    seed = args.seed if args.seed is not None else data.get("seed", 0)
    tol = data.get("tol", 1e-8)
    degree = data.get("degree", 4)
    g = None
    if "g_roots" in data:
        g = ap.RootedPolynomial(1.0, tuple(_complex(r, "g_roots") for r in data["g_roots"]))
    for key, val in (("trials", trials), ("seed", seed), ("degree", degree)):
        if not isinstance(val, int) or val < (0 if key == "seed" else 1):
            raise InputError(f"{key}: expected a positive integer")
    rep = ap.grace_demo(region, degree=degree, trials=trials, seed=seed, tol=tol, g=g)
    out = rep.to_dict()
    out["region"] = repr(region)
    print(json.dumps(out, indent=2, sort_keys=True))
    return EXIT_OK if rep.passed and not rep.skipped else EXIT_FAIL


def cmd_verify(args, cfg: Config) -> int:
    params = {"seed": args.seed, "jobs": args.jobs, "trials": args.trials, "n": args.n,
              "points": args.points, "v": args.v}
    if args.input:
        M = load_matrix(args.input)
        params["matrix"] = M if isinstance(M, FerrersMatrix) else as_monotone(M)
        if args.suite in ("recurrence", "term-classes", "alpha-recurrence", "duality",
                          "z-to-y") and not isinstance(params["matrix"], FerrersMatrix):
            raise InputError("input: this suite needs a Ferrers matrix (give heights)")
    if args.suite == "all":
        if args.input:
            raise InputError("input: 'verify all' runs the built-in corpora only")
        reports = vf.run_all(seed=args.seed, jobs=args.jobs, trials=args.trials)
    else:
        reports = [vf.run_suite(args.suite, **params)]
    for r in reports:
        status = "pass" if r.passed else ("REFUTED" if r.label == vf.PROBE else "FAIL")
        print(f"{r.suite}: {r.cases_passed}/{r.cases_run} cases passed [{status}] "
              f"({r.label}, seed={r.seed}, trials={r.trials}, universe={r.universe})")
    text = reports[0].to_json(args.timing) if len(reports) == 1 else vf.combined_json(
        reports, args.timing)
    _write_report(text, args.report)
    return vf.exit_code(reports)


COMMANDS = {
    "perm": cmd_perm,
    "mcp-poly": cmd_mcp_poly,
    "check-stability": cmd_check_stability,
    "stats": cmd_stats,
    "eulerian": cmd_eulerian,
    "apolar": cmd_apolar,
    "verify": cmd_verify,
}


def help_text() -> str:
    """Help of the main parser and every subcommand, as one document."""
    parser = build_parser()
    chunks = [parser.format_help()]
    sub = next(a for a in parser._actions if isinstance(a, argparse._SubParsersAction))
    for name, p in sub.choices.items():
        chunks.append(f"=== {name} ===\n" + p.format_help())
    return "\n".join(chunks)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    cfg = Config(seed=getattr(args, "seed", None) or 0,
                 trials=getattr(args, "trials", None) or DEFAULT_TRIALS,
                 report=getattr(args, "report", None))
    try:
        return COMMANDS[args.command](args, cfg)
    except (InputError, MCPermError) as exc:
        print(f"mcperm {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
