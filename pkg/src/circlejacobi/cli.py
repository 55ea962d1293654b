"""Command line front end.

Subcommands:

  gen       tabulate a family: a_n, lambda_n, h_n, phi_n, psi_n
  verify    run verification suites, one summary line per identity
  spectrum  eigenvalues of the truncated one-sided matrix
  moments   trigonometric moments of the orthogonality weight

Rational arguments are written as integers or quotients ("3/2",
"-1/2").  Decimal notation is rejected on purpose: every structural
quantity downstream is exact, and a float argument would silently
poison that.

Exit status: 0 all checks passed, 1 verification failures (or a
computation error, reported with partial results), 2 bad usage.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import re
import sys
from fractions import Fraction

from .algebra import (
    verify_central_extension,
    verify_relations_functional,
    verify_relations_matrix,
    verify_representation_derivation,
    y_eigencheck,
)
from .cmv import (
    build_m1,
    build_m2,
    cmv_matrix,
    truncated_spectrum,
    verify_gevp_and_five_term,
    verify_reflection_rows,
)
from .dunkl import verify_bispectral
from .errors import CircleJacobiError, ConvergenceFailure, ParamOutOfRange
from .moments import (
    MomentSeq,
    Weight,
    orthogonality_check,
    verify_determinantal_match,
    verify_toeplitz_h,
)
from .opuc import JacobiParams, build_family, family_from_verblunsky, verblunsky
from .szego import (
    build_szego_pair,
    verify_classical_match,
    verify_dep_and_pq_identity,
    verify_recurrence_closure,
    verify_three_term,
    verify_transforms,
)

SUITES = ("bispectral", "cmv", "algebra", "szego", "moments", "all")

_RATIONAL_RE = re.compile(r"[+-]?\d+(/[1-9]\d*)?")


def rational(text: str) -> Fraction:
    if not _RATIONAL_RE.fullmatch(text):
        raise argparse.ArgumentTypeError(
            f"expected an integer or p/q rational, got {text!r}"
        )
    return Fraction(text)


def weight_for(p: JacobiParams) -> Weight:
    """Exact moment functionals where they exist, quadrature otherwise."""
    if (p.alpha, p.beta) == (Fraction(1, 2), Fraction(-1, 2)):
        return Weight.single_moment(1)
    if (p.alpha, p.beta) == (Fraction(-1, 2), Fraction(-1, 2)):
        return Weight.lebesgue()
    return Weight.jacobi(p.alpha, p.beta)


class _Parser(argparse.ArgumentParser):
    """ArgumentParser that accepts values like -1/2 after an option."""

    def __init__(self, *a, **k):
        super().__init__(*a, **k)
        self._negative_number_matcher = re.compile(r"^-\d+(/\d+)?$")


def build_parser() -> argparse.ArgumentParser:
    top = _Parser(
        prog="circlejacobi",
        description="exact verification of bispectral Jacobi families on the circle",
    )
    sub = top.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add_common(sp, with_n=True):
        sp.add_argument("--alpha", type=rational, help="first parameter, > -1")
        sp.add_argument("--beta", type=rational, help="second parameter, > -1")
        if with_n:
            sp.add_argument("--n", type=int, default=16, help="family size (default 16)")
        sp.add_argument(
            "--format", choices=("text", "json", "csv"), default="text"
        )
        sp.add_argument("--out", help="write output to this file instead of stdout")

    g = sub.add_parser("gen", help="tabulate one family")
    add_common(g)

    v = sub.add_parser("verify", help="run verification suites")
    add_common(v)
    v.add_argument("--suite", choices=SUITES, default="all")
    v.add_argument(
        "--grid-file",
        help="JSON file with a list of [alpha, beta] rational-string pairs",
    )
    v.add_argument("--quad-order", type=int, default=64)
    v.add_argument("--tol", type=float, default=1e-10)
    v.add_argument(
        "--corrupt-a",
        type=int,
        default=None,
        metavar="INDEX",
        help="perturb a_INDEX by +1/100 before verifying (negative control)",
    )

    s = sub.add_parser("spectrum", help="eigenvalues of a truncated matrix")
    add_common(s)
    s.add_argument(
        "--matrix",
        choices=("c", "m1", "m2"),
        default="c",
        help="which truncation to diagonalize (default: the pentadiagonal product)",
    )

    m = sub.add_parser("moments", help="trigonometric moments sigma_0..sigma_n")
    add_common(m)
    m.add_argument("--quad-order", type=int, default=64)
    return top


def _require_params(args) -> JacobiParams:
    if args.alpha is None or args.beta is None:
        print(f"{args.command}: --alpha and --beta are required", file=sys.stderr)
        raise SystemExit(2)
    return JacobiParams(args.alpha, args.beta)


def _emit(args, text: str) -> None:
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _csv_text(rows, header) -> str:
    buf = io.StringIO()
    w = csv.writer(buf)
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


# --------------------------------------------------------------------------
# gen
# --------------------------------------------------------------------------


def cmd_gen(args) -> int:
    from .dunkl import lambda_n

    p = _require_params(args)
    if args.n < 1:
        print("gen: --n must be >= 1", file=sys.stderr)
        return 2
    fam = build_family(p, args.n)
    lam = [lambda_n(p, k) for k in range(args.n + 1)]
    if args.format == "json":
        doc = {
            "alpha": str(p.alpha),
            "beta": str(p.beta),
            "n": args.n,
            "a": [str(x) for x in fam.a],
            "lambda": [str(x) for x in lam],
            "h": [str(x) for x in fam.h],
            "phi": [f.text() for f in fam.phi],
            "psi": [f.text() for f in fam.psi],
        }
        _emit(args, json.dumps(doc, indent=2) + "\n")
    elif args.format == "csv":
        rows = [
            (k, fam.a[k], lam[k], fam.h[k], fam.phi[k].text(), fam.psi[k].text())
            for k in range(args.n + 1)
        ]
        _emit(args, _csv_text(rows, ("n", "a", "lambda", "h", "phi", "psi")))
    else:
        lines = [f"family alpha={p.alpha} beta={p.beta} size={args.n}"]
        for k in range(args.n + 1):
            lines.append(
                f"n={k}: a={fam.a[k]}  lambda={lam[k]}  h={fam.h[k]}\n"
                f"    phi = {fam.phi[k].text()}\n"
                f"    psi = {fam.psi[k].text()}"
            )
        _emit(args, "\n".join(lines) + "\n")
    return 0


# --------------------------------------------------------------------------
# verify
# --------------------------------------------------------------------------


def run_suite(p: JacobiParams, args) -> list:
    n = args.n
    if n < 3:
        raise ValueError("verify: --n must be >= 3")
    if args.corrupt_a is not None:
        if not 0 <= args.corrupt_a < n:
            raise ValueError("--corrupt-a index out of range")
        a = [verblunsky(p, k) for k in range(n)]
        a[args.corrupt_a] += Fraction(1, 100)
        fam = family_from_verblunsky(a, params=p)
    else:
        fam = build_family(p, n)
    suite = args.suite
    reports = []
    if suite in ("bispectral", "all"):
        reports.append(verify_bispectral(fam))
    if suite in ("cmv", "all"):
        reports.append(verify_reflection_rows(fam))
        reports.append(verify_gevp_and_five_term(fam))
    if suite in ("algebra", "all"):
        d = min(10, max(3, n))
        size = max(7, min(n + 1, 21))
        reports.append(verify_representation_derivation(p, n))
        reports.append(verify_relations_matrix(p, size))
        reports.append(verify_relations_functional(p, d))
        reports.append(verify_central_extension(fam, d=d, matrix_size=size))
        reports.append(y_eigencheck(fam))
    if suite in ("szego", "all"):
        pair = build_szego_pair(fam)
        reports.append(verify_three_term(fam, pair))
        reports.append(verify_recurrence_closure(fam, pair))
        reports.append(verify_transforms(fam, pair))
        reports.append(verify_classical_match(fam, (fam.size + 1) // 2))
        reports.append(verify_dep_and_pq_identity(fam, (fam.size + 1) // 2))
    if suite in ("moments", "all"):
        w = weight_for(p)
        reports.append(
            orthogonality_check(
                fam, w, min(n, 12), quad_order=args.quad_order, tol=args.tol
            )
        )
        if w.exact:
            m = min(n, 8)
            reports.append(verify_toeplitz_h(fam, w, m))
            reports.append(verify_determinantal_match(fam, w, m))
    return reports


def cmd_verify(args) -> int:
    if args.n < 3:
        print("verify: --n must be >= 3", file=sys.stderr)
        return 2
    if args.corrupt_a is not None and not 0 <= args.corrupt_a < args.n:
        print("verify: --corrupt-a index out of range", file=sys.stderr)
        return 2
    if args.grid_file:
        with open(args.grid_file) as fh:
            raw = json.load(fh)
        try:
            grid = [(Fraction(a), Fraction(b)) for a, b in raw]
        except (ValueError, TypeError) as exc:
            print(f"verify: bad grid file: {exc}", file=sys.stderr)
            return 2
    else:
        grid = [(args.alpha, args.beta)]
        if args.alpha is None or args.beta is None:
            print("verify: --alpha and --beta (or --grid-file) required", file=sys.stderr)
            return 2

    try:
        points = [JacobiParams(alpha, beta) for alpha, beta in grid]
    except ParamOutOfRange as exc:
        print(f"verify: {exc}", file=sys.stderr)
        return 2

    reports = []
    error = None
    try:
        for p in points:
            reports.extend(run_suite(p, args))
    except (CircleJacobiError, ValueError) as exc:
        error = f"{type(exc).__name__}: {exc}"

    n_checks = sum(len(r.checks) for r in reports)
    n_fail = sum(len(r.failures) for r in reports)
    n_skip = sum(len(r.skipped) for r in reports)
    status = "error" if error else ("pass" if n_fail == 0 else "fail")

    if args.format == "json":
        doc = {
            "config": {
                "suite": args.suite,
                "n": args.n,
                "grid": [[str(a), str(b)] for a, b in grid],
                "quad_order": args.quad_order,
                "tol": args.tol,
                "corrupt_a": args.corrupt_a,
            },
            "suite_results": [r.to_dict() for r in reports],
            "summary": {
                "checks": n_checks,
                "failures": n_fail,
                "skipped": n_skip,
                "status": status,
            },
        }
        if error:
            doc["error"] = error
        _emit(args, json.dumps(doc, indent=2) + "\n")
    elif args.format == "csv":
        rows = []
        for r in reports:
            for c in r.checks:
                rows.append(
                    (r.identity, json.dumps(r.to_dict()["params"]), c.label,
                     "pass" if c.ok else "fail", c.detail)
                )
        _emit(args, _csv_text(rows, ("identity", "params", "check", "status", "detail")))
        if error:
            print(f"verify: {error}", file=sys.stderr)
    else:
        lines = [r.summary_line() for r in reports]
        for r in reports:
            for c in r.failures:
                lines.append(f"    FAIL {c.label}: {c.detail}")
        if error:
            lines.append(f"ERROR {error}")
        lines.append(
            f"{status.upper()}: {n_checks} checks, {n_fail} failures, {n_skip} skipped"
        )
        _emit(args, "\n".join(lines) + "\n")

    if error:
        return 1
    return 0 if n_fail == 0 else 1


# --------------------------------------------------------------------------
# spectrum
# --------------------------------------------------------------------------


def cmd_spectrum(args) -> int:
    p = _require_params(args)
    if args.n < 1:
        print("spectrum: --n must be >= 1", file=sys.stderr)
        return 2
    a = [verblunsky(p, k) for k in range(args.n)]
    builder = {"c": cmv_matrix, "m1": build_m1, "m2": build_m2}[args.matrix]
    try:
        evs = truncated_spectrum(builder(a, args.n))
    except ConvergenceFailure as exc:
        print(f"spectrum: {exc}", file=sys.stderr)
        return 1
    if args.format == "json":
        doc = {
            "alpha": str(p.alpha),
            "beta": str(p.beta),
            "matrix": args.matrix,
            "size": args.n,
            "eigenvalues": [[ev.real, ev.imag] for ev in evs],
        }
        _emit(args, json.dumps(doc, indent=2) + "\n")
    elif args.format == "csv":
        rows = [(ev.real, ev.imag, abs(ev)) for ev in evs]
        _emit(args, _csv_text(rows, ("re", "im", "abs")))
    else:
        lines = [
            f"truncated matrix {args.matrix} alpha={p.alpha} beta={p.beta} size={args.n}"
        ]
        for ev in evs:
            lines.append(f"{ev.real:+.12f} {ev.imag:+.12f}i  |.|={abs(ev):.12f}")
        _emit(args, "\n".join(lines) + "\n")
    return 0


# --------------------------------------------------------------------------
# moments
# --------------------------------------------------------------------------


def cmd_moments(args) -> int:
    p = _require_params(args)
    if args.n < 0:
        print("moments: --n must be >= 0", file=sys.stderr)
        return 2
    ms = MomentSeq(weight_for(p), quad_order=args.quad_order)
    vals = [ms.get(k) for k in range(args.n + 1)]
    if args.format == "json":
        doc = {
            "alpha": str(p.alpha),
            "beta": str(p.beta),
            "weight": ms.weight.kind,
            "moments": [
                {"n": k, "value": str(v.value), "provenance": v.provenance}
                for k, v in enumerate(vals)
            ],
        }
        _emit(args, json.dumps(doc, indent=2) + "\n")
    elif args.format == "csv":
        rows = [(k, v.value, v.provenance) for k, v in enumerate(vals)]
        _emit(args, _csv_text(rows, ("n", "sigma", "provenance")))
    else:
        lines = [f"moments alpha={p.alpha} beta={p.beta} weight={ms.weight.kind}"]
        for k, v in enumerate(vals):
            lines.append(f"sigma_{k} = {v.value}  [{v.provenance}]")
        _emit(args, "\n".join(lines) + "\n")
    return 0


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "gen":
            return cmd_gen(args)
        if args.command == "verify":
            return cmd_verify(args)
        if args.command == "spectrum":
            return cmd_spectrum(args)
        if args.command == "moments":
            return cmd_moments(args)
    except CircleJacobiError as exc:
        print(f"{args.command}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    raise AssertionError("unreachable")


if __name__ == "__main__":
    sys.exit(main())
