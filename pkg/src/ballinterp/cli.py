"""Command line front end.

Every command writes one JSON report to stdout (keys sorted, so identical
inputs give byte-identical output) and a one-line human summary to stderr.
Exit codes: 0 on success/pass, 1 when a validation or check fails (bad
point data, unsatisfied separation, residual or audit failure), 2 for
usage, I/O, and JSON parse errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import audits
from ._codec import dumps_report, pairs_to_vector, vector_to_pairs, write_json
from .beurling import BeurlingSystem, build_system
from .config import ENV_VAR, Tolerances, load_tolerances
from .interpolation import estimate_constant, evaluate, make_interpolant, verify_nodes
from .metric import carleson_delta, hayman_newman_check
from .sequences import (
    GeneratorSpec,
    generate,
    load_sequence,
    load_values,
    save_sequence,
)

__all__ = ["main"]

# trial counts per audit when --trials is not given
DEFAULT_TRIALS = {
    "log-bound": 1_000_000,
    "poisson-kernel": 100_000,
    "min-envelope": 1_000_000,
    "tail-sum": 10_000,
    "rudin": 100_000,
    "factor-two": 100_000,
    "eighth": 100_000,
}

_SCALAR_AUDITS = {
    "log-bound": audits.audit_log_inequality,
    "poisson-kernel": audits.audit_poisson_kernel,
    "min-envelope": audits.audit_min_envelope,
    "tail-sum": audits.audit_tail_sum,
}

_BALL_AUDITS = {
    "rudin": audits.audit_rudin_inequality,
    "factor-two": audits.audit_factor_two,
    "eighth": audits.audit_eighth_comparison,
}

LEMMA_IDS = (*_SCALAR_AUDITS, *_BALL_AUDITS, "carleson-sums")


def _builtin_audit_sequences():
    """Deterministic sequences exercising the separated-sum bounds."""
    specs = [
        GeneratorSpec(kind="radial", n=30, dim=1, c=0.3),
        GeneratorSpec(kind="radial", n=4, dim=2, c=0.5),
        GeneratorSpec(kind="radial", n=2, dim=1, c=0.7),
        GeneratorSpec(kind="radial", n=1, dim=1, c=0.5, r0=0.5),
        GeneratorSpec(kind="orthogonal", n=8, dim=8, c=0.5, r0=0.2),
        GeneratorSpec(kind="random", n=5, dim=2, seed=1),
        GeneratorSpec(kind="random", n=8, dim=4, seed=2),
    ]
    return [generate(s) for s in specs]


def run_audit(
    lemma: str, trials: int | None, seed: int, dims: list[int], tolerance: float
) -> audits.AuditReport:
    """Run one audit, splitting ball audits across the requested dimensions."""
    if lemma in _SCALAR_AUDITS:
        n = trials if trials is not None else DEFAULT_TRIALS[lemma]
        return _SCALAR_AUDITS[lemma](n, seed=seed, tolerance=tolerance)
    if lemma in _BALL_AUDITS:
        n = trials if trials is not None else DEFAULT_TRIALS[lemma]
        per = max(1, n // len(dims))
        fn = _BALL_AUDITS[lemma]
        reports = [
            fn(per, seed=seed + i, dim=d, tolerance=tolerance)
            for i, d in enumerate(dims)
        ]
        return audits.merge_reports(reports, lemma_id=lemma)
    if lemma == "carleson-sums":
        reports = [
            audits.audit_carleson_sums(seq, tolerance=tolerance)
            for seq in _builtin_audit_sequences()
        ]
        return audits.merge_reports(reports, lemma_id="carleson-sums")
    raise ValueError(f"unknown lemma id {lemma!r}; choose from {LEMMA_IDS}")


def _hn_dict(points, ratio: float) -> dict:
    hn = hayman_newman_check(points, ratio)
    return {"c": hn.c, "max_ratio": hn.max_ratio, "satisfied": hn.satisfied}


def _cmd_gen(args, tols: Tolerances) -> tuple[dict, int]:
    spec = GeneratorSpec(
        kind=args.kind,
        n=args.n,
        dim=args.dim,
        c=args.c,
        r0=args.r0,
        seed=args.seed,
        label=args.label,
    )
    seq = generate(spec)
    save_sequence(seq, args.output)
    report = carleson_delta(seq, threshold=tols.delta_min)
    hn_ratio = args.hn_ratio if args.hn_ratio is not None else (1.0 + args.c) / 2.0
    out = {
        "command": "gen",
        "kind": args.kind,
        "n": args.n,
        "dim": args.dim,
        "c": args.c,
        "r0": args.r0,
        "seed": args.seed,
        "label": seq.label,
        "output": args.output,
        "delta": report.delta,
        "satisfied": report.satisfied,
        "hayman_newman": _hn_dict(seq, hn_ratio),
    }
    return out, 0


def _cmd_check(args, tols: Tolerances) -> tuple[dict, int]:
    seq = load_sequence(args.sequence)
    threshold = args.delta_min if args.delta_min is not None else tols.delta_min
    report = carleson_delta(seq, threshold=threshold)
    out = {
        "command": "check",
        "input": args.sequence,
        "n": len(seq),
        "dim": seq.dim,
        "delta": report.delta,
        "per_index_products": [float(v) for v in report.per_index_products],
        "threshold": report.threshold,
        "satisfied": report.satisfied,
        "hayman_newman": _hn_dict(seq, args.hn_ratio),
    }
    return out, 0 if report.satisfied else 1


def _cmd_build(args, tols: Tolerances) -> tuple[dict, int]:
    seq = load_sequence(args.sequence)
    threshold = args.delta_min if args.delta_min is not None else tols.delta_min
    report = carleson_delta(seq, threshold=threshold)
    if not report.satisfied:
        return (
            {
                "command": "build",
                "error": (
                    f"separation constant {report.delta:.6e} does not exceed "
                    f"threshold {report.threshold:.6e}"
                ),
                "delta": report.delta,
                "threshold": report.threshold,
            },
            1,
        )
    system = build_system(seq)
    write_json(args.output, system.to_dict())
    out = {
        "command": "build",
        "input": args.sequence,
        "output": args.output,
        "n": system.n_points,
        "dim": system.dim,
        "delta": system.delta,
        "C_delta": system.damping,
        "bound": system.bound,
    }
    return out, 0


def _load_system(path: str) -> BeurlingSystem:
    with open(path, "r", encoding="utf-8") as fp:
        return BeurlingSystem.from_dict(json.load(fp))


def _cmd_verify(args, tols: Tolerances) -> tuple[dict, int]:
    system = _load_system(args.system)
    alpha = load_values(args.values)
    tolerance = args.tolerance if args.tolerance is not None else tols.node_residual
    interp = make_interpolant(system, alpha)
    check = verify_nodes(interp, tolerance=tolerance)
    out = {
        "command": "verify",
        "system": args.system,
        "values": args.values,
        "n": system.n_points,
        "max_residual": check.max_residual,
        "per_node_residuals": [float(r) for r in check.residuals],
        "tolerance": check.tolerance,
        "passed": check.passed,
    }
    return out, 0 if check.passed else 1


def _cmd_bound(args, tols: Tolerances) -> tuple[dict, int]:
    system = _load_system(args.system)
    est = estimate_constant(
        system,
        n_samples=args.samples,
        seed=args.seed,
        boundary_fraction=args.boundary_fraction,
    )
    passed = est.empirical_sup <= est.theoretical_bound * (1.0 + tols.bound_slack)
    out = {
        "command": "bound",
        "system": args.system,
        "samples": est.samples_used,
        "seed": args.seed,
        "boundary_fraction": args.boundary_fraction,
        "empirical_sup": est.empirical_sup,
        "theoretical_bound": est.theoretical_bound,
        "ratio": est.empirical_sup / est.theoretical_bound,
        "argmax_point": vector_to_pairs(est.argmax_point.coords),
        "passed": bool(passed),
    }
    return out, 0 if passed else 1


def _cmd_eval(args, tols: Tolerances) -> tuple[dict, int]:
    system = _load_system(args.system)
    alpha = load_values(args.values)
    point = pairs_to_vector(json.loads(args.point), "point")
    interp = make_interpolant(system, alpha)
    value = evaluate(interp, point)
    out = {
        "command": "eval",
        "system": args.system,
        "values": args.values,
        "point": vector_to_pairs(point),
        "value": [value.real, value.imag],
    }
    return out, 0


def _cmd_audit(args, tols: Tolerances) -> tuple[dict, int]:
    tolerance = args.tolerance if args.tolerance is not None else tols.margin
    dims = [int(d) for d in args.dims.split(",") if d.strip()]
    if not dims or any(d < 1 for d in dims):
        raise ValueError(f"--dims must list positive integers, got {args.dims!r}")
    lemmas = list(LEMMA_IDS) if args.lemma == "all" else [args.lemma]
    reports = [
        run_audit(lemma, args.trials, args.seed, dims, tolerance) for lemma in lemmas
    ]
    failures = sum(r.failures for r in reports)
    out = {
        "command": "audit",
        "seed": args.seed,
        "dims": dims,
        "tolerance": tolerance,
        "reports": [r.to_dict() for r in reports],
        "total_failures": failures,
        "passed": failures == 0,
    }
    return out, 0 if failures == 0 else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ballinterp",
        description="Bounded interpolation on the unit ball of C^d: generate and "
        "check node sequences, build interpolation systems, verify and evaluate "
        "interpolants, and audit the supporting inequalities.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate a node sequence file")
    p.add_argument("--kind", required=True, choices=("radial", "orthogonal", "random"))
    p.add_argument("--n", type=int, required=True, help="number of points")
    p.add_argument("--dim", type=int, required=True, help="complex dimension")
    p.add_argument("--c", type=float, default=0.5, help="geometric gap ratio in (0, 1)")
    p.add_argument("--r0", type=float, default=0.0, help="first radius in [0, 1)")
    p.add_argument("--seed", type=int, default=0, help="seed for kind=random")
    p.add_argument("--label", default="", help="label stored in the file")
    p.add_argument(
        "--hn-ratio",
        type=float,
        default=None,
        help="ratio for the norm-growth report (default: midpoint of c and 1)",
    )
    p.add_argument("-o", "--output", required=True, help="sequence JSON path")
    p.set_defaults(handler=_cmd_gen)

    p = sub.add_parser("check", help="report separation of a sequence file")
    p.add_argument("sequence", help="sequence JSON path")
    p.add_argument("--delta-min", type=float, default=None, help="separation threshold")
    p.add_argument("--hn-ratio", type=float, default=0.5)
    p.set_defaults(handler=_cmd_check)

    p = sub.add_parser("build", help="build an interpolation system file")
    p.add_argument("sequence", help="sequence JSON path")
    p.add_argument("-o", "--output", required=True, help="system JSON path")
    p.add_argument("--delta-min", type=float, default=None, help="separation threshold")
    p.set_defaults(handler=_cmd_build)

    p = sub.add_parser("verify", help="check an interpolant reproduces its targets")
    p.add_argument("system", help="system JSON path")
    p.add_argument("values", help="target values JSON path")
    p.add_argument("--tolerance", type=float, default=None, help="residual tolerance")
    p.set_defaults(handler=_cmd_verify)

    p = sub.add_parser("bound", help="empirical sup of the basis column sums")
    p.add_argument("system", help="system JSON path")
    p.add_argument("--samples", type=int, default=10000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--boundary-fraction", type=float, default=0.5)
    p.set_defaults(handler=_cmd_bound)

    p = sub.add_parser("eval", help="evaluate an interpolant at one point")
    p.add_argument("system", help="system JSON path")
    p.add_argument("values", help="target values JSON path")
    p.add_argument(
        "--point", required=True, help='point as JSON [[re, im], ...], one pair per coordinate'
    )
    p.set_defaults(handler=_cmd_eval)

    p = sub.add_parser("audit", help="randomized audits of the supporting lemmas")
    p.add_argument("--lemma", default="all", choices=("all", *LEMMA_IDS))
    p.add_argument(
        "--trials", type=int, default=None, help="override per-audit default trial counts"
    )
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--dims", default="1,2,4,8", help="dimensions for ball-point audits")
    p.add_argument("--tolerance", type=float, default=None, help="margin tolerance")
    p.set_defaults(handler=_cmd_audit)

    return parser


def _summary(report: dict, code: int) -> str:
    cmd = report.get("command", "error")
    if "error" in report:
        return f"{cmd}: error: {report['error']}"
    if cmd == "gen":
        return (
            f"gen: wrote {report['n']} points (dim {report['dim']}) to "
            f"{report['output']}; delta={report['delta']:.6g}"
        )
    if cmd == "check":
        verdict = "ok" if report["satisfied"] else "FAILED"
        return f"check: delta={report['delta']:.6g} ({verdict})"
    if cmd == "build":
        return (
            f"build: n={report['n']} dim={report['dim']} delta={report['delta']:.6g} "
            f"bound={report['bound']:.6g} -> {report['output']}"
        )
    if cmd == "verify":
        verdict = "ok" if report["passed"] else "FAILED"
        return f"verify: max residual {report['max_residual']:.3e} ({verdict})"
    if cmd == "bound":
        verdict = "ok" if report["passed"] else "FAILED"
        return (
            f"bound: empirical {report['empirical_sup']:.6g} vs theoretical "
            f"{report['theoretical_bound']:.6g} ({verdict})"
        )
    if cmd == "eval":
        re_part, im_part = report["value"]
        return f"eval: {re_part:.12g} + {im_part:.12g}i"
    if cmd == "audit":
        verdict = "ok" if report["passed"] else "FAILED"
        return f"audit: {len(report['reports'])} audits, {report['total_failures']} failures ({verdict})"
    return f"{cmd}: exit {code}"


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 2
    try:
        tols = load_tolerances()
    except ValueError as exc:
        report = {"command": args.command, "error": f"bad {ENV_VAR}: {exc}"}
        sys.stdout.write(dumps_report(report))
        print(_summary(report, 2), file=sys.stderr)
        return 2
    try:
        report, code = args.handler(args, tols)
    except json.JSONDecodeError as exc:
        report, code = {"command": args.command, "error": f"JSON parse error: {exc}"}, 2
    except OSError as exc:
        report, code = {"command": args.command, "error": str(exc)}, 2
    except (ValueError, ArithmeticError) as exc:
        report, code = {"command": args.command, "error": str(exc)}, 1
    sys.stdout.write(dumps_report(report))
    print(_summary(report, code), file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
