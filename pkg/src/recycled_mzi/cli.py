"""Command-line front end.

Subcommands:
    point     figures of merit at one operating point, as JSON
    sweep     raster one enhancement factor over (phi, theta0), as CSV
    optimize  located maxima over a list of losses, as CSV or JSON
    verify    cross-route verification suites; nonzero exit on violation

Output is byte-deterministic for identical flags: fixed float formatting,
fixed row order, newline line endings, and atomic writes (temp file plus
rename) so partial files never appear at --out paths.

Exit codes: 0 success, 1 verification failure, 2 usage or domain error.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import tempfile

from .errors import ModelError
from .landscape import OptimumRecord, loss_curve, sweep
from .metrology import METRICS, merit_report
from .loop import closed_form_coefficients
from .optics import LoopParameters
from . import verification

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2


def _format_number(value: float) -> str:
    return f"{value:.12g}"


def _write_text(text: str, out_path: str | None) -> None:
    if out_path is None:
        sys.stdout.write(text)
        return
    directory = os.path.dirname(os.path.abspath(out_path))
    fd, tmp_path = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as handle:
            handle.write(text)
        os.replace(tmp_path, out_path)
    except BaseException:
        try:
            os.unlink(tmp_path)
        except OSError:
            pass
        raise


def _radians(value: float, degrees: bool) -> float:
    return math.radians(value) if degrees else value


def _parse_losses(text: str) -> list[float]:
    try:
        losses = [float(item) for item in text.split(",") if item.strip()]
    except ValueError:
        raise ModelError(f"could not parse loss list {text!r}") from None
    if not losses:
        raise ModelError("loss list is empty")
    return losses


def cmd_point(args: argparse.Namespace) -> int:
    params = LoopParameters(
        phi=_radians(args.phi, args.degrees),
        theta0=_radians(args.theta0, args.degrees),
        loss=args.loss,
        alpha_mag=args.alpha,
        alpha_phase=_radians(args.alpha_phase, args.degrees),
    )
    report = merit_report(params)
    coef = closed_form_coefficients(params)
    payload = {
        "lambda1": report.lambda1,
        "lambda2": report.lambda2,
        "lambda3": report.lambda3,
        "dphi_hd": report.dphi_hd,
        "dphi_qcrb": report.dphi_qcrb,
        "n_a_out": report.n_a_out,
        "n_b_out": report.n_b_out,
        "n_total_inside": report.n_total_inside,
        "upsilon": [coef.upsilon.real, coef.upsilon.imag],
        "xi": [coef.xi.real, coef.xi.imag],
    }
    _write_text(json.dumps(payload, indent=2) + "\n", args.out)
    return EXIT_OK


def cmd_sweep(args: argparse.Namespace) -> int:
    n_phi = args.n_phi if args.n_phi is not None else args.n
    n_theta0 = args.n_theta0 if args.n_theta0 is not None else args.n
    grid = sweep(args.metric, args.loss, n_phi, n_theta0)
    lines = ["phi,theta0,value"]
    for i, phi in enumerate(grid.phi_points):
        row = grid.values[i]
        for j, theta0 in enumerate(grid.theta0_points):
            lines.append(
                f"{_format_number(phi)},{_format_number(theta0)},{_format_number(row[j])}"
            )
    _write_text("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def _optimize_rows(records: list[OptimumRecord | tuple[float, str, str]]) -> str:
    lines = ["loss,metric,lambda_max,phi_star,theta0_star,evaluations,error"]
    for record in records:
        if isinstance(record, OptimumRecord):
            lines.append(
                f"{_format_number(record.loss)},{record.metric_tag},"
                f"{_format_number(record.lambda_max)},{_format_number(record.phi_star)},"
                f"{_format_number(record.theta0_star)},{record.evaluations},"
            )
        else:
            loss, metric_tag, message = record
            lines.append(f"{_format_number(loss)},{metric_tag},,,,,{message}")
    return "\n".join(lines) + "\n"


def cmd_optimize(args: argparse.Namespace) -> int:
    losses = _parse_losses(args.losses)
    for loss in losses:
        if not 0.0 < loss <= 1.0:
            raise ModelError(f"loss must lie in (0, 1], got {loss}")
    records: list[OptimumRecord | tuple[float, str, str]] = []
    successes = 0
    for loss in losses:
        try:
            records.extend(loss_curve(args.metric, [loss], grid_seed=args.grid_seed,
                                       tol=args.tol))
            successes += 1
        except ModelError as exc:
            records.append((loss, args.metric, str(exc).replace(",", ";")))
    if args.format == "json":
        payload = []
        for record in records:
            if isinstance(record, OptimumRecord):
                payload.append({
                    "loss": record.loss,
                    "metric_tag": record.metric_tag,
                    "lambda_max": record.lambda_max,
                    "phi_star": record.phi_star,
                    "theta0_star": record.theta0_star,
                    "evaluations": record.evaluations,
                })
            else:
                loss, metric_tag, message = record
                payload.append({"loss": loss, "metric_tag": metric_tag, "error": message})
        _write_text(json.dumps(payload, indent=2) + "\n", args.out)
    else:
        _write_text(_optimize_rows(records), args.out)
    return EXIT_OK if successes > 0 else EXIT_USAGE


def cmd_verify(args: argparse.Namespace) -> int:
    losses = _parse_losses(args.losses)
    results = verification.run_all(
        points=args.points,
        seed=args.seed,
        losses=losses,
        stages=args.stages,
        grid_n=args.grid,
        step=args.step,
    )
    width = max(len(result.name) for result in results)
    for result in results:
        status = "PASS" if result.passed else "FAIL"
        print(f"{result.name:<{width}}  max deviation {result.deviation:.3e}  "
              f"tolerance {result.tolerance:.1e}  {status}")
    if all(result.passed for result in results):
        print("all checks passed")
        return EXIT_OK
    print("verification FAILED")
    return EXIT_VERIFY_FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="recycled-mzi",
        description="Phase sensitivity and photon budget of a photon-recycled "
                    "Mach-Zehnder interferometer with coherent input.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    point = sub.add_parser("point", help="figures of merit at one operating point")
    point.add_argument("--phi", type=float, required=True, help="phase shift (radians)")
    point.add_argument("--theta0", type=float, required=True,
                       help="recycling-arm phase (radians)")
    point.add_argument("--loss", type=float, required=True,
                       help="recycling-arm power loss fraction in [0, 1]")
    point.add_argument("--alpha", type=float, default=1.0,
                       help="coherent amplitude magnitude (default 1)")
    point.add_argument("--alpha-phase", type=float, default=0.0,
                       help="input carrier phase (default 0)")
    point.add_argument("--degrees", action="store_true",
                       help="interpret all angle flags as degrees")
    point.add_argument("--out", default=None, help="output path (default stdout)")
    point.set_defaults(handler=cmd_point)

    sweep_cmd = sub.add_parser("sweep", help="raster one factor over (phi, theta0)")
    sweep_cmd.add_argument("--metric", required=True, choices=sorted(METRICS))
    sweep_cmd.add_argument("--loss", type=float, required=True)
    sweep_cmd.add_argument("--n", type=int, default=200,
                           help="grid points per axis (default 200)")
    sweep_cmd.add_argument("--n-phi", type=int, default=None, help="override phi axis size")
    sweep_cmd.add_argument("--n-theta0", type=int, default=None,
                           help="override theta0 axis size")
    sweep_cmd.add_argument("--out", default=None)
    sweep_cmd.set_defaults(handler=cmd_sweep)

    optimize = sub.add_parser("optimize", help="maximize one factor over a loss list")
    optimize.add_argument("--metric", required=True, choices=sorted(METRICS))
    optimize.add_argument("--losses", required=True,
                          help="comma-separated losses, each in (0, 1]")
    optimize.add_argument("--grid-seed", type=int, default=200,
                          help="coarse grid size per axis (default 200)")
    optimize.add_argument("--tol", type=float, default=1e-8,
                          help="refinement step tolerance (default 1e-8)")
    optimize.add_argument("--format", choices=("csv", "json"), default="csv")
    optimize.add_argument("--out", default=None)
    optimize.set_defaults(handler=cmd_optimize)

    verify = sub.add_parser("verify", help="run the cross-route verification suites")
    verify.add_argument("--points", type=int, default=verification.DEFAULT_POINTS)
    verify.add_argument("--seed", type=int, default=verification.DEFAULT_SEED)
    verify.add_argument("--losses", default=",".join(str(l) for l in verification.DEFAULT_LOSSES))
    verify.add_argument("--stages", type=int, default=None,
                        help="force a fixed cascade stage count (default: per point)")
    verify.add_argument("--grid", type=int, default=verification.DEFAULT_GRID)
    verify.add_argument("--step", type=float, default=verification.DEFAULT_STEP)
    verify.set_defaults(handler=cmd_verify)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except ModelError as exc:
        print(json.dumps({"error": type(exc).__name__, "reason": str(exc)}),
              file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
