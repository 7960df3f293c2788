"""Command-line interface.

Exit codes: 0 on success, 2 on invalid arguments or malformed input files,
3 when ``experiment --assert`` finds a rate outside its expectation.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

import numpy as np

from . import io
from .exceptions import (AnchorSelectionError, FormatError, IllConditionedKernelError, InvalidArgumentError,
                         SamplingError)
from .freqset import FrequencySet, parse_extents, rect
from .harness import SCENARIOS, preset, run_experiment
from .interpolant import DEFAULT_PINV_TOL, DEFAULT_POOL_FACTOR, build_interpolant, select_anchors
from .recovery import DEFAULT_RANK_TOL, coefficient_match, recover_coefficients
from .trigpoly import CURVE_MODELS, random_polynomial, random_real_polynomial
from .zerosampler import DEFAULT_MAX_ATTEMPTS, DEFAULT_TOL, sample_zero_set, trace_zero_set

EXIT_INVALID = 2
EXIT_FAILED = 3


def _extents(text: str) -> list[int]:
    try:
        return parse_extents(text)
    except InvalidArgumentError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _allocations(text: str) -> list[list[int]]:
    """``"7;8"`` is two irreducible cases, ``"8,16;7,17"`` two union cases."""
    try:
        return [[int(n) for n in case.split(",")] for case in text.split(";") if case.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"cannot parse sample counts {text!r}") from None


def _bandwidth(args) -> FrequencySet:
    if args.bandwidth:
        return io.frequency_set_from_json(io.read_json(args.bandwidth), where=args.bandwidth)
    if not args.extents:
        raise InvalidArgumentError("give --extents or --bandwidth")
    return rect(len(args.extents), args.extents)


def cmd_gen(args) -> int:
    if len(args.extents) != args.dim:
        raise InvalidArgumentError(f"--extents has {len(args.extents)} entries for --dim {args.dim}")
    bandwidth = rect(args.dim, args.extents)
    if args.complex:
        p = random_polynomial(bandwidth, args.seed)
    else:
        p = random_real_polynomial(bandwidth, args.seed, args.curve_model)
    io.write_json(io.polynomial_to_json(p), args.out)
    return 0


def cmd_sample(args) -> int:
    p = io.load_polynomial(args.polynomial)
    samples = sample_zero_set(p, args.count, tol=args.tol_root, seed=args.seed,
                              max_attempts=args.max_attempts, component=args.component)
    io.write_samples(samples, args.out)
    return 0


def cmd_trace(args) -> int:
    p = io.load_polynomial(args.polynomial)
    io.write_samples(trace_zero_set(p, args.resolution, refine=args.refine), args.out)
    return 0


def cmd_recover(args) -> int:
    samples = io.load_samples(args.samples)
    result = recover_coefficients(samples, _bandwidth(args), args.rank_tol)
    match = None
    if args.truth:
        match = coefficient_match(result.coefficients, io.load_polynomial(args.truth))
    io.write_json(result.to_json(match), args.out)
    return 0


def cmd_interp_build(args) -> int:
    surface = io.load_polynomial(args.surface)
    f = io.load_polynomial(args.function)
    gamma = rect(len(args.gamma), args.gamma) if args.gamma else f.support
    anchors = select_anchors(surface, gamma, seed=args.seed, rel_tol=args.anchor_tol or np.sqrt(args.pinv_tol),
                             pool_factor=args.pool_factor, tol=args.tol_root)
    itp = build_interpolant(f(anchors), anchors, gamma, args.pinv_tol)
    io.write_json(io.interpolant_to_json(itp), args.out)
    return 0


def cmd_interp_eval(args) -> int:
    itp = io.load_interpolant(args.interpolant)
    points = io.load_samples(args.points)
    values = itp(points)
    lines = [",".join([f"x{i + 1}" for i in range(points.dim)] + ["re", "im"])]
    for x, v in zip(points.points, values):
        lines.append(",".join([io.format_float(c) for c in x] + [io.format_float(v.real), io.format_float(v.imag)]))
    text = "\n".join(lines) + "\n"
    if args.out in (None, "-"):
        print(text, end="")
    else:
        Path(args.out).write_text(text)
    return 0


def cmd_experiment(args) -> int:
    overrides = dict(trials=args.trials, seed=args.seed, tol_root=args.tol_root, rank_tol=args.rank_tol,
                     pinv_tol=args.pinv_tol, match_tol=args.match_tol, min_rate=args.min_rate,
                     curve_model=args.curve_model, pool_factor=args.pool_factor, out_dir=args.out)
    if args.extents:
        overrides.update(dim=len(args.extents), extents=args.extents)
    if args.gamma:
        overrides["gamma_extents"] = args.gamma
    if args.samples:
        overrides["allocations"] = args.samples
        if args.scenario == "custom":
            overrides["components"] = len(args.samples[0])
    try:
        cfg = preset(args.scenario, **overrides)
    except ValueError as exc:
        raise InvalidArgumentError(str(exc)) from None
    summary = run_experiment(cfg)
    if args.out:
        io.write_json(summary, Path(args.out) / f"{cfg.scenario}_summary.json")
    if not args.quiet:
        io.write_json(summary, None)
    if args.assert_ and not summary["passed"]:
        print(f"experiment {cfg.scenario}: expectation not met", file=sys.stderr)
        return EXIT_FAILED
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="trigsurf", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, seed=True, tol_root=False, rank_tol=False, pinv_tol=False, out=True):
        if seed:
            p.add_argument("--seed", type=int, default=0)
        if tol_root:
            p.add_argument("--tol-root", type=float, default=DEFAULT_TOL)
        if rank_tol:
            p.add_argument("--rank-tol", type=float, default=DEFAULT_RANK_TOL)
        if pinv_tol:
            p.add_argument("--pinv-tol", type=float, default=DEFAULT_PINV_TOL)
        if out:
            p.add_argument("--out", default=None, help="output path (default stdout)")

    p = sub.add_parser("gen", help="emit a random polynomial as JSON")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--extents", type=_extents, required=True)
    p.add_argument("--complex", action="store_true", help="complex Gaussian coefficients, not real-valued")
    p.add_argument("--curve-model", choices=CURVE_MODELS, default="centered")
    common(p)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("sample", help="random points on a polynomial's zero set, as CSV")
    p.add_argument("polynomial")
    p.add_argument("--count", type=int, required=True)
    p.add_argument("--max-attempts", type=int, default=DEFAULT_MAX_ATTEMPTS)
    p.add_argument("--component", type=int, default=0)
    common(p, tol_root=True)
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("trace", help="dense zero-set trace on a grid, as CSV")
    p.add_argument("polynomial")
    p.add_argument("--resolution", type=int, default=128)
    p.add_argument("--refine", action="store_true", help="bisect crossings instead of interpolating")
    common(p, seed=False)
    p.set_defaults(func=cmd_trace)

    p = sub.add_parser("recover", help="recover coefficients from a sample CSV")
    p.add_argument("samples")
    p.add_argument("--extents", type=_extents)
    p.add_argument("--bandwidth", help="frequency set JSON instead of --extents")
    p.add_argument("--truth", help="polynomial JSON to score against")
    common(p, seed=False, rank_tol=True)
    p.set_defaults(func=cmd_recover)

    p = sub.add_parser("interp", help="local kernel interpolants")
    isub = p.add_subparsers(dest="interp_command", required=True)
    b = isub.add_parser("build", help="select anchors and solve for weights")
    b.add_argument("--surface", required=True, help="real polynomial JSON defining the surface")
    b.add_argument("--function", required=True, help="polynomial JSON of the function")
    b.add_argument("--gamma", type=_extents, help="kernel bandwidth extents (default: function support)")
    b.add_argument("--pool-factor", type=int, default=DEFAULT_POOL_FACTOR)
    b.add_argument("--anchor-tol", type=float, default=None, help="anchor rank tolerance (default sqrt(pinv-tol))")
    common(b, tol_root=True, pinv_tol=True)
    b.set_defaults(func=cmd_interp_build)
    e = isub.add_parser("eval", help="evaluate an interpolant at points from a sample CSV")
    e.add_argument("interpolant")
    e.add_argument("--points", required=True)
    common(e, seed=False)
    e.set_defaults(func=cmd_interp_eval)

    p = sub.add_parser("experiment", help="run a seeded Monte Carlo scenario")
    p.add_argument("scenario", choices=SCENARIOS)
    p.add_argument("--trials", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--tol-root", type=float)
    p.add_argument("--rank-tol", type=float)
    p.add_argument("--pinv-tol", type=float)
    p.add_argument("--match-tol", type=float)
    p.add_argument("--min-rate", type=float)
    p.add_argument("--curve-model", choices=CURVE_MODELS)
    p.add_argument("--pool-factor", type=int)
    p.add_argument("--extents", type=_extents)
    p.add_argument("--gamma", type=_extents)
    p.add_argument("--samples", type=_allocations, help='cases, e.g. "7;8" or "8,16;7,17"')
    p.add_argument("--out", help="directory for summary JSON and per-trial CSV")
    p.add_argument("--quiet", action="store_true")
    p.add_argument("--assert", dest="assert_", action="store_true",
                   help="exit 3 unless every case meets its expected rate")
    p.set_defaults(func=cmd_experiment)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (FormatError, InvalidArgumentError) as exc:
        print(f"trigsurf: error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (SamplingError, AnchorSelectionError, IllConditionedKernelError) as exc:
        print(f"trigsurf: failed: {exc}", file=sys.stderr)
        return EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())
