"""Command-line interface: one report document per invocation."""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from .errors import (
    ConfigInfeasible,
    CoverGuaranteeFailed,
    DominationDegenerate,
    FracspaceError,
    InputFormatError,
    ZeroRbmo,
)
from .geometry import canonical_ball_family, greedy_disjoint_cover, k_coefficient, make_ball
from .harness import exact_suite, make_space
from .io import export_kernel, load_function, load_space
from .maximal import MaximalConfig, fractional_maximal, sharp_maximal, weak_type_check
from .operators import (
    apply_fractional_integral,
    check_kernel_regularity,
    check_kernel_size,
    commutator,
    multilinear_commutator,
    standard_kernel,
)
from .rbmo import rbmo_norm
from .report import VerificationReport
from .space import check_lambda_compatibility, check_upper_doubling

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_PRECONDITION = 2
EXIT_ASSERTION = 3

_GENERATOR_PREFIXES = ("grid1d:", "grid2d:", "random:", "clustered:")


class _Parser(argparse.ArgumentParser):
    """Argument errors are input errors (exit 1), not the argparse default."""

    def error(self, message):
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _resolve_space(tag_or_path: str, seed: int):
    if tag_or_path.startswith(_GENERATOR_PREFIXES):
        return make_space(tag_or_path, seed=seed)
    return load_space(tag_or_path)


def _emit(report: VerificationReport, args) -> None:
    if args.format == "structured":
        text = report.to_json() + "\n"
    else:
        lines = [f"experiment: {report.experiment}", f"passed: {report.passed}"]
        if report.fitted_constant is not None:
            lines.append(f"fitted_constant: {report.fitted_constant:.12g}")
        if report.seed is not None:
            lines.append(f"seed: {report.seed}")
        for key, value in sorted(report.details.items()):
            lines.append(f"{key}: {value}")
        if report.witness:
            lines.append(f"witness: {report.witness}")
        text = "\n".join(lines) + "\n"
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


def _field_report(name: str, values: np.ndarray, extra: dict | None = None) -> VerificationReport:
    details = {"values": [float(v) for v in values]}
    if extra:
        details.update(extra)
    return VerificationReport(experiment=name, passed=True, details=details)


def build_parser() -> _Parser:
    parser = _Parser(prog="fracspace", description=__doc__)
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def add(name, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--space", required=True,
                       help="space file path or generator tag (grid1d:n, grid2d:m, "
                            "random:n[:seed], clustered:n:c[:seed])")
        p.add_argument("--function", help="field function file")
        p.add_argument("--b", action="append", default=[],
                       help="symbol function file (repeatable)")
        p.add_argument("--alpha", type=float, default=None)
        p.add_argument("--p", type=float, default=2.0)
        p.add_argument("--r", type=float, default=1.0)
        p.add_argument("--eta", type=float, default=5.0)
        p.add_argument("--beta", type=float, default=0.0)
        p.add_argument("--rho", type=float, default=6.0)
        p.add_argument("--trials", type=int, default=20)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--out", help="write the report here instead of stdout")
        p.add_argument("--format", choices=("text", "structured"), default="text")
        return p

    add("space-check", "validate the metric, weights, and measure domination")
    add("kernel-check", "tightness constants of the standard kernel")
    add("apply", "apply the fractional integral operator to a function")
    add("commutator", "apply the commutator with one symbol")
    add("multilinear", "apply the k-fold commutator")
    add("maximal", "evaluate the fractional maximal operator")
    add("sharp", "evaluate the sharp maximal operator")
    add("rbmo", "oscillation norm of a symbol with witnesses")
    p = add("kcoeff", "layer-sum coefficient of a concentric ball pair")
    p.add_argument("--center", type=int, default=0)
    p.add_argument("--radius", type=float, required=True)
    p.add_argument("--radius2", type=float, required=True,
                   help="outer ball radius (same center)")
    add("cover", "greedy disjoint subfamily with the 5-dilate guarantee")
    add("weaktype", "fitted level-set constant of the fractional maximal operator")
    p = add("verify", "run a verification suite")
    p.add_argument("--suite", choices=("exact",), default="exact")
    return parser


def _default_alpha(space, value):
    return 0.5 * space.dim_n if value is None else value


def _need_function(args, space) -> np.ndarray:
    if not args.function:
        raise InputFormatError("this subcommand requires --function")
    return load_function(args.function, expected_length=space.n)


def _need_symbols(args, space, exactly: int | None = None):
    if not args.b:
        raise InputFormatError("this subcommand requires --b")
    if exactly is not None and len(args.b) != exactly:
        raise InputFormatError(f"this subcommand takes exactly {exactly} --b")
    return [load_function(path, expected_length=space.n) for path in args.b]


def run(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        space = _resolve_space(args.space, args.seed)
        cmd = args.subcommand
        if cmd == "space-check":
            dom = check_upper_doubling(space)
            compat = check_lambda_compatibility(space)
            report = VerificationReport(
                experiment="space_check",
                passed=dom.passed and compat.passed,
                fitted_constant=dom.fitted_constant,
                details={"upper_doubling": dom.to_dict(), "compatibility": compat.to_dict()},
            )
        elif cmd == "kernel-check":
            alpha = _default_alpha(space, args.alpha)
            kernel = standard_kernel(space, alpha, compute_regularity=False)
            size = check_kernel_size(space, kernel)
            reg = check_kernel_regularity(space, kernel, seed=args.seed)
            report = VerificationReport(
                experiment="kernel_check",
                passed=size.passed and reg.passed,
                fitted_constant=size.fitted_constant,
                seed=args.seed,
                details={"size": size.to_dict(), "regularity": reg.to_dict()},
            )
            if args.out:
                export_kernel(kernel.values, args.out + ".kernel")
        elif cmd in ("apply", "commutator", "multilinear"):
            alpha = _default_alpha(space, args.alpha)
            kernel = standard_kernel(space, alpha, compute_regularity=False)
            f = _need_function(args, space)
            if cmd == "apply":
                values = apply_fractional_integral(space, kernel, f)
            elif cmd == "commutator":
                (b,) = _need_symbols(args, space, exactly=1)
                values = commutator(space, kernel, b, f)
            else:
                b_vec = _need_symbols(args, space)
                values = multilinear_commutator(space, kernel, b_vec, f)
            report = _field_report(cmd, values, {"alpha": alpha})
        elif cmd == "maximal":
            f = _need_function(args, space)
            cfg = MaximalConfig(r=args.r, eta=args.eta, beta=args.beta)
            report = _field_report(
                "maximal", fractional_maximal(space, f, cfg),
                {"r": args.r, "eta": args.eta, "beta": args.beta},
            )
        elif cmd == "sharp":
            f = _need_function(args, space)
            report = _field_report("sharp", sharp_maximal(space, f, args.beta),
                                   {"beta": args.beta})
        elif cmd == "rbmo":
            (b,) = _need_symbols(args, space, exactly=1)
            est = rbmo_norm(space, b, args.rho)
            witness = {
                "osc_ball": {"center": est.witness_osc.center,
                             "radius": est.witness_osc.radius},
            }
            if est.witness_pair is not None:
                witness["pair"] = {
                    "inner_center": est.witness_pair.inner.center,
                    "inner_radius": est.witness_pair.inner.radius,
                    "outer_center": est.witness_pair.outer.center,
                    "outer_radius": est.witness_pair.outer.radius,
                }
            report = VerificationReport(
                experiment="rbmo", passed=True, fitted_constant=est.norm_value,
                witness=witness,
                details={"rho": est.rho, "osc_term": est.osc_term,
                         "pair_term": est.pair_term},
            )
        elif cmd == "kcoeff":
            inner = make_ball(space, args.center, args.radius)
            outer = make_ball(space, args.center, args.radius2)
            value = k_coefficient(space, inner, outer, beta=args.beta)
            report = VerificationReport(
                experiment="kcoeff", passed=True, fitted_constant=value,
                details={"center": args.center, "radius": args.radius,
                         "radius2": args.radius2, "beta": args.beta},
            )
        elif cmd == "cover":
            balls = canonical_ball_family(space)
            kept = greedy_disjoint_cover(space, balls, dilation=5.0)
            report = VerificationReport(
                experiment="cover", passed=True,
                details={"input_balls": len(balls), "kept": len(kept)},
            )
        elif cmd == "weaktype":
            f = _need_function(args, space)
            cfg = MaximalConfig(r=args.r, eta=args.eta, beta=args.beta)
            mf = fractional_maximal(space, f, cfg)
            top = float(np.max(mf))
            if top <= 0:
                levels = [1.0]
            else:
                levels = list(np.geomspace(top / 1000.0, top * 0.999, 16))
            report = weak_type_check(space, f, cfg, levels)
        elif cmd == "verify":
            report = exact_suite(space, seed=args.seed)
        else:  # pragma: no cover - argparse restricts choices
            raise InputFormatError(f"unknown subcommand {cmd}")
    except InputFormatError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (ConfigInfeasible, ZeroRbmo, ValueError) as exc:
        print(f"precondition violation: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except (DominationDegenerate, CoverGuaranteeFailed) as exc:
        print(f"assertion failure: {exc}", file=sys.stderr)
        return EXIT_ASSERTION
    except FracspaceError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    _emit(report, args)
    return EXIT_OK if report.passed else EXIT_ASSERTION


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
