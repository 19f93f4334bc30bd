import argparse
import json
import logging
import sys
from typing import Any, Dict, List, Optional

from apolarity.apolar.apolar_ideal import apolar_ideal, canonical_form
from apolarity.bundles.enum_types import BundleKind
from apolarity.bundles.graded_map import parse_center
from apolarity.bundles.splitting import splitting_of
from apolarity.campaigns.enum_types import TheoremId
from apolarity.campaigns.sweep_campaign import run_sweep
from apolarity.campaigns.verification_campaign import run_verification
from apolarity.exceptions import ApolarityError
from apolarity.forms.binary_form import format_form, format_operator, parse_form
from apolarity.secants.enum_types import CodimFamily
from apolarity.secants.secant_spaces import expected_codim, secancy_profile
from apolarity.utils.logging_config import setup_logging

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_COUNTEREXAMPLE = 2

LOG_LEVELS = ["DEBUG", "INFO", "WARNING", "ERROR"]


def _emit(document: Dict[str, Any]) -> None:
    print(json.dumps(document, indent=2, sort_keys=True))  # noqa: T201


def _read_center(path: str):
    with open(path) as file_center:
        return parse_center(file_center.read())


def cmd_apolar(args: argparse.Namespace) -> int:
    ideal = apolar_ideal(parse_form(args.form))
    _emit(
        {
            "n": ideal.n,
            "s": ideal.s,
            "alpha": format_operator(ideal.alpha),
            "beta": format_operator(ideal.beta),
            "hilbert": list(ideal.hilbert),
        }
    )
    return EXIT_OK


def cmd_decompose(args: argparse.Namespace) -> int:
    gad = canonical_form(parse_form(args.form))
    _emit(
        {
            "n": gad.n,
            "length": gad.length,
            "terms": [{"point": list(term.point), "g": term.g, "G": format_form(term.G)} for term in gad.terms],
        }
    )
    return EXIT_OK


def cmd_splitting(args: argparse.Namespace) -> int:
    kind = BundleKind.TANGENT if args.tangent else BundleKind.NORMAL
    print(splitting_of(_read_center(args.center), kind))  # noqa: T201
    return EXIT_OK


def cmd_profile(args: argparse.Namespace) -> int:
    profile = secancy_profile(_read_center(args.center))
    _emit(
        {
            "min_degree": profile.min_degree,
            "dimension": profile.dimension,
            "witness": format_operator(profile.witness) if profile.witness is not None else None,
            "witness_squarefree": profile.witness_squarefree,
            "witness_splits": profile.witness_splits,
            "secant_points": [list(p) for p in profile.secant_points()],
        }
    )
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    report = run_verification(
        args.theorem,
        args.n,
        args.k,
        args.trials,
        args.seed,
        height=args.height,
        output_dir=args.output_dir,
        omit_timing=args.omit_timing,
        log_level=_level(args.log_level),
    )
    _emit(report.to_dict())
    return EXIT_COUNTEREXAMPLE if report.counterexamples else EXIT_OK


def cmd_sweep(args: argparse.Namespace) -> int:
    document = run_sweep(
        args.n,
        args.k,
        args.trials,
        args.seed,
        force_secant=args.force_secant,
        height=args.height,
        output_dir=args.output_dir,
        omit_timing=args.omit_timing,
        log_level=_level(args.log_level),
    )
    _emit(document)
    return EXIT_COUNTEREXAMPLE if document["disagreements"] else EXIT_OK


def cmd_codim(args: argparse.Namespace) -> int:
    print(expected_codim(CodimFamily(args.family), args.n, args.k, args.r))  # noqa: T201
    return EXIT_OK


def _level(name: Optional[str]) -> Optional[int]:
    return getattr(logging, name) if name else None


def _add_campaign_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--n", type=int, required=True, help="degree of the rational normal curve")
    parser.add_argument("--k", type=int, required=True, help="number of generators of the center")
    parser.add_argument("--trials", type=int, required=True)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--height", type=int, default=None, help="sampling height bound (default: APOLAR_HEIGHT)")
    parser.add_argument("--output-dir", default=None, help="report directory (default: APOLAR_RESULTS_DIR)")
    parser.add_argument("--omit-timing", action="store_true", help="report wall_time_ms as 0")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="apolarity", description="Apolarity of binary forms and splitting types of projected rational curves"
    )
    parser.add_argument("--log-level", choices=LOG_LEVELS, default=None)
    subparsers = parser.add_subparsers(dest="command", required=True)

    apolar = subparsers.add_parser("apolar", help="generators and Hilbert function of Ann(f)")
    apolar.add_argument("form", help='binomial-basis coefficients, e.g. "1,0,0,1"')
    apolar.set_defaults(handler=cmd_apolar)

    decompose = subparsers.add_parser("decompose", help="canonical generalized additive decomposition")
    decompose.add_argument("form")
    decompose.set_defaults(handler=cmd_decompose)

    splitting = subparsers.add_parser("splitting", help="splitting type of a projection")
    which = splitting.add_mutually_exclusive_group(required=True)
    which.add_argument("--normal", action="store_true")
    which.add_argument("--tangent", action="store_true")
    splitting.add_argument("center", help="center file")
    splitting.set_defaults(handler=cmd_splitting)

    profile = subparsers.add_parser("profile", help="secancy profile of a center")
    profile.add_argument("center")
    profile.set_defaults(handler=cmd_profile)

    verify = subparsers.add_parser("verify", help="seeded verification campaign")
    verify.add_argument("--theorem", required=True, choices=[t.value for t in TheoremId])
    _add_campaign_flags(verify)
    verify.set_defaults(handler=cmd_verify)

    sweep = subparsers.add_parser("sweep", help="frequency table of normal splittings")
    _add_campaign_flags(sweep)
    sweep.add_argument("--force-secant", type=int, default=None, help="sample inside s-secant spans")
    sweep.set_defaults(handler=cmd_sweep)

    codim = subparsers.add_parser("codim", help="expected codimension formulas")
    codim.add_argument("--family", required=True, choices=[f.value for f in CodimFamily])
    codim.add_argument("--n", type=int, required=True)
    codim.add_argument("--k", type=int, required=True)
    codim.add_argument("--r", type=int, default=0)
    codim.set_defaults(handler=cmd_codim)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """Parse arguments, run one subcommand and return its exit code."""
    args = build_parser().parse_args(argv)
    logger = setup_logging("apolarity", _level(args.log_level))
    try:
        return args.handler(args)
    except (ApolarityError, OSError) as e:
        logger.error(f"{args.command} failed: {type(e).__name__}: {e}")
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)  # noqa: T201
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
