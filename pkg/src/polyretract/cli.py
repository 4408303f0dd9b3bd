"""``retractbench``: command-line convergence studies.

Examples::

    retractbench unitary --m 50 --n 1,2,3 --format table
    retractbench grassmann --m 200 --p 20 --projector qr --format csv --out gr.csv
    retractbench stiefel --tangent grassmann-only --format json
    retractbench means --n 3 --weights 0.5,0.3,0.2 --m 10

Exit status is 0 on success, 2 for an invalid configuration and 3 for a
numerical failure (non-convergence or singularity).
"""

import argparse
import sys

from .bench import ExperimentConfig, run_convergence_study
from .errors import DomainError, RetractionError
from .means import supercloseness_experiment
from .report import emit_report

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3


def _int_list(text):
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _float_list(text):
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_CONFIG, f"{self.prog}: error: {message}\n")


def build_parser():
    parser = _Parser(
        prog="retractbench",
        description="Dyadic convergence-order studies for projected-polynomial retractions.",
    )
    parser.add_argument("experiment", choices=["unitary", "grassmann", "stiefel", "means"])
    parser.add_argument("--m", type=int, default=None, help="ambient dimension")
    parser.add_argument("--p", type=int, default=None, help="number of columns")
    parser.add_argument(
        "--n", type=_int_list, default=None,
        help="polynomial orders, e.g. 1,2,3 (for 'means': the number of matrices)",
    )
    parser.add_argument("--t0", type=float, default=0.01)
    parser.add_argument("--levels", type=int, default=6)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--projector", choices=["polar", "qr"], default="polar")
    parser.add_argument(
        "--polar-method", choices=["svd", "newton", "newton-rect", "newton-schulz"], default="svd"
    )
    parser.add_argument("--tangent", choices=["generic", "grassmann-only"], default="generic")
    parser.add_argument(
        "--scale", type=float, default=40.0,
        help="spectral norm of the random direction (default 40)",
    )
    parser.add_argument("--weights", type=_float_list, default=None, help="weights for 'means'")
    parser.add_argument("--format", choices=["csv", "json", "table"], default="table")
    parser.add_argument("--out", default="-", help="output path ('-' for stdout)")
    return parser


def _run(args):
    if args.experiment == "means":
        counts = args.n or [3]
        if len(counts) != 1:
            raise DomainError("'means' takes a single --n (number of matrices)")
        if args.levels < 2:
            raise DomainError("levels must be at least 2")
        return supercloseness_experiment(
            seed=args.seed,
            count=counts[0],
            w=args.weights,
            t0=args.t0,
            levels=args.levels,
            m=args.m or 10,
        )
    cfg = ExperimentConfig(
        manifold=args.experiment,
        m=args.m,
        p=args.p,
        n_list=tuple(args.n or (1, 2, 3)),
        t0=args.t0,
        levels=args.levels,
        seed=args.seed,
        projector=args.projector,
        polar_method=args.polar_method,
        tangent_mode=args.tangent,
        scale=args.scale,
    )
    return run_convergence_study(cfg)


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        report = _run(args)
    except (DomainError, ValueError) as exc:
        print(f"retractbench: configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (RetractionError, ArithmeticError) as exc:
        print(f"retractbench: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    try:
        emit_report(report, args.format, args.out)
    except OSError as exc:
        print(f"retractbench: {exc}", file=sys.stderr)
        return 1
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
