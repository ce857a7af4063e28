"""
Command-line front end.

    python -m app dist chain.json --n 10 --route gf --format json
    python -m app mean chain.json --n 10
    python -m app compare chain.json --n 30 --routes dp,closed,gf --tol 1e-9
    python -m app simulate chain.json --n 10 --samples 1000000 --seed 7 --start 0

Tables go to standard output, diagnostics to standard error. Exit codes:
0 success, 1 route comparison outside tolerance, 2 invalid input,
3 route not applicable to the chain or size.
"""
import argparse
import logging
import sys
from typing import List, Optional

from app import __version__
from app.config import settings
from app.exceptions import ArgumentError, ChainValidationError, RouteError
from app.services.routes import RouteService
from app.utils.chain_files import read_chain_file
from app.utils.formatting import render

logger = logging.getLogger("app.cli")

EXIT_OK = 0
EXIT_TOLERANCE = 1
EXIT_INVALID = 2
EXIT_ROUTE = 3
EXIT_INTERNAL = 4

ROUTES = ("dp", "gf", "closed", "enum", "vw")


def _non_negative_int(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {text}")
    return value


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _route_list(text: str) -> List[str]:
    routes = [part.strip() for part in text.split(",") if part.strip()]
    unknown = [route for route in routes if route not in ROUTES]
    if unknown:
        raise argparse.ArgumentTypeError(f"unknown routes {unknown}, choose from {list(ROUTES)}")
    return routes


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="occupancy",
        description="Exact occupancy-time distributions of finite Markov chains.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser, horizon_type=_non_negative_int) -> None:
        p.add_argument("chain_file", help="JSON file with 'P', 'U' and optional 'states'")
        p.add_argument("--n", type=horizon_type, required=True, help="horizon (number of steps)")
        p.add_argument("--format", choices=("csv", "json"), default="csv")

    dist = sub.add_parser("dist", help="full table g_i(n, k)")
    add_common(dist)
    dist.add_argument("--route", choices=ROUTES, default="dp")
    dist.add_argument("--all-layers", action="store_true", help="emit every horizon 0..n (dp route)")

    mean = sub.add_parser("mean", help="expected occupancy e(n) per state")
    add_common(mean, _positive_int)

    compare = sub.add_parser("compare", help="cross-check several routes")
    add_common(compare)
    compare.add_argument("--routes", type=_route_list, default=["dp", "gf"])
    compare.add_argument("--tol", type=float, default=None,
                         help="pass threshold (default: loosest declared tolerance of the routes)")

    simulate = sub.add_parser("simulate", help="Monte Carlo tally with z-scores against dp")
    add_common(simulate, _positive_int)
    simulate.add_argument("--samples", type=_positive_int, default=settings.DEFAULT_SAMPLES)
    simulate.add_argument("--seed", type=_non_negative_int, default=settings.DEFAULT_SEED)
    simulate.add_argument("--start", default="0", help="start state, index or label")
    simulate.add_argument("--workers", type=_positive_int, default=settings.SIMULATION_WORKERS)
    return parser


def _run(args: argparse.Namespace, service: RouteService) -> int:
    chain = read_chain_file(args.chain_file)
    if args.command == "dist":
        report = service.dist(chain, args.n, route=args.route, all_layers=args.all_layers)
    elif args.command == "mean":
        report = service.mean(chain, args.n)
    elif args.command == "compare":
        report = service.compare(chain, args.n, args.routes, tolerance=args.tol)
    else:
        report = service.simulate(chain, args.n, samples=args.samples, seed=args.seed,
                                  start=args.start, workers=args.workers)
    sys.stdout.write(render(report, args.format))
    if args.command == "compare" and not report.passed:
        return EXIT_TOLERANCE
    return EXIT_OK


def main(argv: Optional[List[str]] = None) -> int:
    logging.basicConfig(
        level=getattr(logging, settings.LOG_LEVEL.upper(), logging.INFO),
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        handlers=[logging.StreamHandler(sys.stderr)],
    )
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    try:
        return _run(args, RouteService(settings))
    except ChainValidationError as e:
        logger.error(f"Invalid chain: {str(e)}")
        return EXIT_INVALID
    except ArgumentError as e:
        logger.error(f"Invalid arguments: {str(e)}")
        return EXIT_INVALID
    except RouteError as e:
        logger.error(f"Route error: {str(e)}")
        return EXIT_ROUTE
    except Exception as e:
        logger.error(f"Unexpected failure: {str(e)}", exc_info=True)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
