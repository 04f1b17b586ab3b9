import argparse
import sys
from typing import List, Optional
from igames import __version__
from igames.api.game_controller import add_verify_arguments, cmd_matrix_demo, cmd_verify
from igames.api.simulation_controller import (
    add_bench_arguments, add_simulate_arguments, cmd_bench, cmd_simulate,
)
from igames.logger import logger


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="igames",
        description="Nash and Stackelberg game solvers for unsupervised intersection crossing",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    commands = parser.add_subparsers(dest="command", required=True)

    simulate = commands.add_parser("simulate", help="Run a seeded batch of intersection scenarios")
    add_simulate_arguments(simulate)
    simulate.set_defaults(handler=cmd_simulate)

    demo = commands.add_parser("matrix-demo", help="Equilibria of the strong-versus-weak demonstration game")
    demo.set_defaults(handler=cmd_matrix_demo)

    verify = commands.add_parser("verify", help="Check a profile of a matrix game against the equilibrium definitions")
    add_verify_arguments(verify)
    verify.set_defaults(handler=cmd_verify)

    bench = commands.add_parser("bench", help="Mean decision time per game, setting and player count")
    add_bench_arguments(bench)
    bench.set_defaults(handler=cmd_bench)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # argparse exits 2 on usage errors and 0 on --help / --version
        return int(e.code or 0)
    logger.debug(f"Running {args.command}")
    return args.handler(args)


if __name__ == "__main__":
    sys.exit(main())
