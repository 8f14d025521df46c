"""Flags shared by every gapchain console script."""
import argparse
import logging
import sys
from typing import Any, Callable, List, Optional

from gapchain import __version__
from gapchain.commands import CommandResult
from gapchain.config import load
from gapchain.config import PipelineConfig
from gapchain.exceptions import GapchainBaseException
from gapchain.gapchain_globals import EXIT_PARSE

LOG_LEVELS = ("debug", "info", "warning", "error")


def add_config_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--seed", help="Pipeline seed (64-bit)", type=int)
    parser.add_argument("--k", help="Number of parts / groups / subsets", type=int)
    parser.add_argument("--t", help="Walk length of the graph product", type=int)
    parser.add_argument("--ell", help="Number of matrices (default: formula)", type=int)
    parser.add_argument("--field", dest="p", help="Prime field size", type=int)
    parser.add_argument("--eps", help="Gap parameter, e.g. 1/2", type=str)
    parser.add_argument("--r", help="Disperser union size (default: c log k)", type=int)
    parser.add_argument("--degree", help="Expander degree", type=int)
    parser.add_argument("--product", help="Product kind", choices=("walk", "tensor"))
    parser.add_argument(
        "--disperser-cap",
        help="Cut an oversized disperser subset size down to m",
        action="store_true",
        default=None,
    )
    parser.add_argument("--trials", help="Monte-Carlo trials", type=int)
    parser.add_argument("--workers", help="Worker processes", type=int)
    parser.add_argument("--budget-enum", help="Enumeration budget", type=int)
    parser.add_argument("--budget-materialize", help="Materialization budget", type=int)
    parser.add_argument("--budget-oracle", help="Oracle node budget", type=int)
    mode = parser.add_mutually_exclusive_group()
    mode.add_argument("--exact", dest="mode", action="store_const", const="exact")
    mode.add_argument("--montecarlo", dest="mode", action="store_const", const="montecarlo")
    parser.add_argument("--cfg", help="YAML configuration file", type=str)
    parser.add_argument("--report", help="Write the report to this file", type=str)
    parser.add_argument("--log-file", help="Log to this file", type=str)
    parser.add_argument(
        "--log-level", help="Log level", choices=LOG_LEVELS, default="warning"
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s v{__version__}")


def config_from_args(cli_args: argparse.Namespace) -> PipelineConfig:
    overrides = {
        name: getattr(cli_args, name, None)
        for name in (
            "seed",
            "k",
            "t",
            "ell",
            "p",
            "eps",
            "r",
            "degree",
            "product",
            "disperser_cap",
            "trials",
            "workers",
            "budget_enum",
            "budget_materialize",
            "budget_oracle",
            "mode",
        )
    }
    return load(cli_args.cfg, **overrides)


def setup_logging(cli_args: argparse.Namespace) -> None:
    logging.basicConfig(
        filename=cli_args.log_file,
        level=getattr(logging, cli_args.log_level.upper()),
        format="%(asctime)s %(levelname)s %(name)s %(message)s",
    )


def run_command(
    cli_args: argparse.Namespace, command: Callable[[PipelineConfig], CommandResult]
) -> int:
    """Build the config, run the command, print its report; returns the exit code."""
    setup_logging(cli_args)
    try:
        config = config_from_args(cli_args)
        result = command(config)
    except GapchainBaseException as e:
        print(f"error = {type(e).__name__}\n# {e}", file=sys.stderr)
        return e.exit_code
    except OSError as e:
        print(f"error = {type(e).__name__}\n# {e}", file=sys.stderr)
        return EXIT_PARSE
    sys.stdout.write(result.report)
    return result.exit_code


def main_entry(main: Callable[[List[str]], int]) -> Callable[[], Any]:
    def main_ep(argv: Optional[List[str]] = None) -> Any:
        sys.exit(main(sys.argv[1:] if argv is None else argv))

    return main_ep
