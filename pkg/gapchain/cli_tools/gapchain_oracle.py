#!/usr/bin/env python
"""Exact ground-truth solvers."""
import argparse
from typing import List

from gapchain.cli_tools.cli_options import add_config_arguments, main_entry, run_command
from gapchain.commands import ORACLE_PROBLEMS, cmd_oracle


def parse_arguments(args: List[str]) -> argparse.Namespace:
    """Parse command-line arguments."""
    parser = argparse.ArgumentParser(description="Solve a small instance exactly")
    parser.add_argument("problem", choices=ORACLE_PROBLEMS)
    parser.add_argument("file", help="Instance file", type=str)
    parser.add_argument("--out", help="Write the witness to this file", type=str)
    add_config_arguments(parser)
    return parser.parse_args(args)


def main(args: List[str]) -> int:
    cli_args = parse_arguments(args)
    return run_command(
        cli_args,
        lambda config: cmd_oracle(
            cli_args.problem, cli_args.file, config, cli_args.out, cli_args.report
        ),
    )


main_ep = main_entry(main)

if __name__ == "__main__":
    main_ep()
