#!/usr/bin/env python
"""Low-degree line test on a tabulated function."""
import argparse
from typing import List

from gapchain.cli_tools.cli_options import add_config_arguments, main_entry, run_command
from gapchain.commands import cmd_ldt


def parse_arguments(args: List[str]) -> argparse.Namespace:
    """Parse command-line arguments."""
    parser = argparse.ArgumentParser(description="Reject rate of the line test")
    parser.add_argument("table_file", type=str)
    parser.add_argument("--test-degree", help="Degree tested (default 2)", type=int, default=2)
    add_config_arguments(parser)
    return parser.parse_args(args)


def main(args: List[str]) -> int:
    cli_args = parse_arguments(args)
    return run_command(
        cli_args,
        lambda config: cmd_ldt(
            cli_args.table_file, config, cli_args.test_degree, cli_args.report
        ),
    )


main_ep = main_entry(main)

if __name__ == "__main__":
    main_ep()
