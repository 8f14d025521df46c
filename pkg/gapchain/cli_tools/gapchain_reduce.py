#!/usr/bin/env python
"""Run a reduction chain on one input file."""
import argparse
from typing import List

from gapchain.cli_tools.cli_options import add_config_arguments, main_entry, run_command
from gapchain.commands import cmd_reduce
from gapchain.stage_dispatcher import chains


def parse_arguments(args: List[str]) -> argparse.Namespace:
    """Parse command-line arguments."""
    description = "Run one reduction chain, or several joined by commas"
    parser = argparse.ArgumentParser(description=description)
    parser.add_argument("chain", help=f"One of {', '.join(chains)}", type=str)
    parser.add_argument("in_file", help="Input artifact", type=str)
    parser.add_argument("out_file", help="Output artifact", type=str)
    add_config_arguments(parser)
    return parser.parse_args(args)


def main(args: List[str]) -> int:
    cli_args = parse_arguments(args)
    return run_command(
        cli_args,
        lambda config: cmd_reduce(
            cli_args.chain, cli_args.in_file, cli_args.out_file, config, cli_args.report
        ),
    )


main_ep = main_entry(main)

if __name__ == "__main__":
    main_ep()
