#!/usr/bin/env python
"""Query the adjacency oracle of an implicit or exported graph."""
import argparse
from typing import List

from gapchain.cli_tools.cli_options import add_config_arguments, main_entry, run_command
from gapchain.commands import cmd_adj


def parse_arguments(args: List[str]) -> argparse.Namespace:
    """Parse command-line arguments."""
    parser = argparse.ArgumentParser(description="Are two vertices adjacent?")
    parser.add_argument("instance_file", type=str)
    parser.add_argument("u", help="Vertex id, or KIND:anchor#copy=payload for rmcsp", type=str)
    parser.add_argument("w", type=str)
    add_config_arguments(parser)
    return parser.parse_args(args)


def main(args: List[str]) -> int:
    cli_args = parse_arguments(args)
    return run_command(
        cli_args,
        lambda config: cmd_adj(
            cli_args.instance_file, cli_args.u, cli_args.w, config, cli_args.report
        ),
    )


main_ep = main_entry(main)

if __name__ == "__main__":
    main_ep()
