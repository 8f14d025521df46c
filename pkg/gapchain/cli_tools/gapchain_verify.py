#!/usr/bin/env python
"""Run a checker on an artifact and report pass/fail."""
import argparse
from typing import List

from gapchain.cli_tools.cli_options import add_config_arguments, main_entry, run_command
from gapchain.commands import VERIFY_TARGETS, cmd_verify


def parse_arguments(args: List[str]) -> argparse.Namespace:
    """Parse command-line arguments."""
    parser = argparse.ArgumentParser(description="Verify an instance, graph, disperser or witness")
    parser.add_argument("target", choices=VERIFY_TARGETS)
    parser.add_argument("files", nargs="+", help="Artifact(s); witness takes instance and witness")
    add_config_arguments(parser)
    return parser.parse_args(args)


def main(args: List[str]) -> int:
    cli_args = parse_arguments(args)
    return run_command(
        cli_args,
        lambda config: cmd_verify(cli_args.target, cli_args.files, config, cli_args.report),
    )


main_ep = main_entry(main)

if __name__ == "__main__":
    main_ep()
