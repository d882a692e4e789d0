#!/usr/bin/env python3
"""
Main entry point for the stateproof checker with CLI options
"""

import argparse
import logging
import logging.config
import sys
from importlib import resources
from pathlib import Path

import yaml

from stateproof.config import settings
from stateproof.io.utils import write_json_file
from stateproof.reports.models import Report
from stateproof.tools.commands import (
    cmd_check_kind,
    cmd_check_proof,
    cmd_replay,
    cmd_sweep,
    cmd_validate,
    render_report,
)

logger = logging.getLogger(__name__)

COMMANDS = ["check-kind", "check-proof", "validate", "replay", "sweep"]


def setup_logging() -> None:
    config_text = resources.files("stateproof.custom_logging").joinpath("logging_config.yaml").read_text("utf-8")
    logging.config.dictConfig(yaml.safe_load(config_text))
    logging.getLogger().setLevel(settings.LOG_LEVEL.upper())


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="stateproof",
        description="Proof kernel and semantic checker for decorated global-state equations",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  %(prog)s check-kind term.txt                      # Infer the decoration of a term
  %(prog)s check-proof corpus/commutation.proof     # Check one proof script
  %(prog)s validate corpus/equations/commutation.eq # Decide an equation over all stores
  %(prog)s replay corpus                            # Replay every script below corpus/
  %(prog)s sweep --seed 7 --samples 200             # Rule-soundness sweep
        """,
    )
    parser.add_argument("command", choices=COMMANDS, help="Command to execute")
    parser.add_argument(
        "path",
        nargs="?",
        type=Path,
        help="Term, proof script, equation file or corpus directory (not used by sweep)",
    )
    parser.add_argument(
        "--signature",
        help="Signature file or inline 'locations i:{0,1} ...' text. "
        "If omitted, scripts use their own signature and other inputs use DEFAULT_SIGNATURE.",
    )
    parser.add_argument(
        "--format",
        dest="output_format",
        choices=["text", "json"],
        default=None,
        help="Report format on stdout. If omitted, uses environment setting OUTPUT_FORMAT (default: text).",
    )
    parser.add_argument("--seed", type=int, default=None, help="Seed for the sweep (default: DEFAULT_SEED)")
    parser.add_argument("--samples", type=int, default=None, help="Random instantiations per rule for the sweep")
    parser.add_argument("--max-depth", type=int, default=None, help="Term depth budget for the sweep")
    parser.add_argument("--output", type=Path, default=None, help="Also write the JSON report to this file")
    return parser


def run_command(args: argparse.Namespace) -> Report:
    if args.command == "sweep":
        return cmd_sweep(args.signature, args.seed, args.samples, args.max_depth)
    if args.command == "check-kind":
        return cmd_check_kind(args.path, args.signature)
    if args.command == "check-proof":
        return cmd_check_proof(args.path, args.signature)
    if args.command == "validate":
        return cmd_validate(args.path, args.signature)
    return cmd_replay(args.path, args.signature)


def main(argv: list[str] | None = None) -> None:
    """Main entry point with CLI argument parsing."""
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command != "sweep" and args.path is None:
        parser.error(f"{args.command} needs a path argument")
    setup_logging()

    try:
        logger.info(f"🚀 Running {args.command}...")
        report = run_command(args)
        print(render_report(report, args.output_format))
        if args.output is not None:
            write_json_file(args.output, report.model_dump(mode="json"))
            logger.info(f"📄 Report written to {args.output}")
    except KeyboardInterrupt:
        logger.info("🛑 Operation cancelled by user")
        sys.exit(1)
    except Exception as e:
        logger.error(f"❌ Operation failed: {e}")
        sys.exit(1)
    sys.exit(report.exit_code)


if __name__ == "__main__":
    main()
