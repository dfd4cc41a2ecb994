"""
Command line entrypoint: ``python -m app.cli {check,construct,catalog} ...``.
"""

import argparse
import asyncio
import logging
import sys
from typing import Optional, Sequence

from app.config import Config
from app.handlers import register_handlers

logger = logging.getLogger(__name__)


def configure_logging(level: Optional[str] = None) -> None:
    """Log to stderr so stdout carries only reports and documents."""
    logging.basicConfig(
        level=getattr(logging, (level or Config.LOG_LEVEL).upper(), logging.INFO),
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        stream=sys.stderr,
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="coring-workbench",
        description="Construct and verify corings over rings with local units.",
    )
    parser.add_argument("--log-level", default=None, help="override LOG_LEVEL")
    subparsers = parser.add_subparsers(dest="command", required=True)
    register_handlers(subparsers)
    return parser


async def run(args: argparse.Namespace) -> int:
    return await args.handler(args)


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    configure_logging(args.log_level)
    try:
        Config.validate()
    except ValueError as e:
        logger.error(f"Invalid configuration: {e}")
        return 2
    return asyncio.run(run(args))


if __name__ == "__main__":
    sys.exit(main())
