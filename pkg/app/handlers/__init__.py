"""Subcommand registration for the command line."""

import argparse

from .catalog import register_catalog_handlers
from .check import register_check_handlers
from .construct import register_construct_handlers


def register_handlers(subparsers: "argparse._SubParsersAction") -> None:
    """Attach every subcommand parser; each sets ``handler`` on its namespace."""
    register_check_handlers(subparsers)
    register_construct_handlers(subparsers)
    register_catalog_handlers(subparsers)
