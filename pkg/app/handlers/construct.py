"""`construct` subcommand: build one coring from workspace objects and print its document."""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path
from typing import Callable, Dict, Optional

from app.config import Config
from app.errors import CoringError, MorphismCheckError, SpecSyntaxError
from app.core.coring_constructors import (
    base_extension,
    comatrix_coring,
    rees_coring,
    split_coring,
    sweedler_coring,
    trivial_coring,
)
from app.core.coring_core import Coring
from app.core.unital_module import regular_bimodule
from app.spec_loader import load_workspace
from app.workspace import Workspace, coring_document, dump_document

from .check import EXIT_INPUT, EXIT_OK, positive_int

logger = logging.getLogger(__name__)


def _require(args: argparse.Namespace, option: str) -> str:
    value = getattr(args, option)
    if not value:
        raise SpecSyntaxError(f"--{option} is required for construct {args.kind}", "command line")
    return value


def _trivial(ws: Workspace, args: argparse.Namespace) -> Coring:
    return trivial_coring(ws.finite_ring(_require(args, "ring")))


def _sweedler(ws: Workspace, args: argparse.Namespace) -> Coring:
    return sweedler_coring(ws.get("morphisms", _require(args, "morphism")))


def _split(ws: Workspace, args: argparse.Namespace) -> Coring:
    ring = ws.finite_ring(_require(args, "ring"))
    module = ws.get("modules", args.module) if args.module else regular_bimodule(ring)
    return split_coring(ring, module)


def _comatrix(ws: Workspace, args: argparse.Namespace) -> Coring:
    return comatrix_coring(ws.get("modules", _require(args, "sigma")))


def _base_extension(ws: Workspace, args: argparse.Namespace) -> Coring:
    sigma = ws.get("modules", _require(args, "sigma"))
    return base_extension(sigma, ws.get("corings", _require(args, "coring")))


def _rees(ws: Workspace, args: argparse.Namespace) -> Coring:
    labels = [label for label in _require(args, "idempotent").split(",") if label]
    coring, certificate = rees_coring(ws.finite_ring(_require(args, "ring")), labels)
    if not certificate.bijective:
        logger.warning(
            "Counit of %s has rank %d for ring dimension %d", coring.name, certificate.rank, certificate.ring_dim
        )
    return coring


CONSTRUCTORS: Dict[str, Callable[[Workspace, argparse.Namespace], Coring]] = {
    "trivial": _trivial,
    "sweedler": _sweedler,
    "split": _split,
    "comatrix": _comatrix,
    "base-ext": _base_extension,
    "rees": _rees,
}


def construct(workspace: Workspace, args: argparse.Namespace) -> str:
    """Canonical JSON document of the requested coring."""
    coring = CONSTRUCTORS[args.kind](workspace, args)
    logger.info("Constructed %s of dimension %d", coring.name, coring.carrier.dim)
    return dump_document(coring_document(coring, args.name))


async def handle_construct(args: argparse.Namespace) -> int:
    path: Optional[Path] = args.spec or Config.get_catalog_path()
    try:
        workspace = await load_workspace([path], args.corner)
        text = construct(workspace, args)
    except MorphismCheckError as e:
        logger.error("%s", e)
        if e.report is not None:
            print(e.report.format_text(limit=None), file=sys.stderr)
        return EXIT_INPUT
    except CoringError as e:
        logger.error("Cannot construct %s: %s", args.kind, e)
        return EXIT_INPUT
    print(text, end="")
    return EXIT_OK


def register_construct_handlers(subparsers: "argparse._SubParsersAction") -> None:
    parser = subparsers.add_parser("construct", help="build a coring and print its canonical document")
    parser.add_argument("kind", choices=sorted(CONSTRUCTORS))
    parser.add_argument("spec", nargs="?", type=Path, default=None, help="spec document (default: the catalog)")
    parser.add_argument("--ring")
    parser.add_argument("--morphism")
    parser.add_argument("--module")
    parser.add_argument("--sigma")
    parser.add_argument("--coring")
    parser.add_argument("--idempotent", help="comma-separated generator labels")
    parser.add_argument("--name", help="name of the coring in the output document")
    parser.add_argument("--corner", type=positive_int, default=None)
    parser.set_defaults(handler=handle_construct)
