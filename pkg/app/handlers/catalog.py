"""`catalog` subcommand: print the built-in catalog or run the fault fixtures."""

from __future__ import annotations

import argparse
import logging
from typing import List, Tuple

from app.errors import CoringError
from app.initializers import CatalogLoader, FaultFixture, FaultLoader
from app.spec_loader import parse_spec
from app.workspace import dump_document
from models.report import CheckReport

from .check import EXIT_FAILED, EXIT_INPUT, EXIT_OK, run_checks

logger = logging.getLogger(__name__)


def caught_by(fixture: FaultFixture, reports: List[CheckReport]) -> List[Tuple[CheckReport, str]]:
    """Reports (with the matching witness) that detect the fixture's fault."""
    hits = []
    for report in reports:
        if report.status != fixture.expect_status:
            continue
        for witness in report.witnesses() or [""]:
            if witness.startswith(fixture.expect_witness):
                hits.append((report, witness))
                break
    return hits


async def run_fault(fixture: FaultFixture, corner: int = 0) -> List[Tuple[CheckReport, str]]:
    workspace = parse_spec(fixture.document, corner or None, source=f"fault:{fixture.name}")
    reports = await run_checks(workspace, [fixture.select])
    return caught_by(fixture, reports)


async def handle_catalog(args: argparse.Namespace) -> int:
    try:
        if not args.faults:
            print(dump_document(CatalogLoader.get_document()), end="")
            return EXIT_OK
        fixtures = FaultLoader.get_all_fixtures()
        missed = 0
        for fixture in fixtures:
            hits = await run_fault(fixture)
            if hits:
                report, witness = hits[0]
                print(f"CAUGHT {fixture.name}: {report.check}:{report.instance} at {witness}")
            else:
                missed += 1
                print(f"MISSED {fixture.name}: {fixture.select} did not report {fixture.expect_witness!r}")
    except CoringError as e:
        logger.error("Cannot load fixtures: %s", e)
        return EXIT_INPUT
    logger.info("%d of %d faults caught", len(fixtures) - missed, len(fixtures))
    return EXIT_FAILED if missed else EXIT_OK


def register_catalog_handlers(subparsers: "argparse._SubParsersAction") -> None:
    parser = subparsers.add_parser("catalog", help="print the built-in catalog document")
    parser.add_argument("--faults", action="store_true", help="run the fault fixtures instead")
    parser.set_defaults(handler=handle_catalog)
