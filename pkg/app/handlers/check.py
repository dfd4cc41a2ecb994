"""`check` subcommand: load spec documents and run the registered suites."""

from __future__ import annotations

import argparse
import asyncio
import json
import logging
from fnmatch import fnmatchcase
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

import app.suites  # noqa: F401  (registers the suites)
from app.config import Config
from app.errors import CoringError
from app.middleware import CheckJob, build_pipeline, register_middleware, run_check
from app.spec_loader import load_workspace
from app.workspace import Workspace
from models.check_registry import all_checks
from models.report import STATUS_ERROR, STATUS_FAIL, STATUS_PASS, CheckReport

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_INPUT = 2


def positive_int(text: str) -> int:
    """argparse type for --corner."""
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _matches(name: str, patterns: Sequence[str]) -> bool:
    if not patterns:
        return True
    return any(fnmatchcase(name, pattern) or fnmatchcase(name, f"{pattern}:*") for pattern in patterns)


def plan_jobs(workspace: Workspace, patterns: Sequence[str] = ()) -> List[CheckJob]:
    """Every (suite, target) pair whose ``kind:suite:instance`` matches a pattern."""
    jobs = []
    for definition in all_checks():
        for instance, payload in definition.expand(workspace):
            job = CheckJob(definition, instance, payload)
            if _matches(job.name, patterns):
                jobs.append(job)
    return sorted(jobs, key=lambda job: job.name)


async def run_checks(
    workspace: Workspace, patterns: Sequence[str] = (), concurrency: int = 0
) -> List[CheckReport]:
    """Run the selected checks concurrently; reports come back sorted by name."""
    jobs = plan_jobs(workspace, patterns)
    handler = build_pipeline(run_check, register_middleware(concurrency))
    data: Dict[str, Any] = {"workspace": workspace}
    logger.info("Running %d checks", len(jobs))
    reports = await asyncio.gather(*(handler(job, data) for job in jobs))
    return sorted(reports, key=lambda report: (report.check, report.instance))


def summarize(reports: Sequence[CheckReport]) -> Dict[str, int]:
    statuses = [report.status for report in reports]
    return {
        "checks": len(reports),
        "passed": statuses.count(STATUS_PASS),
        "failed": statuses.count(STATUS_FAIL),
        "errors": statuses.count(STATUS_ERROR),
    }


def exit_code(reports: Sequence[CheckReport]) -> int:
    return EXIT_OK if all(report.passed for report in reports) else EXIT_FAILED


def render_reports(
    reports: Sequence[CheckReport],
    fmt: str = "text",
    verbose: bool = False,
    timing: bool = False,
    limit: Optional[int] = None,
) -> str:
    """Canonical report text; identical across runs unless timing is requested."""
    limit = None if verbose else (limit or Config.REPORT_FAILURE_LIMIT)
    summary = summarize(reports)
    if fmt == "json":
        payload = {
            "checks": [report.as_dict(limit, include_timing=timing) for report in reports],
            "summary": summary,
        }
        return json.dumps(payload, indent=2, ensure_ascii=False) + "\n"
    lines = [report.format_text(limit, include_timing=timing) for report in reports]
    lines.append(
        f"summary: {summary['checks']} checks, {summary['passed']} passed, "
        f"{summary['failed']} failed, {summary['errors']} errors"
    )
    return "\n".join(lines) + "\n"


async def handle_check(args: argparse.Namespace) -> int:
    paths = list(args.specs) or [Config.get_catalog_path()]
    try:
        workspace = await load_workspace(paths, args.corner)
    except CoringError as e:
        logger.error("Cannot load %s: %s", ", ".join(map(str, paths)), e)
        return EXIT_INPUT

    if args.select and not plan_jobs(workspace, args.select):
        logger.error("Selection %s matches no check", args.select)
        return EXIT_INPUT

    reports = await run_checks(workspace, args.select)
    print(render_reports(reports, args.format or Config.REPORT_FORMAT, args.verbose, args.timing), end="")
    summary = summarize(reports)
    logger.info(
        "%d checks: %d passed, %d failed, %d errors",
        summary["checks"],
        summary["passed"],
        summary["failed"],
        summary["errors"],
    )
    return exit_code(reports)


def register_check_handlers(subparsers: "argparse._SubParsersAction") -> None:
    parser = subparsers.add_parser("check", help="run law checks over spec documents")
    parser.add_argument("specs", nargs="*", type=Path, help="spec documents (default: the catalog)")
    parser.add_argument(
        "--select",
        action="append",
        default=[],
        metavar="PATTERN",
        help="glob over kind:suite:instance; a prefix such as 'coring:laws' selects all its instances",
    )
    parser.add_argument("--format", choices=("text", "json"), default=None)
    parser.add_argument("--verbose", action="store_true", help="show every failing witness")
    parser.add_argument("--timing", action="store_true", help="include seconds per check")
    parser.add_argument("--corner", type=positive_int, default=None, help="finite corner for lazily infinite rings")
    parser.set_defaults(handler=handle_check)
