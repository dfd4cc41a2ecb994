"""Tests for the check pipeline middleware and reports."""

from __future__ import annotations

import asyncio
from typing import Any, Dict, List

import pytest

from app.errors import RingMismatchError
from app.middleware import (
    CheckJob,
    CheckMiddleware,
    ConcurrencyMiddleware,
    ErrorMiddleware,
    LoggingMiddleware,
    build_pipeline,
    register_middleware,
    run_check,
)
from app.workspace import Workspace
from models.check_registry import CheckDefinition, all_checks, ensure_check, get_check
from models.report import STATUS_ERROR, CheckReport


def make_job(runner, instance: str = "x") -> CheckJob:
    return CheckJob(CheckDefinition("demo", "suite", "rings", runner), instance, instance)


def passing(workspace: Workspace, payload: Any) -> CheckReport:
    report = CheckReport(check="anything")
    report.tick(3)
    return report


class Recorder(CheckMiddleware):
    def __init__(self, tag: str, calls: List[str]) -> None:
        self.tag = tag
        self.calls = calls

    async def __call__(self, handler, job: CheckJob, data: Dict[str, Any]) -> CheckReport:
        self.calls.append(f"{self.tag}>")
        report = await handler(job, data)
        self.calls.append(f"<{self.tag}")
        return report


@pytest.mark.asyncio
async def test_first_middleware_is_outermost() -> None:
    calls: List[str] = []
    handler = build_pipeline(run_check, [Recorder("a", calls), Recorder("b", calls)])
    report = await handler(make_job(passing), {"workspace": Workspace()})
    assert calls == ["a>", "b>", "<b", "<a"]
    assert report.check == "demo:suite"
    assert report.instance == "x"
    assert report.checked == 3


@pytest.mark.asyncio
async def test_errors_become_reports() -> None:
    def mismatched(workspace: Workspace, payload: Any) -> CheckReport:
        raise RingMismatchError("rings differ")

    def broken(workspace: Workspace, payload: Any) -> CheckReport:
        raise RuntimeError("boom")

    handler = build_pipeline(run_check, [ErrorMiddleware()])
    data = {"workspace": Workspace()}
    report = await handler(make_job(mismatched), data)
    assert report.status == STATUS_ERROR
    assert report.error == "rings differ"
    assert report.check == "demo:suite"

    report = await handler(make_job(broken), data)
    assert report.error == "RuntimeError: boom"


@pytest.mark.asyncio
async def test_logging_middleware_records_timing() -> None:
    handler = build_pipeline(run_check, [LoggingMiddleware(), ErrorMiddleware()])
    report = await handler(make_job(passing), {"workspace": Workspace()})
    assert report.timing is not None and report.timing >= 0
    assert report.passed


@pytest.mark.asyncio
async def test_concurrency_is_capped() -> None:
    in_flight = 0
    peak = 0

    async def slow(job: CheckJob, data: Dict[str, Any]) -> CheckReport:
        nonlocal in_flight, peak
        in_flight += 1
        peak = max(peak, in_flight)
        await asyncio.sleep(0.01)
        in_flight -= 1
        return CheckReport(check=job.name)

    handler = build_pipeline(slow, [ConcurrencyMiddleware(2)])
    jobs = [make_job(passing, str(k)) for k in range(6)]
    reports = await asyncio.gather(*(handler(job, {}) for job in jobs))
    assert len(reports) == 6
    assert peak == 2


def test_register_middleware_order() -> None:
    middlewares = register_middleware(3)
    assert [type(m) for m in middlewares] == [ConcurrencyMiddleware, LoggingMiddleware, ErrorMiddleware]
    assert middlewares[0].max_concurrent == 3


def test_registry_lookup() -> None:
    import app.suites  # noqa: F401

    codes = [definition.code for definition in all_checks()]
    assert "coring:laws" in codes
    assert len(codes) == len(set(codes))
    assert ensure_check("coring:laws").section == "corings"
    assert get_check("coring:nothing") is None
    with pytest.raises(ValueError):
        ensure_check("coring:nothing")


def test_report_rendering() -> None:
    report = CheckReport(check="coring:laws", instance="C")
    report.tick(4)
    for k in range(3):
        report.record(f"left-counit@c{k}", "0 != c")
    assert report.status == "fail"
    text = report.format_text(limit=2)
    assert text.splitlines()[0] == "FAIL  coring:laws [C] (checked 4, 3 failing)"
    assert text.splitlines()[-1] == "      ... 1 more"
    payload = report.as_dict(limit=None)
    assert payload["total_failures"] == 3
    assert "timing" not in payload

    merged = CheckReport(check="outer").merge(report, prefix="inner:")
    assert merged.witnesses()[0] == "inner:left-counit@c0"
    assert merged.checked == 4
