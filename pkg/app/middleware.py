import asyncio
import logging
import time
from dataclasses import dataclass
from typing import Any, Awaitable, Callable, Dict, List, Sequence

from app.config import Config
from app.errors import CoringError
from models.check_registry import CheckDefinition
from models.report import CheckReport

logger = logging.getLogger(__name__)


@dataclass
class CheckJob:
    """One suite applied to one target of a workspace."""

    definition: CheckDefinition
    instance: str
    payload: Any

    @property
    def name(self) -> str:
        return f"{self.definition.code}:{self.instance}"


Handler = Callable[[CheckJob, Dict[str, Any]], Awaitable[CheckReport]]


class CheckMiddleware:
    """Base class: wraps the next handler of the pipeline."""

    async def __call__(self, handler: Handler, job: CheckJob, data: Dict[str, Any]) -> CheckReport:
        return await handler(job, data)


class LoggingMiddleware(CheckMiddleware):
    """Times every check and logs its outcome."""

    async def __call__(self, handler: Handler, job: CheckJob, data: Dict[str, Any]) -> CheckReport:
        start_time = time.perf_counter()
        logger.debug(f"Running {job.name}")
        report = await handler(job, data)
        report.timing = time.perf_counter() - start_time
        if report.error is not None:
            logger.error(f"{job.name} errored after {report.timing:.3f}s: {report.error}")
        elif report.failures:
            logger.warning(f"{job.name} failed with {report.total_failures} witnesses ({report.timing:.3f}s)")
        else:
            logger.info(f"{job.name} passed in {report.timing:.3f}s")
        return report


class ErrorMiddleware(CheckMiddleware):
    """Turns an exception raised by a check into an error report."""

    async def __call__(self, handler: Handler, job: CheckJob, data: Dict[str, Any]) -> CheckReport:
        try:
            return await handler(job, data)
        except CoringError as e:
            return CheckReport(check=job.definition.code, instance=job.instance, error=str(e))
        except Exception as e:
            logger.exception(f"Unexpected error in {job.name}")
            return CheckReport(
                check=job.definition.code, instance=job.instance, error=f"{type(e).__name__}: {e}"
            )


class ConcurrencyMiddleware(CheckMiddleware):
    """Caps how many checks run at once."""

    def __init__(self, max_concurrent: int = 4):
        """
        Initialize the limiter.

        Args:
            max_concurrent: Maximum number of checks in flight
        """
        self.max_concurrent = max_concurrent
        self._semaphore = asyncio.Semaphore(max_concurrent)

    async def __call__(self, handler: Handler, job: CheckJob, data: Dict[str, Any]) -> CheckReport:
        async with self._semaphore:
            return await handler(job, data)


async def run_check(job: CheckJob, data: Dict[str, Any]) -> CheckReport:
    """Innermost handler: runs the suite in a worker thread and names the report."""
    report = await asyncio.to_thread(job.definition.runner, data["workspace"], job.payload)
    report.check = job.definition.code
    report.instance = job.instance
    return report


def build_pipeline(handler: Handler, middlewares: Sequence[CheckMiddleware]) -> Handler:
    """Wrap handler so that the first middleware is the outermost."""
    wrapped = handler
    for middleware in reversed(middlewares):
        wrapped = _bind(middleware, wrapped)
    return wrapped


def _bind(middleware: CheckMiddleware, handler: Handler) -> Handler:
    async def call(job: CheckJob, data: Dict[str, Any]) -> CheckReport:
        return await middleware(handler, job, data)

    return call


def register_middleware(max_concurrent: int = 0) -> List[CheckMiddleware]:
    """Middleware in call order (outermost first)."""
    middlewares = [
        ConcurrencyMiddleware(max_concurrent or Config.CHECK_CONCURRENCY),
        LoggingMiddleware(),
        ErrorMiddleware(),
    ]
    logger.debug("Check middleware registered: %s", [type(m).__name__ for m in middlewares])
    return middlewares
