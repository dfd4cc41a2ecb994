"""Check reports shared by the algebra checkers and the CLI."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

STATUS_PASS = "pass"
STATUS_FAIL = "fail"
STATUS_ERROR = "error"


@dataclass(frozen=True)
class Failure:
    """A single failing witness (basis vector, triple, pair ...)."""

    witness: str
    detail: str = ""

    def as_dict(self) -> Dict[str, str]:
        return {"witness": self.witness, "detail": self.detail}


@dataclass
class CheckReport:
    """Outcome of one law check on one instance.

    Every failure is kept; output trims to the first ``limit`` unless verbose.
    """

    check: str
    instance: str = ""
    failures: List[Failure] = field(default_factory=list)
    checked: int = 0
    timing: Optional[float] = None
    error: Optional[str] = None

    @property
    def total_failures(self) -> int:
        return len(self.failures)

    @property
    def status(self) -> str:
        if self.error is not None:
            return STATUS_ERROR
        return STATUS_FAIL if self.failures else STATUS_PASS

    @property
    def passed(self) -> bool:
        return self.status == STATUS_PASS

    def record(self, witness: Any, detail: str = "") -> None:
        self.failures.append(Failure(str(witness), detail))

    def tick(self, count: int = 1) -> None:
        self.checked += count

    def merge(self, other: "CheckReport", prefix: str = "") -> "CheckReport":
        """Fold another report's failures into this one."""
        for failure in other.failures:
            witness = f"{prefix}{failure.witness}" if prefix else failure.witness
            self.failures.append(Failure(witness, failure.detail))
        self.checked += other.checked
        if other.error and not self.error:
            self.error = other.error
        return self

    def witnesses(self) -> List[str]:
        return [failure.witness for failure in self.failures]

    def as_dict(self, limit: Optional[int] = 10, include_timing: bool = False) -> Dict[str, Any]:
        shown = self.failures if limit is None else self.failures[:limit]
        payload: Dict[str, Any] = {
            "check": self.check,
            "instance": self.instance,
            "status": self.status,
            "checked": self.checked,
            "total_failures": self.total_failures,
            "failures": [failure.as_dict() for failure in shown],
        }
        if self.error is not None:
            payload["error"] = self.error
        if include_timing:
            payload["timing"] = None if self.timing is None else round(self.timing, 6)
        return payload

    def format_text(self, limit: Optional[int] = 10, include_timing: bool = False) -> str:
        head = f"{self.status.upper():5} {self.check}"
        if self.instance and not self.check.endswith(self.instance):
            head += f" [{self.instance}]"
        head += f" (checked {self.checked}"
        if self.failures:
            head += f", {self.total_failures} failing"
        head += ")"
        if include_timing and self.timing is not None:
            head += f" {self.timing:.3f}s"
        lines = [head]
        if self.error is not None:
            lines.append(f"      error: {self.error}")
        shown = self.failures if limit is None else self.failures[:limit]
        for failure in shown:
            suffix = f": {failure.detail}" if failure.detail else ""
            lines.append(f"      - {failure.witness}{suffix}")
        if limit is not None and self.total_failures > limit:
            lines.append(f"      ... {self.total_failures - limit} more")
        return "\n".join(lines)


__all__ = [
    "STATUS_PASS",
    "STATUS_FAIL",
    "STATUS_ERROR",
    "Failure",
    "CheckReport",
]
