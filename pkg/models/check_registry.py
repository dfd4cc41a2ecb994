"""Registry of law-check suites, keyed by ``kind:suite``."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Callable, Dict, Iterable, List, Optional, Tuple

from models.report import CheckReport

Target = Tuple[str, Any]


@dataclass(frozen=True)
class CheckDefinition:
    """One suite of checks over the objects of a workspace section.

    ``targets`` lists ``(instance, payload)`` pairs for a workspace; the
    default is every object of ``section``.  ``runner`` turns one payload into
    a report.
    """

    kind: str
    suite: str
    section: str
    runner: Callable[[Any, Any], CheckReport]
    description: str = ""
    targets: Optional[Callable[[Any], Iterable[Target]]] = None

    @property
    def code(self) -> str:
        return f"{self.kind}:{self.suite}"

    def expand(self, workspace: Any) -> List[Target]:
        if self.targets is not None:
            return list(self.targets(workspace))
        return [(name, name) for name in workspace.section(self.section)]


_CHECK_REGISTRY: Dict[str, CheckDefinition] = {}


def register_check(
    kind: str,
    suite: str,
    section: str,
    description: str = "",
    targets: Optional[Callable[[Any], Iterable[Target]]] = None,
) -> Callable[[Callable[[Any, Any], CheckReport]], Callable[[Any, Any], CheckReport]]:
    """Decorator adding a runner to the registry."""

    def decorator(runner: Callable[[Any, Any], CheckReport]) -> Callable[[Any, Any], CheckReport]:
        definition = CheckDefinition(kind, suite, section, runner, description, targets)
        if definition.code in _CHECK_REGISTRY:
            raise ValueError(f"Check suite {definition.code} is already registered")
        _CHECK_REGISTRY[definition.code] = definition
        return runner

    return decorator


def all_checks() -> List[CheckDefinition]:
    """Every registered suite, in registration order."""
    return list(_CHECK_REGISTRY.values())


def get_check(code: str) -> CheckDefinition | None:
    return _CHECK_REGISTRY.get(code)


def ensure_check(code: str) -> CheckDefinition:
    """Return a suite or raise a helpful error."""
    definition = get_check(code)
    if not definition:
        raise ValueError(f"Unknown check suite: {code}")
    return definition


__all__ = [
    "CheckDefinition",
    "Target",
    "register_check",
    "all_checks",
    "get_check",
    "ensure_check",
]
