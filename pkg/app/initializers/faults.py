"""
Fault fixtures: small documents with one deliberately broken law, the check
that must catch it and the witness it must report.
"""

import json
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, List, Optional

from app.errors import SpecSyntaxError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FaultFixture:
    """A broken document, the check selection to run and the expected outcome."""

    name: str
    description: str
    document: Dict[str, Any]
    select: str
    expect_status: str
    expect_witness: str


def _faults_file() -> Path:
    """Return path to fault definitions."""
    return Path(__file__).resolve().parents[1] / "data" / "faults.json"


class FaultLoader:
    """Class for loading the fault fixtures."""

    _fixtures: Optional[List[FaultFixture]] = None

    @classmethod
    def _load_fixtures(cls) -> List[FaultFixture]:
        if cls._fixtures is None:
            path = _faults_file()
            try:
                data = json.loads(path.read_text(encoding="utf-8"))
            except FileNotFoundError:
                raise SpecSyntaxError("fault fixtures not found", str(path))
            except json.JSONDecodeError as e:
                raise SpecSyntaxError(e.msg, f"{path}:{e.lineno}:{e.colno}")

            fixtures = []
            for name, raw in data.get("faults", {}).items():
                expect = raw.get("expect", {})
                fixtures.append(
                    FaultFixture(
                        name=name,
                        description=raw.get("description", ""),
                        document=raw["document"],
                        select=raw["select"],
                        expect_status=expect.get("status", "fail"),
                        expect_witness=expect.get("witness", ""),
                    )
                )
            cls._fixtures = fixtures
            logger.debug("Loaded %d fault fixtures", len(fixtures))

        return cls._fixtures

    @classmethod
    def get_all_fixtures(cls) -> List[FaultFixture]:
        return list(cls._load_fixtures())

    @classmethod
    def get_fixture(cls, name: str) -> Optional[FaultFixture]:
        for fixture in cls._load_fixtures():
            if fixture.name == name:
                return fixture
        return None
