"""
Loader for the packaged catalog of worked examples.
"""

import json
import logging
from pathlib import Path
from typing import Any, Dict, List, Optional

from app.config import Config
from app.errors import SpecSyntaxError
from app.spec_loader import parse_spec
from app.workspace import SECTIONS, Workspace

logger = logging.getLogger(__name__)


class CatalogLoader:
    """Class for reading the catalog spec document."""

    _catalog_data = None

    @classmethod
    def _load_catalog_data(cls) -> Dict[str, Any]:
        """Load the catalog document from JSON once."""
        if cls._catalog_data is None:
            json_file_path = Config.get_catalog_path()

            try:
                with json_file_path.open("r", encoding="utf-8") as f:
                    cls._catalog_data = json.load(f)
            except FileNotFoundError:
                raise SpecSyntaxError("catalog file not found", str(json_file_path))
            except json.JSONDecodeError as e:
                raise SpecSyntaxError(e.msg, f"{json_file_path}:{e.lineno}:{e.colno}")
            logger.debug("Loaded catalog from %s", json_file_path)

        return cls._catalog_data

    @classmethod
    def get_document(cls) -> Dict[str, Any]:
        """The catalog as a spec document."""
        return cls._load_catalog_data()

    @classmethod
    def get_path(cls) -> Path:
        return Config.get_catalog_path()

    @classmethod
    def get_entries(cls, section: str) -> Dict[str, Any]:
        """Raw entries of one section."""
        return dict(cls._load_catalog_data().get(section, {}))

    @classmethod
    def get_names(cls) -> Dict[str, List[str]]:
        """Entry names per non-empty section, in section order."""
        data = cls._load_catalog_data()
        return {section: list(data[section]) for section in SECTIONS if data.get(section)}

    @classmethod
    def get_description(cls, section: str, name: str) -> Optional[str]:
        entry = cls._load_catalog_data().get(section, {}).get(name)
        if not isinstance(entry, dict):
            return None
        return entry.get("description") or entry.get("builder", "explicit")

    @classmethod
    def build_workspace(cls, corner: Optional[int] = None) -> Workspace:
        """Resolve every catalog entry."""
        return parse_spec(cls._load_catalog_data(), corner, source=str(cls.get_path()))

    @classmethod
    def reset(cls) -> None:
        cls._catalog_data = None
