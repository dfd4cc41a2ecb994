import os
from dataclasses import dataclass
from pathlib import Path
from dotenv import load_dotenv

load_dotenv()

_DEFAULT_CATALOG = Path(__file__).resolve().parent / "data" / "catalog.json"


@dataclass
class Config:
    """Configuration for the coring workbench."""

    # Logging configuration
    LOG_LEVEL: str = os.getenv("LOG_LEVEL", "INFO")

    # Default spec document used when `check` gets no files
    CATALOG_PATH: str = os.getenv("CORING_CATALOG_PATH", "")

    # Finite corner for lazily infinite rings
    CORNER_SIZE: int = int(os.getenv("CORING_CORNER_SIZE", "3"))

    # Reporting
    REPORT_FAILURE_LIMIT: int = int(os.getenv("CORING_REPORT_FAILURE_LIMIT", "10"))
    REPORT_FORMAT: str = os.getenv("CORING_REPORT_FORMAT", "text")

    # Number of checks allowed to run at once
    CHECK_CONCURRENCY: int = int(os.getenv("CORING_CHECK_CONCURRENCY", "4"))

    @classmethod
    def validate(cls) -> bool:
        """Validate that all configuration values are usable."""
        if cls.CORNER_SIZE < 1:
            raise ValueError("CORING_CORNER_SIZE must be a positive integer")

        if cls.REPORT_FAILURE_LIMIT < 1:
            raise ValueError("CORING_REPORT_FAILURE_LIMIT must be a positive integer")

        if cls.CHECK_CONCURRENCY < 1:
            raise ValueError("CORING_CHECK_CONCURRENCY must be a positive integer")

        if cls.REPORT_FORMAT not in ("text", "json"):
            raise ValueError("CORING_REPORT_FORMAT must be 'text' or 'json'")

        return True

    @classmethod
    def get_catalog_path(cls) -> Path:
        """Return the default spec document, falling back to the packaged catalog."""
        if cls.CATALOG_PATH:
            return Path(cls.CATALOG_PATH).expanduser()
        return _DEFAULT_CATALOG


if os.getenv("CONFIG_VALIDATE_ON_IMPORT", "0") == "1":
    Config.validate()
