"""Loaders for the packaged catalog and fault fixtures."""

from .catalog import CatalogLoader
from .faults import FaultFixture, FaultLoader

__all__ = [
    "CatalogLoader",
    "FaultFixture",
    "FaultLoader",
]
