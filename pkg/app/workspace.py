"""
Named objects parsed from spec documents, and the canonical serialization of
rings, modules and corings back into document form.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

from app.errors import SpecReferenceError
from app.core.exact_linalg import format_scalar
from app.core.local_ring import AnyRing, GradedRing, LazyGradedRing, RingMorphism
from app.core.unital_module import Bimodule
from app.core.coring_core import Comodule, Coring, CoringMorphism
from app.core.coring_constructors import DualBases
from app.core.bicategory import OneCell, TwoCell

logger = logging.getLogger(__name__)

SECTIONS = (
    "rings",
    "morphisms",
    "modules",
    "corings",
    "coring_morphisms",
    "comodules",
    "one_cells",
    "two_cells",
    "adjunctions",
    "dual_pairs",
)


@dataclass
class Origin:
    """Builder name and resolved arguments an object was made from."""

    builder: str
    args: Dict[str, Any] = field(default_factory=dict)


@dataclass
class AdjunctionEntry:
    """Σ, an optional B-coring D for the transport check, and optional dual-basis overrides."""

    sigma: Bimodule
    coring: Optional[Coring] = None
    dual_bases: Optional[DualBases] = None


@dataclass
class DualPair:
    w: Bimodule
    sigma: Bimodule


@dataclass
class Workspace:
    """Every object declared by one or more spec documents."""

    corner: int = 3
    rings: Dict[str, AnyRing] = field(default_factory=dict)
    morphisms: Dict[str, RingMorphism] = field(default_factory=dict)
    modules: Dict[str, Bimodule] = field(default_factory=dict)
    corings: Dict[str, Coring] = field(default_factory=dict)
    coring_morphisms: Dict[str, CoringMorphism] = field(default_factory=dict)
    comodules: Dict[str, Comodule] = field(default_factory=dict)
    one_cells: Dict[str, OneCell] = field(default_factory=dict)
    two_cells: Dict[str, TwoCell] = field(default_factory=dict)
    adjunctions: Dict[str, AdjunctionEntry] = field(default_factory=dict)
    dual_pairs: Dict[str, DualPair] = field(default_factory=dict)
    origins: Dict[str, Dict[str, Origin]] = field(default_factory=dict)

    def __len__(self) -> int:
        return sum(len(self.section(name)) for name in SECTIONS)

    def section(self, name: str) -> Dict[str, Any]:
        if name not in SECTIONS:
            raise KeyError(f"Unknown workspace section {name!r}")
        return getattr(self, name)

    def get(self, section: str, name: str) -> Any:
        objects = self.section(section)
        if name not in objects:
            raise SpecReferenceError(name, section)
        return objects[name]

    def origin(self, section: str, name: str) -> Optional[Origin]:
        return self.origins.get(section, {}).get(name)

    def corner_labels(self, name: str) -> List[str]:
        """Labels a ring is checked on: all of them, or the first ``corner`` of a lazy ring."""
        ring = self.get("rings", name)
        if isinstance(ring, LazyGradedRing):
            return list(ring.labels_upto(self.corner))
        return list(ring.labels)

    def finite_ring(self, name: str) -> GradedRing:
        """The ring itself, or its truncation at the workspace corner."""
        ring = self.get("rings", name)
        if isinstance(ring, LazyGradedRing):
            return ring.truncation(self.corner)
        return ring

    def names(self) -> Dict[str, List[str]]:
        return {section: list(self.section(section)) for section in SECTIONS if self.section(section)}


# Canonical serialization


def serialize_ring(ring: GradedRing) -> Dict[str, Any]:
    products = []
    for i in range(ring.dim):
        for j in range(ring.dim):
            product = ring.product(i, j)
            if product:
                products.append(
                    [
                        ring.basis[i].name,
                        ring.basis[j].name,
                        {ring.basis[k].name: format_scalar(c) for k, c in product.items()},
                    ]
                )
    return {
        "labels": list(ring.labels),
        "basis": [[b.name, b.left, b.right] for b in ring.basis],
        "idempotents": {label: ring.basis[k].name for label, k in ring.idempotents.items()},
        "products": products,
    }


def _table(module: Bimodule, table, key_names) -> List[List[Any]]:
    rows = []
    for key in sorted(table):
        first, second = key_names(key)
        rows.append([first, second, {module.basis[k].name: format_scalar(c) for k, c in table[key].items()}])
    return rows


def serialize_module(module: Bimodule) -> Dict[str, Any]:
    B, A = module.left_ring, module.right_ring
    return {
        "left": B.name,
        "right": A.name,
        "basis": [[b.name, b.left, b.right] for b in module.basis],
        "left_action": _table(
            module, module.left_action_table(), lambda key: (B.basis[key[0]].name, module.basis[key[1]].name)
        ),
        "right_action": _table(
            module, module.right_action_table(), lambda key: (module.basis[key[0]].name, A.basis[key[1]].name)
        ),
    }


def serialize_coring(coring: Coring) -> Dict[str, Any]:
    carrier, square = coring.carrier, coring.square
    comult = {}
    for x, column in enumerate(coring.comult.columns):
        terms = []
        for k in sorted(column):
            i, j = square.factors[k]
            terms.append([carrier.basis[i].name, carrier.basis[j].name, format_scalar(column[k])])
        comult[carrier.basis[x].name] = terms
    ring = coring.ring
    counit = {
        carrier.basis[x].name: {ring.basis[a].name: format_scalar(c) for a, c in column.items()}
        for x, column in enumerate(coring.counit.columns)
    }
    return {"ring": ring.name, "carrier": carrier.name, "comult": comult, "counit": counit}


def coring_document(coring: Coring, name: Optional[str] = None) -> Dict[str, Any]:
    """Self-contained document declaring the coring with its ring and carrier."""
    carrier = coring.carrier
    rings = {}
    for ring in (coring.ring, carrier.left_ring, carrier.right_ring):
        rings[ring.name] = serialize_ring(ring)
    return {
        "rings": rings,
        "modules": {carrier.name: serialize_module(carrier)},
        "corings": {name or coring.name: serialize_coring(coring)},
    }


def dump_document(document: Dict[str, Any]) -> str:
    """Canonical text: sorted keys, two-space indent, trailing newline."""
    return json.dumps(document, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


__all__ = [
    "SECTIONS",
    "Origin",
    "AdjunctionEntry",
    "DualPair",
    "Workspace",
    "serialize_ring",
    "serialize_module",
    "serialize_coring",
    "coring_document",
    "dump_document",
]
