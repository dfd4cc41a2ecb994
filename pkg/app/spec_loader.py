"""
Spec documents: JSON objects with one mapping per section (``rings``,
``modules``, ``corings`` ...).  Each entry either names a ``builder`` with its
arguments or spells the object out explicitly.  References between entries
are resolved on demand, in any order, across every loaded document.
"""

from __future__ import annotations

import asyncio
import json
import logging
from dataclasses import replace
from fractions import Fraction
from pathlib import Path
from typing import Any, Callable, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

import aiofiles

from app.config import Config
from app.errors import SpecReferenceError, SpecSyntaxError
from app.core.exact_linalg import ONE, Matrix, SparseVector, parse_scalar, vec_axpy
from app.core.local_ring import (
    BasisElement,
    GradedRing,
    LazyGradedRing,
    RingMorphism,
    corner,
    direct_sum,
    identity_morphism,
    infinite_matrix_ring,
    infinite_path_algebra,
    matrix_ring,
    morphism_from_images,
    path_algebra,
    rational_field,
    rees_ring,
    with_scaled_product,
)
from app.core.unital_module import (
    Bimodule,
    LinearMap,
    direct_sum_module,
    forget_left,
    left_corner,
    regular_bimodule,
    restrict_scalars,
    right_dual,
    right_regular,
    row_module,
    simple_right_module,
    zero_module,
)
from app.core.tensor_engine import tensor_over
from app.core.coring_core import (
    Comodule,
    Coring,
    CoringMorphism,
    cofree_comodule,
    compose_coring_morphisms,
    corestrict,
    identity_coring_morphism,
    regular_comodule,
)
from app.core.coring_constructors import (
    UnityChoice,
    base_extension,
    base_extension_comatrix_iso,
    comatrix_coring,
    comonad_to_coring,
    counit_morphism,
    rees_coring,
    require_dual_basis,
    split_coring,
    sweedler_coring,
    trivial_coring,
    unity_labels,
)
from app.core.bicategory import (
    OneCell,
    TwoCell,
    comatrix_comodule,
    comatrix_one_cell,
    compose_one_cells,
    compose_two_cells_horizontal,
    compose_two_cells_vertical,
    identity_one_cell,
    identity_two_cell,
    induce_comodule,
    one_cell_from_morphism,
    scaled_two_cell,
    zero_two_cell,
)
from app.workspace import SECTIONS, AdjunctionEntry, DualPair, Origin, Workspace

logger = logging.getLogger(__name__)

_MISSING = object()
METADATA_KEYS = ("description",)


class _SpecParser:
    """Resolves the entries of one (merged) document into a workspace."""

    def __init__(self, document: Mapping[str, Any], corner: int, source: str) -> None:
        if not isinstance(document, Mapping):
            raise SpecSyntaxError("document must be a JSON object", source)
        self.source = source
        self.entries: Dict[str, Dict[str, Any]] = {}
        for key, value in document.items():
            if key in METADATA_KEYS:
                continue
            if key not in SECTIONS:
                raise SpecSyntaxError(f"unknown section '{key}'", f"{source}:{key}")
            if not isinstance(value, Mapping):
                raise SpecSyntaxError("section must be an object", f"{source}:{key}")
            self.entries[key] = dict(value)
        self.workspace = Workspace(corner=corner)
        self._building: set = set()

    def parse(self) -> Workspace:
        for section in SECTIONS:
            for name in self.entries.get(section, {}):
                self.resolve(section, name)
        logger.debug("parsed %s: %s", self.source, self.workspace.names())
        return self.workspace

    # Resolution

    def resolve(self, section: str, name: Any) -> Any:
        if not isinstance(name, str):
            raise SpecSyntaxError(f"reference must be a string, got {name!r}", f"{self.source}:{section}")
        objects = self.workspace.section(section)
        if name in objects:
            return objects[name]
        if name not in self.entries.get(section, {}):
            raise SpecReferenceError(name, section)
        key = (section, name)
        if key in self._building:
            raise SpecSyntaxError("circular reference", self._where(section, name))
        self._building.add(key)
        try:
            entry = self.entries[section][name]
            if not isinstance(entry, Mapping):
                raise SpecSyntaxError("entry must be an object", self._where(section, name))
            builder = _SECTION_BUILDERS[section]
            obj = builder(self, name, entry)
        finally:
            self._building.discard(key)
        objects[name] = obj
        return obj

    def _where(self, section: str, name: str, key: Optional[str] = None) -> str:
        path = f"{self.source}:{section}.{name}"
        return f"{path}.{key}" if key else path

    def field(self, section: str, name: str, entry: Mapping[str, Any], key: str, default: Any = _MISSING) -> Any:
        if key in entry:
            return entry[key]
        if default is _MISSING:
            raise SpecSyntaxError(f"missing field '{key}'", self._where(section, name))
        return default

    def origin(self, section: str, name: str, builder: str, **args: Any) -> None:
        self.workspace.origins.setdefault(section, {})[name] = Origin(builder, args)

    def ring(self, ref: Any) -> GradedRing:
        """Finite ring for a reference; lazily infinite rings are cut at the corner."""
        ring = self.resolve("rings", ref)
        if isinstance(ring, LazyGradedRing):
            return ring.truncation(self.workspace.corner)
        return ring

    def module(self, ref: Any) -> Bimodule:
        return self.resolve("modules", ref)

    def coring(self, ref: Any) -> Coring:
        return self.resolve("corings", ref)

    def cell(self, ref: Any) -> OneCell:
        return self.resolve("one_cells", ref)

    def scalar(self, value: Any, where: str) -> Fraction:
        try:
            return parse_scalar(value)
        except SpecSyntaxError as exc:
            raise SpecSyntaxError(str(exc), where) from exc

    def integer(self, value: Any, where: str) -> int:
        if isinstance(value, bool) or not isinstance(value, (int, str)):
            raise SpecSyntaxError(f"expected an integer, got {value!r}", where)
        try:
            return int(value)
        except ValueError as exc:
            raise SpecSyntaxError(f"expected an integer, got {value!r}", where) from exc

    def vector(self, coords: Any, names: Mapping[str, int], where: str) -> SparseVector:
        if not isinstance(coords, Mapping):
            raise SpecSyntaxError("coordinates must be an object", where)
        vector: SparseVector = {}
        for basis_name, value in coords.items():
            if basis_name not in names:
                raise SpecSyntaxError(f"unknown basis element '{basis_name}'", where)
            vec_axpy(vector, self.scalar(value, where), {names[basis_name]: ONE})
        return vector

    def labels(self, value: Any, where: str) -> List[str]:
        if isinstance(value, str):
            return [part for part in value.split(",") if part]
        if isinstance(value, Sequence) and all(isinstance(v, str) for v in value):
            return list(value)
        raise SpecSyntaxError("expected a label list", where)

    def matrix_map(self, source: Bimodule, target: Bimodule, rows: Any, where: str) -> LinearMap:
        if not isinstance(rows, Sequence) or isinstance(rows, str):
            raise SpecSyntaxError("matrix must be a list of rows", where)
        parsed = [[self.scalar(v, where) for v in row] for row in rows]
        if not parsed:
            return LinearMap.zero(source, target)
        return LinearMap.from_matrix(source, target, Matrix.from_rows(parsed, source.dim))


def _basis(parser: _SpecParser, raw: Any, where: str) -> List[BasisElement]:
    if not isinstance(raw, Sequence) or isinstance(raw, str):
        raise SpecSyntaxError("basis must be a list of [name, left, right]", where)
    elements = []
    for item in raw:
        if not isinstance(item, Sequence) or len(item) != 3 or not all(isinstance(v, str) for v in item):
            raise SpecSyntaxError(f"bad basis element {item!r}", where)
        elements.append(BasisElement(*item))
    return elements


def _unity(parser: _SpecParser, section: str, name: str, entry: Mapping[str, Any]) -> UnityChoice:
    value = parser.field(section, name, entry, "unity", "minimal")
    try:
        return UnityChoice(value)
    except ValueError as exc:
        raise SpecSyntaxError(f"unknown unity '{value}'", parser._where(section, name, "unity")) from exc


# Rings


def _build_ring(parser: _SpecParser, name: str, entry: Mapping[str, Any]) -> Union[GradedRing, LazyGradedRing]:
    section = "rings"
    builder = entry.get("builder", "explicit")
    get = lambda key, default=_MISSING: parser.field(section, name, entry, key, default)  # noqa: E731
    where = parser._where(section, name)
    if builder == "explicit":
        basis = _basis(parser, get("basis"), where)
        idempotents = get("idempotents")
        if not isinstance(idempotents, Mapping):
            raise SpecSyntaxError("idempotents must map labels to basis names", where)
        names = {b.name: k for k, b in enumerate(basis)}
        unknown = sorted(str(v) for v in idempotents.values() if v not in names)
        if unknown:
            raise SpecSyntaxError(f"idempotents name unknown basis elements {unknown}", where)
        products = {}
        for item in get("products", []):
            if not isinstance(item, Sequence) or len(item) != 3:
                raise SpecSyntaxError(f"bad product entry {item!r}", where)
            x, y, value = item
            if x not in names or y not in names:
                raise SpecSyntaxError(f"product of unknown basis elements {x}*{y}", where)
            vector = parser.vector(value, names, where)
            if vector and basis[names[x]].right != basis[names[y]].left:
                raise SpecSyntaxError(f"product {x}*{y} must be zero: its components do not meet", where)
            products[(x, y)] = {basis[k].name: c for k, c in vector.items()}
        ring: Union[GradedRing, LazyGradedRing] = GradedRing(
            name, parser.labels(get("labels"), where), basis, idempotents, products
        )
    elif builder == "matrix":
        labels = get("labels", None)
        ring = matrix_ring(parser.integer(get("n"), where), parser.labels(labels, where) if labels else None)
    elif builder == "rational":
        ring = rational_field()
    elif builder == "path":
        arrows = [tuple(arrow) for arrow in get("arrows", [])]
        ring = path_algebra(parser.labels(get("vertices"), where), arrows, name=name)
    elif builder == "direct_sum":
        ring = direct_sum([parser.ring(ref) for ref in get("summands")], name=name)
    elif builder == "rees":
        ring = rees_ring(parser.ring(get("base")), parser.integer(get("n"), where))
    elif builder == "corner":
        base = parser.ring(get("ring"))
        ring = corner(base, parser.labels(get("idempotent"), where))
    elif builder == "infinite_matrix":
        ring = infinite_matrix_ring()
    elif builder == "infinite_path":
        ring = infinite_path_algebra()
    elif builder == "truncation":
        lazy = parser.resolve(section, get("ring"))
        if not isinstance(lazy, LazyGradedRing):
            raise SpecSyntaxError("truncation needs a lazily infinite ring", where)
        ring = lazy.truncation(parser.integer(get("size", parser.workspace.corner), where))
    else:
        raise SpecSyntaxError(f"unknown ring builder '{builder}'", where)

    fault = entry.get("fault")
    if fault is not None:
        if isinstance(ring, LazyGradedRing) or not isinstance(fault, Mapping):
            raise SpecSyntaxError("ring fault needs a finite ring and an object", where)
        x, y = fault["product"]
        ring = with_scaled_product(ring, x, y, parser.scalar(fault.get("scale", 2), where), name=name)
    parser.origin(section, name, builder)
    return ring


# Morphisms


def _build_morphism(parser: _SpecParser, name: str, entry: Mapping[str, Any]) -> RingMorphism:
    section = "morphisms"
    builder = entry.get("builder", "explicit")
    where = parser._where(section, name)
    if builder == "identity":
        return identity_morphism(parser.ring(parser.field(section, name, entry, "ring")))
    if builder != "explicit":
        raise SpecSyntaxError(f"unknown morphism builder '{builder}'", where)
    source = parser.ring(parser.field(section, name, entry, "source"))
    target = parser.ring(parser.field(section, name, entry, "target"))
    images = parser.field(section, name, entry, "images")
    if not isinstance(images, Mapping):
        raise SpecSyntaxError("images must map source basis names to coordinates", where)
    for key, value in images.items():
        if key not in source.index:
            raise SpecSyntaxError(f"unknown source basis element '{key}'", where)
        parser.vector(value, target.index, where)
    return morphism_from_images(name, source, target, images)


# Modules


def _build_module(parser: _SpecParser, name: str, entry: Mapping[str, Any]) -> Bimodule:
    section = "modules"
    builder = entry.get("builder", "explicit")
    get = lambda key, default=_MISSING: parser.field(section, name, entry, key, default)  # noqa: E731
    where = parser._where(section, name)
    if builder == "explicit":
        left = parser.ring(get("left"))
        right = parser.ring(get("right"))
        basis = _basis(parser, get("basis"), where)
        names = {b.name: k for k, b in enumerate(basis)}

        def table(key: str, first_index: Mapping[str, int], second_index: Mapping[str, int]):
            parsed = {}
            for item in get(key, []):
                if not isinstance(item, Sequence) or len(item) != 3:
                    raise SpecSyntaxError(f"bad action entry {item!r}", f"{where}.{key}")
                x, y, value = item
                if x not in first_index or y not in second_index:
                    raise SpecSyntaxError(f"unknown basis element in {item!r}", f"{where}.{key}")
                parsed[(first_index[x], second_index[y])] = parser.vector(value, names, f"{where}.{key}")
            return parsed

        return Bimodule(
            name,
            left,
            right,
            basis,
            left_action=table("left_action", left.index, names),
            right_action=table("right_action", names, right.index),
        )
    if builder == "regular":
        return regular_bimodule(parser.ring(get("ring")))
    if builder == "right_regular":
        return right_regular(parser.ring(get("ring")))
    if builder == "row":
        labels = get("labels", None)
        return row_module(parser.ring(get("ring")), parser.labels(labels, where) if labels else None)
    if builder == "left_corner":
        ring = parser.ring(get("ring"))
        return left_corner(ring, parser.labels(get("idempotent"), where), over=get("over", "corner"))
    if builder == "simple":
        return simple_right_module(parser.ring(get("ring")), get("label"))
    if builder == "zero":
        return zero_module(parser.ring(get("left")), parser.ring(get("right")))
    if builder == "direct_sum":
        return direct_sum_module(*[parser.module(ref) for ref in get("summands")], name=name)
    if builder == "restrict":
        morphism = parser.resolve("morphisms", get("morphism"))
        return restrict_scalars(parser.module(get("module")), morphism, get("side"))
    if builder == "forget_left":
        return forget_left(parser.module(get("module")), name=name)
    if builder == "dual":
        return right_dual(parser.module(get("module")))
    if builder == "tensor":
        return tensor_over(parser.module(get("left")), parser.module(get("right")))
    raise SpecSyntaxError(f"unknown module builder '{builder}'", where)


# Corings


def _explicit_coring(parser: _SpecParser, name: str, entry: Mapping[str, Any]) -> Tuple[Any, ...]:
    section = "corings"
    get = lambda key, default=_MISSING: parser.field(section, name, entry, key, default)  # noqa: E731
    where = parser._where(section, name)
    ring = parser.ring(get("ring"))
    carrier = parser.module(get("carrier"))
    square = tensor_over(carrier, carrier)
    comult_spec = get("comult")
    counit_spec = get("counit")
    if not isinstance(comult_spec, Mapping) or not isinstance(counit_spec, Mapping):
        raise SpecSyntaxError("comult and counit must be objects keyed by carrier basis names", where)
    comult_columns: List[SparseVector] = [{} for _ in range(carrier.dim)]
    for x, terms in comult_spec.items():
        if x not in carrier.index:
            raise SpecSyntaxError(f"unknown carrier basis element '{x}'", f"{where}.comult")
        column = comult_columns[carrier.index[x]]
        for term in terms:
            if not isinstance(term, Sequence) or len(term) != 3:
                raise SpecSyntaxError(f"bad comultiplication term {term!r}", f"{where}.comult")
            left, right, coeff = term
            if left not in carrier.index or right not in carrier.index:
                raise SpecSyntaxError(f"unknown tensor leg in {term!r}", f"{where}.comult")
            value = square.pure_basis(carrier.index[left], carrier.index[right])
            vec_axpy(column, parser.scalar(coeff, where), value)
    counit_columns: List[SparseVector] = [{} for _ in range(carrier.dim)]
    for x, coords in counit_spec.items():
        if x not in carrier.index:
            raise SpecSyntaxError(f"unknown carrier basis element '{x}'", f"{where}.counit")
        counit_columns[carrier.index[x]] = parser.vector(coords, ring.index, f"{where}.counit")
    comult = LinearMap(carrier, square, comult_columns, name="Delta")
    counit = LinearMap(carrier, regular_bimodule(ring), counit_columns, name="eps")
    return ring, carrier, comult, counit


def _swap_legs(coring: Coring, name: str) -> Coring:
    """Same carrier and counit, Δ followed by x ⊗ y ↦ y ⊗ x on canonical pure tensors."""
    square = coring.square
    columns = []
    for column in coring.comult.columns:
        swapped: SparseVector = {}
        for k, c in column.items():
            i, j = square.factors[k]
            vec_axpy(swapped, c, square.pure_basis(j, i))
        columns.append(swapped)
    comult = LinearMap(coring.carrier, square, columns, name="Delta~")
    return Coring(name, coring.ring, coring.carrier, comult, coring.counit)


def _build_coring(parser: _SpecParser, name: str, entry: Mapping[str, Any]) -> Coring:
    section = "corings"
    builder = entry.get("builder", "explicit")
    get = lambda key, default=_MISSING: parser.field(section, name, entry, key, default)  # noqa: E731
    where = parser._where(section, name)
    if builder == "explicit":
        ring, carrier, comult, counit = _explicit_coring(parser, name, entry)
        coring = Coring(name, ring, carrier, comult, counit)
        parser.origin(section, name, builder)
    elif builder == "comonad":
        ring, carrier, comult, counit = _explicit_coring(parser, name, entry)
        coring = comonad_to_coring(carrier, comult, counit, name=name)
        parser.origin(section, name, builder)
    elif builder == "trivial":
        ring = parser.ring(get("ring"))
        coring = trivial_coring(ring)
        parser.origin(section, name, builder, ring=ring)
    elif builder == "sweedler":
        morphism = parser.resolve("morphisms", get("morphism"))
        coring = sweedler_coring(morphism, _unity(parser, section, name, entry))
        parser.origin(section, name, builder, morphism=morphism)
    elif builder == "split":
        ring = parser.ring(get("ring"))
        module_ref = get("module", None)
        module = parser.module(module_ref) if module_ref else regular_bimodule(ring)
        coring = split_coring(ring, module, _unity(parser, section, name, entry))
        parser.origin(section, name, builder, ring=ring, module=module)
    elif builder == "comatrix":
        sigma = parser.module(get("sigma"))
        unity = _unity(parser, section, name, entry)
        coring = comatrix_coring(sigma) if unity is UnityChoice.MINIMAL else comatrix_coring(sigma, unity=unity)
        parser.origin(section, name, builder, sigma=sigma)
    elif builder == "base_extension":
        sigma = parser.module(get("sigma"))
        D = parser.coring(get("coring"))
        coring = base_extension(sigma, D, _unity(parser, section, name, entry))
        parser.origin(section, name, builder, sigma=sigma, coring=D)
    elif builder == "rees":
        ring = parser.ring(get("ring"))
        labels = parser.labels(get("idempotent"), where)
        coring, _ = rees_coring(ring, labels)
        parser.origin(section, name, builder, ring=ring, idempotent=labels)
    else:
        raise SpecSyntaxError(f"unknown coring builder '{builder}'", where)

    fault = entry.get("fault")
    if fault is not None:
        if fault != "swap_legs":
            raise SpecSyntaxError(f"unknown coring fault '{fault}'", where)
        coring = _swap_legs(coring, name)
        parser.origin(section, name, "fault")
    return coring


def _build_coring_morphism(parser: _SpecParser, name: str, entry: Mapping[str, Any]) -> CoringMorphism:
    section = "coring_morphisms"
    builder = entry.get("builder", "explicit")
    get = lambda key, default=_MISSING: parser.field(section, name, entry, key, default)  # noqa: E731
    where = parser._where(section, name)
    if builder == "counit":
        morphism = counit_morphism(parser.coring(get("coring")))
    elif builder == "identity":
        morphism = identity_coring_morphism(parser.coring(get("coring")))
    elif builder == "base_extension_iso":
        morphism = base_extension_comatrix_iso(parser.module(get("sigma")))
    elif builder == "compose":
        outer, inner = (parser.resolve(section, ref) for ref in get("morphisms"))
        morphism = compose_coring_morphisms(outer, inner)
    elif builder == "explicit":
        source = parser.coring(get("source"))
        target = parser.coring(get("target"))
        mapping = parser.matrix_map(source.carrier, target.carrier, get("matrix"), where)
        morphism = CoringMorphism(name, source, target, mapping)
    else:
        raise SpecSyntaxError(f"unknown coring morphism builder '{builder}'", where)
    parser.origin(section, name, builder, iso=bool(get("iso", False)))
    return morphism


def _build_comodule(parser: _SpecParser, name: str, entry: Mapping[str, Any]) -> Comodule:
    section = "comodules"
    builder = entry.get("builder", "regular")
    get = lambda key, default=_MISSING: parser.field(section, name, entry, key, default)  # noqa: E731
    where = parser._where(section, name)
    if builder == "regular":
        return regular_comodule(parser.coring(get("coring")))
    if builder == "cofree":
        return cofree_comodule(parser.module(get("module")), parser.coring(get("coring")))
    if builder == "comatrix":
        return comatrix_comodule(parser.module(get("sigma")))
    if builder == "corestrict":
        morphism = parser.resolve("coring_morphisms", get("morphism"))
        return corestrict(morphism, parser.resolve(section, get("comodule")))
    if builder == "induced":
        return induce_comodule(parser.cell(get("cell")), parser.resolve(section, get("comodule")))
    raise SpecSyntaxError(f"unknown comodule builder '{builder}'", where)


def _build_one_cell(parser: _SpecParser, name: str, entry: Mapping[str, Any]) -> OneCell:
    section = "one_cells"
    builder = entry.get("builder", "explicit")
    get = lambda key, default=_MISSING: parser.field(section, name, entry, key, default)  # noqa: E731
    where = parser._where(section, name)
    if builder == "identity":
        cell = identity_one_cell(parser.coring(get("coring")))
    elif builder == "morphism":
        cell = one_cell_from_morphism(parser.resolve("coring_morphisms", get("morphism")))
    elif builder == "comatrix":
        cell = comatrix_one_cell(parser.module(get("sigma")))
    elif builder == "compose":
        first, second = (parser.cell(ref) for ref in get("cells"))
        cell = compose_one_cells(first, second)
    elif builder == "explicit":
        source = parser.coring(get("source"))
        target = parser.coring(get("target"))
        module = parser.module(get("module"))
        domain = tensor_over(target.carrier, module)
        codomain = tensor_over(module, source.carrier)
        entwining = parser.matrix_map(domain, codomain, get("matrix"), where)
        cell = OneCell(name, source, target, module, entwining)
    else:
        raise SpecSyntaxError(f"unknown one-cell builder '{builder}'", where)
    scale = entry.get("scale")
    if scale is not None:
        factor = parser.scalar(scale, f"{where}.scale")
        return replace(cell, name=name, entwining=cell.entwining.scale(factor))
    return replace(cell, name=name)


def _build_two_cell(parser: _SpecParser, name: str, entry: Mapping[str, Any]) -> TwoCell:
    section = "two_cells"
    builder = entry.get("builder", "explicit")
    get = lambda key, default=_MISSING: parser.field(section, name, entry, key, default)  # noqa: E731
    where = parser._where(section, name)
    if builder == "identity":
        cell = identity_two_cell(parser.cell(get("cell")))
    elif builder == "zero":
        cell = zero_two_cell(parser.cell(get("source")), parser.cell(get("target")))
    elif builder == "scaled":
        cell = scaled_two_cell(parser.resolve(section, get("cell")), parser.scalar(get("factor"), where))
    elif builder == "vertical":
        outer, inner = (parser.resolve(section, ref) for ref in get("cells"))
        cell = compose_two_cells_vertical(outer, inner)
    elif builder == "horizontal":
        upper, lower = (parser.resolve(section, ref) for ref in get("cells"))
        cell = compose_two_cells_horizontal(upper, lower)
    elif builder == "explicit":
        source = parser.cell(get("source"))
        target = parser.cell(get("target"))
        mapping = parser.matrix_map(source.domain, target.module, get("matrix"), where)
        cell = TwoCell(name, source, target, mapping)
    else:
        raise SpecSyntaxError(f"unknown two-cell builder '{builder}'", where)
    return replace(cell, name=name)


def _build_adjunction(parser: _SpecParser, name: str, entry: Mapping[str, Any]) -> AdjunctionEntry:
    section = "adjunctions"
    where = parser._where(section, name)
    sigma = parser.module(parser.field(section, name, entry, "sigma"))
    coring_ref = entry.get("coring")
    coring = parser.coring(coring_ref) if coring_ref else None
    dual_bases = None
    fault = entry.get("fault")
    if fault is not None:
        if not isinstance(fault, Mapping) or "scale_functional" not in fault:
            raise SpecSyntaxError("adjunction fault must be {'scale_functional': factor}", where)
        factor = parser.scalar(fault["scale_functional"], f"{where}.fault")
        position = parser.integer(fault.get("position", 0), where)
        dual_bases = {}
        for label in sigma.left_ring.labels:
            labels = unity_labels(sigma.left_ring, [label])
            basis = require_dual_basis(sigma, labels)
            dual_bases[labels] = basis.scaled(position, factor) if len(basis) > position else basis
    return AdjunctionEntry(sigma, coring, dual_bases)


def _build_dual_pair(parser: _SpecParser, name: str, entry: Mapping[str, Any]) -> DualPair:
    section = "dual_pairs"
    return DualPair(
        parser.module(parser.field(section, name, entry, "w")),
        parser.module(parser.field(section, name, entry, "sigma")),
    )


_SECTION_BUILDERS: Dict[str, Callable[[_SpecParser, str, Mapping[str, Any]], Any]] = {
    "rings": _build_ring,
    "morphisms": _build_morphism,
    "modules": _build_module,
    "corings": _build_coring,
    "coring_morphisms": _build_coring_morphism,
    "comodules": _build_comodule,
    "one_cells": _build_one_cell,
    "two_cells": _build_two_cell,
    "adjunctions": _build_adjunction,
    "dual_pairs": _build_dual_pair,
}


def parse_spec(document: Mapping[str, Any], corner: Optional[int] = None, source: str = "<document>") -> Workspace:
    """Resolve a spec document into a workspace."""
    return _SpecParser(document, corner or Config.CORNER_SIZE, source).parse()


def merge_documents(documents: Iterable[Tuple[str, Mapping[str, Any]]]) -> Dict[str, Any]:
    """Union of several documents; a name declared twice in one section is an error."""
    merged: Dict[str, Dict[str, Any]] = {}
    for source, document in documents:
        if not isinstance(document, Mapping):
            raise SpecSyntaxError("document must be a JSON object", source)
        for section, entries in document.items():
            if section in METADATA_KEYS:
                continue
            if not isinstance(entries, Mapping):
                raise SpecSyntaxError("section must be an object", f"{source}:{section}")
            target = merged.setdefault(section, {})
            for name, entry in entries.items():
                if name in target:
                    raise SpecSyntaxError(f"'{name}' is declared twice", f"{source}:{section}.{name}")
                target[name] = entry
    return merged


async def read_document(path: Union[str, Path]) -> Dict[str, Any]:
    """Read one JSON spec document; an empty file is an empty document."""
    path = Path(path)
    try:
        async with aiofiles.open(path, "r", encoding="utf-8") as handle:
            text = await handle.read()
    except FileNotFoundError as exc:
        raise SpecSyntaxError("file not found", str(path)) from exc
    if not text.strip():
        return {}
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecSyntaxError(exc.msg, f"{path}:{exc.lineno}:{exc.colno}") from exc


async def load_workspace(paths: Sequence[Union[str, Path]], corner: Optional[int] = None) -> Workspace:
    """Read every document concurrently and resolve them as one."""
    documents = await asyncio.gather(*(read_document(path) for path in paths))
    merged = merge_documents(zip((str(p) for p in paths), documents))
    source = str(paths[0]) if len(paths) == 1 else "<merged>"
    return await asyncio.to_thread(parse_spec, merged, corner, source)


__all__ = [
    "parse_spec",
    "merge_documents",
    "read_document",
    "load_workspace",
]
