"""Tests for 1-cells, 2-cells and their compositions."""

from __future__ import annotations

from dataclasses import replace
from fractions import Fraction

import pytest

from app.errors import CellMismatchError
from app.core.local_ring import matrix_ring, morphism_from_images, rational_field
from app.core.unital_module import LinearMap, regular_bimodule, row_module
from app.core.tensor_engine import identity_map, right_unitor, tensor_with_identity
from app.core.coring_core import check_comodule, corestrict, regular_comodule
from app.core.coring_constructors import comatrix_coring, counit_morphism, sweedler_coring, trivial_coring
from app.core.bicategory import (
    TwoCell,
    check_composition_associativity,
    check_composition_units,
    check_induction_functoriality,
    check_one_cell,
    check_one_cell_iso,
    check_two_cell,
    collapse_two_cell,
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


@pytest.fixture
def m2():
    return matrix_ring(2)


@pytest.fixture
def row(m2):
    return row_module(m2)


@pytest.fixture
def unit_sweedler(m2):
    unit = morphism_from_images("unit", rational_field(), m2, {"1": {"E11": 1, "E22": 1}})
    return sweedler_coring(unit)


def sandwich(coring, x) -> LinearMap:
    """a ⊗ a' ↦ a x a' on the carrier of a Sweedler coring."""
    ring = coring.ring
    carrier = coring.carrier
    columns = [ring.multiply_vectors(ring.multiply_vectors({i: 1}, x), {j: 1}) for i, j in carrier.factors]
    return LinearMap(carrier, regular_bimodule(ring), columns, name="sandwich")


def test_identity_cells_pass(m2, row, unit_sweedler) -> None:
    for coring in (trivial_coring(m2), unit_sweedler, comatrix_coring(row)):
        report = check_one_cell(identity_one_cell(coring))
        assert report.passed, (coring.name, report.witnesses())


def test_comatrix_one_cell(row) -> None:
    cell = comatrix_one_cell(row)
    assert cell.source is comatrix_coring(row)
    assert cell.target is trivial_coring(rational_field())
    assert cell.module is row
    assert check_one_cell(cell).passed
    assert check_comodule(comatrix_comodule(row)).passed


def test_morphism_gives_one_cell(unit_sweedler) -> None:
    cell = one_cell_from_morphism(counit_morphism(unit_sweedler))
    assert cell.source is trivial_coring(unit_sweedler.ring)
    assert cell.target is unit_sweedler
    report = check_one_cell(cell)
    assert report.passed, report.witnesses()


@pytest.mark.parametrize(("factor", "passes"), [(1, True), (2, False), (0, False)])
def test_scaled_entwining(factor: int, passes: bool) -> None:
    base = identity_one_cell(trivial_coring(rational_field()))
    cell = replace(base, entwining=base.entwining.scale(factor))
    report = check_one_cell(cell)
    assert report.passed is passes
    if not passes:
        assert any(w.startswith("counit@") for w in report.witnesses())


def test_compose_requires_matching_corings(row) -> None:
    cell = comatrix_one_cell(row)
    with pytest.raises(CellMismatchError):
        compose_one_cells(cell, cell)


def test_composition_units_and_associativity(row) -> None:
    cell = comatrix_one_cell(row)
    assert check_composition_units(cell).passed
    first = identity_one_cell(cell.target)
    last = identity_one_cell(cell.source)
    composite = compose_one_cells(first, compose_one_cells(cell, last))
    assert check_one_cell(composite).passed
    report = check_composition_associativity(first, cell, last)
    assert report.passed, report.witnesses()


def test_one_cell_iso_rejects_non_bijection(row) -> None:
    cell = comatrix_one_cell(row)
    assert check_one_cell_iso(identity_map(row), cell, cell).passed
    report = check_one_cell_iso(LinearMap.zero(row, row), cell, cell)
    assert "bijective" in report.witnesses()


def test_induced_comodule(row) -> None:
    cell = comatrix_one_cell(row)
    X = regular_comodule(cell.target)
    induced = induce_comodule(cell, X)
    assert induced.coring is cell.source
    assert check_comodule(induced).passed
    assert check_induction_functoriality(cell, identity_one_cell(cell.source), X).passed
    with pytest.raises(CellMismatchError):
        induce_comodule(cell, regular_comodule(cell.source))


def test_induction_along_a_morphism_is_corestriction(unit_sweedler) -> None:
    phi = counit_morphism(unit_sweedler)
    X = regular_comodule(unit_sweedler)
    induced = induce_comodule(one_cell_from_morphism(phi), X)
    corestricted = corestrict(phi, X)
    assert induced.coring is corestricted.coring
    unitor = right_unitor(X.carrier).forward
    lhs = tensor_with_identity(unitor, phi.target.carrier) @ induced.coaction
    assert lhs.equals(corestricted.coaction @ unitor)


def test_identity_and_zero_two_cells(row, unit_sweedler) -> None:
    for cell in (comatrix_one_cell(row), identity_one_cell(unit_sweedler)):
        assert check_two_cell(identity_two_cell(cell)).passed
        assert check_two_cell(zero_two_cell(cell, cell)).passed
        assert check_two_cell(scaled_two_cell(identity_two_cell(cell), Fraction(1, 3))).passed


def test_sandwich_two_cell_needs_central_element(m2, unit_sweedler) -> None:
    cell = identity_one_cell(unit_sweedler)
    central = collapse_two_cell(cell, sandwich(unit_sweedler, m2.total_unit().vector))
    assert check_two_cell(central).passed
    skewed = collapse_two_cell(cell, sandwich(unit_sweedler, m2.basis_element("E12").vector))
    witnesses = check_two_cell(skewed).witnesses()
    assert any(w.startswith("law@") for w in witnesses)


def test_two_cell_rejects_non_parallel_cells(row) -> None:
    cell = comatrix_one_cell(row)
    other = identity_one_cell(cell.source)
    with pytest.raises(CellMismatchError):
        TwoCell("skew", cell, other, LinearMap.zero(cell.domain, other.module))


def test_vertical_composition_of_identities(row, unit_sweedler) -> None:
    for cell in (comatrix_one_cell(row), identity_one_cell(unit_sweedler)):
        ident = identity_two_cell(cell)
        stacked = compose_two_cells_vertical(ident, ident)
        assert stacked.map.equals(ident.map)
        assert check_two_cell(stacked).passed


def test_vertical_composition_checks_boundaries(row) -> None:
    cell = comatrix_one_cell(row)
    other = identity_one_cell(trivial_coring(rational_field()))
    with pytest.raises(CellMismatchError):
        compose_two_cells_vertical(identity_two_cell(cell), identity_two_cell(other))


def test_horizontal_composition_of_identities(row) -> None:
    upper = comatrix_one_cell(row)
    lower = identity_one_cell(upper.source)
    placed = compose_two_cells_horizontal(identity_two_cell(upper), identity_two_cell(lower))
    assert placed.map.equals(identity_two_cell(compose_one_cells(upper, lower)).map)
    assert check_two_cell(placed).passed
    with pytest.raises(CellMismatchError):
        compose_two_cells_horizontal(identity_two_cell(lower), identity_two_cell(upper))
