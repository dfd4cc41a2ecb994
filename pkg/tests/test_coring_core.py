"""Tests for coring, coring morphism and comodule law checkers."""

from __future__ import annotations

from fractions import Fraction

import pytest

from app.errors import DimensionMismatchError, RingMismatchError
from app.core.local_ring import direct_sum, identity_morphism, matrix_ring, morphism_from_images, rational_field
from app.core.unital_module import LinearMap, row_module
from app.core.tensor_engine import identity_map
from app.core.coring_core import (
    Comodule,
    Coring,
    CoringMorphism,
    check_cofree_adjunction,
    check_comodule,
    check_comodule_morphism,
    check_coring,
    check_coring_isomorphism,
    check_coring_morphism,
    cofree_comodule,
    compose_coring_morphisms,
    corestrict,
    identity_coring_morphism,
    regular_comodule,
)
from app.core.coring_constructors import comatrix_coring, counit_morphism, sweedler_coring, trivial_coring
from app.core.bicategory import comatrix_comodule
from models.report import CheckReport


@pytest.fixture
def m2():
    return matrix_ring(2)


@pytest.fixture
def sw_diag(m2):
    q = rational_field()
    diag = morphism_from_images("diag", direct_sum([q, q]), m2, {"0:1": {"E11": 1}, "1:1": {"E22": 1}})
    return sweedler_coring(diag)


def swap_legs(coring: Coring) -> Coring:
    """Same data with the two legs of every Δ term exchanged."""
    square = coring.square
    columns = []
    for column in coring.comult.columns:
        swapped = {}
        for k, c in column.items():
            i, j = square.factors[k]
            for t, d in square.pure_basis(j, i).items():
                swapped[t] = swapped.get(t, 0) + c * d
        columns.append({t: d for t, d in swapped.items() if d})
    return Coring(f"{coring.name}~", coring.ring, coring.carrier, LinearMap(coring.carrier, square, columns), coring.counit)


def test_coring_rejects_wrong_shapes(m2) -> None:
    trivial = trivial_coring(m2)
    with pytest.raises(DimensionMismatchError):
        Coring("bad", m2, trivial.carrier, trivial.counit, trivial.counit)
    with pytest.raises(RingMismatchError):
        Coring("bad", rational_field(), trivial.carrier, trivial.comult, trivial.counit)


def test_trivial_and_sweedler_pass(m2, sw_diag) -> None:
    for coring in (trivial_coring(m2), sw_diag, comatrix_coring(row_module(m2))):
        report = check_coring(coring)
        assert report.passed, (coring.name, report.witnesses())
        assert report.checked > 0


def test_swapped_legs_fail_counit(sw_diag) -> None:
    report = check_coring(swap_legs(sw_diag))
    assert not report.passed
    assert any(w.startswith("left-counit@") for w in report.witnesses())


def test_coring_morphisms(m2, sw_diag) -> None:
    assert check_coring_morphism(identity_coring_morphism(sw_diag)).passed
    assert check_coring_morphism(counit_morphism(sw_diag)).passed
    composite = compose_coring_morphisms(counit_morphism(sw_diag), identity_coring_morphism(sw_diag))
    assert composite.name == f"eps[{sw_diag.name}].id_{sw_diag.name}"
    assert check_coring_morphism(composite).passed

    doubled = CoringMorphism("doubled", sw_diag, sw_diag, identity_map(sw_diag.carrier).scale(2))
    witnesses = check_coring_morphism(doubled).witnesses()
    assert any(w.startswith("counit@") for w in witnesses)
    assert any(w.startswith("comult@") for w in witnesses)


def test_compose_rejects_unrelated_morphisms(m2, sw_diag) -> None:
    with pytest.raises(DimensionMismatchError):
        compose_coring_morphisms(identity_coring_morphism(sw_diag), counit_morphism(sw_diag))


def test_coring_isomorphism(m2, sw_diag) -> None:
    assert check_coring_isomorphism(identity_coring_morphism(sw_diag)).passed
    report = check_coring_isomorphism(counit_morphism(sw_diag))
    assert report.check == "coring_morphism:iso"
    assert report.witnesses() == ["bijective"]


def test_regular_and_cofree_comodules(m2, sw_diag) -> None:
    assert check_comodule(regular_comodule(sw_diag)).passed
    cofree = cofree_comodule(row_module(m2), sw_diag)
    assert check_comodule(cofree).passed
    assert check_comodule(comatrix_comodule(row_module(m2))).passed


def test_zero_coaction_fails_counit(m2) -> None:
    trivial = trivial_coring(m2)
    regular = regular_comodule(trivial)
    zero = Comodule("zero", trivial, regular.carrier, LinearMap.zero(regular.carrier, regular.codomain))
    witnesses = check_comodule(zero).witnesses()
    assert witnesses
    assert all(w.startswith("counit@") for w in witnesses)


def test_corestriction(m2, sw_diag) -> None:
    regular = regular_comodule(sw_diag)
    same = corestrict(identity_coring_morphism(sw_diag), regular)
    assert same.coaction.equals(regular.coaction)
    collapsed = corestrict(counit_morphism(sw_diag), regular)
    assert collapsed.coring is trivial_coring(m2)
    assert check_comodule(collapsed).passed
    with pytest.raises(RingMismatchError):
        corestrict(counit_morphism(trivial_coring(m2)), regular)


def test_comodule_morphisms(m2, sw_diag) -> None:
    regular = regular_comodule(sw_diag)
    assert check_comodule_morphism(identity_map(regular.carrier), regular, regular).passed
    cofree = cofree_comodule(regular.carrier, sw_diag)
    assert check_comodule_morphism(regular.coaction, regular, cofree).passed
    zero = LinearMap.zero(regular.carrier, regular.carrier)
    assert check_comodule_morphism(zero, regular, regular).passed


def test_cofree_adjunction(m2, sw_diag) -> None:
    for comodule in (regular_comodule(sw_diag), cofree_comodule(row_module(m2), sw_diag)):
        report = check_cofree_adjunction(comodule)
        assert isinstance(report, CheckReport)
        assert report.passed, report.witnesses()


def test_identity_sweedler_comodule() -> None:
    q = rational_field()
    coring = sweedler_coring(identity_morphism(q))
    assert check_comodule(regular_comodule(coring)).passed
    assert check_coring(coring).passed
    assert coring.counit.columns == ({0: Fraction(1)},)
