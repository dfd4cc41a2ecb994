"""Tests for the tensor/dual adjunction and the maps built from it."""

from __future__ import annotations

from fractions import Fraction

import pytest

from app.errors import RingMismatchError
from app.core.local_ring import identity_morphism, matrix_ring, rational_field
from app.core.unital_module import dual_basis, left_corner, regular_bimodule, right_dual, row_module, zero_module
from app.core.tensor_engine import tensor_over
from app.core.coring_constructors import base_extension, sweedler_coring
from app.core.adjunction import (
    check_dual_tensor_iso,
    check_naturality,
    check_transport_consistency,
    check_triangle_identities,
    check_unit_independence,
    counit_zeta,
    dual_tensor_iso,
    probe_modules,
    transported_counit,
    unit_eta,
)


@pytest.fixture
def m2():
    return matrix_ring(2)


def sigmas(m2):
    return {
        "row": row_module(m2),
        "corner": left_corner(m2, ["1"]),
        "regular": regular_bimodule(m2),
    }


@pytest.mark.parametrize("which", ["row", "corner", "regular"])
def test_triangle_identities(m2, which: str) -> None:
    report = check_triangle_identities(sigmas(m2)[which])
    assert report.passed, report.witnesses()
    assert report.checked > 0


def test_scaled_dual_basis_breaks_the_triangle(m2) -> None:
    row = row_module(m2)
    broken = {("*",): dual_basis(row, ["*"]).scaled(0, Fraction(2))}
    witnesses = check_triangle_identities(row, dual_bases=broken).witnesses()
    assert any(w.startswith("tensor[") for w in witnesses)


@pytest.mark.parametrize("which", ["row", "corner", "regular"])
def test_unit_does_not_depend_on_unity(m2, which: str) -> None:
    assert check_unit_independence(sigmas(m2)[which]).passed


def test_naturality(m2) -> None:
    for sigma in (row_module(m2), regular_bimodule(m2)):
        report = check_naturality(sigma)
        assert report.passed, (sigma.name, report.witnesses())


def test_probe_modules(m2) -> None:
    modules = probe_modules(m2)
    assert len(modules) == 3
    assert all(module.right_ring is m2 for module in modules)


def test_unit_on_zero_module(m2) -> None:
    q = rational_field()
    eta = unit_eta(row_module(m2), zero_module(q, q))
    assert eta.source.dim == 0
    assert eta.is_zero()


def test_unit_and_counit_check_rings(m2) -> None:
    row = row_module(m2)
    with pytest.raises(RingMismatchError):
        unit_eta(row, row)
    with pytest.raises(RingMismatchError):
        counit_zeta(row, regular_bimodule(rational_field()))


def test_counit_on_regular(m2) -> None:
    row = row_module(m2)
    reg = regular_bimodule(m2)
    zeta = counit_zeta(row, reg)
    assert zeta.target is reg
    assert zeta.source is tensor_over(tensor_over(reg, right_dual(row)), row)
    assert zeta.rank() == reg.dim


@pytest.mark.parametrize("pair", ["row-regular", "rationals-row"])
def test_dual_of_tensor(m2, pair: str) -> None:
    W, sigma = {
        "row-regular": (row_module(m2), regular_bimodule(m2)),
        "rationals-row": (regular_bimodule(rational_field()), row_module(m2)),
    }[pair]
    report = check_dual_tensor_iso(W, sigma)
    assert report.check == "dual_pair:iso"
    assert report.passed, report.witnesses()
    assert dual_tensor_iso(W, sigma).is_bijective()


def test_dual_of_tensor_rejects_mismatch(m2) -> None:
    with pytest.raises(RingMismatchError):
        dual_tensor_iso(regular_bimodule(m2), row_module(m2))


def test_base_extension_matches_transport(m2) -> None:
    row = row_module(m2)
    inner = sweedler_coring(identity_morphism(rational_field()))
    report = check_transport_consistency(row, inner)
    assert report.passed, report.witnesses()
    assert transported_counit(row, inner).equals(base_extension(row, inner).counit)
