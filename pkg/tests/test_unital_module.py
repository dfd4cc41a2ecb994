"""Tests for unital bimodules, hom spaces, right duals and dual bases."""

from __future__ import annotations

from fractions import Fraction

import pytest

from app.errors import RingMismatchError
from app.core.local_ring import BasisElement, direct_sum, matrix_ring, morphism_from_images, path_algebra, rational_field
from app.core.unital_module import (
    Bimodule,
    LinearMap,
    direct_sum_module,
    dual_basis,
    forget_left,
    hom_space,
    is_fg_projective,
    left_corner,
    regular_bimodule,
    restrict_scalars,
    right_dual,
    row_module,
    simple_right_module,
    verify_module,
    zero_module,
)

ONE = Fraction(1)


@pytest.fixture
def m2():
    return matrix_ring(2)


@pytest.fixture
def p12():
    return path_algebra(["1", "2"], [("a", "1", "2")], name="P")


def left_multiplication(module: Bimodule, name: str) -> LinearMap:
    ring = module.left_ring
    return LinearMap.from_function(module, module, lambda i: module.left_act(ring.index[name], i), name=f"L{name}")


def test_builders_pass_verification(m2, p12) -> None:
    q = rational_field()
    modules = [
        regular_bimodule(m2),
        row_module(m2),
        row_module(m2, ["2"]),
        left_corner(m2, ["1"]),
        simple_right_module(p12, "1"),
        simple_right_module(p12, "2"),
        zero_module(q, m2),
        direct_sum_module(row_module(m2), row_module(m2)),
    ]
    for module in modules:
        report = verify_module(module)
        assert report.passed, (module.name, report.witnesses())


def test_row_module_shape(m2) -> None:
    row = row_module(m2)
    assert [b.name for b in row.basis] == ["E11", "E12"]
    assert row.left_ring is rational_field()
    assert forget_left(row) is row
    assert row.right_act(row.index["E12"], m2.index["E21"]) == {row.index["E11"]: ONE}


def test_verify_module_reports_wrong_constant(m2) -> None:
    q = rational_field()
    basis = [BasisElement("E11", "*", "1"), BasisElement("E12", "*", "2")]
    right_action = {
        (0, m2.index["E12"]): {1: Fraction(2)},
        (1, m2.index["E21"]): {0: ONE},
    }
    bad = Bimodule("bad", q, m2, basis, right_action=right_action)
    report = verify_module(bad)
    assert "(E11,E12,E21)" in report.witnesses()


def test_direct_sum_module_tags_summands(m2) -> None:
    row = row_module(m2)
    both = direct_sum_module(row, row)
    assert both.dim == 4
    assert [b.name for b in both.basis][:2] == ["0:E11", "0:E12"]
    with pytest.raises(RingMismatchError):
        direct_sum_module(row, regular_bimodule(m2))


def test_restrict_scalars_along_diagonal(m2) -> None:
    q = rational_field()
    qq = direct_sum([q, q])
    diag = morphism_from_images("diag", qq, m2, {"0:1": {"E11": 1}, "1:1": {"E22": 1}})
    for side in ("left", "right"):
        restricted = restrict_scalars(regular_bimodule(m2), diag, side)
        assert restricted.name == "M2|diag"
        assert verify_module(restricted).passed
    with pytest.raises(RingMismatchError):
        restrict_scalars(row_module(m2), diag, "left")


@pytest.mark.parametrize(
    ("source", "target", "expected"),
    [
        ("regular", "regular", 4),
        ("row1", "row2", 1),
        ("row1", "row1", 1),
        ("zero", "row1", 0),
    ],
)
def test_hom_space_dimensions(m2, source: str, target: str, expected: int) -> None:
    modules = {
        "regular": regular_bimodule(m2),
        "row1": row_module(m2, ["1"]),
        "row2": row_module(m2, ["2"]),
        "zero": zero_module(rational_field(), m2),
    }
    maps = hom_space(modules[source], modules[target])
    assert len(maps) == expected
    for f in maps:
        assert f.linearity_failures("right") == []


def test_hom_space_rejects_mixed_rings(m2) -> None:
    with pytest.raises(RingMismatchError):
        hom_space(row_module(m2), row_module(matrix_ring(3)))


def test_linear_map_algebra(m2) -> None:
    reg = regular_bimodule(m2)
    shift = left_multiplication(reg, "E12")
    back = left_multiplication(reg, "E21")
    identity = LinearMap.identity(reg)
    assert (shift @ shift).is_zero()
    assert (back @ shift).equals(left_multiplication(reg, "E22"))
    assert (shift + back - back).equals(shift)
    assert shift.scale(3).equals(shift + shift + shift)
    assert shift.rank() == 2
    assert not shift.is_bijective()
    assert identity.is_bijective()
    assert LinearMap.zero(reg, reg).differing_columns(shift) == [reg.index["E21"], reg.index["E22"]]


def test_left_multiplication_is_only_right_linear(m2) -> None:
    reg = regular_bimodule(m2)
    shift = left_multiplication(reg, "E12")
    assert shift.linearity_failures("right") == []
    assert shift.linearity_failures("left")


def test_right_dual_dimensions(m2) -> None:
    assert right_dual(row_module(m2)).dim == 2
    assert right_dual(left_corner(m2, ["1"])).dim == 2
    assert right_dual(regular_bimodule(m2)).dim == 4
    assert right_dual(zero_module(rational_field(), m2)).dim == 0
    assert right_dual(row_module(m2)) is right_dual(row_module(m2))


def test_right_dual_is_a_bimodule(m2) -> None:
    for sigma in (row_module(m2), left_corner(m2, ["1"]), regular_bimodule(m2)):
        dual = right_dual(sigma)
        assert dual.left_ring is sigma.right_ring
        assert dual.right_ring is sigma.left_ring
        assert verify_module(dual).passed


def test_dual_evaluation_is_right_linear(m2) -> None:
    row = row_module(m2)
    dual = right_dual(row)
    for t in range(dual.dim):
        for s in range(row.dim):
            for a in range(m2.dim):
                lhs = dual.evaluate({t: ONE}, row.right_act(s, a))
                rhs = m2.multiply_vectors(dual.evaluate({t: ONE}, {s: ONE}), {a: ONE})
                assert lhs == rhs


def test_dual_basis_of_row(m2) -> None:
    basis = dual_basis(row_module(m2), ["*"])
    assert basis is not None
    assert len(basis) == 1
    assert basis.law_failures() == []


def test_dual_basis_of_corner_module(m2) -> None:
    sigma = left_corner(m2, ["1"])
    basis = dual_basis(sigma, sigma.left_ring.labels)
    assert basis is not None and len(basis) == 1
    assert basis.law_failures() == []


def test_dual_basis_of_regular_module(m2) -> None:
    basis = dual_basis(regular_bimodule(m2), m2.labels)
    assert basis is not None
    assert len(basis) == 2
    assert basis.law_failures() == []
    for label in m2.labels:
        partial = dual_basis(regular_bimodule(m2), [label])
        assert partial is not None and partial.law_failures() == []


def test_scaled_dual_basis_breaks_the_law(m2) -> None:
    basis = dual_basis(row_module(m2), ["*"])
    broken = basis.scaled(0, Fraction(2))
    assert broken.law_failures() == ["E11", "E12"]


def test_simple_module_is_not_projective(p12) -> None:
    projective, certificate = is_fg_projective(simple_right_module(p12, "1"), ["*"])
    assert not projective
    assert certificate is None
    projective, certificate = is_fg_projective(simple_right_module(p12, "2"), ["*"])
    assert projective
    assert certificate.law_failures() == []


def test_zero_module_is_projective(m2) -> None:
    projective, certificate = is_fg_projective(zero_module(rational_field(), m2), ["*"])
    assert projective
    assert len(certificate) == 0
