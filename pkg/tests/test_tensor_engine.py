"""Tests for tensor products over graded rings and the canonical maps."""

from __future__ import annotations

from fractions import Fraction

import pytest

from app.errors import BalancingError, RingMismatchError
from app.core.local_ring import matrix_ring, path_algebra, rational_field
from app.core.unital_module import (
    Bimodule,
    LinearMap,
    left_corner,
    regular_bimodule,
    right_dual,
    row_module,
    zero_module,
)
from app.core.tensor_engine import (
    associator,
    gamma,
    identity_map,
    induced_map,
    left_unitor,
    right_unitor,
    tau,
    tensor_over,
    theta,
    upsilon,
)

ONE = Fraction(1)


@pytest.fixture
def m2():
    return matrix_ring(2)


def left_mult(module: Bimodule, vector) -> LinearMap:
    return LinearMap.from_function(module, module, lambda i: module.act_left(vector, {i: ONE}))


def right_mult(module: Bimodule, vector) -> LinearMap:
    return LinearMap.from_function(module, module, lambda i: module.act_right({i: ONE}, vector))


def assert_balanced(M: Bimodule, N: Bimodule) -> None:
    space = tensor_over(M, N)
    ring = M.right_ring
    for i in range(M.dim):
        for a in range(ring.dim):
            for j in range(N.dim):
                assert space.pure(M.right_act(i, a), {j: ONE}) == space.pure({i: ONE}, N.left_act(a, j))


def test_row_against_its_dual_is_one_dimensional(m2) -> None:
    row = row_module(m2)
    space = tensor_over(row, right_dual(row))
    assert space.dim == 1
    assert space.left is row
    assert space.ring is m2


@pytest.mark.parametrize("which", ["row", "dual"])
def test_ring_factor_is_absorbed(m2, which: str) -> None:
    row = row_module(m2)
    if which == "row":
        space, other = tensor_over(row, regular_bimodule(m2)), row
    else:
        other = right_dual(row)
        space = tensor_over(regular_bimodule(m2), other)
    assert space.dim == other.dim


def test_regular_square(m2) -> None:
    reg = regular_bimodule(m2)
    space = tensor_over(reg, reg)
    assert space.dim == 4
    assert space.name == "(M2⊗M2)"
    assert tensor_over(reg, reg) is space


def test_balancing_holds_on_basis_triples(m2) -> None:
    p = path_algebra(["1", "2"], [("a", "1", "2")], name="P")
    assert_balanced(row_module(m2), regular_bimodule(m2))
    assert_balanced(regular_bimodule(m2), right_dual(row_module(m2)))
    assert_balanced(row_module(p), regular_bimodule(p))


def test_tensor_rejects_mismatched_rings(m2) -> None:
    row = row_module(m2)
    with pytest.raises(RingMismatchError):
        tensor_over(row, row)
    with pytest.raises(RingMismatchError):
        tensor_over(row, regular_bimodule(m2), ring=rational_field())


def test_induced_identity_is_identity(m2) -> None:
    row, reg = row_module(m2), regular_bimodule(m2)
    induced = induced_map(identity_map(row), identity_map(reg))
    assert induced.equals(LinearMap.identity(tensor_over(row, reg)))


def test_central_scalar_moves_across_the_tensor(m2) -> None:
    reg = regular_bimodule(m2)
    twice = m2.total_unit().scale(2).vector
    moved_right = induced_map(right_mult(reg, twice), identity_map(reg))
    moved_left = induced_map(identity_map(reg), left_mult(reg, twice))
    assert moved_right.equals(moved_left)
    assert moved_right.equals(LinearMap.identity(tensor_over(reg, reg)).scale(2))


def test_unbalanced_pair_is_rejected(m2) -> None:
    reg = regular_bimodule(m2)
    with pytest.raises(BalancingError) as excinfo:
        induced_map(right_mult(reg, m2.generator("1").vector), identity_map(reg))
    assert excinfo.value.witness


def test_zero_map_induces_zero(m2) -> None:
    reg = regular_bimodule(m2)
    assert induced_map(LinearMap.zero(reg, reg), identity_map(reg)).is_zero()


def test_induced_map_is_functorial(m2) -> None:
    reg = regular_bimodule(m2)
    f = left_mult(reg, m2.basis_element("E12").vector)
    g = left_mult(reg, m2.basis_element("E21").vector)
    h = right_mult(reg, m2.basis_element("E21").vector)
    k = right_mult(reg, m2.element({"E11": 1, "E12": 3}).vector)
    lhs = induced_map(g @ f, k @ h)
    rhs = induced_map(g, k) @ induced_map(f, h)
    assert lhs.equals(rhs)


def test_gamma_and_tau(m2) -> None:
    reg = regular_bimodule(m2)
    eA = left_corner(m2, ["1"])
    g = gamma(["1"], reg)
    target = tensor_over(eA, reg)
    assert g.target is target
    e12 = reg.index["E12"]
    assert g.columns[e12] == target.pure({eA.index["E11"]: ONE}, {e12: ONE})

    t = tau(["1"], reg)
    assert t(g.columns[e12]) == {e12: ONE}
    assert (t @ g).equals(left_mult(reg, m2.generator("1").vector))


def test_gamma_is_natural(m2) -> None:
    reg = regular_bimodule(m2)
    f = right_mult(reg, m2.element({"E12": 1, "E22": 2}).vector)
    g = gamma(["2"], reg)
    eA = left_corner(m2, ["2"])
    square = induced_map(identity_map(eA), f)
    assert (square @ g).equals(g @ f)


def test_gamma_and_tau_on_zero_module(m2) -> None:
    zero = zero_module(m2, m2)
    assert gamma(["1"], zero).is_zero()
    assert tau(["1"], zero).is_zero()


@pytest.mark.parametrize("labels", [["1"], ["2"], ["1", "2"]])
def test_upsilon_and_theta_are_inverse(m2, labels) -> None:
    for module in (regular_bimodule(m2), right_dual(row_module(m2))):
        there = upsilon(labels, module)
        back = theta(labels, module)
        assert (back @ there).equals(identity_map(there.source))
        assert (there @ back).equals(identity_map(there.target))


def test_upsilon_at_total_unit_keeps_dimension(m2) -> None:
    dual = right_dual(row_module(m2))
    there = upsilon(m2.total_unit(), dual)
    assert there.source.dim == there.target.dim == 2
    assert there.is_bijective()


def test_associator_and_unitors(m2) -> None:
    reg = regular_bimodule(m2)
    row = row_module(m2)
    dual = right_dual(row)
    iso = associator(reg, reg, reg)
    assert iso.verify() == []
    assert iso.forward.is_bijective()
    assert associator(row, reg, dual).verify() == []
    assert left_unitor(dual).verify() == []
    assert right_unitor(row).verify() == []
    evaluation = left_unitor(reg).forward
    source = evaluation.source
    for column, (a, n) in zip(evaluation.columns, source.factors):
        assert column == m2.product(a, n)
