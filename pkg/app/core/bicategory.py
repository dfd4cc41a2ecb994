"""
The bicategory of corings: 1-cells (M, 𝔪) with 𝔪: C ⊗_A M → M ⊗_B D, 2-cells
𝔞: C ⊗_A M → M', their law checkers, both compositions, and the comodule
induced along a 1-cell.

All "up to canonical isomorphism" statements are checked by composing with the
stored associator and unitor maps of the tensor engine.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from app.errors import CellMismatchError, DimensionMismatchError, RingMismatchError
from app.core.exact_linalg import ONE, SparseVector, vec_axpy
from app.core.unital_module import Bimodule, LinearMap, regular_bimodule
from app.core.tensor_engine import (
    TensorSpace,
    associator,
    identity_tensor,
    left_unitor,
    right_unitor,
    tensor_over,
    tensor_with_identity,
)
from app.core.coring_core import (
    Comodule,
    Coring,
    CoringMorphism,
    check_comodule_morphism,
    compare_maps,
    record_linearity,
)
from app.core.coring_constructors import (
    DualBases,
    UnityChoice,
    comatrix_coring,
    require_dual_basis,
    trivial_coring,
    unity_labels,
)
from models.report import CheckReport

logger = logging.getLogger(__name__)


@dataclass
class OneCell:
    """1-cell from (D over B) to (C over A) through an (A, B)-bimodule M."""

    name: str
    source: Coring
    target: Coring
    module: Bimodule
    entwining: LinearMap

    def __post_init__(self) -> None:
        C, D, M = self.target, self.source, self.module
        if M.left_ring is not C.ring or M.right_ring is not D.ring:
            raise RingMismatchError(
                f"{self.name}: {M.name} must be a ({C.ring.name}, {D.ring.name})-bimodule"
            )
        if self.entwining.source is not self.domain or self.entwining.target is not self.codomain:
            raise DimensionMismatchError(f"{self.name}: entwining must map C⊗M -> M⊗D")

    @property
    def domain(self) -> TensorSpace:
        return tensor_over(self.target.carrier, self.module)

    @property
    def codomain(self) -> TensorSpace:
        return tensor_over(self.module, self.source.carrier)


def spread(coring: Coring, module: Bimodule) -> LinearMap:
    """C ⊗ M → C ⊗ (C ⊗ M), c ⊗ m ↦ c₁ ⊗ (c₂ ⊗ m)."""
    C = coring.carrier
    return associator(C, C, module).forward @ tensor_with_identity(coring.comult, module)


def check_one_cell(c: OneCell) -> CheckReport:
    """Bilinearity of 𝔪 and its compatibility with both counits and comultiplications."""
    report = CheckReport(check="one_cell:fks", instance=c.name)
    record_linearity(report, "bilinear", c.entwining)
    C, D, M = c.target, c.source, c.module

    counit_lhs = right_unitor(M).forward @ identity_tensor(M, D.counit) @ c.entwining
    counit_rhs = left_unitor(M).forward @ tensor_with_identity(C.counit, M)
    compare_maps(report, "counit", counit_lhs, counit_rhs)

    Cc, Dc = C.carrier, D.carrier
    comult_lhs = (
        associator(M, Dc, Dc).forward
        @ tensor_with_identity(c.entwining, Dc)
        @ associator(Cc, M, Dc).backward
        @ identity_tensor(Cc, c.entwining)
        @ spread(C, M)
    )
    comult_rhs = identity_tensor(M, D.comult) @ c.entwining
    compare_maps(report, "comult", comult_lhs, comult_rhs)
    logger.debug("check_one_cell %s: %s", c.name, report.status)
    return report


def identity_one_cell(C: Coring) -> OneCell:
    """(A, C ⊗ A ≅ C ≅ A ⊗ C)."""
    module = regular_bimodule(C.ring)
    entwining = left_unitor(C.carrier).backward @ right_unitor(C.carrier).forward
    return OneCell(f"id[{C.name}]", C, C, module, entwining)


def one_cell_from_morphism(phi: CoringMorphism) -> OneCell:
    """A coring morphism φ: C → D gives the 1-cell (A, l⁻¹ φ r) from D to C."""
    C, D = phi.source, phi.target
    entwining = left_unitor(D.carrier).backward @ phi.map @ right_unitor(C.carrier).forward
    return OneCell(f"cell[{phi.name}]", D, C, regular_bimodule(C.ring), entwining)


def comatrix_coaction(sigma: Bimodule, dual_bases: Optional[DualBases] = None) -> LinearMap:
    """Σ → Σ ⊗_A (Σ† ⊗_B Σ), x ↦ Σ_i u_i ⊗ (v_i* ⊗ x)."""
    coring = comatrix_coring(sigma)
    target = tensor_over(sigma, coring.carrier)
    bases = dict(dual_bases or {})
    columns = []
    for s, element in enumerate(sigma.basis):
        labels = unity_labels(sigma.left_ring, [element.left], UnityChoice.MINIMAL)
        if labels not in bases:
            bases[labels] = require_dual_basis(sigma, labels)
        column: SparseVector = {}
        for u, v in bases[labels].pairs:
            vec_axpy(column, ONE, target.pure(u, coring.carrier.pure(v, {s: ONE})))
        columns.append(column)
    return LinearMap(sigma, target, columns, name="rho")


def comatrix_comodule(sigma: Bimodule) -> Comodule:
    """Σ as a right comodule over its comatrix coring."""
    return Comodule(f"{sigma.name}_comatrix", comatrix_coring(sigma), sigma, comatrix_coaction(sigma))


def comatrix_one_cell(sigma: Bimodule) -> OneCell:
    """(Σ, ρ ∘ l) from the comatrix coring of Σ to the trivial coring of B."""
    trivial = trivial_coring(sigma.left_ring)
    entwining = comatrix_coaction(sigma) @ left_unitor(sigma).forward
    return OneCell(f"cell[{sigma.name}]", comatrix_coring(sigma), trivial, sigma, entwining)


def compose_one_cells(m: OneCell, n: OneCell) -> OneCell:
    """(M ⊗ N, (M ⊗ 𝔫)(𝔪 ⊗ N)) for m from D to C and n from E to D."""
    if m.source is not n.target:
        raise CellMismatchError(f"Cannot compose {m.name} after {n.name}: {m.source.name} != {n.target.name}")
    C, D, E = m.target, m.source, n.source
    M, N = m.module, n.module
    entwining = (
        associator(M, N, E.carrier).backward
        @ identity_tensor(M, n.entwining)
        @ associator(M, D.carrier, N).forward
        @ tensor_with_identity(m.entwining, N)
        @ associator(C.carrier, M, N).backward
    )
    return OneCell(f"{m.name}*{n.name}", E, C, tensor_over(M, N), entwining)


def induce_comodule(c: OneCell, X: Comodule) -> Comodule:
    """X ⊗ M as a D-comodule: (X ⊗ 𝔪)(ρ ⊗ M) up to associators."""
    if X.coring is not c.target:
        raise CellMismatchError(f"{X.name} is not a comodule over {c.target.name}")
    C, D, M = c.target, c.source, c.module
    Xc = X.carrier
    coaction = (
        associator(Xc, M, D.carrier).backward
        @ identity_tensor(Xc, c.entwining)
        @ associator(Xc, C.carrier, M).forward
        @ tensor_with_identity(X.coaction, M)
    )
    return Comodule(f"{X.name}⊗{M.name}", D, tensor_over(Xc, M), coaction)


def check_one_cell_iso(f: LinearMap, first: OneCell, second: OneCell) -> CheckReport:
    """f: M → M' is a bijective bimodule map intertwining the two entwinings."""
    report = CheckReport(check="one_cell:iso", instance=f"{first.name}~{second.name}")
    if first.source is not second.source or first.target is not second.target:
        raise CellMismatchError(f"{first.name} and {second.name} are not parallel")
    if f.source is not first.module or f.target is not second.module:
        raise DimensionMismatchError(f"{f.name or 'map'} does not go from {first.module.name} to {second.module.name}")
    record_linearity(report, "bilinear", f)
    report.tick()
    if not f.is_bijective():
        report.record("bijective", f"rank {f.rank()} for dimensions {f.source.dim}->{f.target.dim}")
    lhs = tensor_with_identity(f, first.source.carrier) @ first.entwining
    rhs = second.entwining @ identity_tensor(first.target.carrier, f)
    compare_maps(report, "intertwines", lhs, rhs)
    return report


def check_composition_units(c: OneCell) -> CheckReport:
    """id ∘ c ≅ c through l_M and c ∘ id ≅ c through r_M."""
    report = CheckReport(check="one_cell:units", instance=c.name)
    left = compose_one_cells(identity_one_cell(c.target), c)
    report.merge(check_one_cell_iso(left_unitor(c.module).forward, left, c), prefix="left:")
    right = compose_one_cells(c, identity_one_cell(c.source))
    report.merge(check_one_cell_iso(right_unitor(c.module).forward, right, c), prefix="right:")
    return report


def check_composition_associativity(m: OneCell, n: OneCell, p: OneCell) -> CheckReport:
    """(m ∘ n) ∘ p ≅ m ∘ (n ∘ p) through the associator."""
    first = compose_one_cells(compose_one_cells(m, n), p)
    second = compose_one_cells(m, compose_one_cells(n, p))
    report = CheckReport(check="one_cell:associativity", instance=f"{m.name}|{n.name}|{p.name}")
    iso = associator(m.module, n.module, p.module).forward
    return report.merge(check_one_cell_iso(iso, first, second))


def check_induction_functoriality(m: OneCell, n: OneCell, X: Comodule) -> CheckReport:
    """Inducing along m then n agrees with inducing along m ∘ n, up to the associator."""
    report = CheckReport(check="one_cell:induction", instance=f"{X.name}|{m.name}|{n.name}")
    twice = induce_comodule(n, induce_comodule(m, X))
    once = induce_comodule(compose_one_cells(m, n), X)
    iso = associator(X.carrier, m.module, n.module).forward
    report.merge(check_comodule_morphism(iso, twice, once))
    report.tick()
    if not iso.is_bijective():
        report.record("bijective", f"rank {iso.rank()}")
    return report


@dataclass
class TwoCell:
    """2-cell between parallel 1-cells, given by 𝔞: C ⊗ M → M'."""

    name: str
    source: OneCell
    target: OneCell
    map: LinearMap

    def __post_init__(self) -> None:
        if self.source.source is not self.target.source or self.source.target is not self.target.target:
            raise CellMismatchError(f"{self.name}: {self.source.name} and {self.target.name} are not parallel")
        if self.map.source is not self.source.domain or self.map.target is not self.target.module:
            raise DimensionMismatchError(f"{self.name}: map must go C⊗M -> M'")


def check_two_cell(t: TwoCell) -> CheckReport:
    """(𝔞 ⊗ D)(C ⊗ 𝔪)(Δ ⊗ M) = 𝔪'(C ⊗ 𝔞)(Δ ⊗ M), up to associators."""
    report = CheckReport(check="two_cell:law", instance=t.name)
    record_linearity(report, "bilinear", t.map)
    c, c2 = t.source, t.target
    C, D, M = c.target, c.source, c.module
    unfolded = spread(C, M)
    lhs = (
        tensor_with_identity(t.map, D.carrier)
        @ associator(C.carrier, M, D.carrier).backward
        @ identity_tensor(C.carrier, c.entwining)
        @ unfolded
    )
    rhs = c2.entwining @ identity_tensor(C.carrier, t.map) @ unfolded
    compare_maps(report, "law", lhs, rhs)
    return report


def collapse_two_cell(c: OneCell, alpha: LinearMap, name: Optional[str] = None) -> TwoCell:
    """c ⊗ m ↦ α(c) m for a bilinear α: C → A, as an endo-2-cell of c."""
    M = c.module
    mapping = left_unitor(M).forward @ tensor_with_identity(alpha, M)
    return TwoCell(name or f"collapse[{alpha.name}]", c, c, mapping)


def identity_two_cell(c: OneCell) -> TwoCell:
    """ε ⊗ M followed by the unitor."""
    return collapse_two_cell(c, c.target.counit, name=f"id[{c.name}]")


def zero_two_cell(source: OneCell, target: OneCell) -> TwoCell:
    return TwoCell(f"0[{source.name},{target.name}]", source, target, LinearMap.zero(source.domain, target.module))


def scaled_two_cell(t: TwoCell, factor: Union[int, Fraction]) -> TwoCell:
    return TwoCell(f"{factor}*{t.name}", t.source, t.target, t.map.scale(factor))


def compose_two_cells_vertical(outer: TwoCell, inner: TwoCell) -> TwoCell:
    """𝔞' ∘ (C ⊗ 𝔞) ∘ (Δ ⊗ M) for inner 𝔞: c → c' and outer 𝔞': c' → c''."""
    if inner.target is not outer.source:
        raise CellMismatchError(f"Cannot stack {outer.name} on {inner.name}")
    c = inner.source
    C = c.target
    mapping = outer.map @ identity_tensor(C.carrier, inner.map) @ spread(C, c.module)
    return TwoCell(f"{outer.name}.{inner.name}", c, outer.target, mapping)


def compose_two_cells_horizontal(upper: TwoCell, lower: TwoCell) -> TwoCell:
    """(M' ⊗ 𝔟)(𝔪' ⊗ N)(C ⊗ 𝔞 ⊗ N)(Δ ⊗ M ⊗ N) for 𝔞 between cells into C and 𝔟 between cells into D."""
    m, m2 = upper.source, upper.target
    n, n2 = lower.source, lower.target
    if m.source is not n.target:
        raise CellMismatchError(f"Cannot place {upper.name} beside {lower.name}")
    C, D = m.target, m.source
    Cc, Dc = C.carrier, D.carrier
    M, N = m.module, n.module
    M2, N2 = m2.module, n2.module
    MN = tensor_over(M, N)
    mapping = (
        identity_tensor(M2, lower.map)
        @ associator(M2, Dc, N).forward
        @ tensor_with_identity(m2.entwining, N)
        @ associator(Cc, M2, N).backward
        @ identity_tensor(Cc, tensor_with_identity(upper.map, N))
        @ identity_tensor(Cc, associator(Cc, M, N).backward)
        @ associator(Cc, Cc, MN).forward
        @ tensor_with_identity(C.comult, MN)
    )
    source = compose_one_cells(m, n)
    target = compose_one_cells(m2, n2)
    return TwoCell(f"{upper.name}*{lower.name}", source, target, mapping)


__all__ = [
    "OneCell",
    "TwoCell",
    "spread",
    "check_one_cell",
    "check_two_cell",
    "identity_one_cell",
    "one_cell_from_morphism",
    "comatrix_coaction",
    "comatrix_comodule",
    "comatrix_one_cell",
    "compose_one_cells",
    "induce_comodule",
    "check_one_cell_iso",
    "check_composition_units",
    "check_composition_associativity",
    "check_induction_functoriality",
    "collapse_two_cell",
    "identity_two_cell",
    "zero_two_cell",
    "scaled_two_cell",
    "compose_two_cells_vertical",
    "compose_two_cells_horizontal",
]
