"""
Corings, coring morphisms and comodules with their law checkers; cofree
comodules and corestriction along coring morphisms.

Every law is checked as an equality of two composed maps on the canonical
bases: the left leg minus the right leg must be zero, column by column.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

from app.errors import DimensionMismatchError, RingMismatchError
from app.core.local_ring import GradedRing
from app.core.unital_module import Bimodule, LinearMap, regular_bimodule
from app.core.tensor_engine import (
    TensorSpace,
    associator,
    identity_map,
    identity_tensor,
    induced_map,
    left_unitor,
    right_unitor,
    tensor_over,
    tensor_with_identity,
)
from models.report import CheckReport

logger = logging.getLogger(__name__)


def compare_maps(report: CheckReport, law: str, lhs: LinearMap, rhs: LinearMap) -> CheckReport:
    """Record every source basis vector where lhs and rhs disagree."""
    report.tick(lhs.source.dim)
    for k in lhs.differing_columns(rhs):
        report.record(
            f"{law}@{lhs.source.basis[k].name}",
            f"{lhs.target.format(lhs.columns[k])} != {rhs.target.format(rhs.columns[k])}",
        )
    return report


def record_linearity(report: CheckReport, law: str, f: LinearMap, side: str = "both") -> CheckReport:
    report.tick(f.source.dim)
    for witness in f.linearity_failures(side):
        report.record(f"{law}@{witness}", "not linear")
    return report


@dataclass
class Coring:
    """An A-coring (C, Δ, ε)."""

    name: str
    ring: GradedRing
    carrier: Bimodule
    comult: LinearMap
    counit: LinearMap

    def __post_init__(self) -> None:
        if self.carrier.left_ring is not self.ring or self.carrier.right_ring is not self.ring:
            raise RingMismatchError(f"Carrier of {self.name} is not an {self.ring.name}-bimodule")
        if self.comult.source is not self.carrier or self.comult.target is not self.square:
            raise DimensionMismatchError(f"Comultiplication of {self.name} must map C -> C⊗C")
        if self.counit.source is not self.carrier or self.counit.target is not regular_bimodule(self.ring):
            raise DimensionMismatchError(f"Counit of {self.name} must map C -> {self.ring.name}")

    def __repr__(self) -> str:
        return f"Coring({self.name!r} over {self.ring.name}, dim={self.carrier.dim})"

    @property
    def square(self) -> TensorSpace:
        return tensor_over(self.carrier, self.carrier)


def check_coring(C: Coring) -> CheckReport:
    """Bilinearity, coassociativity and both counit laws."""
    report = CheckReport(check="coring:laws", instance=C.name)
    record_linearity(report, "comult-bilinear", C.comult)
    record_linearity(report, "counit-bilinear", C.counit)

    carrier = C.carrier
    assoc = associator(carrier, carrier, carrier).forward
    lhs = assoc @ tensor_with_identity(C.comult, carrier) @ C.comult
    rhs = identity_tensor(carrier, C.comult) @ C.comult
    compare_maps(report, "coassociativity", lhs, rhs)

    ident = identity_map(carrier)
    left = left_unitor(carrier).forward @ tensor_with_identity(C.counit, carrier) @ C.comult
    compare_maps(report, "left-counit", left, ident)
    right = right_unitor(carrier).forward @ identity_tensor(carrier, C.counit) @ C.comult
    compare_maps(report, "right-counit", right, ident)
    logger.debug("check_coring %s: %s", C.name, report.status)
    return report


@dataclass
class CoringMorphism:
    """Bilinear map between corings over the same ring."""

    name: str
    source: Coring
    target: Coring
    map: LinearMap

    def __post_init__(self) -> None:
        if self.source.ring is not self.target.ring:
            raise RingMismatchError(f"{self.name}: corings over {self.source.ring.name} and {self.target.ring.name}")
        if self.map.source is not self.source.carrier or self.map.target is not self.target.carrier:
            raise DimensionMismatchError(f"{self.name}: map does not go between the carriers")


def check_coring_morphism(phi: CoringMorphism) -> CheckReport:
    """Bilinear, ε' φ = ε and Δ' φ = (φ ⊗ φ) Δ."""
    report = CheckReport(check="coring_morphism:laws", instance=phi.name)
    record_linearity(report, "bilinear", phi.map)
    compare_maps(report, "counit", phi.target.counit @ phi.map, phi.source.counit)
    square = induced_map(phi.map, phi.map, check=False)
    compare_maps(report, "comult", phi.target.comult @ phi.map, square @ phi.source.comult)
    return report


def check_coring_isomorphism(phi: CoringMorphism) -> CheckReport:
    """Coring morphism laws plus bijectivity."""
    report = check_coring_morphism(phi)
    report.check = "coring_morphism:iso"
    report.tick()
    if not phi.map.is_bijective():
        report.record("bijective", f"rank {phi.map.rank()} for dimensions {phi.map.source.dim}->{phi.map.target.dim}")
    return report


def identity_coring_morphism(C: Coring) -> CoringMorphism:
    return CoringMorphism(f"id_{C.name}", C, C, identity_map(C.carrier))


def compose_coring_morphisms(psi: CoringMorphism, phi: CoringMorphism) -> CoringMorphism:
    """psi after phi."""
    if phi.target is not psi.source:
        raise DimensionMismatchError(f"Cannot compose {psi.name} after {phi.name}")
    return CoringMorphism(f"{psi.name}.{phi.name}", phi.source, psi.target, psi.map @ phi.map)


@dataclass
class Comodule:
    """Right C-comodule (M, ρ)."""

    name: str
    coring: Coring
    carrier: Bimodule
    coaction: LinearMap

    def __post_init__(self) -> None:
        if self.carrier.right_ring is not self.coring.ring:
            raise RingMismatchError(f"{self.name}: carrier is not a right {self.coring.ring.name}-module")
        if self.coaction.source is not self.carrier or self.coaction.target is not self.codomain:
            raise DimensionMismatchError(f"{self.name}: coaction must map M -> M⊗C")

    @property
    def codomain(self) -> TensorSpace:
        return tensor_over(self.carrier, self.coring.carrier)


def check_comodule(M: Comodule) -> CheckReport:
    """Right linearity, coassociativity and counitality of the coaction."""
    report = CheckReport(check="comodule:laws", instance=M.name)
    record_linearity(report, "right-linear", M.coaction, side="right")
    C = M.coring
    assoc = associator(M.carrier, C.carrier, C.carrier).forward
    lhs = assoc @ tensor_with_identity(M.coaction, C.carrier) @ M.coaction
    rhs = identity_tensor(M.carrier, C.comult) @ M.coaction
    compare_maps(report, "coassociativity", lhs, rhs)
    counit = right_unitor(M.carrier).forward @ identity_tensor(M.carrier, C.counit) @ M.coaction
    compare_maps(report, "counit", counit, identity_map(M.carrier))
    return report


def regular_comodule(C: Coring) -> Comodule:
    """C as a comodule over itself via Δ."""
    return Comodule(f"{C.name}_C", C, C.carrier, C.comult)


def cofree_comodule(X: Bimodule, C: Coring) -> Comodule:
    """X ⊗ C with coaction X ⊗ Δ."""
    carrier = tensor_over(X, C.carrier)
    coaction = associator(X, C.carrier, C.carrier).backward @ identity_tensor(X, C.comult)
    return Comodule(f"{X.name}⊗{C.name}", C, carrier, coaction)


def corestrict(phi: CoringMorphism, M: Comodule) -> Comodule:
    """Comodule over the target coring with coaction (M ⊗ φ) ρ."""
    if M.coring is not phi.source:
        raise RingMismatchError(f"{M.name} is not a comodule over {phi.source.name}")
    coaction = identity_tensor(M.carrier, phi.map) @ M.coaction
    return Comodule(f"{M.name}|{phi.name}", phi.target, M.carrier, coaction)


def check_comodule_morphism(f: LinearMap, M: Comodule, N: Comodule) -> CheckReport:
    """Right linear and ρ_N f = (f ⊗ C) ρ_M."""
    if M.coring is not N.coring:
        raise RingMismatchError(f"{M.name} and {N.name} are comodules over different corings")
    report = CheckReport(check="comodule_morphism:laws", instance=f"{M.name}->{N.name}")
    record_linearity(report, "right-linear", f, side="right")
    compare_maps(report, "colinear", N.coaction @ f, tensor_with_identity(f, M.coring.carrier) @ M.coaction)
    return report


def comodule_counit_map(X: Bimodule, C: Coring) -> LinearMap:
    """X ⊗ C → X, x ⊗ c ↦ x ε(c)."""
    return right_unitor(X).forward @ identity_tensor(X, C.counit)


def check_cofree_adjunction(M: Comodule) -> CheckReport:
    """Triangle identities of forgetful ⊣ −⊗C at a comodule M and at its carrier."""
    report = CheckReport(check="comodule:cofree-adjunction", instance=M.name)
    C = M.coring
    # unit at M is ρ; it is a comodule map into the cofree comodule
    cofree = cofree_comodule(M.carrier, C)
    report.merge(check_comodule_morphism(M.coaction, M, cofree), prefix="unit-colinear:")
    compare_maps(report, "triangle-U", comodule_counit_map(M.carrier, C) @ M.coaction, identity_map(M.carrier))
    lifted = tensor_with_identity(comodule_counit_map(M.carrier, C), C.carrier) @ cofree.coaction
    compare_maps(report, "triangle-G", lifted, identity_map(cofree.carrier))
    return report


__all__ = [
    "Coring",
    "CoringMorphism",
    "Comodule",
    "compare_maps",
    "record_linearity",
    "check_coring",
    "check_coring_morphism",
    "check_coring_isomorphism",
    "identity_coring_morphism",
    "compose_coring_morphisms",
    "check_comodule",
    "regular_comodule",
    "cofree_comodule",
    "corestrict",
    "check_comodule_morphism",
    "comodule_counit_map",
    "check_cofree_adjunction",
]
