"""
The adjunction − ⊗_B Σ ⊣ − ⊗_A Σ† for a bimodule Σ with finite dual bases:
unit η, counit ζ, the triangle identities, the isomorphism
(W ⊗_B Σ)† ≅ Σ† ⊗_B W†, and the comultiplication of a base extension
rebuilt from η and the comultiplication of D.
"""

from __future__ import annotations

import logging
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Tuple

from app.errors import RingMismatchError
from app.core.exact_linalg import ONE, SparseVector, vec_axpy
from app.core.unital_module import (
    Bimodule,
    LinearMap,
    hom_space,
    right_dual,
    right_regular,
    row_module,
)
from app.core.tensor_engine import (
    associator,
    identity_map,
    identity_tensor,
    induced_map,
    right_unitor,
    tensor_over,
    tensor_with_identity,
)
from app.core.coring_core import Coring, compare_maps, record_linearity
from app.core.coring_constructors import (
    DualBases,
    UnityChoice,
    base_extension,
    evaluation_map,
    require_dual_basis,
    unity_labels,
)
from models.report import CheckReport

logger = logging.getLogger(__name__)


def unit_eta(
    sigma: Bimodule,
    Y: Bimodule,
    unity: UnityChoice = UnityChoice.MINIMAL,
    dual_bases: Optional[DualBases] = None,
) -> LinearMap:
    """Y → (Y ⊗_B Σ) ⊗_A Σ†, y ↦ Σ_i (y ⊗ u_i) ⊗ v_i*."""
    if Y.right_ring is not sigma.left_ring:
        raise RingMismatchError(f"{Y.name} is not a right {sigma.left_ring.name}-module")
    dual = right_dual(sigma)
    YS = tensor_over(Y, sigma)
    target = tensor_over(YS, dual)
    bases = dict(dual_bases or {})
    columns = []
    for y, element in enumerate(Y.basis):
        labels = unity_labels(sigma.left_ring, [element.right], unity)
        if labels not in bases:
            bases[labels] = require_dual_basis(sigma, labels)
        column: SparseVector = {}
        for u, v in bases[labels].pairs:
            vec_axpy(column, ONE, target.pure(YS.pure({y: ONE}, u), v))
        columns.append(column)
    return LinearMap(Y, target, columns, name=f"eta[{Y.name}]")


def counit_zeta(sigma: Bimodule, X: Bimodule) -> LinearMap:
    """(X ⊗_A Σ†) ⊗_B Σ → X, (x ⊗ φ) ⊗ u ↦ x φ(u)."""
    if X.right_ring is not sigma.right_ring:
        raise RingMismatchError(f"{X.name} is not a right {sigma.right_ring.name}-module")
    dual = right_dual(sigma)
    XD = tensor_over(X, dual)
    source = tensor_over(XD, sigma)
    columns = []
    for q, s in source.factors:
        x, phi = XD.factors[q]
        columns.append(X.act_right({x: ONE}, dual.evaluate({phi: ONE}, {s: ONE})))
    return LinearMap(source, X, columns, name=f"zeta[{X.name}]")


def probe_modules(ring) -> List[Bimodule]:
    """Rows e_k R for every generator plus R itself, without repeats."""
    modules: List[Bimodule] = []
    seen = set()
    for candidate in [row_module(ring, [label]) for label in ring.labels] + [right_regular(ring)]:
        if id(candidate) not in seen:
            seen.add(id(candidate))
            modules.append(candidate)
    return modules


def check_triangle_identities(
    sigma: Bimodule,
    dual_bases: Optional[DualBases] = None,
    left_modules: Optional[Iterable[Bimodule]] = None,
    right_modules: Optional[Iterable[Bimodule]] = None,
) -> CheckReport:
    """(ζ_X ⊗ Σ†) η_{X⊗Σ†} = id and ζ_{Y⊗Σ} (η_Y ⊗ Σ) = id on the probe modules."""
    report = CheckReport(check="adjunction:triangle", instance=sigma.name)
    dual = right_dual(sigma)
    for X in right_modules if right_modules is not None else probe_modules(sigma.right_ring):
        XD = tensor_over(X, dual)
        composite = tensor_with_identity(counit_zeta(sigma, X), dual) @ unit_eta(sigma, XD, dual_bases=dual_bases)
        compare_maps(report, f"dual[{X.name}]", composite, identity_map(XD))
    for Y in left_modules if left_modules is not None else probe_modules(sigma.left_ring):
        YS = tensor_over(Y, sigma)
        composite = counit_zeta(sigma, YS) @ tensor_with_identity(unit_eta(sigma, Y, dual_bases=dual_bases), sigma)
        compare_maps(report, f"tensor[{Y.name}]", composite, identity_map(YS))
    logger.debug("triangle identities for %s: %s", sigma.name, report.status)
    return report


def check_unit_independence(sigma: Bimodule, modules: Optional[Iterable[Bimodule]] = None) -> CheckReport:
    """η with the minimal unity equals η with the total unity."""
    report = CheckReport(check="adjunction:unit-independence", instance=sigma.name)
    for Y in modules if modules is not None else probe_modules(sigma.left_ring):
        minimal = unit_eta(sigma, Y)
        total = unit_eta(sigma, Y, unity=UnityChoice.TOTAL)
        compare_maps(report, Y.name, minimal, total)
    return report


def check_naturality(sigma: Bimodule) -> CheckReport:
    """Naturality squares of η and ζ for every basis map between probe modules."""
    report = CheckReport(check="adjunction:naturality", instance=sigma.name)
    dual = right_dual(sigma)
    ys = probe_modules(sigma.left_ring)
    for Y in ys:
        for Y2 in ys:
            for k, f in enumerate(hom_space(Y, Y2, side="right")):
                lifted = induced_map(tensor_with_identity(f, sigma), identity_map(dual), check=False)
                lhs = unit_eta(sigma, Y2) @ f
                rhs = lifted @ unit_eta(sigma, Y)
                compare_maps(report, f"eta[{Y.name}->{Y2.name}#{k}]", lhs, rhs)
    xs = probe_modules(sigma.right_ring)
    for X in xs:
        for X2 in xs:
            for k, f in enumerate(hom_space(X, X2, side="right")):
                lifted = induced_map(tensor_with_identity(f, dual), identity_map(sigma), check=False)
                lhs = f @ counit_zeta(sigma, X)
                rhs = counit_zeta(sigma, X2) @ lifted
                compare_maps(report, f"zeta[{X.name}->{X2.name}#{k}]", lhs, rhs)
    return report


# Dual of a tensor product


def dual_tensor_iso(W: Bimodule, sigma: Bimodule) -> LinearMap:
    """(W ⊗_B Σ)† → Σ† ⊗_B W†, φ ↦ Σ_l φ(w_l ⊗ −) ⊗ ω_l."""
    if W.right_ring is not sigma.left_ring:
        raise RingMismatchError(f"Cannot tensor {W.name} with {sigma.name}")
    require_dual_basis(sigma, sigma.left_ring.labels)
    w_basis = require_dual_basis(W, W.left_ring.labels)
    WS = tensor_over(W, sigma)
    source = right_dual(WS)
    sigma_dual, w_dual = right_dual(sigma), right_dual(W)
    target = tensor_over(sigma_dual, w_dual)
    columns = []
    for t in range(source.dim):
        column: SparseVector = {}
        for w, omega in w_basis.pairs:
            values: Dict[Tuple[int, int], Fraction] = {}
            for s in range(sigma.dim):
                for a, c in source.evaluate({t: ONE}, WS.pure(w, {s: ONE})).items():
                    values[(s, a)] = c
            vec_axpy(column, ONE, target.pure(sigma_dual.coordinates(values), omega))
        columns.append(column)
    return LinearMap(source, target, columns, name="dual_tensor")


def dual_tensor_inverse(W: Bimodule, sigma: Bimodule) -> LinearMap:
    """Σ† ⊗_B W† → (W ⊗_B Σ)†, ψ ⊗ ω ↦ [w ⊗ u ↦ ψ(ω(w) u)]."""
    WS = tensor_over(W, sigma)
    target = right_dual(WS)
    sigma_dual, w_dual = right_dual(sigma), right_dual(W)
    source = tensor_over(sigma_dual, w_dual)
    columns = []
    for p, q in source.factors:
        values: Dict[Tuple[int, int], Fraction] = {}
        for t, (w, s) in enumerate(WS.factors):
            inner = sigma.act_left(w_dual.evaluate({q: ONE}, {w: ONE}), {s: ONE})
            for a, c in sigma_dual.evaluate({p: ONE}, inner).items():
                values[(t, a)] = c
        columns.append(target.coordinates(values))
    return LinearMap(source, target, columns, name="dual_tensor^-1")


def check_dual_tensor_iso(W: Bimodule, sigma: Bimodule) -> CheckReport:
    """Dimensions, bijectivity, bilinearity and the explicit inverse."""
    report = CheckReport(check="dual_pair:iso", instance=f"{W.name}|{sigma.name}")
    forward = dual_tensor_iso(W, sigma)
    backward = dual_tensor_inverse(W, sigma)
    report.tick()
    if forward.source.dim != forward.target.dim:
        report.record("dimension", f"{forward.source.dim} != {forward.target.dim}")
    elif not forward.is_bijective():
        report.record("bijective", f"rank {forward.rank()} of {forward.source.dim}")
    record_linearity(report, "bilinear", forward)
    compare_maps(report, "inverse-source", backward @ forward, identity_map(forward.source))
    compare_maps(report, "inverse-target", forward @ backward, identity_map(forward.target))
    return report


# Base extension through the adjunction


def transported_comultiplication(sigma: Bimodule, D: Coring) -> LinearMap:
    """Δ of Σ† ⊗ D ⊗ Σ assembled as (η_P ⊗ D ⊗ Σ)(Σ† ⊗ Δ_D ⊗ Σ), P = Σ† ⊗ D."""
    dual = right_dual(sigma)
    Dc = D.carrier
    P = tensor_over(dual, Dc)
    C = tensor_over(P, sigma)
    eta_P = unit_eta(sigma, P)
    return (
        associator(C, P, sigma).forward
        @ tensor_with_identity(associator(C, dual, Dc).forward, sigma)
        @ tensor_with_identity(tensor_with_identity(eta_P, Dc), sigma)
        @ tensor_with_identity(associator(dual, Dc, Dc).backward, sigma)
        @ tensor_with_identity(identity_tensor(dual, D.comult), sigma)
    )


def transported_counit(sigma: Bimodule, D: Coring) -> LinearMap:
    """ε of Σ† ⊗ D ⊗ Σ as ev ∘ (r ⊗ Σ) ∘ (Σ† ⊗ ε_D ⊗ Σ)."""
    dual = right_dual(sigma)
    return (
        evaluation_map(sigma)
        @ tensor_with_identity(right_unitor(dual).forward, sigma)
        @ tensor_with_identity(identity_tensor(dual, D.counit), sigma)
    )


def check_transport_consistency(sigma: Bimodule, D: Coring) -> CheckReport:
    extended = base_extension(sigma, D)
    report = CheckReport(check="adjunction:transport", instance=extended.name)
    compare_maps(report, "comult", extended.comult, transported_comultiplication(sigma, D))
    compare_maps(report, "counit", extended.counit, transported_counit(sigma, D))
    return report


__all__ = [
    "unit_eta",
    "counit_zeta",
    "probe_modules",
    "check_triangle_identities",
    "check_unit_independence",
    "check_naturality",
    "dual_tensor_iso",
    "dual_tensor_inverse",
    "check_dual_tensor_iso",
    "transported_comultiplication",
    "transported_counit",
    "check_transport_consistency",
]
