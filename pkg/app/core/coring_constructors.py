"""
Explicit coring constructions: trivial, Sweedler, split, comatrix, base
extension along a bimodule, Rees and comonad-to-coring, together with the
checks that their comultiplications do not depend on the chosen unity.

Each constructor assembles Δ column by column on the canonical basis of its
carrier; canonical basis elements are pure tensors, so the defining formulas
apply to them directly.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from app.cache import get_cache
from app.errors import CoringLawError, MissingDualBasisError, MorphismCheckError, RingMismatchError
from app.core.exact_linalg import ONE, SparseVector, vec_axpy
from app.core.local_ring import GradedRing, RingMorphism, check_morphism
from app.core.unital_module import (
    Bimodule,
    DualBasis,
    Idempotent,
    LinearMap,
    direct_sum_module,
    dual_basis,
    greedy_generators,
    left_corner,
    regular_bimodule,
    restrict_scalars,
    right_dual,
)
from app.core.tensor_engine import identity_map, tensor_over
from app.core.coring_core import (
    Coring,
    CoringMorphism,
    check_coring,
    compare_maps,
)
from models.report import CheckReport

logger = logging.getLogger(__name__)

DualBases = Mapping[Tuple[str, ...], DualBasis]


class UnityChoice(Enum):
    """Which local unit the constructors insert between tensor legs."""

    MINIMAL = "minimal"
    TOTAL = "total"


def unity_labels(
    ring: GradedRing,
    needed: Sequence[str],
    unity: UnityChoice = UnityChoice.MINIMAL,
    extra: Sequence[str] = (),
) -> Tuple[str, ...]:
    """Generator labels of the unity used for elements supported on ``needed``."""
    if unity is UnityChoice.TOTAL:
        return ring.labels
    wanted = set(needed) | set(extra)
    return tuple(label for label in ring.labels if label in wanted)


def _variant_tag(unity: UnityChoice, extra: Sequence[str]) -> str:
    if unity is UnityChoice.TOTAL:
        return ",total"
    return f",+{'+'.join(extra)}" if extra else ""


def trivial_coring(A: GradedRing) -> Coring:
    """A as an A-coring: Δ(a) = a ⊗ e, ε = id."""

    def build() -> Tuple[GradedRing, Coring]:
        carrier = regular_bimodule(A)
        square = tensor_over(carrier, carrier)
        columns = [square.pure_basis(a, A.idempotents[b.right]) for a, b in enumerate(A.basis)]
        comult = LinearMap(carrier, square, columns, name="Delta")
        return A, Coring(f"trivial({A.name})", A, carrier, comult, identity_map(carrier))

    return get_cache("coring:trivial").get_or_create(id(A), build)[1]


def counit_morphism(C: Coring) -> CoringMorphism:
    """ε as a coring morphism C → trivial(A)."""
    return CoringMorphism(f"eps[{C.name}]", C, trivial_coring(C.ring), C.counit)


def sweedler_coring(
    psi: RingMorphism,
    unity: UnityChoice = UnityChoice.MINIMAL,
    extra: Sequence[str] = (),
    name: Optional[str] = None,
) -> Coring:
    """A ⊗_B A for ψ: B → A with Δ(a ⊗ a') = a ⊗ e ⊗ e ⊗ a', e = ψ(f)."""
    report = check_morphism(psi)
    if not report.passed:
        raise MorphismCheckError(f"Ring morphism {psi.name} fails its checks", report)
    A, B = psi.target, psi.source
    reg = regular_bimodule(A)
    L = restrict_scalars(reg, psi, "right")
    R = restrict_scalars(reg, psi, "left")
    carrier = tensor_over(L, R)
    square = tensor_over(carrier, carrier)

    comult_columns: List[SparseVector] = []
    counit_columns: List[SparseVector] = []
    for i, j in carrier.factors:
        labels = unity_labels(B, [L.basis[i].right], unity, extra)
        e = psi.apply(B.unit_vector(labels))
        comult_columns.append(square.pure(carrier.pure({i: ONE}, e), carrier.pure(e, {j: ONE})))
        counit_columns.append(A.product(i, j))
    comult = LinearMap(carrier, square, comult_columns, name="Delta")
    counit = LinearMap(carrier, reg, counit_columns, name="eps")
    coring = Coring(name or f"sweedler({psi.name}{_variant_tag(unity, extra)})", A, carrier, comult, counit)
    logger.debug("sweedler coring %s: carrier dimension %d", coring.name, carrier.dim)
    return coring


def split_coring(
    A: GradedRing,
    M: Bimodule,
    unity: UnityChoice = UnityChoice.MINIMAL,
    extra: Sequence[str] = (),
    name: Optional[str] = None,
) -> Coring:
    """A ⊕ M with Δ(a, m) = (a,0)⊗(e,0) + (0,m)⊗(e,0) + (e,0)⊗(0,m) and ε(a, m) = a."""
    if M.left_ring is not A or M.right_ring is not A:
        raise RingMismatchError(f"{M.name} is not an {A.name}-bimodule")
    reg = regular_bimodule(A)
    carrier = direct_sum_module(reg, M, name=f"{A.name}+{M.name}")
    square = tensor_over(carrier, carrier)
    offset = carrier.offsets[1]

    def unit_in_ring_part(labels: Sequence[str]) -> SparseVector:
        return carrier.inclusion_vector(0, A.unit_vector(labels))

    comult_columns: List[SparseVector] = []
    counit_columns: List[SparseVector] = []
    for a, b in enumerate(A.basis):
        e = unit_in_ring_part(unity_labels(A, [b.right], unity, extra))
        comult_columns.append(square.pure({a: ONE}, e))
        counit_columns.append({a: ONE})
    for k, m in enumerate(M.basis):
        e = unit_in_ring_part(unity_labels(A, [m.left, m.right], unity, extra))
        column = dict(square.pure({offset + k: ONE}, e))
        vec_axpy(column, ONE, square.pure(e, {offset + k: ONE}))
        comult_columns.append(column)
        counit_columns.append({})
    comult = LinearMap(carrier, square, comult_columns, name="Delta")
    counit = LinearMap(carrier, reg, counit_columns, name="eps")
    return Coring(name or f"split({A.name},{M.name})", A, carrier, comult, counit)


def require_dual_basis(sigma: Bimodule, labels: Tuple[str, ...]) -> DualBasis:
    """Dual basis of the labels-component of sigma; raises when the component is not projective."""
    basis = dual_basis(sigma, labels)
    if basis is None:
        raise MissingDualBasisError(labels, sigma.name)
    return basis


class _DualBasisBook:
    """Dual bases of sigma by unity, computed on demand and overridable."""

    def __init__(self, sigma: Bimodule, overrides: Optional[DualBases] = None) -> None:
        self.sigma = sigma
        self._bases: Dict[Tuple[str, ...], DualBasis] = dict(overrides or {})

    def __getitem__(self, labels: Tuple[str, ...]) -> DualBasis:
        if labels not in self._bases:
            self._bases[labels] = require_dual_basis(self.sigma, labels)
        return self._bases[labels]


def evaluation_map(sigma: Bimodule) -> LinearMap:
    """Σ† ⊗_B Σ → A, χ ⊗ u ↦ χ(u)."""
    dual = right_dual(sigma)
    carrier = tensor_over(dual, sigma)
    columns = [dual.evaluate({p: ONE}, {s: ONE}) for p, s in carrier.factors]
    return LinearMap(carrier, regular_bimodule(sigma.right_ring), columns, name="ev")


def comatrix_coring(
    sigma: Bimodule,
    dual_bases: Optional[DualBases] = None,
    unity: UnityChoice = UnityChoice.MINIMAL,
    name: Optional[str] = None,
) -> Coring:
    """Σ† ⊗_B Σ with Δ(χ ⊗ u) = Σ_i χ ⊗ u_i ⊗ v_i* ⊗ u and ε(χ ⊗ u) = χ(u)."""
    if dual_bases is None and unity is UnityChoice.MINIMAL and name is None:
        return get_cache("coring:comatrix").get_or_create(
            id(sigma), lambda: (sigma, _build_comatrix(sigma, None, unity, None))
        )[1]
    return _build_comatrix(sigma, dual_bases, unity, name)


def _build_comatrix(
    sigma: Bimodule,
    dual_bases: Optional[DualBases],
    unity: UnityChoice,
    name: Optional[str],
) -> Coring:
    A, B = sigma.right_ring, sigma.left_ring
    dual = right_dual(sigma)
    carrier = tensor_over(dual, sigma)
    square = tensor_over(carrier, carrier)
    book = _DualBasisBook(sigma, dual_bases)

    comult_columns: List[SparseVector] = []
    for p, s in carrier.factors:
        labels = unity_labels(B, [sigma.basis[s].left], unity)
        column: SparseVector = {}
        for u, v in book[labels].pairs:
            vec_axpy(column, ONE, square.pure(carrier.pure({p: ONE}, u), carrier.pure(v, {s: ONE})))
        comult_columns.append(column)
    comult = LinearMap(carrier, square, comult_columns, name="Delta")
    coring = Coring(name or f"comatrix({sigma.name})", A, carrier, comult, evaluation_map(sigma))
    logger.debug("comatrix coring %s: carrier dimension %d", coring.name, carrier.dim)
    return coring


def base_extension(
    sigma: Bimodule,
    D: Coring,
    unity: UnityChoice = UnityChoice.MINIMAL,
    dual_bases: Optional[DualBases] = None,
    name: Optional[str] = None,
) -> Coring:
    """Σ† ⊗_B D ⊗_B Σ, the B-coring D transported to A along Σ."""
    A, B = sigma.right_ring, sigma.left_ring
    if D.ring is not B:
        raise RingMismatchError(f"{D.name} is a coring over {D.ring.name}, expected {B.name}")
    dual = right_dual(sigma)
    middle = tensor_over(dual, D.carrier)
    carrier = tensor_over(middle, sigma)
    square = tensor_over(carrier, carrier)
    D_square = D.square
    book = _DualBasisBook(sigma, dual_bases)

    comult_columns: List[SparseVector] = []
    counit_columns: List[SparseVector] = []
    for q, s in carrier.factors:
        phi, d = middle.factors[q]
        column: SparseVector = {}
        for k, c in D.comult.columns[d].items():
            p1, p2 = D_square.factors[k]
            labels = unity_labels(B, [D.carrier.basis[p1].right], unity)
            for u, v in book[labels].pairs:
                first = carrier.pure(middle.pure({phi: ONE}, {p1: ONE}), u)
                second = carrier.pure(middle.pure(v, {p2: ONE}), {s: ONE})
                vec_axpy(column, c, square.pure(first, second))
        comult_columns.append(column)
        counit_columns.append(dual.evaluate({phi: ONE}, sigma.act_left(D.counit.columns[d], {s: ONE})))
    comult = LinearMap(carrier, square, comult_columns, name="Delta")
    counit = LinearMap(carrier, regular_bimodule(A), counit_columns, name="eps")
    return Coring(name or f"base_ext({sigma.name},{D.name})", A, carrier, comult, counit)


def base_extension_comatrix_iso(sigma: Bimodule) -> CoringMorphism:
    """Σ† ⊗ B ⊗ Σ → Σ† ⊗ Σ, φ ⊗ b ⊗ u ↦ φ ⊗ bu."""
    trivial = trivial_coring(sigma.left_ring)
    extended = base_extension(sigma, trivial)
    comatrix = comatrix_coring(sigma)
    middle = extended.carrier.left
    columns = []
    for q, s in extended.carrier.factors:
        phi, b = middle.factors[q]
        columns.append(comatrix.carrier.pure({phi: ONE}, sigma.left_act(b, s)))
    iso = LinearMap(extended.carrier, comatrix.carrier, columns, name="collapse")
    return CoringMorphism(f"{extended.name}->{comatrix.name}", extended, comatrix, iso)


@dataclass(frozen=True)
class CounitCertificate:
    """Rank data of the Rees counit Ae ⊗ eA → A."""

    rank: int
    carrier_dim: int
    ring_dim: int

    @property
    def bijective(self) -> bool:
        return self.rank == self.carrier_dim == self.ring_dim


def rees_coring(A: GradedRing, e: Idempotent) -> Tuple[Coring, CounitCertificate]:
    """Comatrix coring of eA over (eAe, A) and the rank certificate of its counit."""
    labels = A.generator_labels(e)
    sigma = left_corner(A, labels, over="corner")
    coring = comatrix_coring(sigma, name=f"rees({A.name},{','.join(labels)})")
    certificate = CounitCertificate(coring.counit.rank(), coring.carrier.dim, A.dim)
    logger.debug("rees coring %s: %s", coring.name, certificate)
    return coring, certificate


def check_rees_counit(A: GradedRing, e: Idempotent) -> CheckReport:
    coring, certificate = rees_coring(A, e)
    report = CheckReport(check="coring:rees-counit", instance=coring.name)
    report.tick()
    if not certificate.bijective:
        report.record(
            "counit",
            f"rank {certificate.rank} for carrier dimension {certificate.carrier_dim} "
            f"and ring dimension {certificate.ring_dim}",
        )
    return report


def comonad_to_coring(N: Bimodule, delta: LinearMap, xi: LinearMap, name: str = "comonad") -> Coring:
    """Coring from the value at A of a comonad −⊗N: Δ = δ_A, ε = ξ_A."""
    if N.left_ring is not N.right_ring:
        raise RingMismatchError(f"{N.name} is not a bimodule over a single ring")
    coring = Coring(name, N.right_ring, N, delta, xi)
    report = check_coring(coring)
    if not report.passed:
        raise CoringLawError(f"{name}: comonad data does not satisfy the coring laws", report)
    return coring


# Independence of the chosen unity


def check_sweedler_unity_independence(psi: RingMorphism) -> CheckReport:
    """Δ of A ⊗_B A with the minimal unity against every larger one."""
    base = sweedler_coring(psi)
    report = CheckReport(check="coring:unity-independence", instance=base.name)
    compare_maps(report, "total", base.comult, sweedler_coring(psi, UnityChoice.TOTAL).comult)
    for label in psi.source.labels:
        other = sweedler_coring(psi, extra=[label])
        compare_maps(report, f"extra[{label}]", base.comult, other.comult)
    return report


def check_split_unity_independence(A: GradedRing, M: Bimodule) -> CheckReport:
    base = split_coring(A, M)
    report = CheckReport(check="coring:unity-independence", instance=base.name)
    compare_maps(report, "total", base.comult, split_coring(A, M, UnityChoice.TOTAL).comult)
    for label in A.labels:
        compare_maps(report, f"extra[{label}]", base.comult, split_coring(A, M, extra=[label]).comult)
    return report


def alternative_dual_bases(sigma: Bimodule) -> Dict[Tuple[str, ...], DualBasis]:
    """Dual bases re-solved from the generators g_t = u_t + u_{t+1} (last one kept)."""
    bases: Dict[Tuple[str, ...], DualBasis] = {}
    for label in sigma.left_ring.labels:
        domain = sigma.basis_in(left=label)
        if not domain:
            continue
        generators = greedy_generators(sigma, domain)
        shifted = []
        for t, g in enumerate(generators):
            combined = dict(g)
            if t + 1 < len(generators):
                vec_axpy(combined, ONE, generators[t + 1])
            shifted.append(combined)
        basis = dual_basis(sigma, (label,), generators=shifted)
        if basis is None:
            raise MissingDualBasisError((label,), sigma.name)
        bases[(label,)] = basis
    return bases


def check_comatrix_independence(sigma: Bimodule) -> CheckReport:
    """Comatrix Δ under the minimal unity, the total unity and a second family of dual bases."""
    base = comatrix_coring(sigma)
    report = CheckReport(check="coring:unity-independence", instance=base.name)
    compare_maps(report, "total", base.comult, comatrix_coring(sigma, unity=UnityChoice.TOTAL).comult)
    alternative = comatrix_coring(sigma, dual_bases=alternative_dual_bases(sigma))
    compare_maps(report, "dual-basis", base.comult, alternative.comult)
    return report


__all__ = [
    "UnityChoice",
    "CounitCertificate",
    "unity_labels",
    "trivial_coring",
    "counit_morphism",
    "sweedler_coring",
    "split_coring",
    "require_dual_basis",
    "evaluation_map",
    "comatrix_coring",
    "base_extension",
    "base_extension_comatrix_iso",
    "rees_coring",
    "check_rees_counit",
    "comonad_to_coring",
    "check_sweedler_unity_independence",
    "check_split_unity_independence",
    "alternative_dual_bases",
    "check_comatrix_independence",
]
