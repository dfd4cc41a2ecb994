"""
Tensor products over graded rings as explicit quotients, the canonical maps
gamma / tau / upsilon / theta, induced maps and the coherence isomorphisms.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Tuple

from app.cache import cache_lock, get_cache
from app.errors import BalancingError, RingMismatchError
from app.core.exact_linalg import ONE, QuotientSpace, SparseVector, vec_axpy
from app.core.local_ring import BasisElement, GradedRing
from app.core.unital_module import (
    Bimodule,
    Idempotent,
    LinearMap,
    left_corner,
    left_corner_module,
    regular_bimodule,
)

logger = logging.getLogger(__name__)


class TensorSpace(Bimodule):
    """M ⊗_A N for a (C, A)-bimodule M and an (A, B)-bimodule N.

    The ambient space has one coordinate per basis pair (m, n) with matching
    middle label; the canonical basis consists of the non-pivot pairs of the
    balancing relations, so every basis element is a pure tensor.
    """

    def __init__(self, left: Bimodule, right: Bimodule) -> None:
        if left.right_ring is not right.left_ring:
            raise RingMismatchError(
                f"Cannot tensor {left.name} (right ring {left.right_ring.name}) with "
                f"{right.name} (left ring {right.left_ring.name})"
            )
        self.left = left
        self.right = right
        ring = left.right_ring
        self.ambient: List[Tuple[int, int]] = [
            (i, j)
            for i in range(left.dim)
            for j in range(right.dim)
            if left.basis[i].right == right.basis[j].left
        ]
        self._ambient_index: Dict[Tuple[int, int], int] = {pair: k for k, pair in enumerate(self.ambient)}

        self.relations: List[SparseVector] = []
        for i in range(left.dim):
            for a in ring.basis_in(left=left.basis[i].right):
                ma = left.right_act(i, a)
                for j in right.basis_in(left=ring.basis[a].right):
                    relation: SparseVector = {}
                    for i2, c in ma.items():
                        vec_axpy(relation, c, {self._ambient_index[(i2, j)]: ONE})
                    for j2, c in right.left_act(a, j).items():
                        vec_axpy(relation, -c, {self._ambient_index[(i, j2)]: ONE})
                    if relation:
                        self.relations.append(relation)
        self.quotient = QuotientSpace.build(len(self.ambient), self.relations)
        self.factors: Tuple[Tuple[int, int], ...] = tuple(self.ambient[k] for k in self.quotient.free)
        basis = [
            BasisElement(
                f"{left.basis[i].name}⊗{right.basis[j].name}",
                left.basis[i].left,
                right.basis[j].right,
            )
            for i, j in self.factors
        ]
        self._pure_memo: Dict[Tuple[int, int], SparseVector] = {}
        super().__init__(f"({left.name}⊗{right.name})", left.left_ring, right.right_ring, basis)
        logger.debug(
            "tensor %s ⊗ %s: ambient %d, %d relations, dimension %d",
            left.name,
            right.name,
            len(self.ambient),
            len(self.relations),
            self.dim,
        )

    @property
    def ring(self) -> GradedRing:
        return self.left.right_ring

    def pure_basis(self, i: int, j: int) -> SparseVector:
        """Coordinates of basis(m_i) ⊗ basis(n_j)."""
        key = (i, j)
        cached = self._pure_memo.get(key)
        if cached is not None:
            return cached
        ambient = self._ambient_index.get(key)
        value = {} if ambient is None else self.quotient.project({ambient: ONE})
        with cache_lock():
            self._pure_memo[key] = value
        return value

    def pure(self, x: Mapping[int, Fraction], y: Mapping[int, Fraction]) -> SparseVector:
        """Coordinates of x ⊗ y for vectors x of M and y of N."""
        result: SparseVector = {}
        for i, a in x.items():
            for j, b in y.items():
                value = self.pure_basis(i, j)
                if value:
                    vec_axpy(result, a * b, value)
        return result

    def _derive_left(self, c: int, t: int) -> SparseVector:
        i, j = self.factors[t]
        return self.pure(self.left.left_act(c, i), {j: ONE})

    def _derive_right(self, t: int, b: int) -> SparseVector:
        i, j = self.factors[t]
        return self.pure({i: ONE}, self.right.right_act(j, b))


def tensor_over(M: Bimodule, N: Bimodule, ring: Optional[GradedRing] = None) -> TensorSpace:
    """M ⊗_A N, memoized by the identity of the factors."""
    if ring is not None and (M.right_ring is not ring or N.left_ring is not ring):
        raise RingMismatchError(f"{M.name} ⊗ {N.name} is not a tensor product over {ring.name}")
    if M.right_ring is not N.left_ring:
        raise RingMismatchError(
            f"Right ring {M.right_ring.name} of {M.name} differs from left ring {N.left_ring.name} of {N.name}"
        )
    return get_cache("tensor").get_or_create((id(M), id(N)), lambda: (M, N, TensorSpace(M, N)))[2]


def induced_map(
    f: LinearMap,
    g: LinearMap,
    source: Optional[TensorSpace] = None,
    target: Optional[TensorSpace] = None,
    check: bool = True,
) -> LinearMap:
    """f ⊗ g between the tensor products of their sources and targets."""
    source = source or tensor_over(f.source, g.source)
    target = target or tensor_over(f.target, g.target)
    columns = [target.pure(f.columns[i], g.columns[j]) for i, j in source.factors]
    if check:
        for relation in source.relations:
            image: SparseVector = {}
            for k, c in relation.items():
                i, j = source.ambient[k]
                vec_axpy(image, c, target.pure(f.columns[i], g.columns[j]))
            if image:
                witness = " + ".join(
                    f"{c}*({source.left.basis[source.ambient[k][0]].name}⊗"
                    f"{source.right.basis[source.ambient[k][1]].name})"
                    for k, c in sorted(relation.items())
                )
                raise BalancingError(f"{f.name or 'f'} ⊗ {g.name or 'g'} does not respect {witness}", witness)
    return LinearMap(source, target, columns, name=f"({f.name}⊗{g.name})")


def _labels_of(ring: GradedRing, e: Idempotent) -> Tuple[str, ...]:
    return ring.generator_labels(e)


def gamma(e: Idempotent, X: Bimodule) -> LinearMap:
    """x ↦ e ⊗ x, from X into eA ⊗_A X."""
    ring = X.left_ring
    labels = _labels_of(ring, e)
    eA = left_corner(ring, labels)
    target = tensor_over(eA, X)
    unit = {eA.index[ring.basis[ring.idempotents[label]].name]: ONE for label in labels}
    return LinearMap(X, target, [target.pure(unit, {x: ONE}) for x in range(X.dim)], name=f"gamma_{X.name}")


def tau(e: Idempotent, X: Bimodule) -> LinearMap:
    """ea ⊗ x ↦ eax, from eA ⊗_A X into X."""
    ring = X.left_ring
    eA = left_corner(ring, _labels_of(ring, e))
    source = tensor_over(eA, X)
    columns = []
    for i, j in source.factors:
        a = ring.index[eA.basis[i].name]
        columns.append(X.left_act(a, j))
    return LinearMap(source, X, columns, name=f"tau_{X.name}")


def upsilon(e: Idempotent, N: Bimodule) -> LinearMap:
    """The corner isomorphism eN → eA ⊗_A N, n ↦ e ⊗ n."""
    ring = N.left_ring
    labels = _labels_of(ring, e)
    eN = left_corner_module(N, labels)
    full = gamma(labels, N)
    columns = [full.columns[N.index[b.name]] for b in eN.basis]
    return LinearMap(eN, full.target, columns, name=f"Upsilon_{N.name}")


def theta(e: Idempotent, N: Bimodule) -> LinearMap:
    """Inverse of upsilon: ea ⊗ n ↦ ean in eN."""
    ring = N.left_ring
    labels = _labels_of(ring, e)
    eN = left_corner_module(N, labels)
    full = tau(labels, N)
    columns = [{eN.index[N.basis[k].name]: c for k, c in column.items()} for column in full.columns]
    return LinearMap(full.source, eN, columns, name=f"Theta_{N.name}")


@dataclass(frozen=True)
class CanonicalIso:
    """A canonical isomorphism together with its inverse."""

    forward: LinearMap
    backward: LinearMap

    def verify(self) -> List[str]:
        """Basis witnesses where the two maps fail to be mutually inverse."""
        failures = []
        there_and_back = self.backward.compose(self.forward)
        back_and_there = self.forward.compose(self.backward)
        source, target = self.forward.source, self.forward.target
        for k in there_and_back.differing_columns(LinearMap.identity(source)):
            failures.append(f"source:{source.basis[k].name}")
        for k in back_and_there.differing_columns(LinearMap.identity(target)):
            failures.append(f"target:{target.basis[k].name}")
        return failures


def associator(M: Bimodule, N: Bimodule, P: Bimodule) -> CanonicalIso:
    """(M ⊗ N) ⊗ P ≅ M ⊗ (N ⊗ P) on pure tensors."""

    def build() -> Tuple[Bimodule, Bimodule, Bimodule, CanonicalIso]:
        MN = tensor_over(M, N)
        NP = tensor_over(N, P)
        left = tensor_over(MN, P)
        right = tensor_over(M, NP)
        forward = []
        for t, p in left.factors:
            i, j = MN.factors[t]
            forward.append(right.pure({i: ONE}, NP.pure_basis(j, p)))
        backward = []
        for i, t in right.factors:
            j, p = NP.factors[t]
            backward.append(left.pure(MN.pure_basis(i, j), {p: ONE}))
        iso = CanonicalIso(
            LinearMap(left, right, forward, name="assoc"),
            LinearMap(right, left, backward, name="assoc^-1"),
        )
        return M, N, P, iso

    return get_cache("associator").get_or_create((id(M), id(N), id(P)), build)[3]


def left_unitor(N: Bimodule) -> CanonicalIso:
    """A ⊗_A N ≅ N, a ⊗ n ↦ an."""

    def build() -> Tuple[Bimodule, CanonicalIso]:
        ring = N.left_ring
        A = regular_bimodule(ring)
        source = tensor_over(A, N)
        forward = [N.left_act(a, n) for a, n in source.factors]
        backward = [source.pure_basis(ring.idempotents[b.left], n) for n, b in enumerate(N.basis)]
        return N, CanonicalIso(LinearMap(source, N, forward, name="l"), LinearMap(N, source, backward, name="l^-1"))

    return get_cache("left_unitor").get_or_create(id(N), build)[1]


def right_unitor(M: Bimodule) -> CanonicalIso:
    """M ⊗_A A ≅ M, m ⊗ a ↦ ma."""

    def build() -> Tuple[Bimodule, CanonicalIso]:
        ring = M.right_ring
        A = regular_bimodule(ring)
        source = tensor_over(M, A)
        forward = [M.right_act(m, a) for m, a in source.factors]
        backward = [source.pure_basis(m, ring.idempotents[b.right]) for m, b in enumerate(M.basis)]
        return M, CanonicalIso(LinearMap(source, M, forward, name="r"), LinearMap(M, source, backward, name="r^-1"))

    return get_cache("right_unitor").get_or_create(id(M), build)[1]


def identity_map(module: Bimodule) -> LinearMap:
    """Shared identity map, memoized per module."""
    return get_cache("identity_map").get_or_create(id(module), lambda: (module, LinearMap.identity(module)))[1]


def tensor_with_identity(f: LinearMap, module: Bimodule) -> LinearMap:
    """f ⊗ module."""
    return induced_map(f, identity_map(module), check=False)


def identity_tensor(module: Bimodule, g: LinearMap) -> LinearMap:
    """module ⊗ g."""
    return induced_map(identity_map(module), g, check=False)


__all__ = [
    "TensorSpace",
    "CanonicalIso",
    "tensor_over",
    "induced_map",
    "gamma",
    "tau",
    "upsilon",
    "theta",
    "associator",
    "left_unitor",
    "right_unitor",
    "identity_map",
    "tensor_with_identity",
    "identity_tensor",
]
