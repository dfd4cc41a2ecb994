"""
Unital bimodules over graded rings, linear maps between them, hom spaces,
right duals and dual bases.

A (B, A)-bimodule basis element with ``left = j`` and ``right = i`` lies in
``f_j · M · e_i``.  One-sided right A-modules are (Q, A)-bimodules whose left
labels are all ``'*'``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Callable, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from app.cache import cache_lock, get_cache
from app.errors import DimensionMismatchError, RingMismatchError
from app.core.exact_linalg import (
    ONE,
    Matrix,
    RowEchelon,
    SparseVector,
    solve_sparse,
    vec_axpy,
    vec_scale,
)
from app.core.local_ring import (
    BasisElement,
    GradedRing,
    RingElement,
    RingMorphism,
    corner,
    format_vector,
    rational_field,
)
from models.report import CheckReport

logger = logging.getLogger(__name__)

ActionTable = Mapping[Tuple[int, int], Mapping[int, Fraction]]
Idempotent = Union[RingElement, Iterable[str]]


class Bimodule:
    """Finite-dimensional unital (B, A)-bimodule with homogeneous basis.

    Explicit tables override everything; otherwise generator idempotents act as
    graded identities and subclasses may derive the remaining constants.
    """

    def __init__(
        self,
        name: str,
        left_ring: GradedRing,
        right_ring: GradedRing,
        basis: Sequence[BasisElement],
        left_action: Optional[ActionTable] = None,
        right_action: Optional[ActionTable] = None,
    ) -> None:
        self.name = name
        self.left_ring = left_ring
        self.right_ring = right_ring
        self.basis: Tuple[BasisElement, ...] = tuple(basis)
        self.index: Dict[str, int] = {b.name: i for i, b in enumerate(self.basis)}
        left_labels, right_labels = set(left_ring.labels), set(right_ring.labels)
        for element in self.basis:
            if element.left not in left_labels or element.right not in right_labels:
                raise DimensionMismatchError(
                    f"Basis element {element.name} of {name} is graded outside "
                    f"({left_ring.name}, {right_ring.name})"
                )
        self._left_table: Dict[Tuple[int, int], SparseVector] = {
            key: dict(value) for key, value in (left_action or {}).items()
        }
        self._right_table: Dict[Tuple[int, int], SparseVector] = {
            key: dict(value) for key, value in (right_action or {}).items()
        }
        self._left_memo: Dict[Tuple[int, int], SparseVector] = {}
        self._right_memo: Dict[Tuple[int, int], SparseVector] = {}

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.name!r}, dim={self.dim})"

    @property
    def dim(self) -> int:
        return len(self.basis)

    def basis_in(self, left: Optional[str] = None, right: Optional[str] = None) -> List[int]:
        return [
            k
            for k, b in enumerate(self.basis)
            if (left is None or b.left == left) and (right is None or b.right == right)
        ]

    def right_act(self, m: int, a: int) -> SparseVector:
        """Basis element m times ring basis element a."""
        if self.basis[m].right != self.right_ring.basis[a].left:
            return {}
        key = (m, a)
        if key in self._right_table:
            return self._right_table[key]
        if a == self.right_ring.idempotents[self.basis[m].right]:
            return {m: ONE}
        with cache_lock():
            if key not in self._right_memo:
                self._right_memo[key] = self._derive_right(m, a)
            return self._right_memo[key]

    def left_act(self, b: int, m: int) -> SparseVector:
        """Ring basis element b times basis element m."""
        if self.left_ring.basis[b].right != self.basis[m].left:
            return {}
        key = (b, m)
        if key in self._left_table:
            return self._left_table[key]
        if b == self.left_ring.idempotents[self.basis[m].left]:
            return {m: ONE}
        with cache_lock():
            if key not in self._left_memo:
                self._left_memo[key] = self._derive_left(b, m)
            return self._left_memo[key]

    def _derive_right(self, m: int, a: int) -> SparseVector:
        return {}

    def _derive_left(self, b: int, m: int) -> SparseVector:
        return {}

    def act_right(self, v: Mapping[int, Fraction], w: Mapping[int, Fraction]) -> SparseVector:
        result: SparseVector = {}
        for m, x in v.items():
            for a, y in w.items():
                prod = self.right_act(m, a)
                if prod:
                    vec_axpy(result, x * y, prod)
        return result

    def act_left(self, w: Mapping[int, Fraction], v: Mapping[int, Fraction]) -> SparseVector:
        result: SparseVector = {}
        for b, y in w.items():
            for m, x in v.items():
                prod = self.left_act(b, m)
                if prod:
                    vec_axpy(result, x * y, prod)
        return result

    def format(self, vector: Mapping[int, Fraction]) -> str:
        return format_vector(vector, self.basis)

    def vector(self, coords: Mapping[str, Fraction]) -> SparseVector:
        return {self.index[name]: Fraction(c) for name, c in coords.items() if c}

    def right_action_table(self) -> Dict[Tuple[int, int], SparseVector]:
        """Every nonzero right action constant, including the identities."""
        table = {}
        for m in range(self.dim):
            for a in self.right_ring.basis_in(left=self.basis[m].right):
                value = self.right_act(m, a)
                if value:
                    table[(m, a)] = value
        return table

    def left_action_table(self) -> Dict[Tuple[int, int], SparseVector]:
        table = {}
        for m in range(self.dim):
            for b in self.left_ring.basis_in(right=self.basis[m].left):
                value = self.left_act(b, m)
                if value:
                    table[(b, m)] = value
        return table


def verify_module(M: Bimodule, corner_labels: Optional[Iterable[str]] = None) -> CheckReport:
    """Action associativity, compatibility, gradedness and unitality."""
    report = CheckReport(check="module:verify", instance=M.name)
    A, B = M.right_ring, M.left_ring
    allowed = set(corner_labels) if corner_labels is not None else None
    elements = [m for m in range(M.dim) if allowed is None or M.basis[m].right in allowed]

    for m in elements:
        bm = M.basis[m]
        report.tick()
        if M.right_act(m, A.idempotents[bm.right]) != {m: ONE}:
            report.record(f"{bm.name}*e[{bm.right}]", "right unit does not fix the element")
        if M.left_act(B.idempotents[bm.left], m) != {m: ONE}:
            report.record(f"e[{bm.left}]*{bm.name}", "left unit does not fix the element")

        for a in A.basis_in(left=bm.right):
            product = M.right_act(m, a)
            wanted = (bm.left, A.basis[a].right)
            if any((M.basis[k].left, M.basis[k].right) != wanted for k in product):
                report.record(f"{bm.name}*{A.basis[a].name}", "right action leaves its component")
            for a2 in A.basis_in(left=A.basis[a].right):
                report.tick()
                lhs = M.act_right(product, {a2: ONE})
                rhs = M.act_right({m: ONE}, A.product(a, a2))
                if lhs != rhs:
                    report.record(
                        f"({bm.name},{A.basis[a].name},{A.basis[a2].name})",
                        f"(ma)a' = {M.format(lhs)} but m(aa') = {M.format(rhs)}",
                    )

        for b in B.basis_in(right=bm.left):
            product = M.left_act(b, m)
            wanted = (B.basis[b].left, bm.right)
            if any((M.basis[k].left, M.basis[k].right) != wanted for k in product):
                report.record(f"{B.basis[b].name}*{bm.name}", "left action leaves its component")
            for b2 in B.basis_in(right=B.basis[b].left):
                report.tick()
                lhs = M.act_left({b2: ONE}, product)
                rhs = M.act_left(B.product(b2, b), {m: ONE})
                if lhs != rhs:
                    report.record(
                        f"({B.basis[b2].name},{B.basis[b].name},{bm.name})",
                        f"b'(bm) = {M.format(lhs)} but (b'b)m = {M.format(rhs)}",
                    )
            for a in A.basis_in(left=bm.right):
                report.tick()
                lhs = M.act_right(product, {a: ONE})
                rhs = M.act_left({b: ONE}, M.right_act(m, a))
                if lhs != rhs:
                    report.record(
                        f"({B.basis[b].name},{bm.name},{A.basis[a].name})",
                        f"(bm)a = {M.format(lhs)} but b(ma) = {M.format(rhs)}",
                    )
    return report


class LinearMap:
    """Q-linear map stored as sparse columns, one per source basis element."""

    def __init__(self, source: Bimodule, target: Bimodule, columns: Sequence[Mapping[int, Fraction]], name: str = "") -> None:
        if len(columns) != source.dim:
            raise DimensionMismatchError(
                f"Map {name or '?'} has {len(columns)} columns for a source of dimension {source.dim}"
            )
        self.source = source
        self.target = target
        self.name = name
        self.columns: Tuple[SparseVector, ...] = tuple(dict(c) for c in columns)
        for column in self.columns:
            for index in column:
                if index >= target.dim:
                    raise DimensionMismatchError(
                        f"Map {name or '?'} has an entry at {index} in a target of dimension {target.dim}"
                    )

    def __repr__(self) -> str:
        return f"LinearMap({self.name or '?'}: {self.source.name} -> {self.target.name})"

    @classmethod
    def identity(cls, module: Bimodule) -> "LinearMap":
        return cls(module, module, [{i: ONE} for i in range(module.dim)], name=f"id_{module.name}")

    @classmethod
    def zero(cls, source: Bimodule, target: Bimodule) -> "LinearMap":
        return cls(source, target, [{} for _ in range(source.dim)], name="0")

    @classmethod
    def from_function(
        cls, source: Bimodule, target: Bimodule, fn: Callable[[int], Mapping[int, Fraction]], name: str = ""
    ) -> "LinearMap":
        return cls(source, target, [fn(i) for i in range(source.dim)], name=name)

    @classmethod
    def from_matrix(cls, source: Bimodule, target: Bimodule, matrix: Matrix, name: str = "") -> "LinearMap":
        if (matrix.rows, matrix.cols) != (target.dim, source.dim):
            raise DimensionMismatchError(
                f"Matrix {matrix.rows}x{matrix.cols} for a map {source.dim} -> {target.dim}"
            )
        return cls(source, target, matrix.columns(), name=name)

    def __call__(self, vector: Mapping[int, Fraction]) -> SparseVector:
        result: SparseVector = {}
        for index, coeff in vector.items():
            vec_axpy(result, coeff, self.columns[index])
        return result

    def compose(self, other: "LinearMap") -> "LinearMap":
        """self after other."""
        if other.target is not self.source:
            raise DimensionMismatchError(
                f"Cannot compose {self.name or '?'} ({self.source.name}) after "
                f"{other.name or '?'} ({other.target.name})"
            )
        return LinearMap(other.source, self.target, [self(c) for c in other.columns], name=f"{self.name}.{other.name}")

    def __matmul__(self, other: "LinearMap") -> "LinearMap":
        return self.compose(other)

    def _check_parallel(self, other: "LinearMap") -> None:
        if other.source.dim != self.source.dim or other.target.dim != self.target.dim:
            raise DimensionMismatchError(
                f"Maps {self.source.dim}->{self.target.dim} and {other.source.dim}->{other.target.dim} are not parallel"
            )

    def __add__(self, other: "LinearMap") -> "LinearMap":
        self._check_parallel(other)
        return LinearMap(self.source, self.target, [vec_axpy(dict(a), ONE, b) for a, b in zip(self.columns, other.columns)])

    def __sub__(self, other: "LinearMap") -> "LinearMap":
        self._check_parallel(other)
        return LinearMap(self.source, self.target, [vec_axpy(dict(a), -ONE, b) for a, b in zip(self.columns, other.columns)])

    def scale(self, coeff: Union[int, Fraction]) -> "LinearMap":
        return LinearMap(self.source, self.target, [vec_scale(Fraction(coeff), c) for c in self.columns], name=self.name)

    def differing_columns(self, other: "LinearMap") -> List[int]:
        self._check_parallel(other)
        return [i for i, (a, b) in enumerate(zip(self.columns, other.columns)) if a != b]

    def equals(self, other: "LinearMap") -> bool:
        return not self.differing_columns(other)

    def is_zero(self) -> bool:
        return all(not c for c in self.columns)

    def matrix(self) -> Matrix:
        return Matrix.from_columns(self.columns, self.target.dim)

    def rank(self) -> int:
        return RowEchelon(self.target.dim).extend(self.columns).rank

    def is_bijective(self) -> bool:
        return self.source.dim == self.target.dim and self.rank() == self.source.dim

    def linearity_failures(self, side: str = "both") -> List[str]:
        """Witnesses where the map fails to commute with the ring actions."""
        failures: List[str] = []
        src, tgt = self.source, self.target
        if side in ("right", "both"):
            if src.right_ring is not tgt.right_ring:
                raise RingMismatchError(f"{self.name or 'map'}: right rings differ")
            A = src.right_ring
            for m in range(src.dim):
                image = self.columns[m]
                labels = {src.basis[m].right} | {tgt.basis[k].right for k in image}
                for a in range(A.dim):
                    if A.basis[a].left not in labels:
                        continue
                    if self(src.right_act(m, a)) != tgt.act_right(image, {a: ONE}):
                        failures.append(f"f({src.basis[m].name}*{A.basis[a].name})")
        if side in ("left", "both"):
            if src.left_ring is not tgt.left_ring:
                raise RingMismatchError(f"{self.name or 'map'}: left rings differ")
            B = src.left_ring
            for m in range(src.dim):
                image = self.columns[m]
                labels = {src.basis[m].left} | {tgt.basis[k].left for k in image}
                for b in range(B.dim):
                    if B.basis[b].right not in labels:
                        continue
                    if self(src.left_act(b, m)) != tgt.act_left({b: ONE}, image):
                        failures.append(f"f({B.basis[b].name}*{src.basis[m].name})")
        return failures


def hom_space(M: Bimodule, N: Bimodule, side: str = "right") -> List[LinearMap]:
    """Basis of the maps M -> N that are linear on the given side(s)."""
    if side not in ("right", "left", "both"):
        raise ValueError(f"Unknown linearity side {side!r}")
    if side in ("right", "both") and M.right_ring is not N.right_ring:
        raise RingMismatchError(f"Right rings of {M.name} and {N.name} differ")
    if side in ("left", "both") and M.left_ring is not N.left_ring:
        raise RingMismatchError(f"Left rings of {M.name} and {N.name} differ")

    def compatible(m: int, n: int) -> bool:
        bm, bn = M.basis[m], N.basis[n]
        if side in ("right", "both") and bm.right != bn.right:
            return False
        if side in ("left", "both") and bm.left != bn.left:
            return False
        return True

    unknowns = [(m, n) for m in range(M.dim) for n in range(N.dim) if compatible(m, n)]
    position = {pair: k for k, pair in enumerate(unknowns)}
    targets_of: Dict[int, List[int]] = {}
    for m, n in unknowns:
        targets_of.setdefault(m, []).append(n)

    rows: List[SparseVector] = []

    def add_constraint(applied: Mapping[int, Fraction], source_m: int, act: Callable[[int], SparseVector]) -> None:
        # f(applied) - act(f(source_m)) = 0, one row per target coordinate
        by_coord: Dict[int, SparseVector] = {}
        for m2, c in applied.items():
            for n in targets_of.get(m2, []):
                vec_axpy(by_coord.setdefault(n, {}), c, {position[(m2, n)]: ONE})
        for n in targets_of.get(source_m, []):
            for n2, c in act(n).items():
                vec_axpy(by_coord.setdefault(n2, {}), -c, {position[(source_m, n)]: ONE})
        rows.extend(row for row in by_coord.values() if row)

    if side in ("right", "both"):
        A = M.right_ring
        for m in range(M.dim):
            for a in A.basis_in(left=M.basis[m].right):
                add_constraint(M.right_act(m, a), m, lambda n, a=a: N.right_act(n, a))
    if side in ("left", "both"):
        B = M.left_ring
        for m in range(M.dim):
            for b in B.basis_in(right=M.basis[m].left):
                add_constraint(M.left_act(b, m), m, lambda n, b=b: N.left_act(b, n))

    echelon = RowEchelon(len(unknowns)).extend(rows)
    maps = []
    for vector in echelon.kernel_vectors():
        columns: List[SparseVector] = [{} for _ in range(M.dim)]
        for k, c in vector.items():
            m, n = unknowns[k]
            columns[m][n] = c
        maps.append(LinearMap(M, N, columns, name=f"hom[{len(maps)}]"))
    logger.debug("hom(%s, %s; %s) has dimension %d", M.name, N.name, side, len(maps))
    return maps


# Builders


class _RegularBimodule(Bimodule):
    def __init__(self, ring: GradedRing) -> None:
        super().__init__(ring.name, ring, ring, ring.basis)

    def _derive_right(self, m: int, a: int) -> SparseVector:
        return self.right_ring.product(m, a)

    def _derive_left(self, b: int, m: int) -> SparseVector:
        return self.left_ring.product(b, m)


def regular_bimodule(ring: GradedRing) -> Bimodule:
    """A as an (A, A)-bimodule; memoized so maps into it compose by identity."""
    return get_cache("module:regular").get_or_create(id(ring), lambda: (ring, _RegularBimodule(ring)))[1]


class _ForgetLeft(Bimodule):
    def __init__(self, parent: Bimodule, name: str) -> None:
        scalars = rational_field()
        basis = [BasisElement(b.name, "*", b.right) for b in parent.basis]
        super().__init__(name, scalars, parent.right_ring, basis)
        self.parent = parent

    def _derive_right(self, m: int, a: int) -> SparseVector:
        return self.parent.right_act(m, a)


def forget_left(M: Bimodule, name: Optional[str] = None) -> Bimodule:
    """M as a right module, i.e. a (Q, A)-bimodule on the same basis."""
    if M.left_ring is rational_field() and all(b.left == "*" for b in M.basis):
        return M
    return get_cache("module:forget_left").get_or_create(
        id(M), lambda: (M, _ForgetLeft(M, name or f"{M.name}_A"))
    )[1]


class _LeftCornerModule(Bimodule):
    def __init__(self, parent: Bimodule, labels: Tuple[str, ...], name: str) -> None:
        left = corner(parent.left_ring, labels)
        allowed = set(labels)
        self.parent = parent
        self.kept = [k for k, b in enumerate(parent.basis) if b.left in allowed]
        self.position = {k: i for i, k in enumerate(self.kept)}
        super().__init__(name, left, parent.right_ring, [parent.basis[k] for k in self.kept])

    def _pull(self, vector: Mapping[int, Fraction]) -> SparseVector:
        return {self.position[k]: c for k, c in vector.items()}

    def _derive_right(self, m: int, a: int) -> SparseVector:
        return self._pull(self.parent.right_act(self.kept[m], a))

    def _derive_left(self, b: int, m: int) -> SparseVector:
        parent_b = self.parent.left_ring.index[self.left_ring.basis[b].name]
        return self._pull(self.parent.left_act(parent_b, self.kept[m]))


def left_corner_module(N: Bimodule, e: Idempotent) -> Bimodule:
    """eN as an (eBe, A)-bimodule for a generator-sum idempotent e of the left ring."""
    labels = N.left_ring.generator_labels(e)
    if labels == N.left_ring.labels:
        return N
    return get_cache("module:left_corner").get_or_create(
        (id(N), labels),
        lambda: (N, _LeftCornerModule(N, labels, f"e[{','.join(labels)}]{N.name}")),
    )[1]


def left_corner(ring: GradedRing, e: Idempotent, over: str = "corner") -> Bimodule:
    """eA over (eAe, A) or, with over='field', over (Q, A)."""
    module = left_corner_module(regular_bimodule(ring), e)
    if over == "corner":
        return module
    if over == "field":
        return forget_left(module, name=f"{module.name}_A")
    raise ValueError(f"Unknown base {over!r}; use 'corner' or 'field'")


def row_module(ring: GradedRing, labels: Optional[Sequence[str]] = None) -> Bimodule:
    """The row e_1 A (or eA for the given labels) as a right A-module over Q."""
    return left_corner(ring, tuple(labels) if labels else (ring.labels[0],), over="field")


def right_regular(ring: GradedRing) -> Bimodule:
    """A as a right A-module."""
    return forget_left(regular_bimodule(ring), name=f"{ring.name}_A")


def simple_right_module(ring: GradedRing, label: str) -> Bimodule:
    """One-dimensional right module at a vertex: only its idempotent acts nontrivially.

    A module only for rings whose e_label A e_label is spanned by e_label and
    radical elements, such as path algebras of acyclic quivers.
    """
    return get_cache("module:simple").get_or_create(
        (id(ring), label),
        lambda: (
            ring,
            Bimodule(f"S{label}", rational_field(), ring, [BasisElement(f"S{label}", "*", label)]),
        ),
    )[1]


def zero_module(left_ring: GradedRing, right_ring: GradedRing) -> Bimodule:
    return get_cache("module:zero").get_or_create(
        (id(left_ring), id(right_ring)),
        lambda: (left_ring, right_ring, Bimodule("0", left_ring, right_ring, [])),
    )[2]


class _DirectSumModule(Bimodule):
    def __init__(self, summands: Sequence[Bimodule], name: str) -> None:
        self.summands = tuple(summands)
        self.offsets = []
        basis = []
        for t, summand in enumerate(self.summands):
            self.offsets.append(len(basis))
            basis.extend(BasisElement(f"{t}:{b.name}", b.left, b.right) for b in summand.basis)
        self._locate = []
        for t, summand in enumerate(self.summands):
            self._locate.extend((t, k) for k in range(summand.dim))
        super().__init__(name, summands[0].left_ring, summands[0].right_ring, basis)

    def inclusion_vector(self, t: int, vector: Mapping[int, Fraction]) -> SparseVector:
        return {self.offsets[t] + k: c for k, c in vector.items()}

    def _derive_right(self, m: int, a: int) -> SparseVector:
        t, k = self._locate[m]
        return self.inclusion_vector(t, self.summands[t].right_act(k, a))

    def _derive_left(self, b: int, m: int) -> SparseVector:
        t, k = self._locate[m]
        return self.inclusion_vector(t, self.summands[t].left_act(b, k))


def direct_sum_module(*modules: Bimodule, name: Optional[str] = None) -> _DirectSumModule:
    """Direct sum of bimodules over the same rings; basis names tagged 't:'."""
    if not modules:
        raise DimensionMismatchError("direct_sum_module needs at least one summand")
    first = modules[0]
    for module in modules[1:]:
        if module.left_ring is not first.left_ring or module.right_ring is not first.right_ring:
            raise RingMismatchError(f"{module.name} and {first.name} live over different rings")
    return get_cache("module:direct_sum").get_or_create(
        tuple(id(m) for m in modules),
        lambda: (modules, _DirectSumModule(modules, name or "+".join(m.name for m in modules))),
    )[1]


class _RestrictedModule(Bimodule):
    def __init__(self, parent: Bimodule, psi: RingMorphism, side: str, name: str) -> None:
        self.parent = parent
        self.psi = psi
        self.side = side
        relabel = psi.preimage_labels()
        basis = []
        for b in parent.basis:
            label = b.left if side == "left" else b.right
            if label not in relabel:
                raise RingMismatchError(
                    f"{parent.name}: label {label} is not covered by {psi.name}; module would not be unital"
                )
            if side == "left":
                basis.append(BasisElement(b.name, relabel[label], b.right))
            else:
                basis.append(BasisElement(b.name, b.left, relabel[label]))
        left = psi.source if side == "left" else parent.left_ring
        right = psi.source if side == "right" else parent.right_ring
        super().__init__(name, left, right, basis)

    def _derive_right(self, m: int, a: int) -> SparseVector:
        if self.side == "right":
            return self.parent.act_right({m: ONE}, self.psi.images[a])
        return self.parent.right_act(m, a)

    def _derive_left(self, b: int, m: int) -> SparseVector:
        if self.side == "left":
            return self.parent.act_left(self.psi.images[b], {m: ONE})
        return self.parent.left_act(b, m)


def restrict_scalars(M: Bimodule, psi: RingMorphism, side: str) -> Bimodule:
    """Restrict the left or right action of M along psi."""
    if side not in ("left", "right"):
        raise ValueError(f"Unknown side {side!r}")
    expected = M.left_ring if side == "left" else M.right_ring
    if psi.target is not expected:
        raise RingMismatchError(f"{psi.name} does not land in the {side} ring of {M.name}")
    return get_cache("module:restrict").get_or_create(
        (id(M), id(psi), side),
        lambda: (M, psi, _RestrictedModule(M, psi, side, f"{M.name}|{psi.name}")),
    )[2]


# Duals


class DualModule(Bimodule):
    """Right dual of a (B, A)-bimodule: A·Hom_A(Sigma, A)·B as an (A, B)-bimodule.

    The (k, j) component is Hom_A(f_j Sigma, e_k A).  A functional is stored as
    ``{(s, a): c}``, meaning it sends basis element s to sum of c * a.
    """

    def __init__(self, sigma: Bimodule) -> None:
        self.sigma = sigma
        A, B = sigma.right_ring, sigma.left_ring
        self.functionals: List[Dict[Tuple[int, int], Fraction]] = []
        self._free_position: Dict[Tuple[int, int], int] = {}
        basis: List[BasisElement] = []
        for k in A.labels:
            for j in B.labels:
                unknowns = [
                    (s, a)
                    for s in sigma.basis_in(left=j)
                    for a in A.basis_in(left=k, right=sigma.basis[s].right)
                ]
                if not unknowns:
                    continue
                position = {pair: n for n, pair in enumerate(unknowns)}
                rows: List[SparseVector] = []
                for s in sigma.basis_in(left=j):
                    for a2 in A.basis_in(left=sigma.basis[s].right):
                        by_coord: Dict[int, SparseVector] = {}
                        for s2, c in sigma.right_act(s, a2).items():
                            for a in A.basis_in(left=k, right=sigma.basis[s2].right):
                                vec_axpy(by_coord.setdefault(a, {}), c, {position[(s2, a)]: ONE})
                        for a in A.basis_in(left=k, right=sigma.basis[s].right):
                            for a3, c in A.product(a, a2).items():
                                vec_axpy(by_coord.setdefault(a3, {}), -c, {position[(s, a)]: ONE})
                        rows.extend(row for row in by_coord.values() if row)
                echelon = RowEchelon(len(unknowns)).extend(rows)
                pivots = set(echelon.pivots)
                for vector in echelon.kernel_vectors():
                    free = min(n for n in vector if n not in pivots)
                    s, a = unknowns[free]
                    self._free_position[(s, a)] = len(basis)
                    basis.append(BasisElement(f"[{sigma.basis[s].name}>{A.basis[a].name}]", k, j))
                    self.functionals.append({unknowns[n]: c for n, c in vector.items()})
        super().__init__(f"{sigma.name}^", A, B, basis)
        logger.debug("right dual of %s has dimension %d", sigma.name, self.dim)

    def coordinates(self, values: Mapping[Tuple[int, int], Fraction]) -> SparseVector:
        """Coordinates of a functional given by its (s, a) table.

        Exact for genuine right-linear functionals: each basis functional is
        1 at its own free unknown and 0 at the others.
        """
        return {self._free_position[key]: c for key, c in values.items() if c and key in self._free_position}

    def functional_table(self, chi: Mapping[int, Fraction]) -> Dict[Tuple[int, int], Fraction]:
        table: Dict[Tuple[int, int], Fraction] = {}
        for t, c in chi.items():
            for key, value in self.functionals[t].items():
                updated = table.get(key, Fraction(0)) + c * value
                if updated:
                    table[key] = updated
                else:
                    table.pop(key, None)
        return table

    def evaluate(self, chi: Mapping[int, Fraction], x: Mapping[int, Fraction]) -> SparseVector:
        """chi(x) as a vector of the right ring."""
        result: SparseVector = {}
        for t, c in chi.items():
            for (s, a), value in self.functionals[t].items():
                xs = x.get(s)
                if xs:
                    vec_axpy(result, c * value * xs, {a: ONE})
        return result

    def _derive_left(self, b: int, t: int) -> SparseVector:
        # (a.chi)(x) = a chi(x)
        A = self.sigma.right_ring
        values: Dict[Tuple[int, int], Fraction] = {}
        for (s, a0), c in self.functionals[t].items():
            for a3, d in A.product(b, a0).items():
                values[(s, a3)] = values.get((s, a3), Fraction(0)) + c * d
        return self.coordinates(values)

    def _derive_right(self, t: int, b: int) -> SparseVector:
        # (chi.b)(x) = chi(b x)
        sigma = self.sigma
        target_label = self.right_ring.basis[b].right
        chi = {t: ONE}
        values: Dict[Tuple[int, int], Fraction] = {}
        for s in sigma.basis_in(left=target_label):
            for a, c in self.evaluate(chi, sigma.left_act(b, s)).items():
                values[(s, a)] = c
        return self.coordinates(values)


def right_dual(sigma: Bimodule) -> DualModule:
    """Memoized right dual of sigma."""
    return get_cache("module:dual").get_or_create(id(sigma), lambda: (sigma, DualModule(sigma)))[1]


@dataclass(frozen=True)
class DualBasis:
    """Pairs (u_i, v_i*) with u = sum_i u_i v_i*(u) for every u in h·Sigma."""

    module: Bimodule
    dual: DualModule
    labels: Tuple[str, ...]
    elements: Tuple[SparseVector, ...]
    functionals: Tuple[SparseVector, ...]

    def __len__(self) -> int:
        return len(self.elements)

    @property
    def pairs(self) -> List[Tuple[SparseVector, SparseVector]]:
        return list(zip(self.elements, self.functionals))

    def expand(self, u: Mapping[int, Fraction]) -> SparseVector:
        result: SparseVector = {}
        for element, functional in zip(self.elements, self.functionals):
            value = self.dual.evaluate(functional, u)
            if value:
                vec_axpy(result, ONE, self.module.act_right(element, value))
        return result

    def domain(self) -> List[int]:
        allowed = set(self.labels)
        return [s for s, b in enumerate(self.module.basis) if b.left in allowed]

    def law_failures(self) -> List[str]:
        return [self.module.basis[s].name for s in self.domain() if self.expand({s: ONE}) != {s: ONE}]

    def scaled(self, position: int, factor: Fraction) -> "DualBasis":
        """Copy with one functional rescaled."""
        functionals = list(self.functionals)
        functionals[position] = vec_scale(Fraction(factor), functionals[position])
        return replace(self, functionals=tuple(functionals))

    def describe(self) -> List[Tuple[str, str]]:
        return [(self.module.format(u), self.dual.format(v)) for u, v in self.pairs]


def greedy_generators(sigma: Bimodule, domain: Sequence[int]) -> List[SparseVector]:
    A = sigma.right_ring
    span = RowEchelon(sigma.dim)
    generators = []
    for s in domain:
        if span.contains({s: ONE}):
            continue
        generators.append({s: ONE})
        for a in A.basis_in(left=sigma.basis[s].right):
            span.add(sigma.right_act(s, a))
    return generators


def dual_basis(
    sigma: Bimodule,
    h: Idempotent,
    generators: Optional[Sequence[Mapping[int, Fraction]]] = None,
) -> Optional[DualBasis]:
    """Finite dual basis of h·Sigma as a right module, or None when none exists.

    One linear solve for the coefficients of each u_i* over the basis of the
    relevant Hom components; functionals vanish off h·Sigma, i.e. v_i* = u_i* o pi_h.
    """
    labels = sigma.left_ring.generator_labels(h)
    allowed = set(labels)
    domain = [s for s, b in enumerate(sigma.basis) if b.left in allowed]
    dual = right_dual(sigma)
    if not domain:
        return DualBasis(sigma, dual, labels, (), ())
    gens = [dict(g) for g in generators] if generators is not None else greedy_generators(sigma, domain)
    position = {s: n for n, s in enumerate(domain)}
    size = len(domain) * sigma.dim

    values_of: Dict[int, Dict[int, SparseVector]] = {}
    for t, chi in enumerate(dual.basis):
        if chi.right not in allowed:
            continue
        per_element: Dict[int, SparseVector] = {}
        for (s, a), c in dual.functionals[t].items():
            vec_axpy(per_element.setdefault(s, {}), c, {a: ONE})
        values_of[t] = per_element

    columns: List[SparseVector] = []
    column_keys: List[Tuple[int, int]] = []
    for i, g in enumerate(gens):
        targets = {sigma.basis[s].right for s in g}
        for t, per_element in values_of.items():
            if dual.basis[t].left not in targets:
                continue
            column: SparseVector = {}
            for s, value in per_element.items():
                if s in position and value:
                    image = sigma.act_right(g, value)
                    vec_axpy(column, ONE, {position[s] * sigma.dim + k: c for k, c in image.items()})
            columns.append(column)
            column_keys.append((i, t))
    rhs = {position[s] * sigma.dim + s: ONE for s in domain}
    solution = solve_sparse(columns, rhs, size)
    if solution is None:
        logger.debug("no dual basis for %s at %s", sigma.name, labels)
        return None

    functionals: List[SparseVector] = [{} for _ in gens]
    for col, coeff in solution.items():
        i, t = column_keys[col]
        vec_axpy(functionals[i], coeff, {t: ONE})
    kept = [(g, f) for g, f in zip(gens, functionals) if f]
    result = DualBasis(sigma, dual, labels, tuple(g for g, _ in kept), tuple(f for _, f in kept))
    logger.debug("dual basis for %s at %s has %d pairs", sigma.name, labels, len(result))
    return result


def is_fg_projective(sigma: Bimodule, h: Idempotent) -> Tuple[bool, Optional[DualBasis]]:
    """h·Sigma is finitely generated projective iff a dual basis exists."""
    basis = dual_basis(sigma, h)
    return basis is not None, basis


__all__ = [
    "Bimodule",
    "LinearMap",
    "DualModule",
    "DualBasis",
    "verify_module",
    "hom_space",
    "regular_bimodule",
    "forget_left",
    "left_corner_module",
    "left_corner",
    "row_module",
    "right_regular",
    "simple_right_module",
    "zero_module",
    "direct_sum_module",
    "restrict_scalars",
    "right_dual",
    "greedy_generators",
    "dual_basis",
    "is_fg_projective",
]
