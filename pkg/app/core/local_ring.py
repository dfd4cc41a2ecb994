"""
Rings with local units, presented by enough orthogonal idempotents.

Every basis element ``b`` of a :class:`GradedRing` is homogeneous: it lies in
``e_left · A · e_right`` for two index labels, so ``b · c`` can only be nonzero
when ``b.right == c.left`` and then lands in ``(b.left, c.right)``.  Path
algebras follow the same convention: an arrow ``s -> t`` has ``left = s`` and
``right = t`` and paths concatenate from left to right.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product as cartesian
from typing import Callable, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from app.cache import get_cache
from app.errors import (
    DimensionMismatchError,
    IdempotentError,
    RingMismatchError,
    UnboundedCornerError,
)
from app.core.exact_linalg import (
    ONE,
    RowEchelon,
    SparseVector,
    format_scalar,
    vec_axpy,
    vec_scale,
)
from models.report import CheckReport

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class BasisElement:
    """Homogeneous basis vector living in component (left, right)."""

    name: str
    left: str
    right: str


def format_vector(vector: Mapping[int, Fraction], basis: Sequence[BasisElement]) -> str:
    """Human-readable linear combination, used in report witnesses."""
    if not vector:
        return "0"
    parts = []
    for index in sorted(vector):
        coeff = vector[index]
        name = basis[index].name
        parts.append(name if coeff == 1 else f"{format_scalar(coeff)}*{name}")
    return " + ".join(parts)


class GradedRing:
    """Finite-dimensional ring with enough orthogonal idempotents."""

    def __init__(
        self,
        name: str,
        labels: Sequence[str],
        basis: Sequence[BasisElement],
        idempotents: Mapping[str, str],
        products: Mapping[Tuple[str, str], Mapping[str, Fraction]],
    ) -> None:
        if not labels:
            raise IdempotentError(f"Ring {name} has an empty index set")
        self.name = name
        self.labels: Tuple[str, ...] = tuple(labels)
        self.basis: Tuple[BasisElement, ...] = tuple(basis)
        self.index: Dict[str, int] = {b.name: i for i, b in enumerate(self.basis)}
        if len(self.index) != len(self.basis):
            raise DimensionMismatchError(f"Ring {name} has duplicate basis names")
        label_set = set(self.labels)
        for element in self.basis:
            if element.left not in label_set or element.right not in label_set:
                raise DimensionMismatchError(
                    f"Basis element {element.name} of {name} uses an unknown index label"
                )
        self.idempotents: Dict[str, int] = {}
        for label in self.labels:
            if label not in idempotents:
                raise IdempotentError(f"Ring {name} has no idempotent for label {label}")
            idx = self.index[idempotents[label]]
            element = self.basis[idx]
            if element.left != label or element.right != label:
                raise IdempotentError(f"Idempotent {element.name} is not in component ({label},{label})")
            self.idempotents[label] = idx
        self._products: Dict[Tuple[int, int], SparseVector] = {}
        for (x, y), value in products.items():
            i, j = self.index[x], self.index[y]
            if self.basis[i].right != self.basis[j].left and any(value.values()):
                raise DimensionMismatchError(
                    f"Product {x}*{y} of {name} must be zero: components ({self.basis[i].left},{self.basis[i].right}) "
                    f"and ({self.basis[j].left},{self.basis[j].right}) do not meet"
                )
            self._products[(i, j)] = {self.index[z]: Fraction(c) for z, c in value.items() if c}
        # Generator idempotents act as graded identities unless stated otherwise.
        for label, e in self.idempotents.items():
            for k, element in enumerate(self.basis):
                if element.left == label:
                    self._products.setdefault((e, k), {k: ONE})
                if element.right == label:
                    self._products.setdefault((k, e), {k: ONE})

    def __repr__(self) -> str:
        return f"GradedRing({self.name!r}, dim={self.dim})"

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def is_finite(self) -> bool:
        return True

    def product(self, i: int, j: int) -> SparseVector:
        if self.basis[i].right != self.basis[j].left:
            return {}
        return self._products.get((i, j), {})

    def multiply_vectors(self, x: Mapping[int, Fraction], y: Mapping[int, Fraction]) -> SparseVector:
        result: SparseVector = {}
        for i, a in x.items():
            for j, b in y.items():
                prod = self.product(i, j)
                if prod:
                    vec_axpy(result, a * b, prod)
        return result

    def basis_in(self, left: Optional[str] = None, right: Optional[str] = None) -> List[int]:
        return [
            k
            for k, b in enumerate(self.basis)
            if (left is None or b.left == left) and (right is None or b.right == right)
        ]

    def component(self, left: str, right: str) -> List[BasisElement]:
        """Basis of e_left · A · e_right."""
        return [self.basis[k] for k in self.basis_in(left, right)]

    def element(self, coords: Mapping[str, Union[int, str, Fraction]]) -> "RingElement":
        from app.core.exact_linalg import parse_scalar

        return RingElement.from_vector(
            self, {self.index[name]: parse_scalar(value) for name, value in coords.items()}
        )

    def basis_element(self, name: str) -> "RingElement":
        return RingElement.from_vector(self, {self.index[name]: ONE})

    def generator(self, label: str) -> "RingElement":
        return RingElement.from_vector(self, {self.idempotents[label]: ONE})

    def generator_sum(self, labels: Iterable[str]) -> "RingElement":
        return RingElement.from_vector(self, {self.idempotents[label]: ONE for label in labels})

    def unit_vector(self, labels: Iterable[str]) -> SparseVector:
        return {self.idempotents[label]: ONE for label in labels}

    def total_unit(self) -> "RingElement":
        return self.generator_sum(self.labels)

    def generator_labels(self, e: Union["RingElement", Iterable[str]]) -> Tuple[str, ...]:
        """Labels whose generators sum to e; raises when e is not such a sum."""
        if not isinstance(e, RingElement):
            labels = tuple(e)
            unknown = [label for label in labels if label not in self.idempotents]
            if unknown:
                raise IdempotentError(f"Unknown idempotent labels {unknown} for ring {self.name}")
            return tuple(label for label in self.labels if label in set(labels))
        if e.ring is not self:
            raise RingMismatchError(f"Idempotent belongs to {e.ring.name}, expected {self.name}")
        by_index = {idx: label for label, idx in self.idempotents.items()}
        labels = []
        for idx, coeff in e.coords:
            if idx not in by_index or coeff != 1:
                raise IdempotentError(f"{e} is not a sum of generator idempotents of {self.name}")
            labels.append(by_index[idx])
        return tuple(label for label in self.labels if label in set(labels))


@dataclass(frozen=True)
class RingElement:
    """Element of a graded ring with sorted, nonzero coordinates."""

    ring: GradedRing = field(compare=False)
    coords: Tuple[Tuple[int, Fraction], ...]
    ring_id: int = 0

    @classmethod
    def from_vector(cls, ring: GradedRing, vector: Mapping[int, Fraction]) -> "RingElement":
        return cls(ring, tuple(sorted((i, Fraction(v)) for i, v in vector.items() if v)), id(ring))

    @property
    def vector(self) -> SparseVector:
        return dict(self.coords)

    def is_zero(self) -> bool:
        return not self.coords

    def support(self) -> List[BasisElement]:
        return [self.ring.basis[i] for i, _ in self.coords]

    def support_labels(self) -> Tuple[str, ...]:
        used = {label for b in self.support() for label in (b.left, b.right)}
        return tuple(label for label in self.ring.labels if label in used)

    def __mul__(self, other: "RingElement") -> "RingElement":
        return multiply(self, other)

    def __add__(self, other: "RingElement") -> "RingElement":
        _require_same_ring(self, other)
        result = self.vector
        vec_axpy(result, ONE, other.vector)
        return RingElement.from_vector(self.ring, result)

    def __sub__(self, other: "RingElement") -> "RingElement":
        _require_same_ring(self, other)
        result = self.vector
        vec_axpy(result, -ONE, other.vector)
        return RingElement.from_vector(self.ring, result)

    def scale(self, coeff: Fraction) -> "RingElement":
        return RingElement.from_vector(self.ring, vec_scale(Fraction(coeff), self.vector))

    def __str__(self) -> str:
        return format_vector(self.vector, self.ring.basis)


def _require_same_ring(x: RingElement, y: RingElement) -> None:
    if x.ring is not y.ring:
        raise RingMismatchError(f"Elements of {x.ring.name} and {y.ring.name} cannot be combined")


def multiply(x: RingElement, y: RingElement) -> RingElement:
    """Bilinear product of two elements of the same ring."""
    _require_same_ring(x, y)
    return RingElement.from_vector(x.ring, x.ring.multiply_vectors(x.vector, y.vector))


def local_unit_for(elems: Iterable[RingElement]) -> RingElement:
    """Sum of the generators occurring in the supports: a unity for every input."""
    items = list(elems)
    if not items:
        raise IdempotentError("local_unit_for needs a nonempty set of elements")
    ring = items[0].ring
    used = set()
    for item in items:
        _require_same_ring(items[0], item)
        used.update(item.support_labels())
    unit = ring.generator_sum(label for label in ring.labels if label in used)
    logger.debug("local unit for %d elements of %s: %s", len(items), ring.name, unit)
    return unit


def _require_idempotent(e: RingElement) -> None:
    if multiply(e, e) != e:
        raise IdempotentError(f"{e} is not idempotent in {e.ring.name}")


def idempotent_leq(e: RingElement, e_prime: RingElement) -> bool:
    """e <= e' iff e = e e' = e' e."""
    _require_same_ring(e, e_prime)
    _require_idempotent(e)
    _require_idempotent(e_prime)
    return multiply(e, e_prime) == e and multiply(e_prime, e) == e


class LazyGradedRing:
    """Ring with infinitely many orthogonal idempotents, materialized corner by corner."""

    def __init__(self, name: str, label_at: Callable[[int], str], builder: Callable[[int], GradedRing]) -> None:
        self.name = name
        self._label_at = label_at
        self._builder = builder

    def __repr__(self) -> str:
        return f"LazyGradedRing({self.name!r})"

    @property
    def is_finite(self) -> bool:
        return False

    def labels_upto(self, size: int) -> Tuple[str, ...]:
        return tuple(self._label_at(i) for i in range(size))

    def truncation(self, size: int) -> GradedRing:
        """The corner on the first ``size`` labels (memoized)."""
        if size < 1:
            raise UnboundedCornerError(f"Corner size for {self.name} must be positive, got {size}")
        return get_cache("lazy_truncation").get_or_create((id(self), size), lambda: (self, self._builder(size)))[1]

    def corner_for(self, labels: Iterable[str]) -> GradedRing:
        """Smallest truncation containing every label."""
        wanted = set(labels)
        if not wanted:
            raise UnboundedCornerError(f"Empty corner requested for {self.name}")
        size = 0
        found = set()
        while found != wanted:
            if size > 10_000:
                raise UnboundedCornerError(f"Labels {sorted(wanted - found)} never occur in {self.name}")
            label = self._label_at(size)
            if label in wanted:
                found.add(label)
            size += 1
        return self.truncation(size)


AnyRing = Union[GradedRing, LazyGradedRing]


def resolve_corner(ring: AnyRing, corner: Optional[Iterable[str]] = None) -> Tuple[GradedRing, Tuple[str, ...]]:
    """Finite ring and label subset an operation should run on."""
    if isinstance(ring, LazyGradedRing):
        if corner is None:
            raise UnboundedCornerError(f"{ring.name} is infinite; pass a finite corner")
        labels = tuple(corner)
        finite = ring.corner_for(labels)
        return finite, finite.generator_labels(labels)
    if corner is None:
        return ring, ring.labels
    return ring, ring.generator_labels(tuple(corner))


def verify_ring(r: AnyRing, corner: Optional[Iterable[str]] = None) -> CheckReport:
    """Associativity, gradedness, idempotency and local units on a finite corner."""
    ring, labels = resolve_corner(r, corner)
    allowed = set(labels)
    report = CheckReport(check="ring:verify", instance=ring.name)
    indices = [k for k, b in enumerate(ring.basis) if b.left in allowed and b.right in allowed]
    index_set = set(indices)

    for i in indices:
        for j in indices:
            prod = ring.product(i, j)
            if not prod:
                continue
            report.tick()
            bi, bj = ring.basis[i], ring.basis[j]
            stray = [k for k in prod if (ring.basis[k].left, ring.basis[k].right) != (bi.left, bj.right)]
            if stray:
                report.record(f"{bi.name}*{bj.name}", f"product leaves component ({bi.left},{bj.right})")

    for i in indices:
        bi = ring.basis[i]
        for j in ring.basis_in(left=bi.right):
            if j not in index_set:
                continue
            ij = ring.product(i, j)
            for k in ring.basis_in(left=ring.basis[j].right):
                if ring.basis[k].right not in allowed:
                    continue
                report.tick()
                lhs = ring.multiply_vectors(ij, {k: ONE})
                rhs = ring.multiply_vectors({i: ONE}, ring.product(j, k))
                if lhs != rhs:
                    triple = f"({bi.name},{ring.basis[j].name},{ring.basis[k].name})"
                    report.record(
                        triple,
                        f"(xy)z = {format_vector(lhs, ring.basis)} but x(yz) = {format_vector(rhs, ring.basis)}",
                    )

    for label in labels:
        e = ring.idempotents[label]
        report.tick()
        if ring.product(e, e) != {e: ONE}:
            report.record(f"e[{label}]", "generator is not idempotent")

    for k in indices:
        b = ring.basis[k]
        report.tick()
        left = ring.product(ring.idempotents[b.left], k)
        right = ring.product(k, ring.idempotents[b.right])
        if left != {k: ONE} or right != {k: ONE}:
            report.record(b.name, f"local unit e[{b.left}]..e[{b.right}] does not fix it")
    return report


class RingMorphism:
    """Linear map between graded rings given on source basis elements."""

    def __init__(self, name: str, source: GradedRing, target: GradedRing, images: Sequence[Mapping[int, Fraction]]) -> None:
        if len(images) != source.dim:
            raise DimensionMismatchError(
                f"Morphism {name} gives {len(images)} images for a source of dimension {source.dim}"
            )
        self.name = name
        self.source = source
        self.target = target
        self.images: Tuple[SparseVector, ...] = tuple(dict(image) for image in images)

    def __repr__(self) -> str:
        return f"RingMorphism({self.name!r}: {self.source.name} -> {self.target.name})"

    def apply(self, vector: Mapping[int, Fraction]) -> SparseVector:
        result: SparseVector = {}
        for i, coeff in vector.items():
            vec_axpy(result, coeff, self.images[i])
        return result

    def __call__(self, x: RingElement) -> RingElement:
        if x.ring is not self.source:
            raise RingMismatchError(f"{self.name} is defined on {self.source.name}, not {x.ring.name}")
        return RingElement.from_vector(self.target, self.apply(x.vector))

    def label_map(self) -> Dict[str, Tuple[str, ...]]:
        """Target labels covered by each source generator.

        Requires every generator image to be a sum of target generators.
        """
        mapping = {}
        for label in self.source.labels:
            image = self(self.source.generator(label))
            mapping[label] = self.target.generator_labels(image)
        return mapping

    def preimage_labels(self) -> Dict[str, str]:
        """Target label -> the unique source label whose generator image contains it."""
        inverse: Dict[str, str] = {}
        for source_label, target_labels in self.label_map().items():
            for target_label in target_labels:
                if target_label in inverse:
                    raise IdempotentError(
                        f"{self.name} sends two generators onto overlapping idempotents at {target_label}"
                    )
                inverse[target_label] = source_label
        return inverse


def identity_morphism(ring: GradedRing) -> RingMorphism:
    return get_cache("identity_morphism").get_or_create(
        id(ring),
        lambda: RingMorphism(f"id_{ring.name}", ring, ring, [{i: ONE} for i in range(ring.dim)]),
    )


def morphism_from_images(
    name: str,
    source: GradedRing,
    target: GradedRing,
    images: Mapping[str, Mapping[str, Union[int, str, Fraction]]],
) -> RingMorphism:
    from app.core.exact_linalg import parse_scalar

    vectors = []
    for element in source.basis:
        image = images.get(element.name, {})
        vectors.append({target.index[t]: parse_scalar(c) for t, c in image.items()})
    return RingMorphism(name, source, target, vectors)


def check_morphism(psi: RingMorphism, corner: Optional[Iterable[str]] = None) -> CheckReport:
    """Multiplicativity on basis pairs and the local-unit condition on target generators."""
    report = CheckReport(check="morphism:check", instance=psi.name)
    source, target = psi.source, psi.target
    for i in range(source.dim):
        for j in range(source.dim):
            report.tick()
            lhs = target.multiply_vectors(psi.images[i], psi.images[j])
            rhs = psi.apply(source.product(i, j))
            if lhs != rhs:
                report.record(
                    f"({source.basis[i].name},{source.basis[j].name})",
                    f"psi(x)psi(y) = {format_vector(lhs, target.basis)} but psi(xy) = "
                    f"{format_vector(rhs, target.basis)}",
                )
    # If some f covers e then so does every f' >= f, so the total unit is the only candidate.
    f_image = psi.apply(source.unit_vector(source.labels))
    _, labels = resolve_corner(target, corner)
    for label in labels:
        report.tick()
        e = target.unit_vector([label])
        if target.multiply_vectors(e, f_image) != e or target.multiply_vectors(f_image, e) != e:
            report.record(f"e[{label}]", "no source idempotent f with e psi(f) = psi(f) e = e")
    return report


def corner(r: GradedRing, e: Union[RingElement, Iterable[str]]) -> GradedRing:
    """The unital ring eAe with identity e."""
    if isinstance(e, RingElement):
        _require_idempotent(e)
        try:
            labels = r.generator_labels(e)
        except IdempotentError:
            return _general_corner(r, e)
    else:
        labels = r.generator_labels(e)
    if not labels:
        raise IdempotentError(f"Zero idempotent has no corner in {r.name}")
    if tuple(labels) == r.labels:
        return r
    return get_cache("corner").get_or_create((id(r), labels), lambda: (r, _graded_corner(r, labels)))[1]


def _graded_corner(r: GradedRing, labels: Tuple[str, ...]) -> GradedRing:
    allowed = set(labels)
    kept = [k for k, b in enumerate(r.basis) if b.left in allowed and b.right in allowed]
    products = {}
    for i in kept:
        for j in kept:
            prod = r.product(i, j)
            if prod:
                products[(r.basis[i].name, r.basis[j].name)] = {r.basis[k].name: c for k, c in prod.items()}
    ring = GradedRing(
        f"{r.name}[{','.join(labels)}]",
        labels,
        [r.basis[k] for k in kept],
        {label: r.basis[r.idempotents[label]].name for label in labels},
        products,
    )
    logger.debug("corner %s of %s: dimension %d", labels, r.name, ring.dim)
    return ring


def _general_corner(r: GradedRing, e: RingElement) -> GradedRing:
    """eAe for an idempotent that is not a generator sum, on a single label."""
    ev = e.vector
    candidates = [("e", ev)] + [
        (f"e{b.name}e", r.multiply_vectors(r.multiply_vectors(ev, {k: ONE}), ev)) for k, b in enumerate(r.basis)
    ]
    # e goes first so it becomes the identity basis element.
    echelon = RowEchelon(r.dim, track=True)
    chosen: List[Tuple[str, SparseVector]] = []
    name_of_tag: Dict[int, str] = {}
    for tag, (name, vector) in enumerate(candidates):
        if echelon.add(vector):
            name_of_tag[tag] = name
            chosen.append((name, vector))
    label = "e"
    products = {}
    for x_name, x in chosen:
        for y_name, y in chosen:
            _, combination = echelon.express(r.multiply_vectors(x, y))
            products[(x_name, y_name)] = {name_of_tag[t]: c for t, c in combination.items()}
    basis = [BasisElement(name, label, label) for name, _ in chosen]
    return GradedRing(f"{r.name}[{e}]", [label], basis, {label: "e"}, products)


# Builders


def _memo(kind: str, key, factory):
    return get_cache(f"ring:{kind}").get_or_create(key, factory)


def matrix_ring(n: int, labels: Optional[Sequence[str]] = None) -> GradedRing:
    """Full n x n matrix ring over Q with matrix units E_ij."""
    if n < 1:
        raise IdempotentError("matrix_ring needs n >= 1")
    labels = tuple(labels) if labels else tuple(str(i + 1) for i in range(n))
    if len(labels) != n:
        raise DimensionMismatchError(f"{len(labels)} labels for matrix_ring({n})")
    return _memo("matrix", labels, lambda: _build_matrix_ring(f"M{n}", labels))


def _unit_name(left: str, right: str, wide: bool) -> str:
    return f"E{left}_{right}" if wide else f"E{left}{right}"


def _build_matrix_ring(name: str, labels: Tuple[str, ...]) -> GradedRing:
    wide = any(len(label) > 1 for label in labels)
    basis = [BasisElement(_unit_name(a, b, wide), a, b) for a in labels for b in labels]
    products = {}
    for a, b, c in cartesian(labels, repeat=3):
        products[(_unit_name(a, b, wide), _unit_name(b, c, wide))] = {_unit_name(a, c, wide): ONE}
    return GradedRing(name, labels, basis, {a: _unit_name(a, a, wide) for a in labels}, products)


def rational_field() -> GradedRing:
    """Q as a ring with the single index label '*'."""
    return _memo(
        "rational",
        "Q",
        lambda: GradedRing("Q", ["*"], [BasisElement("1", "*", "*")], {"*": "1"}, {("1", "1"): {"1": ONE}}),
    )


def path_algebra(
    vertices: Sequence[str],
    arrows: Sequence[Tuple[str, str, str]],
    name: Optional[str] = None,
) -> GradedRing:
    """Path algebra of a finite acyclic quiver; arrows are (name, source, target)."""
    name = name or "P"
    key = (name, tuple(vertices), tuple(tuple(a) for a in arrows))
    return _memo("path", key, lambda: _build_path_algebra(name, tuple(vertices), key[2]))


def _build_path_algebra(name: str, vertices: Tuple[str, ...], arrows) -> GradedRing:
    known = set(vertices)
    for arrow, source, target in arrows:
        if source not in known or target not in known:
            raise DimensionMismatchError(f"Arrow {arrow} uses an unknown vertex")
    outgoing: Dict[str, List[Tuple[str, str]]] = {v: [] for v in vertices}
    for arrow, source, target in arrows:
        outgoing[source].append((arrow, target))

    paths: List[Tuple[str, str, Tuple[str, ...]]] = []
    for v in vertices:
        stack = [(v, (), frozenset([v]))]
        while stack:
            here, walked, seen = stack.pop()
            if walked:
                paths.append((v, here, walked))
            for arrow, target in outgoing[here]:
                if target in seen:
                    raise IdempotentError(f"Quiver of {name} has a cycle through {target}; algebra is infinite")
                stack.append((target, walked + (arrow,), seen | {target}))
    paths.sort(key=lambda p: (len(p[2]), p[2]))

    basis = [BasisElement(f"e{v}", v, v) for v in vertices]
    path_names = {}
    for source, target, walked in paths:
        path_name = ".".join(walked)
        path_names[walked] = path_name
        basis.append(BasisElement(path_name, source, target))
    products = {}
    for s1, t1, w1 in paths:
        for s2, t2, w2 in paths:
            if t1 == s2:
                products[(path_names[w1], path_names[w2])] = {path_names[w1 + w2]: ONE}
    return GradedRing(name, vertices, basis, {v: f"e{v}" for v in vertices}, products)


def direct_sum(rings: Sequence[GradedRing], name: Optional[str] = None) -> GradedRing:
    """Product ring; labels and basis names are tagged 't:' by summand position."""
    if not rings:
        raise IdempotentError("direct_sum needs at least one ring")
    key = tuple(id(r) for r in rings)
    return _memo("direct_sum", key, lambda: (tuple(rings), _build_direct_sum(name, rings)))[1]


def _build_direct_sum(name: Optional[str], rings: Sequence[GradedRing]) -> GradedRing:
    labels, basis, idempotents, products = [], [], {}, {}
    for t, ring in enumerate(rings):
        labels.extend(f"{t}:{label}" for label in ring.labels)
        basis.extend(BasisElement(f"{t}:{b.name}", f"{t}:{b.left}", f"{t}:{b.right}") for b in ring.basis)
        idempotents.update({f"{t}:{label}": f"{t}:{ring.basis[i].name}" for label, i in ring.idempotents.items()})
        for i in range(ring.dim):
            for j in range(ring.dim):
                prod = ring.product(i, j)
                if prod:
                    products[(f"{t}:{ring.basis[i].name}", f"{t}:{ring.basis[j].name}")] = {
                        f"{t}:{ring.basis[k].name}": c for k, c in prod.items()
                    }
    return GradedRing(name or "+".join(r.name for r in rings), labels, basis, idempotents, products)


def rees_ring(base: GradedRing, n: int, name: Optional[str] = None) -> GradedRing:
    """n x n Rees matrix ring over base with identity sandwich, i.e. M_n(base).

    Only the identity sandwich is built; a general sandwich matrix P
    (product A P B) is not supported.
    """
    if n < 1:
        raise IdempotentError("rees_ring needs n >= 1")
    return _memo("rees", (id(base), n), lambda: (base, _build_rees(name or f"M{n}({base.name})", base, n)))[1]


def _build_rees(name: str, base: GradedRing, n: int) -> GradedRing:
    positions = [str(i + 1) for i in range(n)]
    labels = [f"{p}:{label}" for p in positions for label in base.labels]

    def entry(i: str, j: str, b: BasisElement) -> BasisElement:
        return BasisElement(f"E{i}{j}({b.name})", f"{i}:{b.left}", f"{j}:{b.right}")

    basis = [entry(i, j, b) for i in positions for j in positions for b in base.basis]
    products = {}
    for i, j, k in cartesian(positions, repeat=3):
        for x in range(base.dim):
            for y in range(base.dim):
                prod = base.product(x, y)
                if prod:
                    products[(entry(i, j, base.basis[x]).name, entry(j, k, base.basis[y]).name)] = {
                        entry(i, k, base.basis[z]).name: c for z, c in prod.items()
                    }
    idempotents = {
        f"{p}:{label}": entry(p, p, base.basis[base.idempotents[label]]).name
        for p in positions
        for label in base.labels
    }
    return GradedRing(name, labels, basis, idempotents, products)


def infinite_matrix_ring() -> LazyGradedRing:
    """Column-finite matrix units over a countable index set."""
    return _memo(
        "infinite_matrix",
        "Minf",
        lambda: LazyGradedRing(
            "Minf",
            lambda i: str(i + 1),
            lambda size: _build_matrix_ring(f"Minf[{size}]", tuple(str(i + 1) for i in range(size))),
        ),
    )


def infinite_path_algebra() -> LazyGradedRing:
    """Path algebra of the linear quiver 1 -> 2 -> 3 -> ..."""

    def build(size: int) -> GradedRing:
        vertices = tuple(str(i + 1) for i in range(size))
        arrows = tuple((f"a{i + 1}", str(i + 1), str(i + 2)) for i in range(size - 1))
        return _build_path_algebra(f"Pinf[{size}]", vertices, arrows)

    return _memo("infinite_path", "Pinf", lambda: LazyGradedRing("Pinf", lambda i: str(i + 1), build))


def with_scaled_product(ring: GradedRing, x: str, y: str, scale: Fraction, name: Optional[str] = None) -> GradedRing:
    """Copy of ring whose product x*y is multiplied by scale (fault fixtures)."""
    products = {}
    for i in range(ring.dim):
        for j in range(ring.dim):
            prod = ring.product(i, j)
            if prod:
                products[(ring.basis[i].name, ring.basis[j].name)] = {ring.basis[k].name: c for k, c in prod.items()}
    key = (x, y)
    if key not in products:
        raise DimensionMismatchError(f"{x}*{y} is zero in {ring.name}; nothing to corrupt")
    products[key] = {z: c * scale for z, c in products[key].items()}
    return GradedRing(
        name or f"{ring.name}~",
        ring.labels,
        ring.basis,
        {label: ring.basis[i].name for label, i in ring.idempotents.items()},
        products,
    )


__all__ = [
    "BasisElement",
    "GradedRing",
    "LazyGradedRing",
    "RingElement",
    "RingMorphism",
    "AnyRing",
    "format_vector",
    "multiply",
    "local_unit_for",
    "idempotent_leq",
    "verify_ring",
    "check_morphism",
    "corner",
    "resolve_corner",
    "identity_morphism",
    "morphism_from_images",
    "matrix_ring",
    "rational_field",
    "path_algebra",
    "direct_sum",
    "rees_ring",
    "infinite_matrix_ring",
    "infinite_path_algebra",
    "with_scaled_product",
]
