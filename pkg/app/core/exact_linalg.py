"""
Exact rational linear algebra.

Dense ``Matrix`` values are the exchange format; elimination inside quotients,
kernels and solves runs on sparse ``{index: Fraction}`` rows so the larger
tensor quotients stay cheap.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from app.errors import DimensionMismatchError, SpecSyntaxError

logger = logging.getLogger(__name__)

Scalar = Fraction
SparseVector = Dict[int, Fraction]
ScalarLike = Union[int, str, Fraction]

ZERO = Fraction(0)
ONE = Fraction(1)


def parse_scalar(value: ScalarLike) -> Fraction:
    """Parse an int, Fraction or "p/q" literal into a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise SpecSyntaxError(f"Boolean is not a rational literal: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        try:
            if "/" in text:
                num, den = text.split("/", 1)
                return Fraction(int(num), int(den))
            return Fraction(int(text))
        except (ValueError, ZeroDivisionError) as exc:
            raise SpecSyntaxError(f"Invalid rational literal {value!r}: {exc}") from exc
    raise SpecSyntaxError(f"Unsupported rational literal {value!r}")


def format_scalar(value: Fraction) -> str:
    """Format as "p/q", omitting q when it is 1."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


# Sparse vector helpers


def vec_axpy(target: SparseVector, coeff: Fraction, source: Mapping[int, Fraction]) -> SparseVector:
    """target += coeff * source, in place; drops cancelled entries."""
    if not coeff:
        return target
    for index, value in source.items():
        updated = target.get(index, ZERO) + coeff * value
        if updated:
            target[index] = updated
        else:
            target.pop(index, None)
    return target


def vec_add(left: Mapping[int, Fraction], right: Mapping[int, Fraction]) -> SparseVector:
    return vec_axpy(dict(left), ONE, right)


def vec_sub(left: Mapping[int, Fraction], right: Mapping[int, Fraction]) -> SparseVector:
    return vec_axpy(dict(left), -ONE, right)


def vec_scale(coeff: Fraction, vector: Mapping[int, Fraction]) -> SparseVector:
    if not coeff:
        return {}
    return {index: coeff * value for index, value in vector.items()}


def to_dense(vector: Mapping[int, Fraction], dim: int) -> Tuple[Fraction, ...]:
    return tuple(vector.get(i, ZERO) for i in range(dim))


def to_sparse(values: Sequence[ScalarLike]) -> SparseVector:
    result: SparseVector = {}
    for index, value in enumerate(values):
        scalar = parse_scalar(value) if not isinstance(value, Fraction) else value
        if scalar:
            result[index] = scalar
    return result


@dataclass(frozen=True)
class Matrix:
    """Dense rational matrix."""

    rows: int
    cols: int
    entries: Tuple[Tuple[Fraction, ...], ...]

    def __post_init__(self) -> None:
        if len(self.entries) != self.rows or any(len(row) != self.cols for row in self.entries):
            raise DimensionMismatchError(
                f"Matrix entries do not match declared shape {self.rows}x{self.cols}"
            )

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[ScalarLike]], cols: Optional[int] = None) -> "Matrix":
        parsed = tuple(tuple(parse_scalar(value) for value in row) for row in rows)
        width = cols if cols is not None else (len(parsed[0]) if parsed else 0)
        return cls(len(parsed), width, parsed)

    @classmethod
    def from_columns(cls, columns: Sequence[Mapping[int, Fraction]], rows: int) -> "Matrix":
        grid = [[ZERO] * len(columns) for _ in range(rows)]
        for j, column in enumerate(columns):
            for i, value in column.items():
                if i >= rows:
                    raise DimensionMismatchError(f"Column {j} has entry at row {i} >= {rows}")
                grid[i][j] = value
        return cls(rows, len(columns), tuple(tuple(row) for row in grid))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Matrix":
        return cls(rows, cols, tuple(tuple(ZERO for _ in range(cols)) for _ in range(rows)))

    @classmethod
    def identity(cls, size: int) -> "Matrix":
        return cls(
            size,
            size,
            tuple(tuple(ONE if i == j else ZERO for j in range(size)) for i in range(size)),
        )

    def row(self, index: int) -> SparseVector:
        return {j: v for j, v in enumerate(self.entries[index]) if v}

    def column(self, index: int) -> SparseVector:
        return {i: self.entries[i][index] for i in range(self.rows) if self.entries[i][index]}

    def columns(self) -> List[SparseVector]:
        return [self.column(j) for j in range(self.cols)]

    def transpose(self) -> "Matrix":
        return Matrix(
            self.cols,
            self.rows,
            tuple(tuple(self.entries[i][j] for i in range(self.rows)) for j in range(self.cols)),
        )

    def apply(self, vector: Sequence[ScalarLike]) -> Tuple[Fraction, ...]:
        if len(vector) != self.cols:
            raise DimensionMismatchError(f"Vector of length {len(vector)} for {self.cols} columns")
        parsed = [parse_scalar(v) for v in vector]
        return tuple(sum((a * b for a, b in zip(row, parsed)), ZERO) for row in self.entries)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise DimensionMismatchError(
                f"Cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}"
            )
        cols = [other.column(j) for j in range(other.cols)]
        grid = []
        for row in self.entries:
            grid.append(tuple(sum((row[k] * v for k, v in col.items()), ZERO) for col in cols))
        return Matrix(self.rows, other.cols, tuple(grid))

    def _check_same_shape(self, other: "Matrix") -> None:
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionMismatchError(
                f"Shape mismatch {self.rows}x{self.cols} vs {other.rows}x{other.cols}"
            )

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check_same_shape(other)
        return Matrix(
            self.rows,
            self.cols,
            tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.entries, other.entries)),
        )

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check_same_shape(other)
        return Matrix(
            self.rows,
            self.cols,
            tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(self.entries, other.entries)),
        )

    def is_zero(self) -> bool:
        return all(not value for row in self.entries for value in row)

    def rank(self) -> int:
        return len(rref(self)[1])

    def to_strings(self) -> List[List[str]]:
        return [[format_scalar(value) for value in row] for row in self.entries]


class RowEchelon:
    """Incrementally maintained reduced row echelon form of a span.

    Rows are kept fully reduced: each pivot row has a leading 1 and zeros in
    every other pivot column, so the result is the unique RREF of the span.
    With ``track=True`` each row also records which inserted vectors produced it.
    """

    def __init__(self, dim: int, track: bool = False) -> None:
        self.dim = dim
        self.track = track
        self._rows: Dict[int, SparseVector] = {}
        self._combos: Dict[int, SparseVector] = {}
        self._inserted = 0

    @property
    def pivots(self) -> List[int]:
        return sorted(self._rows)

    @property
    def rank(self) -> int:
        return len(self._rows)

    def row(self, pivot: int) -> SparseVector:
        return self._rows[pivot]

    def reduce(self, vector: Mapping[int, Fraction]) -> SparseVector:
        """Return vector minus its component in the span (zero at every pivot)."""
        result = dict(vector)
        for pivot in [p for p in vector if p in self._rows]:
            coeff = vector[pivot]
            vec_axpy(result, -coeff, self._rows[pivot])
        return result

    def express(self, vector: Mapping[int, Fraction]) -> Tuple[SparseVector, SparseVector]:
        """Return (residual, combination of inserted vectors reproducing the spanned part)."""
        if not self.track:
            raise RuntimeError("RowEchelon was created without combination tracking")
        residual = dict(vector)
        combination: SparseVector = {}
        for pivot in [p for p in vector if p in self._rows]:
            coeff = vector[pivot]
            vec_axpy(residual, -coeff, self._rows[pivot])
            vec_axpy(combination, coeff, self._combos[pivot])
        return residual, combination

    def add(self, vector: Mapping[int, Fraction]) -> bool:
        """Insert a vector; return True when it enlarged the span."""
        for index in vector:
            if index < 0 or index >= self.dim:
                raise DimensionMismatchError(f"Index {index} outside ambient dimension {self.dim}")
        tag = self._inserted
        self._inserted += 1
        if self.track:
            residual, combination = self.express(vector)
            combo = {tag: ONE}
            vec_axpy(combo, -ONE, combination)
        else:
            residual = self.reduce(vector)
            combo = {}
        if not residual:
            return False
        pivot = min(residual)
        inverse = ONE / residual[pivot]
        new_row = vec_scale(inverse, residual)
        new_combo = vec_scale(inverse, combo)
        for other_pivot, other_row in self._rows.items():
            coeff = other_row.get(pivot)
            if coeff:
                vec_axpy(other_row, -coeff, new_row)
                if self.track:
                    vec_axpy(self._combos[other_pivot], -coeff, new_combo)
        self._rows[pivot] = new_row
        if self.track:
            self._combos[pivot] = new_combo
        return True

    def extend(self, vectors: Iterable[Mapping[int, Fraction]]) -> "RowEchelon":
        for vector in vectors:
            self.add(vector)
        return self

    def contains(self, vector: Mapping[int, Fraction]) -> bool:
        return not self.reduce(vector)

    def kernel_vectors(self) -> List[SparseVector]:
        """Basis of the null space of the row space, one vector per free column."""
        pivots = set(self._rows)
        basis = []
        for free in range(self.dim):
            if free in pivots:
                continue
            vector: SparseVector = {free: ONE}
            for pivot, row in self._rows.items():
                value = row.get(free)
                if value:
                    vector[pivot] = -value
            basis.append(vector)
        return basis


def rref(m: Matrix) -> Tuple[Matrix, List[int]]:
    """Reduced row echelon form (zero rows at the bottom) and strictly increasing pivots."""
    echelon = RowEchelon(m.cols)
    for i in range(m.rows):
        echelon.add(m.row(i))
    pivots = echelon.pivots
    grid = [to_dense(echelon.row(p), m.cols) for p in pivots]
    grid.extend(tuple(ZERO for _ in range(m.cols)) for _ in range(m.rows - len(pivots)))
    return Matrix(m.rows, m.cols, tuple(grid)), pivots


def sparse_kernel(rows: Iterable[Mapping[int, Fraction]], dim: int) -> List[SparseVector]:
    """Null space basis of the system given by sparse rows over ``dim`` unknowns."""
    return RowEchelon(dim).extend(rows).kernel_vectors()


def kernel_basis(m: Matrix) -> List[Tuple[Fraction, ...]]:
    """Linearly independent vectors spanning {x : m x = 0}."""
    return [to_dense(v, m.cols) for v in sparse_kernel((m.row(i) for i in range(m.rows)), m.cols)]


@dataclass
class QuotientSpace:
    """Ambient space modulo the span of relation vectors.

    The canonical basis is the set of non-pivot coordinates of the relation
    RREF, ascending; ``project`` writes any ambient vector in that basis.
    """

    ambient_dim: int
    echelon: RowEchelon = field(repr=False)
    free: List[int] = field(default_factory=list)
    _free_index: Dict[int, int] = field(default_factory=dict, repr=False)

    @classmethod
    def build(cls, ambient_dim: int, relations: Iterable[Mapping[int, Fraction]]) -> "QuotientSpace":
        echelon = RowEchelon(ambient_dim)
        for relation in relations:
            echelon.add(relation)
        pivots = set(echelon.pivots)
        free = [i for i in range(ambient_dim) if i not in pivots]
        return cls(ambient_dim, echelon, free, {amb: k for k, amb in enumerate(free)})

    @property
    def dim(self) -> int:
        return len(self.free)

    @property
    def pivots(self) -> List[int]:
        return self.echelon.pivots

    @property
    def relation_basis(self) -> Matrix:
        return Matrix(
            self.echelon.rank,
            self.ambient_dim,
            tuple(to_dense(self.echelon.row(p), self.ambient_dim) for p in self.echelon.pivots),
        )

    @property
    def canonical_basis(self) -> List[SparseVector]:
        return [{amb: ONE} for amb in self.free]

    def project(self, vector: Mapping[int, Fraction]) -> SparseVector:
        reduced = self.echelon.reduce(vector)
        return {self._free_index[amb]: value for amb, value in reduced.items()}

    def section(self, coords: Mapping[int, Fraction]) -> SparseVector:
        return {self.free[k]: value for k, value in coords.items()}


def quotient(ambient_dim: int, relations: Sequence[Sequence[ScalarLike]]) -> QuotientSpace:
    """Quotient of Q^ambient_dim by the span of dense relation vectors."""
    sparse = []
    for relation in relations:
        if len(relation) != ambient_dim:
            raise DimensionMismatchError(
                f"Relation of length {len(relation)} in ambient dimension {ambient_dim}"
            )
        sparse.append(to_sparse(relation))
    space = QuotientSpace.build(ambient_dim, sparse)
    logger.debug("quotient: ambient %d, rank %d, dim %d", ambient_dim, space.echelon.rank, space.dim)
    return space


def solve_sparse(
    columns: Sequence[Mapping[int, Fraction]], target: Mapping[int, Fraction], dim: int
) -> Optional[SparseVector]:
    """Coefficients x with sum_j x_j columns[j] = target, or None when inconsistent."""
    echelon = RowEchelon(dim, track=True)
    for column in columns:
        echelon.add(column)
    residual, combination = echelon.express(target)
    if residual:
        return None
    return combination


def solve(m: Matrix, b: Sequence[ScalarLike]) -> Optional[Tuple[Fraction, ...]]:
    """Some solution of m x = b, or None when the system is inconsistent."""
    if len(b) != m.rows:
        raise DimensionMismatchError(f"Right-hand side of length {len(b)} for {m.rows} rows")
    solution = solve_sparse(m.columns(), to_sparse(b), m.rows)
    if solution is None:
        return None
    return to_dense(solution, m.cols)


__all__ = [
    "Scalar",
    "SparseVector",
    "Matrix",
    "RowEchelon",
    "QuotientSpace",
    "parse_scalar",
    "format_scalar",
    "vec_add",
    "vec_sub",
    "vec_axpy",
    "vec_scale",
    "to_dense",
    "to_sparse",
    "rref",
    "kernel_basis",
    "sparse_kernel",
    "quotient",
    "solve",
    "solve_sparse",
]
