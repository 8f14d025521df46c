"""Vectors, matrices and the bilinear map f(alpha, v) over a prime field."""
from dataclasses import dataclass
from typing import Iterable, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from gapchain.exceptions import DimensionMismatch, FieldError, ParseError
from gapchain.ff.prime_field import PrimeField

EMPTY_VEC_TOKEN = "-"


@dataclass(frozen=True)
class FieldVec:
    field: PrimeField
    entries: Tuple[int, ...]

    def __post_init__(self) -> None:
        for a in self.entries:
            self.field.check(a)

    @classmethod
    def of(cls, field: PrimeField, values: Iterable[int]) -> "FieldVec":
        """Build a vector, reducing every value mod p."""
        return cls(field, tuple(int(a) % field.p for a in values))

    @classmethod
    def zero(cls, field: PrimeField, dim: int) -> "FieldVec":
        return cls(field, (0,) * dim)

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterator[int]:
        return iter(self.entries)

    def __getitem__(self, i: int) -> int:
        return self.entries[i]

    def _same_shape(self, other: "FieldVec") -> None:
        if self.field != other.field or len(self) != len(other):
            raise DimensionMismatch(
                f"cannot combine vectors of length {len(self)} over {self.field} "
                f"and length {len(other)} over {other.field}"
            )

    def __add__(self, other: "FieldVec") -> "FieldVec":
        self._same_shape(other)
        p = self.field.p
        return FieldVec(self.field, tuple((a + b) % p for a, b in zip(self, other)))

    def __sub__(self, other: "FieldVec") -> "FieldVec":
        self._same_shape(other)
        p = self.field.p
        return FieldVec(self.field, tuple((a - b) % p for a, b in zip(self, other)))

    def __neg__(self) -> "FieldVec":
        p = self.field.p
        return FieldVec(self.field, tuple((-a) % p for a in self))

    def scale(self, a: int) -> "FieldVec":
        p = self.field.p
        return FieldVec(self.field, tuple((a * b) % p for b in self))

    def dot(self, other: "FieldVec") -> int:
        self._same_shape(other)
        return sum(a * b for a, b in zip(self, other)) % self.field.p

    def is_zero(self) -> bool:
        return not any(self.entries)

    def __str__(self) -> str:
        return format_vec(self)


@dataclass(frozen=True)
class FieldMat:
    field: PrimeField
    rows: Tuple[Tuple[int, ...], ...]
    n_cols: int

    def __post_init__(self) -> None:
        for row in self.rows:
            if len(row) != self.n_cols:
                raise DimensionMismatch("matrix rows must all have the same length")
            for a in row:
                self.field.check(a)

    @classmethod
    def of(
        cls, field: PrimeField, rows: Sequence[Sequence[int]], n_cols: Optional[int] = None
    ) -> "FieldMat":
        if n_cols is None:
            n_cols = len(rows[0]) if rows else 0
        reduced = tuple(tuple(int(a) % field.p for a in row) for row in rows)
        return cls(field, reduced, n_cols)

    @classmethod
    def from_array(cls, field: PrimeField, array: "np.ndarray") -> "FieldMat":
        n_rows, n_cols = array.shape
        return cls.of(field, array.tolist(), n_cols=n_cols)

    @property
    def n_rows(self) -> int:
        return len(self.rows)

    def row(self, i: int) -> FieldVec:
        return FieldVec(self.field, self.rows[i])

    def as_array(self) -> "np.ndarray":
        return np.array(self.rows, dtype=np.int64).reshape(self.n_rows, self.n_cols)

    def matvec(self, v: FieldVec) -> FieldVec:
        if len(v) != self.n_cols or v.field != self.field:
            raise DimensionMismatch(
                f"matrix with {self.n_cols} columns applied to vector of length {len(v)}"
            )
        out = self.as_array() @ np.array(v.entries, dtype=np.int64) % self.field.p
        return FieldVec(self.field, tuple(int(a) for a in out))

    def is_zero(self) -> bool:
        return not any(any(row) for row in self.rows)


def bilinear_f(alpha: FieldVec, v: FieldVec, mats: Sequence[FieldMat]) -> FieldVec:
    """Return (<alpha, A_1 v>, ..., <alpha, A_l v>)."""
    if not mats:
        raise DimensionMismatch("bilinear map needs at least one matrix")
    field = alpha.field
    out = []
    for a_w in mats:
        if a_w.n_rows != len(alpha) or a_w.n_cols != len(v) or a_w.field != field:
            raise DimensionMismatch(
                f"matrix {a_w.n_rows}x{a_w.n_cols} does not fit alpha of length "
                f"{len(alpha)} and v of length {len(v)}"
            )
        out.append(alpha.dot(a_w.matvec(v)))
    return FieldVec(field, tuple(out))


def stack_mats(mats: Sequence[FieldMat]) -> "np.ndarray":
    """Stack l matrices of shape k x d into an int64 array of shape (l, k, d)."""
    if not mats:
        raise DimensionMismatch("no matrices to stack")
    return np.stack([m.as_array() for m in mats])


def poly_eval(coeffs: Sequence[FieldVec], x: int) -> FieldVec:
    """Horner evaluation of sum_j coeffs[j] * x**j, componentwise in F^l."""
    if not coeffs:
        raise DimensionMismatch("polynomial needs at least one coefficient")
    field = coeffs[0].field
    if len(coeffs) - 1 >= field.p:
        raise FieldError(f"degree {len(coeffs) - 1} is not below p = {field.p}")
    acc = coeffs[-1]
    for c in reversed(coeffs[:-1]):
        acc = acc.scale(x) + c
    return acc


def row_reduce(array: "np.ndarray", p: int) -> Tuple["np.ndarray", List[int]]:
    """Reduced row echelon form over F_p and the pivot columns."""
    a = np.array(array, dtype=np.int64) % p
    n_rows, n_cols = a.shape
    pivots: List[int] = []
    r = 0
    for c in range(n_cols):
        if r == n_rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        a[r] = a[r] * pow(int(a[r, c]), p - 2, p) % p
        for i in range(n_rows):
            if i != r and a[i, c]:
                a[i] = (a[i] - a[i, c] * a[r]) % p
        pivots.append(c)
        r += 1
    return a, pivots


def rank_mod_p(array: "np.ndarray", p: int) -> int:
    return len(row_reduce(array, p)[1])


def nullspace_basis(array: "np.ndarray", p: int) -> List[Tuple[int, ...]]:
    """Basis of {v : array @ v = 0 mod p}, one vector per free column."""
    rref, pivots = row_reduce(array, p)
    n_cols = rref.shape[1]
    basis = []
    for free in (c for c in range(n_cols) if c not in pivots):
        v = [0] * n_cols
        v[free] = 1
        for row, c in enumerate(pivots):
            v[c] = int(-rref[row, free]) % p
        basis.append(tuple(v))
    return basis


def format_vec(v: FieldVec) -> str:
    if not v.entries:
        return EMPTY_VEC_TOKEN
    return " ".join(str(a) for a in v.entries)


def parse_vec(
    text: str, field: PrimeField, dim: Optional[int] = None, line: Optional[int] = None
) -> FieldVec:
    tokens = text.split()
    if tokens == [EMPTY_VEC_TOKEN]:
        tokens = []
    try:
        values = [int(tok) for tok in tokens]
    except ValueError:
        raise ParseError(f"non-integer entry in vector {text.strip()!r}", line)
    if dim is not None and len(values) != dim:
        raise ParseError(f"expected {dim} entries, found {len(values)}", line)
    if any(not 0 <= a < field.p for a in values):
        raise ParseError(f"entry out of range for {field} in {text.strip()!r}", line)
    return FieldVec(field, tuple(values))


def format_mat(m: FieldMat) -> List[str]:
    """Row-major block, one row per line."""
    return [format_vec(m.row(i)) for i in range(m.n_rows)]


def parse_mat(
    lines: Sequence[str], field: PrimeField, n_cols: int, first_line: int = 1
) -> FieldMat:
    rows = [
        parse_vec(text, field, dim=n_cols, line=first_line + i).entries
        for i, text in enumerate(lines)
    ]
    return FieldMat(field, tuple(rows), n_cols)
