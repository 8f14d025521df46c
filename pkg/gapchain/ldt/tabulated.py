"""Functions F^m -> F^l stored as full tables."""
from dataclasses import dataclass
from itertools import product
from typing import Dict, Iterator, List, Sequence, Tuple

import numpy as np

from gapchain.exceptions import DimensionMismatch, ParseError
from gapchain.ff import PrimeField

Exponents = Tuple[int, ...]


@dataclass(frozen=True, eq=False)
class TabulatedFunction:
    """
    A total map F^m -> F^l. Row j of `table` holds the value at the j-th point of F^m
    in lexicographic order (first coordinate most significant).
    """

    field: PrimeField
    m: int
    ell: int
    table: "np.ndarray"

    def __post_init__(self) -> None:
        expected = (self.field.p ** self.m, self.ell)
        if self.table.shape != expected:
            raise DimensionMismatch(f"table has shape {self.table.shape}, expected {expected}")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TabulatedFunction):
            return NotImplemented
        return (
            self.field == other.field
            and self.m == other.m
            and self.ell == other.ell
            and bool(np.array_equal(self.table, other.table))
        )

    @property
    def size(self) -> int:
        return int(self.table.shape[0])

    def index(self, x: Sequence[int]) -> int:
        p = self.field.p
        idx = 0
        for c in x:
            idx = idx * p + int(c) % p
        return idx

    def __call__(self, x: Sequence[int]) -> Tuple[int, ...]:
        return tuple(int(a) for a in self.table[self.index(x)])

    def points(self) -> "np.ndarray":
        return all_points(self.field.p, self.m)

    def with_value(self, x: Sequence[int], value: Sequence[int]) -> "TabulatedFunction":
        table = self.table.copy()
        table[self.index(x)] = np.array(value, dtype=np.int64) % self.field.p
        return TabulatedFunction(self.field, self.m, self.ell, table)


def all_points(p: int, m: int) -> "np.ndarray":
    """Every point of F_p^m, shape (p^m, m), in lexicographic order."""
    if m == 0:
        return np.zeros((1, 0), dtype=np.int64)
    return np.array(list(product(range(p), repeat=m)), dtype=np.int64)


def point_indices(points: "np.ndarray", p: int) -> "np.ndarray":
    """Vectorized base-p index of points along the last axis."""
    m = points.shape[-1]
    weights = p ** np.arange(m - 1, -1, -1, dtype=np.int64)
    return (points % p) @ weights


def monomials(m: int, d: int) -> List[Exponents]:
    """Exponent tuples of total degree <= d, ordered by degree then lexicographically."""
    exps = [e for e in product(range(d + 1), repeat=m) if sum(e) <= d]
    return sorted(exps, key=lambda e: (sum(e), e))


def monomial_matrix(p: int, m: int, d: int) -> "np.ndarray":
    """Value of every monomial at every point, shape (p^m, #monomials)."""
    pts = all_points(p, m)
    cols = []
    for e in monomials(m, d):
        col = np.ones(pts.shape[0], dtype=np.int64)
        for j, power in enumerate(e):
            col = col * (pts[:, j] ** power % p) % p
        cols.append(col)
    return np.stack(cols, axis=1)


def polynomial_table(
    field: PrimeField, m: int, coeffs: Dict[Exponents, Sequence[int]], ell: int
) -> TabulatedFunction:
    """Tabulate sum_e coeffs[e] * x^e with vector coefficients in F^l."""
    p = field.p
    pts = all_points(p, m)
    table = np.zeros((pts.shape[0], ell), dtype=np.int64)
    for e, c in coeffs.items():
        if len(c) != ell:
            raise DimensionMismatch(f"coefficient of {e} has length {len(c)}, expected {ell}")
        mono = np.ones(pts.shape[0], dtype=np.int64)
        for j, power in enumerate(e):
            mono = mono * (pts[:, j] ** power % p) % p
        table = (table + mono[:, None] * np.array(c, dtype=np.int64)[None, :]) % p
    return TabulatedFunction(field, m, ell, table)


def random_polynomial_table(
    field: PrimeField, m: int, ell: int, d: int, rng: np.random.Generator
) -> TabulatedFunction:
    coeffs = {e: rng.integers(0, field.p, size=ell).tolist() for e in monomials(m, d)}
    return polynomial_table(field, m, coeffs, ell)


def random_function_table(
    field: PrimeField, m: int, ell: int, rng: np.random.Generator
) -> TabulatedFunction:
    table = rng.integers(0, field.p, size=(field.p ** m, ell), dtype=np.int64)
    return TabulatedFunction(field, m, ell, table)


def iter_rows(f: TabulatedFunction) -> Iterator[Tuple[int, ...]]:
    for row in f.table:
        yield tuple(int(a) for a in row)


def format_table(f: TabulatedFunction) -> str:
    lines = [f"function {f.m} {f.ell} {f.field.p}"]
    lines.extend(" ".join(str(a) for a in row) if row else "-" for row in iter_rows(f))
    return "\n".join(lines) + "\n"


def parse_table(text: str) -> TabulatedFunction:
    lines = text.rstrip("\n").splitlines()
    if not lines:
        raise ParseError("empty function table", 1)
    header = lines[0].split()
    if len(header) != 4 or header[0] != "function":
        raise ParseError(f"malformed header {lines[0]!r}", 1)
    try:
        m, ell, p = (int(x) for x in header[1:])
        field = PrimeField(p)
    except Exception as e:
        raise ParseError(f"malformed header {lines[0]!r}: {e}", 1)
    rows = lines[1:]
    if len(rows) != p ** m:
        raise ParseError(f"expected {p ** m} rows, found {len(rows)}", len(lines))
    table = np.zeros((p ** m, ell), dtype=np.int64)
    for j, row in enumerate(rows):
        tokens = [] if row.strip() == "-" else row.split()
        if len(tokens) != ell:
            raise ParseError(f"expected {ell} values, found {len(tokens)}", j + 2)
        try:
            values = [int(t) for t in tokens]
        except ValueError:
            raise ParseError(f"non-integer value in {row!r}", j + 2)
        if any(not 0 <= a < p for a in values):
            raise ParseError(f"value out of range in {row!r}", j + 2)
        table[j] = values
    return TabulatedFunction(field, m, ell, table)
