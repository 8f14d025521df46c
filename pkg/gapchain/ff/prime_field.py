"""Prime fields F_p with residues stored as smallest non-negative representatives."""
from dataclasses import dataclass
from typing import Iterator, Optional

from gapchain.exceptions import FieldError
from gapchain.gapchain_globals import DEFAULT_PRIME

FIELD_OPS = ("add", "sub", "mul", "neg", "inv")


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


@dataclass(frozen=True)
class PrimeField:
    """The field F_p. Only prime moduli are accepted."""

    p: int = DEFAULT_PRIME

    def __post_init__(self) -> None:
        if not is_prime(self.p):
            raise FieldError(f"field modulus {self.p} is not prime")

    def __str__(self) -> str:
        return f"F_{self.p}"

    def reduce(self, a: int) -> int:
        return a % self.p

    def check(self, a: int) -> int:
        if not 0 <= a < self.p:
            raise FieldError(f"{a} is not a reduced residue mod {self.p}")
        return a

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.p

    def sub(self, a: int, b: int) -> int:
        return (a - b) % self.p

    def mul(self, a: int, b: int) -> int:
        return (a * b) % self.p

    def neg(self, a: int) -> int:
        return (-a) % self.p

    def inv(self, a: int) -> int:
        if a % self.p == 0:
            raise FieldError("inversion of zero")
        return pow(a, self.p - 2, self.p)

    def elements(self) -> Iterator[int]:
        return iter(range(self.p))

    def nonzero(self) -> Iterator[int]:
        return iter(range(1, self.p))

    def require_degree(self, d: int) -> None:
        """Low-degree testing of degree d needs p > 2d."""
        if self.p <= 2 * d:
            raise FieldError(f"degree {d} needs a field with p > {2 * d}, got p = {self.p}")


def field_ops(
    a: int, b: Optional[int], op: str, field: PrimeField = PrimeField()
) -> int:
    """Apply one of add, sub, mul, neg, inv to reduced residues (b is ignored for neg/inv)."""
    if op not in FIELD_OPS:
        raise FieldError(f"unknown field operation {op!r}; expected one of {FIELD_OPS}")
    field.check(a)
    if op in ("neg", "inv"):
        return getattr(field, op)(a)  # type: ignore[no-any-return]
    if b is None:
        raise FieldError(f"operation {op} needs two operands")
    field.check(b)
    return getattr(field, op)(a, b)  # type: ignore[no-any-return]
