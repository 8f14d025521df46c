"""k-VectorSum instances and their text format."""
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from gapchain.exceptions import DimensionMismatch, FieldError, ParseError
from gapchain.ff import FieldVec, PrimeField, format_vec, parse_vec


@dataclass(frozen=True)
class PartitionLayout:
    """
    Contiguous split of the clauses into k parts.

    parts[i] is the half-open clause range (start, stop) of part i. var_parts maps each
    variable to the sorted parts it occurs in. X holds variables seen in exactly two
    parts, Y those seen in three; entry_map gives their vector coordinates.
    """

    k: int
    parts: Tuple[Tuple[int, int], ...]
    var_parts: Dict[int, Tuple[int, ...]]
    X: Tuple[int, ...]
    Y: Tuple[int, ...]
    entry_map: Dict[int, Tuple[int, ...]]

    @property
    def d(self) -> int:
        return len(self.X) + 2 * len(self.Y)


@dataclass(frozen=True)
class VectorSumInstance:
    field: PrimeField
    d: int
    groups: Tuple[Tuple[FieldVec, ...], ...]
    target: FieldVec
    layout: Optional[PartitionLayout] = field(default=None, compare=False)

    def __post_init__(self) -> None:
        if len(self.target) != self.d or self.target.field != self.field:
            raise DimensionMismatch(f"target has length {len(self.target)}, expected {self.d}")
        for i, group in enumerate(self.groups):
            for v in group:
                if len(v) != self.d or v.field != self.field:
                    raise DimensionMismatch(f"group {i} holds a vector of length {len(v)}")

    @classmethod
    def build(
        cls,
        field: PrimeField,
        groups: Sequence[Sequence[Sequence[int]]],
        d: Optional[int] = None,
        target: Optional[Sequence[int]] = None,
    ) -> "VectorSumInstance":
        """Convenience constructor from nested integer lists; target defaults to zero."""
        if d is None:
            d = next((len(v) for g in groups for v in g), 0)
        vec_groups = tuple(tuple(FieldVec.of(field, v) for v in g) for g in groups)
        tgt = FieldVec.of(field, target) if target is not None else FieldVec.zero(field, d)
        return cls(field, d, vec_groups, tgt)

    @property
    def k(self) -> int:
        return len(self.groups)

    @property
    def size(self) -> int:
        """n = sum of group sizes."""
        return sum(len(g) for g in self.groups)

    @property
    def empty_groups(self) -> Tuple[int, ...]:
        return tuple(i for i, g in enumerate(self.groups) if not g)

    def witness_sum(self, witness: Sequence[int]) -> FieldVec:
        if len(witness) != self.k:
            raise DimensionMismatch(f"witness has {len(witness)} indices for {self.k} groups")
        total = FieldVec.zero(self.field, self.d)
        for group, idx in zip(self.groups, witness):
            total = total + group[idx]
        return total

    def is_witness(self, witness: Sequence[int]) -> bool:
        return self.witness_sum(witness) == self.target


def format_instance(inst: VectorSumInstance) -> str:
    lines = [
        "vectorsum",
        f"p {inst.field.p}",
        f"d {inst.d}",
        f"k {inst.k}",
        f"target {format_vec(inst.target)}",
    ]
    for i, group in enumerate(inst.groups):
        lines.append(f"group {i + 1} {len(group)}")
        lines.extend(format_vec(v) for v in group)
    lines.append("end")
    return "\n".join(lines) + "\n"


def _expect(lines: List[str], pos: int, key: str) -> str:
    if pos >= len(lines):
        raise ParseError(f"unexpected end of input, expected {key!r}", pos)
    fields = lines[pos].split(None, 1)
    if not fields or fields[0] != key:
        raise ParseError(f"expected {key!r}, found {lines[pos].strip()!r}", pos + 1)
    return fields[1] if len(fields) > 1 else ""


def _int(text: str, line: int) -> int:
    try:
        return int(text)
    except ValueError:
        raise ParseError(f"expected an integer, found {text!r}", line)


def parse_instance_lines(lines: List[str], pos: int = 0) -> Tuple[VectorSumInstance, int]:
    """Parse one instance block starting at lines[pos]; return it and the next position."""
    _expect(lines, pos, "vectorsum")
    p = _int(_expect(lines, pos + 1, "p"), pos + 2)
    try:
        field_ = PrimeField(p)
    except FieldError as e:
        raise ParseError(str(e), pos + 2)
    d = _int(_expect(lines, pos + 2, "d"), pos + 3)
    k = _int(_expect(lines, pos + 3, "k"), pos + 4)
    target = parse_vec(_expect(lines, pos + 4, "target"), field_, dim=d, line=pos + 5)
    pos += 5
    groups = []
    for i in range(k):
        header = _expect(lines, pos, "group").split()
        if len(header) != 2 or _int(header[0], pos + 1) != i + 1:
            raise ParseError(f"malformed group header {lines[pos].strip()!r}", pos + 1)
        count = _int(header[1], pos + 1)
        pos += 1
        if pos + count > len(lines):
            raise ParseError(f"group {i + 1} is truncated", len(lines))
        groups.append(
            tuple(parse_vec(lines[pos + j], field_, dim=d, line=pos + j + 1) for j in range(count))
        )
        pos += count
    _expect(lines, pos, "end")
    return VectorSumInstance(field_, d, tuple(groups), target), pos + 1


def parse_instance(text: str) -> VectorSumInstance:
    lines = text.rstrip("\n").splitlines()
    inst, pos = parse_instance_lines(lines)
    if pos != len(lines):
        raise ParseError("trailing data after instance", pos + 1)
    return inst
