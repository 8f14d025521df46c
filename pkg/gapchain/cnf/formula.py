"""3-CNF formulas and DIMACS input/output."""
from collections import Counter
from dataclasses import dataclass, field, replace
from typing import Dict, Sequence, Tuple, Union

from gapchain.exceptions import ParseError, PreconditionError

Clause = Tuple[int, ...]
MAX_CLAUSE_LEN = 3
MAX_OCCURRENCES = 3


@dataclass(frozen=True)
class CnfFormula:
    """
    A CNF formula with clauses of at most three literals.

    Literals are signed 1-based variable indices. `normalized` certifies that every
    variable occurs in at most three clauses; it is validated when set.
    """

    num_vars: int
    clauses: Tuple[Clause, ...] = field(default_factory=tuple)
    normalized: bool = False

    def __post_init__(self) -> None:
        if self.num_vars < 0:
            raise PreconditionError("num_vars must be non-negative")
        for idx, clause in enumerate(self.clauses):
            if len(clause) > MAX_CLAUSE_LEN:
                raise PreconditionError(f"clause {idx} has more than {MAX_CLAUSE_LEN} literals")
            for lit in clause:
                if lit == 0 or abs(lit) > self.num_vars:
                    raise PreconditionError(f"clause {idx} references variable {abs(lit)}")
                if -lit in clause:
                    raise PreconditionError(f"clause {idx} contains x and not x")
        if self.normalized and self.max_occurrence() > MAX_OCCURRENCES:
            raise PreconditionError("formula flagged normalized has a variable in > 3 clauses")

    @property
    def num_clauses(self) -> int:
        return len(self.clauses)

    def occurrences(self) -> Dict[int, int]:
        """Number of clauses each variable occurs in (variables never seen are absent)."""
        counts: Counter = Counter()
        for clause in self.clauses:
            counts.update({abs(lit) for lit in clause})
        return dict(counts)

    def max_occurrence(self) -> int:
        return max(self.occurrences().values(), default=0)

    def is_normalized(self) -> bool:
        return self.max_occurrence() <= MAX_OCCURRENCES

    def with_normalized_flag(self) -> "CnfFormula":
        return replace(self, normalized=self.is_normalized())

    def evaluate(self, tau: Sequence[int]) -> bool:
        """Evaluate under tau, where tau[i] is the value of variable i + 1."""
        if len(tau) != self.num_vars:
            raise PreconditionError(f"assignment has {len(tau)} values for {self.num_vars} vars")
        for clause in self.clauses:
            if not any((tau[abs(lit) - 1] == 1) == (lit > 0) for lit in clause):
                return False
        return True


def _dedup(literals: Sequence[int]) -> Clause:
    seen = []
    for lit in literals:
        if lit not in seen:
            seen.append(lit)
    return tuple(seen)


def parse_dimacs(text: Union[bytes, str]) -> CnfFormula:
    """
    Parse DIMACS CNF. Clauses may span lines and end with 0. Duplicate literals are
    dropped; clauses must then have at most three literals. The result is flagged
    normalized whenever the occurrence bound holds.
    """
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError:
            raise ParseError("input is not valid UTF-8")
    header = None
    clauses = []
    current: list = []
    current_start = 0
    line_no = 0
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("%"):
            break
        if line.startswith("p"):
            if header is not None:
                raise ParseError("duplicate header", line_no)
            fields = line.split()
            if len(fields) != 4 or fields[1] != "cnf":
                raise ParseError(f"malformed header {line!r}", line_no)
            try:
                header = (int(fields[2]), int(fields[3]))
            except ValueError:
                raise ParseError(f"malformed header {line!r}", line_no)
            if header[0] < 0 or header[1] < 0:
                raise ParseError("negative counts in header", line_no)
            continue
        if header is None:
            raise ParseError("clause before 'p cnf' header", line_no)
        for token in line.split():
            try:
                lit = int(token)
            except ValueError:
                raise ParseError(f"invalid literal {token!r}", line_no)
            if not current:
                current_start = line_no
            if lit == 0:
                clause = _dedup(current)
                if len(clause) > MAX_CLAUSE_LEN:
                    raise ParseError(
                        f"clause has {len(clause)} literals, at most {MAX_CLAUSE_LEN} allowed",
                        current_start,
                    )
                if any(-x in clause for x in clause):
                    raise ParseError("clause contains a variable and its negation", current_start)
                clauses.append(clause)
                current = []
                continue
            if abs(lit) > header[0]:
                raise ParseError(f"variable {abs(lit)} out of range 1..{header[0]}", line_no)
            current.append(lit)
    if header is None:
        raise ParseError("missing 'p cnf' header", max(line_no, 1))
    if current:
        raise ParseError("last clause is not terminated by 0", line_no)
    if len(clauses) != header[1]:
        raise ParseError(f"header announces {header[1]} clauses, found {len(clauses)}", line_no)
    return CnfFormula(header[0], tuple(clauses)).with_normalized_flag()


def to_dimacs(f: CnfFormula) -> str:
    lines = [f"p cnf {f.num_vars} {f.num_clauses}"]
    for clause in f.clauses:
        lines.append(" ".join(str(lit) for lit in clause + (0,)))
    return "\n".join(lines) + "\n"
