#!/usr/bin/env python
import pytest
from hypothesis import given
from hypothesis import strategies as st

from gapchain.cnf import CnfFormula, parse_dimacs, sat_bruteforce, to_dimacs, tovey_normalize
from gapchain.exceptions import BudgetExceeded, ParseError, PreconditionError


@st.composite
def cnf_formulas(draw, max_vars=8, max_clauses=10):
    n = draw(st.integers(min_value=1, max_value=max_vars))
    m = draw(st.integers(min_value=1, max_value=max_clauses))
    clauses = []
    for _ in range(m):
        size = draw(st.integers(min_value=1, max_value=min(3, n)))
        xs = draw(st.lists(st.integers(1, n), min_size=size, max_size=size, unique=True))
        signs = draw(st.lists(st.booleans(), min_size=size, max_size=size))
        clauses.append(tuple(x if s else -x for x, s in zip(xs, signs)))
    return CnfFormula(n, tuple(clauses))


def test_parse_minimal():
    f = parse_dimacs("p cnf 1 1\n1 0")
    assert f.num_vars == 1
    assert f.clauses == ((1,),)
    assert f.normalized


def test_parse_two_clauses(two_clause):
    assert two_clause.num_vars == 3
    assert two_clause.num_clauses == 2
    assert two_clause.clauses == ((1, 2, 3), (-1, 2, 3))


def test_parse_bytes_and_comments():
    f = parse_dimacs(b"c a comment\np cnf 2 1\n1\n-2 0\n")
    assert f.clauses == ((1, -2),)


def test_parse_out_of_range_literal():
    with pytest.raises(ParseError) as excinfo:
        parse_dimacs("p cnf 1 1\n1 1 2 0")
    assert excinfo.value.line == 2


def test_parse_errors():
    for text in (
        "1 2 0\n",
        "p cnf 3 1\n1 2 3 -1 0\n",
        "p cnf 4 1\n1 2 3 4 0\n",
        "p cnf 2 2\n1 2 0\n",
        "p cnf 2 1\n1 2\n",
        "p dnf 2 1\n1 2 0\n",
    ):
        with pytest.raises(ParseError):
            parse_dimacs(text)


def test_duplicate_literals_dropped():
    f = parse_dimacs("p cnf 2 1\n1 1 2 1 0\n")
    assert f.clauses == ((1, 2),)


def test_dimacs_round_trip(two_clause):
    assert to_dimacs(two_clause) == "p cnf 3 2\n1 2 3 0\n-1 2 3 0\n"
    assert parse_dimacs(to_dimacs(two_clause)) == two_clause


def test_normalized_flag_is_checked():
    clauses = ((1,),) * 4
    with pytest.raises(PreconditionError):
        CnfFormula(1, clauses, normalized=True)


def test_tovey_four_occurrences():
    f = CnfFormula(2, ((1, 2), (1, -2), (-1, 2), (-1,)))
    g = tovey_normalize(f)
    assert g.normalized
    assert g.num_vars == 2 + 4
    # four copies, one per occurrence, and one implication clause per copy
    assert g.num_clauses == 4 + 4
    assert g.max_occurrence() <= 3


def test_tovey_idempotent_on_normalized(two_clause):
    assert tovey_normalize(two_clause).clauses == two_clause.clauses


@given(cnf_formulas(max_vars=4, max_clauses=5))
def test_tovey_equisatisfiable(f):
    g = tovey_normalize(f)
    assert g.is_normalized()
    assert g.num_vars <= 3 * f.num_clauses + f.num_vars
    tau = sat_bruteforce(f)
    if tau is None:
        assert sat_bruteforce(g) is None
        return
    # every copy takes the value of its original
    lifted = list(tau)
    for x, c in sorted(f.occurrences().items()):
        if c > 3:
            lifted += [tau[x - 1]] * c
    assert g.evaluate(lifted)


def test_sat_empty_formula():
    assert sat_bruteforce(CnfFormula(3, ())) == (0, 0, 0)


def test_sat_contradiction():
    assert sat_bruteforce(CnfFormula(1, ((1,), (-1,)))) is None


def test_sat_first_model(two_clause):
    """Enumeration flips x1 fastest; (0, 1, 0) is the first model."""
    assert sat_bruteforce(two_clause) == (0, 1, 0)


@given(cnf_formulas())
def test_sat_model_satisfies(f):
    tau = sat_bruteforce(f)
    if tau is not None:
        assert f.evaluate(tau)


def test_sat_variable_limit():
    with pytest.raises(BudgetExceeded):
        sat_bruteforce(CnfFormula(30, ((1,),)), limit=24)
