#!/usr/bin/env python
import logging
from fractions import Fraction

import pytest

from gapchain.exceptions import ParseError, PreconditionError, VerificationFailed
from gapchain.graphs import format_graph, parse_graph
from gapchain.pihchain import (
    LEFT,
    RIGHT,
    Disperser,
    ExplicitBiclique,
    biclique_compress,
    biclique_sides,
    biclique_to_densest,
    clique_to_biclique,
    compress_witness,
    covered_groups,
    decode_biclique_to_clique,
    decode_compressed_biclique,
    densest_completeness_value,
    densest_soundness_bound,
    disperser_ell,
    format_disperser,
    is_biclique,
    kaa_free_edge_search,
    kst_bound,
    lift_clique,
    make_disperser,
    max_kaa_free_edges,
    parse_disperser,
    verify_disperser,
    with_verification,
)

PLANTED = [0, 2, 4, 6]


def halves():
    return Disperser(4, 2, 2, 1, Fraction(1, 2), ((0, 1), (2, 3)), "exact")


def test_clique_to_biclique(planted_graph):
    b = clique_to_biclique(planted_graph)
    assert b.k == 4
    assert b.group_count == 8
    assert biclique_sides(b) == (LEFT,) * 4 + (RIGHT,) * 4
    assert b.adjacent((LEFT, 0, 0), (RIGHT, 0, 0))
    assert not b.adjacent((LEFT, 0, 0), (RIGHT, 0, 1))
    assert not b.adjacent((LEFT, 0, 0), (LEFT, 1, 2))
    assert b.adjacent((LEFT, 0, 0), (RIGHT, 1, 2))


def test_biclique_completeness_and_decoding(planted_graph):
    b = clique_to_biclique(planted_graph)
    left, right = lift_clique(b, PLANTED)
    assert is_biclique(b, left, right)
    assert decode_biclique_to_clique(b, left, right) == PLANTED


def test_partial_biclique_decodes_to_overlap(planted_graph):
    """A K_{3,3} over groups {0,1,2} and {1,2,3} decodes to a clique on {1,2}."""
    b = clique_to_biclique(planted_graph)
    left, right = lift_clique(b, PLANTED)
    clique = decode_biclique_to_clique(b, left[:3], right[1:])
    assert clique == [2, 4]
    assert len(clique) >= 3 + 3 - 4


def test_decoding_rejects_disagreement(planted_graph):
    b = clique_to_biclique(planted_graph)
    with pytest.raises(VerificationFailed):
        decode_biclique_to_clique(b, [(LEFT, 1, 2)], [(RIGHT, 1, 3)])


def test_is_biclique_checks_sides(planted_graph):
    b = clique_to_biclique(planted_graph)
    left, right = lift_clique(b, PLANTED)
    assert not is_biclique(b, right, left)
    assert not is_biclique(b, left + left[:1], right)


def test_explicit_biclique(planted_graph):
    b = clique_to_biclique(planted_graph)
    graph = b.materialize()
    text = format_graph(graph, biclique_sides(b))
    again, sides = parse_graph(text)
    explicit = ExplicitBiclique(again, sides)
    assert explicit.k == 4
    assert explicit.group_size((RIGHT, 3)) == 2
    assert explicit.vertex_count() == 16


def test_explicit_biclique_rejects_bad_sides(planted_graph):
    graph = clique_to_biclique(planted_graph).materialize()
    with pytest.raises(PreconditionError):
        ExplicitBiclique(graph, (LEFT,) * 8)
    with pytest.raises(PreconditionError):
        ExplicitBiclique(graph, (LEFT, RIGHT) * 4)
    with pytest.raises(PreconditionError):
        ExplicitBiclique(graph, (LEFT,) * 4)


def test_disperser_ell():
    assert disperser_ell(30, 10, Fraction(1, 2)) == 18
    assert disperser_ell(30, 8, 0.5) == 23


def test_make_disperser():
    d = make_disperser(30, 10, 8, Fraction(1, 2), seed=3)
    assert d.ell == 23
    assert all(len(s) == 23 for s in d.subsets)
    assert d.threshold == 15
    assert d == make_disperser(30, 10, 8, Fraction(1, 2), seed=3)
    report = verify_disperser(d)
    assert report.ok
    assert report.checked == 45
    assert with_verification(d, report).verified == "exact"


def test_disperser_oversized_ell():
    # l = ceil(90 / 2) = 45 > m = 30
    with pytest.raises(PreconditionError) as e:
        make_disperser(30, 8, 4, Fraction(1, 2))
    assert "45" in str(e.value)


def test_disperser_cap(caplog):
    with caplog.at_level(logging.WARNING):
        d = make_disperser(30, 8, 4, Fraction(1, 2), cap=True)
    assert d.ell == 30
    assert d.verified == "capped"
    assert "capped" in caplog.text
    report = verify_disperser(d)
    assert report.ok
    # a trivial pass never upgrades a capped disperser to exact
    assert with_verification(d, report).verified == "capped"


def test_disperser_preconditions():
    with pytest.raises(PreconditionError):
        make_disperser(2, 100, 2, Fraction(1, 2))
    with pytest.raises(PreconditionError):
        make_disperser(30, 8, 4, 1)
    with pytest.raises(PreconditionError):
        make_disperser(0, 8, 4, Fraction(1, 2))


def test_disperser_violation():
    d = Disperser(4, 2, 1, 2, Fraction(1, 2), ((0,), (0,)))
    report = verify_disperser(d)
    assert not report.ok
    assert report.violation == (0, 1)
    assert report.union_size == 1
    assert report.status == "unverified"
    assert not verify_disperser(d, mode="montecarlo", trials=5).ok


def test_disperser_montecarlo():
    d = make_disperser(30, 10, 8, Fraction(1, 2), seed=1)
    report = verify_disperser(d, mode="montecarlo", trials=100)
    assert report.ok
    assert report.violation_rate_bound == pytest.approx(0.03)
    assert report.status == "montecarlo(0.95)"
    with pytest.raises(PreconditionError):
        verify_disperser(d, mode="maybe")


def test_disperser_text():
    d = halves()
    text = format_disperser(d)
    assert text == "disperser 4 2 2 1 1/2 exact\n0 1\n2 3\n"
    assert parse_disperser(text) == d
    for bad in ("", "disperser 4 2 2 1 1/2\n", text + "0 2\n", text.replace("2 3", "2 9")):
        with pytest.raises(ParseError):
            parse_disperser(bad)


def test_compress_completeness(planted_graph):
    b = clique_to_biclique(planted_graph)
    c = biclique_compress(b, halves())
    assert c.k == 2
    assert c.group_size((LEFT, 0)) == 4
    left, right = compress_witness(c, *lift_clique(b, PLANTED))
    assert is_biclique(c, left, right)
    decoded_left, decoded_right = decode_compressed_biclique(c, left, right)
    assert covered_groups(decoded_left) == {0, 1, 2, 3}
    assert [v[2] for v in decoded_right] == PLANTED


def test_compress_keeps_first_constituent(planted_graph):
    b = clique_to_biclique(planted_graph)
    d = Disperser(4, 3, 2, 1, Fraction(1, 2), ((0, 1), (1, 2), (2, 3)), "exact")
    c = biclique_compress(b, d)
    left = [
        (LEFT, 0, ((LEFT, 0, 0), (LEFT, 1, 2))),
        (LEFT, 1, ((LEFT, 1, 3), (LEFT, 2, 4))),
    ]
    _, right = compress_witness(c, *lift_clique(b, PLANTED))
    decoded_left, _ = decode_compressed_biclique(c, left, right)
    assert decoded_left == [(LEFT, 0, 0), (LEFT, 1, 2), (LEFT, 2, 4)]


def test_compress_preconditions(planted_graph):
    b = clique_to_biclique(planted_graph)
    with pytest.raises(PreconditionError):
        biclique_compress(b, Disperser(4, 2, 2, 1, Fraction(1, 2), ((0, 1), (2, 3))))
    with pytest.raises(PreconditionError):
        biclique_compress(b, Disperser(5, 1, 2, 1, Fraction(1, 2), ((0, 1),), "exact"))


def test_kst_bound():
    assert kst_bound(4, 2) == 6
    assert isinstance(kst_bound(4, 2), Fraction)
    assert kst_bound(9, 3) == pytest.approx(33.53, abs=0.01)
    with pytest.raises(PreconditionError):
        kst_bound(4, 1)


@pytest.mark.parametrize("n,expected", [(1, 0), (2, 1), (3, 3), (4, 4), (5, 6), (6, 7)])
def test_c4_free_maximum(n, expected):
    best, edges = max_kaa_free_edges(n, 2)
    assert best == expected
    assert len(edges) == expected
    assert best <= kst_bound(n, 2)


def test_nothing_beats_kst():
    assert kaa_free_edge_search(5, 2) is None
    assert kaa_free_edge_search(5, 2, min_edges=6) is not None


def test_densest_values(planted_graph):
    assert densest_completeness_value(4) == 28
    assert densest_soundness_bound(3, Fraction(1, 2)) == Fraction(21, 2)
    b = clique_to_biclique(planted_graph)
    densest = biclique_to_densest(b)
    left, right = lift_clique(b, PLANTED)
    chosen = left + right
    edges = sum(
        densest.adjacent(u, w) for i, u in enumerate(chosen) for w in chosen[i + 1 :]
    )
    assert edges == densest_completeness_value(4)
    assert not densest.adjacent((LEFT, 0, 0), (LEFT, 0, 1))
    assert densest.adjacent((LEFT, 0, 1), (LEFT, 1, 3))
