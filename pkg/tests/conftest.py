#!/usr/bin/env python
"""py.test fixtures to be used in the gapchain test suite."""
from os import path

import pytest
from hypothesis import settings

from gapchain.cnf import parse_dimacs
from gapchain.ff import FieldMat, PrimeField
from gapchain.graphs import ExplicitGroupedGraph
from gapchain.vectorsum import VectorSumInstance

PWD = path.dirname(path.realpath(__file__))

settings.register_profile("desk", max_examples=50, deadline=None)
settings.load_profile("desk")


@pytest.fixture(scope="session")
def f5():
    return PrimeField(5)


@pytest.fixture(scope="session")
def two_clause():
    """(x1 | x2 | x3) & (-x1 | x2 | x3)"""
    return parse_dimacs("p cnf 3 2\n1 2 3 0\n-1 2 3 0\n")


@pytest.fixture(scope="session")
def trivial_source(f5):
    """k = 1 with V_1 = {(0)} and target 0: the smallest yes-instance."""
    return VectorSumInstance.build(f5, [[[0]]], d=1)


@pytest.fixture(scope="session")
def no_source(f5):
    """k = 1 with V_1 = {(1)} and target 0: the smallest no-instance."""
    return VectorSumInstance.build(f5, [[[1]]], d=1)


@pytest.fixture(scope="session")
def unit_mats(f5):
    return [FieldMat.of(f5, [[1]])]


@pytest.fixture
def planted_graph():
    """Four groups of two vertices; vertices 0, 2, 4, 6 form the planted clique."""
    groups = [(0, 1), (2, 3), (4, 5), (6, 7)]
    planted = [0, 2, 4, 6]
    edges = [(a, b) for i, a in enumerate(planted) for b in planted[i + 1 :]]
    edges += [(1, 3), (3, 5)]
    return ExplicitGroupedGraph(groups, edges)
