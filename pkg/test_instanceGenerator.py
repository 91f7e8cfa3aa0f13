# -*- coding: utf-8 -*-
import pytest
from hypothesis import given, strategies as st

from hybridSplitter.constants import Topology
from hybridSplitter.instanceGenerator import (generate_graph, edge_budget,
                                              candidate_pairs, scenario_names,
                                              scenario_path, load_scenario)
from hybridSplitter.programAst import parse_program


def test_complete_graph():
    g = generate_graph(4, 100)
    assert len(g.edges) == 12
    assert g.edges == tuple(candidate_pairs(4))


def test_undirected_graph():
    g = generate_graph(5, 100, directed=False)
    assert len(g.edges) == 10
    assert all(u < v for u, v in g.edges)


def test_path_topology():
    g = generate_graph(100, 100, topology='path')
    assert len(g.edges) == 99
    assert g.edges[0] == (1, 2)
    assert g.topology is Topology.PATH


@pytest.mark.parametrize('n, density, budget', [
    (4, 50, 6), (3, 25, 2), (10, 0, 0), (10, 1, 1), (1, 100, 0)])
def test_edge_budget(n, density, budget):
    assert edge_budget(n, density) == budget
    assert len(generate_graph(n, density).edges) == budget


def test_same_seed_same_graph():
    assert generate_graph(10, 30, seed=7).edges == \
        generate_graph(10, 30, seed=7).edges
    assert generate_graph(10, 30, seed=7).edges != \
        generate_graph(10, 30, seed=8).edges


@given(st.integers(min_value=2, max_value=15), st.integers(0, 10 ** 6))
def test_budget_of_n_plus_one_covers_every_vertex(n, seed):
    total = n * (n - 1)
    density = 100 * (n + 1) / total
    g = generate_graph(n, min(density, 100), seed)
    assert {u for u, _ in g.edges} == set(range(1, n + 1))
    assert {v for _, v in g.edges} == set(range(1, n + 1))


@given(st.integers(min_value=1, max_value=12),
       st.floats(min_value=0, max_value=100), st.integers(0, 1000),
       st.booleans())
def test_edges_are_distinct_candidates(n, density, seed, directed):
    g = generate_graph(n, density, seed, directed)
    assert len(set(g.edges)) == len(g.edges) == \
        edge_budget(n, density, directed)
    assert set(g.edges) <= set(candidate_pairs(n, directed))


def test_facts_and_text():
    g = generate_graph(2, 100, seed=3, node_predicate='node')
    assert g.text() == 'node(1).\nnode(2).\ne(1,2).\ne(2,1).\nseed(3).\n'
    assert len(parse_program(g.text()).rules) == 5


def test_edge_predicate():
    g = generate_graph(2, 100, edge_predicate='edge')
    assert [str(f) for f in g.facts()][:2] == ['edge(1,2)', 'edge(2,1)']


@pytest.mark.parametrize('n, density', [(0, 50), (3, -1), (3, 100.5)])
def test_invalid_arguments(n, density):
    with pytest.raises(ValueError):
        generate_graph(n, density)


def test_bundled_scenarios():
    assert {'example1', 'triangle', 'clique3', 'clique3_neq', 'clique4',
            'directed_path', 'directed_col', 'nprc',
            'maximal_clique'} <= set(scenario_names())
    assert scenario_path('triangle.lp') == scenario_path('triangle')
    assert len(load_scenario('clique4').rules) == 2
    assert len(load_scenario('directed_col').rules) == 7
    with pytest.raises(FileNotFoundError):
        scenario_path('missing')
