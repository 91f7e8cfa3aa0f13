# -*- coding: utf-8 -*-
"""
Variable graphs of rules and their tree decompositions.

Decompositions are built from elimination orderings. The heuristic orderings
(min-fill and min-degree) break ties by the lexicographically smallest
variable name; the exact ordering comes from a dynamic program over vertex
subsets and is used for explicitly requested exact decompositions and,
automatically, for small graphs.

Example
-------
>>> from hybridSplitter.programAst import parse_program
>>> from hybridSplitter.treeDecomposition import (build_variable_graph,
...     decompose, bag_size)
>>> rule = parse_program(':- f(X1,X2), f(X2,X3), f(X3,X4).').rules[0]
>>> td = decompose(build_variable_graph(rule))
>>> [sorted(b) for _, b in sorted(td.bags.items())]
[['X1', 'X2'], ['X2', 'X3'], ['X3', 'X4']]
>>> bag_size(td)
2
"""
import logging
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Dict, FrozenSet, Tuple

import networkx as nx

from .constants import TdStrategy, EXACT_CAP, AUTO_EXACT
from .exception import ExactCapExceeded

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class VariableGraph:
    """Co-occurrence graph of the variables of one rule.

    Attributes
    ----------
    vertices : :obj:`tuple` of :obj:`str`
        Variables in order of first occurrence.
    edges : :obj:`frozenset` of :obj:`frozenset`
        Unordered variable pairs sharing a literal or a comparison.
    """
    vertices: Tuple[str, ...] = ()
    edges: FrozenSet[FrozenSet[str]] = frozenset()

    def to_networkx(self):
        g = nx.Graph()
        g.add_nodes_from(self.vertices)
        g.add_edges_from(tuple(e) for e in self.edges)
        return g

    @classmethod
    def from_networkx(cls, g):
        return cls(tuple(sorted(g.nodes)),
                   frozenset(frozenset(e) for e in g.edges))


def build_variable_graph(rule):
    """Variable graph of a rule.

    Two variables are adjacent when they occur together in a head or body
    literal or in a comparison.

    Parameters
    ----------
    rule : :class:`~hybridSplitter.programAst.Rule`

    Returns
    -------
    :class:`VariableGraph`
    """
    groups = [lit.variables for lit in rule.literals]
    groups += [cmp.variables for cmp in rule.body_cmp]
    edges = frozenset(frozenset(pair) for group in groups
                      for pair in combinations(group, 2))
    return VariableGraph(rule.variables, edges)


@dataclass(frozen=True)
class TreeDecomposition:
    """Tree of bags over the variables of a rule.

    Attributes
    ----------
    bags : :obj:`dict`
        Bag id to the set of variables :math:`\\chi(t)`.
    tree : :class:`networkx.Graph`
        Tree on the bag ids.
    root : :obj:`int`
        Designated root bag.
    """
    bags: Dict[int, FrozenSet[str]]
    tree: nx.Graph
    root: int = 0

    @property
    def width(self):
        """:obj:`int` : Largest bag size minus one, -1 for an empty bag"""
        return bag_size(self) - 1

    def rooted(self, root=None):
        """Parent map and depth of every bag for the given root.

        Returns
        -------
        parent : :obj:`dict`
            Bag id to its parent id, :data:`None` for the root.
        depth : :obj:`dict`
            Bag id to its distance from the root.
        """
        root = self.root if root is None else root
        parent, depth = {root: None}, {root: 0}
        for u, v in nx.bfs_edges(self.tree, root, sort_neighbors=sorted):
            parent[v] = u
            depth[v] = depth[u] + 1
        return parent, depth


def bag_size(td):
    """:obj:`int` : :math:`\\max_t |\\chi(t)|` of a decomposition"""
    return max((len(b) for b in td.bags.values()), default=0)


def _fill_in(g, v):
    return sum(1 for a, b in combinations(g[v], 2) if not g.has_edge(a, b))


def heuristic_order(graph, strategy=TdStrategy.MIN_FILL):
    """Greedy elimination ordering.

    Parameters
    ----------
    graph : :class:`VariableGraph`
    strategy : :class:`~hybridSplitter.constants.TdStrategy`
        ``MIN_FILL`` or ``MIN_DEGREE``.

    Returns
    -------
    :obj:`list` of :obj:`str`
    """
    strategy = TdStrategy(strategy)
    g = graph.to_networkx()
    if strategy is TdStrategy.MIN_FILL:
        score = _fill_in
    else:
        def score(h, v):
            return h.degree(v)
    order = []
    while g.number_of_nodes():
        v = min(g.nodes, key=lambda u: (score(g, u), u))
        g.add_edges_from(combinations(g[v], 2))
        g.remove_node(v)
        order.append(v)
    return order


def exact_order(graph):
    """Elimination ordering of minimal width.

    Dynamic program over the sets of eliminated vertices: the width of
    eliminating ``v`` after the set ``S`` is the number of remaining
    vertices reachable from ``v`` through ``S``. Among optimal orderings the
    one choosing the smallest variable name first is returned.

    Returns
    -------
    order : :obj:`list` of :obj:`str`
    width : :obj:`int`
    """
    names = sorted(graph.vertices)
    n = len(names)
    index = {v: i for i, v in enumerate(names)}
    adjacency = [0] * n
    for edge in graph.edges:
        a, b = (index[v] for v in edge)
        adjacency[a] |= 1 << b
        adjacency[b] |= 1 << a
    full = (1 << n) - 1

    def degree(eliminated, v):
        seen, stack, reached = 1 << v, [v], 0
        while stack:
            u = stack.pop()
            frontier = adjacency[u] & ~seen
            seen |= frontier
            reached |= frontier & ~eliminated
            for w in range(n):
                if frontier & eliminated & (1 << w):
                    stack.append(w)
        return bin(reached).count('1')

    @lru_cache(maxsize=None)
    def width(eliminated):
        if eliminated == full:
            return -1
        return min(max(degree(eliminated, v), width(eliminated | 1 << v))
                   for v in range(n) if not eliminated & 1 << v)

    order, eliminated = [], 0
    best = width(0)
    while eliminated != full:
        for v in range(n):
            if eliminated & 1 << v:
                continue
            step = max(degree(eliminated, v), width(eliminated | 1 << v))
            if step <= width(eliminated):
                order.append(names[v])
                eliminated |= 1 << v
                break
    return order, best


def treewidth(graph, exact_cap=EXACT_CAP):
    """:obj:`int` : Exact treewidth, -1 for a graph without vertices"""
    if len(graph.vertices) > exact_cap:
        raise ExactCapExceeded(f'Exact treewidth limited to {exact_cap} '
                               f'vertices, graph has {len(graph.vertices)}')
    return exact_order(graph)[1]


def from_elimination_order(graph, order):
    """Build a tree decomposition from an elimination ordering.

    Each vertex gives the bag of itself and its neighbours at elimination
    time, attached to the bag of the neighbour eliminated next. Bags
    contained in a neighbouring bag are merged into it, components are
    chained to the last root and bags are numbered in elimination order.

    Parameters
    ----------
    graph : :class:`VariableGraph`
    order : :obj:`list` of :obj:`str`

    Returns
    -------
    :class:`TreeDecomposition`
    """
    if not order:
        tree = nx.Graph()
        tree.add_node(0)
        return TreeDecomposition({0: frozenset()}, tree, 0)
    position = {v: i for i, v in enumerate(order)}
    g = graph.to_networkx()
    bags, tree, roots = {}, nx.Graph(), []
    for v in order:
        neighbours = set(g[v])
        bags[v] = frozenset(neighbours | {v})
        tree.add_node(v)
        if neighbours:
            tree.add_edge(v, min(neighbours, key=position.get))
        else:
            roots.append(v)
        g.add_edges_from(combinations(neighbours, 2))
        g.remove_node(v)
    for r in roots[:-1]:
        tree.add_edge(r, roots[-1])

    merged = True
    while merged:
        merged = False
        for a in sorted(tree.nodes, key=position.get):
            for b in sorted(tree[a], key=position.get):
                if bags[a] <= bags[b]:
                    tree.add_edges_from((b, c) for c in tree[a] if c != b)
                    tree.remove_node(a)
                    del bags[a]
                    merged = True
                    break
            if merged:
                break

    survivors = sorted(tree.nodes, key=position.get)
    ids = {v: i for i, v in enumerate(survivors)}
    tree = nx.relabel_nodes(tree, ids)
    return TreeDecomposition({ids[v]: bags[v] for v in survivors}, tree,
                             ids[survivors[-1]])


def decompose(graph, strategy=TdStrategy.MIN_FILL, exact_cap=EXACT_CAP,
              auto_exact=AUTO_EXACT):
    """Tree decomposition of a variable graph.

    Parameters
    ----------
    graph : :class:`VariableGraph`
    strategy : :class:`~hybridSplitter.constants.TdStrategy` or :obj:`str`
        ``'min-fill'`` (default), ``'min-degree'`` or ``'exact'``.
    exact_cap : :obj:`int`, optional
        Maximal number of vertices for the exact strategy.
    auto_exact : :obj:`int`, optional
        Heuristic strategies compute exact decompositions for graphs with at
        most this many vertices.

    Returns
    -------
    :class:`TreeDecomposition`

    Raises
    ------
    :class:`~hybridSplitter.exception.ExactCapExceeded`
        If the exact strategy is requested for more than ``exact_cap``
        vertices.
    """
    strategy = TdStrategy(strategy)
    n = len(graph.vertices)
    if strategy is TdStrategy.EXACT:
        if n > exact_cap:
            raise ExactCapExceeded(f'Exact tree decomposition limited to '
                                   f'{exact_cap} variables, rule has {n}')
        order = exact_order(graph)[0]
    elif n <= auto_exact:
        order = exact_order(graph)[0]
    else:
        order = heuristic_order(graph, strategy)
    td = from_elimination_order(graph, order)
    logger.spam(f'{strategy} decomposition of {n} variables: '
                f'{len(td.bags)} bags, width {td.width}')
    return td


def is_valid(td, graph):
    """Check the conditions of a tree decomposition.

    The bag tree must be a tree, every vertex and every edge must be
    covered by a bag, and the bags containing a vertex must form a connected
    subtree.

    Returns
    -------
    :obj:`bool`
    """
    if not nx.is_tree(td.tree) or set(td.tree.nodes) != set(td.bags):
        return False
    if td.root not in td.bags:
        return False
    covered = set().union(*td.bags.values())
    if not set(graph.vertices) <= covered:
        return False
    for edge in graph.edges:
        if not any(edge <= bag for bag in td.bags.values()):
            return False
    for v in graph.vertices:
        holding = [t for t, bag in td.bags.items() if v in bag]
        if not nx.is_connected(td.tree.subgraph(holding)):
            return False
    return True
