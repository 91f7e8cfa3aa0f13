# -*- coding: utf-8 -*-
"""
Random graph instances and the bundled scenario encodings.

Edges are drawn without replacement from a permutation of all candidate
pairs. The permutation is :meth:`random.Random.shuffle` (Mersenne Twister,
Fisher-Yates) seeded with the instance seed, so an instance only depends on
its parameters. On complete topologies the permutation is scanned first for
edges covering two, then one vertex without an outgoing or incoming edge,
before the remaining budget is filled in permutation order.

Example
-------
>>> from hybridSplitter.instanceGenerator import generate_graph
>>> inst = generate_graph(4, 100, seed=1)
>>> len(inst.edges)
12
>>> print(inst.text().splitlines()[-1])
seed(1).
"""
import logging
import os
import random
from dataclasses import dataclass
from typing import Optional, Tuple

from .constants import SEED_PREDICATE, Topology
from .programAst import Literal, Term, parse_program

logger = logging.getLogger(__name__)

scrdir = os.path.dirname(os.path.abspath(__file__))
SCENARIO_DIR = os.path.join(scrdir, 'scenarios')
""":obj:`str` : Directory of the bundled encodings"""


@dataclass(frozen=True)
class GraphInstance:
    """A generated graph written as facts.

    Attributes
    ----------
    n : :obj:`int`
        Number of vertices, named ``1`` to ``n``.
    density : :obj:`float`
        Percentage of candidate pairs that became edges.
    seed : :obj:`int`
    directed : :obj:`bool`
    topology : :class:`~hybridSplitter.constants.Topology`
    edges : :obj:`tuple`
        Vertex pairs, sorted.
    edge_predicate : :obj:`str`
    node_predicate : :obj:`str` or :data:`None`
        Predicate of one unary fact per vertex, if any.
    """
    n: int
    density: float
    seed: int
    directed: bool = True
    topology: Topology = Topology.COMPLETE
    edges: Tuple[Tuple[int, int], ...] = ()
    edge_predicate: str = 'e'
    node_predicate: Optional[str] = None

    def facts(self):
        """:obj:`list` of :class:`~hybridSplitter.programAst.Literal`"""
        facts = []
        if self.node_predicate:
            facts.extend(Literal(self.node_predicate, (Term.constant(v),))
                         for v in range(1, self.n + 1))
        facts.extend(Literal(self.edge_predicate,
                             (Term.constant(u), Term.constant(v)))
                     for u, v in self.edges)
        facts.append(Literal(SEED_PREDICATE, (Term.constant(self.seed),)))
        return facts

    def text(self):
        """Instance as program text, one fact per line"""
        return ''.join(f'{fact}.\n' for fact in self.facts())


def candidate_pairs(n, directed=True, topology=Topology.COMPLETE):
    """All possible edges in lexicographic order."""
    topology = Topology(topology)
    if topology is Topology.PATH:
        return [(i, i + 1) for i in range(1, n)]
    return [(u, v) for u in range(1, n + 1) for v in range(1, n + 1)
            if (u != v if directed else u < v)]


def edge_budget(n, density, directed=True, topology=Topology.COMPLETE):
    """:obj:`int` : Number of edges, the candidate count times the density
    rounded half up"""
    total = len(candidate_pairs(n, directed, topology))
    return int(density / 100 * total + 0.5)


def generate_graph(n, density, seed=0, directed=True,
                   topology=Topology.COMPLETE, edge_predicate='e',
                   node_predicate=None):
    """Generate a random graph instance.

    Parameters
    ----------
    n : :obj:`int`
        Number of vertices, at least 1.
    density : :obj:`float`
        Edge density in percent, between 0 and 100.
    seed : :obj:`int`, optional
    directed : :obj:`bool`, optional
        Undirected graphs store every pair once with the smaller vertex
        first.
    topology : :class:`~hybridSplitter.constants.Topology`, optional
        ``complete`` samples among all pairs, ``path`` among the pairs
        ``(i, i+1)``.
    edge_predicate : :obj:`str`, optional
    node_predicate : :obj:`str`, optional

    Returns
    -------
    :class:`GraphInstance`
    """
    if n < 1:
        raise ValueError(f'Number of vertices must be positive, got {n}')
    if not 0 <= density <= 100:
        raise ValueError(f'Density must be between 0 and 100, got {density}')
    topology = Topology(topology)
    order = candidate_pairs(n, directed, topology)
    random.Random(seed).shuffle(order)
    budget = edge_budget(n, density, directed, topology)

    chosen, taken = [], set()
    if topology is Topology.COMPLETE:
        out_cov, in_cov = set(), set()

        def uncovered(u, v):
            if directed:
                return (u not in out_cov) + (v not in in_cov)
            return (u not in out_cov) + (v not in out_cov)

        for needed in (2, 1):
            for u, v in order:
                if len(chosen) == budget:
                    break
                if (u, v) in taken or uncovered(u, v) < needed:
                    continue
                chosen.append((u, v))
                taken.add((u, v))
                out_cov.add(u)
                (in_cov if directed else out_cov).add(v)
    for pair in order:
        if len(chosen) == budget:
            break
        if pair not in taken:
            chosen.append(pair)
            taken.add(pair)

    logger.verbose(f'Generated {len(chosen)} of {len(order)} edges on {n} '
                   f'vertices')
    return GraphInstance(n, density, seed, directed, topology,
                         tuple(sorted(chosen)), edge_predicate, node_predicate)


def scenario_names():
    """:obj:`list` of :obj:`str` : Names of the bundled encodings"""
    return sorted(os.path.splitext(f)[0] for f in os.listdir(SCENARIO_DIR)
                  if f.endswith('.lp'))


def scenario_path(name):
    """Path of a bundled encoding, with or without the ``.lp`` suffix."""
    if not name.endswith('.lp'):
        name += '.lp'
    path = os.path.join(SCENARIO_DIR, name)
    if not os.path.isfile(path):
        raise FileNotFoundError(f'No scenario "{name}", available: '
                                f'{", ".join(scenario_names())}')
    return path


def load_scenario(name):
    """Parse a bundled encoding.

    Returns
    -------
    :class:`~hybridSplitter.programAst.Program`
    """
    path = scenario_path(name)
    with open(path, encoding='utf-8') as fh:
        return parse_program(fh.read(), source=path)
