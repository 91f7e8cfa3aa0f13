# -*- coding: utf-8 -*-
"""
Fact splitting, dependency analysis and domain inference.

The analysis runs once per program and produces immutable products that the
estimator and the heuristics read:

* :class:`DependencyGraph`: predicates with signed edges from body to head
* :class:`SccInfo`: strongly connected components in topological order,
  their stratification and the ancestor sets used to decide whether a
  predicate is stratified
* :class:`DomainTable`: constants per predicate position and per rule
  variable, exact fact counts and tuple estimates of derived predicates

Example
-------
>>> from hybridSplitter.programAst import parse_program
>>> from hybridSplitter.analysis import analyze
>>> a = analyze(parse_program('e(1,2). e(2,3). p(X) :- e(X,Y).'))
>>> sorted(a.domains.global_domain)
['1', '2', '3']
>>> a.classify(a.rules[0]).is_stratified
True
"""
import logging
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from math import prod
from typing import Dict, FrozenSet, NamedTuple, Tuple

import networkx as nx

from .constants import HeadKind
from .programAst import Program

logger = logging.getLogger(__name__)

POSITIVE = '+'
NEGATIVE = '-'


def split_facts(program):
    """Separate facts from the encoding.

    A fact is a rule with a single ground head atom and an empty body.
    Duplicate facts are kept once.

    Parameters
    ----------
    program : :class:`~hybridSplitter.programAst.Program`

    Returns
    -------
    facts : :obj:`list` of :class:`~hybridSplitter.programAst.Literal`
    rules : :obj:`list` of :class:`~hybridSplitter.programAst.Rule`
    """
    facts = dict.fromkeys(program.facts)
    rules = []
    for rule in program.rules:
        if rule.is_fact:
            facts.setdefault(rule.head[0])
        else:
            rules.append(rule)
    logger.debug(f'Split {len(facts)} facts from {len(rules)} rules')
    return list(facts), rules


def fact_counts(facts):
    """:obj:`~collections.Counter` : Number of distinct tuples per
    predicate"""
    return Counter(f.predicate for f in set(facts))


@dataclass(frozen=True)
class DependencyGraph:
    """Predicate dependency graph with signed edges.

    Attributes
    ----------
    vertices : :obj:`frozenset` of :obj:`str`
    edges : :obj:`frozenset` of :obj:`tuple`
        Triples ``(body predicate, head predicate, sign)`` with sign ``'+'``
        or ``'-'``.
    """
    vertices: FrozenSet[str] = frozenset()
    edges: FrozenSet[Tuple[str, str, str]] = frozenset()

    def digraph(self, signs=(POSITIVE, NEGATIVE)):
        """Return a :class:`networkx.DiGraph` restricted to the given
        signs; every edge stores the set of its signs."""
        g = nx.DiGraph()
        g.add_nodes_from(sorted(self.vertices))
        for u, v, sign in sorted(self.edges):
            if sign not in signs:
                continue
            if g.has_edge(u, v):
                g[u][v]['signs'].add(sign)
            else:
                g.add_edge(u, v, signs={sign})
        return g


def build_dependency_graph(rules):
    """Build the signed predicate dependency graph.

    Every positive body predicate gets a ``+`` edge and every negative body
    predicate a ``-`` edge to each head predicate. A choice rule adds a
    ``-`` self-loop on its head predicate, the collapsed form of the even
    negative cycle that encodes the guess.

    Parameters
    ----------
    rules : :obj:`list` of :class:`~hybridSplitter.programAst.Rule`

    Returns
    -------
    :class:`DependencyGraph`
    """
    vertices, edges = set(), set()
    for rule in rules:
        vertices.update(lit.predicate for lit in rule.literals)
        for h in rule.head:
            edges.update((b.predicate, h.predicate, POSITIVE)
                         for b in rule.body_pos)
            edges.update((b.predicate, h.predicate, NEGATIVE)
                         for b in rule.body_neg)
            if rule.head_kind is HeadKind.CHOICE:
                edges.add((h.predicate, h.predicate, NEGATIVE))
    return DependencyGraph(frozenset(vertices), frozenset(edges))


@dataclass(frozen=True)
class SccInfo:
    """Strongly connected components of a :class:`DependencyGraph`.

    Component ids follow a topological order of the reduced graph, so
    ``topo_order`` is ``[0, 1, ...]``. Ties between independent components
    are broken by their smallest predicate name.
    """
    scc_of: Dict[str, int]
    sccs: Tuple[FrozenSet[str], ...]
    reduced_edges: FrozenSet[Tuple[int, int]]
    topo_order: Tuple[int, ...]
    stratified_scc: Dict[int, bool]
    ancestors: Dict[int, FrozenSet[int]]
    positive_scc_of: Dict[str, int] = field(default_factory=dict)
    positive_cyclic: FrozenSet[str] = frozenset()

    def is_stratified(self, predicate):
        """Whether every component below ``predicate`` is stratified.

        Predicates that do not occur in any rule are stratified.
        """
        if predicate not in self.scc_of:
            return True
        return all(self.stratified_scc[s]
                   for s in self.ancestors[self.scc_of[predicate]])

    def same_scc(self, p, q):
        return p in self.scc_of and self.scc_of.get(p) == self.scc_of.get(q)

    def defining_scc(self, rule):
        """Lowest component among the head predicates of ``rule``.

        Body predicates of the rule lie in this component or before it.
        """
        return min(self.scc_of[h.predicate] for h in rule.head)


def compute_sccs(graph):
    """Compute components, reduced graph, ancestors and stratification.

    Parameters
    ----------
    graph : :class:`DependencyGraph`

    Returns
    -------
    :class:`SccInfo`
    """
    g = graph.digraph()
    components = [frozenset(c) for c in nx.strongly_connected_components(g)]
    condensed = nx.condensation(g, scc=components)
    order = list(nx.lexicographical_topological_sort(
        condensed, key=lambda n: min(condensed.nodes[n]['members'])))
    renumber = {old: new for new, old in enumerate(order)}
    sccs = tuple(frozenset(condensed.nodes[old]['members']) for old in order)
    scc_of = {p: i for i, members in enumerate(sccs) for p in members}
    reduced = frozenset((renumber[u], renumber[v])
                        for u, v in condensed.edges)

    # Least fixpoint of the ancestor recurrence
    ancestors = {s: {s} for s in range(len(sccs))}
    changed = True
    while changed:
        changed = False
        for u, v in sorted(reduced):
            if not ancestors[u] <= ancestors[v]:
                ancestors[v] |= ancestors[u]
                changed = True

    stratified = {s: True for s in range(len(sccs))}
    for u, v, sign in graph.edges:
        if sign == NEGATIVE and scc_of[u] == scc_of[v]:
            stratified[scc_of[u]] = False

    pg = graph.digraph(signs=(POSITIVE,))
    positive_scc_of, cyclic = {}, set()
    for i, members in enumerate(sorted(nx.strongly_connected_components(pg),
                                       key=min)):
        for p in members:
            positive_scc_of[p] = i
        if len(members) > 1:
            cyclic.update(members)
    cyclic.update(p for p in pg if pg.has_edge(p, p))
    logger.debug(f'{len(sccs)} components, '
                 f'{sum(not s for s in stratified.values())} unstratified')
    return SccInfo(scc_of, sccs, reduced, tuple(range(len(sccs))),
                   stratified,
                   {s: frozenset(a) for s, a in ancestors.items()},
                   positive_scc_of, frozenset(cyclic))


class RuleClass(NamedTuple):
    """Syntactic and dependency classification of a rule"""
    is_constraint: bool
    is_stratified: bool
    is_tight: bool
    is_hcf: bool


def classify_rule(rule, scc):
    """Classify a rule against the components of its program.

    Parameters
    ----------
    rule : :class:`~hybridSplitter.programAst.Rule`
    scc : :class:`SccInfo`

    Returns
    -------
    :class:`RuleClass`
    """
    stratified = all(scc.is_stratified(lit.predicate) for lit in rule.body)
    tight = not any(scc.same_scc(h.predicate, b.predicate)
                    for h in rule.head for b in rule.body_pos)
    hcf = True
    heads = [h.predicate for h in rule.head]
    for i, p in enumerate(heads):
        for q in heads[i + 1:]:
            shared = (p in scc.positive_scc_of and
                      scc.positive_scc_of[p] == scc.positive_scc_of.get(q))
            if shared and (p != q or p in scc.positive_cyclic):
                hcf = False
    return RuleClass(rule.is_constraint, stratified, tight, hcf)


def variable_domains(rule, pos_domain):
    """Union of the positional domains of each variable.

    Only positive body literals contribute.

    Parameters
    ----------
    rule : :class:`~hybridSplitter.programAst.Rule`
    pos_domain : :obj:`dict`
        Maps ``(predicate, position)`` to a set of constant names.

    Returns
    -------
    :obj:`dict`
        Maps variable names to :obj:`frozenset` of constant names.
    """
    domains = defaultdict(set)
    for lit in rule.body_pos:
        for j, term in enumerate(lit.args):
            if term.is_variable:
                domains[term.name] |= pos_domain.get((lit.predicate, j),
                                                     frozenset())
    return {x: frozenset(domains[x]) for x in rule.variables}


@dataclass(frozen=True)
class DomainTable:
    """Domains and tuple estimates used by the size estimation.

    Attributes
    ----------
    global_domain : :obj:`frozenset`
        All constants occurring in facts.
    fact_counts : :obj:`dict`
        Exact number of fact tuples per predicate.
    pos_domain : :obj:`dict`
        ``(predicate, position)`` to the constants that may occur there.
    var_domain : :obj:`dict`
        ``(rule id, variable)`` to the constants the variable may take.
    derived_estimate : :obj:`dict`
        Estimated number of tuples per predicate.
    """
    global_domain: FrozenSet[str] = frozenset()
    fact_counts: Dict[str, int] = field(default_factory=dict)
    pos_domain: Dict[Tuple[str, int], FrozenSet[str]] = \
        field(default_factory=dict)
    var_domain: Dict[Tuple[int, str], FrozenSet[str]] = \
        field(default_factory=dict)
    derived_estimate: Dict[str, float] = field(default_factory=dict)

    def estimate(self, predicate):
        """:obj:`float` : Estimated tuple count of ``predicate``"""
        return self.derived_estimate.get(predicate, 0)

    def domain(self, rule, term):
        """Constants a term of ``rule`` may take."""
        if term.is_variable:
            return self.var_domain.get((rule.id, term.name), frozenset())
        return frozenset([term.name])

    def size(self, rule, term):
        """:obj:`int` : Domain size of a term, 1 for constants"""
        return len(self.domain(rule, term))

    def positional_bound(self, predicate, arity):
        """Product of the positional domain sizes of ``predicate``."""
        return prod(len(self.pos_domain.get((predicate, j), ()))
                    for j in range(arity))

    def extended(self, rules, pos_domain=None, estimates=None):
        """Return a copy that also covers additional rules and predicates.

        Parameters
        ----------
        rules : :obj:`list` of :class:`~hybridSplitter.programAst.Rule`
            Rules whose variable domains are added.
        pos_domain : :obj:`dict`, optional
            Positional domains of new predicates.
        estimates : :obj:`dict`, optional
            Tuple estimates of new predicates.
        """
        positions = {**self.pos_domain, **(pos_domain or {})}
        var_domain = dict(self.var_domain)
        for rule in rules:
            for x, dom in variable_domains(rule, positions).items():
                var_domain[(rule.id, x)] = dom
        return DomainTable(self.global_domain, self.fact_counts, positions,
                           var_domain,
                           {**self.derived_estimate, **(estimates or {})})


def infer_domains(facts, rules, scc):
    """Infer positional and variable domains and tuple estimates.

    Positional domains start from the facts and are propagated from rule
    bodies to heads along the topological order, iterating inside each
    component until nothing changes. Derived predicates are estimated by
    the join sizes of their defining rules, bounded by the product of their
    positional domain sizes. Recursively defined predicates get that bound.

    Parameters
    ----------
    facts : :obj:`list` of :class:`~hybridSplitter.programAst.Literal`
    rules : :obj:`list` of :class:`~hybridSplitter.programAst.Rule`
    scc : :class:`SccInfo`

    Returns
    -------
    :class:`DomainTable`
    """
    # import here to prevent circular imports
    from .estimator import join_estimate

    counts = fact_counts(facts)
    positions = defaultdict(set)
    for fact in facts:
        for j, term in enumerate(fact.args):
            positions[(fact.predicate, j)].add(term.name)
    global_domain = frozenset(c for cs in positions.values() for c in cs)

    by_scc = defaultdict(list)
    for rule in rules:
        if rule.head:
            by_scc[scc.defining_scc(rule)].append(rule)

    for s in scc.topo_order:
        changed = True
        while changed:
            changed = False
            for rule in by_scc[s]:
                doms = variable_domains(rule, positions)
                for h in rule.head:
                    for j, term in enumerate(h.args):
                        add = doms[term.name] if term.is_variable \
                            else {term.name}
                        if not add <= positions[(h.predicate, j)]:
                            positions[(h.predicate, j)] |= add
                            changed = True

    pos_domain = {k: frozenset(v) for k, v in positions.items()}
    var_domain = {(rule.id, x): dom for rule in rules
                  for x, dom in variable_domains(rule, pos_domain).items()}
    estimates = dict(counts)
    table = DomainTable(global_domain, dict(counts), pos_domain, var_domain,
                        estimates)

    # a disjunctive rule defines head predicates outside its own component
    definers = defaultdict(list)
    for rule in rules:
        for predicate in dict.fromkeys(h.predicate for h in rule.head):
            definers[predicate].append(rule)

    arities = Program(tuple(rules), tuple(facts)).arities
    for s in scc.topo_order:
        for predicate in sorted(scc.sccs[s]):
            own = definers[predicate]
            if not own:
                continue
            bound = table.positional_bound(predicate, arities[predicate])
            recursive = any(scc.same_scc(b.predicate, predicate)
                            for r in own for b in r.body_pos)
            if recursive:
                estimates[predicate] = bound
                continue
            derived = counts.get(predicate, 0)
            for r in own:
                occurrences = sum(h.predicate == predicate for h in r.head)
                derived += occurrences * join_estimate(r, table).final
            estimates[predicate] = min(bound, derived)
    logger.debug(f'Domain of {len(global_domain)} constants, '
                 f'{len(estimates)} predicate estimates')
    return table


@dataclass(frozen=True)
class Analysis:
    """All analysis products of one program"""
    facts: Tuple
    rules: Tuple
    graph: DependencyGraph
    scc: SccInfo
    domains: DomainTable

    def classify(self, rule):
        return classify_rule(rule, self.scc)


def analyze(program):
    """Run fact splitting, dependency analysis and domain inference.

    Parameters
    ----------
    program : :class:`~hybridSplitter.programAst.Program`

    Returns
    -------
    :class:`Analysis`
    """
    facts, rules = split_facts(program)
    graph = build_dependency_graph(rules)
    scc = compute_sccs(graph)
    domains = infer_domains(facts, rules, scc)
    return Analysis(tuple(facts), tuple(rules), graph, scc, domains)
