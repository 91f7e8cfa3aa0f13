# -*- coding: utf-8 -*-
"""
Grounding size estimates of single rules.

Two numbers are computed for every rule:

* the join estimate :math:`\\hat T_\\bowtie`, the expected number of ground
  rules a bottom-up grounder emits. Positive body literals are joined in
  source order, dividing by the domain size of every shared variable, and
  comparison builtins scale the result by a selectivity factor.
* the body-decoupled estimate :math:`\\hat T_H`, the size of the grounding
  that instantiates every literal on its own. It only depends on the domains
  of the rule variables and therefore not on the number of facts.

Example
-------
>>> from hybridSplitter.programAst import parse_program
>>> from hybridSplitter.analysis import analyze
>>> from hybridSplitter.estimator import join_estimate, bdg_estimate
>>> a = analyze(parse_program('f(1). f(2). a(X) :- f(X).'))
>>> join_estimate(a.rules[0], a.domains).final
2
"""
import csv
import logging
from dataclasses import dataclass
from math import prod
from typing import NamedTuple, Optional, Tuple

from .analysis import analyze
from .constants import HeadKind, PROFILE_HEADER, ORACLE_CAP, GROUND_CAP, \
    Topology
from .exception import NotEstimable
from .programAst import Program, Term, Literal, Comparison, check_arities

logger = logging.getLogger(__name__)

ORDERING_SELECTIVITY = 0.5
""":obj:`float` : Factor of the comparisons ``<``, ``<=``, ``>`` and ``>=``"""


@dataclass(frozen=True)
class JoinEstimate:
    """Join size estimate of one rule.

    Attributes
    ----------
    rule_id : :obj:`int`
    per_step : :obj:`tuple`
        ``(literal, running estimate)`` for every positive body literal.
    final : :obj:`float`
        Estimate after all joins and comparison selectivities.
    selectivity_applied : :obj:`tuple`
        ``(comparison, factor)`` pairs.
    """
    rule_id: int
    per_step: Tuple[Tuple[Literal, float], ...]
    final: float
    selectivity_applied: Tuple[Tuple[Comparison, float], ...] = ()


@dataclass(frozen=True)
class BdgEstimate:
    """Body-decoupled grounding size of one rule and its seven terms."""
    rule_id: int
    g: float
    s1: float
    s2: float
    s3: float
    f1: float
    f2: float
    f3: float

    @property
    def total(self):
        return self.g + self.s1 + self.s2 + self.s3 + self.f1 + self.f2 + \
            self.f3


def comparison_selectivity(cmp, rule, domains):
    """Fraction of variable bindings that satisfy a comparison.

    Orderings keep half of the bindings, ``=`` one out of the joint domain
    size and ``!=`` all but that fraction. A comparison of two constants
    is evaluated.

    Returns
    -------
    :obj:`float`
    """
    if not cmp.variables:
        return 1.0 if cmp.holds() else 0.0
    if cmp.op in ('<', '<=', '>', '>='):
        return ORDERING_SELECTIVITY
    size = max(len(domains.domain(rule, cmp.lhs) |
                   domains.domain(rule, cmp.rhs)), 1)
    return 1 / size if cmp.op == '=' else 1 - 1 / size


def join_estimate(rule, domains):
    """Estimate the number of ground instances a bottom-up grounder emits.

    The first literal contributes its tuple estimate, every further literal
    multiplies by its tuple estimate and divides by the domain sizes of the
    variables it shares with the literals before it. A rule without positive
    body literals has one instance.

    Parameters
    ----------
    rule : :class:`~hybridSplitter.programAst.Rule`
    domains : :class:`~hybridSplitter.analysis.DomainTable`

    Returns
    -------
    :class:`JoinEstimate`
    """
    steps, seen, current = [], set(), None
    for lit in rule.body_pos:
        tuples = domains.estimate(lit.predicate)
        if current is None:
            current = tuples
        else:
            shared = [x for x in lit.variables if x in seen]
            divisor = prod(domains.size(rule, Term.variable(x))
                           for x in shared)
            current = current * tuples / divisor if divisor else 0
        seen.update(lit.variables)
        steps.append((lit, current))
    if current is None:
        current = 1
    factors = tuple((cmp, comparison_selectivity(cmp, rule, domains))
                    for cmp in rule.body_cmp)
    final = max(current * prod(f for _, f in factors), 0)
    logger.spam(f'Join estimate of rule {rule.id}: {final:.2f}')
    return JoinEstimate(rule.id, tuple(steps), final, factors)


def bdg_estimate(rule, domains):
    """Estimate the size of the body-decoupled grounding of a rule.

    Parameters
    ----------
    rule : :class:`~hybridSplitter.programAst.Rule`
        A constraint, a normal or a disjunctive rule.
    domains : :class:`~hybridSplitter.analysis.DomainTable`

    Returns
    -------
    :class:`BdgEstimate`

    Raises
    ------
    :class:`~hybridSplitter.exception.NotEstimable`
        For choice rules and weak constraints.
    """
    if rule.head_kind in (HeadKind.CHOICE, HeadKind.WEAK):
        raise NotEstimable(f'No BDG estimate for {rule.head_kind} rule '
                           f'{rule.id}')

    def size(name):
        return domains.size(rule, Term.variable(name))

    def tuples(lit):
        return prod(size(x) for x in lit.variables)

    variables = rule.variables
    others = rule.literals
    g = s3 = f1 = f2 = f3 = 0
    for h in rule.head:
        th = tuples(h)
        g += 2 * th
        f1 += th
        f2 += sum(size(y) * th for y in variables if y not in h.variables)
        rest = list(others)
        rest.remove(h)
        f3 += sum(tuples(lit) * th for lit in rest)
    s1 = 2 * sum(size(x) for x in variables)
    s3 = sum(tuples(lit) for lit in others)
    estimate = BdgEstimate(rule.id, g, s1, 2, s3, f1, f2, f3)
    logger.spam(f'BDG estimate of rule {rule.id}: {estimate.total:.2f}')
    return estimate


class ProfileRow(NamedTuple):
    """One line of a density profile"""
    n: int
    density: float
    sota_estimate: float
    bdg_estimate: Optional[float]
    actual_sota: Optional[int]


def density_profile(program, rule_id, sizes, densities, seed=0,
                    oracle_cap=ORACLE_CAP, ground_cap=GROUND_CAP,
                    topology=Topology.COMPLETE, directed=True,
                    edge_predicate='e', node_predicate=None):
    """Estimates and actual ground rule counts over generated graphs.

    Parameters
    ----------
    program : :class:`~hybridSplitter.programAst.Program`
        Encoding without instance facts.
    rule_id : :obj:`int`
        Rule of the encoding to profile.
    sizes : :obj:`list` of :obj:`int`
        Vertex counts of the generated graphs.
    densities : :obj:`list` of :obj:`float`
        Edge densities in percent.
    seed : :obj:`int`, optional
        Generator seed, the same for every instance.
    oracle_cap : :obj:`int`, optional
        Ground the instance bottom-up only up to this vertex count.

    Returns
    -------
    :obj:`list` of :class:`ProfileRow`
    """
    # import here to prevent circular imports
    from .instanceGenerator import generate_graph
    from .oracle import bottom_up_ground, count_ground_rules

    rows = []
    for n in sizes:
        for density in densities:
            instance = generate_graph(n, density, seed, directed=directed,
                                      topology=topology,
                                      edge_predicate=edge_predicate,
                                      node_predicate=node_predicate)
            full = check_arities(Program(program.rules, program.facts +
                                         tuple(instance.facts())))
            a = analyze(full)
            rule = next(r for r in a.rules if r.id == rule_id)
            sota = join_estimate(rule, a.domains).final
            try:
                bdg = bdg_estimate(rule, a.domains).total
            except NotEstimable:
                bdg = None
            actual = None
            if n <= oracle_cap:
                ground, _ = bottom_up_ground(full, cap=ground_cap)
                actual = count_ground_rules(ground, rule_id)
            logger.verbose(f'n={n} density={density}: sota={sota:.2f} '
                           f'bdg={bdg} actual={actual}')
            rows.append(ProfileRow(n, density, sota, bdg, actual))
    return rows


def _fmt(value):
    return '' if value is None else f'{value:.2f}'


def write_profile_csv(rows, stream):
    """Write profile rows as |CSV| with a fixed header."""
    writer = csv.writer(stream, lineterminator='\n')
    writer.writerow(PROFILE_HEADER)
    for row in rows:
        writer.writerow([row.n, f'{row.density:g}', _fmt(row.sota_estimate),
                         _fmt(row.bdg_estimate),
                         '' if row.actual_sota is None else row.actual_sota])
