# -*- coding: utf-8 -*-
"""
Data-structural splitting of a program into a part grounded by
body-decoupled grounding (BDG) and a part grounded bottom-up (SOTA).

Every rule is decided by :func:`decide`. The branches are tried in the order
of :class:`~hybridSplitter.constants.Branch`:

#. ``forced_sota`` for choice rules, weak constraints, disjunctive rules
   that are not head-cycle-free and rules without a BDG estimate,
#. ``stratified`` when every body predicate is stratified,
#. ``lpopt_recursed`` when the decomposition of the rule is narrower than
   the rule and its rewriting is estimated cheaper; the new rules are
   decided recursively,
#. ``bdg_constraint``, ``bdg_tight`` and ``bdg_hcf`` when the maximal arity
   ``a`` is small against the bag size (``a``, ``2a`` or ``3a`` below it)
   and the BDG estimate is strictly smaller than the join estimate,
#. ``default_sota`` otherwise.

Example
-------
>>> from hybridSplitter.programAst import parse_program
>>> from hybridSplitter.heuristics import partition
>>> result = partition(parse_program('e(1,2). p(X) :- e(X,Y).'))
>>> [str(d.marker) for d in result.report]
['sota']
"""
import logging
from dataclasses import dataclass, field, replace
from typing import Dict, NamedTuple, Optional, Tuple

from .analysis import analyze, build_dependency_graph, compute_sccs, \
    classify_rule
from .constants import Branch, HeadKind, Marker, TdStrategy, EXACT_CAP, \
    AUTO_EXACT, GROUND_CAP, ANSWER_SET_CAP, ORACLE_CAP
from .estimator import join_estimate, bdg_estimate
from .exception import NotEstimable
from .programAst import Program
from .rewriter import FreshNames, lpopt_rewrite, rewrite_estimate, \
    extend_domains
from .treeDecomposition import build_variable_graph, decompose, bag_size

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SplitOptions:
    """Settings of the splitting pipeline and the grounding oracle.

    The command line fills them from the configuration file and its flags.
    """
    td_strategy: TdStrategy = TdStrategy.MIN_FILL
    exact_cap: int = EXACT_CAP
    auto_exact: int = AUTO_EXACT
    ground_cap: int = GROUND_CAP
    answer_set_cap: int = ANSWER_SET_CAP
    oracle_cap: int = ORACLE_CAP


class Measures(NamedTuple):
    """Structural measures of a rule"""
    num_vars: int
    a: int
    a_h: int
    a_b: int
    phi: int
    is_constraint: bool
    is_tight: bool
    is_stratified: bool
    is_hcf: bool
    head_kind: HeadKind = HeadKind.NORMAL


class Estimates(NamedTuple):
    """Grounding size estimates of a rule"""
    sota: float
    bdg: Optional[float] = None
    lpopt_sota: Optional[float] = None


@dataclass(frozen=True)
class Decision:
    """Marker of one rule and the numbers it was based on.

    Attributes
    ----------
    rule_id : :obj:`int`
    marker : :class:`~hybridSplitter.constants.Marker`
        ``BDG`` or ``SOTA``; ``REWRITTEN`` only inside a ``trail``.
    branch : :class:`~hybridSplitter.constants.Branch`
    measures : :class:`Measures`
    estimates : :class:`Estimates`
    rule : :class:`~hybridSplitter.programAst.Rule`
    origin : :obj:`int` or :data:`None`
        Id of the input rule a rewritten rule was produced from.
    trail : :obj:`tuple` of :class:`Decision`
        Rewriting decisions leading to this rule, outermost first.
    """
    rule_id: int
    marker: Marker
    branch: Branch
    measures: Measures
    estimates: Estimates
    rule: object = None
    origin: Optional[int] = None
    trail: Tuple['Decision', ...] = ()

    def to_dict(self):
        """Plain representation for the |JSON| report"""
        return {'rule_id': self.rule_id,
                'rule': str(self.rule),
                'marker': str(self.marker),
                'branch': str(self.branch),
                'measures': {k: str(v) if k == 'head_kind' else v
                             for k, v in self.measures._asdict().items()},
                'estimates': self.estimates._asdict(),
                'origin': self.origin,
                'trail': [step.to_dict() for step in self.trail]}


def is_forced_sota(m, e):
    """Whether a rule bypasses the data heuristics."""
    if m.head_kind in (HeadKind.CHOICE, HeadKind.WEAK):
        return True
    if m.head_kind is HeadKind.DISJUNCTIVE and not m.is_hcf:
        return True
    return e.bdg is None


def branch_conditions(m, e):
    """Condition of every branch evaluated from recorded numbers.

    Parameters
    ----------
    m : :class:`Measures`
    e : :class:`Estimates`

    Returns
    -------
    :obj:`dict`
        :class:`~hybridSplitter.constants.Branch` to :obj:`bool`, in
        evaluation order.
    """
    cheaper = e.bdg is not None and e.bdg < e.sota
    return {
        Branch.FORCED_SOTA: is_forced_sota(m, e),
        Branch.STRATIFIED: m.is_stratified,
        Branch.LPOPT_RECURSED: (m.phi < m.num_vars and
                                e.lpopt_sota is not None and
                                e.lpopt_sota < e.sota),
        Branch.BDG_CONSTRAINT: m.a < m.phi and m.is_constraint and cheaper,
        Branch.BDG_TIGHT: 2 * m.a < m.phi and m.is_tight and cheaper,
        Branch.BDG_HCF: 3 * m.a < m.phi and cheaper,
        Branch.DEFAULT_SOTA: True,
    }


def select_branch(m, e):
    """First branch whose condition holds.

    Returns
    -------
    branch : :class:`~hybridSplitter.constants.Branch`
    marker : :class:`~hybridSplitter.constants.Marker`
    """
    branch = next(b for b, holds in branch_conditions(m, e).items() if holds)
    if branch is Branch.LPOPT_RECURSED:
        return branch, Marker.REWRITTEN
    if branch in (Branch.BDG_CONSTRAINT, Branch.BDG_TIGHT, Branch.BDG_HCF):
        return branch, Marker.BDG
    return branch, Marker.SOTA


@dataclass(frozen=True)
class DecisionContext:
    """Immutable analysis state the decisions of one program read"""
    rules: Tuple
    scc: object
    domains: object
    names: FreshNames
    options: SplitOptions = field(default_factory=SplitOptions)

    def with_rewriting(self, result):
        """Context that also covers the rules of a rewriting."""
        rules = tuple(r for r in self.rules
                      if r.id != result.original_rule_id) + result.new_rules
        scc = compute_sccs(build_dependency_graph(rules))
        return replace(self, rules=rules, scc=scc,
                       domains=extend_domains(result, self.domains))


def measure(rule, ctx):
    """Measures and tree decomposition of a rule.

    Returns
    -------
    measures : :class:`Measures`
    td : :class:`~hybridSplitter.treeDecomposition.TreeDecomposition`
    """
    opts = ctx.options
    td = decompose(build_variable_graph(rule), opts.td_strategy,
                   opts.exact_cap, opts.auto_exact)
    a_h = max((h.arity for h in rule.head), default=0)
    a_b = max((b.arity for b in rule.body), default=0)
    cls = classify_rule(rule, ctx.scc)
    m = Measures(len(rule.variables), max(a_h, a_b), a_h, a_b, bag_size(td),
                 cls.is_constraint, cls.is_tight, cls.is_stratified,
                 cls.is_hcf, rule.head_kind)
    return m, td


def decide(rule, ctx, origin=None, trail=()):
    """Decide the grounding procedure of a rule.

    Parameters
    ----------
    rule : :class:`~hybridSplitter.programAst.Rule`
    ctx : :class:`DecisionContext`
    origin : :obj:`int`, optional
        Input rule id when ``rule`` comes from a rewriting.
    trail : :obj:`tuple`, optional
        Decisions of the enclosing rewritings.

    Returns
    -------
    :obj:`list` of :class:`Decision`
        One decision for ``rule``, or one per rule of its rewriting.
    """
    m, td = measure(rule, ctx)
    sota = join_estimate(rule, ctx.domains).final
    try:
        bdg = bdg_estimate(rule, ctx.domains).total
    except NotEstimable:
        bdg = None
    lpopt, result = None, None
    if m.phi < m.num_vars and not m.is_stratified and \
            not is_forced_sota(m, Estimates(sota, bdg)):
        result = lpopt_rewrite(rule, td, ctx.names)
        if result.applicable and not result.is_identity:
            lpopt = rewrite_estimate(result, ctx.domains)
    e = Estimates(sota, bdg, lpopt)
    branch, marker = select_branch(m, e)
    decision = Decision(rule.id, marker, branch, m, e, rule, origin, trail)
    logger.verbose(f'Rule {rule.id}: {branch} -> {marker} '
                   f'(sota {sota:.2f}, bdg {bdg}, lpopt {lpopt})')
    if marker is not Marker.REWRITTEN:
        return [decision]

    inner = ctx.with_rewriting(result)
    root = rule.id if origin is None else origin
    decisions = []
    for new in result.new_rules:
        decisions.extend(decide(new, inner, root, trail + (decision,)))
    return decisions


@dataclass(frozen=True)
class Partition:
    """Split program.

    Attributes
    ----------
    pi_h : :obj:`tuple`
        Rules marked BDG.
    pi_g : :obj:`tuple`
        Rules marked SOTA. Facts belong to this part as well.
    facts : :obj:`tuple`
    report : :obj:`tuple` of :class:`Decision`
        One decision per final rule, ordered by rule id.
    markers : :obj:`dict`
        Input rule id to its marker, ``REWRITTEN`` for rewritten rules.
    """
    pi_h: Tuple = ()
    pi_g: Tuple = ()
    facts: Tuple = ()
    report: Tuple[Decision, ...] = ()
    markers: Dict[int, Marker] = field(default_factory=dict)

    @property
    def program(self):
        """:class:`~hybridSplitter.programAst.Program` : All final rules and
        facts"""
        rules = sorted(self.pi_h + self.pi_g, key=lambda r: r.id)
        return Program(tuple(rules), self.facts)


def _layer(rule, scc):
    if rule.head_kind in (HeadKind.CONSTRAINT, HeadKind.WEAK):
        return len(scc.sccs)
    return scc.defining_scc(rule)


def partition(program, options=None):
    """Split a program into its BDG and SOTA parts.

    Rules are decided component by component in topological order of the
    dependency graph, constraints and weak constraints last.

    Parameters
    ----------
    program : :class:`~hybridSplitter.programAst.Program`
    options : :class:`SplitOptions`, optional

    Returns
    -------
    :class:`Partition`
    """
    options = options or SplitOptions()
    logger.notice(f'Splitting {len(program.rules)} statements ...')
    analysis = analyze(program)
    ctx = DecisionContext(analysis.rules, analysis.scc, analysis.domains,
                          FreshNames.for_program(program), options)
    decisions, markers = [], {}
    for rule in sorted(analysis.rules,
                       key=lambda r: (_layer(r, analysis.scc), r.id)):
        made = decide(rule, ctx)
        markers[rule.id] = made[0].trail[0].marker if made[0].trail \
            else made[0].marker
        decisions.extend(made)
    decisions.sort(key=lambda d: d.rule_id)
    pi_h = tuple(d.rule for d in decisions if d.marker is Marker.BDG)
    pi_g = tuple(d.rule for d in decisions if d.marker is Marker.SOTA)
    logger.success(f'... Done! {len(pi_h)} rules BDG, {len(pi_g)} rules '
                   f'SOTA, {len(analysis.facts)} facts')
    return Partition(pi_h, pi_g, analysis.facts, tuple(decisions), markers)
