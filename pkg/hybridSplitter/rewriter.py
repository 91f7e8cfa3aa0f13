# -*- coding: utf-8 -*-
"""
Structural rewriting of rules along tree decompositions.

A rule whose variable graph has a decomposition into several bags is
replaced by one rule per bag. Every non-root bag derives a fresh temporary
predicate over the variables it shares with its parent, the root bag keeps
the original head. Fresh predicates start with
:data:`~hybridSplitter.constants.TD_PREFIX`.

Example
-------
>>> from hybridSplitter.programAst import parse_program
>>> from hybridSplitter.treeDecomposition import (build_variable_graph,
...     decompose)
>>> from hybridSplitter.rewriter import FreshNames, lpopt_rewrite
>>> program = parse_program(':- f(X1,X2), f(X2,X3), f(X3,X4).')
>>> rule = program.rules[0]
>>> td = decompose(build_variable_graph(rule))
>>> result = lpopt_rewrite(rule, td, FreshNames.for_program(program))
>>> for r in result.new_rules:
...     print(r)
__td_1(X3) :- f(X3,X4).
__td_2(X2) :- f(X2,X3), __td_1(X3).
:- f(X1,X2), __td_2(X2).
"""
import itertools
import logging
import threading
from collections import defaultdict
from dataclasses import dataclass, field
from math import prod
from typing import Dict, Tuple

from .constants import HeadKind, TD_PREFIX
from .estimator import join_estimate
from .exception import NotApplicable, SafetyError
from .programAst import Literal, Rule, Term, check_safety

logger = logging.getLogger(__name__)


class FreshNames:
    """Thread-safe source of fresh predicate names and rule ids.

    Parameters
    ----------
    used : iterable of :obj:`str`, optional
        Predicate names that must not be handed out.
    first_rule_id : :obj:`int`, optional
        First id of new rules.
    """

    def __init__(self, used=(), first_rule_id=0):
        self._lock = threading.Lock()
        self._predicates = itertools.count(1)
        self._rule_ids = itertools.count(first_rule_id)
        self._used = set(used)

    @classmethod
    def for_program(cls, program):
        """Names avoiding every predicate and rule id of ``program``."""
        first = max((r.id for r in program.rules), default=-1) + 1
        return cls(program.predicates, first)

    def predicate(self):
        """:obj:`str` : Next unused ``__td_<n>`` name"""
        with self._lock:
            while True:
                name = f'{TD_PREFIX}{next(self._predicates)}'
                if name not in self._used:
                    self._used.add(name)
                    return name

    def rule_id(self):
        """:obj:`int` : Next unused rule id"""
        with self._lock:
            return next(self._rule_ids)


@dataclass(frozen=True)
class RewriteResult:
    """Outcome of :func:`lpopt_rewrite`.

    Attributes
    ----------
    original_rule_id : :obj:`int`
    new_rules : :obj:`tuple` of :class:`~hybridSplitter.programAst.Rule`
        The rule itself for an identity rewriting, empty if not applicable.
    fresh_predicates : :obj:`tuple`
        ``(name, arity)`` of every temporary predicate.
    applicable : :obj:`bool`
    reason : :obj:`str`
        Why the rule was not rewritten.
    interfaces : :obj:`dict`
        Temporary predicate to the variables of the original rule it
        carries, in argument order.
    """
    original_rule_id: int
    new_rules: Tuple[Rule, ...] = ()
    fresh_predicates: Tuple[Tuple[str, int], ...] = ()
    applicable: bool = True
    reason: str = ''
    interfaces: Dict[str, Tuple[str, ...]] = field(default_factory=dict)

    @property
    def is_identity(self):
        return self.applicable and not self.fresh_predicates

    def require(self):
        """Return ``self`` or raise
        :class:`~hybridSplitter.exception.NotApplicable`."""
        if not self.applicable:
            raise NotApplicable(self.reason)
        return self


def _declined(rule, reason):
    logger.debug(f'Rule {rule.id} not rewritten: {reason}')
    return RewriteResult(rule.id, applicable=False, reason=reason)


def _placement(variables, bags, depth):
    """Deepest bag holding all ``variables``, ties by smallest id."""
    holding = [t for t, bag in bags.items() if set(variables) <= bag]
    if not holding:
        return None
    return min(holding, key=lambda t: (-depth[t], t))


def lpopt_rewrite(rule, td, names):
    """Rewrite a rule along a tree decomposition of its variable graph.

    Every literal and comparison is placed in the deepest bag containing
    all of its variables. The root is the bag with the smallest id that
    contains all head variables. Bags without placed literals in their
    subtree are dropped, the remaining bags are emitted from the leaves to
    the root.

    Parameters
    ----------
    rule : :class:`~hybridSplitter.programAst.Rule`
    td : :class:`~hybridSplitter.treeDecomposition.TreeDecomposition`
    names : :class:`FreshNames`

    Returns
    -------
    :class:`RewriteResult`
        ``applicable`` is :data:`False` with a ``reason`` for disjunctive,
        choice and weak rules and whenever an emitted rule would be unsafe.
    """
    if rule.head_kind not in (HeadKind.NORMAL, HeadKind.CONSTRAINT):
        return _declined(rule, f'{rule.head_kind} rule')
    if not rule.body_pos:
        return _declined(rule, 'no positive body')
    if len(td.bags) == 1:
        return RewriteResult(rule.id, (rule,))

    head_vars = {x for h in rule.head for x in h.variables}
    roots = sorted(t for t, bag in td.bags.items() if head_vars <= bag)
    if not roots:
        return _declined(rule, 'no bag holds all head variables')
    parent, depth = td.rooted(roots[0])

    placed = defaultdict(lambda: {'pos': [], 'neg': [], 'cmp': []})
    for kind, items in (('pos', rule.body_pos), ('neg', rule.body_neg),
                        ('cmp', rule.body_cmp)):
        for item in items:
            t = _placement(item.variables, td.bags, depth)
            if t is None:
                return _declined(rule, f'no bag holds all variables of '
                                       f'{item}')
            placed[t][kind].append(item)

    children = defaultdict(list)
    for t, p in parent.items():
        if p is not None:
            children[p].append(t)

    order = sorted(td.bags, key=lambda t: (-depth[t], t))
    used = {}
    for t in order:
        used[t] = bool(placed[t]['pos'] or placed[t]['neg'] or
                       placed[t]['cmp']) or any(used[c] for c in children[t])
    if sum(used.values()) == 1:
        return RewriteResult(rule.id, (rule,))

    position = {x: i for i, x in enumerate(rule.variables)}
    emitted, fresh, interfaces, temp_atom = [], [], {}, {}
    for t in order:
        if not used[t]:
            continue
        body_pos = list(placed[t]['pos'])
        body_pos += [temp_atom[c] for c in sorted(children[t]) if used[c]]
        if parent[t] is None:
            new = Rule(names.rule_id(), rule.head, rule.head_kind,
                       tuple(body_pos), tuple(placed[t]['neg']),
                       tuple(placed[t]['cmp']))
        else:
            bound = {x for lit in body_pos for x in lit.variables}
            interface = sorted(td.bags[t] & td.bags[parent[t]] & bound,
                               key=position.get)
            name = names.predicate()
            atom = Literal(name, tuple(Term.variable(x) for x in interface))
            temp_atom[t] = atom
            interfaces[name] = tuple(interface)
            fresh.append((name, len(interface)))
            new = Rule(names.rule_id(), (atom,), HeadKind.NORMAL,
                       tuple(body_pos), tuple(placed[t]['neg']),
                       tuple(placed[t]['cmp']))
        try:
            check_safety(new)
        except SafetyError as e:
            return _declined(rule, f'variable {e.variable} unbound in bag '
                                   f'{t}')
        emitted.append(new)
    logger.debug(f'Rule {rule.id} rewritten into {len(emitted)} rules')
    return RewriteResult(rule.id, tuple(emitted), tuple(fresh),
                         interfaces=interfaces)


def extend_domains(result, domains):
    """Domains covering the rules and predicates of a rewriting.

    A temporary predicate takes at every position the domain of the
    corresponding variable of the original rule, and its tuple estimate is
    the product of these domain sizes.

    Returns
    -------
    :class:`~hybridSplitter.analysis.DomainTable`
    """
    positions, estimates = {}, {}
    for name, variables in result.interfaces.items():
        doms = [domains.var_domain.get((result.original_rule_id, x),
                                       frozenset()) for x in variables]
        positions.update(((name, j), d) for j, d in enumerate(doms))
        estimates[name] = prod(len(d) for d in doms)
    return domains.extended(result.new_rules, positions, estimates)


def rewrite_estimate(result, domains):
    """Summed join estimate of the rules of an applicable rewriting.

    Parameters
    ----------
    result : :class:`RewriteResult`
    domains : :class:`~hybridSplitter.analysis.DomainTable`
        Domains of the program holding the original rule.

    Returns
    -------
    :obj:`float`
    """
    result.require()
    extended = extend_domains(result, domains)
    return sum(join_estimate(r, extended).final for r in result.new_rules)
