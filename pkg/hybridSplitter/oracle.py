# -*- coding: utf-8 -*-
"""
Reference grounders and a brute-force answer set solver.

The grounders work at desk scale and serve as ground truth for the size
estimates and for the equivalence of rewritings:

* :func:`naive_ground` instantiates every rule with every combination of
  domain constants.
* :func:`bottom_up_ground` processes the components of the dependency graph
  in topological order and only instantiates rules whose positive body is
  possibly true. Atoms that are surely true become facts, so stratified
  programs are evaluated completely.
* :func:`answer_sets_bruteforce` enumerates answer sets of a ground program
  with the Gelfond-Lifschitz reduct.

Example
-------
>>> from hybridSplitter.programAst import parse_program
>>> from hybridSplitter.oracle import (bottom_up_ground, count_ground_rules,
...     answer_sets_bruteforce)
>>> ground, _ = bottom_up_ground(parse_program('a :- not b. b :- not a.'))
>>> count_ground_rules(ground)
2
>>> len(answer_sets_bruteforce(ground))
2
"""
import logging
from collections import defaultdict
from dataclasses import dataclass
from itertools import chain, combinations, product
from typing import FrozenSet, Tuple

from .analysis import split_facts, build_dependency_graph, compute_sccs
from .constants import AUX_PREFIX, HeadKind, GROUND_CAP, ANSWER_SET_CAP, \
    TD_PREFIX
from .exception import CapExceeded
from .programAst import Literal, Program, Rule, Term, WeakAnnotation

logger = logging.getLogger(__name__)

NEGATED_CHOICE = f'{AUX_PREFIX}nchoice_'
""":obj:`str` : Prefix of the atoms closing the even loop of a choice"""


def atom_key(atom):
    """Sort key of ground atoms: predicate, then constants in term order."""
    return atom.predicate, tuple(t.sort_key for t in atom.args)


@dataclass(frozen=True)
class GroundProgram:
    """Variable-free program.

    Attributes
    ----------
    rules : :obj:`tuple` of :class:`~hybridSplitter.programAst.Rule`
        Ground rules; their id is the id of the rule they instantiate.
        Comparisons are evaluated away.
    facts : :obj:`tuple` of :class:`~hybridSplitter.programAst.Literal`
    atoms : :obj:`frozenset`
        Ground atoms occurring in facts and rules.
    """
    rules: Tuple[Rule, ...] = ()
    facts: Tuple[Literal, ...] = ()
    atoms: FrozenSet[Literal] = frozenset()

    def to_program(self):
        return Program(self.rules, self.facts)

    def __str__(self):
        lines = [str(r) for r in self.rules]
        lines.extend(f'{f}.' for f in self.facts)
        return '\n'.join(lines) + '\n' if lines else ''


@dataclass(frozen=True)
class CandidateSet:
    """Candidate atoms of a bottom-up grounding.

    Attributes
    ----------
    possibly_true : :obj:`frozenset`
        Atoms that may be true in some answer set.
    surely_true : :obj:`frozenset`
        Atoms that are true in every answer set, a subset of
        ``possibly_true``.
    """
    possibly_true: FrozenSet[Literal] = frozenset()
    surely_true: FrozenSet[Literal] = frozenset()


class _Budget:
    """Counts instantiation steps against a cap"""

    def __init__(self, cap):
        self.cap = cap
        self.spent = 0

    def spend(self, amount=1):
        self.spent += amount
        if self.spent > self.cap:
            raise CapExceeded(f'Grounding exceeds the limit of {self.cap} '
                              f'instantiations')


def _ground_term(term, binding):
    if term is None or not term.is_variable:
        return term
    return Term.constant(binding[term.name])


def instantiate(rule, binding):
    """Ground instance of a rule without its comparisons.

    Parameters
    ----------
    rule : :class:`~hybridSplitter.programAst.Rule`
    binding : :obj:`dict`
        Variable name to constant name for every variable of the rule.

    Returns
    -------
    :class:`~hybridSplitter.programAst.Rule`
    """
    weak = None
    if rule.weak is not None:
        weak = WeakAnnotation(_ground_term(rule.weak.weight, binding),
                              _ground_term(rule.weak.level, binding),
                              tuple(_ground_term(t, binding)
                                    for t in rule.weak.terms))
    return Rule(rule.id,
                tuple(h.substitute(binding) for h in rule.head),
                rule.head_kind,
                tuple(b.substitute(binding) for b in rule.body_pos),
                tuple(b.substitute(binding) for b in rule.body_neg),
                (), weak)


def _rule_atoms(rule):
    return chain(rule.head, rule.body_pos, rule.body_neg)


def program_constants(facts, rules):
    """:obj:`list` : :math:`dom(\\Pi)`, all constants in term order"""
    terms = {t for lit in facts for t in lit.args}
    for rule in rules:
        terms.update(t for lit in rule.literals for t in lit.args
                     if not t.is_variable)
        for cmp in rule.body_cmp:
            terms.update(t for t in (cmp.lhs, cmp.rhs) if not t.is_variable)
    return [t.name for t in sorted(terms, key=lambda t: t.sort_key)]


def naive_ground(program, cap=GROUND_CAP):
    """Instantiate every rule over all constants of the program.

    Parameters
    ----------
    program : :class:`~hybridSplitter.programAst.Program`
    cap : :obj:`int`, optional
        Maximal number of instantiations.

    Returns
    -------
    :class:`GroundProgram`

    Raises
    ------
    :class:`~hybridSplitter.exception.CapExceeded`
    """
    facts, rules = split_facts(program)
    dom = program_constants(facts, rules)
    total = sum(len(dom) ** len(r.variables) for r in rules)
    if total > cap:
        raise CapExceeded(f'Naive grounding needs {total} instantiations, '
                          f'limit is {cap}')
    ground = []
    for rule in rules:
        names = rule.variables
        for values in product(dom, repeat=len(names)):
            binding = dict(zip(names, values))
            if all(cmp.holds(binding) for cmp in rule.body_cmp):
                ground.append(instantiate(rule, binding))
    atoms = frozenset(facts).union(*(_rule_atoms(r) for r in ground))
    logger.verbose(f'Naive grounding: {len(ground)} rules over '
                   f'{len(dom)} constants')
    return GroundProgram(tuple(ground), tuple(facts), atoms)


class _AtomIndex:
    """Ground atoms per predicate with lookups by bound argument positions"""

    def __init__(self, atoms=()):
        self._atoms = defaultdict(dict)
        self._tables = {}
        for atom in atoms:
            self.add(atom)

    def __contains__(self, atom):
        return atom in self._atoms[atom.predicate]

    def __iter__(self):
        return chain.from_iterable(self._atoms.values())

    def add(self, atom):
        """Add an atom, returning whether it was new."""
        if atom in self._atoms[atom.predicate]:
            return False
        self._atoms[atom.predicate][atom] = None
        for (predicate, positions), table in self._tables.items():
            if predicate == atom.predicate:
                table[tuple(atom.args[j].name for j in positions)].append(atom)
        return True

    def lookup(self, predicate, positions, values):
        if not positions:
            return list(self._atoms[predicate])
        key = (predicate, positions)
        if key not in self._tables:
            table = defaultdict(list)
            for atom in self._atoms[predicate]:
                table[tuple(atom.args[j].name for j in positions)].append(atom)
            self._tables[key] = table
        return list(self._tables[key].get(values, ()))


def _join(literals, index, binding, budget):
    if not literals:
        yield binding
        return
    first, rest = literals[0], literals[1:]
    positions, values = [], []
    for j, t in enumerate(first.args):
        if not t.is_variable:
            positions.append(j)
            values.append(t.name)
        elif t.name in binding:
            positions.append(j)
            values.append(binding[t.name])
    matches = index.lookup(first.predicate, tuple(positions), tuple(values))
    budget.spend(len(matches) or 1)
    for atom in matches:
        extended = dict(binding)
        consistent = True
        for t, c in zip(first.args, atom.args):
            if t.is_variable:
                if extended.setdefault(t.name, c.name) != c.name:
                    consistent = False
                    break
        if consistent:
            yield from _join(rest, index, extended, budget)


def _instances(rule, possible, budget):
    for binding in _join(rule.body_pos, possible, {}, budget):
        if all(cmp.holds(binding) for cmp in rule.body_cmp):
            yield instantiate(rule, binding)


def bottom_up_ground(program, cap=GROUND_CAP):
    """Ground a program along its components with candidate sets.

    Within a component, rules are instantiated over the possibly true atoms
    until no new head atom appears. Afterwards every atom of the component
    outside the candidate set is false, and the surely true atoms are
    derived by a second fixpoint. Instances with a surely true negative
    body atom and instances whose head is surely true are not emitted;
    surely true atoms are returned as facts.

    Parameters
    ----------
    program : :class:`~hybridSplitter.programAst.Program`
    cap : :obj:`int`, optional
        Maximal number of join steps.

    Returns
    -------
    ground : :class:`GroundProgram`
    candidates : :class:`CandidateSet`

    Raises
    ------
    :class:`~hybridSplitter.exception.CapExceeded`
    """
    facts, rules = split_facts(program)
    scc = compute_sccs(build_dependency_graph(rules))
    budget = _Budget(cap)
    possible, surely = _AtomIndex(facts), set(facts)

    by_scc = defaultdict(list)
    closing = []
    for rule in rules:
        if rule.head_kind in (HeadKind.CONSTRAINT, HeadKind.WEAK):
            closing.append(rule)
        else:
            by_scc[scc.defining_scc(rule)].append(rule)

    ground = []
    for s in scc.topo_order:
        own = by_scc[s]
        if not own:
            continue
        changed = True
        while changed:
            changed = False
            for rule in own:
                for inst in list(_instances(rule, possible, budget)):
                    if any(n in surely for n in inst.body_neg):
                        continue
                    for h in inst.head:
                        changed |= possible.add(h)
        changed = True
        while changed:
            changed = False
            for rule in own:
                if rule.head_kind is not HeadKind.NORMAL:
                    continue
                for inst in _instances(rule, possible, budget):
                    h = inst.head[0]
                    if h in surely:
                        continue
                    if all(p in surely for p in inst.body_pos) and \
                            not any(n in possible for n in inst.body_neg):
                        surely.add(h)
                        changed = True
        for rule in own:
            for inst in _instances(rule, possible, budget):
                if any(n in surely for n in inst.body_neg):
                    continue
                if any(h in surely for h in inst.head):
                    continue
                ground.append(inst)

    for rule in closing:
        for inst in _instances(rule, possible, budget):
            if not any(n in surely for n in inst.body_neg):
                ground.append(inst)

    true_atoms = tuple(sorted(surely, key=atom_key))
    atoms = frozenset(true_atoms).union(*(_rule_atoms(r) for r in ground))
    logger.verbose(f'Bottom-up grounding: {len(ground)} rules, '
                   f'{len(true_atoms)} facts, {budget.spent} join steps')
    return (GroundProgram(tuple(ground), true_atoms, atoms),
            CandidateSet(frozenset(possible), frozenset(surely)))


def count_ground_rules(ground, rule_id=None):
    """Number of emitted ground rules, facts excluded.

    Parameters
    ----------
    ground : :class:`GroundProgram`
    rule_id : :obj:`int`, optional
        Count only instances of this rule.
    """
    if rule_id is None:
        return len(ground.rules)
    return sum(1 for r in ground.rules if r.id == rule_id)


def _expand_choices(rules):
    """Replace choice rules by an even loop through an auxiliary atom."""
    expanded = []
    for rule in rules:
        if rule.head_kind is not HeadKind.CHOICE:
            expanded.append(rule)
            continue
        for h in rule.head:
            other = Literal(NEGATED_CHOICE + h.predicate, h.args)
            expanded.append(Rule(rule.id, (h,), HeadKind.NORMAL,
                                 rule.body_pos, rule.body_neg + (other,)))
            expanded.append(Rule(rule.id, (other,), HeadKind.NORMAL,
                                 rule.body_pos, rule.body_neg + (h,)))
    return expanded


def _least_model(rules, facts, is_true):
    model = set(facts)
    changed = True
    while changed:
        changed = False
        for rule in rules:
            if rule.head[0] in model or any(is_true(n) for n in rule.body_neg):
                continue
            if all(p in model for p in rule.body_pos):
                model.add(rule.head[0])
                changed = True
    return model


def _violates(rule, interpretation):
    return all(p in interpretation for p in rule.body_pos) and \
        not any(n in interpretation for n in rule.body_neg)


def _subsets(items):
    return chain.from_iterable(combinations(items, k)
                               for k in range(len(items) + 1))


def _is_model(rules, interpretation, reduct_of=None):
    """Whether every rule is satisfied; with ``reduct_of`` the negative
    bodies are judged against that interpretation instead."""
    judge = interpretation if reduct_of is None else reduct_of
    for rule in rules:
        if any(n in judge for n in rule.body_neg):
            continue
        if not all(p in interpretation for p in rule.body_pos):
            continue
        if not any(h in interpretation for h in rule.head):
            return False
    return True


def answer_sets_bruteforce(ground, cap=ANSWER_SET_CAP):
    """Enumerate all answer sets of a ground program.

    Choice rules are expanded to an even loop through an auxiliary atom.
    Normal programs guess the truth of every negated atom that is the head
    of some rule and keep the guesses reproduced by the least model of the
    reduct. Disjunctive programs enumerate all interpretations of the head
    atoms and keep the minimal models of their reduct. Weak constraints do
    not influence answer sets.

    Parameters
    ----------
    ground : :class:`GroundProgram`
    cap : :obj:`int`, optional
        Maximal number of enumerated atoms.

    Returns
    -------
    :obj:`set` of :obj:`frozenset`
        Answer sets without auxiliary atoms.

    Raises
    ------
    :class:`~hybridSplitter.exception.CapExceeded`
    """
    rules = _expand_choices(r for r in ground.rules
                            if r.head_kind is not HeadKind.WEAK)
    facts = frozenset(ground.facts)
    constraints = [r for r in rules if r.head_kind is HeadKind.CONSTRAINT]
    rules = [r for r in rules if r.head_kind is not HeadKind.CONSTRAINT]
    heads = {h for r in rules for h in r.head}
    found = set()

    if any(len(r.head) > 1 for r in rules):
        atoms = sorted(heads - facts, key=atom_key)
        if len(atoms) > cap:
            raise CapExceeded(f'{len(atoms)} atoms to enumerate, limit is '
                              f'{cap}')
        for chosen in _subsets(atoms):
            candidate = facts | frozenset(chosen)
            if not _is_model(rules + constraints, candidate):
                continue
            smaller = (facts | frozenset(sub) for sub in _subsets(chosen)
                       if len(sub) < len(chosen))
            if any(_is_model(rules + constraints, j, reduct_of=candidate)
                   for j in smaller):
                continue
            found.add(candidate)
    else:
        guessed = sorted({n for r in rules for n in r.body_neg
                          if n in heads and n not in facts}, key=atom_key)
        if len(guessed) > cap:
            raise CapExceeded(f'{len(guessed)} atoms to enumerate, limit is '
                              f'{cap}')
        for chosen in _subsets(guessed):
            assumed = frozenset(chosen)

            def is_true(atom):
                return atom in facts or atom in assumed

            model = _least_model(rules, facts, is_true)
            if any((g in model) != (g in assumed) for g in guessed):
                continue
            if any(_violates(c, model) for c in constraints):
                continue
            found.add(frozenset(model))

    logger.debug(f'{len(found)} answer sets')
    return {frozenset(a for a in s
                      if not a.predicate.startswith(NEGATED_CHOICE))
            for s in found}


def project(answer_sets, prefix=TD_PREFIX):
    """Remove atoms of predicates starting with ``prefix``."""
    return {frozenset(a for a in s if not a.predicate.startswith(prefix))
            for s in answer_sets}


def answer_set_strings(answer_sets):
    """:obj:`set` of :obj:`frozenset` of :obj:`str` : Printable answer
    sets"""
    return {frozenset(map(str, s)) for s in answer_sets}
