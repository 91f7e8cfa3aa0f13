# -*- coding: utf-8 -*-
"""
Parse, represent and print non-ground answer set programs.

The accepted language is a subset of |ASP|-Core-2: facts, normal and
disjunctive rules, constraints, single-element choice rules without bounds,
default negation, comparison builtins and weak constraints which are passed
through unchanged. Aggregates and other directives are rejected with
:class:`~hybridSplitter.exception.UnsupportedConstruct`.

Example
-------
>>> from hybridSplitter.programAst import parse_program, pretty_print
>>> program = parse_program(':- f(X1,X2), f(X2,X3), f(X3,X4).')
>>> rule = program.rules[0]
>>> rule.head_kind, len(rule.variables), len(rule.body_pos)
(<HeadKind.CONSTRAINT: 'constraint'>, 4, 3)
>>> print(pretty_print(program))
:- f(X1,X2), f(X2,X3), f(X3,X4).
"""
import logging
from collections import defaultdict
from dataclasses import dataclass, replace
from functools import lru_cache
from typing import Dict, Iterable, Optional, Tuple

from lark import Lark, Transformer, Token, v_args
from lark.exceptions import UnexpectedInput, VisitError

from .constants import HeadKind
from .exception import (AspSyntaxError, SafetyError, ArityClashError,
                        UnsupportedConstruct)

logger = logging.getLogger(__name__)

GRAMMAR = r"""
start: _statement*

_statement: rule | weak | directive

rule: head "."                        -> bodyless
    | head ":-" body "."              -> rule
    | ":-" body "."                   -> constraint

weak: ":~" body "." "[" term ["@" term] ("," term)* "]"

directive: DIRECTIVE

head: atom ("|" atom)*                                       -> disjunction
    | [bound] "{" choice_element (";" choice_element)* "}" [bound] -> choice

choice_element: atom [":" body]

body: body_element ("," body_element)*
?body_element: atom                  -> pos
             | "not" atom            -> neg
             | term CMP term         -> cmp
             | aggregate

aggregate: [term CMP] AGGREGATE AGGREGATE_SET [CMP term]

atom: NAME ("(" term ("," term)* ")")?

term: VARIABLE                       -> variable
    | NAME                           -> symbol
    | INT                            -> number
    | STRING                         -> string

bound: INT | VARIABLE
CMP: "<=" | ">=" | "!=" | "<>" | "==" | "<" | ">" | "="
AGGREGATE: /#(count|sum\+?|min|max)/
AGGREGATE_SET: /\{[^{}]*\}/
DIRECTIVE: /#[a-z]+[^.]*\./
NAME: /_*[a-z][A-Za-z0-9_']*/
VARIABLE: /_*[A-Z][A-Za-z0-9_']*/
INT: /[0-9]+/
STRING: /"[^"\n]*"/
BLOCK_COMMENT: /%\*[\s\S]*?\*%/
LINE_COMMENT: /%[^\n]*/

%import common.WS
%ignore WS
%ignore BLOCK_COMMENT
%ignore LINE_COMMENT
"""

OPERATORS = {'<': '<', '<=': '<=', '>': '>', '>=': '>=', '=': '=',
             '==': '=', '!=': '!=', '<>': '!='}
""":obj:`dict` : Normalized spelling of comparison operators"""


@dataclass(frozen=True)
class Term:
    """A constant or a variable.

    Constants are integers, lowercase symbols or quoted strings.
    """
    name: str
    is_variable: bool = False

    @classmethod
    def variable(cls, name):
        return cls(name, True)

    @classmethod
    def constant(cls, name):
        return cls(str(name), False)

    @property
    def kind(self):
        """:obj:`str` : ``'variable'`` or ``'constant'``"""
        return 'variable' if self.is_variable else 'constant'

    @property
    def sort_key(self):
        """Total order on constants: integers, then symbols, then strings."""
        if self.name.isdigit():
            return (0, int(self.name), '')
        if self.name.startswith('"'):
            return (2, 0, self.name)
        return (1, 0, self.name)

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Literal:
    """A predicate applied to an ordered tuple of terms."""
    predicate: str
    args: Tuple[Term, ...] = ()

    @property
    def arity(self):
        return len(self.args)

    @property
    def variables(self):
        """:obj:`tuple` : Variable names in order of first occurrence"""
        return tuple(dict.fromkeys(t.name for t in self.args
                                   if t.is_variable))

    @property
    def is_ground(self):
        return not any(t.is_variable for t in self.args)

    def substitute(self, binding):
        """Replace variables by the constants of ``binding``."""
        return Literal(self.predicate, tuple(
            Term.constant(binding[t.name]) if t.is_variable else t
            for t in self.args))

    def __str__(self):
        if not self.args:
            return self.predicate
        return f'{self.predicate}({",".join(map(str, self.args))})'


@dataclass(frozen=True)
class Comparison:
    """A comparison builtin ``lhs op rhs``."""
    op: str
    lhs: Term
    rhs: Term

    @property
    def variables(self):
        return tuple(dict.fromkeys(t.name for t in (self.lhs, self.rhs)
                                   if t.is_variable))

    def holds(self, binding=None):
        """Evaluate the comparison under a complete variable binding.

        Parameters
        ----------
        binding : :obj:`dict`, optional
            Maps variable names to constant names.
        """
        binding = binding or {}
        left = _resolve(self.lhs, binding).sort_key
        right = _resolve(self.rhs, binding).sort_key
        return {'<': left < right, '<=': left <= right, '>': left > right,
                '>=': left >= right, '=': left == right,
                '!=': left != right}[self.op]

    def __str__(self):
        return f'{self.lhs} {self.op} {self.rhs}'


def _resolve(term, binding):
    if term.is_variable:
        return Term.constant(binding[term.name])
    return term


@dataclass(frozen=True)
class WeakAnnotation:
    """Weight, optional level and tuple terms of a weak constraint."""
    weight: Term
    level: Optional[Term] = None
    terms: Tuple[Term, ...] = ()

    def __str__(self):
        first = str(self.weight)
        if self.level is not None:
            first += f'@{self.level}'
        return '[' + ','.join([first] + [str(t) for t in self.terms]) + ']'


@dataclass(frozen=True)
class Rule:
    """A non-ground rule with partitioned body.

    Attributes
    ----------
    id : :obj:`int`
        Stable identifier, the position of the statement in the input.
    head : :obj:`tuple` of :class:`Literal`
        Head atoms, empty for constraints and weak constraints.
    head_kind : :class:`~hybridSplitter.constants.HeadKind`
    body_pos, body_neg : :obj:`tuple` of :class:`Literal`
    body_cmp : :obj:`tuple` of :class:`Comparison`
    weak : :class:`WeakAnnotation` or :data:`None`
    """
    id: int
    head: Tuple[Literal, ...] = ()
    head_kind: HeadKind = HeadKind.CONSTRAINT
    body_pos: Tuple[Literal, ...] = ()
    body_neg: Tuple[Literal, ...] = ()
    body_cmp: Tuple[Comparison, ...] = ()
    weak: Optional[WeakAnnotation] = None

    @property
    def variables(self):
        """:obj:`tuple` : Variable names ordered by first occurrence in head,
        positive body, negative body and comparisons"""
        names = []
        for lit in self.head + self.body_pos + self.body_neg:
            names.extend(lit.variables)
        for cmp in self.body_cmp:
            names.extend(cmp.variables)
        return tuple(dict.fromkeys(names))

    @property
    def body(self):
        """:obj:`tuple` : Positive and negative body literals"""
        return self.body_pos + self.body_neg

    @property
    def literals(self):
        """:obj:`tuple` : Literals of :math:`H_r \\cup B_r`"""
        return self.head + self.body_pos + self.body_neg

    @property
    def size(self):
        """:obj:`int` : Number of head and body literals"""
        return len(self.literals)

    @property
    def max_arity(self):
        return max((lit.arity for lit in self.literals), default=0)

    @property
    def is_fact(self):
        return (self.head_kind is HeadKind.NORMAL and not self.body_pos
                and not self.body_neg and not self.body_cmp
                and self.head[0].is_ground)

    @property
    def is_constraint(self):
        return self.head_kind is HeadKind.CONSTRAINT

    def with_id(self, rule_id):
        return replace(self, id=rule_id)

    def __str__(self):
        body = [str(lit) for lit in self.body_pos]
        body += [f'not {lit}' for lit in self.body_neg]
        body += [str(cmp) for cmp in self.body_cmp]
        body = ', '.join(body)
        if self.head_kind is HeadKind.WEAK:
            return f':~ {body}. {self.weak}'
        if self.head_kind is HeadKind.CONSTRAINT:
            return f':- {body}.'
        if self.head_kind is HeadKind.CHOICE:
            head = '{' + str(self.head[0]) + '}'
        else:
            head = ' | '.join(map(str, self.head))
        return f'{head} :- {body}.' if body else f'{head}.'


@dataclass(frozen=True)
class Program:
    """Rules of a program and, after fact splitting, its facts."""
    rules: Tuple[Rule, ...] = ()
    facts: Tuple[Literal, ...] = ()

    @property
    def size(self):
        """:obj:`int` : :math:`|\\Pi|`, the summed size of all rules"""
        return sum(r.size for r in self.rules) + len(self.facts)

    @property
    def arities(self):
        """:obj:`dict` : Maps every predicate name to its arity"""
        return {p: next(iter(a)) for p, a in _arities(self).items()}

    @property
    def predicates(self):
        return frozenset(self.arities)

    def __str__(self):
        return pretty_print(self)


def _arities(program):
    found = defaultdict(set)
    for lit in program.facts:
        found[lit.predicate].add(lit.arity)
    for rule in program.rules:
        for lit in rule.literals:
            found[lit.predicate].add(lit.arity)
    return found


def check_arities(program):
    """Reject programs using one predicate name with different arities.

    Raises
    ------
    :class:`~hybridSplitter.exception.ArityClashError`
    """
    for predicate, arities in sorted(_arities(program).items()):
        if len(arities) > 1:
            raise ArityClashError(predicate, arities)
    return program


def check_safety(rule):
    """Reject rules with a variable outside the positive body.

    Raises
    ------
    :class:`~hybridSplitter.exception.SafetyError`
    """
    bound = set()
    for lit in rule.body_pos:
        bound.update(lit.variables)
    used = []
    for lit in rule.head + rule.body_neg:
        used.extend(lit.variables)
    for cmp in rule.body_cmp:
        used.extend(cmp.variables)
    if rule.weak is not None:
        used.extend(t.name for t in (rule.weak.weight, rule.weak.level,
                                     *rule.weak.terms)
                    if t is not None and t.is_variable)
    for name in used:
        if name not in bound:
            raise SafetyError(name, rule)
    return rule


class _Unsupported:
    """Placeholder for a construct found while building the syntax tree"""

    def __init__(self, what):
        self.what = what


@v_args(inline=True)
class _ProgramBuilder(Transformer):
    """Turns the parse tree into :class:`Rule` objects"""

    def __init__(self, text, source):
        super().__init__()
        self.lines = text.splitlines()
        self.source = source

    # Terms
    def variable(self, tok):
        return Term.variable(str(tok))

    def symbol(self, tok):
        return Term.constant(str(tok))

    def number(self, tok):
        return Term.constant(str(int(tok)))

    def string(self, tok):
        return Term.constant(str(tok))

    def atom(self, name, *args):
        return Literal(str(name), tuple(a for a in args if a is not None))

    # Body
    def pos(self, atom):
        return ('pos', atom)

    def neg(self, atom):
        return ('neg', atom)

    def cmp(self, lhs, op, rhs):
        return ('cmp', Comparison(OPERATORS[str(op)], lhs, rhs))

    def aggregate(self, *parts):
        fn = next(str(p) for p in parts if isinstance(p, Token)
                  and p.type == 'AGGREGATE')
        return ('unsupported', _Unsupported(f'aggregate {fn}'))

    def body(self, *elements):
        return list(elements)

    # Heads
    def disjunction(self, *atoms):
        kind = HeadKind.NORMAL if len(atoms) == 1 else HeadKind.DISJUNCTIVE
        return (kind, tuple(atoms))

    def choice_element(self, atom, condition):
        if condition is not None:
            return _Unsupported('conditional choice element')
        return atom

    def choice(self, lower, *rest):
        upper = rest[-1]
        elements = rest[:-1]
        if lower is not None or upper is not None:
            return (HeadKind.CHOICE, _Unsupported('choice with bounds'))
        if len(elements) != 1:
            return (HeadKind.CHOICE,
                    _Unsupported('choice with several elements'))
        if isinstance(elements[0], _Unsupported):
            return (HeadKind.CHOICE, elements[0])
        return (HeadKind.CHOICE, (elements[0],))


class _StatementBuilder:
    """Builds rules from statement subtrees, keeping line information"""

    def __init__(self, builder, first_id):
        self.builder = builder
        self.next_id = first_id

    def _line(self, tree):
        line = getattr(tree.meta, 'line', None)
        if line is None:
            return '?', ''
        return line, self.builder.lines[line - 1].strip()

    def _unsupported(self, tree, what):
        line, text = self._line(tree)
        where = f'{self.builder.source}:' if self.builder.source else ''
        raise UnsupportedConstruct(f'{where}{line}: {what} in rule "{text}"')

    def build(self, tree):
        if tree.data == 'directive':
            text = str(tree.children[0])
            if text.startswith('#show'):
                logger.debug(f'Ignoring directive {text}')
                return None
            self._unsupported(tree, f'directive {text.split()[0]}')
        children = [self.builder.transform(c) if hasattr(c, 'data') else c
                    for c in tree.children]
        head, head_kind, body, weak = (), HeadKind.CONSTRAINT, [], None
        if tree.data in ('bodyless', 'rule'):
            head_kind, head = children[0]
            if isinstance(head, _Unsupported):
                self._unsupported(tree, head.what)
            if tree.data == 'rule':
                body = children[1]
        elif tree.data == 'constraint':
            body = children[0]
        elif tree.data == 'weak':
            head_kind = HeadKind.WEAK
            body, weight, level, *terms = children
            weak = WeakAnnotation(weight, level, tuple(terms))
        sections = defaultdict(list)
        for section, item in body:
            if section == 'unsupported':
                self._unsupported(tree, item.what)
            sections[section].append(item)
        rule = Rule(self.next_id, head, head_kind,
                    tuple(sections['pos']), tuple(sections['neg']),
                    tuple(sections['cmp']), weak)
        self.next_id += 1
        return check_safety(rule)


@lru_cache(maxsize=1)
def _parser():
    return Lark(GRAMMAR, parser='lalr', propagate_positions=True,
                maybe_placeholders=True)


def parse_program(text, source=None, first_id=0, check=True):
    """Parse program text.

    Parameters
    ----------
    text : :obj:`str`
        Program in the supported |ASP|-Core-2 subset.
    source : :obj:`str`, optional
        File name used in error messages.
    first_id : :obj:`int`, optional
        Identifier of the first statement. Rule ids continue from it in
        source order.
    check : :obj:`bool`, optional
        Whether to reject predicates used with different arities.

    Returns
    -------
    :class:`Program`
        Program whose facts are still contained in its rules.

    Raises
    ------
    :class:`~hybridSplitter.exception.AspSyntaxError`
    :class:`~hybridSplitter.exception.SafetyError`
    :class:`~hybridSplitter.exception.ArityClashError`
    :class:`~hybridSplitter.exception.UnsupportedConstruct`
    """
    try:
        tree = _parser().parse(text)
    except UnexpectedInput as e:
        context = e.get_context(text).split('\n', 1)[0].strip()
        raise AspSyntaxError(f'unexpected input near "{context}"',
                             e.line, e.column, source) from None
    builder = _StatementBuilder(_ProgramBuilder(text, source), first_id)
    rules = []
    try:
        for statement in tree.children:
            rule = builder.build(statement)
            if rule is not None:
                rules.append(rule)
    except VisitError as e:
        raise e.orig_exc from None
    program = Program(tuple(rules))
    return check_arities(program) if check else program


def parse_files(paths):
    """Parse and concatenate several program files.

    Rule ids continue across files in the given order.

    Parameters
    ----------
    paths : :obj:`list` of :obj:`str`

    Returns
    -------
    :class:`Program`
    """
    rules = []
    for path in paths:
        with open(path, encoding='utf-8') as fh:
            text = fh.read()
        part = parse_program(text, source=path, first_id=len(rules),
                             check=False)
        logger.verbose(f'Read {len(part.rules)} statements from {path}')
        rules.extend(part.rules)
    return check_arities(Program(tuple(rules)))


def merge(*programs):
    """Concatenate programs, renumbering rule ids in order."""
    rules = [r for p in programs for r in p.rules]
    facts = [f for p in programs for f in p.facts]
    return check_arities(Program(
        tuple(r.with_id(i) for i, r in enumerate(rules)), tuple(facts)))


def pretty_print(program, annotations: Optional[Dict[int, Iterable[str]]]
                 = None):
    """Print a program in parseable form.

    Rules are printed ordered by id, followed by the facts of a split
    program.

    Parameters
    ----------
    program : :class:`Program`
    annotations : :obj:`dict`, optional
        Maps rule ids to comment lines printed before the rule.

    Returns
    -------
    :obj:`str`
        Program text, empty for an empty program.
    """
    lines = []
    for rule in sorted(program.rules, key=lambda r: r.id):
        if annotations:
            lines.extend(f'%{a}' for a in annotations.get(rule.id, ()))
        lines.append(str(rule))
    lines.extend(f'{fact}.' for fact in program.facts)
    return '\n'.join(lines) + '\n' if lines else ''
