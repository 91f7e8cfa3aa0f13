# -*- coding: utf-8 -*-
import threading

import pytest
from hypothesis import assume, given, settings, strategies as st

from hybridSplitter.analysis import analyze
from hybridSplitter.constants import TD_PREFIX
from hybridSplitter.exception import NotApplicable
from hybridSplitter.oracle import (bottom_up_ground, answer_sets_bruteforce,
                                   project, answer_set_strings)
from hybridSplitter.programAst import Program, parse_program
from hybridSplitter.rewriter import (FreshNames, lpopt_rewrite,
                                     rewrite_estimate, extend_domains)
from hybridSplitter.treeDecomposition import build_variable_graph, decompose

from conftest import R1, R2, rule_by_text, with_graph

PATH_RULE = 'p(X1) :- f(X1,X2), f(X2,X3), f(X3,X4).'


def rewrite(program, text):
    rule = rule_by_text(program.rules, text)
    td = decompose(build_variable_graph(rule))
    return rule, lpopt_rewrite(rule, td, FreshNames.for_program(program))


def replaced(program, rule, result):
    rules = [r for r in program.rules if r.id != rule.id]
    return Program(tuple(rules) + result.new_rules, program.facts)


def test_path_constraint_listing(example1):
    _, result = rewrite(example1, R1)
    assert [str(r) for r in result.new_rules] == [
        '__td_1(X3) :- f(X3,X4).',
        '__td_2(X2) :- f(X2,X3), __td_1(X3).',
        ':- f(X1,X2), __td_2(X2).',
    ]
    assert result.fresh_predicates == (('__td_1', 1), ('__td_2', 1))
    assert result.interfaces == {'__td_1': ('X3',), '__td_2': ('X2',)}
    assert [r.id for r in result.new_rules] == [6, 7, 8]
    assert not result.is_identity


def test_head_variables_stay_in_root():
    program = parse_program(PATH_RULE)
    _, result = rewrite(program, PATH_RULE)
    assert str(result.new_rules[-1]) == 'p(X1) :- f(X1,X2), __td_2(X2).'


def test_single_bag_is_identity(example1):
    rule, result = rewrite(example1, R2)
    assert result.is_identity
    assert result.new_rules == (rule,)


def test_negation_and_comparisons_are_placed():
    text = 'p(X1) :- f(X1,X2), f(X2,X3), not q(X3), X3 < 4.'
    program = parse_program(text)
    _, result = rewrite(program, text)
    assert [str(r) for r in result.new_rules] == [
        '__td_1(X2) :- f(X2,X3), not q(X3), X3 < 4.',
        'p(X1) :- f(X1,X2), __td_1(X2).',
    ]


@pytest.mark.parametrize('text, reason', [
    ('e(1). {f(X)} :- e(X).', 'choice'),
    ('e(1). p(X) | q(X) :- e(X).', 'disjunctive'),
    (':- not a.', 'no positive body'),
])
def test_not_applicable(text, reason):
    program = parse_program(text)
    rule = program.rules[-1]
    td = decompose(build_variable_graph(rule))
    result = lpopt_rewrite(rule, td, FreshNames.for_program(program))
    assert not result.applicable
    assert reason in result.reason
    assert result.new_rules == ()
    with pytest.raises(NotApplicable):
        result.require()


def test_fresh_names_skip_used_predicates():
    names = FreshNames(used={'__td_1', '__td_3'}, first_rule_id=10)
    assert [names.predicate() for _ in range(3)] == \
        ['__td_2', '__td_4', '__td_5']
    assert names.rule_id() == 10
    assert names.rule_id() == 11


def test_fresh_names_are_unique_across_threads():
    names = FreshNames()
    drawn = []

    def draw():
        for _ in range(200):
            drawn.append(names.predicate())

    threads = [threading.Thread(target=draw) for _ in range(4)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert len(set(drawn)) == 800


@pytest.mark.parametrize('n, estimate', [(4, 36), (7, 126)])
def test_rewrite_estimate(example1, n, estimate):
    program = with_graph(example1, n)
    a = analyze(program)
    rule = rule_by_text(a.rules, R1)
    td = decompose(build_variable_graph(rule))
    result = lpopt_rewrite(rule, td, FreshNames.for_program(program))
    assert rewrite_estimate(result, a.domains) == pytest.approx(estimate)
    extended = extend_domains(result, a.domains)
    assert extended.estimate('__td_1') == n
    assert extended.pos_domain[('__td_2', 0)] == \
        a.domains.var_domain[(rule.id, 'X2')]


def test_rewrite_estimate_requires_applicable():
    program = parse_program('e(1). {f(X)} :- e(X).')
    rule = program.rules[-1]
    result = lpopt_rewrite(rule, decompose(build_variable_graph(rule)),
                           FreshNames.for_program(program))
    with pytest.raises(NotApplicable):
        rewrite_estimate(result, analyze(program).domains)


@settings(max_examples=25, deadline=None)
@given(st.integers(min_value=2, max_value=6),
       st.sampled_from([25, 50, 75, 100]), st.integers(0, 1000))
def test_stratified_rewriting_keeps_consequences(n, density, seed):
    encoding = parse_program('f(X,Y) :- e(X,Y). ' + PATH_RULE)
    program = with_graph(encoding, n, density, seed)
    rule, result = rewrite(program, PATH_RULE)
    original, _ = bottom_up_ground(program)
    rewritten, _ = bottom_up_ground(replaced(program, rule, result))
    assert {a for a in rewritten.facts
            if not a.predicate.startswith(TD_PREFIX)} == set(original.facts)


@settings(max_examples=15, deadline=None)
@given(st.integers(min_value=2, max_value=4),
       st.sampled_from([25, 50]), st.integers(0, 1000))
def test_rewriting_keeps_answer_sets(example1, n, density, seed):
    encoding = Program((example1.rules[0], rule_by_text(example1.rules, R1)))
    program = with_graph(encoding, n, density, seed)
    rule, result = rewrite(program, R1)
    original = answer_sets_bruteforce(bottom_up_ground(program)[0])
    rewritten = answer_sets_bruteforce(
        bottom_up_ground(replaced(program, rule, result))[0])
    assert answer_set_strings(project(rewritten)) == \
        answer_set_strings(original)


@st.composite
def chain_rules(draw):
    """Chains over e/2 with a negated guess and a comparison."""
    length = draw(st.integers(min_value=2, max_value=3))
    variables = [f'X{i}' for i in range(1, length + 2)]
    body = [f'e({x},{y})' for x, y in zip(variables, variables[1:])]
    body.append(f'not q({draw(st.sampled_from(variables))})')
    x, y = draw(st.lists(st.sampled_from(variables), min_size=2, max_size=2,
                         unique=True))
    body.append(f'{x} {draw(st.sampled_from(["<", "<=", "!="]))} {y}')
    head = draw(st.sampled_from(['', 'p(X1) ', 'p(X2) ']))
    return f'{head}:- {", ".join(body)}.'


@settings(max_examples=40, deadline=None)
@given(chain_rules(), st.integers(min_value=2, max_value=3),
       st.sampled_from([50, 100]), st.integers(0, 1000))
def test_rewriting_with_negation_and_comparisons_keeps_answer_sets(
        text, n, density, seed):
    program = with_graph(parse_program('{q(X)} :- e(X,Y). ' + text), n,
                         density, seed)
    rule = program.rules[-1]
    td = decompose(build_variable_graph(rule))
    result = lpopt_rewrite(rule, td, FreshNames.for_program(program))
    assume(result.applicable)
    original = answer_sets_bruteforce(bottom_up_ground(program)[0])
    rewritten = answer_sets_bruteforce(
        bottom_up_ground(replaced(program, rule, result))[0])
    assert answer_set_strings(project(rewritten)) == \
        answer_set_strings(original)
