# -*- coding: utf-8 -*-
import pytest
from hypothesis import given, settings, strategies as st

from hybridSplitter.constants import Topology
from hybridSplitter.exception import CapExceeded
from hybridSplitter.instanceGenerator import load_scenario
from hybridSplitter.oracle import (naive_ground, bottom_up_ground,
                                   count_ground_rules, answer_sets_bruteforce,
                                   answer_set_strings, program_constants,
                                   project)
from hybridSplitter.programAst import parse_program
from hybridSplitter.analysis import split_facts

from conftest import with_graph


def answer_sets(text, ground=bottom_up_ground):
    program = parse_program(text)
    result = ground(program)
    if isinstance(result, tuple):
        result = result[0]
    return answer_set_strings(answer_sets_bruteforce(result))


def test_program_constants_in_term_order():
    facts, rules = split_facts(parse_program('e(b). e(10). e(2). '
                                             ':- e(X), X < a.'))
    assert program_constants(facts, rules) == ['2', '10', 'a', 'b']


def test_naive_counts():
    assert count_ground_rules(naive_ground(parse_program(
        'e(1). e(2). :- p(X).'))) == 2
    ground = naive_ground(parse_program(
        'e(1). e(2). e(3). :- f(X1,X2), f(X2,X3), f(X3,X4).'))
    assert count_ground_rules(ground) == 81


def test_naive_evaluates_comparisons():
    ground = naive_ground(parse_program(
        'e(1). e(2). e(3). :- e(X), e(Y), X < Y.'))
    assert sorted(str(r) for r in ground.rules) == [
        ':- e(1), e(2).', ':- e(1), e(3).', ':- e(2), e(3).']


def test_naive_cap():
    with pytest.raises(CapExceeded) as e:
        naive_ground(parse_program(
            'e(1). e(2). e(3). :- f(X1,X2), f(X2,X3), f(X3,X4).'), cap=80)
    assert e.value.exit_code == 4


@pytest.mark.parametrize('n, count', [(4, 24), (5, 60)])
def test_triangles_on_complete_graph(triangle, n, count):
    ground, _ = bottom_up_ground(with_graph(triangle, n))
    assert count_ground_rules(ground, 1) == count
    assert count_ground_rules(ground, 0) == n * (n - 1)


def test_no_triangles_on_path(triangle):
    ground, candidates = bottom_up_ground(
        with_graph(triangle, 100, topology=Topology.PATH))
    assert count_ground_rules(ground, 1) == 0
    assert len(candidates.possibly_true) == 2 * 99 + 1


def test_bottom_up_cap(triangle):
    with pytest.raises(CapExceeded):
        bottom_up_ground(with_graph(triangle, 4), cap=5)


def test_stratified_program_is_evaluated():
    ground, candidates = bottom_up_ground(parse_program(
        'e(1,2). e(2,3). t(X,Y) :- e(X,Y). t(X,Z) :- t(X,Y), e(Y,Z).'))
    assert ground.rules == ()
    assert {str(f) for f in ground.facts} >= {'t(1,2)', 't(2,3)', 't(1,3)'}
    assert candidates.surely_true == candidates.possibly_true


def test_negation_against_surely_true_atoms():
    ground, _ = bottom_up_ground(parse_program(
        'a. b :- not a. c :- not b.'))
    assert ground.rules == ()
    assert [str(f) for f in ground.facts] == ['a', 'c']
    assert str(ground) == 'a.\nc.\n'


def test_unknown_atoms_stay_as_rules():
    ground, candidates = bottom_up_ground(parse_program(
        'a :- not b. b :- not a. c :- a.'))
    assert len(ground.rules) == 3
    assert ground.facts == ()
    assert {str(a) for a in candidates.possibly_true} == {'a', 'b', 'c'}


@pytest.mark.parametrize('text, expected', [
    ('a :- not b. b :- not a.', [{'a'}, {'b'}]),
    ('a :- a.', [set()]),
    ('e(1,2). {g(X,Y)} :- e(X,Y).', [{'e(1,2)'}, {'e(1,2)', 'g(1,2)'}]),
    ('a :- not a.', []),
    ('a | b.', [{'a'}, {'b'}]),
    ('a | b. :- a.', [{'b'}]),
    ('c. a | b :- c. a :- b. b :- a.', [{'a', 'b', 'c'}]),
    ('p :- not q. q :- not p. :- p.', [{'q'}]),
    ('e(1). a(X) | b(X) :- e(X). c(X) :- a(X). b(X) :- c(X).',
     [{'e(1)', 'b(1)'}]),
])
def test_answer_sets(text, expected):
    assert answer_sets(text) == {frozenset(s) for s in expected}
    assert answer_sets(text, naive_ground) == {frozenset(s) for s in expected}


def test_weak_constraints_do_not_filter():
    assert answer_sets('a :- not b. b :- not a. :~ a. [1]') == \
        {frozenset({'a'}), frozenset({'b'})}


def test_answer_set_cap():
    with pytest.raises(CapExceeded):
        answer_sets_bruteforce(bottom_up_ground(parse_program(
            'a :- not b. b :- not a. c :- not d. d :- not c.'))[0], cap=3)


def test_project_removes_temporary_atoms():
    facts, _ = split_facts(parse_program('__td_1(2). p(1).'))
    sets = {frozenset(facts)}
    assert answer_set_strings(project(sets)) == {frozenset({'p(1)'})}


@settings(max_examples=10, deadline=None)
@given(st.integers(min_value=1, max_value=3), st.integers(0, 100))
def test_bottom_up_preserves_answer_sets(n, seed):
    program = with_graph(load_scenario('maximal_clique'), n, 50, seed,
                         edge_predicate='edge', node_predicate='node')
    naive = answer_sets_bruteforce(naive_ground(program))
    ground, candidates = bottom_up_ground(program)
    smart = answer_sets_bruteforce(ground)
    assert answer_set_strings(naive) == answer_set_strings(smart)
    assert candidates.surely_true <= candidates.possibly_true
    for answer_set in smart:
        assert candidates.surely_true <= answer_set
        assert answer_set <= candidates.possibly_true


def test_disjunctive_heads_reach_their_readers():
    ground, candidates = bottom_up_ground(parse_program(
        'e(1). a(X) | b(X) :- e(X). c(X) :- a(X). b(X) :- c(X).'))
    heads = sorted(tuple(h.predicate for h in r.head) for r in ground.rules)
    assert heads == [('a', 'b'), ('b',), ('c',)]
    assert 'c(1)' in {str(a) for a in candidates.possibly_true}


BINARY = ('p', 'q', 'r')
UNARY = ('a', 'b', 'c')
PAIRS = [(u, v) for u in (1, 2) for v in (1, 2)]


@st.composite
def edge_facts(draw):
    edges = draw(st.lists(st.sampled_from(PAIRS), min_size=1, unique=True))
    return [f'e({u},{v}).' for u, v in edges]


@st.composite
def stratified_programs(draw):
    """Binary predicates over e/2 negating only predicates defined before
    them."""
    lines = draw(edge_facts())
    for i, head in enumerate(BINARY):
        lower = ('e',) + BINARY[:i]
        for _ in range(draw(st.integers(1, 2))):
            body = [f'{draw(st.sampled_from(lower + (head,)))}(X,Y)']
            if draw(st.booleans()):
                x, y = draw(st.sampled_from(['XZ', 'ZY', 'YX']))
                body.append(f'{draw(st.sampled_from(lower + (head,)))}'
                            f'({x},{y})')
            if draw(st.booleans()):
                x, y = draw(st.sampled_from(['XY', 'YX']))
                body.append(f'not {draw(st.sampled_from(lower))}({x},{y})')
            if draw(st.booleans()):
                body.append(draw(st.sampled_from(['X != Y', 'X < Y'])))
            lines.append(f'{head}(X,Y) :- {", ".join(body)}.')
    return ' '.join(lines)


@st.composite
def disjunctive_programs(draw):
    """One disjunction over e/2 plus acyclic normal rules over its heads."""
    lines = draw(edge_facts())
    lines.append('a(X) | b(X) :- e(X,Y).')
    order = draw(st.permutations(UNARY))
    for _ in range(draw(st.integers(1, 3))):
        i, j = sorted(draw(st.lists(st.integers(0, 2), min_size=2,
                                    max_size=2, unique=True)))
        body = [f'{order[i]}(X)']
        if draw(st.booleans()):
            body.append(f'not {draw(st.sampled_from(UNARY))}(X)')
        lines.append(f'{order[j]}(X) :- {", ".join(body)}.')
    return ' '.join(lines)


@settings(max_examples=50, deadline=None)
@given(stratified_programs())
def test_stratified_programs_are_fully_evaluated(text):
    program = parse_program(text)
    expected = answer_set_strings(answer_sets_bruteforce(
        naive_ground(program)))
    ground, candidates = bottom_up_ground(program)
    assert ground.rules == ()
    assert candidates.surely_true == candidates.possibly_true
    assert expected == {frozenset(str(f) for f in ground.facts)}


@settings(max_examples=40, deadline=None)
@given(disjunctive_programs())
def test_bottom_up_preserves_disjunctive_answer_sets(text):
    program = parse_program(text)
    naive = answer_sets_bruteforce(naive_ground(program))
    smart = answer_sets_bruteforce(bottom_up_ground(program)[0])
    assert answer_set_strings(naive) == answer_set_strings(smart)
