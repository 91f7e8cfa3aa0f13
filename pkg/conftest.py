# -*- coding: utf-8 -*-
"""Shared fixtures of the test suite."""
import pytest
import verboselogs

from hybridSplitter.instanceGenerator import generate_graph, load_scenario
from hybridSplitter.programAst import Program, check_arities

verboselogs.install()


def with_graph(program, n, density=100, seed=0, **kwargs):
    """Encoding plus the facts of a generated graph."""
    instance = generate_graph(n, density, seed, **kwargs)
    return check_arities(Program(program.rules, program.facts +
                                 tuple(instance.facts())))


def rule_by_text(rules, text):
    return next(r for r in rules if str(r) == text)


R1 = ':- f(X1,X2), f(X2,X3), f(X3,X4).'
R2 = ':- g(X1,X2), g(X1,X3), g(X2,X3).'
R3 = 'i(X1) :- h(X1,X2), h(X1,X3), h(X2,X3).'


@pytest.fixture(scope='session')
def example1():
    return load_scenario('example1')


@pytest.fixture(scope='session')
def triangle():
    return load_scenario('triangle')


@pytest.fixture
def graph_program():
    """Factory joining an encoding with a generated graph"""
    return with_graph
