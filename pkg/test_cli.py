# -*- coding: utf-8 -*-
import io
import json

import pytest

from hybridSplitter.constants import TdStrategy
from hybridSplitter.hybridSplitter import HybridSplitter, main
from hybridSplitter.instanceGenerator import generate_graph, scenario_path
from hybridSplitter.programAst import parse_files

from conftest import R2

QUIET = ['-c', 'ERROR']


@pytest.fixture
def instance(tmp_path):
    """Writes a complete graph instance and returns its path"""
    def write(n, **kwargs):
        path = tmp_path / f'graph{n}.lp'
        path.write_text(generate_graph(n, 100, **kwargs).text())
        return str(path)
    return write


def test_split_writes_annotated_program_and_report(tmp_path, instance):
    encoding = scenario_path('example1')
    graph = instance(7)
    prefix = str(tmp_path / 'out')
    assert main(QUIET + ['-o', prefix, 'split', encoding, graph]) == 0

    annotated = (tmp_path / 'out.annotated.lp').read_text()
    assert '%!marker: bdg\n' + R2 in annotated
    assert annotated.count('%!from: 3') == 3
    assert len(parse_files([str(tmp_path / 'out.annotated.lp')]).rules) == \
        8 + 42 + 1

    report = json.loads((tmp_path / 'out.report.json').read_text())
    assert report['schema'] == 1
    assert report['tool'] == 'HybridSplitter'
    assert [f['path'] for f in report['inputs']] == [encoding, graph]
    assert len(report['input_digest']) == 64
    summary = report['summary']
    assert summary['rewritten'] == [3]
    assert summary['markers'] == {'bdg': 1, 'sota': 7}
    assert summary['facts'] == 43
    assert summary['estimate_pi_h'] == pytest.approx(191)
    assert report['options'] == {'td_strategy': 'min-fill',
                                 'exact_td_cap': 6}


def test_split_defaults_to_input_prefix(tmp_path):
    encoding = tmp_path / 'small.lp'
    encoding.write_text('e(1,2). p(X) :- e(X,Y).\n')
    assert main(QUIET + ['split', str(encoding)]) == 0
    assert (tmp_path / 'small.lp.annotated.lp').read_text() == \
        '%!marker: sota\np(X) :- e(X,Y).\ne(1,2).\n'


def test_estimate_csv(capsys, instance):
    assert main(QUIET + ['--csv', 'estimate', scenario_path('example1'),
                         instance(7)]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == 'rule,num_vars,a,phi,sota_estimate,bdg_estimate,' \
        'decision'
    rows = {int(line.split(',')[0]): line.split(',') for line in lines[1:]}
    assert sorted(rows) == [0, 1, 2, 3, 4, 5]
    assert rows[4] == ['4', '3', '2', '3', '216.00', '191.00', 'BDG']
    assert rows[3][-1] == 'REWRITTEN'
    assert rows[3][4] == '1512.00'
    assert rows[0][5] == '-'


def test_estimate_table(instance):
    out = io.StringIO()
    with HybridSplitter(console_loglevel='ERROR', stdout=out) as hs:
        rows = hs.estimate([scenario_path('triangle'), instance(4)])
    assert [r[-1] for r in rows] == ['SOTA', 'SOTA']
    lines = out.getvalue().splitlines()
    assert lines[0].split() == ['rule', 'num_vars', 'a', 'phi',
                                'sota_estimate', 'bdg_estimate', 'decision']
    assert lines[2].split() == ['1', '3', '2', '3', '27.00', '74.00', 'SOTA']


def test_ground_single_rule(capsys, instance):
    assert main(QUIET + ['ground', '--rule', '1', scenario_path('triangle'),
                         instance(4)]) == 0
    captured = capsys.readouterr()
    assert len(captured.out.splitlines()) == 24
    assert captured.err.splitlines()[-1] == '24'


def test_ground_naive(capsys, tmp_path):
    program = tmp_path / 'p.lp'
    program.write_text('e(1). e(2). :- p(X).\n')
    assert main(QUIET + ['ground', '--mode', 'naive', str(program)]) == 0
    captured = capsys.readouterr()
    assert captured.out == ':- p(1).\n:- p(2).\ne(1).\ne(2).\n'
    assert captured.err.splitlines()[-1] == '2'


def test_generate(capsys):
    assert main(QUIET + ['gen', 'graph', '4', '100', '--seed', '5']) == 0
    lines = capsys.readouterr().out.splitlines()
    assert len([line for line in lines if line.startswith('e(')]) == 12
    assert lines[-1] == 'seed(5).'


def test_generate_to_file(tmp_path):
    path = tmp_path / 'g.lp'
    assert main(QUIET + ['-o', str(path), 'gen', 'graph', '5', '40',
                         '--undirected', '--node-predicate', 'node']) == 0
    assert path.read_text().startswith('node(1).\n')


def test_profile(capsys):
    assert main(QUIET + ['profile', scenario_path('triangle'), '--rule', '1',
                         '--sizes', '4', '5', '--densities', '100']) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines == ['n,density,sota_estimate,bdg_estimate,actual_sota',
                     '4,100,27.00,74.00,24',
                     '5,100,64.00,107.00,60']


@pytest.mark.parametrize('text, code', [
    ('p(X :- q(X).', 2),
    ('p(X) :- not q(X).', 2),
    ('p(1). p(1,2).', 2),
    ('p(1). :- #count{X : p(X)} > 2.', 3),
])
def test_rejected_programs(tmp_path, text, code):
    path = tmp_path / 'bad.lp'
    path.write_text(text)
    assert main(QUIET + ['estimate', str(path)]) == code


def test_missing_input(tmp_path):
    assert main(QUIET + ['split', str(tmp_path / 'missing.lp')]) == 2


def test_ground_cap(instance):
    assert main(QUIET + ['--ground-cap', '5', 'ground',
                         scenario_path('triangle'), instance(4)]) == 4


def test_exact_cap(tmp_path):
    rule = ':- ' + ', '.join(f'e(X{i},X{i + 1})' for i in range(13)) + '.'
    path = tmp_path / 'long.lp'
    path.write_text('e(1,2).\n' + rule + '\n')
    assert main(QUIET + ['estimate', str(path)]) == 0
    assert main(QUIET + ['--td-strategy', 'exact', 'estimate',
                         str(path)]) == 4
    config = tmp_path / 'exact.ini'
    config.write_text('[TreeDecomposition]\nstrategy = exact\n'
                      'exact_cap = 4\n')
    assert main(QUIET + ['--config', str(config), 'estimate',
                         str(path)]) == 4


def test_invalid_generator_arguments():
    with pytest.raises(SystemExit) as e:
        main(QUIET + ['gen', 'graph', '0', '50'])
    assert e.value.code == 2


def test_version(capsys):
    with pytest.raises(SystemExit) as e:
        main(['-v'])
    assert e.value.code == 0
    assert capsys.readouterr().out.strip() == '0.1.0'


def test_configuration_file(tmp_path):
    config = tmp_path / 'splitter.ini'
    config.write_text('[TreeDecomposition]\nstrategy = min-degree\n'
                      'auto_exact = 3\n[Grounding]\nground_cap = 99\n')
    with HybridSplitter(config=str(config), console_loglevel='ERROR') as hs:
        assert hs.options.td_strategy is TdStrategy.MIN_DEGREE
        assert hs.options.auto_exact == 3
        assert hs.options.ground_cap == 99
        assert hs.options.exact_cap == 12
    with HybridSplitter(config=str(config), console_loglevel='ERROR',
                        td_strategy='exact', ground_cap=5) as hs:
        assert hs.options.td_strategy is TdStrategy.EXACT
        assert hs.options.ground_cap == 5


def test_log_file(tmp_path):
    encoding = tmp_path / 'small.lp'
    encoding.write_text('e(1,2). p(X) :- e(X,Y).\n')
    logdir = tmp_path / 'logs'
    assert main(QUIET + ['-d', str(logdir), 'split', str(encoding)]) == 0
    logs = list(logdir.glob('*_HybridSplitter.log'))
    assert len(logs) == 1
    assert 'Splitting' in logs[0].read_text()


def test_keyboard_interrupt_is_swallowed():
    with HybridSplitter(console_loglevel='ERROR') as hs:
        raise KeyboardInterrupt
    assert hs.options is not None
