#!/usr/bin/python
# -*- coding: utf-8 -*-
"""
Command line tool of the hybrid grounding splitter.

Subcommands:

* ``split`` writes the annotated program and a |JSON| report,
* ``estimate`` prints the size estimates and the decision of every rule,
* ``ground`` runs one of the reference grounders,
* ``gen`` writes a random graph instance,
* ``profile`` writes estimates and actual counts over generated graphs as
  |CSV|.
"""
# Standard library modules
import os
import sys
import csv
import json
import hashlib
import logging
from configparser import ConfigParser
from argparse import ArgumentParser, ArgumentDefaultsHelpFormatter

# Other files
try:
    from .__version__ import __version__
    from .constants import (LOGLEVELS, LOGFORMAT, REPORT_SCHEMA, EXITCODE,
                            GroundMode, Marker, TdStrategy, Topology,
                            loglevel)
    from .exception import SplitterException
    from .extend_logging import (extend_logging, install_console,
                                 file_handler)
    from .estimator import density_profile, write_profile_csv
    from .heuristics import SplitOptions, partition
    from .instanceGenerator import generate_graph
    from .oracle import naive_ground, bottom_up_ground, count_ground_rules
    from .programAst import parse_files, pretty_print
except (ModuleNotFoundError, ImportError):
    from hybridSplitter.__version__ import __version__
    from hybridSplitter.constants import (LOGLEVELS, LOGFORMAT, REPORT_SCHEMA,
                                          EXITCODE, GroundMode, Marker,
                                          TdStrategy, Topology, loglevel)
    from hybridSplitter.exception import SplitterException
    from hybridSplitter.extend_logging import (extend_logging,
                                               install_console,
                                               file_handler)
    from hybridSplitter.estimator import density_profile, write_profile_csv
    from hybridSplitter.heuristics import SplitOptions, partition
    from hybridSplitter.instanceGenerator import generate_graph
    from hybridSplitter.oracle import (naive_ground, bottom_up_ground,
                                       count_ground_rules)
    from hybridSplitter.programAst import parse_files, pretty_print

scrdir = os.path.dirname(os.path.abspath(__file__))
DEFAULT_CONFIG = os.path.join(scrdir, 'HybridSplitterConfig.ini')

ESTIMATE_HEADER = ('rule', 'num_vars', 'a', 'phi', 'sota_estimate',
                   'bdg_estimate', 'decision')


def _digest(paths):
    total = hashlib.sha256()
    files = []
    for path in paths:
        with open(path, 'rb') as fh:
            data = fh.read()
        total.update(data)
        files.append({'path': path,
                      'sha256': hashlib.sha256(data).hexdigest()})
    return total.hexdigest(), files


class HybridSplitter(object):
    """Main class of the command line tool.

    Reads the configuration file, sets up logging and runs the subcommands.
    Command results go to ``stdout``, log messages to standard error and
    optionally to rotating log files.

    Parameters
    ----------
    config : :obj:`str`, optional
        Path of the configuration file. Defaults to
        'HybridSplitterConfig.ini' in the directory of this file.
    console_loglevel : :obj:`int` or :obj:`str`, optional
        Defines which log messages are displayed in the console.
    file_loglevel : :obj:`int` or :obj:`str`, optional
        Defines which log messages are written to the log files.
    logdir : :obj:`str`, optional
        Directory of the log files. No log file is written if neither this
        argument nor the configuration file names one.
    td_strategy : :obj:`str`, optional
        Elimination ordering of tree decompositions.
    exact_td_cap : :obj:`int`, optional
        Variable graphs up to this size are decomposed exactly.
    ground_cap : :obj:`int`, optional
        Limit of instantiation steps of the grounders.
    stdout : file object, optional
        Destination of command results.

    Example
    -------
    >>> from hybridSplitter.hybridSplitter import HybridSplitter
    >>> with HybridSplitter() as hs:
    >>>     hs.estimate(['encoding.lp', 'instance.lp'])

    Notes
    -----
    Use the class within a :keyword:`with` statement so that log handlers
    are closed in case of errors.
    """

    def __init__(self, config=None, console_loglevel=None,
                 file_loglevel=None, logdir=None, logformat=None,
                 td_strategy=None, exact_td_cap=None, ground_cap=None,
                 stdout=None):

        cf = ConfigParser()
        if config is None:
            config = DEFAULT_CONFIG
        cf.read(config)

        # Initialize logger
        extend_logging()
        if logformat is None:
            logformat = cf.get('Logging', 'logformat', fallback=LOGFORMAT)
        if console_loglevel is None:
            console_loglevel = cf.get('Logging', 'console_loglevel',
                                      fallback='NOTICE')
        if file_loglevel is None:
            file_loglevel = cf.get('Logging', 'file_loglevel',
                                   fallback='INFO')
        if logdir is None:
            logdir = cf.get('Logging', 'logdir', fallback='') or None
        self.logger = logging.getLogger(__name__)
        """:obj:`~logging.Logger`: Main logger for this class"""
        install_console(loglevel(console_loglevel), logformat)
        self.__pkglogger = logging.getLogger('hybridSplitter')
        self.__fh = None
        if logdir is not None:
            self.__fh = file_handler(logdir, loglevel(file_loglevel),
                                     logformat)
            self.__pkglogger.addHandler(self.__fh)
            self.__pkglogger.setLevel(logging.DEBUG)
        if not cf.sections():
            self.logger.warning(f'No settings found in "{config}", using '
                                f'defaults')

        # Initialize options
        if td_strategy is None:
            td_strategy = cf.get('TreeDecomposition', 'strategy',
                                 fallback='min-fill')
        if exact_td_cap is None:
            exact_td_cap = cf.getint('TreeDecomposition', 'auto_exact',
                                     fallback=6)
        if ground_cap is None:
            ground_cap = cf.getint('Grounding', 'ground_cap',
                                   fallback=10 ** 7)
        self.options = SplitOptions(
            td_strategy=TdStrategy(td_strategy),
            exact_cap=cf.getint('TreeDecomposition', 'exact_cap',
                                fallback=12),
            auto_exact=exact_td_cap,
            ground_cap=ground_cap,
            answer_set_cap=cf.getint('Grounding', 'answer_set_cap',
                                     fallback=20),
            oracle_cap=cf.getint('Grounding', 'oracle_cap', fallback=60))
        """:class:`~hybridSplitter.heuristics.SplitOptions` : Settings
        passed to the library calls"""
        self.stdout = sys.stdout if stdout is None else stdout
        self.logger.debug(f'Options: {self.options}')

    def __enter__(self):
        return self

    def __exit__(self, exception_type, exception_value, traceback):
        if isinstance(exception_value, KeyboardInterrupt):
            self.logger.warning('Received Ctrl+C event (KeyboardInterrupt).')
        elif exception_value is not None and \
                not isinstance(exception_value, (SplitterException, OSError)):
            self.logger.error(exception_value,
                              exc_info=(exception_type, exception_value,
                                        traceback))
        if self.__fh is not None:
            self.__pkglogger.removeHandler(self.__fh)
            self.__fh.close()
        logging.shutdown()
        if isinstance(exception_value, KeyboardInterrupt):
            return True

    def _read(self, paths):
        self.logger.notice(f'Reading {", ".join(paths)} ...')
        program = parse_files(paths)
        self.logger.success(f'... Done! {len(program.rules)} statements')
        return program

    def split(self, paths, prefix=None):
        """Split a program and write the annotated program and the report.

        Parameters
        ----------
        paths : :obj:`list` of :obj:`str`
            Input files, encoding first.
        prefix : :obj:`str`, optional
            Output files are ``<prefix>.annotated.lp`` and
            ``<prefix>.report.json``. Defaults to the first input path.

        Returns
        -------
        :class:`~hybridSplitter.heuristics.Partition`
        """
        program = self._read(paths)
        result = partition(program, self.options)
        if prefix is None:
            prefix = paths[0]

        annotations = {}
        for d in result.report:
            notes = [f'!marker: {d.marker}']
            if d.origin is not None:
                notes.append(f'!from: {d.origin}')
            annotations[d.rule_id] = notes
        annotated = f'{prefix}.annotated.lp'
        with open(annotated, 'w', encoding='utf-8') as fh:
            fh.write(pretty_print(result.program, annotations))
        self.logger.info(f'Wrote {annotated}')

        report = f'{prefix}.report.json'
        with open(report, 'w', encoding='utf-8') as fh:
            json.dump(self.report(paths, result), fh, indent=2,
                      sort_keys=True)
            fh.write('\n')
        self.logger.info(f'Wrote {report}')
        return result

    def report(self, paths, result):
        """|JSON| document of a partition.

        Returns
        -------
        :obj:`dict`
        """
        digest, files = _digest(paths)
        markers, branches = {}, {}
        for d in result.report:
            markers[str(d.marker)] = markers.get(str(d.marker), 0) + 1
            branches[str(d.branch)] = branches.get(str(d.branch), 0) + 1
        total_h = sum(d.estimates.bdg for d in result.report
                      if d.marker is Marker.BDG)
        total_g = sum(d.estimates.sota for d in result.report
                      if d.marker is Marker.SOTA)
        rewritten = sorted(i for i, m in result.markers.items()
                           if m is Marker.REWRITTEN)
        return {'schema': REPORT_SCHEMA,
                'tool': 'HybridSplitter',
                'version': __version__,
                'input_digest': digest,
                'inputs': files,
                'options': {'td_strategy': str(self.options.td_strategy),
                            'exact_td_cap': self.options.auto_exact},
                'records': [d.to_dict() for d in result.report],
                'summary': {'rules': len(result.report),
                            'facts': len(result.facts),
                            'markers': markers,
                            'branches': branches,
                            'rewritten': rewritten,
                            'estimate_pi_h': total_h,
                            'estimate_pi_g': total_g}}

    def estimate(self, paths, as_csv=False):
        """Print estimates and the decision of every input rule.

        Rewritten rules show the numbers of the rule before rewriting.
        """
        program = self._read(paths)
        result = partition(program, self.options)
        top = {}
        for d in result.report:
            first = d.trail[0] if d.trail else d
            top.setdefault(first.rule_id, first)
        rows = []
        for rule_id in sorted(top):
            d = top[rule_id]
            bdg = '-' if d.estimates.bdg is None else \
                f'{d.estimates.bdg:.2f}'
            rows.append((rule_id, d.measures.num_vars, d.measures.a,
                         d.measures.phi, f'{d.estimates.sota:.2f}', bdg,
                         str(result.markers[rule_id]).upper()))
        if as_csv:
            writer = csv.writer(self.stdout, lineterminator='\n')
            writer.writerow(ESTIMATE_HEADER)
            writer.writerows(rows)
        else:
            widths = (6, 9, 3, 4, 15, 15, 10)
            for row in [ESTIMATE_HEADER] + rows:
                self.stdout.write(' '.join(str(v).rjust(w) for v, w in
                                           zip(row, widths)).rstrip() + '\n')
        return rows

    def ground(self, paths, mode=GroundMode.BOTTOM_UP, rule_id=None):
        """Print a ground program, its rule count goes to standard error.

        Parameters
        ----------
        paths : :obj:`list` of :obj:`str`
        mode : :class:`~hybridSplitter.constants.GroundMode`, optional
        rule_id : :obj:`int`, optional
            Print and count only instances of this rule.

        Returns
        -------
        :obj:`int`
            Number of ground rules.
        """
        program = self._read(paths)
        mode = GroundMode(mode)
        self.logger.notice(f'Grounding {mode} ...')
        if mode is GroundMode.NAIVE:
            ground = naive_ground(program, self.options.ground_cap)
        else:
            ground, _ = bottom_up_ground(program, self.options.ground_cap)
        count = count_ground_rules(ground, rule_id)
        self.logger.success(f'... Done! {count} ground rules')
        if rule_id is None:
            self.stdout.write(str(ground))
        else:
            self.stdout.write(''.join(f'{r}\n' for r in ground.rules
                                      if r.id == rule_id))
        sys.stderr.write(f'{count}\n')
        return count

    def generate(self, n, density, seed=0, directed=True,
                 topology=Topology.COMPLETE, edge_predicate='e',
                 node_predicate=None):
        """Print a random graph instance."""
        instance = generate_graph(n, density, seed, directed, topology,
                                  edge_predicate, node_predicate)
        self.stdout.write(instance.text())
        return instance

    def profile(self, paths, rule_id, sizes, densities, seed=0,
                directed=True, topology=Topology.COMPLETE,
                edge_predicate='e', node_predicate=None):
        """Print a density profile of one rule as |CSV|."""
        program = self._read(paths)
        self.logger.notice(f'Profiling rule {rule_id} ...')
        rows = density_profile(program, rule_id, sizes, densities, seed,
                               self.options.oracle_cap,
                               self.options.ground_cap, topology, directed,
                               edge_predicate, node_predicate)
        write_profile_csv(rows, self.stdout)
        self.logger.success(f'... Done! {len(rows)} rows')
        return rows


def _add_graph_arguments(parser):
    parser.add_argument('--seed', type=int, default=0,
                        help='Seed of the pseudorandom generator')
    parser.add_argument('--topology', choices=[str(t) for t in Topology],
                        default='complete',
                        help='Candidate edges of the generated graphs')
    parser.add_argument('--undirected', action='store_false',
                        dest='directed',
                        help='Store every edge once as an unordered pair')
    parser.add_argument('--edge-predicate', metavar='NAME', default='e',
                        help='Predicate of the edge facts')
    parser.add_argument('--node-predicate', metavar='NAME', default=None,
                        help='Also emit one unary fact per vertex')


def main(argv=None):
    """Wrapper function for using the splitter as a command line tool

    Parameters
    ----------
    argv : :obj:`list` of :obj:`str`, optional
        Arguments, defaults to :data:`sys.argv`.

    Returns
    -------
    :obj:`int`
        Exit code: 0 on success, 2 for rejected programs, 3 for unsupported
        constructs and 4 when a size limit is exceeded.
    """

    # Parse arguments
    parser = ArgumentParser(description='Hybrid grounding splitter for '
                            'non-ground answer set programs',
                            formatter_class=ArgumentDefaultsHelpFormatter)

    # Splitting configuration group
    sGroup = parser.add_argument_group('Splitting settings')
    sGroup.add_argument('--td-strategy',
                        choices=[str(t) for t in TdStrategy], default=None,
                        help='Elimination ordering of tree decompositions '
                        '(configuration file default: min-fill)')
    sGroup.add_argument('--exact-td-cap', metavar='N', type=int, default=None,
                        help='Decompose variable graphs up to N vertices '
                        'exactly (configuration file default: 6)')
    sGroup.add_argument('--ground-cap', metavar='N', type=int, default=None,
                        help='Limit of instantiation steps of the grounders '
                        '(configuration file default: 10000000)')
    sGroup.add_argument('--config', metavar='CONFIG', default=DEFAULT_CONFIG,
                        help='File path of the configuration file')

    # Output group
    oGroup = parser.add_argument_group('Output settings')
    oGroup.add_argument('--csv', action='store_true',
                        help='Print the estimate table as CSV')
    oGroup.add_argument('-o', '--output', metavar='PATH', default=None,
                        help='Output file, for split the prefix of the '
                        'written files')

    # Logging configuration
    lGroup = parser.add_argument_group('Logging settings')
    lGroup.add_argument('-c', '--console_loglevel', choices=LOGLEVELS,
                        default=None,
                        help='Level of console logging')
    lGroup.add_argument('-f', '--file_loglevel', choices=LOGLEVELS,
                        default=None,
                        help='Level of file logging')
    lGroup.add_argument('-d', '--logdir', metavar='LOGDIR', default=None,
                        help='Directory where log files should be stored')

    # Program version
    parser.add_argument('-v', '--version', action='version',
                        version=__version__)

    sub = parser.add_subparsers(dest='command', metavar='COMMAND')
    sub.required = True
    p = sub.add_parser('split', help='Write annotated program and report',
                       formatter_class=ArgumentDefaultsHelpFormatter)
    p.add_argument('inputs', nargs='+', metavar='FILE')
    p = sub.add_parser('estimate', help='Print per-rule estimates',
                       formatter_class=ArgumentDefaultsHelpFormatter)
    p.add_argument('inputs', nargs='+', metavar='FILE')
    p = sub.add_parser('ground', help='Print a ground program',
                       formatter_class=ArgumentDefaultsHelpFormatter)
    p.add_argument('inputs', nargs='+', metavar='FILE')
    p.add_argument('--mode', choices=[str(m) for m in GroundMode],
                   default='bottom-up', help='Grounding procedure')
    p.add_argument('--rule', metavar='ID', type=int, default=None,
                   help='Only instances of this rule')
    p = sub.add_parser('gen', help='Print a random graph instance',
                       formatter_class=ArgumentDefaultsHelpFormatter)
    p.add_argument('kind', choices=['graph'])
    p.add_argument('n', type=int, help='Number of vertices')
    p.add_argument('density', type=float, help='Edge density in percent')
    _add_graph_arguments(p)
    p = sub.add_parser('profile', help='Print a density profile as CSV',
                       formatter_class=ArgumentDefaultsHelpFormatter)
    p.add_argument('inputs', nargs='+', metavar='FILE')
    p.add_argument('--rule', metavar='ID', type=int, required=True,
                   help='Rule to profile')
    p.add_argument('--sizes', metavar='N', type=int, nargs='+',
                   default=[10, 20, 30, 40, 50, 60],
                   help='Numbers of vertices')
    p.add_argument('--densities', metavar='PERCENT', type=float, nargs='+',
                   default=[20, 60, 100], help='Edge densities')
    _add_graph_arguments(p)
    args = parser.parse_args(argv)

    if args.command == 'gen':
        if args.n < 1:
            parser.error('n must be at least 1')
        if not 0 <= args.density <= 100:
            parser.error('density must be between 0 and 100')

    out = None
    try:
        if args.output is not None and args.command != 'split':
            out = open(args.output, 'w', encoding='utf-8')
        with HybridSplitter(config=args.config,
                            console_loglevel=args.console_loglevel,
                            file_loglevel=args.file_loglevel,
                            logdir=args.logdir,
                            td_strategy=args.td_strategy,
                            exact_td_cap=args.exact_td_cap,
                            ground_cap=args.ground_cap,
                            stdout=out) as hs:
            if args.command == 'split':
                hs.split(args.inputs, args.output)
            elif args.command == 'estimate':
                hs.estimate(args.inputs, args.csv)
            elif args.command == 'ground':
                hs.ground(args.inputs, args.mode, args.rule)
            elif args.command == 'gen':
                hs.generate(args.n, args.density, args.seed, args.directed,
                            args.topology, args.edge_predicate,
                            args.node_predicate)
            else:
                hs.profile(args.inputs, args.rule, args.sizes,
                           args.densities, args.seed, args.directed,
                           args.topology, args.edge_predicate,
                           args.node_predicate)
    except SplitterException as e:
        logging.getLogger(__name__).error(str(e))
        return int(e.exit_code)
    except OSError as e:
        logging.getLogger(__name__).error(str(e))
        return int(EXITCODE.PARSE)
    finally:
        if out is not None:
            out.close()
    return int(EXITCODE.OK)


if __name__ == '__main__':
    sys.exit(main())
