#!/usr/bin/python
# -*- coding: utf-8 -*-
"""All kinds of constants shared by the splitter modules.

Enumerations use :mod:`aenum` so that members can be looked up
case-insensitively from command line strings and configuration files.
"""
import logging

# Third party modules
from aenum import Enum, IntEnum


TD_PREFIX = '__td_'
""":obj:`str` : Reserved prefix of fresh predicates introduced by the rule
decomposition"""
AUX_PREFIX = '__'
""":obj:`str` : Prefix of all internal predicate names. Input programs may
use it only for predicates written back by an earlier run"""
SEED_PREDICATE = 'seed'
""":obj:`str` : Predicate holding the generator seed inside an instance"""
REPORT_SCHEMA = 1
""":obj:`int` : Version of the |JSON| report layout"""
EXACT_CAP = 12
""":obj:`int` : Maximal number of variables for an exact tree decomposition"""
AUTO_EXACT = 6
""":obj:`int` : Heuristic strategies switch to the exact search up to this
number of variables"""
GROUND_CAP = 10 ** 7
""":obj:`int` : Default limit of rule instantiations for the grounders"""
ANSWER_SET_CAP = 20
""":obj:`int` : Maximal number of enumerated atoms for the answer set
oracle"""
ORACLE_CAP = 60
""":obj:`int` : Largest instance size for which profiles compute actual
ground rule counts"""
LOGFORMAT = '%(asctime)s %(levelname)-8s %(message)s'
""":obj:`str` : Default format of log messages"""
LOGLEVELS = ['NOTSET', 'SPAM', 'DEBUG', 'VERBOSE', 'INFO', 'NOTICE',
             'SUCCESS', 'WARNING', 'ERROR', 'CRITICAL']
""":obj:`list` : Log level names accepted on the command line"""
PROFILE_HEADER = ('n', 'density', 'sota_estimate', 'bdg_estimate',
                  'actual_sota')
""":obj:`tuple` : Column names of a density profile"""


class _Named(Enum):
    """Enumeration whose members are found by value or name, ignoring case"""

    @classmethod
    def _missing_value_(cls, value):
        if isinstance(value, str):
            for member in cls:
                if value.lower() in (member.value.lower(),
                                     member.name.lower()):
                    return member

    def __str__(self):
        return self.value


class HeadKind(_Named):
    """Syntactic class of a rule head"""
    NORMAL = 'normal'
    DISJUNCTIVE = 'disjunctive'
    CONSTRAINT = 'constraint'
    CHOICE = 'choice'
    WEAK = 'weak'
    """Weak constraint, passed through unchanged"""


class Marker(_Named):
    """Grounding procedure assigned to a rule"""
    BDG = 'bdg'
    """Body-decoupled grounding"""
    SOTA = 'sota'
    """Traditional bottom-up grounding"""
    REWRITTEN = 'rewritten'
    """Replaced by its tree decomposition rules"""


class Branch(_Named):
    """Branches of the splitting heuristic in evaluation order"""
    FORCED_SOTA = 'forced_sota'
    STRATIFIED = 'stratified'
    LPOPT_RECURSED = 'lpopt_recursed'
    BDG_CONSTRAINT = 'bdg_constraint'
    BDG_TIGHT = 'bdg_tight'
    BDG_HCF = 'bdg_hcf'
    DEFAULT_SOTA = 'default_sota'


class TdStrategy(_Named):
    """Elimination ordering used for tree decompositions"""
    MIN_FILL = 'min-fill'
    MIN_DEGREE = 'min-degree'
    EXACT = 'exact'


class GroundMode(_Named):
    """Grounders of the oracle"""
    NAIVE = 'naive'
    BOTTOM_UP = 'bottom-up'


class Topology(_Named):
    """Edge candidates of generated graph instances"""
    COMPLETE = 'complete'
    PATH = 'path'


class EXITCODE(IntEnum):
    """Exit codes of the command line tool"""
    OK = 0
    PARSE = 2
    UNSUPPORTED = 3
    CAP = 4


def loglevel(name):
    """Translate a level name including the :mod:`verboselogs` levels.

    Parameters
    ----------
    name : :obj:`str` or :obj:`int`
        Level name like ``'NOTICE'`` or a numeric level.

    Returns
    -------
    :obj:`int`
        Numeric log level.
    """
    if isinstance(name, int):
        return name
    level = logging.getLevelName(str(name).upper())
    if not isinstance(level, int):
        raise ValueError(f'Unknown log level "{name}"')
    return level
