# -*- coding: utf-8 -*-
"""
Custom exceptions of the splitter

Every exception that reaches the command line carries an ``exit_code``
attribute which :func:`~hybridSplitter.hybridSplitter.main` returns to the
shell.
"""
from .constants import EXITCODE


class SplitterException(Exception):
    """Base class for all exceptions in :mod:`hybridSplitter`"""
    exit_code = EXITCODE.PARSE


class ProgramError(SplitterException):
    """Base class for rejected input programs"""
    exit_code = EXITCODE.PARSE


class AspSyntaxError(ProgramError):
    """Raised when the program text does not follow the grammar

    Parameters
    ----------
    message : :obj:`str`
        Description of the problem.
    line : :obj:`int`
        Line of the offending token, starting at 1.
    column : :obj:`int`
        Column of the offending token, starting at 1.
    source : :obj:`str`, optional
        Name of the input file.
    """

    def __init__(self, message, line, column, source=None):
        self.line = line
        """:obj:`int` : Line of the error"""
        self.column = column
        """:obj:`int` : Column of the error"""
        self.source = source
        where = f'{source}:' if source else ''
        super().__init__(f'{where}{line}:{column}: {message}')


class SafetyError(ProgramError):
    """Raised for a variable that does not occur in the positive body"""

    def __init__(self, variable, rule):
        self.variable = variable
        """:obj:`str` : Name of the unsafe variable"""
        super().__init__(f'Unsafe variable {variable} in rule "{rule}"')


class ArityClashError(ProgramError):
    """Raised when one predicate name is used with different arities"""

    def __init__(self, predicate, arities):
        self.predicate = predicate
        self.arities = tuple(sorted(arities))
        super().__init__(f'Predicate "{predicate}" is used with arities '
                         f'{", ".join(map(str, self.arities))}')


class UnsupportedConstruct(SplitterException):
    """Raised for aggregates and other constructs outside the language"""
    exit_code = EXITCODE.UNSUPPORTED


class CapExceeded(SplitterException):
    """Raised when a computation would exceed its configured size limit"""
    exit_code = EXITCODE.CAP


class ExactCapExceeded(CapExceeded):
    """Raised when an exact tree decomposition is requested for a graph with
    too many vertices"""
    pass


class NotApplicable(SplitterException):
    """Raised when a rule cannot be rewritten along a tree decomposition"""
    pass


class NotEstimable(SplitterException):
    """Raised for rules outside the BDG size estimation"""
    pass
