# -*- coding: utf-8 -*-
"""
Auxiliary functions which extend logging functionality

Example
-------
>>> import logging
>>> from hybridSplitter.extend_logging import extend_logging, install_console
>>> extend_logging()
>>> install_console('NOTICE')
>>> logger = logging.getLogger(__name__)
>>> logger.notice('This is a notice.')
>>> logger.success('This was a success.')
"""
import os
import sys
import time
import logging
from logging.handlers import RotatingFileHandler

import coloredlogs as cl

from .constants import LOGFORMAT


def extend_logging():
    """Set the coloredlogs date format and make bold fonts consistent.

    The console only gets bold fonts where coloredlogs can render them.
    """
    cl.DEFAULT_DATE_FORMAT = '%Y-%m-%d %H:%M:%S'
    bold = not cl.NEED_COLORAMA
    cl.DEFAULT_FIELD_STYLES['levelname']['bold'] = bold
    cl.DEFAULT_LEVEL_STYLES['success']['bold'] = bold
    cl.DEFAULT_LEVEL_STYLES['critical']['bold'] = bold


def install_console(level, logformat=LOGFORMAT, logger=None):
    """Install a colored console handler writing to standard error.

    Standard output is reserved for command results, so the handler is bound
    to :data:`sys.stderr` explicitly.

    Parameters
    ----------
    level : :obj:`int` or :obj:`str`
        Console log level.
    logformat : :obj:`str`, optional
        Format of log messages.
    logger : :obj:`~logging.Logger`, optional
        Logger to attach to. Defaults to the root logger.
    """
    cl.install(level=level, logger=logger, fmt=logformat,
               stream=sys.stderr, isatty=sys.stderr.isatty())


def file_handler(logdir, level, logformat=LOGFORMAT, name='HybridSplitter'):
    """Create a rotating log file handler with a timestamped file name.

    Parameters
    ----------
    logdir : :obj:`str`
        Directory of the log files. It is created if missing.
    level : :obj:`int` or :obj:`str`
        File log level.
    logformat : :obj:`str`, optional
        Format of log messages.
    name : :obj:`str`, optional
        Suffix of the file name.

    Returns
    -------
    :class:`~logging.handlers.RotatingFileHandler`
    """
    os.makedirs(logdir, exist_ok=True)
    ts = os.path.join(logdir, time.strftime(f'%Y-%m-%d_%H-%M-%S_{name}.'))
    fh = RotatingFileHandler(ts + 'log', backupCount=10,
                             maxBytes=10 * 1024 * 1024)
    fmt = logging.Formatter(logformat)
    fmt.default_msec_format = '%s.%03d'
    fh.setFormatter(fmt)
    fh.setLevel(level)
    return fh

