# -*- coding: utf-8 -*-
"""Grounding analyzer and automated splitter for non-ground |ASP| programs.

Importing the package installs :mod:`verboselogs` so that every module
logger offers the additional ``spam``, ``verbose``, ``notice`` and
``success`` levels.
"""
import verboselogs

verboselogs.install()

from .__version__ import __version__  # noqa: E402

__all__ = ['__version__']
