#!/usr/bin/python
# -*- coding: utf-8 -*-
"""
Installation script of the hybrid grounding splitter.
"""

from setuptools import setup, find_packages
from __version__ import __version__

with open("README.md", "r") as fh:
    long_description = fh.read()

setup(name='HybridSplitter',
      version=__version__,
      description='Grounding analyzer and BDG/SOTA splitter for non-ground '
                  'answer set programs',
      long_description=long_description,
      long_description_content_type="text/markdown",
      classifiers=['Development Status :: 3 - Alpha',
                   'License :: Freeware',
                   'Intended Audience :: Science/Research',
                   'Programming Language :: Python :: 3.8',
                   'Topic :: Scientific/Engineering :: Artificial '
                   'Intelligence'],
      packages=find_packages(exclude=['doc']),
      python_requires='>=3.8',
      install_requires=['coloredlogs<14', 'verboselogs', 'aenum', 'networkx',
                        'lark'],
      extras_require={'test': ['pytest', 'hypothesis']},
      include_package_data=True,
      package_data={'hybridSplitter': ['HybridSplitterConfig.ini',
                                       'scenarios/*.lp']},
      entry_points={'console_scripts':
                    ['HybridSplitter=hybridSplitter.hybridSplitter:main']}
      )
