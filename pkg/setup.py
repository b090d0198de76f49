#! /usr/bin/env python
#
# stabsim: simulation and verification of self-stabilizing graph
# algorithms
#

from setuptools import setup
import re, stabsim

VERSION = str(stabsim.__version__)
(AUTHOR, EMAIL) = re.match(r'^(.*?)\s*<(.*)>$', stabsim.__author__).groups()
URL = stabsim.__url__
LICENSE = stabsim.__license__
KEYWORDS = ('self-stabilization daemon distributed-algorithms '
            'independent-set distance-2 simulation')
LONG_DESCRIPTION = """\
Stabsim simulates self-stabilizing graph algorithms under central,
distributed and synchronous daemons, and checks their outcomes.  It
ships a maximal distance-2 independent set algorithm in the
expression model and two maximal independent set baselines, exact
property checkers and a brute-force oracle for small graphs, and an
experiment runner that sweeps graph sizes and densities and writes
CSV files, text tables and SVG charts."""
CLASSIFIERS = [
    'Development Status :: 4 - Beta',
    'Intended Audience :: Science/Research',
    'License :: OSI Approved :: MIT License',
    'Programming Language :: Python :: 3',
    'Topic :: Scientific/Engineering',
    'Topic :: System :: Distributed Computing',
    ]

setup(name="stabsim",
      description="Self-stabilizing graph algorithm simulator",
      version=VERSION,
      author=AUTHOR,
      author_email=EMAIL,
      license=LICENSE,
      url=URL,
      scripts=['scripts/stabsim.py'],
      entry_points={'console_scripts': ['stabsim = stabsim.cli:main']},
      keywords=KEYWORDS.split(),
      long_description=LONG_DESCRIPTION,
      classifiers=CLASSIFIERS,
      python_requires='>=3.8',
      install_requires=['networkx>=2.6', 'numpy>=1.20', 'matplotlib>=3.4'],
      extras_require={'test': ['pytest>=7.0', 'hypothesis>=6.0']},
      packages=['stabsim', 'stabsim.writer', 'stabsim.test'],
      package_data={'stabsim.test': ['*.doctest']})
