# stabsim
#
# For license information, see LICENSE.txt

"""
Deterministic simulation and verification of self-stabilizing graph
algorithms.  A self-stabilizing algorithm is a set of guarded rules
that every node of a network executes; whichever configuration the
network starts in, moves chosen by a scheduler (the I{daemon}) drive
it to a configuration where no rule is enabled.

Stabsim can be used through its command-line interface (L{cli}) or
programmatically.  A run proceeds as follows:

  1. Build a L{Graph<graph.Graph>}, either by reading an edge-list
     file or by drawing a seeded random graph with
     L{gen_random_graph<graph.gen_random_graph>}.

  2. Pick a L{RuleSet<engine.RuleSet>} from L{algorithms}: the maximal
     distance-2 independent set rules (C{md2is}) or one of the
     maximal independent set baselines (C{mis}, C{mis-id}).

  3. Pick a daemon from L{daemon} and an initial configuration, and
     call L{run_to_fixpoint<engine.run_to_fixpoint>}, which returns an
     L{ExecutionTrace<engine.ExecutionTrace>}.

  4. Check the outcome with L{checker}: property checks on the final
     set, per-trace invariants, and exhaustive small-graph oracles.

Parameter sweeps over graph sizes, densities and trials are run by
L{experiment}; their rows and per-cell summaries are written by the
L{writer} package as CSV files, text tables and SVG charts.

@group User Interface: cli
@group Graphs: graph
@group Execution: engine, daemon, algorithms
@group Verification: checker
@group Experiments: experiment, writer
@group Miscellaneous: log, util, test
"""
__docformat__ = 'epytext en'

__version__ = '1.0.0'
"""The version of stabsim"""

__author__ = 'The stabsim developers <stabsim-dev@users.noreply.github.com>'
"""The primary authors of stabsim"""

__url__ = 'https://github.com/stabsim/stabsim'
"""The URL for stabsim's homepage"""

__license__ = 'MIT License'
"""The license governing the use and distribution of stabsim"""

DEBUG = False
"""True if debugging is turned on.  In debug mode the engine checks
its incrementally maintained enabled set against a full recomputation
after every step."""
