# stabsim -- Parameter sweeps
#
# For license information, see LICENSE.txt

"""
Parameter sweeps over graph sizes, edge densities and trials.

An L{ExperimentSpec} describes a sweep.  For every cell
C{(n, density, trial)} a trial seed is derived from the base seed and
the cell's coordinates with L{derive_seed<stabsim.util.derive_seed>};
the random graph, the initial configuration and the daemon of the
trial are seeded from it in turn.  Every algorithm of a trial runs on
the same graph from the same initial configuration, and any single
cell can be recomputed without running the cells before it.

L{run_experiment} returns one L{ExperimentRow} per
C{(n, density, trial, algorithm)}; L{summarize} folds them into one
L{CellSummary} per C{(n, density, algorithm)}.
"""

__docformat__ = 'epytext en'

from collections import namedtuple
import concurrent.futures

import numpy

import stabsim
from stabsim import log
from stabsim.algorithms import ALGORITHMS, get_rules
from stabsim.daemon import DaemonError, parse_daemon
from stabsim.engine import (ConfigurationError, ConvergenceError,
                            initial_configuration, parse_init,
                            run_to_fixpoint)
from stabsim.graph import GraphGenSpec, gen_random_graph
from stabsim.util import SEED_MASK, StabsimError, derive_seed

class ExperimentError(StabsimError):
    """Raised for an invalid L{ExperimentSpec}."""

######################################################################
## Specs and Rows
######################################################################

class ExperimentSpec(object):
    """
    A parameter sweep.

    @ivar sizes: Node counts.
    @ivar densities: Edge probabilities, each in C{[0, 1]}.
    @ivar trials: Trials per C{(n, density)} cell.
    @ivar algorithms: Algorithm tokens (see L{ALGORITHMS}).
    @ivar daemon: The daemon token every run uses.
    @ivar init: The initial configuration preset.
    @ivar base_seed: The seed every trial seed is derived from.
    @ivar move_cap: The move cap of every run, or C{None} for the
        engine's default.
    @ivar jobs: How many worker processes run trials.
    """
    def __init__(self, sizes, densities, trials=5, algorithms=('md2is', 'mis'),
                 daemon='central-random', init='random:0.5', base_seed=0,
                 move_cap=None, jobs=1):
        self.sizes = list(sizes)
        self.densities = [float(p) for p in densities]
        self.trials = trials
        self.algorithms = list(algorithms)
        self.daemon = daemon
        self.init = init
        self.base_seed = base_seed
        self.move_cap = move_cap
        self.jobs = jobs

    def __repr__(self):
        return ('<ExperimentSpec sizes=%s densities=%s trials=%d algos=%s '
                'daemon=%s init=%s seed=%d>' %
                (self.sizes, self.densities, self.trials,
                 ','.join(self.algorithms), self.daemon, self.init,
                 self.base_seed))

    def validate(self):
        """
        @raise ExperimentError: If any parameter is out of range or any
            token is unknown.
        """
        if not self.sizes:
            raise ExperimentError('at least one graph size is required')
        for n in self.sizes:
            if not isinstance(n, int) or n < 1:
                raise ExperimentError('graph sizes must be positive '
                                      'integers, got %r' % (n,))
        if not self.densities:
            raise ExperimentError('at least one density is required')
        for p in self.densities:
            if not 0.0 <= p <= 1.0:
                raise ExperimentError('densities must be in [0, 1], '
                                      'got %r' % p)
        if not isinstance(self.trials, int) or self.trials < 1:
            raise ExperimentError('trials must be at least 1, got %r' %
                                  (self.trials,))
        if not self.algorithms:
            raise ExperimentError('at least one algorithm is required')
        for algo in self.algorithms:
            if algo not in ALGORITHMS:
                raise ExperimentError('unknown algorithm %r; expected one '
                                      'of: %s' %
                                      (algo, ', '.join(sorted(ALGORITHMS))))
        try:
            parse_daemon(self.daemon)
            parse_init(self.init)
        except (DaemonError, ConfigurationError) as e:
            raise ExperimentError('%s' % e)
        if not (isinstance(self.base_seed, int) and
                0 <= self.base_seed <= SEED_MASK):
            raise ExperimentError('the base seed must be an unsigned 64-bit '
                                  'integer, got %r' % (self.base_seed,))
        if self.move_cap is not None and self.move_cap < 1:
            raise ExperimentError('the move cap must be at least 1, got %r' %
                                  self.move_cap)
        if self.jobs < 1:
            raise ExperimentError('jobs must be at least 1, got %r' %
                                  self.jobs)

    def cells(self):
        """
        @return: Every C{(n, density, trial)} of the sweep, in sweep
            order.
        """
        return [(n, p, t) for n in self.sizes for p in self.densities
                for t in range(self.trials)]

ROW_FIELDS = ('n', 'density', 'trial', 'seed', 'algorithm', 'daemon',
              'init', 'cardinality', 'cardinality_pct', 'moves', 'rounds',
              'converged')

class ExperimentRow(namedtuple('ExperimentRow', ROW_FIELDS)):
    """
    The outcome of one algorithm on one trial.  C{cardinality_pct} is
    C{100 * cardinality / n} rounded to two decimals; C{seed} is the
    trial seed.
    """
    __slots__ = ()

    @property
    def key(self):
        """The sort key of a row: C{(n, density, algorithm, trial)}."""
        return (self.n, self.density, self.algorithm, self.trial)

######################################################################
## Running
######################################################################

def trial_seed(spec, n, density, trial):
    return derive_seed(spec.base_seed, n, float(density), trial)

def run_trial(spec, n, density, trial):
    """
    Run every algorithm of C{spec} on one trial.

    @return: One L{ExperimentRow} per algorithm, in C{spec} order.
    @raise ConvergenceError: If a run under a central daemon stops at
        its move cap although its rule set guarantees convergence.
    """
    seed = trial_seed(spec, n, density, trial)
    g = gen_random_graph(GraphGenSpec(n, density,
                                      derive_seed(seed, 'graph')))
    init = initial_configuration(g, spec.init, derive_seed(seed, 'init'))
    rows = []
    for algo in spec.algorithms:
        rules = get_rules(algo)
        daemon = parse_daemon(spec.daemon, derive_seed(seed, 'daemon'))
        trace = run_to_fixpoint(g, rules, daemon, init, spec.move_cap)
        if (not trace.converged and daemon.central and
            rules.move_bound is not None):
            raise ConvergenceError(
                '%s did not converge under %s (n=%d density=%r trial=%d '
                'seed=%d); aborting the experiment' %
                (algo, daemon.token, n, density, trial, seed))
        cardinality = trace.final.cardinality()
        rows.append(ExperimentRow(
            n, float(density), trial, seed, algo, daemon.token, spec.init,
            cardinality, round(100.0 * cardinality / n, 2),
            len(trace.moves), trace.rounds, trace.converged))
    return rows

def _run_cell(args):
    # Worker processes do not inherit the parent's debug flag under
    # the spawn start method.
    spec, n, density, trial, debug = args
    stabsim.DEBUG = debug
    return run_trial(spec, n, density, trial)

def run_experiment(spec):
    """
    Run the sweep described by C{spec}.  With C{spec.jobs > 1} trials
    run in a process pool; the rows are sorted by
    C{(n, density, algorithm, trial)} either way, so the result does
    not depend on the schedule.

    @rtype: C{list} of L{ExperimentRow}
    @raise ExperimentError: If C{spec} is invalid.
    """
    spec.validate()
    cells = spec.cells()
    rows = []
    log.start_progress('Running %d trials' % len(cells))
    try:
        if spec.jobs == 1:
            for i, (n, p, t) in enumerate(cells):
                log.progress(float(i) / len(cells),
                             'n=%d density=%r trial %d' % (n, p, t))
                rows.extend(run_trial(spec, n, p, t))
        else:
            with concurrent.futures.ProcessPoolExecutor(spec.jobs) as pool:
                results = pool.map(_run_cell,
                                   [(spec, n, p, t, stabsim.DEBUG)
                                    for (n, p, t) in cells])
                for i, ((n, p, t), result) in enumerate(zip(cells, results)):
                    log.progress(float(i + 1) / len(cells),
                                 'n=%d density=%r trial %d' % (n, p, t))
                    rows.extend(result)
    finally:
        log.end_progress()
    rows.sort(key=lambda row: row.key)
    return rows

######################################################################
## Summaries
######################################################################

SUMMARY_FIELDS = ('n', 'density', 'algorithm', 'daemon', 'init', 'trials',
                  'cardinality_mean', 'cardinality_min', 'cardinality_max',
                  'cardinality_std', 'cardinality_pct', 'moves_mean',
                  'moves_min', 'moves_max', 'moves_std', 'rounds_mean',
                  'converged')

class CellSummary(namedtuple('CellSummary', SUMMARY_FIELDS)):
    """
    Aggregates over the trials of one C{(n, density, algorithm)} cell.
    Standard deviations are population deviations, so a single trial
    has deviation 0.  C{cardinality_pct} is the mean cardinality as a
    percentage of C{n}, and C{converged} counts the converged trials.
    """
    __slots__ = ()

def summarize(rows):
    """
    Fold C{rows} into one L{CellSummary} per C{(n, density, algorithm)},
    sorted by that key.

    @raise ExperimentError: If C{rows} is empty.
    """
    if not rows:
        raise ExperimentError('nothing to summarize')
    cells = {}
    for row in rows:
        cells.setdefault((row.n, row.density, row.algorithm), []).append(row)
    summaries = []
    for (n, density, algorithm) in sorted(cells):
        group = cells[n, density, algorithm]
        cardinality = numpy.array([r.cardinality for r in group], dtype=float)
        moves = numpy.array([r.moves for r in group], dtype=float)
        rounds = numpy.array([r.rounds for r in group], dtype=float)
        mean = float(cardinality.mean())
        summaries.append(CellSummary(
            n, density, algorithm, group[0].daemon, group[0].init,
            len(group), mean, int(cardinality.min()), int(cardinality.max()),
            float(cardinality.std()), round(100.0 * mean / n, 2),
            float(moves.mean()), int(moves.min()), int(moves.max()),
            float(moves.std()), float(rounds.mean()),
            sum(1 for r in group if r.converged)))
    return summaries
