#
# stabsim -- Utility functions used by regression tests (*.doctest)
#

"""
Utility functions used by the regression tests (C{*.doctest} and
C{test_*.py}).
"""

__docformat__ = 'epytext en'

import os, os.path, random, shutil, tempfile

from stabsim import log
from stabsim.algorithms import get_rules
from stabsim.daemon import parse_daemon
from stabsim.engine import (Configuration, enabled_set, initial_configuration,
                            run_to_fixpoint)
from stabsim.graph import (GraphGenSpec, complete_graph, cycle_graph,
                           empty_graph, gen_random_graph, path_graph,
                           star_graph)
from stabsim.util import derive_seed

######################################################################
#{ Test Functions
######################################################################

def print_warnings(threshold=log.WARNING):
    """
    Register a logger that will print messages at or above
    C{threshold} (warnings and errors by default).
    """
    del log._loggers[:]
    log.register_logger(log.SimpleLogger(threshold))

def config(n, members):
    """
    @return: The configuration on C{n} nodes with C{members} In.
    """
    return Configuration.from_members(n, members)

def run(g, algo='md2is', daemon='central-random', init='all-out', seed=0,
        move_cap=None):
    """
    Run an algorithm the way the C{run} command does.  C{init} may be
    a preset token or a L{Configuration}.

    @rtype: L{ExecutionTrace<stabsim.engine.ExecutionTrace>}
    """
    if not isinstance(init, Configuration):
        init = initial_configuration(g, init, derive_seed(seed, 'init'))
    return run_to_fixpoint(g, get_rules(algo),
                           parse_daemon(daemon, derive_seed(seed, 'daemon')),
                           init, move_cap)

def show_trace(trace):
    """
    Print the moves of a trace, one per line, followed by its outcome.
    """
    for record in trace.moves:
        print('%d: node %d %s -> %s' % (record.step, record.node,
                                        record.rule.name, record.new_state))
    print('converged=%s moves=%d rounds=%d S=%s' %
          (trace.converged, len(trace.moves), trace.rounds,
           trace.members()))

######################################################################
#{ Exhaustive Schedules
######################################################################

def central_fixpoints(g, rules, init):
    """
    Explore every schedule a central daemon can produce from C{init}.

    @return: A pair C{(fixpoints, longest)}: the sorted member tuples
        of every reachable legitimate configuration, and the largest
        number of moves any schedule takes to reach one.
    """
    memo = {}
    def explore(c):
        if c in memo:
            return memo[c]
        enabled = sorted(enabled_set(g, c, rules))
        if not enabled:
            result = (set([tuple(c.members())]), 0)
        else:
            finals, longest = set(), 0
            for v in enabled:
                rule = rules.first_enabled(g, c, v)
                sub_finals, sub_longest = explore(
                    c.replace({v: rule.new_state}))
                finals.update(sub_finals)
                longest = max(longest, sub_longest + 1)
            result = (finals, longest)
        memo[c] = result
        return result
    finals, longest = explore(init)
    return sorted(finals), longest

######################################################################
#{ Graph Corpora
######################################################################

def structured_graphs(max_n=12):
    """
    @return: C{(name, graph)} pairs for the paths, cycles, stars,
        complete and empty graphs with up to C{max_n} nodes.
    """
    result = []
    for n in range(1, max_n + 1):
        result.append(('P%d' % n, path_graph(n)))
        result.append(('K%d' % n, complete_graph(n)))
        result.append(('E%d' % n, empty_graph(n)))
        if n >= 3:
            result.append(('C%d' % n, cycle_graph(n)))
        if n >= 2:
            result.append(('S%d' % (n - 1), star_graph(n - 1)))
    return result

def random_graphs(count, sizes, densities, seed=0):
    """
    @return: C{count} C{(name, graph)} pairs drawn round-robin over
        C{sizes} and C{densities}, each with its own derived seed.
    """
    result = []
    for i in range(count):
        n = sizes[i % len(sizes)]
        p = densities[(i // len(sizes)) % len(densities)]
        spec = GraphGenSpec(n, p, derive_seed(seed, 'corpus', i))
        result.append(('G(%d,%r)#%d' % (n, p, i), gen_random_graph(spec)))
    return result

def random_configuration(g, seed):
    rng = random.Random(seed)
    return Configuration.from_members(
        g.n, [v for v in range(g.n) if rng.random() < 0.5])

######################################################################
#{ Temporary Files
######################################################################

def write_tmp_file(text, file_name='stabsim_test.txt'):
    """
    Write C{text} to a new file in a fresh temporary directory.

    @return: The path of the file.
    """
    tmp_dir = tempfile.mkdtemp()
    file_path = os.path.join(tmp_dir, file_name)
    with open(file_path, 'w', encoding='ascii', newline='') as out:
        out.write(text)
    return file_path

def tmp_path(file_name):
    """
    @return: A path named C{file_name} in a fresh temporary directory;
        the file itself is not created.
    """
    return os.path.join(tempfile.mkdtemp(), file_name)

def read_file(path):
    with open(path, 'r', encoding='ascii', newline='') as f:
        return f.read()

def cleanup_tmp_dir(file_path):
    """
    Remove the temporary directory holding C{file_path}.
    """
    tmp_dir = os.path.dirname(file_path)
    assert tmp_dir.startswith(tempfile.gettempdir()), \
          "Expected %r to be within a temporary directory" % file_path
    shutil.rmtree(tmp_dir, ignore_errors=True)
