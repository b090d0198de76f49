#
# stabsim -- Property-based tests for the engine, rule sets and oracles
#

"""
Property-based tests: small random graphs and configurations drawn by
hypothesis, checked against the set predicates and the exhaustive
oracle.
"""

import random
from itertools import combinations

from hypothesis import given, settings, strategies as st

import stabsim
from stabsim.algorithms import get_rules
from stabsim.checker import (TraceChecker, enumerate_all_maximal_d2is,
                             is_d2_independent, is_maximal_d2is,
                             is_maximal_independent)
from stabsim.daemon import STRATEGIES, parse_daemon
from stabsim.engine import (IN, OUT, Configuration, EnabledSet, enabled_set,
                            exp_of, run_to_fixpoint, step_central,
                            step_subset)
from stabsim.graph import Graph
from stabsim.test.util import central_fixpoints

SETTINGS = settings(max_examples=50, deadline=None)

@st.composite
def graphs(draw, max_n=10):
    n = draw(st.integers(min_value=1, max_value=max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    keep = draw(st.lists(st.booleans(), min_size=len(pairs),
                         max_size=len(pairs)))
    return Graph(n, [e for (e, k) in zip(pairs, keep) if k])

@st.composite
def configured_graphs(draw, max_n=10):
    g = draw(graphs(max_n))
    flags = draw(st.lists(st.booleans(), min_size=g.n, max_size=g.n))
    return g, Configuration([IN if f else OUT for f in flags])

CENTRAL_DAEMONS = ['central-random'] + ['central-adversarial:%s' % name
                                        for name in sorted(STRATEGIES)]

######################################################################
# Fixpoints
######################################################################

@SETTINGS
@given(configured_graphs())
def test_md2is_fixpoints_are_maximal_d2is(gc):
    g, c = gc
    disabled = not enabled_set(g, c, get_rules('md2is'))
    assert disabled == is_maximal_d2is(g, c.members()).holds

@SETTINGS
@given(configured_graphs(), st.sampled_from(['mis', 'mis-id']))
def test_mis_fixpoints_are_maximal_independent(gc, algo):
    g, c = gc
    disabled = not enabled_set(g, c, get_rules(algo))
    assert disabled == is_maximal_independent(g, c.members()).holds

@SETTINGS
@given(configured_graphs(max_n=12))
def test_exp_counts_in_neighbors(gc):
    g, c = gc
    G = g.to_networkx()
    for v in range(g.n):
        assert exp_of(g, c, v) == sum(1 for u in G[v] if c[u] is IN)

######################################################################
# Incremental enabled sets and atomic rounds
######################################################################

@SETTINGS
@given(configured_graphs(), st.sampled_from(['md2is', 'mis', 'mis-id']),
       st.integers(min_value=0, max_value=2**32))
def test_incremental_enabled_set_matches_full(gc, algo, seed):
    g, c = gc
    rules = get_rules(algo)
    daemon = parse_daemon('central-random', seed)
    enabled = EnabledSet(sorted(enabled_set(g, c, rules)))
    for step in range(2 * g.n + 1):
        result = step_central(g, c, rules, daemon, step, enabled)
        if result is None:
            break
        record, c = result
        assert set(enabled) == enabled_set(g, c, rules)

@SETTINGS
@given(configured_graphs(max_n=12), st.sampled_from(['md2is', 'mis', 'mis-id']),
       st.integers(min_value=0, max_value=2**32))
def test_central_moves_change_only_nearby_nodes(gc, algo, seed):
    g, c = gc
    rules = get_rules(algo)
    daemon = parse_daemon('central-random', seed)
    for step in range(2 * g.n + 1):
        before = enabled_set(g, c, rules)
        result = step_central(g, c, rules, daemon, step)
        if result is None:
            break
        record, c = result
        changed = before.symmetric_difference(enabled_set(g, c, rules))
        nearby = g.dist2_neighborhood(record.node) | set([record.node])
        assert changed <= nearby, (record.node, sorted(changed - nearby))

@SETTINGS
@given(configured_graphs(), st.sampled_from(['md2is', 'mis', 'mis-id']),
       st.sampled_from(['synchronous', 'distributed:0.5', 'distributed:0.2']),
       st.integers(min_value=0, max_value=2**32))
def test_subset_rounds_are_atomic(gc, algo, token, seed):
    g, c = gc
    rules = get_rules(algo)
    result = step_subset(g, c, rules, parse_daemon(token, seed))
    if result is None:
        assert not enabled_set(g, c, rules)
        return
    records, after = result
    order = [record.node for record in records]
    for shuffle_seed in range(3):
        random.Random(shuffle_seed).shuffle(order)
        serial = c
        for v in order:
            # Guards read the round-start snapshot, never the partial
            # result.
            serial = serial.replace({v: rules.first_enabled(g, c, v).new_state})
        assert serial == after

@SETTINGS
@given(configured_graphs(max_n=12), st.sampled_from(['md2is', 'mis-id']),
       st.sampled_from(['synchronous', 'distributed:0.5']),
       st.integers(min_value=0, max_value=2**32))
def test_subset_runs_check_incrementally(gc, algo, token, seed):
    g, c = gc
    stabsim.DEBUG = True
    try:
        trace = run_to_fixpoint(g, get_rules(algo), parse_daemon(token, seed),
                                c, move_cap=4 * g.n)
    finally:
        stabsim.DEBUG = False
    assert len(trace.moves) <= 4 * g.n

######################################################################
# Central daemon invariants
######################################################################

@SETTINGS
@given(configured_graphs(max_n=14), st.sampled_from(CENTRAL_DAEMONS),
       st.sampled_from(['md2is', 'mis', 'mis-id']),
       st.integers(min_value=0, max_value=2**32))
def test_central_traces_hold_their_invariants(gc, token, algo, seed):
    g, c = gc
    rules = get_rules(algo)
    trace = run_to_fixpoint(g, rules, parse_daemon(token, seed), c)
    assert trace.converged
    assert len(trace.moves) <= 2 * g.n
    for report in TraceChecker(g, rules, trace).check():
        assert report.holds, str(report)

@SETTINGS
@given(configured_graphs(max_n=7))
def test_every_central_schedule_reaches_the_oracle(gc):
    g, c = gc
    finals, longest = central_fixpoints(g, get_rules('md2is'), c)
    oracle = set(enumerate_all_maximal_d2is(g))
    assert set(finals) <= oracle
    assert longest <= 2 * g.n

######################################################################
# Oracles
######################################################################

@SETTINGS
@given(graphs(max_n=8))
def test_predicate_agrees_with_oracle(g):
    oracle = set(enumerate_all_maximal_d2is(g))
    for k in range(g.n + 1):
        for S in combinations(range(g.n), k):
            assert is_maximal_d2is(g, S).holds == (S in oracle)

@SETTINGS
@given(graphs(max_n=10))
def test_maximal_sets_can_not_grow(g):
    for S in enumerate_all_maximal_d2is(g):
        for v in range(g.n):
            if v not in S:
                assert not is_d2_independent(g, S + (v,)).holds
