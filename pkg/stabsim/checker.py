# stabsim -- Property checkers and oracles
#
# For license information, see LICENSE.txt

"""
Ground-truth property checks.  This module defines three kinds of
checks:

  - Set predicates (L{is_d2_independent}, L{is_maximal_d2is},
    L{is_maximal_independent}), which decide a property of a node set
    directly from graph distances, independently of any rule set.
  - The brute-force oracle L{enumerate_all_maximal_d2is}, which lists
    every maximal distance-2 independent set of a small graph.
  - L{TraceChecker}, which checks the invariants of a recorded
    execution: that it replays, that it respects its move bound, that
    entering nodes stay put, and that its final configuration is
    legitimate.

Every check returns a L{PropertyReport}.  A failing report always
carries a witness, chosen as the first violation in lexicographic
order so messages are deterministic.

@group Set predicates: is_d2_independent, is_maximal_d2is,
    is_maximal_independent, set_property, PROPERTIES
@group Oracles: enumerate_all_maximal_d2is, ORACLE_LIMIT
@group Traces: TraceChecker, replay
@group Clusters: assign_clusters, format_clusters
"""

__docformat__ = 'epytext en'

##################################################
## Imports
##################################################

from collections import namedtuple

from stabsim import log
from stabsim.engine import enabled_set
from stabsim.util import StabsimError

class OracleLimitError(StabsimError):
    """
    Raised when an exhaustive oracle is asked about a graph too large
    to enumerate.
    """

##################################################
## Reports
##################################################

class PropertyReport(namedtuple('PropertyReport', 'name holds witness')):
    """
    The outcome of one check.  C{witness} is C{None} when the property
    holds; otherwise it is the offending node, or a pair of nodes.

        >>> print(PropertyReport('d2is', False, (0, 2)))
        FAIL d2is witness=0,2
    """
    __slots__ = ()

    def __str__(self):
        if self.holds:
            return 'OK %s' % self.name
        witness = self.witness
        if isinstance(witness, tuple):
            witness = ','.join(['%s' % (w,) for w in witness])
        return 'FAIL %s witness=%s' % (self.name, witness)

def _members(g, S):
    return set(g.check_node(v) for v in S)

##################################################
## Set Predicates
##################################################

def is_d2_independent(g, S):
    """
    Check that every two distinct members of C{S} are more than two
    hops apart.  The witness is the first offending pair C{(a, b)},
    C{a < b}.

    @raise GraphError: If C{S} contains a node outside the graph.
    """
    members = _members(g, S)
    for a in sorted(members):
        close = [b for b in g.ball(a, 2) if b > a and b in members]
        if close:
            return PropertyReport('d2is-independent', False, (a, min(close)))
    return PropertyReport('d2is-independent', True, None)

def is_maximal_d2is(g, S):
    """
    Check that C{S} is a maximal distance-2 independent set: it is
    distance-2 independent, and every node outside C{S} has a member
    within two hops.  If C{S} is not independent the witness is the
    first offending pair; otherwise it is the smallest node that could
    still be added.
    """
    report = is_d2_independent(g, S)
    if not report.holds:
        return PropertyReport('d2is', False, report.witness)
    members = _members(g, S)
    covered = set()
    for s in members:
        covered.update(g.ball(s, 2))
    for v in range(g.n):
        if v not in covered:
            return PropertyReport('d2is', False, v)
    return PropertyReport('d2is', True, None)

def is_maximal_independent(g, S):
    """
    Check that C{S} is a maximal independent set: no edge joins two
    members, and every other node has a neighbor in C{S}.  The witness
    is the first edge inside C{S}, or else the first undominated node.
    """
    members = _members(g, S)
    for (u, v) in g.edges():
        if u in members and v in members:
            return PropertyReport('mis', False, (u, v))
    for v in range(g.n):
        if v in members: continue
        for u in g.adjacency[v]:
            if u in members: break
        else:
            return PropertyReport('mis', False, v)
    return PropertyReport('mis', True, None)

PROPERTIES = {
    'd2is': is_maximal_d2is,
    'mis': is_maximal_independent,
    }
"""The set properties the C{verify} command can check, by name."""

def set_property(rules):
    """
    @return: The set predicate that the fixpoints of C{rules} satisfy.
    """
    if rules.exclusion_radius == 2:
        return is_maximal_d2is
    return is_maximal_independent

##################################################
## Oracles
##################################################

ORACLE_LIMIT = 20
"""The largest graph the exhaustive oracle accepts."""

def enumerate_all_maximal_d2is(g):
    """
    List every maximal distance-2 independent set of C{g} by pruned
    backtracking over the nodes in id order.  A node may only be added
    if it conflicts with no chosen node; a node may only be left out
    if some node that is chosen, or still undecided, can cover it.

        >>> from stabsim.graph import path_graph
        >>> enumerate_all_maximal_d2is(path_graph(3))
        [(0,), (1,), (2,)]

    @return: The sets, each as a sorted tuple, in lexicographic order.
    @raise OracleLimitError: If C{g} has more than L{ORACLE_LIMIT}
        nodes.
    """
    n = g.n
    if n > ORACLE_LIMIT:
        raise OracleLimitError('the exhaustive oracle handles at most %d '
                               'nodes, got %d' % (ORACLE_LIMIT, n))
    # conflict[v]: bit mask of the nodes within two hops of v.
    conflict = [0] * n
    for v in range(n):
        for u in g.dist2_neighborhood(v):
            conflict[v] |= 1 << u
    found = []

    def search(i, chosen):
        if i == n:
            for v in range(n):
                if not (chosen >> v) & 1 and not conflict[v] & chosen:
                    return
            found.append(tuple(v for v in range(n) if (chosen >> v) & 1))
            return
        if not conflict[i] & chosen:
            search(i + 1, chosen | (1 << i))
        # Leaving i out needs a cover: a chosen node, or a later one.
        if conflict[i] & chosen or conflict[i] >> (i + 1):
            search(i + 1, chosen)

    search(0, 0)
    return sorted(found)

##################################################
## Trace Checks
##################################################

def replay(g, rules, trace):
    """
    Re-execute C{trace} from its initial configuration and check that
    every recorded move was the move the engine would make: its rule
    was the lowest-indexed rule enabled at its node, evaluated against
    the configuration at the start of its round, and the recorded new
    state matches.  The replayed final configuration must equal the
    recorded one.

    @return: A L{PropertyReport} named C{replay}; its witness is the
        step index of the first bad move, or C{'final'}.
    """
    c = trace.initial
    moves = trace.moves
    i = 0
    while i < len(moves):
        j = i
        while j < len(moves) and moves[j].round == moves[i].round:
            j += 1
        updates = {}
        for record in moves[i:j]:
            rule = rules.first_enabled(g, c, record.node)
            if (rule is None or rule.rule_id != record.rule or
                rule.new_state is not record.new_state or
                record.node in updates):
                return PropertyReport('replay', False, record.step)
            updates[record.node] = rule.new_state
        c = c.replace(updates)
        i = j
    if c != trace.final:
        return PropertyReport('replay', False, 'final')
    return PropertyReport('replay', True, None)

class TraceChecker(object):
    """
    Checks the invariants of an L{ExecutionTrace<engine.ExecutionTrace>}.
    The checks to run are selected by or-ing together the flags
    defined by this class:

        >>> checker.check(TraceChecker.REPLAY | TraceChecker.CLOSURE)

    The move-bound and permanence checks are theorems about central
    daemons, and are skipped (with an informational message) for
    traces recorded under a subset daemon.

    @group Checks: REPLAY, MOVE_BOUND, PERMANENCE, CLOSURE, ALL
    @cvar REPLAY: Every move was enabled when it was made.
    @cvar MOVE_BOUND: At most C{rules.move_bound(n)} moves in total,
        at most two per node, and a node that moves twice first
        leaves and then enters.
    @cvar PERMANENCE: A node that enters never moves again, and no
        node within its exclusion radius enters afterwards.
    @cvar CLOSURE: The trace converged, no node is enabled in the
        final configuration, and the final set satisfies the rule
        set's property.
    """
    REPLAY = 1
    MOVE_BOUND = 2
    PERMANENCE = 4
    CLOSURE = 8
    ALL = 1+2+4+8

    def __init__(self, g, rules, trace):
        self.g = g
        self.rules = rules
        self.trace = trace
        self.central = trace.daemon.startswith('central')

    def check(self, checks=ALL):
        """
        Run the selected checks, logging a warning for each failure.

        @return: The reports of the checks that ran, in flag order.
        @rtype: C{list} of L{PropertyReport}
        """
        reports = []
        if checks & TraceChecker.REPLAY:
            reports.append(replay(self.g, self.rules, self.trace))
        for (flag, method) in ((TraceChecker.MOVE_BOUND, self._check_bound),
                               (TraceChecker.PERMANENCE,
                                self._check_permanence)):
            if not checks & flag: continue
            if self.central:
                reports.append(method())
            else:
                log.info('Skipping %s for %s: central daemons only' %
                         (method.__name__[len('_check_'):],
                          self.trace.daemon))
        if checks & TraceChecker.CLOSURE:
            reports.append(self._check_closure())
        failures = [report for report in reports if not report.holds]
        if failures:
            log.start_block('Trace check of %s under %s' %
                            (self.rules.name, self.trace.daemon))
            try:
                for report in failures:
                    log.warning('%s (%s under %s)' % (report, self.rules.name,
                                                      self.trace.daemon))
            finally:
                log.end_block()
        return reports

    def _check_bound(self):
        moves = self.trace.moves
        bound = self.rules.move_bound
        if bound is not None and len(moves) > bound(self.g.n):
            return PropertyReport('move-bound', False, len(moves))
        history = {}
        leave, enter = 1, 0
        for record in moves:
            history.setdefault(record.node, []).append(record.rule.index)
        for v in sorted(history):
            fired = history[v]
            if len(fired) > 2 or (len(fired) == 2 and
                                  fired != [leave, enter]):
                return PropertyReport('move-bound', False, v)
        return PropertyReport('move-bound', True, None)

    def _check_permanence(self):
        g, radius = self.g, self.rules.exclusion_radius
        entered = set()
        blocked = set()
        for record in self.trace.moves:
            v = record.node
            if v in entered:
                return PropertyReport('permanence', False, v)
            if record.rule.index == 0:
                if v in blocked:
                    return PropertyReport('permanence', False, v)
                entered.add(v)
                blocked.update(g.ball(v, radius))
        return PropertyReport('permanence', True, None)

    def _check_closure(self):
        if not self.trace.converged:
            return PropertyReport('closure', False, 'not converged')
        still = enabled_set(self.g, self.trace.final, self.rules)
        if still:
            return PropertyReport('closure', False, min(still))
        report = set_property(self.rules)(self.g, self.trace.members())
        return PropertyReport('closure', report.holds, report.witness)

##################################################
## Clusters
##################################################

def assign_clusters(g, S):
    """
    Read C{S} as a set of cluster heads: every node joins the nearest
    head within two hops, ties going to the smallest head id.  When
    C{S} is a maximal distance-2 independent set every node finds a
    head, and no node is adjacent to two heads.

        >>> from stabsim.graph import path_graph
        >>> assign_clusters(path_graph(5), [0, 3])
        [0, 0, 3, 3, 3]

    @return: A list mapping each node to its head, or to C{None} if no
        head is within two hops.
    """
    heads = sorted(_members(g, S))
    head = [None] * g.n
    for h in heads:
        head[h] = h
    frontier = heads
    for depth in (1, 2):
        reached = {}
        for u in frontier:
            for w in g.adjacency[u]:
                if head[w] is None:
                    best = reached.get(w)
                    if best is None or head[u] < best:
                        reached[w] = head[u]
        for (w, h) in reached.items():
            head[w] = h
        frontier = sorted(reached)
    return head

def format_clusters(head):
    """
    @return: Cluster-file text: one C{"<node> <head>"} line per node,
        with C{-} for a node without a head.
    """
    return ''.join(['%d %s\n' % (v, '-' if h is None else h)
                    for (v, h) in enumerate(head)])
