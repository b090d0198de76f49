# stabsim -- Execution engine
#
# For license information, see LICENSE.txt

"""
Generic execution machinery for self-stabilizing rule sets.

An algorithm is a L{RuleSet}: an ordered list of L{Rule}s, each made
of a guard (a predicate over the graph, the current L{Configuration}
and a node) and a statement (the state the node takes when it moves).
A node is I{enabled} when at least one guard holds for it; a I{move}
executes the statement of the node's lowest-indexed enabled rule.

Which enabled nodes move is decided by a daemon (see L{stabsim.daemon}):
central daemons move exactly one node per step, subset daemons move a
nonempty subset per round, with every guard of the round evaluated
against the configuration at the start of the round.
L{run_to_fixpoint} repeats steps until no node is enabled or a move
cap is reached, and records everything in an L{ExecutionTrace}.

The expression C{exp} of a node (the number of its neighbors in state
L{IN}) is never stored.  L{exp_of} and the guards count it from the
configuration they are given, so it can not go stale.

@group States: NodeState, IN, OUT, Configuration, initial_configuration,
    parse_init, exp_of
@group Rules: RuleId, Rule, RuleSet
@group Execution: enabled_rules, enabled_set, apply_move, step_central,
    step_subset, run_to_fixpoint, affected_nodes, default_move_cap
@group Results: MoveRecord, ExecutionTrace
@group State files: format_state, parse_state, read_state_file,
    write_state_file
"""

__docformat__ = 'epytext en'

######################################################################
## Imports
######################################################################

import random
from collections import namedtuple

import stabsim
from stabsim import log
from stabsim.util import StabsimError, OutputError, open_output

######################################################################
## Errors
######################################################################

class ConfigurationError(StabsimError):
    """
    Raised for configurations that do not fit their graph, unknown
    state tokens, malformed state files, and unknown initial
    configuration presets.
    """

class RuleNotEnabledError(StabsimError):
    """
    Raised when a move is requested for a rule whose guard does not
    hold.  This always indicates a bug in the caller (usually a
    daemon).
    """

class EngineError(StabsimError):
    """
    Raised when the engine detects an internal inconsistency, such as
    an incrementally maintained enabled set that disagrees with a full
    recomputation.
    """

class ConvergenceError(StabsimError):
    """
    Raised when a central-daemon run exceeds the move bound of its
    rule set.  The bound is a theorem about the rule set, so exceeding
    it means the engine or the rules are broken.
    """

######################################################################
## Node States
######################################################################

class NodeState(object):
    """
    The state of a single node: either L{IN} or L{OUT}.  There are
    exactly two instances, so states compare by identity.
    """
    __slots__ = ('name',)

    def __init__(self, name):
        self.name = name

    def __repr__(self):
        return self.name

    __str__ = __repr__

    def __reduce__(self):
        return self.name.upper()

    @staticmethod
    def parse(token):
        """
        @return: The state named by C{token} (C{'In'} or C{'Out'}).
        @raise ConfigurationError: For any other token.
        """
        state = _STATES.get(token)
        if state is None:
            raise ConfigurationError('unknown node state %r; expected '
                                     'In or Out' % (token,))
        return state

IN = NodeState('In')
"""The node belongs to the set under construction."""

OUT = NodeState('Out')
"""The node does not belong to the set under construction."""

_STATES = {'In': IN, 'Out': OUT}

######################################################################
## Configurations
######################################################################

class Configuration(object):
    """
    An immutable assignment of a L{NodeState} to every node.  The set
    C{S} of an algorithm is always the set of nodes in state L{IN}.

        >>> c = Configuration([OUT, IN, OUT])
        >>> c.members()
        [1]
        >>> c.replace({0: IN}).members()
        [0, 1]
    """
    __slots__ = ('states',)

    def __init__(self, states):
        states = tuple(states)
        for state in states:
            if state is not IN and state is not OUT:
                raise ConfigurationError('%r is not a node state' % (state,))
        self.states = states

    @classmethod
    def from_members(cls, n, members):
        """
        @return: The configuration on C{n} nodes whose C{IN} nodes are
            exactly C{members}.
        """
        members = set(members)
        for v in members:
            if not (isinstance(v, int) and 0 <= v < n):
                raise ConfigurationError('member %r is outside [0, %d)' %
                                         (v, n))
        return cls([IN if v in members else OUT for v in range(n)])

    def __len__(self):
        return len(self.states)

    def __getitem__(self, v):
        return self.states[v]

    def __iter__(self):
        return iter(self.states)

    def __eq__(self, other):
        return isinstance(other, Configuration) and self.states == other.states

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash(self.states)

    def __repr__(self):
        return '<Configuration %s>' % ' '.join([s.name for s in self.states])

    def members(self):
        """
        @return: The nodes in state L{IN}, sorted ascending.
        @rtype: C{list} of C{int}
        """
        return [v for (v, s) in enumerate(self.states) if s is IN]

    def cardinality(self):
        return sum(1 for s in self.states if s is IN)

    def replace(self, updates):
        """
        @return: A new configuration that differs from this one only at
            the nodes in C{updates}.
        @param updates: A dictionary mapping nodes to their new states.
        """
        states = list(self.states)
        for (v, state) in updates.items():
            if state is not IN and state is not OUT:
                raise ConfigurationError('%r is not a node state' % (state,))
            states[v] = state
        result = Configuration.__new__(Configuration)
        result.states = tuple(states)
        return result

    def check_graph(self, g):
        """
        @raise ConfigurationError: If this configuration does not have
            exactly one state per node of C{g}.
        """
        if len(self.states) != g.n:
            raise ConfigurationError('configuration has %d states but the '
                                     'graph has %d nodes' %
                                     (len(self.states), g.n))

def exp_of(g, c, v):
    """
    The expression of C{v}: the number of neighbors of C{v} whose
    state is L{IN} in C{c}, counted from scratch.

        >>> from stabsim.graph import star_graph
        >>> exp_of(star_graph(3), Configuration([IN, OUT, OUT, OUT]), 2)
        1

    @rtype: C{int}
    """
    v = g.check_node(v)
    states = c.states
    return sum(1 for u in g.adjacency[v] if states[u] is IN)

def count_in_neighbors(g, c, v, limit):
    """
    Count the L{IN} neighbors of C{v}, stopping at C{limit}.  Guards
    that only need to know whether C{exp} is 0, 1 or more use this
    instead of L{exp_of}; the result is C{min(exp_of(g, c, v), limit)}.
    """
    states = c.states
    count = 0
    for u in g.adjacency[v]:
        if states[u] is IN:
            count += 1
            if count >= limit: break
    return count

######################################################################
## Initial Configurations
######################################################################

INIT_PRESETS = ('all-out', 'all-in', 'random:P')

def parse_init(token):
    """
    Check an initial configuration preset and return it in canonical
    form.  C{'random'} alone means C{'random:0.5'}.

    @return: A C{(kind, probability)} pair; C{probability} is C{None}
        unless C{kind} is C{'random'}.
    @raise ConfigurationError: For unknown presets or a probability
        outside C{[0, 1]}.
    """
    if token in ('all-out', 'all-in'):
        return (token, None)
    if token == 'random':
        return ('random', 0.5)
    if token.startswith('random:'):
        try:
            p = float(token[len('random:'):])
        except ValueError:
            p = None
        if p is not None and 0.0 <= p <= 1.0:
            return ('random', p)
        raise ConfigurationError('bad probability in %r; expected '
                                 'random:P with 0 <= P <= 1' % token)
    raise ConfigurationError('unknown initial configuration %r; expected '
                             'one of: %s' % (token, ', '.join(INIT_PRESETS)))

def initial_configuration(g, preset, seed=0):
    """
    Build an initial configuration for C{g}.

    @param preset: C{'all-out'}, C{'all-in'}, or C{'random:p'} (each
        node is L{IN} independently with probability C{p}, drawn from
        a generator seeded with C{seed}).
    @rtype: L{Configuration}
    """
    kind, p = parse_init(preset)
    if kind == 'all-out':
        return Configuration([OUT] * g.n)
    if kind == 'all-in':
        return Configuration([IN] * g.n)
    rng = random.Random(seed)
    return Configuration([IN if rng.random() < p else OUT
                          for v in range(g.n)])

######################################################################
## Rules
######################################################################

class RuleId(namedtuple('RuleId', 'index name')):
    """
    Identifies a rule within its rule set: a small integer (its
    priority, lower fires first) plus a display name such as C{R1}.
    """
    __slots__ = ()
    def __str__(self):
        return self.name

class Rule(object):
    """
    A guarded command: when C{guard(g, c, v)} holds, node C{v} may
    move to C{new_state}.  Guards must be pure functions of their
    arguments, and a statement only ever changes the moving node's own
    state.
    """
    def __init__(self, rule_id, guard, new_state, description=''):
        self.rule_id = rule_id
        """@type: L{RuleId}"""
        self.guard = guard
        """The guard predicate, called as C{guard(g, c, v)}."""
        self.new_state = new_state
        """The state the node takes when the rule fires.
        @type: L{NodeState}"""
        self.description = description

    def __repr__(self):
        return '<Rule %s: -> %s>' % (self.rule_id.name, self.new_state)

class RuleSet(object):
    """
    An algorithm: an ordered list of L{Rule}s evaluated at every node.

    The guard of a node C{w} may read the state of C{w} and the
    I{view} of each neighbor of C{w}; L{view} returns what a neighbor
    exposes.  For rule sets in the distance-one model the view is the
    neighbor's state.  In the expression model the view also carries
    an expression computed from the neighbor's own neighborhood, which
    gives the guard indirect access to distance 2; C{radius} records
    this.  The engine uses views to decide which nodes to re-evaluate
    after a move (see L{affected_nodes}).

    Rule sets are immutable value objects and may be shared freely.
    """
    def __init__(self, name, rules, view=None, radius=1, move_bound=None,
                 exclusion_radius=1, description=''):
        self.name = name
        """The algorithm's token (C{md2is}, C{mis}, ...)."""

        self.rules = tuple(rules)
        """The rules, in priority order.
        @type: C{tuple} of L{Rule}"""

        self.view = view
        """C{view(g, c, u)}: what the neighbors of C{u} observe of it,
        or C{None} to re-evaluate the whole C{radius}-ball after each
        move."""

        self.radius = radius
        """How far a guard can see, in hops."""

        self.move_bound = move_bound
        """C{move_bound(n)}: the most moves any central-daemon run on
        C{n} nodes can take, or C{None} if no bound is known."""

        self.exclusion_radius = exclusion_radius
        """Members of a fixpoint set are more than this many hops apart:
        1 for independent sets, 2 for distance-2 independent sets."""

        self.description = description

        for i, rule in enumerate(self.rules):
            if rule.rule_id.index != i:
                raise ValueError('rule %s of %s has index %d, expected %d' %
                                 (rule.rule_id.name, name,
                                  rule.rule_id.index, i))

    def __repr__(self):
        return '<RuleSet %s: %s>' % (
            self.name, ', '.join([r.rule_id.name for r in self.rules]))

    def rule(self, rule_id):
        """
        @return: The L{Rule} with the given L{RuleId}, index or name.
        @raise KeyError: If this rule set has no such rule.
        """
        for rule in self.rules:
            if (rule.rule_id == rule_id or rule.rule_id.index == rule_id or
                rule.rule_id.name == rule_id):
                return rule
        raise KeyError('%s has no rule %r' % (self.name, rule_id))

    def enabled_rules(self, g, c, v):
        return [rule.rule_id for rule in self.rules if rule.guard(g, c, v)]

    def first_enabled(self, g, c, v):
        """
        @return: The lowest-indexed rule enabled at C{v}, or C{None}.
        """
        for rule in self.rules:
            if rule.guard(g, c, v): return rule
        return None

    def is_enabled(self, g, c, v):
        for rule in self.rules:
            if rule.guard(g, c, v): return True
        return False

######################################################################
## Results
######################################################################

class MoveRecord(namedtuple('MoveRecord',
                            'step node rule new_state round enabled_after')):
    """
    One move of a trace.

      - C{step}: the move's index in the trace, strictly increasing.
      - C{node}: the node that moved.
      - C{rule}: the L{RuleId} that fired.
      - C{new_state}: the node's state after the move.
      - C{round}: the step (central daemons) or round (subset daemons)
        the move belongs to.
      - C{enabled_after}: the number of enabled nodes once the step or
        round completed, or C{None} if unknown.
    """
    __slots__ = ()

class ExecutionTrace(object):
    """
    The complete record of one run: its moves and its outcome.
    C{converged} is true exactly when the final configuration has no
    enabled node.  A run that stops at its cap has exactly C{move_cap}
    moves: under a subset daemon the round that reaches the cap is
    clipped to its first nodes in id order.
    """
    def __init__(self, rules, daemon, initial, final, moves, rounds,
                 converged, seed, move_cap):
        self.rules = rules
        """The name of the rule set that ran."""
        self.daemon = daemon
        """The daemon token (see L{stabsim.daemon.parse_daemon})."""
        self.initial = initial
        """@type: L{Configuration}"""
        self.final = final
        """@type: L{Configuration}"""
        self.moves = moves
        """@type: C{list} of L{MoveRecord}"""
        self.rounds = rounds
        """Steps (central daemons) or rounds (subset daemons) taken."""
        self.converged = converged
        self.seed = seed
        self.move_cap = move_cap

    def __repr__(self):
        return ('<ExecutionTrace %s/%s moves=%d rounds=%d converged=%s>' %
                (self.rules, self.daemon, len(self.moves), self.rounds,
                 self.converged))

    def members(self):
        """@return: The final set C{S}, sorted ascending."""
        return self.final.members()

    def moves_by_node(self):
        """
        @return: A dictionary mapping each node that moved to the list
            of rule names it fired, in order.
        """
        result = {}
        for record in self.moves:
            result.setdefault(record.node, []).append(record.rule.name)
        return result

######################################################################
## Rule Evaluation
######################################################################

def enabled_rules(g, c, v, rules):
    """
    @return: The ids of all rules of C{rules} whose guard holds for
        C{v} under C{c}.  An empty list means C{v} is disabled.
    @rtype: C{list} of L{RuleId}
    """
    c.check_graph(g)
    v = g.check_node(v)
    return rules.enabled_rules(g, c, v)

def enabled_set(g, c, rules):
    """
    @return: The nodes with at least one enabled rule.
    @rtype: C{set} of C{int}
    """
    c.check_graph(g)
    return set(v for v in range(g.n) if rules.is_enabled(g, c, v))

def apply_move(g, c, v, rule, rules):
    """
    Execute C{rule} at node C{v}.

    @param rule: A L{RuleId}, rule index or rule name of C{rules}.
    @return: A configuration that differs from C{c} only at C{v}.
    @rtype: L{Configuration}
    @raise RuleNotEnabledError: If the rule's guard does not hold for
        C{v} under C{c}.
    """
    c.check_graph(g)
    v = g.check_node(v)
    rule = rules.rule(rule)
    if not rule.guard(g, c, v):
        raise RuleNotEnabledError('rule %s of %s is not enabled at node %d' %
                                  (rule.rule_id.name, rules.name, v))
    return c.replace({v: rule.new_state})

def affected_nodes(g, rules, before, after, moved):
    """
    @return: The nodes whose guards may evaluate differently under
        C{after} than under C{before}, given that exactly the nodes in
        C{moved} changed state.  This is always a subset of the moved
        nodes and their C{rules.radius}-balls.
    @rtype: C{set} of C{int}
    """
    adjacency = g.adjacency
    result = set(moved)
    if rules.view is None:
        for v in moved:
            result.update(g.ball(v, rules.radius))
        return result
    # Only nodes next to a moved node can expose a different view.
    candidates = set(moved)
    for v in moved:
        candidates.update(adjacency[v])
    view = rules.view
    for x in candidates:
        if view(g, before, x) != view(g, after, x):
            result.update(adjacency[x])
    return result

class EnabledSet(object):
    """
    The set of enabled nodes, kept in an indexable list so a daemon
    can draw a uniform member in constant time.  The list order
    depends only on the sequence of updates, so it is deterministic.
    """
    __slots__ = ('_nodes', '_index')

    def __init__(self, nodes=()):
        self._nodes = []
        self._index = {}
        for v in nodes: self.add(v)

    def add(self, v):
        if v not in self._index:
            self._index[v] = len(self._nodes)
            self._nodes.append(v)

    def discard(self, v):
        i = self._index.pop(v, None)
        if i is None: return
        last = self._nodes.pop()
        if last != v:
            self._nodes[i] = last
            self._index[last] = i

    def __contains__(self, v):
        return v in self._index

    def __len__(self):
        return len(self._nodes)

    def __iter__(self):
        return iter(self._nodes)

    def at(self, i):
        return self._nodes[i]

    def sorted(self):
        return sorted(self._nodes)

######################################################################
## Steps
######################################################################

def _check_full(g, c, rules, enabled):
    full = enabled_set(g, c, rules)
    if full != set(enabled):
        raise EngineError('incremental enabled set disagrees with full '
                          'recomputation: missing %s, extra %s' %
                          (sorted(full - set(enabled)),
                           sorted(set(enabled) - full)))

def step_central(g, c, rules, daemon, step=0, enabled=None):
    """
    Let a central daemon move one node.

    @param enabled: The enabled nodes of C{c}, if the caller already
        knows them (an L{EnabledSet}, updated in place).
    @return: C{None} if no node is enabled; otherwise a pair
        C{(record, configuration)}: the L{MoveRecord} of the move and
        the configuration after it.
    @raise DaemonError: If C{daemon} is not a central daemon.
    """
    from stabsim.daemon import DaemonError
    if not daemon.central:
        raise DaemonError('step_central needs a central daemon, got %s' %
                          daemon.token)
    if enabled is None:
        c.check_graph(g)
        enabled = EnabledSet(sorted(enabled_set(g, c, rules)))
    if not len(enabled):
        return None
    v = daemon.select_central(g, c, rules, enabled)
    rule = rules.first_enabled(g, c, v)
    if rule is None:
        raise RuleNotEnabledError('daemon %s selected disabled node %d' %
                                  (daemon.token, v))
    after = c.replace({v: rule.new_state})
    for w in sorted(affected_nodes(g, rules, c, after, (v,))):
        if rules.is_enabled(g, after, w): enabled.add(w)
        else: enabled.discard(w)
    if stabsim.DEBUG:
        _check_full(g, after, rules, enabled)
    record = MoveRecord(step, v, rule.rule_id, rule.new_state, step,
                        len(enabled))
    return record, after

def step_subset(g, c, rules, daemon, step=0, round_index=0, enabled=None,
                limit=None):
    """
    Let a subset daemon move a nonempty subset of the enabled nodes
    simultaneously.  Every guard is evaluated against C{c}, the
    configuration at the start of the round, so the outcome does not
    depend on the order the moves are listed in.

    @param step: The index given to the round's first move record.
    @param round_index: The round number stored in the records.
    @param enabled: The enabled nodes of C{c}, if already known.
    @param limit: If given, at most this many of the selected nodes
        (the smallest ids) move.
    @return: C{None} if no node is enabled; otherwise a pair
        C{(records, configuration)}.
    @raise DaemonError: If C{daemon} is a central daemon.
    """
    from stabsim.daemon import DaemonError
    if daemon.central:
        raise DaemonError('step_subset needs a subset daemon, got %s' %
                          daemon.token)
    if enabled is None:
        c.check_graph(g)
        enabled = EnabledSet(sorted(enabled_set(g, c, rules)))
    if not len(enabled):
        return None
    subset = sorted(daemon.select_subset(g, c, rules, enabled.sorted()))
    if limit is not None:
        subset = subset[:max(limit, 1)]
    fired = [(v, rules.first_enabled(g, c, v)) for v in subset]
    after = c.replace(dict((v, rule.new_state) for (v, rule) in fired))
    for w in sorted(affected_nodes(g, rules, c, after, subset)):
        if rules.is_enabled(g, after, w): enabled.add(w)
        else: enabled.discard(w)
    if stabsim.DEBUG:
        _check_full(g, after, rules, enabled)
    records = [MoveRecord(step + i, v, rule.rule_id, rule.new_state,
                          round_index, len(enabled))
               for (i, (v, rule)) in enumerate(fired)]
    return records, after

######################################################################
## Runs
######################################################################

def default_move_cap(n, daemon):
    """
    @return: C{2n+1} for central daemons (one more than the move
        bound, so a violation is observable) and C{10n} for subset
        daemons, which may never converge.
    """
    if daemon.central:
        return 2 * n + 1
    return max(10 * n, 1)

def run_to_fixpoint(g, rules, daemon, init, move_cap=None):
    """
    Execute C{rules} on C{g} from C{init} until no node is enabled or
    C{move_cap} moves have been made.  The daemon is reset first, so
    the trace is a pure function of the graph, the rules, the daemon
    (including its seed), C{init} and C{move_cap}.

    @param move_cap: The most moves to make, or C{None} for
        L{default_move_cap}.
    @rtype: L{ExecutionTrace}
    @raise ConvergenceError: If a central-daemon run makes more moves
        than C{rules.move_bound} allows.
    """
    init.check_graph(g)
    if move_cap is None:
        move_cap = default_move_cap(g.n, daemon)
    if move_cap < 1:
        raise EngineError('move cap must be at least 1, got %r' % move_cap)
    daemon.reset()
    enabled = EnabledSet(sorted(enabled_set(g, init, rules)))
    c = init
    moves = []
    rounds = 0
    bound = None
    if daemon.central and rules.move_bound is not None:
        bound = rules.move_bound(g.n)
    while len(enabled) and len(moves) < move_cap:
        if daemon.central:
            record, c = step_central(g, c, rules, daemon, len(moves),
                                     enabled)
            moves.append(record)
            if bound is not None and len(moves) > bound:
                raise ConvergenceError(
                    '%s made %d moves on %d nodes under %s, exceeding its '
                    'bound of %d' % (rules.name, len(moves), g.n,
                                     daemon.token, bound))
        else:
            records, c = step_subset(g, c, rules, daemon, len(moves),
                                     rounds, enabled,
                                     move_cap - len(moves))
            moves.extend(records)
        rounds += 1
    converged = not len(enabled)
    if not converged:
        log.convergence_warning(
            '%s under %s did not converge within %d moves (n=%d)' %
            (rules.name, daemon.token, move_cap, g.n))
    return ExecutionTrace(rules.name, daemon.token, init, c, moves, rounds,
                          converged, daemon.seed, move_cap)

######################################################################
## State Files
######################################################################

def format_state(c):
    """
    @return: The state-file text for C{c}: one C{"<id> In|Out"} line
        per node.
    """
    return ''.join(['%d %s\n' % (v, s.name) for (v, s) in enumerate(c)])

def parse_state(text, n=None, filename=None):
    """
    Parse state-file text.  Every node must appear exactly once; lines
    may come in any order.

    @param n: The expected node count, if known.
    @raise ConfigurationError: If the text is malformed.
    """
    where = filename and ('%s: ' % filename) or ''
    states = {}
    for lineno, line in enumerate(text.splitlines()):
        if not line.strip(): continue
        fields = line.split()
        if len(fields) != 2:
            raise ConfigurationError('%sline %d: expected "<id> In|Out"' %
                                     (where, lineno+1))
        try:
            v = int(fields[0])
        except ValueError:
            raise ConfigurationError('%sline %d: bad node id %r' %
                                     (where, lineno+1, fields[0]))
        if v in states:
            raise ConfigurationError('%sline %d: node %d listed twice' %
                                     (where, lineno+1, v))
        states[v] = NodeState.parse(fields[1])
    if n is None:
        n = len(states)
    if sorted(states) != list(range(n)):
        raise ConfigurationError('%sexpected states for nodes 0..%d, got %d '
                                 'entries' % (where, n-1, len(states)))
    return Configuration([states[v] for v in range(n)])

def read_state_file(path, n=None):
    try:
        with open(path, 'r', encoding='ascii') as f:
            text = f.read()
    except (IOError, OSError, UnicodeDecodeError) as e:
        raise ConfigurationError('%s: can not read file: %s' %
                                 (path, getattr(e, 'strerror', None) or e))
    return parse_state(text, n, path)

def write_state_file(c, path):
    out = open_output(path)
    try:
        out.write(format_state(c))
    except (IOError, OSError) as e:
        raise OutputError(path, e.strerror or e)
    finally:
        out.close()
