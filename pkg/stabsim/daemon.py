# stabsim -- Daemons
#
# For license information, see LICENSE.txt

"""
Daemons: the schedulers that decide which enabled nodes move.

A X{central daemon} selects exactly one enabled node per step; a
X{subset daemon} selects a nonempty subset of the enabled nodes per
round, and all of them move simultaneously.  Every daemon owns a
C{random.Random} generator seeded from its C{seed}, and
L{Daemon.reset} rewinds it, so a run is reproducible from the seed.

Daemons are selected on the command line by token:

  - C{central-random}: uniform choice among the enabled nodes.
  - C{central-adversarial:NAME}: a named selection strategy; see
    L{STRATEGIES}.
  - C{distributed:Q}: each enabled node is included independently
    with probability C{Q} (default 0.5); an empty draw is repeated.
  - C{synchronous}: every enabled node moves.

@group Daemons: Daemon, CentralRandom, CentralAdversarial, Distributed,
    Synchronous
@group Strategies: STRATEGIES, register_strategy
"""

__docformat__ = 'epytext en'

import random

from stabsim.util import StabsimError

class DaemonError(StabsimError):
    """
    Raised for unknown daemon tokens and strategies, selection
    probabilities outside C{(0, 1]}, and central daemons used where a
    subset daemon is required (or the reverse).
    """

######################################################################
## Base Class
######################################################################

class Daemon(object):
    """
    Abstract base class for daemons.

    @ivar central: True if this daemon moves one node per step.
    @ivar seed: The seed of the daemon's generator.
    @ivar rng: The daemon's generator.
    """
    central = True

    def __init__(self, seed=0):
        self.seed = seed
        self.rng = random.Random(seed)

    def reset(self):
        """Rewind the daemon's generator to its seed."""
        self.rng = random.Random(self.seed)

    @property
    def token(self):
        """The command-line token naming this daemon."""
        raise NotImplementedError()

    def select_central(self, g, c, rules, enabled):
        """
        Choose the node that moves next.

        @param enabled: The enabled nodes (a nonempty
            L{EnabledSet<stabsim.engine.EnabledSet>}).
        @return: A member of C{enabled}.
        """
        raise DaemonError('%s is not a central daemon' % self.token)

    def select_subset(self, g, c, rules, enabled):
        """
        Choose the nodes that move in the next round.

        @param enabled: The enabled nodes, sorted ascending (nonempty).
        @return: A nonempty sublist of C{enabled}.
        """
        raise DaemonError('%s is not a subset daemon' % self.token)

    def __repr__(self):
        return '<Daemon %s seed=%d>' % (self.token, self.seed)

######################################################################
## Central Daemons
######################################################################

class CentralRandom(Daemon):
    """Selects an enabled node uniformly at random."""
    @property
    def token(self):
        return 'central-random'

    def select_central(self, g, c, rules, enabled):
        return enabled.at(self.rng.randrange(len(enabled)))

def _max_degree_first(daemon, g, c, rules, enabled):
    best = max(g.degree(v) for v in enabled)
    return sorted(v for v in enabled if g.degree(v) == best)

def _min_id_first(daemon, g, c, rules, enabled):
    return [min(enabled)]

def _delay_first_rule(daemon, g, c, rules, enabled):
    # Nodes whose only enabled rule is the set's first (R1 for md2is)
    # are held back while any other node can move.
    first = rules.rules[0]
    others = sorted(v for v in enabled
                    if rules.first_enabled(g, c, v) is not first)
    return others or sorted(enabled)

STRATEGIES = {
    'max-degree-first': _max_degree_first,
    'min-id-first': _min_id_first,
    'delay-r1': _delay_first_rule,
    }
"""
The adversarial selection strategies, by name.  A strategy is called
as C{strategy(daemon, g, c, rules, enabled)} and returns the sorted
list of nodes it considers equally bad; the daemon breaks ties between
them with its generator."""

def register_strategy(name, strategy):
    """
    Register a new adversarial strategy for
    C{central-adversarial:NAME}.
    """
    STRATEGIES[name] = strategy

class CentralAdversarial(Daemon):
    """
    Selects an enabled node with a named worst-case strategy, used to
    probe move counts against the move bound of a rule set.
    """
    def __init__(self, strategy, seed=0):
        if strategy not in STRATEGIES:
            raise DaemonError('unknown adversarial strategy %r; expected '
                              'one of: %s' %
                              (strategy, ', '.join(sorted(STRATEGIES))))
        Daemon.__init__(self, seed)
        self.strategy = strategy

    @property
    def token(self):
        return 'central-adversarial:%s' % self.strategy

    def select_central(self, g, c, rules, enabled):
        candidates = STRATEGIES[self.strategy](self, g, c, rules, enabled)
        if len(candidates) == 1:
            return candidates[0]
        return candidates[self.rng.randrange(len(candidates))]

######################################################################
## Subset Daemons
######################################################################

class Distributed(Daemon):
    """
    Includes each enabled node independently with probability
    C{probability}; a draw that selects nobody is repeated.
    """
    central = False

    def __init__(self, probability=0.5, seed=0):
        if not 0.0 < probability <= 1.0:
            raise DaemonError('selection probability must be in (0, 1], '
                              'got %r' % probability)
        Daemon.__init__(self, seed)
        self.probability = probability

    @property
    def token(self):
        return 'distributed:%r' % self.probability

    def select_subset(self, g, c, rules, enabled):
        rng, q = self.rng, self.probability
        while True:
            subset = [v for v in enabled if rng.random() < q]
            if subset: return subset

class Synchronous(Daemon):
    """Moves every enabled node in every round."""
    central = False

    @property
    def token(self):
        return 'synchronous'

    def select_subset(self, g, c, rules, enabled):
        return list(enabled)

######################################################################
## Tokens
######################################################################

DAEMON_TOKENS = ('central-random', 'central-adversarial:NAME',
                 'distributed:Q', 'synchronous')

def parse_daemon(token, seed=0):
    """
    Build the daemon named by C{token}.

        >>> parse_daemon('distributed:0.25', seed=3)
        <Daemon distributed:0.25 seed=3>

    @raise DaemonError: If the token is not recognized.
    """
    kind, sep, arg = token.partition(':')
    if kind == 'central-random' and not sep:
        return CentralRandom(seed)
    if kind == 'central-adversarial':
        return CentralAdversarial(arg, seed)
    if kind == 'distributed':
        if not sep:
            return Distributed(0.5, seed)
        try:
            probability = float(arg)
        except ValueError:
            raise DaemonError('bad selection probability in %r' % token)
        return Distributed(probability, seed)
    if kind == 'synchronous' and not sep:
        return Synchronous(seed)
    raise DaemonError('unknown daemon %r; expected one of: %s' %
                      (token, ', '.join(DAEMON_TOKENS)))
