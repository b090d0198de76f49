# stabsim -- Rule sets
#
# For license information, see LICENSE.txt

"""
The concrete self-stabilizing algorithms.

  - C{md2is}: maximal distance-2 independent set in the expression
    model.  Each node exposes C{exp}, its number of L{IN} neighbors,
    and a node's guards read the states and expressions of its
    neighbors:

      - R1: C{v} is Out, and every neighbor C{u} is Out with
        C{exp(u) = 0}.  C{v} enters.
      - R2: C{v} is In, and some neighbor C{u} is In or has
        C{exp(u) > 1}.  C{v} leaves.

    The rules use no node identifiers.  Under a central daemon every
    run stabilizes within C{2n} moves.

  - C{mis}: the classic two-rule maximal independent set algorithm
    (enter when no neighbor is In; leave when some neighbor is In).
    It is correct under a central daemon only: under the synchronous
    daemon two Out neighbors enter and leave together forever.

  - C{mis-id}: a maximal independent set variant that breaks symmetry
    with node ids, so it also stabilizes under subset daemons.  A node
    enters only if it has the smallest id among the undominated Out
    nodes of its closed neighborhood, and leaves if a smaller In
    neighbor exists.

Each guard counts In neighbors directly from the configuration it is
given (see L{count_in_neighbors<stabsim.engine.count_in_neighbors>}),
stopping as soon as the answer is known.
"""

__docformat__ = 'epytext en'

from stabsim.engine import IN, OUT, Rule, RuleId, RuleSet, count_in_neighbors
from stabsim.util import StabsimError

class UnknownAlgorithmError(StabsimError):
    """Raised for an algorithm token that names no rule set."""

######################################################################
## Maximal distance-2 independent set
######################################################################

def _md2is_enter(g, c, v):
    states = c.states
    if states[v] is not OUT: return False
    adjacency = g.adjacency
    for u in adjacency[v]:
        if states[u] is IN or count_in_neighbors(g, c, u, 1):
            return False
    return True

def _md2is_leave(g, c, v):
    states = c.states
    if states[v] is not IN: return False
    adjacency = g.adjacency
    for u in adjacency[v]:
        # exp(u) counts v itself, so exp(u) > 1 means another member
        # sits two hops away.
        if states[u] is IN or count_in_neighbors(g, c, u, 2) > 1:
            return True
    return False

def _md2is_view(g, c, u):
    return (c.states[u], count_in_neighbors(g, c, u, 2))

def _twice_n(n):
    return 2 * n

def md2is_rules():
    """
    @return: The maximal distance-2 independent set rule set.  Its
        fixpoints are exactly the configurations whose In nodes form a
        maximal distance-2 independent set.
    @rtype: L{RuleSet}
    """
    return RuleSet('md2is', [
        Rule(RuleId(0, 'R1'), _md2is_enter, IN,
             'Out, and no neighbor is In or has an In neighbor'),
        Rule(RuleId(1, 'R2'), _md2is_leave, OUT,
             'In, and a neighbor is In or has another In neighbor'),
        ], view=_md2is_view, radius=2, move_bound=_twice_n,
        exclusion_radius=2,
        description='maximal distance-2 independent set')

######################################################################
## Maximal independent set, central daemon
######################################################################

def _mis_enter(g, c, v):
    states = c.states
    if states[v] is not OUT: return False
    for u in g.adjacency[v]:
        if states[u] is IN: return False
    return True

def _mis_leave(g, c, v):
    states = c.states
    if states[v] is not IN: return False
    for u in g.adjacency[v]:
        if states[u] is IN: return True
    return False

def _state_view(g, c, u):
    return c.states[u]

def mis_central_rules():
    """
    @return: The two-rule maximal independent set algorithm for the
        central daemon.
    @rtype: L{RuleSet}
    """
    return RuleSet('mis', [
        Rule(RuleId(0, 'Enter'), _mis_enter, IN, 'Out, and no neighbor is In'),
        Rule(RuleId(1, 'Leave'), _mis_leave, OUT, 'In, and a neighbor is In'),
        ], view=_state_view, radius=1, move_bound=_twice_n,
        description='maximal independent set (central daemon)')

######################################################################
## Maximal independent set with id-based symmetry breaking
######################################################################

def _mis_id_enter(g, c, v):
    states = c.states
    if states[v] is not OUT: return False
    adjacency = g.adjacency
    for u in adjacency[v]:
        if states[u] is IN: return False
    # Adjacency lists are sorted, so the smaller neighbors come first.
    for u in adjacency[v]:
        if u > v: break
        if not count_in_neighbors(g, c, u, 1): return False
    return True

def _mis_id_leave(g, c, v):
    states = c.states
    if states[v] is not IN: return False
    for u in g.adjacency[v]:
        if u > v: break
        if states[u] is IN: return True
    return False

def _mis_id_view(g, c, u):
    return (c.states[u], count_in_neighbors(g, c, u, 1))

def mis_idbased_rules():
    """
    @return: The id-based maximal independent set algorithm, which
        stabilizes under central and subset daemons alike.
    @rtype: L{RuleSet}
    """
    return RuleSet('mis-id', [
        Rule(RuleId(0, 'Enter'), _mis_id_enter, IN,
             'Out, no neighbor is In, and no smaller undominated neighbor'),
        Rule(RuleId(1, 'Leave'), _mis_id_leave, OUT,
             'In, and a smaller neighbor is In'),
        ], view=_mis_id_view, radius=2, move_bound=_twice_n,
        description='maximal independent set (id-based)')

######################################################################
## Registry
######################################################################

ALGORITHMS = {
    'md2is': md2is_rules,
    'mis': mis_central_rules,
    'mis-id': mis_idbased_rules,
    }
"""Rule set constructors, by command-line token."""

def get_rules(token):
    """
    @return: The rule set named by C{token}.
    @raise UnknownAlgorithmError: If there is no such rule set.
    """
    try:
        return ALGORITHMS[token]()
    except KeyError:
        raise UnknownAlgorithmError('unknown algorithm %r; expected one '
                                    'of: %s' %
                                    (token, ', '.join(sorted(ALGORITHMS))))
