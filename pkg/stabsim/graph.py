# stabsim -- Graph representation and generation
#
# For license information, see LICENSE.txt

"""
Immutable undirected graphs, seeded random graph generation, and the
distance-bounded neighborhood queries used by distance-2 rule sets.

Nodes are identified by dense, zero-based integers: a graph with C{n}
nodes names them C{0 .. n-1}.  Adjacency lists are kept sorted, so
every iteration over a neighborhood happens in the same order on
every platform.

Graphs are exchanged as edge-list text files::

    5 4
    0 1
    1 2
    2 3
    3 4

The first line holds the node count and the edge count; each further
line holds one undirected edge C{u v} with C{u < v}.

@group Graphs: Graph, GraphGenSpec, gen_random_graph
@group Neighborhood queries: neighbors, dist2_neighborhood,
    pairwise_distance_gt2, ball
@group Fixtures: path_graph, cycle_graph, star_graph, complete_graph,
    empty_graph
@group Edge-list files: parse_edgelist, format_edgelist, read_edgelist,
    write_edgelist
"""

__docformat__ = 'epytext en'

######################################################################
## Imports
######################################################################

import operator

import networkx as nx

from stabsim import log
from stabsim.util import StabsimError, OutputError, open_output, check_seed

######################################################################
## Errors
######################################################################

class GraphError(StabsimError):
    """
    Raised for invalid graphs, invalid generation specs, and node ids
    outside C{[0, n)}.
    """

class EdgeListError(GraphError):
    """
    Raised when an edge-list file can not be parsed.
    """
    def __init__(self, message, filename=None, lineno=None):
        location = ''
        if filename is not None: location += '%s:' % filename
        if lineno is not None: location += '%d:' % lineno
        if location: message = '%s %s' % (location, message)
        GraphError.__init__(self, message)
        self.filename = filename
        self.lineno = lineno

######################################################################
## Graph
######################################################################

class Graph(object):
    """
    An immutable undirected simple graph.  C{Graph} objects are safe
    to share between concurrently running trials.

        >>> g = Graph(3, [(0, 1), (1, 2)])
        >>> g.neighbors(1)
        [0, 2]
        >>> g.m
        2
    """
    __slots__ = ('n', 'm', 'adjacency')

    def __init__(self, n, edges=()):
        """
        Create a graph with C{n} nodes and the given edges.

        @param n: The node count.
        @param edges: An iterable of C{(u, v)} node pairs, in either
            order.
        @raise GraphError: If an edge names a node outside C{[0, n)},
            is a self-loop, or is given more than once.
        """
        n = int(n)
        if n < 0:
            raise GraphError('node count must be non-negative, got %d' % n)
        adjacency = [set() for _ in range(n)]
        m = 0
        for (u, v) in edges:
            u, v = int(u), int(v)
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError('edge (%d, %d) names a node outside '
                                 '[0, %d)' % (u, v, n))
            if u == v:
                raise GraphError('self-loop at node %d' % u)
            if v in adjacency[u]:
                raise GraphError('duplicate edge (%d, %d)' %
                                 (min(u, v), max(u, v)))
            adjacency[u].add(v)
            adjacency[v].add(u)
            m += 1
        object.__setattr__(self, 'n', n)
        object.__setattr__(self, 'm', m)
        object.__setattr__(self, 'adjacency',
                           tuple(tuple(sorted(a)) for a in adjacency))

    def __setattr__(self, attr, value):
        raise AttributeError('Graph objects are immutable')

    def __reduce__(self):
        return (Graph, (self.n, list(self.edges())))

    def __eq__(self, other):
        return (isinstance(other, Graph) and self.n == other.n and
                self.adjacency == other.adjacency)

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash((self.n, self.adjacency))

    def __repr__(self):
        return '<Graph n=%d m=%d>' % (self.n, self.m)

    def __len__(self):
        return self.n

    #////////////////////////////////////////////////////////////
    # Queries
    #////////////////////////////////////////////////////////////

    def check_node(self, v):
        """
        @return: C{v} as a plain C{int}; numpy integers are accepted.
        @raise GraphError: If C{v} is not a node of this graph.
        """
        if isinstance(v, bool):
            raise GraphError('node %r is not an integer id' % (v,))
        try:
            index = operator.index(v)
        except TypeError:
            raise GraphError('node %r is not an integer id' % (v,))
        if not 0 <= index < self.n:
            raise GraphError('node %r is outside [0, %d)' % (v, self.n))
        return index

    def neighbors(self, v):
        """
        @return: The neighbors of C{v}, sorted ascending.
        @rtype: C{list} of C{int}
        """
        v = self.check_node(v)
        return list(self.adjacency[v])

    def degree(self, v):
        v = self.check_node(v)
        return len(self.adjacency[v])

    def mean_degree(self):
        if self.n == 0: return 0.0
        return 2.0 * self.m / self.n

    def edges(self):
        """
        Iterate over the edges as C{(u, v)} pairs with C{u < v}, in
        lexicographic order.
        """
        for u, adj in enumerate(self.adjacency):
            for v in adj:
                if u < v: yield (u, v)

    def dist2_neighborhood(self, v):
        """
        @return: The nodes at distance 1 or 2 from C{v}.  C{v} itself
            is never included, even when it is reachable over a path
            of length 2 (which it always is, through any neighbor).
        @rtype: C{set} of C{int}
        """
        v = self.check_node(v)
        adjacency = self.adjacency
        result = set(adjacency[v])
        for u in adjacency[v]:
            result.update(adjacency[u])
        result.discard(v)
        return result

    def ball(self, v, radius):
        """
        @return: The nodes within distance C{radius} of C{v},
            including C{v}, found by a breadth-first search truncated
            at depth C{radius}.
        @rtype: C{set} of C{int}
        """
        v = self.check_node(v)
        adjacency = self.adjacency
        seen = set([v])
        frontier = [v]
        for depth in range(radius):
            next_frontier = []
            for x in frontier:
                for y in adjacency[x]:
                    if y not in seen:
                        seen.add(y)
                        next_frontier.append(y)
            frontier = next_frontier
            if not frontier: break
        return seen

    def pairwise_distance_gt2(self, a, b):
        """
        @return: True if the distance between C{a} and C{b} is
            strictly greater than 2 (disconnected pairs included).
        @raise GraphError: If C{a == b}.
        """
        a = self.check_node(a)
        b = self.check_node(b)
        if a == b:
            raise GraphError('distance test needs two distinct nodes, '
                             'got %d twice' % a)
        adjacency = self.adjacency
        if b in adjacency[a]: return False
        # Depth-2 frontier of a: does any neighbor of a touch b?
        adj_b = adjacency[b]
        if len(adj_b) < len(adjacency[a]):
            return not any(a in adjacency[x] for x in adj_b)
        return not any(b in adjacency[x] for x in adjacency[a])

    #////////////////////////////////////////////////////////////
    # Conversion
    #////////////////////////////////////////////////////////////

    def to_networkx(self):
        """
        @return: An equivalent C{networkx.Graph} on nodes C{0..n-1}.
        """
        G = nx.Graph()
        G.add_nodes_from(range(self.n))
        G.add_edges_from(self.edges())
        return G

    @classmethod
    def from_networkx(cls, G):
        """
        Build a graph from a C{networkx} graph.  Nodes are relabelled
        densely, following the sorted order of C{G}'s nodes.
        """
        index = dict((node, i) for (i, node) in enumerate(sorted(G.nodes())))
        return cls(len(index), [(index[u], index[v]) for (u, v) in G.edges()])

######################################################################
## Module-level queries
######################################################################
# Function forms of the queries, for callers that pass graphs around.

def neighbors(g, v):
    """@return: The sorted neighbor list of C{v} in C{g}."""
    return g.neighbors(v)

def dist2_neighborhood(g, v):
    """@return: The nodes at distance 1 or 2 from C{v} in C{g}."""
    return g.dist2_neighborhood(v)

def pairwise_distance_gt2(g, a, b):
    """@return: True if C{a} and C{b} are more than 2 hops apart."""
    return g.pairwise_distance_gt2(a, b)

def ball(g, v, radius):
    return g.ball(v, radius)

######################################################################
## Random Graphs
######################################################################

class GraphGenSpec(object):
    """
    The parameters of a random graph: C{n} nodes, each unordered pair
    joined independently with probability C{density}, driven by
    C{seed}.
    """
    def __init__(self, n, density, seed=0):
        self.n = n
        """The node count.
        @type: C{int}"""

        self.density = density
        """The independent edge probability.
        @type: C{float}"""

        self.seed = seed
        """The unsigned 64-bit seed.
        @type: C{int}"""

    def __repr__(self):
        return ('GraphGenSpec(n=%r, density=%r, seed=%r)' %
                (self.n, self.density, self.seed))

    def validate(self):
        """
        @raise GraphError: If the spec is invalid.
        """
        if not isinstance(self.n, int) or self.n < 1:
            raise GraphError('a random graph needs at least one node, '
                             'got n=%r' % (self.n,))
        try:
            density = float(self.density)
        except (TypeError, ValueError):
            raise GraphError('density must be a number, got %r' %
                             (self.density,))
        if not 0.0 <= density <= 1.0:
            raise GraphError('density must lie in [0, 1], got %r' %
                             (self.density,))
        try:
            check_seed(self.seed)
        except (TypeError, ValueError) as e:
            raise GraphError('%s' % e)

def gen_random_graph(spec):
    """
    Draw an Erdos-Renyi G(n, p) graph with C{p = spec.density}.  Every
    unordered pair of nodes becomes an edge independently with
    probability C{p}; the result depends on nothing but C{spec}.
    Generated graphs may be disconnected and may contain isolated
    nodes.

        >>> gen_random_graph(GraphGenSpec(5, 1.0, seed=3)).m
        10

    @type spec: L{GraphGenSpec}
    @rtype: L{Graph}
    @raise GraphError: If C{spec} is invalid.
    """
    spec.validate()
    density = float(spec.density)
    G = nx.fast_gnp_random_graph(spec.n, density, seed=int(spec.seed))
    g = Graph(spec.n, G.edges())
    log.debug('generated %r from %r (mean degree %.2f)' %
              (g, spec, g.mean_degree()))
    return g

######################################################################
## Fixtures
######################################################################

def path_graph(n):
    """The path C{0 - 1 - ... - n-1}."""
    return Graph.from_networkx(nx.path_graph(n))

def cycle_graph(n):
    return Graph.from_networkx(nx.cycle_graph(n))

def star_graph(leaves):
    """A star whose center is node 0 and whose leaves are C{1..leaves}."""
    return Graph.from_networkx(nx.star_graph(leaves))

def complete_graph(n):
    return Graph.from_networkx(nx.complete_graph(n))

def empty_graph(n):
    return Graph(n)

######################################################################
## Edge-list Files
######################################################################

def format_edgelist(g):
    """
    @return: The edge-list text for C{g}.
    @rtype: C{str}
    """
    lines = ['%d %d' % (g.n, g.m)]
    lines.extend(['%d %d' % e for e in g.edges()])
    return '\n'.join(lines) + '\n'

def parse_edgelist(text, filename=None):
    """
    Parse edge-list text.  Blank lines are ignored.

    @raise EdgeListError: If the header is missing or malformed, the
        edge count disagrees with the header, or an edge line names an
        unknown node, a self-loop, a duplicate, or has C{u >= v}.
    """
    lines = [(i+1, line.split()) for (i, line) in
             enumerate(text.splitlines()) if line.strip()]
    if not lines:
        raise EdgeListError('missing "n m" header', filename, 1)

    def ints(lineno, fields):
        if len(fields) != 2:
            raise EdgeListError('expected two integers, got %r' %
                                ' '.join(fields), filename, lineno)
        try:
            return int(fields[0]), int(fields[1])
        except ValueError:
            raise EdgeListError('expected two integers, got %r' %
                                ' '.join(fields), filename, lineno)

    n, m = ints(*lines[0])
    if n < 0 or m < 0:
        raise EdgeListError('negative count in header', filename, lines[0][0])
    if len(lines) - 1 != m:
        raise EdgeListError('header declares %d edges, found %d' %
                            (m, len(lines) - 1), filename, lines[0][0])
    edges = []
    seen = set()
    for (lineno, fields) in lines[1:]:
        u, v = ints(lineno, fields)
        if not (0 <= u < n and 0 <= v < n):
            raise EdgeListError('unknown node id in edge %d %d' % (u, v),
                                filename, lineno)
        if u == v:
            raise EdgeListError('self-loop at node %d' % u, filename, lineno)
        if u > v:
            raise EdgeListError('edge %d %d is not written with u < v' %
                                (u, v), filename, lineno)
        if (u, v) in seen:
            raise EdgeListError('duplicate edge %d %d' % (u, v),
                                filename, lineno)
        seen.add((u, v))
        edges.append((u, v))
    return Graph(n, edges)

def read_edgelist(path):
    """
    Read a graph from an edge-list file.

    @raise EdgeListError: If the file can not be read or parsed.
    """
    try:
        with open(path, 'r', encoding='ascii') as f:
            text = f.read()
    except (IOError, OSError, UnicodeDecodeError) as e:
        raise EdgeListError('can not read file: %s' %
                            (getattr(e, 'strerror', None) or e), path)
    return parse_edgelist(text, path)

def write_edgelist(g, path):
    """
    Write C{g} to C{path} in edge-list format.

    @raise OutputError: If the file can not be written.
    """
    out = open_output(path)
    try:
        out.write(format_edgelist(g))
    except (IOError, OSError) as e:
        raise OutputError(path, e.strerror or e)
    finally:
        out.close()
