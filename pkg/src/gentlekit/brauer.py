"""Brauer graph algebras: Cartan data and positivity from graph shape.

The Cartan matrix of a Brauer graph algebra decomposes over the vertices of
the graph as a multiplicity-weighted sum of rank-one blocks built from the
plain incidence matrix, so it never sees the cyclic orders.  Positive
definiteness is equivalent to the graph being a tree or having exactly one
cycle of odd length, independently of the multiplicities; both sides of that
equivalence are computed and compared here.
"""

import json

from .errors import InternalMismatch
from .exact_linalg import IntMatrix, is_positive_semidefinite, rank_corank
from .ribbon import incidence_matrix, ribbon_from_json


class BrauerGraph:
    """Connected ribbon graph with a positive multiplicity per vertex."""

    __slots__ = ("graph", "multiplicity")

    def __init__(self, graph, multiplicity=None):
        self.graph = graph
        mult = {v: 1 for v in graph.vertices}
        if multiplicity:
            for v, m in multiplicity.items():
                if v not in mult:
                    raise ValueError("multiplicity for unknown vertex %r" % (v,))
                if not isinstance(m, int) or m < 1:
                    raise ValueError("multiplicity of %r must be a positive "
                                     "integer" % (v,))
                mult[v] = m
        self.multiplicity = mult

    @property
    def trivial_multiplicity(self):
        return all(m == 1 for m in self.multiplicity.values())


def brauer_from_json(data):
    if isinstance(data, (str, bytes)):
        data = json.loads(data)
    g = ribbon_from_json(data, min_degree_two=False)
    mult = {}
    for entry in data["vertices"]:
        if "multiplicity" in entry:
            mult[str(entry["id"])] = entry["multiplicity"]
    return BrauerGraph(g, mult)


def brauer_cartan(bg):
    """Sum over vertices of multiplicity times the rank-one incidence block."""
    inc = incidence_matrix(bg.graph)
    n = len(bg.graph.vertices)
    diag = IntMatrix([[bg.multiplicity[bg.graph.vertices[i]] if i == j else 0
                       for j in range(n)] for i in range(n)])
    return inc * diag * inc.transpose()


def _unique_cycle_length(g):
    """Edge count of the unique cycle, found by pruning leaves."""
    deg = {i: 0 for i in range(len(g.vertices))}
    edges = {}
    for e in g.edges:
        tgt, src = g.edge_halves[e]
        edges[e] = (tgt[0], src[0])
        deg[tgt[0]] += 1
        deg[src[0]] += 1
    alive = set(g.edges)
    changed = True
    while changed:
        changed = False
        for e in list(alive):
            u, v = edges[e]
            if u != v and (deg[u] == 1 or deg[v] == 1):
                alive.discard(e)
                deg[u] -= 1
                deg[v] -= 1
                changed = True
    return len(alive)


class BrauerVerdict:
    __slots__ = ("definiteness", "tag", "repType", "corank")

    def __init__(self, definiteness, tag, rep_type, corank):
        self.definiteness = definiteness
        self.tag = tag
        self.repType = rep_type
        self.corank = corank

    def __repr__(self):
        return "BrauerVerdict(%s, %s%s)" % (
            self.definiteness, self.tag,
            ", %s" % self.repType if self.repType else "")


def brauer_classify(bg):
    """Definiteness via exact corank, structure via cycle counting; the two
    readings must agree for every multiplicity assignment."""
    cb = brauer_cartan(bg)
    if not is_positive_semidefinite(cb):
        raise InternalMismatch("Brauer Cartan matrix is not semidefinite")
    _, corank = rank_corank(cb)
    definite = corank == 0

    cyc_rank = len(bg.graph.edges) - len(bg.graph.vertices) + 1
    if cyc_rank == 0:
        tag = "tree"
    elif cyc_rank == 1:
        tag = "odd-1-cycle" if _unique_cycle_length(bg.graph) % 2 == 1 else "other"
    else:
        tag = "other"

    if definite != (tag in ("tree", "odd-1-cycle")):
        raise InternalMismatch("rank test (%s) and structure test (%s) disagree"
                               % ("definite" if definite else "singular", tag))
    rep_type = None
    if bg.trivial_multiplicity and tag == "tree":
        rep_type = "finite"
    elif bg.trivial_multiplicity and tag == "odd-1-cycle":
        rep_type = "1-domestic"
    definiteness = "positive-definite" if definite else "semidefinite-singular"
    return BrauerVerdict(definiteness, tag, rep_type, corank)
