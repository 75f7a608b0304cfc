"""Walks on a marked ribbon graph.

A walk is a word of oriented edges i_1 ... i_{L+1}, written left to right but
traversed right to left: the source of the walk is the source of the last
written edge.  Consecutive edges must meet in a vertex: source(i_t) ==
target(i_{t+1}).  Each junction carries a degree +1 or -1 according to
whether the incoming half sits above or below the outgoing half in the
vertex's chain; equal halves would mean backtracking, which is what
"reduced" rules out.

Anti-walks descend a chain step by step from a vertex's marked half-edge and
are the building blocks of the non-full faces; faces are the orbits of the
successor permutation on oriented edges.
"""

from .errors import InternalMismatch, TrivialInput


class UnknownEdge(ValueError):
    pass


class NotConcatenable(ValueError):
    pass


class NotReduced(ValueError):
    pass


def _inv(oe):
    return (oe[0], -oe[1])


class Walk:
    """Immutable walk; edges in written order, or empty with a base vertex."""

    __slots__ = ("graph", "edges", "base")

    def __init__(self, graph, edges, base=None):
        self.graph = graph
        self.edges = tuple(edges)
        if self.edges:
            self.base = None
            for t in range(len(self.edges) - 1):
                if graph.s_vertex(self.edges[t]) != graph.t_vertex(self.edges[t + 1]):
                    raise NotConcatenable(
                        "edges at positions %d and %d do not meet" % (t + 1, t + 2))
        else:
            if base is None:
                raise ValueError("a trivial walk needs a base vertex")
            self.base = base

    @property
    def trivial(self):
        return not self.edges

    @property
    def length(self):
        return len(self.edges)

    @property
    def source_vertex(self):
        if self.trivial:
            return self.base
        return self.graph.s_vertex(self.edges[-1])

    @property
    def target_vertex(self):
        if self.trivial:
            return self.base
        return self.graph.t_vertex(self.edges[0])

    @property
    def closed(self):
        return self.source_vertex == self.target_vertex

    @property
    def reduced(self):
        for t in range(len(self.edges) - 1):
            if self.edges[t + 1] == _inv(self.edges[t]):
                return False
        return True

    def inverse(self):
        if self.trivial:
            return self
        return Walk(self.graph, tuple(_inv(e) for e in reversed(self.edges)))

    def prefix(self, t):
        """The first t written edges."""
        if t == 0:
            return Walk(self.graph, (), base=self.target_vertex)
        return Walk(self.graph, self.edges[:t])

    def render(self):
        if self.trivial:
            return "(trivial at %s)" % self.base
        return " ".join(str(e if s > 0 else -e) for e, s in self.edges)

    def sort_key(self):
        return tuple((e, 0 if s > 0 else 1) for e, s in self.edges)

    def __eq__(self, other):
        return (isinstance(other, Walk) and self.graph is other.graph
                and self.edges == other.edges and self.base == other.base)

    def __hash__(self):
        return hash((self.edges, self.base))

    def __repr__(self):
        return "Walk(%s)" % self.render()


def trivial_walk(g, vertex_id):
    return Walk(g, (), base=vertex_id)


def parse_walk(g, text):
    toks = text.split()
    if not toks:
        raise ValueError("empty walk")
    edges = []
    known = set(g.edges)
    for tok in toks:
        try:
            v = int(tok)
        except ValueError:
            raise UnknownEdge("bad edge token %r" % tok)
        if v == 0 or abs(v) not in known:
            raise UnknownEdge("no edge named %s" % abs(v))
        edges.append((abs(v), 1 if v > 0 else -1))
    return Walk(g, edges)


def deg_step(g, i, j):
    """Degree of a reduced junction: +1 when the incoming half sits above
    the outgoing half (smaller position), -1 below."""
    sh = g.s_half(i)
    th = g.t_half(j)
    if sh[0] != th[0]:
        raise NotConcatenable("junction halves at different vertices")
    if sh == th:
        raise NotReduced("backtracking junction")
    return 1 if sh[1] < th[1] else -1


def _face_deg_step(g, i, j):
    """Same, except a backtracking junction counts -1 (faces may backtrack)."""
    if j == _inv(i):
        return -1
    return deg_step(g, i, j)


def degree(w):
    """Sum of junction degrees; 0 for trivial and single-edge walks."""
    if not w.reduced:
        raise NotReduced("degree is only defined for reduced walks")
    g = w.graph
    return sum(deg_step(g, w.edges[t], w.edges[t + 1])
               for t in range(len(w.edges) - 1))


def incidence_vector(w):
    """Alternating edge-indicator sum, +1 on the first written edge."""
    g = w.graph
    idx = {e: k for k, e in enumerate(g.edges)}
    v = [0] * len(g.edges)
    for t, (e, _) in enumerate(w.edges):
        v[idx[e]] += 1 if t % 2 == 0 else -1
    return tuple(v)


def connecting_path(g, i, j):
    """The chain steps crossed between a junction's halves.

    For a degree +1 junction of i into j this is the run of chain positions
    from just below s_half(i) down to t_half(j); each step is a half-edge
    (vertex index, position) naming one arrow of the chain.  For degree -1
    the run for the reversed pair is returned.
    """
    d = deg_step(g, i, j)
    if d < 0:
        i, j = _inv(j), _inv(i)
    sh = g.s_half(i)
    th = g.t_half(j)
    return d, tuple((sh[0], p) for p in range(sh[1] + 1, th[1] + 1))


def _period(seq):
    n = len(seq)
    for p in range(1, n + 1):
        if n % p == 0 and all(seq[k] == seq[k % p] for k in range(n)):
            return p
    return n


def is_belt(w):
    """First and last written edge coincide, the core is primitive and
    closed, and the total degree vanishes both globally and at the seam."""
    g = w.graph
    e = w.edges
    if len(e) < 3 or e[0] != e[-1] or not w.reduced:
        return False
    core = e[:-1]
    if _period(core) != len(core):
        return False
    if Walk(g, core).source_vertex != Walk(g, core).target_vertex:
        return False
    total = sum(deg_step(g, e[t], e[t + 1]) for t in range(len(e) - 1))
    if total != 0:
        return False
    return deg_step(g, e[-2], e[-1]) + deg_step(g, e[0], e[1]) == 0


def classify_walk(w):
    if not w.reduced:
        return "not-reduced"
    if is_belt(w):
        return "belt"
    if w.closed:
        return "closed-even" if w.length % 2 == 0 else "closed-odd"
    return "open"


# --- anti-walks -----------------------------------------------------------


def anti_walk(g, vertex_id):
    """Greedy descent: start at the vertex's marked half and keep stepping
    to the half directly below the current source half until it is minimal."""
    vi = g.vid_index[vertex_id]
    edges = [g.oriented_with_target((vi, 0))]
    limit = 2 * len(g.half_edge)
    while True:
        sh = g.s_half(edges[-1])
        if sh[1] == g.counts[sh[0]] - 1:
            break
        edges.append(g.oriented_with_target((sh[0], sh[1] + 1)))
        if len(edges) > limit:
            raise AssertionError("descent failed to terminate")
    return Walk(g, edges)


def anti_walks(g):
    """All anti-walks plus the successor map vertex -> source vertex."""
    walks = {v: anti_walk(g, v) for v in g.vertices}
    xi = {v: w.source_vertex for v, w in walks.items()}
    return walks, xi


def to_walk(g, vertex_id):
    """Inverse of the anti-walk at the vertex."""
    return anti_walk(g, vertex_id).inverse()


# --- faces ----------------------------------------------------------------


class Face:
    """One orbit of the successor permutation on oriented edges."""

    __slots__ = ("walk", "is_full", "factors", "deg_closed")

    def __init__(self, walk, is_full, factors, deg_closed):
        self.walk = walk
        self.is_full = is_full
        self.factors = tuple(factors)
        self.deg_closed = deg_closed

    @property
    def length(self):
        return self.walk.length

    @property
    def pair(self):
        ell, d = self.length, self.deg_closed
        if (ell - d) % 2:
            raise AssertionError("odd face defect")
        return ((ell - d) // 2, (ell + d) // 2)

    def __repr__(self):
        return "Face(%s%s)" % (self.walk.render(), ", full" if self.is_full else "")


def _next_oriented(g, i):
    """The edge written directly after i inside its face."""
    return g.oriented_with_target(g.rho_inv(g.s_half(i)))


def _canonical_rotation(edges):
    """Rotation whose traversal-order reading is lexicographically least."""
    def key(rot):
        return tuple((e, 0 if s > 0 else 1)
                     for e, s in reversed(rot))
    n = len(edges)
    best = min(range(n), key=lambda k: key(edges[k:] + edges[:k]))
    return edges[best:] + edges[:best]


def faces(g):
    """All faces, each oriented edge appearing in exactly one of them.

    Non-full faces are recognized as the concatenations of anti-walks along
    an orbit of the source-of-anti-walk map; the rest are full.
    """
    nxt = {i: _next_oriented(g, i) for i in g.oriented_edges()}
    cycles = []
    seen = set()
    for start in g.oriented_edges():
        if start in seen:
            continue
        cyc = [start]
        seen.add(start)
        cur = nxt[start]
        while cur != start:
            cyc.append(cur)
            seen.add(cur)
            cur = nxt[cur]
        cycles.append(tuple(cyc))

    aw, xi = anti_walks(g)
    orbit_faces = {}
    done = set()
    for v in g.vertices:
        if v in done:
            continue
        orbit = [v]
        done.add(v)
        cur = xi[v]
        while cur != v:
            orbit.append(cur)
            done.add(cur)
            cur = xi[cur]
        edges = tuple(e for u in orbit for e in aw[u].edges)
        orbit_faces[frozenset(edges)] = (edges, tuple(orbit))

    out = []
    used_orbits = set()
    for cyc in cycles:
        kset = frozenset(cyc)
        canon = _canonical_rotation(list(cyc))
        if kset in orbit_faces:
            edges, orbit = orbit_faces[kset]
            if _canonical_rotation(list(edges)) != canon:
                raise AssertionError("anti-walk face does not match its orbit")
            used_orbits.add(kset)
            is_full = False
            factors = orbit
        else:
            is_full = True
            factors = ()
        d = sum(_face_deg_step(g, canon[t], canon[(t + 1) % len(canon)])
                for t in range(len(canon)))
        out.append(Face(Walk(g, canon), is_full, factors, d))
    if used_orbits != set(orbit_faces):
        raise AssertionError("an anti-walk orbit failed to appear as a face")
    return out


# --- concatenation and the translation walks ------------------------------


def reduced_concat(w1, w2):
    """Concatenate with maximal cancellation at the junction."""
    if w1.graph is not w2.graph:
        raise ValueError("walks live on different graphs")
    if w1.source_vertex != w2.target_vertex:
        raise NotConcatenable("source of the left walk is %s, target of the "
                              "right walk is %s" % (w1.source_vertex,
                                                    w2.target_vertex))
    if w1.trivial:
        return w2
    if w2.trivial:
        return w1
    e1, e2 = list(w1.edges), list(w2.edges)
    k = 0
    while (k < len(e1) and k < len(e2)
           and e1[len(e1) - 1 - k] == _inv(e2[k])):
        k += 1
    rest = e1[:len(e1) - k] + e2[k:]
    if not rest:
        return trivial_walk(w1.graph, w1.target_vertex)
    return Walk(w1.graph, rest)


class PlusOps:
    __slots__ = ("left_plus", "right_plus", "both_plus", "m_shift")

    def __init__(self, left_plus, right_plus, both_plus, m_shift):
        self.left_plus = left_plus
        self.right_plus = right_plus
        self.both_plus = both_plus
        self.m_shift = m_shift


def plus_ops(w):
    """Extend by the inverse anti-walk at the target and the anti-walk at
    the source; the shift is two less than the target extension's length."""
    if w.trivial:
        raise TrivialInput("translation extensions need a nontrivial walk")
    if not w.reduced:
        raise NotReduced("translation extensions need a reduced walk")
    g = w.graph
    to_t = to_walk(g, w.target_vertex)
    ot_s = anti_walk(g, w.source_vertex)
    left = reduced_concat(to_t, w)
    right = reduced_concat(w, ot_s)
    both = reduced_concat(left, ot_s)
    if both.trivial:
        raise InternalMismatch("two-sided extension collapsed")
    if left.trivial and right.trivial:
        raise InternalMismatch("both one-sided extensions collapsed")
    return PlusOps(left, right, both, to_t.length - 2)


# --- resolvable walks ------------------------------------------------------


class _FaceIndex:
    def __init__(self, g):
        self.full_face_of = {}
        for f in faces(g):
            if f.is_full:
                for t, oe in enumerate(f.walk.edges):
                    self.full_face_of[oe] = (f.walk.edges, t)

    def face_prefix_matches(self, edges):
        """Does the word read along the full face through its first edge?"""
        hit = self.full_face_of.get(edges[0])
        if hit is None:
            return False
        cyc, t0 = hit
        n = len(cyc)
        return all(edges[k] == cyc[(t0 + k) % n] for k in range(len(edges)))


def _left_resolvable(g, edges, fidx):
    if edges[0] not in fidx.full_face_of:
        return False
    cum = 0
    for t in range(len(edges) - 1):
        cum += deg_step(g, edges[t], edges[t + 1])
        if cum < 0:
            return False
    return True


def _left_primitive(g, edges, fidx):
    for s in range(2, len(edges)):
        if (fidx.face_prefix_matches(edges[:s])
                and _left_resolvable(g, edges[s - 1:], fidx)):
            return False
    return True


def resolvable_classify(w, fidx=None):
    """Resolvability of a reduced walk with at least two edges.

    Returns (kind, primitive) with kind one of left / right / two-sided /
    none.  A walk is right resolvable when its inverse is left resolvable,
    and primitivity follows the same duality.
    """
    if not w.reduced:
        raise NotReduced("resolvability needs a reduced walk")
    g = w.graph
    if fidx is None:
        fidx = _FaceIndex(g)
    if w.length < 2:
        return ("none", False)
    fwd = list(w.edges)
    bwd = list(w.inverse().edges)
    left = _left_resolvable(g, fwd, fidx)
    right = _left_resolvable(g, bwd, fidx)
    if left and right:
        prim = _left_primitive(g, fwd, fidx) and _left_primitive(g, bwd, fidx)
        return ("two-sided", prim)
    if left:
        return ("left", _left_primitive(g, fwd, fidx))
    if right:
        return ("right", _left_primitive(g, bwd, fidx))
    return ("none", False)


# --- enumeration -----------------------------------------------------------


def enumerate_reduced_walks(g, max_len):
    """All reduced walks with 1..max_len edges, in a deterministic order."""
    out = []
    extensions = {}
    for vid in g.vertices:
        vi = g.vid_index[vid]
        extensions[vid] = [g.oriented_with_target(h) for h in g.chains[vi]]

    def grow(edges):
        out.append(Walk(g, tuple(edges)))
        if len(edges) == max_len:
            return
        last = edges[-1]
        for nxt in extensions[g.s_vertex(last)]:
            if nxt != _inv(last):
                edges.append(nxt)
                grow(edges)
                edges.pop()

    for start in g.oriented_edges():
        grow([start])
    return out


def enumerate_belts(g, max_core_len):
    """Belts with core length up to the bound, one representative per
    rotation class of the core (inverses are kept: they are genuinely
    different belts)."""
    belts = []
    seen = set()
    for w in enumerate_reduced_walks(g, max_core_len):
        if w.length < 2 or not w.closed:
            continue
        cand = Walk(g, w.edges + (w.edges[0],))
        if not cand.reduced or not is_belt(cand):
            continue
        core = cand.edges[:-1]
        n = len(core)
        key = min(tuple(core[k:] + core[:k]) for k in range(n))
        if key in seen:
            continue
        seen.add(key)
        belts.append(cand)
    return belts


def canonical_walk_rep(m, w):
    """Normalize a shifted walk under inversion: the inverse pair
    (m + degree, inverse walk) represents the same object; keep the
    lexicographically smaller word."""
    wi = w.inverse()
    if wi.sort_key() < w.sort_key():
        return (m + degree(w), wi)
    return (m, w)
