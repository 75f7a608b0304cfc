"""Bound quivers with monomial length-2 relations, and the gentle ones.

A bound quiver here is a finite connected quiver together with a set of
forbidden length-2 paths.  Paths compose right to left: the pair (a, b)
stands for the path "b first, then a", so it requires target(b) == source(a).
A written word a_1 a_2 ... a_k is traversed from a_k down to a_1.

The DSL accepted by parse_quiver:

    # comment
    vertices 1 2 3;
    arrow a1: 1 -> 2;
    rel a2.a1;

Vertex ids are positive integers, arrow names are identifiers.
"""

import re
from collections import namedtuple


class QuiverSyntaxError(ValueError):
    def __init__(self, msg, line, col):
        super().__init__("%s (line %d, column %d)" % (msg, line, col))
        self.line = line
        self.col = col


class QuiverStructureError(ValueError):
    pass


class GentlenessViolation(ValueError):
    pass


class NotAdmissible(ValueError):
    pass


Arrow = namedtuple("Arrow", ["name", "source", "target"])


class BoundQuiver:
    """Vertices, named arrows and a set of forbidden length-2 compositions.

    relations is a set of arrow-name pairs (a, b) meaning "b then a" is
    forbidden; composability target(b) == source(a) is enforced.
    """

    def __init__(self, vertices, arrows, relations):
        self.vertices = tuple(int(v) for v in vertices)
        self.arrows = tuple(Arrow(str(a[0]), int(a[1]), int(a[2])) for a in arrows)
        self.relations = frozenset((str(a), str(b)) for a, b in relations)
        self._validate()

    def _validate(self):
        if len(set(self.vertices)) != len(self.vertices):
            raise QuiverStructureError("duplicate vertex id")
        if not self.vertices:
            raise QuiverStructureError("no vertices declared")
        if not self.arrows:
            raise QuiverStructureError("a bound quiver needs at least one arrow")
        vset = set(self.vertices)
        names = {}
        for a in self.arrows:
            if a.name in names:
                raise QuiverStructureError("duplicate arrow name %r" % a.name)
            names[a.name] = a
            for v in (a.source, a.target):
                if v not in vset:
                    raise QuiverStructureError(
                        "arrow %r references undeclared vertex %d" % (a.name, v))
        for first, second in self.relations:
            if first not in names or second not in names:
                raise QuiverStructureError(
                    "relation %s.%s references an unknown arrow" % (first, second))
            if names[second].target != names[first].source:
                raise QuiverStructureError(
                    "relation %s.%s is not a composable pair" % (first, second))
        # connectivity of the underlying undirected graph
        adj = {v: set() for v in self.vertices}
        for a in self.arrows:
            adj[a.source].add(a.target)
            adj[a.target].add(a.source)
        seen = {self.vertices[0]}
        stack = [self.vertices[0]]
        while stack:
            for w in adj[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        if seen != vset:
            raise QuiverStructureError("quiver is not connected")
        self.arrow_by_name = names
        self.in_arrows = {v: [] for v in self.vertices}
        self.out_arrows = {v: [] for v in self.vertices}
        for a in self.arrows:
            self.out_arrows[a.source].append(a.name)
            self.in_arrows[a.target].append(a.name)

    def source(self, name):
        return self.arrow_by_name[name].source

    def target(self, name):
        return self.arrow_by_name[name].target

    def __eq__(self, other):
        return (isinstance(other, BoundQuiver)
                and self.vertices == other.vertices
                and self.arrows == other.arrows
                and self.relations == other.relations)

    def __repr__(self):
        return "BoundQuiver(%d vertices, %d arrows, %d relations)" % (
            len(self.vertices), len(self.arrows), len(self.relations))


_TOKEN = re.compile(r"[A-Za-z_][A-Za-z0-9_]*|\d+|->|[:;.]")


def _tokenize(text):
    toks = []
    for ln, line in enumerate(text.splitlines(), start=1):
        body = line.split("#", 1)[0]
        pos = 0
        while pos < len(body):
            ch = body[pos]
            if ch.isspace():
                pos += 1
                continue
            m = _TOKEN.match(body, pos)
            if not m:
                raise QuiverSyntaxError("unexpected character %r" % ch, ln, pos + 1)
            toks.append((m.group(0), ln, pos + 1))
            pos = m.end()
    return toks


def parse_quiver(text):
    """Parse the quiver DSL into a BoundQuiver."""
    toks = _tokenize(text)
    i = 0
    vertices = []
    arrows = []
    relations = []

    def peek():
        return toks[i][0] if i < len(toks) else None

    def take(expected=None, what=None):
        nonlocal i
        if i >= len(toks):
            last = toks[-1] if toks else ("", 1, 1)
            raise QuiverSyntaxError("unexpected end of input, expected %s"
                                    % (what or expected), last[1], last[2])
        tok, ln, col = toks[i]
        if expected is not None and tok != expected:
            raise QuiverSyntaxError("expected %r, found %r" % (expected, tok), ln, col)
        i += 1
        return tok, ln, col

    def take_int(what):
        tok, ln, col = take(what=what)
        if not tok.isdigit():
            raise QuiverSyntaxError("expected %s, found %r" % (what, tok), ln, col)
        return int(tok)

    def take_name(what):
        tok, ln, col = take(what=what)
        if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", tok):
            raise QuiverSyntaxError("expected %s, found %r" % (what, tok), ln, col)
        return tok

    while i < len(toks):
        tok, ln, col = toks[i]
        if tok == "vertices":
            i += 1
            if not (peek() or "").isdigit():
                t2, l2, c2 = toks[i] if i < len(toks) else (";", ln, col)
                raise QuiverSyntaxError("expected vertex id, found %r" % t2, l2, c2)
            while (peek() or "").isdigit():
                vertices.append(take_int("vertex id"))
            take(";")
        elif tok == "arrow":
            i += 1
            name = take_name("arrow name")
            take(":")
            src = take_int("source vertex")
            take("->")
            tgt = take_int("target vertex")
            take(";")
            arrows.append((name, src, tgt))
        elif tok == "rel":
            i += 1
            first = take_name("arrow name")
            take(".")
            second = take_name("arrow name")
            take(";")
            relations.append((first, second))
        else:
            raise QuiverSyntaxError("expected 'vertices', 'arrow' or 'rel', found %r"
                                    % tok, ln, col)
    return BoundQuiver(vertices, arrows, relations)


def render_quiver(q):
    """Serialize back to the DSL; parse_quiver(render_quiver(q)) == q."""
    lines = ["vertices %s;" % " ".join(str(v) for v in q.vertices)]
    for a in q.arrows:
        lines.append("arrow %s: %d -> %d;" % (a.name, a.source, a.target))
    for first, second in sorted(q.relations):
        lines.append("rel %s.%s;" % (first, second))
    return "\n".join(lines) + "\n"


class Thread:
    """A maximal word of arrows, or a trivial word sitting at one vertex.

    arrows: written order (last traversed first); vertices: the ell+1 visited
    vertices, index 0 at the target end of the written word.
    """

    __slots__ = ("tid", "arrows", "vertices", "index")

    def __init__(self, tid, arrows, vertices, index):
        self.tid = tid
        self.arrows = tuple(arrows)
        self.vertices = tuple(vertices)
        self.index = index

    @property
    def trivial(self):
        return not self.arrows

    @property
    def length(self):
        return len(self.arrows)

    @property
    def source(self):
        return self.vertices[-1]

    @property
    def target(self):
        return self.vertices[0]

    @property
    def initial_arrow(self):
        """First traversed arrow (None for trivial threads)."""
        return self.arrows[-1] if self.arrows else None

    @property
    def terminating_arrow(self):
        """Last traversed arrow (None for trivial threads)."""
        return self.arrows[0] if self.arrows else None

    def __repr__(self):
        return "Thread(%s: %s)" % (self.tid, " ".join(self.arrows) or "trivial")


class GentleQuiver:
    """A validated gentle bound quiver plus its thread decomposition."""

    def __init__(self, base, permitted, forbidden, full_cycles):
        self.base = base
        self.permitted = tuple(permitted)
        self.forbidden = tuple(forbidden)
        self.full_cycles = tuple(full_cycles)
        self.global_dimension_finite = not self.full_cycles
        # position of each arrow inside its permitted thread, 1-based
        self.permitted_pos = {}
        for th in self.permitted:
            for t, name in enumerate(th.arrows, start=1):
                self.permitted_pos[name] = (th.index, t)
        self.forbidden_pos = {}
        for th in self.forbidden:
            for t, name in enumerate(th.arrows, start=1):
                self.forbidden_pos[name] = (th.index, t)
        # the two permitted half-positions centered at each vertex, sorted
        self.halves_at = _centers(self.permitted, self.base.vertices)

    @property
    def vertices(self):
        return self.base.vertices

    @property
    def arrows(self):
        return self.base.arrows

    @property
    def relations(self):
        return self.base.relations

    def permitted_by_tid(self, tid):
        for th in self.permitted:
            if th.tid == tid:
                return th
        raise KeyError(tid)


def _centers(threads, vertices):
    at = {v: [] for v in vertices}
    for th in threads:
        for pos, v in enumerate(th.vertices):
            at[v].append((th.index, pos))
    for v, lst in at.items():
        if len(lst) != 2:
            raise AssertionError("vertex %s is the center of %d half-positions"
                                 % (v, len(lst)))
        lst.sort()
    return {v: tuple(lst) for v, lst in at.items()}


def _successor_maps(q):
    """Permitted / forbidden traversal successor and predecessor maps."""
    nxt_p, prv_p, nxt_f, prv_f = {}, {}, {}, {}
    for x in q.arrows:
        for y in q.out_arrows[x.target]:
            if (y, x.name) in q.relations:
                nxt_f[x.name] = y
            else:
                nxt_p[x.name] = y
        for y in q.in_arrows[x.source]:
            if (x.name, y) in q.relations:
                prv_f[x.name] = y
            else:
                prv_p[x.name] = y
    return nxt_p, prv_p, nxt_f, prv_f


def _check_gentle(q):
    for v in q.vertices:
        if len(q.out_arrows[v]) > 2:
            raise GentlenessViolation(
                "vertex %d has %d outgoing arrows (condition a)"
                % (v, len(q.out_arrows[v])))
        if len(q.in_arrows[v]) > 2:
            raise GentlenessViolation(
                "vertex %d has %d incoming arrows (condition b)"
                % (v, len(q.in_arrows[v])))
    for x in q.arrows:
        succ_p = [y for y in q.out_arrows[x.target] if (y, x.name) not in q.relations]
        prev_p = [y for y in q.in_arrows[x.source] if (x.name, y) not in q.relations]
        if len(succ_p) > 1 or len(prev_p) > 1:
            raise GentlenessViolation(
                "arrow %s admits two unrelated compositions (condition c)" % x.name)
        succ_f = [y for y in q.out_arrows[x.target] if (y, x.name) in q.relations]
        prev_f = [y for y in q.in_arrows[x.source] if (x.name, y) in q.relations]
        if len(succ_f) > 1 or len(prev_f) > 1:
            raise GentlenessViolation(
                "arrow %s admits two related compositions (condition d)" % x.name)


def _chains(arrow_names, nxt, prv):
    """Maximal chains and cycles of a partial successor map.

    Returns (chains, cycles), both in traversal order.
    """
    in_cycle = set()
    for start in arrow_names:
        if start in in_cycle:
            continue
        seen = {}
        cur = start
        step = 0
        while cur is not None and cur not in seen:
            seen[cur] = step
            step += 1
            cur = nxt.get(cur)
        if cur is not None and cur not in in_cycle:
            cyc = []
            x = cur
            while True:
                cyc.append(x)
                in_cycle.add(x)
                x = nxt[x]
                if x == cur:
                    break
    chains = []
    for start in arrow_names:
        # predecessors of cycle members are cycle members, so a chain starts
        # exactly where no predecessor exists
        if start in in_cycle or prv.get(start) is not None:
            continue
        chain = [start]
        cur = nxt.get(start)
        while cur is not None:
            chain.append(cur)
            cur = nxt.get(cur)
        chains.append(chain)
    cycles = []
    done = set()
    for name in arrow_names:
        if name in in_cycle and name not in done:
            cyc = [name]
            done.add(name)
            x = nxt[name]
            while x != name:
                cyc.append(x)
                done.add(x)
                x = nxt[x]
            cycles.append(cyc)
    return chains, cycles


def _written(q, traversal):
    """Thread word in written order plus its visited vertices."""
    arrows = tuple(reversed(traversal))
    verts = [q.target(arrows[0])]
    for name in arrows:
        verts.append(q.source(name))
    return arrows, tuple(verts)


def _trivial_counts(q, pairs_through):
    """How many trivial threads sit at each vertex: 2 - deg(v) + pairs(v)."""
    counts = {}
    for v in q.vertices:
        deg = len(q.in_arrows[v]) + len(q.out_arrows[v])
        c = 2 - deg + pairs_through[v]
        if c not in (0, 1):
            raise AssertionError("trivial thread count %d at vertex %d" % (c, v))
        counts[v] = c
    return counts


def _sort_threads(q, words, trivial_vertices):
    """Canonical thread order: nontrivial by declaration index of their
    smallest arrow name, then trivial threads by vertex id."""
    decl = {a.name: i for i, a in enumerate(q.arrows)}
    words = sorted(words, key=lambda w: decl[min(w[0])])
    threads = []
    for arrows, verts in words:
        threads.append(Thread(min(arrows), arrows, verts, len(threads)))
    for v in sorted(trivial_vertices):
        threads.append(Thread("triv:%d" % v, (), (v,), len(threads)))
    return threads


def validate_gentle(q):
    """Check gentleness and admissibility, and decompose into threads.

    Raises GentlenessViolation or NotAdmissible; returns a GentleQuiver.
    """
    _check_gentle(q)
    nxt_p, prv_p, nxt_f, prv_f = _successor_maps(q)
    names = [a.name for a in q.arrows]
    p_chains, p_cycles = _chains(names, nxt_p, prv_p)
    if p_cycles:
        raise NotAdmissible("unbounded repeatable cycle through arrows %s"
                            % " ".join(p_cycles[0]))
    perm_pairs = {v: 0 for v in q.vertices}
    forb_pairs = {v: 0 for v in q.vertices}
    for v in q.vertices:
        for b in q.in_arrows[v]:
            for a in q.out_arrows[v]:
                if (a, b) in q.relations:
                    forb_pairs[v] += 1
                else:
                    perm_pairs[v] += 1
    perm_words = [_written(q, tr) for tr in p_chains]
    perm_trivial = [v for v, c in _trivial_counts(q, perm_pairs).items() if c]
    permitted = _sort_threads(q, perm_words, perm_trivial)
    if len(permitted) != 2 * len(q.vertices) - len(q.arrows):
        raise AssertionError("permitted thread count %d, expected %d"
                             % (len(permitted), 2 * len(q.vertices) - len(q.arrows)))

    f_chains, f_cycles = _chains(names, nxt_f, prv_f)
    forb_words = [_written(q, tr) for tr in f_chains]
    forb_trivial = [v for v, c in _trivial_counts(q, forb_pairs).items() if c]
    forbidden = _sort_threads(q, forb_words, forb_trivial)
    cycles = []
    for tr in f_cycles:
        written = tuple(reversed(tr))
        k = written.index(min(written))
        cycles.append(written[k:] + written[:k])
    cycles.sort()
    return GentleQuiver(q, permitted, forbidden, cycles)


def cartan_matrix(gq):
    """Matrix of composable-word counts: entry (j, i) counts words from i to j.

    Column i is the dimension vector of the projective at vertex i.
    """
    from .exact_linalg import IntMatrix

    idx = {v: k for k, v in enumerate(gq.vertices)}
    n = len(gq.vertices)
    c = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    for th in gq.permitted:
        ell = th.length
        for a in range(ell):
            for b in range(a + 1, ell + 1):
                # written subword arrows[a:b] runs from vertices[b] to vertices[a]
                c[idx[th.vertices[a]]][idx[th.vertices[b]]] += 1
    return IntMatrix(c)


class StringFunctionPair:
    """A pair of arrow sign functions compatible with the relation structure."""

    __slots__ = ("S", "T")

    def __init__(self, S, T):
        self.S = dict(S)
        self.T = dict(T)

    def as_tuple(self, q):
        names = [a.name for a in q.arrows]
        return (tuple(self.S[n] for n in names), tuple(self.T[n] for n in names))

    def check(self, q):
        for x in q.arrows:
            for y in q.arrows:
                if x.name >= y.name:
                    continue
                if x.source == y.source and self.S[x.name] == self.S[y.name]:
                    return False
                if x.target == y.target and self.T[x.name] == self.T[y.name]:
                    return False
        for x in q.arrows:
            for y in q.out_arrows[x.target]:
                forbidden = (y, x.name) in q.relations
                if forbidden != (self.T[x.name] == self.S[y]):
                    return False
        return True


def string_functions(gq, direction):
    """Build the sign pair attached to one choice of edge directions.

    direction maps each vertex of the quiver (an edge of the split-thread
    graph) to +1 or -1; +1 selects the reference orientation of that edge.
    """
    for v in gq.vertices:
        if direction.get(v) not in (1, -1):
            raise ValueError("direction must map vertex %s to +1 or -1" % v)
    sigma = {}
    for v, (lo, hi) in gq.halves_at.items():
        sigma[hi] = direction[v]
        sigma[lo] = -direction[v]
    S, T = {}, {}
    for name, (ti, t) in gq.permitted_pos.items():
        S[name] = sigma[(ti, t)]
        T[name] = -sigma[(ti, t - 1)]
    pair = StringFunctionPair(S, T)
    if not pair.check(gq.base):
        raise AssertionError("constructed sign pair violates the constraints")
    return pair


def load_gentle(text):
    """Parse and validate in one go."""
    return validate_gentle(parse_quiver(text))
