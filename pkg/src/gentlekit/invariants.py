"""Derived invariants assembled from the combinatorial structures.

Everything here is exact integer arithmetic.  Wherever a quantity is
computable along two genuinely different routes (bipartiteness vs sign
bookkeeping, face enumeration vs thread-orbit pairing, characteristic
polynomial vs the face product formula) both are computed and compared;
a disagreement raises InternalMismatch since it can only mean a bug.
"""

from collections import Counter
from dataclasses import dataclass

from .errors import InternalMismatch
from .exact_linalg import (IntMatrix, IntPolynomial, char_poly, det,
                           is_positive_semidefinite, rank_corank)
from .quiver import cartan_matrix
from .ribbon import (forbidden_ribbon, incidence_matrix, is_bipartite,
                     to_ribbon)
from .walks import anti_walk, faces, incidence_vector


@dataclass
class EulerAnalysis:
    gramProjectives: IntMatrix
    gramSimples: object          # IntMatrix or None for infinite gl.dim
    nabla: int
    rank: int
    corank: int
    dynkinProjectives: str
    dynkinSimples: object        # str or None
    unitInProjectives: bool
    unitInSimples: object        # bool or None
    connectedInSimples: object   # bool or None


def multi_clock(gq):
    """1 when the threads admit alternating directions, else 0.

    Each quiver vertex forces its two covering thread positions to carry
    opposite directions; solvability is checked by a parity union-find,
    independent of the graph two-coloring route.
    """
    parent = {}
    par = {}

    def find(x):
        acc = 0
        while parent[x] != x:
            acc ^= par[x]
            x = parent[x]
        return x, acc

    for th in gq.permitted:
        parent[th.index] = th.index
        par[th.index] = 0
    for v in gq.vertices:
        (t1, _), (t2, _) = gq.halves_at[v]
        r1, p1 = find(t1)
        r2, p2 = find(t2)
        if r1 == r2:
            if p1 == p2:
                return 0
        else:
            parent[r1] = r2
            par[r1] = p1 ^ p2 ^ 1
    return 1


def _connected_support(mat):
    """Is the nonzero pattern of a symmetric matrix connected (all indices)?"""
    n = mat.nrows
    if n == 0:
        return True
    seen = {0}
    stack = [0]
    while stack:
        i = stack.pop()
        for j in range(n):
            if j != i and j not in seen and mat.rows[i][j] != 0:
                seen.add(j)
                stack.append(j)
    return len(seen) == n


def _dynkin_tag(unit, nabla, rank, two_v_minus_a):
    if unit:
        if nabla == 1:
            return "A%d" % rank
        return "D%d" % rank if two_v_minus_a >= 4 else "A%d" % rank
    if nabla != 0:
        raise InternalMismatch("non-unit form with nabla = 1")
    return "C%d" % rank if rank >= 2 else "HalfA1"


def euler_analysis(gq):
    nv = len(gq.vertices)
    na = len(gq.arrows)
    c = cartan_matrix(gq)
    gram = c + c.transpose()
    g = to_ribbon(gq)
    inc = incidence_matrix(g)
    if inc * inc.transpose() != gram:
        raise InternalMismatch("Gram matrix differs from incidence product")
    if not is_positive_semidefinite(gram):
        raise InternalMismatch("projectives Gram matrix is not non-negative")

    nabla = 1 if is_bipartite(g) else 0
    if nabla != multi_clock(gq):
        raise InternalMismatch("bipartiteness and direction parity disagree")
    rank, corank = rank_corank(gram)
    if corank != na - nv + nabla or rank != 2 * nv - na - nabla:
        raise InternalMismatch("rank/corank off the predicted values")

    unit_p = all(gram.rows[i][i] == 2 for i in range(nv))
    dyn_p = _dynkin_tag(unit_p, nabla, rank, 2 * nv - na)

    gram_s = None
    unit_s = None
    conn_s = None
    dyn_s = None
    if gq.global_dimension_finite:
        fr = forbidden_ribbon(gq)
        inc_hat = incidence_matrix(fr.graph, fr.sigma_hat)
        gram_s = inc_hat * inc_hat.transpose()
        if c * gram_s * c.transpose() != gram:
            raise InternalMismatch("simples Gram fails the base-change identity")
        if not is_positive_semidefinite(gram_s):
            raise InternalMismatch("simples Gram matrix is not non-negative")
        unit_s = all(gram_s.rows[i][i] == 2 for i in range(nv))
        conn_s = _connected_support(gram_s)
        if not conn_s:
            dyn_s = "Disconnected"
        else:
            dyn_s = _dynkin_tag(unit_s, nabla, rank, 2 * nv - na)

    return EulerAnalysis(gram, gram_s, nabla, rank, corank, dyn_p, dyn_s,
                         unit_p, unit_s, conn_s)


# --- AAG invariant ---------------------------------------------------------


class AAGInvariant:
    """Multiset of pairs (n, m) with multiplicities."""

    __slots__ = ("pairs",)

    def __init__(self, pairs):
        self.pairs = Counter(pairs)

    def as_sorted_list(self):
        return [[n, m, cnt] for (n, m), cnt in sorted(self.pairs.items())]

    def __eq__(self, other):
        return isinstance(other, AAGInvariant) and self.pairs == other.pairs

    def __hash__(self):
        return hash(frozenset(self.pairs.items()))

    def __str__(self):
        bits = []
        for (n, m), cnt in sorted(self.pairs.items()):
            bits.append("(%d,%d)" % (n, m) + ("x%d" % cnt if cnt > 1 else ""))
        return "{" + ", ".join(bits) + "}"

    def __repr__(self):
        return "AAGInvariant(%s)" % self


def _threads_by_target(threads):
    at = {}
    for th in threads:
        at.setdefault(th.target, []).append(th)
    return at


def _threads_by_source(threads):
    at = {}
    for th in threads:
        at.setdefault(th.source, []).append(th)
    return at


def _match_at_vertex(v, left, right, end_arrow):
    """Pair each thread on the left with the one on the right whose end
    arrow at v differs; exactly one perfect matching may satisfy this."""
    if len(left) != len(right):
        raise InternalMismatch(
            "%d vs %d thread ends at vertex %s" % (len(left), len(right), v))
    if len(left) == 1:
        return {id(left[0]): right[0]}
    if len(left) != 2:
        raise InternalMismatch("%d thread ends at vertex %s" % (len(left), v))
    straight = (end_arrow(left[0]) != end_arrow(right[0])
                and end_arrow(left[1]) != end_arrow(right[1]))
    crossed = (end_arrow(left[0]) != end_arrow(right[1])
               and end_arrow(left[1]) != end_arrow(right[0]))
    if straight == crossed:
        raise InternalMismatch("ambiguous thread pairing at vertex %s" % v)
    if straight:
        return {id(left[0]): right[0], id(left[1]): right[1]}
    return {id(left[0]): right[1], id(left[1]): right[0]}


def _orbit_pairs(gq):
    """The (n, m) pairs read off thread orbits instead of faces.

    A permitted thread is followed by the forbidden thread sharing its
    target but not its last arrow, which is followed by the permitted
    thread sharing the forbidden thread's source but not its first arrow;
    orbits of the composite contribute (orbit size, total forbidden length).
    Relation cycles contribute (0, length) each.
    """
    to_forb = {}
    forb_by_t = _threads_by_target(gq.forbidden)
    for v, perms in _threads_by_target(gq.permitted).items():
        forbs = forb_by_t.get(v, [])
        to_forb.update(_match_at_vertex(v, perms, forbs,
                                        lambda th: th.terminating_arrow))
    to_perm = {}
    perm_by_s = _threads_by_source(gq.permitted)
    for v, forbs in _threads_by_source(gq.forbidden).items():
        perms = perm_by_s.get(v, [])
        to_perm.update(_match_at_vertex(v, forbs, perms,
                                        lambda th: th.initial_arrow))

    pairs = []
    seen = set()
    for th in gq.permitted:
        if id(th) in seen:
            continue
        n = 0
        m = 0
        cur = th
        while id(cur) not in seen:
            seen.add(id(cur))
            n += 1
            f = to_forb[id(cur)]
            m += f.length
            cur = to_perm[id(f)]
        if cur is not th:
            raise InternalMismatch("thread orbit is not closed")
        pairs.append((n, m))
    for cyc in gq.full_cycles:
        pairs.append((0, len(cyc)))
    return pairs


def aag_invariant(gq):
    """Face route cross-checked against the thread-orbit route."""
    g = to_ribbon(gq)
    face_pairs = []
    for f in faces(g):
        n, m = f.pair
        if f.is_full != (n == 0):
            raise InternalMismatch("face fullness disagrees with its n value")
        if not f.is_full and n != len(f.factors):
            raise InternalMismatch("face n differs from its anti-walk count")
        face_pairs.append((n, m))
    via_faces = AAGInvariant(face_pairs)
    via_orbits = AAGInvariant(_orbit_pairs(gq))
    if via_faces != via_orbits:
        raise InternalMismatch("face route %s != orbit route %s"
                               % (via_faces, via_orbits))
    if sum(n * c for (n, _), c in via_faces.pairs.items()) != len(g.vertices):
        raise InternalMismatch("total n does not count the graph vertices")
    if sum(m * c for (_, m), c in via_faces.pairs.items()) != len(gq.arrows):
        raise InternalMismatch("total m does not count the quiver arrows")
    return via_faces


# --- Coxeter transformation ------------------------------------------------


def coxeter(gq):
    """(matrix, characteristic polynomial, product-formula polynomial).

    The matrix is I - J J^tr C^tr with J the column matrix of anti-walk
    incidence vectors; its inverse is I - J J^tr C, which we verify, and
    for finite global dimension C * Psi = -C^tr is verified as well.
    """
    c = cartan_matrix(gq)
    g = to_ribbon(gq)
    j_hat = IntMatrix.from_columns(
        [incidence_vector(anti_walk(g, v)) for v in g.vertices])
    if c.transpose() * j_hat != incidence_matrix(g):
        raise InternalMismatch("anti-walk matrix fails the incidence identity")
    n = len(gq.vertices)
    ident = IntMatrix.identity(n)
    psi = ident - j_hat * j_hat.transpose() * c.transpose()
    if psi * (ident - j_hat * j_hat.transpose() * c) != ident:
        raise InternalMismatch("candidate inverse fails")
    if gq.global_dimension_finite and c * psi != -c.transpose():
        raise InternalMismatch("Coxeter matrix fails -C^tr = C Psi")

    poly = char_poly(psi)
    aag = aag_invariant(gq)
    prod = IntPolynomial.const(1)
    for (nn, mm), cnt in sorted(aag.pairs.items()):
        if nn == 0:
            continue
        factor = IntPolynomial.monomial(nn) - IntPolynomial.const((-1) ** (nn + mm))
        prod = prod * factor ** cnt
    e = len(gq.arrows) - n
    z1 = IntPolynomial([-1, 1])
    if e >= 0:
        from_aag = prod * z1 ** e
    else:
        try:
            from_aag = prod.divexact(z1 ** (-e))
        except ValueError:
            raise InternalMismatch("product formula is not divisible by (z-1)^%d"
                                   % (-e))
    if poly != from_aag:
        raise InternalMismatch("char poly %s != product formula %s"
                               % (poly, from_aag))
    return psi, poly, from_aag


# --- fingerprints ----------------------------------------------------------


@dataclass
class Fingerprint:
    numQVertices: int
    numQArrows: int
    numGVertices: int
    numGEdges: int
    numFaces: int
    bipartite: bool
    nabla: int
    corank: int
    detCartan: int
    aag: AAGInvariant
    coxeterPoly: IntPolynomial
    faceProfile: Counter


FINGERPRINT_FIELDS = ("numQVertices", "numQArrows", "numGVertices",
                      "numGEdges", "numFaces", "bipartite", "nabla",
                      "corank", "detCartan", "aag", "coxeterPoly",
                      "faceProfile")


def fingerprint(gq):
    ea = euler_analysis(gq)
    g = to_ribbon(gq)
    fs = faces(g)
    _, poly, _ = coxeter(gq)
    return Fingerprint(
        numQVertices=len(gq.vertices),
        numQArrows=len(gq.arrows),
        numGVertices=len(g.vertices),
        numGEdges=len(g.edges),
        numFaces=len(fs),
        bipartite=bool(ea.nabla),
        nabla=ea.nabla,
        corank=ea.corank,
        detCartan=det(cartan_matrix(gq)),
        aag=aag_invariant(gq),
        coxeterPoly=poly,
        faceProfile=Counter((f.length, f.deg_closed) for f in fs),
    )


@dataclass
class ComparisonReport:
    verdict: str               # "not derived equivalent" | "inconclusive"
    differing: tuple


def compare(f1, f2):
    diff = tuple(name for name in FINGERPRINT_FIELDS
                 if getattr(f1, name) != getattr(f2, name))
    verdict = "not derived equivalent" if diff else "inconclusive"
    return ComparisonReport(verdict, diff)
