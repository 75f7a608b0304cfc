"""Indecomposable perfect complexes encoded as walks.

A reduced walk on the marked ribbon graph of a gentle quiver describes a
complex of projectives: one term per walk edge, placed at the cumulative
junction degree, with maps labelled by the permitted paths crossed at each
junction.  Belts (closed walks with a vanishing degree around the seam)
describe one-parameter families; only the fiber dimension of the companion
automorphism enters any invariant computed here, so it is kept as a number.
"""

from .errors import BoundTooLarge, InternalMismatch
from .exact_linalg import is_positive_definite, qform_eval, root_counts
from .invariants import multi_clock
from .quiver import cartan_matrix
from .ribbon import to_ribbon_with_maps
from .walks import (NotReduced, Walk, classify_walk, connecting_path,
                    enumerate_reduced_walks, incidence_vector, plus_ops)


class StringComplex:
    __slots__ = ("m", "walk", "terms", "maps")

    def __init__(self, m, walk, terms, maps):
        self.m = m
        self.walk = walk
        self.terms = tuple(terms)    # (cohomological degree, projective id)
        self.maps = tuple(maps)      # (from term, to term, path, reversed)

    @property
    def zero(self):
        return not self.terms

    def __repr__(self):
        return "StringComplex(m=%d, %s)" % (self.m, self.walk.render())


class BandComplex:
    __slots__ = ("m", "belt", "d")

    def __init__(self, m, belt, d):
        if classify_walk(belt) != "belt":
            raise ValueError("band complexes need a belt, got %s"
                             % classify_walk(belt))
        if not isinstance(d, int) or d < 1:
            raise ValueError("fiber dimension must be a positive integer")
        self.m = m
        self.belt = belt
        self.d = d

    def __repr__(self):
        return "BandComplex(m=%d, %s, d=%d)" % (self.m, self.belt.render(),
                                                self.d)


def _cumulative_degrees(w):
    from .walks import deg_step

    cum = [0]
    for t in range(len(w.edges) - 1):
        cum.append(cum[-1] + deg_step(w.graph, w.edges[t], w.edges[t + 1]))
    return cum


def build_string_complex(gq, m, w):
    """Unfold a reduced walk into terms and maps; trivial walks give the
    zero complex."""
    if not w.reduced:
        raise NotReduced("string complexes need reduced walks")
    if w.trivial:
        return StringComplex(m, w, (), ())
    g, arrow_half = to_ribbon_with_maps(gq)
    # junction steps are chain positions, so the walk must live on the
    # graph rebuilt from the quiver, not merely an isomorphic copy
    if w.graph.vertices != g.vertices or w.graph.edge_halves != g.edge_halves:
        raise ValueError("walk graph does not match the quiver's own graph; "
                         "take walks on to_ribbon(gq)")
    step_arrow = {half: name for name, half in arrow_half.items()}
    cum = _cumulative_degrees(w)
    terms = [(m + cum[t], w.edges[t][0]) for t in range(len(w.edges))]
    maps = []
    for t in range(len(w.edges) - 1):
        d, steps = connecting_path(w.graph, w.edges[t], w.edges[t + 1])
        path = tuple(step_arrow[h] for h in steps)
        if d > 0:
            maps.append((t, t + 1, path, False))
        else:
            maps.append((t + 1, t, path, True))
    return StringComplex(m, w, terms, maps)


def _alternating_term_sum(g, terms, weight=1):
    idx = {e: k for k, e in enumerate(g.edges)}
    acc = [0] * len(g.edges)
    for degree, proj in terms:
        acc[idx[proj]] += weight * (-1) ** degree
    return tuple(acc)


def k0_class(x):
    """Class in the projectives basis, computed twice (closed formula and
    alternating term sum) and compared."""
    if isinstance(x, StringComplex):
        g = x.walk.graph
        sign = (-1) ** x.m
        direct = tuple(sign * v for v in incidence_vector(x.walk))
        alt = _alternating_term_sum(g, x.terms)
        if direct != alt:
            raise InternalMismatch("string class %r != term sum %r"
                                   % (direct, alt))
        return direct
    if isinstance(x, BandComplex):
        g = x.belt.graph
        core = Walk(g, x.belt.edges[:-1])
        sign = (-1) ** x.m
        direct = tuple(sign * x.d * v for v in incidence_vector(core))
        cum = _cumulative_degrees(x.belt)
        terms = [(x.m + cum[t], x.belt.edges[t][0])
                 for t in range(len(core.edges))]
        alt = _alternating_term_sum(g, terms, weight=x.d)
        if direct != alt:
            raise InternalMismatch("band class %r != term sum %r"
                                   % (direct, alt))
        return direct
    raise TypeError("expected a string or band complex")


# --- root classification (values of the Euler form) ------------------------


class RootClassification:
    __slots__ = ("value", "tag", "note")

    def __init__(self, value, tag, note):
        self.value = value
        self.tag = tag
        self.note = note

    def __repr__(self):
        return "RootClassification(%s, q=%d)" % (self.tag, self.value)


_ROOT_NOTES = {
    "0-root": "class of a band complex or of a string complex over a closed "
              "walk of even length, when such a walk exists",
    "1-root": "class of a string complex over a reduced open walk, when such "
              "a walk exists",
    "2-root": "class of a string complex over a closed walk of odd length, "
              "when such a walk exists",
    "other": "not the class of any indecomposable perfect complex",
}


def root_classify(gq, x):
    c = cartan_matrix(gq)
    val = qform_eval(c + c.transpose(), x)
    tag = {0: "0-root", 1: "1-root", 2: "2-root"}.get(val, "other")
    return RootClassification(val, tag, _ROOT_NOTES[tag])


# --- class enumeration ------------------------------------------------------


class PerfectClasses:
    __slots__ = ("classes", "positive", "saturated", "expected_nonzero",
                 "value_counts")

    def __init__(self, classes, positive, saturated, expected_nonzero,
                 value_counts):
        self.classes = classes
        self.positive = positive
        self.saturated = saturated
        self.expected_nonzero = expected_nonzero
        self.value_counts = value_counts

    def sorted_classes(self):
        return sorted(self.classes)


def enumerate_perfect_classes(gq, max_len=10, hard_limit=10,
                              verify_root_counts=False):
    """All string-complex classes realized by reduced walks up to max_len.

    Each walk contributes its incidence vector with both overall signs
    (the sign is the parity of the shift).  For a positive form the class
    set saturates no later than walk length 2n + 2; verify_root_counts
    additionally checks the saturated counts and the value distribution
    against a short-vector enumeration of the form itself.
    """
    if max_len > hard_limit:
        raise BoundTooLarge("walk length bound %d exceeds the limit %d"
                            % (max_len, hard_limit))
    g, _ = to_ribbon_with_maps(gq)
    c = cartan_matrix(gq)
    gram = c + c.transpose()
    n = len(gq.vertices)
    positive = is_positive_definite(gram)

    length = max_len
    if positive and verify_root_counts:
        length = max(max_len, 2 * n + 2)
    classes = {}
    for w in enumerate_reduced_walks(g, length):
        vec = incidence_vector(w)
        neg = tuple(-v for v in vec)
        if vec not in classes:
            classes[vec] = (0, w)
        if neg not in classes:
            classes[neg] = (1, w)

    value_counts = {}
    for vec in classes:
        val = qform_eval(gram, vec)
        value_counts[val] = value_counts.get(val, 0) + 1

    expected = None
    saturated = None
    if positive:
        expected = n * n + n if multi_clock(gq) == 1 else 2 * n * n
        if verify_root_counts:
            nonzero = sum(cnt for val, cnt in value_counts.items()
                          if val > 0)
            zero_nonnull = [vec for vec in classes
                            if any(vec) and qform_eval(gram, vec) == 0]
            if zero_nonnull:
                raise InternalMismatch("positive form with a nonzero 0-root")
            saturated = nonzero == expected
            if not saturated:
                raise InternalMismatch(
                    "found %d nonzero classes, expected %d" % (nonzero,
                                                               expected))
            oracle = root_counts(gram, up_to=2)
            if multi_clock(gq) == 1:
                if value_counts.get(1, 0) != expected or oracle[1] != expected:
                    raise InternalMismatch("1-root counts disagree")
            else:
                short = 2 * (n * n - n)
                if value_counts.get(1, 0) != short or oracle[1] != short:
                    raise InternalMismatch("1-root counts disagree")
                # the box count of q = 2 vectors exceeds the class count as
                # soon as orthogonal 1-roots can be summed, so only the
                # walk side is pinned down
                if value_counts.get(2, 0) != 2 * n:
                    raise InternalMismatch("2-root counts disagree")
    return PerfectClasses(classes, positive, saturated, expected, value_counts)


# --- Auslander-Reiten translation -------------------------------------------


class ARTriangle:
    __slots__ = ("start", "middle", "end", "shift")

    def __init__(self, start, middle, end, shift):
        self.start = start
        self.middle = tuple(middle)
        self.end = end
        self.shift = shift

    def __repr__(self):
        return "ARTriangle(%r -> %s -> %r)" % (
            self.start, " + ".join(repr(s) for s in self.middle) or "0",
            self.end)


def ar_translate(gq, m, w):
    """Almost split triangle starting at the complex of (m, w)."""
    if not w.reduced:
        raise NotReduced("translation needs a reduced walk")
    ops = plus_ops(w)
    start = build_string_complex(gq, m, w)
    middle = []
    if not ops.left_plus.trivial:
        middle.append(build_string_complex(gq, m + ops.m_shift, ops.left_plus))
    if not ops.right_plus.trivial:
        middle.append(build_string_complex(gq, m, ops.right_plus))
    end = build_string_complex(gq, m + ops.m_shift, ops.both_plus)

    total = list(k0_class(start))
    for s in middle:
        cls = k0_class(s)
        total = [a - b for a, b in zip(total, cls)]
    total = [a + b for a, b in zip(total, k0_class(end))]
    if any(total):
        raise InternalMismatch("triangle classes do not cancel: %r" % (total,))
    return ARTriangle(start, middle, end, ops.m_shift)
