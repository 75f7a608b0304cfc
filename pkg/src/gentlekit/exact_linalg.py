"""Exact linear algebra over the integers.

Everything in here works with arbitrary-precision ints (and Fractions for
the short-vector search).  No floats, ever: ranks, determinants and
characteristic polynomials are computed fraction-free so results are exact.
"""

from fractions import Fraction


class NotSquare(ValueError):
    pass


class OddValue(ValueError):
    pass


class IntMatrix:
    """Dense integer matrix, row-major."""

    __slots__ = ("rows", "nrows", "ncols")

    def __init__(self, rows):
        rows = tuple(tuple(int(x) for x in r) for r in rows)
        if rows:
            w = len(rows[0])
            for r in rows:
                if len(r) != w:
                    raise ValueError("ragged rows")
        self.rows = rows
        self.nrows = len(rows)
        self.ncols = len(rows[0]) if rows else 0

    @classmethod
    def zeros(cls, n, m):
        return cls([[0] * m for _ in range(n)])

    @classmethod
    def identity(cls, n):
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def from_columns(cls, cols):
        if not cols:
            return cls([])
        n = len(cols[0])
        return cls([[c[i] for c in cols] for i in range(n)])

    def column(self, j):
        return tuple(r[j] for r in self.rows)

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def transpose(self):
        return IntMatrix([[self.rows[i][j] for i in range(self.nrows)]
                          for j in range(self.ncols)])

    def to_lists(self):
        return [list(r) for r in self.rows]

    def __eq__(self, other):
        return isinstance(other, IntMatrix) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        return "IntMatrix(%r)" % (self.to_lists(),)

    def __add__(self, other):
        self._samesize(other)
        return IntMatrix([[a + b for a, b in zip(r1, r2)]
                          for r1, r2 in zip(self.rows, other.rows)])

    def __sub__(self, other):
        self._samesize(other)
        return IntMatrix([[a - b for a, b in zip(r1, r2)]
                          for r1, r2 in zip(self.rows, other.rows)])

    def __neg__(self):
        return IntMatrix([[-a for a in r] for r in self.rows])

    def _samesize(self, other):
        if self.shape != other.shape:
            raise ValueError("shape mismatch %r vs %r" % (self.shape, other.shape))

    def __mul__(self, other):
        if isinstance(other, int):
            return IntMatrix([[a * other for a in r] for r in self.rows])
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch %r * %r" % (self.shape, other.shape))
        bt = other.transpose().rows
        return IntMatrix([[sum(a * b for a, b in zip(row, col)) for col in bt]
                          for row in self.rows])

    __rmul__ = __mul__

    def apply(self, vec):
        """Matrix times column vector (tuple in, tuple out)."""
        if len(vec) != self.ncols:
            raise ValueError("vector length %d != %d columns" % (len(vec), self.ncols))
        return tuple(sum(a * x for a, x in zip(r, vec)) for r in self.rows)

    def is_symmetric(self):
        return self.nrows == self.ncols and self == self.transpose()


def rank_corank(mat):
    """(rank, corank) with corank counted against the number of columns.

    Fraction-free Gaussian elimination (Bareiss), so exact for any size of
    entry.  The input matrix is not modified.
    """
    a = [list(r) for r in mat.rows]
    n, m = mat.nrows, mat.ncols
    rank = 0
    prev = 1
    row = 0
    for col in range(m):
        piv = None
        for i in range(row, n):
            if a[i][col] != 0:
                piv = i
                break
        if piv is None:
            continue
        a[row], a[piv] = a[piv], a[row]
        p = a[row][col]
        for i in range(row + 1, n):
            for j in range(col + 1, m):
                a[i][j] = (p * a[i][j] - a[i][col] * a[row][j]) // prev
            a[i][col] = 0
        prev = p
        rank += 1
        row += 1
        if row == n:
            break
    return rank, m - rank


def det(mat):
    """Determinant by fraction-free elimination."""
    if mat.nrows != mat.ncols:
        raise NotSquare("determinant of a %r matrix" % (mat.shape,))
    n = mat.nrows
    if n == 0:
        return 1
    a = [list(r) for r in mat.rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            piv = None
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    piv = i
                    break
            if piv is None:
                return 0
            a[k], a[piv] = a[piv], a[k]
            sign = -sign
        p = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (p * a[i][j] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = p
    return sign * a[n - 1][n - 1]


def char_poly(mat):
    """Characteristic polynomial det(z*I - M) as an IntPolynomial.

    Faddeev-LeVerrier recursion; every division is by construction exact
    over the integers, which we assert rather than assume.
    """
    if mat.nrows != mat.ncols:
        raise NotSquare("characteristic polynomial of a %r matrix" % (mat.shape,))
    n = mat.nrows
    coeffs = [0] * (n + 1)
    coeffs[n] = 1
    m_k = IntMatrix.identity(n)
    ident = IntMatrix.identity(n)
    for k in range(1, n + 1):
        m_k = mat * m_k
        tr = sum(m_k.rows[i][i] for i in range(n))
        if tr % k != 0:
            raise AssertionError("inexact trace division in char poly")
        c = -(tr // k)
        coeffs[n - k] = c
        if k < n:
            m_k = m_k + c * ident
    return IntPolynomial(coeffs)


def qform_eval(gram, x):
    """Evaluate the half-integral form x^T * G * x / 2 for symmetric integer G.

    Raises OddValue when x^T G x is odd (the form is then not Z-valued at x).
    """
    if gram.nrows != gram.ncols:
        raise NotSquare("gram matrix of shape %r" % (gram.shape,))
    v = sum(xi * yi for xi, yi in zip(x, gram.apply(x)))
    if v % 2 != 0:
        raise OddValue("form value %d is odd at %r" % (v, tuple(x)))
    return v // 2


class IntPolynomial:
    """Integer polynomial, coefficients stored ascending."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        c = [int(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs = tuple(c)

    @classmethod
    def const(cls, v):
        return cls([v])

    @classmethod
    def monomial(cls, n, c=1):
        return cls([0] * n + [c])

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else -1

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        return isinstance(other, IntPolynomial) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, v in enumerate(b):
            out[i] += v
        return IntPolynomial(out)

    def __neg__(self):
        return IntPolynomial([-v for v in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return IntPolynomial([other * v for v in self.coeffs])
        if not self.coeffs or not other.coeffs:
            return IntPolynomial([])
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative power")
        out = IntPolynomial([1])
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def divexact(self, other):
        """Exact polynomial division; raises if a nonzero remainder appears."""
        if not other.coeffs:
            raise ZeroDivisionError("division by zero polynomial")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            raise ValueError("inexact polynomial division (degree)")
        quot = [0] * (dq + 1)
        lead = other.coeffs[-1]
        for k in range(dq, -1, -1):
            top = rem[k + len(other.coeffs) - 1]
            if top % lead != 0:
                raise ValueError("inexact polynomial division (leading term)")
            q = top // lead
            quot[k] = q
            if q:
                for j, b in enumerate(other.coeffs):
                    rem[k + j] -= q * b
        if any(rem):
            raise ValueError("inexact polynomial division (remainder)")
        return IntPolynomial(quot)

    def eval(self, x):
        v = 0
        for c in reversed(self.coeffs):
            v = v * x + c
        return v

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            if i == 0:
                term = str(abs(c))
            else:
                mag = "" if abs(c) == 1 else str(abs(c)) + "*"
                term = "%sz" % mag if i == 1 else "%sz^%d" % (mag, i)
            if not parts:
                parts.append(term if c > 0 else "-" + term)
            else:
                parts.append(("+ " if c > 0 else "- ") + term)
        return " ".join(parts)

    def __repr__(self):
        return "IntPolynomial(%r)" % (list(self.coeffs),)


def short_vectors(gram, bound):
    """All integer vectors x != 0 with x^T G x <= bound, for G positive definite.

    Exact rational LDL^T decomposition followed by the usual nested interval
    enumeration.  Raises ValueError when G is not positive definite.
    Returns vectors as tuples; for every x only one of x, -x is listed.
    """
    if gram.nrows != gram.ncols:
        raise NotSquare("gram matrix of shape %r" % (gram.shape,))
    n = gram.nrows
    if n == 0:
        return []
    g = [[Fraction(gram.rows[i][j]) for j in range(n)] for i in range(n)]
    d = [Fraction(0)] * n
    u = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        d[i] = g[i][i] - sum(d[k] * u[k][i] * u[k][i] for k in range(i))
        if d[i] <= 0:
            raise ValueError("matrix is not positive definite")
        for j in range(i + 1, n):
            u[i][j] = (g[i][j] - sum(d[k] * u[k][i] * u[k][j] for k in range(i))) / d[i]

    # q(x) = sum_i d[i] * (x_i + sum_{j>i} u[i][j] x_j)^2, scanned from the
    # last coordinate inward.
    out = []
    x = [0] * n

    def scan(i, remaining):
        if i < 0:
            if any(x):
                out.append(tuple(x))
            return
        center = -sum(u[i][j] * x[j] for j in range(i + 1, n))
        # integers t with d[i]*(t - center)^2 <= remaining
        t = int(center)          # floor for positive, trunc otherwise; fixed below
        if Fraction(t) > center:
            t -= 1
        lo = t
        while d[i] * (Fraction(lo) - center) ** 2 <= remaining:
            lo -= 1
        hi = t + 1
        while d[i] * (Fraction(hi) - center) ** 2 <= remaining:
            hi += 1
        for v in range(lo + 1, hi):
            x[i] = v
            scan(i - 1, remaining - d[i] * (Fraction(v) - center) ** 2)
        x[i] = 0

    scan(n - 1, Fraction(bound))
    # keep one representative per +/- pair
    seen = set()
    unique = []
    for v in out:
        if tuple(-a for a in v) in seen:
            continue
        seen.add(v)
        unique.append(v)
    return unique


def root_counts(gram, up_to=2):
    """Counts {v: #x with x^T G x / 2 == v} for 1 <= v <= up_to, G pos. definite.

    Both x and -x are counted, matching a plain box enumeration.
    """
    counts = {v: 0 for v in range(1, up_to + 1)}
    for x in short_vectors(gram, 2 * up_to):
        s = sum(xi * yi for xi, yi in zip(x, gram.apply(x)))
        assert s % 2 == 0
        v = s // 2
        if 1 <= v <= up_to:
            counts[v] += 2
    return counts


def is_positive_semidefinite(mat):
    """Exact test for a symmetric integer matrix.

    det(zI - M) has no negative root iff (-1)^(n-k) c_k >= 0 for every
    coefficient, since the c_k are signed elementary symmetric functions of
    the (real) spectrum.
    """
    if not mat.is_symmetric():
        raise ValueError("semidefiniteness test needs a symmetric matrix")
    p = char_poly(mat)
    n = mat.nrows
    return all((-1) ** (n - k) * c >= 0 for k, c in enumerate(p.coeffs))


def is_positive_definite(mat):
    if not is_positive_semidefinite(mat):
        return False
    return det(mat) != 0
