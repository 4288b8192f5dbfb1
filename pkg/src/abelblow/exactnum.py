"""Exact scalars over Q(sqrt(d)) and small exact linear algebra.

Everything here is pure Python built on fractions.Fraction. The matrices
involved never exceed 6x8 or so, hence clarity beats asymptotics throughout.
"""

from __future__ import annotations

from fractions import Fraction


class Quad:
    """A number a + b*sqrt(d) with a, b rational and d a fixed non-square positive int.

    Arithmetic between two Quad values requires matching d unless one operand
    is rational (b == 0), in which case the other operand's d is adopted.
    """

    __slots__ = ("a", "b", "d")

    def __init__(self, a, b=0, d=2):
        self.a = Fraction(a)
        self.b = Fraction(b)
        self.d = int(d)

    def _join(self, other: "Quad") -> int:
        if self.b == 0:
            return other.d
        if other.b == 0:
            return self.d
        if self.d != other.d:
            raise ValueError(f"mixed irrationalities sqrt({self.d}) and sqrt({other.d})")
        return self.d

    @staticmethod
    def coerce(x, d=2) -> "Quad":
        if isinstance(x, Quad):
            return x
        return Quad(Fraction(x), 0, d)

    def __add__(self, other):
        other = Quad.coerce(other, self.d)
        return Quad(self.a + other.a, self.b + other.b, self._join(other))

    __radd__ = __add__

    def __neg__(self):
        return Quad(-self.a, -self.b, self.d)

    def __sub__(self, other):
        return self + (-Quad.coerce(other, self.d))

    def __rsub__(self, other):
        return Quad.coerce(other, self.d) - self

    def __mul__(self, other):
        other = Quad.coerce(other, self.d)
        d = self._join(other)
        return Quad(self.a * other.a + d * self.b * other.b,
                    self.a * other.b + self.b * other.a, d)

    __rmul__ = __mul__

    def inverse(self) -> "Quad":
        # (a + b sqrt(d))^-1 = (a - b sqrt(d)) / (a^2 - d b^2); denominator is
        # nonzero for d non-square unless the value itself is zero.
        den = self.a * self.a - self.d * self.b * self.b
        if den == 0:
            raise ZeroDivisionError("inverse of zero Quad")
        return Quad(self.a / den, -self.b / den, self.d)

    def __truediv__(self, other):
        return self * Quad.coerce(other, self.d).inverse()

    def __rtruediv__(self, other):
        return Quad.coerce(other, self.d) * self.inverse()

    def __eq__(self, other):
        other = Quad.coerce(other, self.d)
        return self.a == other.a and self.b == other.b

    def __hash__(self):
        return hash((self.a, self.b))

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def is_rational(self) -> bool:
        return self.b == 0

    def is_integer(self) -> bool:
        return self.b == 0 and self.a.denominator == 1

    def __float__(self):
        return float(self.a) + float(self.b) * float(self.d) ** 0.5

    def __repr__(self):
        if self.b == 0:
            return f"Quad({self.a})"
        return f"Quad({self.a} + {self.b}*sqrt({self.d}))"


class QC:
    """Complex number with Quad real and imaginary parts."""

    __slots__ = ("re", "im")

    def __init__(self, re, im=0, d=2):
        self.re = Quad.coerce(re, d)
        self.im = Quad.coerce(im, d)

    @staticmethod
    def coerce(x, d=2) -> "QC":
        if isinstance(x, QC):
            return x
        if isinstance(x, complex):
            if x.real != int(x.real) or x.imag != int(x.imag):
                raise TypeError("float complex has no exact representation; build QC explicitly")
            return QC(int(x.real), int(x.imag), d)
        return QC(Quad.coerce(x, d), Quad(0, 0, d), d)

    def __add__(self, other):
        other = QC.coerce(other)
        return QC(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self):
        return QC(-self.re, -self.im)

    def __sub__(self, other):
        return self + (-QC.coerce(other))

    def __mul__(self, other):
        other = QC.coerce(other)
        return QC(self.re * other.re - self.im * other.im,
                  self.re * other.im + self.im * other.re)

    __rmul__ = __mul__

    def conjugate(self) -> "QC":
        return QC(self.re, -self.im)

    def inverse(self) -> "QC":
        n = self.re * self.re + self.im * self.im
        ninv = n.inverse()
        return QC(self.re * ninv, -(self.im * ninv))

    def __truediv__(self, other):
        return self * QC.coerce(other).inverse()

    def __eq__(self, other):
        other = QC.coerce(other)
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def is_zero(self) -> bool:
        return self.re.is_zero() and self.im.is_zero()

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"QC({self.re!r}, {self.im!r})"


def times_i(z: QC) -> QC:
    return QC(-z.im, z.re)


# ----------------------------------------------------------------------------
# Small exact linear algebra.  Matrices are lists of row lists.


def quad_solve(A, b_cols):
    """Solve A x = b for each column in b_cols over Quad; A square nonsingular."""
    n = len(A)
    M = [[Quad.coerce(x) for x in row] + [Quad.coerce(c[i]) for c in b_cols]
         for i, row in enumerate(A)]
    for col in range(n):
        piv = next((r for r in range(col, n) if not M[r][col].is_zero()), None)
        if piv is None:
            raise ZeroDivisionError("singular exact matrix")
        M[col], M[piv] = M[piv], M[col]
        inv = M[col][col].inverse()
        M[col] = [x * inv for x in M[col]]
        for r in range(n):
            if r != col and not M[r][col].is_zero():
                f = M[r][col]
                M[r] = [x - f * y for x, y in zip(M[r], M[col])]
    return [[M[i][n + j] for i in range(n)] for j in range(len(b_cols))]


def quad_det(A) -> Quad:
    n = len(A)
    M = [[Quad.coerce(x) for x in row] for row in A]
    det = Quad(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if not M[r][col].is_zero()), None)
        if piv is None:
            return Quad(0)
        if piv != col:
            M[col], M[piv] = M[piv], M[col]
            det = -det
        det = det * M[col][col]
        inv = M[col][col].inverse()
        for r in range(col + 1, n):
            if not M[r][col].is_zero():
                f = M[r][col] * inv
                M[r] = [x - f * y for x, y in zip(M[r], M[col])]
    return det


def qc_det3(M) -> QC:
    a, b, c = M[0]
    d, e, f = M[1]
    g, h, i = M[2]
    return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)


def qc_rank(M) -> int:
    """Rank of a matrix of QC entries (list of rows)."""
    rows = [list(r) for r in M]
    ncols = len(rows[0]) if rows else 0
    rank = 0
    for col in range(ncols):
        piv = next((r for r in range(rank, len(rows)) if not rows[r][col].is_zero()), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = rows[rank][col].inverse()
        rows[rank] = [x * inv for x in rows[rank]]
        for r in range(len(rows)):
            if r != rank and not rows[r][col].is_zero():
                f = rows[r][col]
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[rank])]
        rank += 1
    return rank


def frac_nullspace(M):
    """Rational nullspace basis of a matrix of Fractions (list of rows).

    Returns a list of Fraction vectors in the canonical free-variable form.
    """
    if not M:
        return []
    rows = [[Fraction(x) for x in r] for r in M]
    ncols = len(rows[0])
    pivots = []
    rank = 0
    for col in range(ncols):
        piv = next((r for r in range(rank, len(rows)) if rows[r][col] != 0), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = 1 / rows[rank][col]
        rows[rank] = [x * inv for x in rows[rank]]
        for r in range(len(rows)):
            if r != rank and rows[r][col] != 0:
                f = rows[r][col]
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[rank])]
        pivots.append(col)
        rank += 1
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -rows[r][fc]
        basis.append(v)
    return basis


def frac_to_primitive_int(v):
    """Scale a rational vector to a primitive integer vector with positive leading entry."""
    from math import gcd, lcm

    dens = [x.denominator for x in v]
    m = 1
    for d in dens:
        m = lcm(m, d)
    ints = [int(x * m) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, abs(x))
    if g > 1:
        ints = [x // g for x in ints]
    lead = next((x for x in ints if x != 0), 0)
    if lead < 0:
        ints = [-x for x in ints]
    return ints


# ----------------------------------------------------------------------------
# Integer matrices: Hermite normal form and LLL reduction.


def hnf_rows(M):
    """Canonical row-style Hermite normal form.

    Input: iterable of integer rows. Output: tuple of the nonzero rows of the
    HNF (pivots positive, entries above each pivot reduced into [0, pivot)),
    which is a canonical representative of the row span over Z.
    """
    rows = [list(map(int, r)) for r in M]
    if not rows:
        return ()
    m, n = len(rows), len(rows[0])
    r = 0
    for c in range(n):
        if r == m:
            break
        while True:
            nz = [i for i in range(r, m) if rows[i][c] != 0]
            if not nz:
                break
            piv = min(nz, key=lambda i: (abs(rows[i][c]), i))
            rows[r], rows[piv] = rows[piv], rows[r]
            done = True
            for i in range(r + 1, m):
                if rows[i][c] != 0:
                    q = rows[i][c] // rows[r][c]
                    rows[i] = [a - q * b for a, b in zip(rows[i], rows[r])]
                    if rows[i][c] != 0:
                        done = False
            if done:
                break
        if rows[r][c] != 0:
            if rows[r][c] < 0:
                rows[r] = [-a for a in rows[r]]
            for i in range(r):
                q = rows[i][c] // rows[r][c]
                if q != 0:
                    rows[i] = [a - q * b for a, b in zip(rows[i], rows[r])]
            r += 1
    return tuple(tuple(row) for row in rows[:r])


def lll_reduce(basis):
    """LLL-reduce integer row vectors (all-integer algorithm, delta = 3/4).

    Zero rows are dropped; the rows must be linearly independent (our callers
    always pass bases containing an identity block).  Returns the reduced rows,
    spanning the same integer lattice.
    """
    b = [list(map(int, v)) for v in basis if any(v)]
    n = len(b)
    if n <= 1:
        return b

    def dot(u, v):
        return sum(x * y for x, y in zip(u, v))

    # All-integer Gram-Schmidt state: d[0]=1, d[i+1] = Gram determinant of the
    # first i+1 rows, lam[i][j] = mu[i][j] * d[j+1].  All divisions are exact.
    d = [0] * (n + 1)
    d[0] = 1
    lam = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1):
            u = dot(b[i], b[j])
            for k in range(j):
                u = (d[k + 1] * u - lam[i][k] * lam[j][k]) // d[k]
            if j < i:
                lam[i][j] = u
            else:
                d[i + 1] = u
    if any(x <= 0 for x in d[1:]):
        raise ValueError("lll_reduce requires linearly independent rows")

    def size_reduce(k, l):
        if 2 * abs(lam[k][l]) > d[l + 1]:
            q = (2 * lam[k][l] + d[l + 1]) // (2 * d[l + 1])
            b[k] = [a - q * c for a, c in zip(b[k], b[l])]
            lam[k][l] -= q * d[l + 1]
            for i in range(l):
                lam[k][i] -= q * lam[l][i]

    k = 1
    while k < n:
        size_reduce(k, k - 1)
        if 4 * d[k + 1] * d[k - 1] < 3 * d[k] ** 2 - 4 * lam[k][k - 1] ** 2:
            # swap rows k-1 and k, updating the integer GS state in place
            b[k], b[k - 1] = b[k - 1], b[k]
            for j in range(k - 1):
                lam[k][j], lam[k - 1][j] = lam[k - 1][j], lam[k][j]
            l = lam[k][k - 1]
            bk = (d[k - 1] * d[k + 1] + l * l) // d[k]
            for i in range(k + 1, n):
                t = lam[i][k]
                lam[i][k] = (d[k + 1] * lam[i][k - 1] - l * t) // d[k]
                lam[i][k - 1] = (bk * t + l * lam[i][k]) // d[k + 1]
            d[k] = bk
            k = max(k - 1, 1)
        else:
            for l in range(k - 2, -1, -1):
                size_reduce(k, l)
            k += 1
    return b
