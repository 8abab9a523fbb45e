"""Exact linear solvers: rational elimination and Hermite-normal-form lattice solves.

All routines are deterministic: pivots are chosen leftmost-first and the
HNF is the canonical one (positive pivots, entries above a pivot reduced
into [0, pivot)). Row covector conventions match the certification
module: we solve f * M = w for a row vector f.
"""

from fractions import Fraction

from .errors import UsageError
from .matrix import IntMatrix


def _xgcd(a, b):
    x, nx = 1, 0
    y, ny = 0, 1
    g, ng = a, b
    while ng:
        q = g // ng
        x, nx = nx, x - q * nx
        y, ny = ny, y - q * ny
        g, ng = ng, g - q * ng
    if g < 0:
        x, y, g = -x, -y, -g
    return g, x, y


def row_hnf(m):
    """Row Hermite normal form with its unimodular left transform.

    Returns (H, U, pivots) with U * m = H, U unimodular, pivots the
    pivot column of each nonzero row of H.
    """
    h = [list(row) for row in m.entries]
    u = [[1 if i == j else 0 for j in range(m.rows)] for i in range(m.rows)]
    r = 0
    pivots = []
    for c in range(m.cols):
        if r == m.rows:
            break
        piv = next((i for i in range(r, m.rows) if h[i][c] != 0), None)
        if piv is None:
            continue
        if piv != r:
            h[r], h[piv] = h[piv], h[r]
            u[r], u[piv] = u[piv], u[r]
        for i in range(r + 1, m.rows):
            if h[i][c] == 0:
                continue
            a, b = h[r][c], h[i][c]
            g, x, y = _xgcd(a, b)
            ag, bg = a // g, b // g
            h[r], h[i] = ([x * p + y * q for p, q in zip(h[r], h[i])],
                          [-bg * p + ag * q for p, q in zip(h[r], h[i])])
            u[r], u[i] = ([x * p + y * q for p, q in zip(u[r], u[i])],
                          [-bg * p + ag * q for p, q in zip(u[r], u[i])])
        if h[r][c] < 0:
            h[r] = [-p for p in h[r]]
            u[r] = [-p for p in u[r]]
        for i in range(r):
            q = h[i][c] // h[r][c]
            if q:
                h[i] = [p - q * t for p, t in zip(h[i], h[r])]
                u[i] = [p - q * t for p, t in zip(u[i], u[r])]
        pivots.append(c)
        r += 1
    return (IntMatrix.from_rows(h) if h else IntMatrix(0, m.cols, ()),
            IntMatrix.from_rows(u) if u else IntMatrix(0, 0, ()),
            tuple(pivots))


def solve_left_rational(m, w):
    """Some rational row vector f with f * m = w, or None.

    Plain Fraction Gaussian elimination on the transposed system; used as
    the existence stage before the integral lattice solve.
    """
    if len(w) != m.cols:
        raise UsageError("target length must equal the column count")
    n, rows = m.cols, m.rows
    aug = [[Fraction(m.entries[i][j]) for i in range(rows)] + [Fraction(w[j])]
           for j in range(n)]
    r = 0
    pivots = []
    for c in range(rows):
        piv = next((i for i in range(r, n) if aug[i][c] != 0), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        inv = 1 / aug[r][c]
        aug[r] = [x * inv for x in aug[r]]
        for i in range(n):
            if i != r and aug[i][c] != 0:
                fac = aug[i][c]
                aug[i] = [x - fac * y for x, y in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
        if r == n:
            break
    for i in range(r, n):
        if aug[i][rows] != 0:
            return None
    f = [Fraction(0)] * rows
    for k, c in enumerate(pivots):
        f[c] = aug[k][rows]
    return f


def solve_left_integer(m, w):
    """Canonical integer row vector f with f * m = w, or None.

    Solves over the lattice spanned by the rows of ``m`` using the row
    HNF; coefficients of the kernel rows are fixed to zero, which makes
    the returned solution deterministic.
    """
    if len(w) != m.cols:
        raise UsageError("target length must equal the column count")
    h, u, pivots = row_hnf(m)
    resid = list(w)
    coeffs = [0] * m.rows
    for k, p in enumerate(pivots):
        q, rem = divmod(resid[p], h.entries[k][p])
        if rem:
            return None
        coeffs[k] = q
        if q:
            hk = h.entries[k]
            resid = [resid[j] - q * hk[j] for j in range(m.cols)]
    if any(resid):
        return None
    f = [0] * m.rows
    for k in range(len(pivots)):
        if coeffs[k]:
            uk = u.entries[k]
            for i in range(m.rows):
                f[i] += coeffs[k] * uk[i]
    return tuple(f)


def left_kernel_vector(m):
    """Canonical nonzero integer f with f * m = 0, or None when full row rank."""
    h, u, pivots = row_hnf(m)
    r = len(pivots)
    if r == m.rows:
        return None
    vec = list(u.entries[r])
    lead = next((x for x in vec if x != 0), 0)
    if lead < 0:
        vec = [-x for x in vec]
    return tuple(vec)


def invert_unimodular(m):
    """Exact integer inverse of a square matrix with determinant +-1."""
    if not m.is_square():
        raise UsageError("inverse requires a square matrix")
    n = m.rows
    a = [[Fraction(m.entries[i][j]) for j in range(n)] +
         [Fraction(1 if i == j else 0) for j in range(n)] for i in range(n)]
    for c in range(n):
        piv = next((i for i in range(c, n) if a[i][c] != 0), None)
        if piv is None:
            raise UsageError("matrix is singular")
        a[c], a[piv] = a[piv], a[c]
        inv = 1 / a[c][c]
        a[c] = [x * inv for x in a[c]]
        for i in range(n):
            if i != c and a[i][c] != 0:
                fac = a[i][c]
                a[i] = [x - fac * y for x, y in zip(a[i], a[c])]
    out = [[a[i][n + j] for j in range(n)] for i in range(n)]
    if any(x.denominator != 1 for row in out for x in row):
        raise UsageError("matrix is not unimodular; inverse is not integral")
    return IntMatrix.from_rows([[int(x) for x in row] for row in out])
