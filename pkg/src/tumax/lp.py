"""Exact rational linear feasibility via a phase-1 simplex with Bland's rule.

Everything runs on Fractions; there is no floating point anywhere, so
convex-position decisions are as exact as the determinant computations.
"""

from fractions import Fraction


def feasible_nonneg(a_rows, b):
    """Is {x >= 0 : A x = b} nonempty? Exact phase-1 simplex.

    ``a_rows`` is a dense m x n rational/int matrix, ``b`` a length-m
    vector. Bland's rule (smallest eligible index enters, smallest basis
    index among minimal ratios leaves) guarantees termination.
    """
    m = len(a_rows)
    n = len(a_rows[0]) if m else 0
    tab = []
    rhs = []
    for i in range(m):
        row = [Fraction(x) for x in a_rows[i]]
        bi = Fraction(b[i])
        if bi < 0:
            row = [-x for x in row]
            bi = -bi
        tab.append(row)
        rhs.append(bi)
    basis = [n + i for i in range(m)]  # artificial variables

    while True:
        # reduced costs of the original variables under the artificial
        # objective: z_j = sum of tableau entries over artificial rows
        art_rows = [i for i in range(m) if basis[i] >= n]
        if not art_rows or all(rhs[i] == 0 for i in art_rows):
            return True
        entering = -1
        for j in range(n):
            if sum(tab[i][j] for i in art_rows) > 0:
                entering = j
                break
        if entering < 0:
            return False
        leaving = -1
        best = None
        for i in range(m):
            if tab[i][entering] > 0:
                ratio = rhs[i] / tab[i][entering]
                if best is None or ratio < best or (
                        ratio == best and basis[i] < basis[leaving]):
                    best = ratio
                    leaving = i
        if leaving < 0:
            return False
        piv = tab[leaving][entering]
        tab[leaving] = [x / piv for x in tab[leaving]]
        rhs[leaving] /= piv
        for i in range(m):
            if i != leaving and tab[i][entering] != 0:
                f = tab[i][entering]
                tab[i] = [x - f * y for x, y in zip(tab[i], tab[leaving])]
                rhs[i] -= f * rhs[leaving]
        basis[leaving] = entering


def in_convex_hull(point, points):
    """Exact membership of ``point`` in conv(points)."""
    pts = list(points)
    if not pts:
        return False
    d = len(point)
    a_rows = [[Fraction(q[k]) for q in pts] for k in range(d)]
    a_rows.append([Fraction(1)] * len(pts))
    b = [Fraction(x) for x in point] + [Fraction(1)]
    return feasible_nonneg(a_rows, b)
