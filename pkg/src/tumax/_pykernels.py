"""Pure-Python implementations of the exact-arithmetic hot kernels.

The compiled extension ``tumax._ckernels`` exposes the same functions with
the same semantics; :mod:`tumax.kernels` picks whichever is available.
All kernels work on flat row-major lists of Python ints so that the two
backends stay interchangeable.

Storage contract: every *stored* intermediate value must fit a signed
64-bit integer; a value leaving that range raises
:class:`~tumax.errors.ArithmeticOverflow` instead of wrapping.
"""

from itertools import combinations

from .errors import ArithmeticOverflow

BACKEND_NAME = "pure-python"

_LIMIT = 1 << 63


def det_entries(flat, n):
    """Determinant of an n x n integer matrix by fraction-free elimination.

    Leftmost-nonzero pivoting with row-swap sign tracking; the Bareiss
    update keeps all stored values integral.
    """
    if n == 0:
        return 1
    if n == 1:
        return flat[0]
    a = [list(flat[i * n:(i + 1) * n]) for i in range(n)]
    sign = 1
    prev = 1
    for k in range(n - 1):
        p = -1
        for i in range(k, n):
            if a[i][k] != 0:
                p = i
                break
        if p < 0:
            return 0
        if p != k:
            a[k], a[p] = a[p], a[k]
            sign = -sign
        row_k = a[k]
        pk = row_k[k]
        for i in range(k + 1, n):
            row_i = a[i]
            aik = row_i[k]
            for j in range(k + 1, n):
                v = (row_i[j] * pk - aik * row_k[j]) // prev
                if v >= _LIMIT or v <= -_LIMIT:
                    raise ArithmeticOverflow(
                        "intermediate value exceeds 64-bit range in determinant"
                    )
                row_i[j] = v
            row_i[k] = 0
        prev = pk
    return sign * a[n - 1][n - 1]


def rank_entries(flat, rows, cols):
    """Rank over the rationals via fraction-free elimination with column skips."""
    a = [list(flat[i * cols:(i + 1) * cols]) for i in range(rows)]
    r = 0
    prev = 1
    for c in range(cols):
        if r == rows:
            break
        p = -1
        for i in range(r, rows):
            if a[i][c] != 0:
                p = i
                break
        if p < 0:
            continue
        if p != r:
            a[r], a[p] = a[p], a[r]
        row_r = a[r]
        pk = row_r[c]
        for i in range(r + 1, rows):
            row_i = a[i]
            aic = row_i[c]
            for j in range(c + 1, cols):
                v = (row_i[j] * pk - aic * row_r[j]) // prev
                if v >= _LIMIT or v <= -_LIMIT:
                    raise ArithmeticOverflow(
                        "intermediate value exceeds 64-bit range in rank"
                    )
                row_i[j] = v
            row_i[c] = 0
        prev = pk
        r += 1
    return r


def _subdet(flat, cols, rset, cset):
    k = len(rset)
    sub = [flat[i * cols + j] for i in rset for j in cset]
    return det_entries(sub, k)


def tu_violation(flat, rows, cols):
    """First square minor outside {-1,0,1}, or None.

    Scans minors in ascending order; within an order, row index sets then
    column index sets in lexicographic order. Returns (rows, cols, det).
    """
    for i in range(rows):
        base = i * cols
        for j in range(cols):
            e = flat[base + j]
            if e < -1 or e > 1:
                return ((i,), (j,), e)
    for k in range(2, min(rows, cols) + 1):
        for rset in combinations(range(rows), k):
            for cset in combinations(range(cols), k):
                d = _subdet(flat, cols, rset, cset)
                if d < -1 or d > 1:
                    return (rset, cset, d)
    return None


def extension_violation(flat, rows, cols, newcol):
    """First violating minor of (M|v) that uses the appended column v.

    ``flat`` holds M (rows x cols) which the caller guarantees to be TU,
    so only minors through the new column are enumerated. Indices are
    reported in (M|v), i.e. the new column has index ``cols``.
    """
    for i in range(rows):
        e = newcol[i]
        if e < -1 or e > 1:
            return ((i,), (cols,), e)
    for k in range(2, min(rows, cols + 1) + 1):
        for rset in combinations(range(rows), k):
            for cset in combinations(range(cols), k - 1):
                sub = []
                for i in rset:
                    base = i * cols
                    for j in cset:
                        sub.append(flat[base + j])
                    sub.append(newcol[i])
                d = det_entries(sub, k)
                if d < -1 or d > 1:
                    return (rset, cset + (cols,), d)
    return None


def max_tu_subset(m, cand_flat, ncand, use_incremental=True, perms=None,
                  stop_at=-1, node_budget=-1, fixed_first=-1):
    """Depth-first search for a maximum candidate subset forming a TU matrix.

    Candidates are length-m columns, candidate j at
    ``cand_flat[j*m:(j+1)*m]``. Subsets are explored in lexicographic
    index order, so the reported witness is the lexicographically least
    among maximum subsets. Pair-incompatibility (a 2x2 minor outside
    {-1,0,1}) prunes branches in both check modes.

    perms       optional candidate-index permutations; a subset is skipped
                when some permutation maps it to a lex-smaller one.
    stop_at     stop as soon as a subset of this size is found (>=0).
    node_budget abort after this many subset tests (>=0); result is then
                flagged incomplete.
    fixed_first explore only subsets whose smallest index is this value.

    Returns (best_size, witness_indices, nodes, complete).
    """
    cand = [tuple(cand_flat[j * m:(j + 1) * m]) for j in range(ncand)]
    ok1 = [all(-1 <= e <= 1 for e in c) for c in cand]
    compat = [[False] * ncand for _ in range(ncand)]
    for i in range(ncand):
        if not ok1[i]:
            continue
        ci = cand[i]
        for j in range(i + 1, ncand):
            if not ok1[j]:
                continue
            cj = cand[j]
            good = True
            for a in range(m):
                if not good:
                    break
                for b in range(a + 1, m):
                    d = ci[a] * cj[b] - ci[b] * cj[a]
                    if d < -1 or d > 1:
                        good = False
                        break
            compat[i][j] = compat[j][i] = good

    best = 0
    witness = []
    nodes = 0
    budget_hit = False
    target_hit = False
    chosen = []

    def chosen_flat():
        return [cand[idx][r] for r in range(m) for idx in chosen]

    def node_ok(j):
        if use_incremental:
            k = len(chosen)
            flat = chosen_flat()
            return extension_violation(flat, m, k, list(cand[j])) is None
        trial = chosen + [j]
        flat = [cand[idx][r] for r in range(m) for idx in trial]
        return tu_violation(flat, m, len(trial)) is None

    def canonical(sub):
        if not perms:
            return True
        for p in perms:
            t = sorted(p[i] for i in sub)
            if t < sub:
                return False
        return True

    def visit(j, allowed):
        nonlocal best, witness, nodes, budget_hit, target_hit
        if budget_hit or target_hit:
            return
        if node_budget >= 0 and nodes >= node_budget:
            budget_hit = True
            return
        nodes += 1
        if not canonical(chosen + [j]):
            return
        if not node_ok(j):
            return
        chosen.append(j)
        if len(chosen) > best:
            best = len(chosen)
            witness = list(chosen)
            if stop_at >= 0 and best >= stop_at:
                target_hit = True
        if not target_hit:
            child = [allowed[t] and compat[j][t] for t in range(ncand)]
            for t in range(j + 1, ncand):
                if child[t]:
                    visit(t, child)
                if budget_hit or target_hit:
                    break
        chosen.pop()

    roots = [fixed_first] if fixed_first >= 0 else range(ncand)
    for j in roots:
        if ok1[j]:
            visit(j, ok1)
        if budget_hit or target_hit:
            break
    return best, witness, nodes, not budget_hit


def unimodular_violation(pts_flat, npts, d):
    """First (d+1)-point subset spanning a non-unimodular simplex, or None.

    Points are rows of ``pts_flat`` (npts x d). For each (d+1)-subset the
    determinant of the difference vectors is computed; zero means an
    affinely dependent subset (allowed), and any |det| != 1 is returned
    as (index_tuple, det).
    """
    if npts < d + 1:
        return None
    for subset in combinations(range(npts), d + 1):
        i0 = subset[0]
        base = [pts_flat[i0 * d + t] for t in range(d)]
        sub = []
        for i in subset[1:]:
            off = i * d
            for t in range(d):
                sub.append(pts_flat[off + t] - base[t])
        det = det_entries(sub, d)
        if det != 0 and det != 1 and det != -1:
            return (subset, det)
    return None


def canonical_masks(npoints, perms, min_size, max_size):
    """Bitmasks over ``npoints`` points that are canonical under ``perms``.

    A mask is canonical when no permutation maps it to a numerically
    smaller mask. Only masks with popcount in [min_size, max_size] are
    returned, in increasing order.
    """
    nbytes = (npoints + 7) // 8
    tables = []
    for p in perms:
        per_byte = []
        for b in range(nbytes):
            table = [0] * 256
            for v in range(256):
                pm = 0
                x = v
                while x:
                    low = x & -x
                    i = low.bit_length() - 1
                    pm |= 1 << p[8 * b + i]
                    x ^= low
                table[v] = pm
            per_byte.append(table)
        tables.append(per_byte)

    out = []
    for mask in range(1 << npoints):
        pc = bin(mask).count("1")
        if pc < min_size or pc > max_size:
            continue
        is_canon = True
        for per_byte in tables:
            pm = 0
            x = mask
            b = 0
            while x:
                pm |= per_byte[b][x & 255]
                x >>= 8
                b += 1
            if pm < mask:
                is_canon = False
                break
        if is_canon:
            out.append(mask)
    return out
