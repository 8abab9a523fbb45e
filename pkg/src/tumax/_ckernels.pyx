# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled twins of the pure-Python kernels in ``tumax._pykernels``.

Fast paths run on C int64 with __int128 temporaries and are entered only
when a Hadamard bound proves every stored intermediate fits 64 bits;
anything larger is delegated to the pure implementation, which performs
per-value overflow checks. Enumeration orders match the pure backend
exactly, so witnesses and search results are identical.
"""

from libc.stdlib cimport free, malloc

from tumax import _pykernels as _py

BACKEND_NAME = "compiled"

cdef extern from *:
    ctypedef long long i128 "__int128"


cdef inline bint _hadamard_safe(long long n, object maxabs):
    # stored minors are bounded by ((n * maxabs^2) ** n) ** 0.5; require
    # that bound below 2^60 so int128 products cannot overflow
    if n <= 1:
        return True
    return (n * maxabs * maxabs) ** n < (1 << 120)


cdef long long _det_ll(long long* a, int n):
    cdef int i, j, k, p
    cdef long long sign = 1, prev = 1, pk, aik, tmp
    cdef i128 t
    if n == 0:
        return 1
    for k in range(n - 1):
        p = -1
        for i in range(k, n):
            if a[i * n + k] != 0:
                p = i
                break
        if p < 0:
            return 0
        if p != k:
            for j in range(n):
                tmp = a[k * n + j]
                a[k * n + j] = a[p * n + j]
                a[p * n + j] = tmp
            sign = -sign
        pk = a[k * n + k]
        for i in range(k + 1, n):
            aik = a[i * n + k]
            for j in range(k + 1, n):
                t = <i128> a[i * n + j] * pk - <i128> aik * a[k * n + j]
                a[i * n + j] = <long long> (t / prev)
            a[i * n + k] = 0
        prev = pk
    return sign * a[(n - 1) * n + (n - 1)]


def det_entries(flat, int n):
    """Exact determinant; falls back to the checked pure path when the
    Hadamard bound does not certify 64-bit safety."""
    cdef int i
    cdef long long* a
    cdef long long result
    if n <= 1:
        return 1 if n == 0 else flat[0]
    maxabs = 0
    for v in flat:
        av = -v if v < 0 else v
        if av > maxabs:
            maxabs = av
    if not _hadamard_safe(n, maxabs):
        return _py.det_entries(flat, n)
    a = <long long*> malloc(n * n * sizeof(long long))
    if a == NULL:
        raise MemoryError()
    try:
        for i in range(n * n):
            a[i] = flat[i]
        result = _det_ll(a, n)
    finally:
        free(a)
    return result


def rank_entries(flat, int rows, int cols):
    """Rank over the rationals; column-skipping fraction-free elimination."""
    cdef int i, j, c, p, r
    cdef long long pk, aic, tmp
    cdef i128 t
    cdef long long prev = 1
    cdef long long* a
    if rows == 0 or cols == 0:
        return 0
    maxabs = 0
    for v in flat:
        av = -v if v < 0 else v
        if av > maxabs:
            maxabs = av
    if not _hadamard_safe(min(rows, cols), maxabs):
        return _py.rank_entries(flat, rows, cols)
    a = <long long*> malloc(rows * cols * sizeof(long long))
    if a == NULL:
        raise MemoryError()
    try:
        for i in range(rows * cols):
            a[i] = flat[i]
        r = 0
        for c in range(cols):
            if r == rows:
                break
            p = -1
            for i in range(r, rows):
                if a[i * cols + c] != 0:
                    p = i
                    break
            if p < 0:
                continue
            if p != r:
                for j in range(cols):
                    tmp = a[r * cols + j]
                    a[r * cols + j] = a[p * cols + j]
                    a[p * cols + j] = tmp
            pk = a[r * cols + c]
            for i in range(r + 1, rows):
                aic = a[i * cols + c]
                for j in range(c + 1, cols):
                    t = <i128> a[i * cols + j] * pk - <i128> aic * a[r * cols + j]
                    a[i * cols + j] = <long long> (t / prev)
                a[i * cols + c] = 0
            prev = pk
            r += 1
        return r
    finally:
        free(a)


cdef inline bint _next_comb(int* c, int k, int n):
    cdef int i = k - 1, j
    while i >= 0 and c[i] == n - k + i:
        i -= 1
    if i < 0:
        return False
    c[i] += 1
    for j in range(i + 1, k):
        c[j] = c[j - 1] + 1
    return True


def tu_violation(flat, int rows, int cols):
    """First square minor outside {-1,0,1}; order matches the pure backend."""
    cdef int i, j, k, t, kmax
    cdef long long d
    cdef long long* a
    cdef long long* sub
    cdef int* rs
    cdef int* cs
    # object-mode entry scan catches values that cannot be C-converted
    for i in range(rows):
        for j in range(cols):
            e = flat[i * cols + j]
            if e < -1 or e > 1:
                return ((i,), (j,), e)
    kmax = rows if rows < cols else cols
    if kmax < 2:
        return None
    a = <long long*> malloc(rows * cols * sizeof(long long))
    sub = <long long*> malloc(kmax * kmax * sizeof(long long))
    rs = <int*> malloc(kmax * sizeof(int))
    cs = <int*> malloc(kmax * sizeof(int))
    if a == NULL or sub == NULL or rs == NULL or cs == NULL:
        raise MemoryError()
    try:
        for i in range(rows * cols):
            a[i] = flat[i]
        for k in range(2, kmax + 1):
            for i in range(k):
                rs[i] = i
            while True:
                for i in range(k):
                    cs[i] = i
                while True:
                    for i in range(k):
                        for j in range(k):
                            sub[i * k + j] = a[rs[i] * cols + cs[j]]
                    d = _det_ll(sub, k)
                    if d < -1 or d > 1:
                        return (tuple([rs[t] for t in range(k)]),
                                tuple([cs[t] for t in range(k)]), d)
                    if not _next_comb(cs, k, cols):
                        break
                if not _next_comb(rs, k, rows):
                    break
        return None
    finally:
        free(a)
        free(sub)
        free(rs)
        free(cs)


def extension_violation(flat, int rows, int cols, newcol):
    """First violating minor of (M|v) using the appended column v."""
    cdef int i, j, k, t, kmax
    cdef long long d
    cdef long long* a
    cdef long long* nc
    cdef long long* sub
    cdef int* rs
    cdef int* cs
    for i in range(rows):
        e = newcol[i]
        if e < -1 or e > 1:
            return ((i,), (cols,), e)
    kmax = rows if rows < cols + 1 else cols + 1
    if kmax < 2:
        return None
    a = <long long*> malloc((rows * cols + 1) * sizeof(long long))
    nc = <long long*> malloc(rows * sizeof(long long))
    sub = <long long*> malloc(kmax * kmax * sizeof(long long))
    rs = <int*> malloc(kmax * sizeof(int))
    cs = <int*> malloc(kmax * sizeof(int))
    if a == NULL or nc == NULL or sub == NULL or rs == NULL or cs == NULL:
        raise MemoryError()
    try:
        for i in range(rows * cols):
            a[i] = flat[i]
        for i in range(rows):
            nc[i] = newcol[i]
        for k in range(2, kmax + 1):
            for i in range(k):
                rs[i] = i
            while True:
                for i in range(k - 1):
                    cs[i] = i
                while True:
                    for i in range(k):
                        for j in range(k - 1):
                            sub[i * k + j] = a[rs[i] * cols + cs[j]]
                        sub[i * k + k - 1] = nc[rs[i]]
                    d = _det_ll(sub, k)
                    if d < -1 or d > 1:
                        return (tuple([rs[t] for t in range(k)]),
                                tuple([cs[t] for t in range(k - 1)]) + (cols,),
                                d)
                    if k == 1 or not _next_comb(cs, k - 1, cols):
                        break
                if not _next_comb(rs, k, rows):
                    break
        return None
    finally:
        free(a)
        free(nc)
        free(sub)
        free(rs)
        free(cs)


cdef class _Ctx:
    cdef long long* cand
    cdef unsigned char* compat
    cdef int* chosen
    cdef long long* cur
    cdef unsigned char* allowed
    cdef int* perms
    cdef int* ptmp
    cdef long long* sub
    cdef int* rs
    cdef int* cs
    cdef int ncand, m, nperms, stop_at, best, depth
    cdef long long node_budget, nodes
    cdef bint use_incremental, budget_hit, target_hit
    cdef list witness

    def __cinit__(self):
        self.cand = NULL
        self.compat = NULL
        self.chosen = NULL
        self.cur = NULL
        self.allowed = NULL
        self.perms = NULL
        self.ptmp = NULL
        self.sub = NULL
        self.rs = NULL
        self.cs = NULL

    def __dealloc__(self):
        free(self.cand)
        free(self.compat)
        free(self.chosen)
        free(self.cur)
        free(self.allowed)
        free(self.perms)
        free(self.ptmp)
        free(self.sub)
        free(self.rs)
        free(self.cs)


cdef bint _canonical(_Ctx ctx, int k):
    cdef int p, i, j, v
    cdef int* base
    cdef bint smaller
    for p in range(ctx.nperms):
        base = ctx.perms + p * ctx.ncand
        for i in range(k):
            v = base[ctx.chosen[i]]
            j = i
            while j > 0 and ctx.ptmp[j - 1] > v:
                ctx.ptmp[j] = ctx.ptmp[j - 1]
                j -= 1
            ctx.ptmp[j] = v
        for i in range(k):
            if ctx.ptmp[i] < ctx.chosen[i]:
                return False
            if ctx.ptmp[i] > ctx.chosen[i]:
                break
    return True


cdef bint _ext_ok(_Ctx ctx, int jcand):
    cdef int m = ctx.m, k = ctx.depth
    cdef int order, i, j, omax
    cdef long long d
    cdef long long* newcol = ctx.cand + jcand * m
    omax = m if m < k + 1 else k + 1
    for order in range(2, omax + 1):
        for i in range(order):
            ctx.rs[i] = i
        while True:
            for i in range(order - 1):
                ctx.cs[i] = i
            while True:
                for i in range(order):
                    for j in range(order - 1):
                        ctx.sub[i * order + j] = ctx.cur[ctx.cs[j] * m + ctx.rs[i]]
                    ctx.sub[i * order + order - 1] = newcol[ctx.rs[i]]
                d = _det_ll(ctx.sub, order)
                if d < -1 or d > 1:
                    return False
                if not _next_comb(ctx.cs, order - 1, k):
                    break
            if not _next_comb(ctx.rs, order, m):
                break
    return True


cdef bint _full_ok(_Ctx ctx, int jcand):
    # TU test of the whole chosen-plus-j matrix (no incremental shortcut)
    cdef int m = ctx.m, k = ctx.depth + 1
    cdef int order, i, j, omax
    cdef long long d
    cdef long long v
    omax = m if m < k else k
    for order in range(2, omax + 1):
        for i in range(order):
            ctx.rs[i] = i
        while True:
            for i in range(order):
                ctx.cs[i] = i
            while True:
                for i in range(order):
                    for j in range(order):
                        if ctx.cs[j] < ctx.depth:
                            v = ctx.cur[ctx.cs[j] * m + ctx.rs[i]]
                        else:
                            v = ctx.cand[jcand * m + ctx.rs[i]]
                        ctx.sub[i * order + j] = v
                d = _det_ll(ctx.sub, order)
                if d < -1 or d > 1:
                    return False
                if not _next_comb(ctx.cs, order, k):
                    break
            if not _next_comb(ctx.rs, order, m):
                break
    return True


cdef void _visit(_Ctx ctx, int j, int alevel):
    cdef int k, r, t
    cdef bint ok
    cdef unsigned char* allowed
    cdef unsigned char* child
    if ctx.budget_hit or ctx.target_hit:
        return
    if ctx.node_budget >= 0 and ctx.nodes >= ctx.node_budget:
        ctx.budget_hit = True
        return
    ctx.nodes += 1
    k = ctx.depth
    ctx.chosen[k] = j
    if not _canonical(ctx, k + 1):
        return
    if ctx.use_incremental:
        ok = _ext_ok(ctx, j)
    else:
        ok = _full_ok(ctx, j)
    if not ok:
        return
    for r in range(ctx.m):
        ctx.cur[k * ctx.m + r] = ctx.cand[j * ctx.m + r]
    ctx.depth = k + 1
    if ctx.depth > ctx.best:
        ctx.best = ctx.depth
        ctx.witness = [ctx.chosen[t] for t in range(ctx.depth)]
        if ctx.stop_at >= 0 and ctx.best >= ctx.stop_at:
            ctx.target_hit = True
    if not ctx.target_hit:
        allowed = ctx.allowed + alevel * ctx.ncand
        child = ctx.allowed + (alevel + 1) * ctx.ncand
        for t in range(ctx.ncand):
            child[t] = allowed[t] and ctx.compat[j * ctx.ncand + t]
        for t in range(j + 1, ctx.ncand):
            if child[t]:
                _visit(ctx, t, alevel + 1)
            if ctx.budget_hit or ctx.target_hit:
                break
    ctx.depth = k


def max_tu_subset(int m, cand_flat, int ncand, use_incremental=True,
                  perms=None, int stop_at=-1, node_budget=-1,
                  int fixed_first=-1):
    """DFS for a maximum TU column subset; see the pure backend docstring."""
    cdef int i, j, a, b
    cdef long long d
    cdef _Ctx ctx
    if m > 26:
        return _py.max_tu_subset(m, cand_flat, ncand, use_incremental,
                                 perms, stop_at, node_budget, fixed_first)
    ok1 = []
    for j in range(ncand):
        good = True
        for i in range(m):
            e = cand_flat[j * m + i]
            if e < -1 or e > 1:
                good = False
                break
        ok1.append(good)
    ctx = _Ctx()
    ctx.m = m
    ctx.ncand = ncand
    ctx.use_incremental = bool(use_incremental)
    ctx.stop_at = stop_at
    ctx.node_budget = node_budget
    ctx.best = 0
    ctx.witness = []
    ctx.nodes = 0
    ctx.budget_hit = False
    ctx.target_hit = False
    ctx.depth = 0
    ctx.cand = <long long*> malloc(max(1, ncand * m) * sizeof(long long))
    ctx.compat = <unsigned char*> malloc(max(1, ncand * ncand))
    ctx.chosen = <int*> malloc(max(1, ncand) * sizeof(int))
    ctx.cur = <long long*> malloc(max(1, ncand * m) * sizeof(long long))
    ctx.allowed = <unsigned char*> malloc(max(1, (ncand + 2) * ncand))
    ctx.ptmp = <int*> malloc(max(1, ncand) * sizeof(int))
    ctx.sub = <long long*> malloc(max(1, (m + 1) * (m + 1)) * sizeof(long long))
    ctx.rs = <int*> malloc(max(1, m + 1) * sizeof(int))
    ctx.cs = <int*> malloc(max(1, m + 1) * sizeof(int))
    if (ctx.cand == NULL or ctx.compat == NULL or ctx.chosen == NULL
            or ctx.cur == NULL or ctx.allowed == NULL or ctx.ptmp == NULL
            or ctx.sub == NULL or ctx.rs == NULL or ctx.cs == NULL):
        raise MemoryError()
    for j in range(ncand):
        for i in range(m):
            ctx.cand[j * m + i] = cand_flat[j * m + i] if ok1[j] else 0
    if perms:
        ctx.nperms = len(perms)
        ctx.perms = <int*> malloc(max(1, ctx.nperms * ncand) * sizeof(int))
        if ctx.perms == NULL:
            raise MemoryError()
        for i, p in enumerate(perms):
            for j in range(ncand):
                ctx.perms[i * ncand + j] = p[j]
    else:
        ctx.nperms = 0
    for i in range(ncand):
        ctx.compat[i * ncand + i] = 0
        if not ok1[i]:
            for j in range(ncand):
                ctx.compat[i * ncand + j] = 0
                ctx.compat[j * ncand + i] = 0
            continue
        for j in range(i + 1, ncand):
            if not ok1[j]:
                continue
            good = True
            for a in range(m):
                if not good:
                    break
                for b in range(a + 1, m):
                    d = (ctx.cand[i * m + a] * ctx.cand[j * m + b]
                         - ctx.cand[i * m + b] * ctx.cand[j * m + a])
                    if d < -1 or d > 1:
                        good = False
                        break
            ctx.compat[i * ncand + j] = 1 if good else 0
            ctx.compat[j * ncand + i] = 1 if good else 0
    for j in range(ncand):
        ctx.allowed[j] = 1 if ok1[j] else 0
    roots = [fixed_first] if fixed_first >= 0 else list(range(ncand))
    for j in roots:
        if ok1[j]:
            _visit(ctx, j, 0)
        if ctx.budget_hit or ctx.target_hit:
            break
    return ctx.best, list(ctx.witness), ctx.nodes, not ctx.budget_hit


def unimodular_violation(pts_flat, int npts, int d):
    """First non-unimodular affinely independent (d+1)-subset, or None."""
    cdef int i, j, t
    cdef long long det
    cdef long long* pts
    cdef long long* sub
    cdef int* cs
    if npts < d + 1:
        return None
    maxabs = 0
    for v in pts_flat:
        av = -v if v < 0 else v
        if av > maxabs:
            maxabs = av
    if not _hadamard_safe(d, 2 * maxabs):
        return _py.unimodular_violation(pts_flat, npts, d)
    pts = <long long*> malloc(npts * d * sizeof(long long))
    sub = <long long*> malloc(max(1, d * d) * sizeof(long long))
    cs = <int*> malloc((d + 1) * sizeof(int))
    if pts == NULL or sub == NULL or cs == NULL:
        raise MemoryError()
    try:
        for i in range(npts * d):
            pts[i] = pts_flat[i]
        for i in range(d + 1):
            cs[i] = i
        while True:
            for i in range(d):
                for t in range(d):
                    sub[i * d + t] = (pts[cs[i + 1] * d + t]
                                      - pts[cs[0] * d + t])
            det = _det_ll(sub, d)
            if det != 0 and det != 1 and det != -1:
                return (tuple([cs[j] for j in range(d + 1)]), det)
            if not _next_comb(cs, d + 1, npts):
                break
        return None
    finally:
        free(pts)
        free(sub)
        free(cs)


def canonical_masks(int npoints, perms, int min_size, int max_size):
    """Masks canonical under the given point-index permutations."""
    cdef int nperms = len(perms)
    cdef int i, p, b
    cdef unsigned long long mask, pm, x, top
    cdef int* parr
    if npoints > 25:
        return _py.canonical_masks(npoints, perms, min_size, max_size)
    parr = <int*> malloc(max(1, nperms * npoints) * sizeof(int))
    if parr == NULL:
        raise MemoryError()
    out = []
    try:
        for p in range(nperms):
            row = perms[p]
            for i in range(npoints):
                parr[p * npoints + i] = row[i]
        top = 1
        top <<= npoints
        mask = 0
        while mask < top:
            x = mask
            b = 0
            while x:
                b += <int> (x & 1)
                x >>= 1
            if min_size <= b <= max_size:
                ok = True
                for p in range(nperms):
                    pm = 0
                    x = mask
                    i = 0
                    while x:
                        if x & 1:
                            pm |= (<unsigned long long> 1) << parr[p * npoints + i]
                        x >>= 1
                        i += 1
                    if pm < mask:
                        ok = False
                        break
                if ok:
                    out.append(mask)
            mask += 1
        return out
    finally:
        free(parr)
