"""Unimodular-polytope certification, the matrix/polytope translation,
lattice isomorphism, edge polytopes, simplex products, and the exhaustive
low-dimensional classification over the 0/1 cube.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations, product
from typing import Optional

from . import kernels, linsolve
from .certify import is_totally_unimodular, is_unimodular, polytopal_certificate
from .errors import BudgetExceeded, PreconditionError, StructureError, UsageError
from .families import h
from .lp import in_convex_hull
from .matrix import IntMatrix


@dataclass(frozen=True)
class PointSet:
    """Ambient dimension plus a tuple of pairwise distinct lattice points."""

    dim: int
    points: tuple

    @staticmethod
    def from_points(points):
        pts = tuple(tuple(int(x) for x in p) for p in points)
        if pts:
            d = len(pts[0])
            if any(len(p) != d for p in pts):
                raise UsageError("points have inconsistent dimensions")
        else:
            raise UsageError("a point set needs at least one point")
        if len(set(pts)) != len(pts):
            raise UsageError("points must be pairwise distinct")
        return PointSet(d, pts)

    @staticmethod
    def from_matrix_columns(m):
        return PointSet.from_points(m.columns())

    def to_matrix(self):
        return IntMatrix.from_columns(list(self.points))

    def __len__(self):
        return len(self.points)

    def flat(self):
        return [x for p in self.points for x in p]

    def affine_rank(self):
        """Dimension of the affine hull."""
        if len(self.points) <= 1:
            return 0
        base = self.points[0]
        diffs = [[p[i] - base[i] for i in range(self.dim)]
                 for p in self.points[1:]]
        flat = [x for row in diffs for x in row]
        return kernels.rank_entries(flat, len(diffs), self.dim)


@dataclass(frozen=True)
class HullResult:
    vertices: PointSet
    nonvertices: tuple
    cube_points_in_hull: Optional[tuple]


def vertex_hull(ps, cube_dim_limit=12):
    """Split a point set into hull vertices and interior/boundary points.

    A point is a vertex exactly when it is outside the convex hull of the
    other points (exact rational feasibility test). For 0/1 input the
    full list of cube points inside the hull is returned as well, unless
    the dimension exceeds ``cube_dim_limit``.
    """
    verts = []
    nonverts = []
    for i, p in enumerate(ps.points):
        others = [q for j, q in enumerate(ps.points) if j != i]
        if others and in_convex_hull(p, others):
            nonverts.append(p)
        else:
            verts.append(p)
    cube = None
    if (all(x in (0, 1) for p in ps.points for x in p)
            and ps.dim <= cube_dim_limit):
        cube = tuple(q for q in product((0, 1), repeat=ps.dim)
                     if q in set(ps.points) or in_convex_hull(q, ps.points))
    return HullResult(PointSet(ps.dim, tuple(verts)), tuple(nonverts), cube)


@dataclass(frozen=True)
class UnimodularityVerdict:
    is_unimodular: bool
    witness: Optional[tuple]  # ((d+1) point indices, determinant)


def is_unimodular_polytope(ps, check_convex_position=True):
    """Does every full-dimensional vertex simplex span a lattice basis?

    Requires a full-dimensional input in convex position (each point a
    vertex); a violating (d+1)-subset is returned as witness otherwise.
    """
    if ps.affine_rank() != ps.dim:
        raise PreconditionError(
            f"point set is not full-dimensional (affine rank "
            f"{ps.affine_rank()} < {ps.dim})")
    if check_convex_position:
        hull = vertex_hull(ps, cube_dim_limit=0)
        if hull.nonvertices:
            raise PreconditionError(
                f"point set is not in convex position: {hull.nonvertices[0]} "
                f"is not a vertex")
    hit = kernels.unimodular_violation(ps.flat(), len(ps.points), ps.dim)
    if hit is None:
        return UnimodularityVerdict(True, None)
    return UnimodularityVerdict(False, (tuple(hit[0]), hit[1]))


def edge_polytope(nvertices, part_a, edges):
    """Points e_i + e_j for the edges of a bipartite graph with given parts."""
    part_a = frozenset(part_a)
    if not part_a <= set(range(nvertices)):
        raise UsageError("part A references unknown vertices")
    pts = []
    for (u, v) in edges:
        if not (0 <= u < nvertices and 0 <= v < nvertices):
            raise UsageError(f"edge ({u},{v}) references unknown vertex")
        if (u in part_a) == (v in part_a):
            raise StructureError(
                f"edge ({u},{v}) stays inside one part; graph is not "
                f"bipartite with the declared parts")
        p = [0] * nvertices
        p[u] += 1
        p[v] += 1
        pts.append(tuple(p))
    return PointSet.from_points(dict.fromkeys(pts))


def complete_bipartite_edges(na, nb):
    """Edge list of K_{na,nb} with part A = {0..na-1}."""
    return [(i, na + j) for i in range(na) for j in range(nb)]


def simplex_product(a, b):
    """Vertex set of the product of two standard simplices, in dimension a+b."""
    if a < 0 or b < 0:
        raise UsageError("simplex dimensions must be nonnegative")

    def verts(k):
        out = [tuple([0] * k)]
        for i in range(k):
            e = [0] * k
            e[i] = 1
            out.append(tuple(e))
        return out

    pts = [u + v for u in verts(a) for v in verts(b)]
    return PointSet.from_points(pts)


def affine_lattice_coordinates(ps):
    """Re-coordinatize onto the saturated affine lattice of the hull.

    The first point maps to the origin and the difference lattice
    Z^dim  aff(ps) maps onto Z^r, r = affine rank; unimodularity and
    lattice isomorphism are preserved. Already full-dimensional sets come
    back unchanged up to translation.
    """
    base = ps.points[0]
    diffs = [tuple(p[i] - base[i] for i in range(ps.dim)) for p in ps.points[1:]]
    if not diffs:
        return PointSet(0, ((),))
    d_mat = IntMatrix.from_rows(diffs)
    # saturation of the difference row space: kernel of the kernel
    _, u1, piv1 = linsolve.row_hnf(d_mat.transpose())
    kernel_rows = [u1.entries[i] for i in range(len(piv1), u1.rows)]
    if kernel_rows:
        k_mat = IntMatrix.from_rows(kernel_rows)
        _, u2, piv2 = linsolve.row_hnf(k_mat.transpose())
        basis_rows = [u2.entries[i] for i in range(len(piv2), u2.rows)]
    else:
        basis_rows = [tuple(1 if j == i else 0 for j in range(ps.dim))
                      for i in range(ps.dim)]
    basis = IntMatrix.from_rows(basis_rows)
    coords = [(0,) * basis.rows]
    for diff in diffs:
        c = linsolve.solve_left_integer(basis, diff)
        if c is None:
            raise AssertionError("difference not in the saturated lattice")
        coords.append(c)
    return PointSet(basis.rows, tuple(coords))


def _leftmost_affine_frame(points, d):
    """Indices of the leftmost affinely independent (d+1)-subsequence."""
    frame = [0]
    rows = []
    base = points[0]
    for i in range(1, len(points)):
        cand = rows + [[points[i][k] - base[k] for k in range(len(base))]]
        flat = [x for row in cand for x in row]
        if kernels.rank_entries(flat, len(cand), len(base)) == len(cand):
            rows = cand
            frame.append(i)
            if len(frame) == d + 1:
                return frame
    return None


def _fraction_inverse(cols):
    n = len(cols)
    a = [[Fraction(cols[j][i]) for j in range(n)]
         + [Fraction(1 if k == i else 0) for k in range(n)] for i in range(n)]
    for c in range(n):
        piv = next((i for i in range(c, n) if a[i][c] != 0), None)
        if piv is None:
            return None
        a[c], a[piv] = a[piv], a[c]
        inv = 1 / a[c][c]
        a[c] = [x * inv for x in a[c]]
        for i in range(n):
            if i != c and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return [[a[i][n + j] for j in range(n)] for i in range(n)]


def lattice_isomorphic(p, q):
    """Exhaustive affine lattice-isomorphism test of two point sets.

    Both sets are first re-coordinatized to full dimension. One affinely
    independent frame of P is fixed (the leftmost in stored order); every
    ordered affinely independent frame of Q is tried as its image, and
    the unique affine map is accepted when it is integral, has
    determinant +-1, and maps the point sets bijectively.
    """
    pe = affine_lattice_coordinates(p)
    qe = affine_lattice_coordinates(q)
    if pe.dim != qe.dim or len(pe.points) != len(qe.points):
        return False
    d = pe.dim
    if d == 0:
        return True
    p_frame = _leftmost_affine_frame(pe.points, d)
    if p_frame is None:
        raise AssertionError("embedded set lost full dimensionality")
    p0 = pe.points[p_frame[0]]
    p_cols = [[pe.points[i][k] - p0[k] for k in range(d)] for i in p_frame[1:]]
    p_inv = _fraction_inverse(p_cols)
    p_set = set(pe.points)
    q_pts = qe.points

    def try_map(frame):
        q0 = q_pts[frame[0]]
        q_cols = [[q_pts[i][k] - q0[k] for k in range(d)] for i in frame[1:]]
        # L = Q_frame * P_frame^{-1}; build as rows of the linear map
        lin = [[sum(Fraction(q_cols[t][r]) * p_inv[t][c] for t in range(d))
                for c in range(d)] for r in range(d)]
        if any(x.denominator != 1 for row in lin for x in row):
            return False
        lin_int = [[int(x) for x in row] for row in lin]
        det = kernels.det_entries([x for row in lin_int for x in row], d)
        if det not in (1, -1):
            return False
        shift = [q0[r] - sum(lin_int[r][c] * p0[c] for c in range(d))
                 for r in range(d)]
        image = set()
        for pt in p_set:
            image.add(tuple(sum(lin_int[r][c] * pt[c] for c in range(d))
                            + shift[r] for r in range(d)))
        return image == set(q_pts)

    n = len(q_pts)

    def extend(frame, rows):
        if len(frame) == d + 1:
            return try_map(frame)
        base = q_pts[frame[0]] if frame else None
        for i in range(n):
            if i in frame:
                continue
            if not frame:
                if extend([i], []):
                    return True
                continue
            cand = rows + [[q_pts[i][k] - base[k] for k in range(d)]]
            flat = [x for row in cand for x in row]
            if kernels.rank_entries(flat, len(cand), d) == len(cand):
                if extend(frame + [i], cand):
                    return True
        return False

    return extend([], [])


def fingerprint(ps):
    """Affine-unimodular invariants used to pre-sort isomorphism classes.

    Components: intrinsic dimension, vertex count, sorted multiset of
    pairwise lattice distances (gcd of coordinate differences), the
    number of affinely independent (d+1)-subsets, and its sorted
    per-vertex distribution. Equal fingerprints do not imply isomorphism;
    distinct fingerprints prove non-isomorphism.
    """
    from math import gcd

    pe = affine_lattice_coordinates(ps)
    d, pts = pe.dim, pe.points
    dists = []
    for a, b in combinations(pts, 2):
        g = 0
        for x, y in zip(a, b):
            g = gcd(g, abs(x - y))
        dists.append(g)
    indep_total = 0
    per_vertex = [0] * len(pts)
    if d > 0:
        for sub in combinations(range(len(pts)), d + 1):
            base = pts[sub[0]]
            flat = [pts[i][k] - base[k] for i in sub[1:] for k in range(d)]
            if kernels.det_entries(flat, d) != 0:
                indep_total += 1
                for i in sub:
                    per_vertex[i] += 1
    return (d, len(pts), tuple(sorted(dists)), indep_total,
            tuple(sorted(per_vertex)))


def fingerprint_string(fp):
    d, n, dists, indep, per_vertex = fp
    return f"d{d}An{n}:g{','.join(map(str, dists))}:s{indep}:v{','.join(map(str, per_vertex))}"


@dataclass(frozen=True, eq=False)
class PolytopeClass:
    """Isomorphism class of a unimodular polytope with a 0/1 representative."""

    dimension: int
    vertex_count: int
    vertices: PointSet
    fingerprint: tuple

    def __eq__(self, other):
        if not isinstance(other, PolytopeClass):
            return NotImplemented
        return (self.fingerprint == other.fingerprint
                and lattice_isomorphic(self.vertices, other.vertices))

    def __hash__(self):
        return hash(self.fingerprint)

    def to_json_dict(self):
        return {
            "dimension": self.dimension,
            "vertex_count": self.vertex_count,
            "vertices": [list(p) for p in self.vertices.points],
            "fingerprint": fingerprint_string(self.fingerprint),
        }


def _cube_symmetry_index_perms(d):
    """Hyperoctahedral group as permutations of the 2^d cube point indices."""
    pts = list(product((0, 1), repeat=d))
    index = {p: i for i, p in enumerate(pts)}
    perms = []
    for sigma in permutations(range(d)):
        for flips in product((0, 1), repeat=d):
            perm = [0] * len(pts)
            for i, p in enumerate(pts):
                q = tuple(p[sigma[k]] ^ flips[k] for k in range(d))
                perm[i] = index[q]
            if perm != list(range(len(pts))):
                perms.append(perm)
    return pts, perms


def _candidate_subsets(d, pruned, stretch):
    pts, perms = _cube_symmetry_index_perms(d)
    min_size = d + 1
    max_size = h(d + 1) if pruned else 1 << d
    max_size = min(max_size, 1 << d)
    if d <= 4:
        masks = kernels.canonical_masks(1 << d, perms, min_size, max_size)
        for mask in masks:
            yield [pts[i] for i in range(1 << d) if mask >> i & 1]
        return
    # stretch path (d = 5): orderly backtracking over point indices; a
    # prefix is pruned when some symmetry maps it to a lex-smaller one
    npts = 1 << d

    def canonical(sub):
        for p in perms:
            t = sorted(p[i] for i in sub)
            if t < sub:
                return False
        return True

    def rec(sub, start):
        if len(sub) >= min_size:
            yield [pts[i] for i in sub]
        if len(sub) == max_size:
            return
        for i in range(start, npts):
            nxt = sub + [i]
            if canonical(nxt):
                yield from rec(nxt, i + 1)

    yield from rec([], 0)


@dataclass(frozen=True)
class ClassificationResult:
    dimension: int
    classes: tuple
    count: int
    subsets_examined: int

    def to_json_list(self):
        return [c.to_json_dict() for c in self.classes]


def classify_unimodular(d, pruned=True, stretch=False):
    """All isomorphism classes of unimodular polytopes of dimension d.

    Enumerates vertex subsets of the 0/1 cube (every unimodular polytope
    is isomorphic to one spanned by cube points) up to cube symmetry,
    keeps the full-dimensional unimodular ones whose hull meets the cube
    exactly in the chosen points, and merges the survivors under lattice
    isomorphism.

    ``pruned`` caps subset sizes at the proven vertex bound h(d+1); the
    unpruned mode (d <= 3) enumerates every size, keeping those checks
    independent of the bound being verified. d = 5 requires ``stretch``
    and a lot of patience; d >= 6 is out of scope.
    """
    if d < 1:
        raise UsageError("classification needs d >= 1")
    if d == 5 and not stretch:
        raise BudgetExceeded(
            "d = 5 classification exceeds desk scale; pass stretch=True")
    if d > 5:
        raise UsageError("classification beyond d = 5 is not supported")
    if not pruned and d > 3:
        raise UsageError("unpruned enumeration is limited to d <= 3")

    classes = []
    examined = 0
    cube = set(product((0, 1), repeat=d))
    for subset in _candidate_subsets(d, pruned, stretch):
        examined += 1
        ps = PointSet(d, tuple(subset))
        if ps.affine_rank() != d:
            continue
        if kernels.unimodular_violation(ps.flat(), len(subset), d) is not None:
            continue
        chosen = set(ps.points)
        if any(in_convex_hull(p, [q for q in ps.points if q != p])
               for p in ps.points):
            continue
        if any(in_convex_hull(q, ps.points) for q in cube - chosen):
            continue
        fp = fingerprint(ps)
        found = False
        for cls in classes:
            if cls.fingerprint == fp and lattice_isomorphic(cls.vertices, ps):
                found = True
                break
        if not found:
            classes.append(PolytopeClass(d, len(subset), ps, fp))
    ordered = tuple(sorted(classes,
                           key=lambda c: (c.fingerprint, c.vertices.points)))
    return ClassificationResult(d, ordered, len(ordered), examined)


@dataclass(frozen=True)
class VertexBoundReport:
    dimension: int
    vertex_count: int
    bound: int
    ok: bool
    tight: bool

    def to_json_dict(self):
        return self.__dict__.copy()


def vertex_bound_check(ps):
    """Vertex count of a certified unimodular polytope against its bound."""
    pe = affine_lattice_coordinates(ps)
    verdict = is_unimodular_polytope(pe)
    if not verdict.is_unimodular:
        raise PreconditionError(
            f"not a unimodular polytope; witness {verdict.witness}")
    d = pe.dim
    bound = 10 if d == 4 else h(d + 1)
    n = len(pe.points)
    return VertexBoundReport(d, n, bound, n <= bound, n == bound)


@dataclass(frozen=True)
class NormalizeResult:
    matrix: IntMatrix       # (I | B) after the change of basis
    transform: IntMatrix    # the basis columns R, with M = R (I|B) P^T
    permutation: tuple      # output column k came from input column perm[k]


def normalize_standard_form(m):
    """Left-multiply by the inverse of the leftmost basis columns.

    Requires a polytopal unimodular matrix of full row rank. The selected
    columns form a lattice basis (their determinant is +-1 by
    unimodularity); they are permuted to the front, so the output has the
    shape (I | B) with all column sums 1, and both B and (I|B) are TU
    (re-certified before returning).
    """
    if m.rank() != m.rows:
        raise PreconditionError("normalization requires full row rank")
    if polytopal_certificate(m) is None:
        raise PreconditionError("matrix is not polytopal")
    if not is_unimodular(m):
        raise PreconditionError("matrix is not unimodular")
    frame = []
    rows = []
    for j in range(m.cols):
        cand = rows + [[m.entries[i][j] for i in range(m.rows)]]
        flat = [x for row in cand for x in row]
        if kernels.rank_entries(flat, len(cand), m.rows) == len(cand):
            rows = cand
            frame.append(j)
            if len(frame) == m.rows:
                break
    transform = m.submatrix(range(m.rows), frame)
    inverse = linsolve.invert_unimodular(transform)
    rest = [j for j in range(m.cols) if j not in frame]
    perm = tuple(frame + rest)
    permuted = IntMatrix.from_columns([m.col(j) for j in perm], rows=m.rows)
    out = inverse.matmul(permuted)
    if out.submatrix(range(m.rows), range(m.rows)) != IntMatrix.identity(m.rows):
        raise AssertionError("basis columns did not normalize to the identity")
    if any(sum(out.col(j)) != 1 for j in range(out.cols)):
        raise AssertionError("normalized columns do not sum to 1")
    b = out.submatrix(range(m.rows), range(m.rows, out.cols))
    if not is_totally_unimodular(b).is_tu or not is_totally_unimodular(out).is_tu:
        raise AssertionError("normalized matrix failed TU re-certification")
    return NormalizeResult(out, transform, perm)
