"""Certification of matrix properties: total unimodularity, unimodularity,
polytopality, w-valuedness, preparedness.

Two independent total-unimodularity oracles are provided: exhaustive
minor enumeration (kernel-accelerated) and the Ghouila-Houri row-signing
criterion (kept in pure Python on purpose, so the two routes share no
code path).
"""

from dataclasses import dataclass
from itertools import combinations
from typing import Optional

from . import kernels, linsolve
from .errors import BudgetExceeded, PreconditionError, UsageError
from .matrix import IntMatrix

MINOR_SIZE_BUDGET = 16  # rows + cols admitted to full minor enumeration
GH_ROW_BUDGET = 20  # row count admitted to the 2^m subset enumeration
ORDER_M_MINOR_BUDGET = 5_000_000  # C(n, m) cap for is_unimodular

METHOD_MINORS = "minor-enumeration"
METHOD_GH = "ghouila-houri"


@dataclass(frozen=True)
class Functional:
    """Integer row covector; evaluates matrices column-wise."""

    coeffs: tuple

    def __len__(self):
        return len(self.coeffs)

    def is_zero(self):
        return all(c == 0 for c in self.coeffs)

    def evaluate(self, column):
        if len(column) != len(self.coeffs):
            raise UsageError("functional/column length mismatch")
        return sum(c * x for c, x in zip(self.coeffs, column))

    def apply(self, m):
        """f * M as a tuple of per-column values."""
        if m.rows != len(self.coeffs):
            raise UsageError("functional length must equal the row count")
        return tuple(self.evaluate(m.col(j)) for j in range(m.cols))


@dataclass(frozen=True)
class MinorWitness:
    rows: tuple
    cols: tuple
    value: int


@dataclass(frozen=True)
class TuVerdict:
    is_tu: bool
    method: str
    witness: Optional[MinorWitness] = None

    def to_json_dict(self):
        w = None
        if self.witness is not None:
            w = {"rows": list(self.witness.rows),
                 "cols": list(self.witness.cols),
                 "minor": self.witness.value}
        return {"is_tu": self.is_tu, "method": self.method, "witness": w}


def _normalize_method(method):
    aliases = {
        "auto": "auto",
        METHOD_MINORS: METHOD_MINORS,
        "minors": METHOD_MINORS,
        METHOD_GH: METHOD_GH,
        "gh": METHOD_GH,
    }
    if method not in aliases:
        raise UsageError(f"unknown TU method {method!r}")
    return aliases[method]


def is_totally_unimodular(m, method="auto"):
    """TU verdict with a violating minor witness when one exists.

    Minor enumeration scans ascending minor orders and reports the first
    violation (lexicographically least index sets), so witnesses are
    deterministic. The Ghouila-Houri method reports no minor witness.
    """
    method = _normalize_method(method)
    if method == "auto":
        if m.rows + m.cols <= MINOR_SIZE_BUDGET:
            method = METHOD_MINORS
        elif m.rows <= GH_ROW_BUDGET:
            method = METHOD_GH
        else:
            raise BudgetExceeded(
                f"matrix size {m.rows}x{m.cols} exceeds both the minor budget "
                f"(rows+cols <= {MINOR_SIZE_BUDGET}) and the Ghouila-Houri "
                f"budget (rows <= {GH_ROW_BUDGET})")
    if method == METHOD_GH:
        return ghouila_houri_check(m)
    if m.rows + m.cols > MINOR_SIZE_BUDGET:
        raise BudgetExceeded(
            f"minor enumeration admits rows+cols <= {MINOR_SIZE_BUDGET}, got "
            f"{m.rows}+{m.cols}; try method='ghouila-houri'")
    hit = kernels.tu_violation(m.flat(), m.rows, m.cols)
    if hit is None:
        return TuVerdict(True, METHOD_MINORS)
    rows, cols, value = hit
    return TuVerdict(False, METHOD_MINORS,
                     MinorWitness(tuple(rows), tuple(cols), value))


def _signable(rows, ncols):
    """Is there a +-1 signing of ``rows`` with all column sums in {-1,0,1}?"""
    k = len(rows)
    suffix = [[0] * ncols for _ in range(k + 1)]
    for t in range(k - 1, -1, -1):
        for j in range(ncols):
            suffix[t][j] = suffix[t + 1][j] + abs(rows[t][j])

    def rec(t, sums):
        if t == k:
            return True
        # sign symmetry: the first row may be fixed to +1
        signs = (1,) if t == 0 else (1, -1)
        for s in signs:
            nxt = [a + s * b for a, b in zip(sums, rows[t])]
            if all(-1 - r <= v <= 1 + r for v, r in zip(nxt, suffix[t + 1])):
                if rec(t + 1, nxt):
                    return True
        return False

    return rec(0, [0] * ncols)


def ghouila_houri_check(m):
    """TU verdict by the row-signing criterion.

    Every subset of rows must admit a +-1 signing whose signed column
    sums stay in {-1,0,1}. Entries outside {-1,0,1} short-circuit to a
    1x1 witness; a failing subset yields a witness-free negative verdict.
    """
    for i in range(m.rows):
        for j in range(m.cols):
            e = m.entries[i][j]
            if e < -1 or e > 1:
                return TuVerdict(False, METHOD_GH, MinorWitness((i,), (j,), e))
    if m.rows > GH_ROW_BUDGET:
        raise BudgetExceeded(
            f"Ghouila-Houri admits at most {GH_ROW_BUDGET} rows, got {m.rows}")
    for size in range(2, m.rows + 1):
        for subset in combinations(range(m.rows), size):
            if not _signable([m.entries[i] for i in subset], m.cols):
                return TuVerdict(False, METHOD_GH)
    return TuVerdict(True, METHOD_GH)


def is_unimodular(m):
    """All order-m minors in {-1,0,1}; requires full row rank."""
    if m.rank() != m.rows:
        raise PreconditionError(
            f"is_unimodular requires full row rank ({m.rank()} < {m.rows})")
    if m.rows == 0:
        return True
    from math import comb

    if comb(m.cols, m.rows) > ORDER_M_MINOR_BUDGET:
        raise BudgetExceeded("too many order-m minors to enumerate")
    flat = m.flat()
    all_rows = tuple(range(m.rows))
    for cset in combinations(range(m.cols), m.rows):
        sub = [flat[i * m.cols + j] for i in all_rows for j in cset]
        d = kernels.det_entries(sub, m.rows)
        if d < -1 or d > 1:
            return False
    return True


def w_valued_certificate(m, w):
    """Nonzero integral f with f * M = w, or None.

    Rational elimination decides existence over the rationals first; an
    integral solution is then produced by the Hermite-normal-form lattice
    solve. The returned certificate is the canonical one (kernel-row
    coefficients zero), re-verified before returning.
    """
    w = tuple(int(x) for x in w)
    if len(w) != m.cols:
        raise UsageError("w length must equal the column count")
    if linsolve.solve_left_rational(m, w) is None:
        return None
    f = linsolve.solve_left_integer(m, w)
    if f is None:
        return None
    if all(c == 0 for c in f):
        kv = linsolve.left_kernel_vector(m)
        if kv is None:
            return None
        f = kv
    cert = Functional(f)
    if cert.apply(m) != w:
        raise AssertionError("certificate failed re-verification")
    return cert


def polytopal_certificate(m):
    """Integral f evaluating to 1 on every column, or None."""
    if m.cols == 0:
        # vacuous: any functional works; pick a canonical nonzero one
        return Functional(tuple([1] + [0] * (m.rows - 1))) if m.rows else None
    return w_valued_certificate(m, (1,) * m.cols)


def is_prepared(m, method="auto"):
    """Polytopal TU matrix with pairwise distinct columns."""
    if not m.columns_distinct():
        return False
    if polytopal_certificate(m) is None:
        return False
    return is_totally_unimodular(m, method).is_tu
