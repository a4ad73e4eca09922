"""Exact sparse linear algebra over the rationals and prime fields.

Over the rationals the forward elimination is fraction-free: rows are scaled
to integers once and reduced Bareiss-style, so every intermediate entry is a
minor of the scaled matrix and expression swell stays polynomial.  The final
normalization to reduced row echelon form divides once per pivot row.  Over a
prime field ordinary Gauss-Jordan is used.  All pivot choices scan rows and
columns in index order, so echelon forms, ranks, kernels and solutions are
deterministic functions of the input.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd


class SparseMatrix:
    """A sparse matrix stored column-major; immutable once frozen."""

    def __init__(self, nrows: int, ncols: int, field):
        self.nrows = nrows
        self.ncols = ncols
        self.field = field
        self.cols: list[dict] = [dict() for _ in range(ncols)]
        self._rref_cache = None

    def set_column(self, j: int, col: dict) -> None:
        if self._rref_cache is not None:
            raise RuntimeError("matrix already frozen by elimination")
        self.cols[j] = {i: v for i, v in col.items() if v}

    def entry_count(self) -> int:
        return sum(len(c) for c in self.cols)

    def is_zero(self) -> bool:
        return all(not c for c in self.cols)

    def mat_vec(self, vec: dict) -> dict:
        out: dict = {}
        for j, c in vec.items():
            for i, v in self.cols[j].items():
                new = out.get(i, self.field.zero) + c * v
                if new:
                    out[i] = new
                elif i in out:
                    del out[i]
        return out

    def multiply(self, other: "SparseMatrix") -> "SparseMatrix":
        """self @ other."""
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch")
        out = SparseMatrix(self.nrows, other.ncols, self.field)
        for j in range(other.ncols):
            out.set_column(j, self.mat_vec(other.cols[j]))
        return out

    def rows_list(self) -> list[dict]:
        rows: list[dict] = [dict() for _ in range(self.nrows)]
        for j, c in enumerate(self.cols):
            for i, v in c.items():
                rows[i][j] = v
        return rows

    # -- elimination ---------------------------------------------------------

    def _forward_eliminate(self, rows: list[dict]) -> list[dict]:
        """Row echelon form of the given rows (destructive on the copies).

        Over the rationals rows are scaled to integers and reduced with the
        one-step Bareiss recurrence; every division is exact.
        """
        rational = self.field.char == 0
        if rational:
            scaled = []
            for r in rows:
                if not r:
                    continue
                denom = 1
                for v in r.values():
                    denom = denom * v.denominator // gcd(denom, v.denominator)
                scaled.append({j: int(v * denom) for j, v in r.items()})
            rows = scaled
        else:
            rows = [dict(r) for r in rows if r]

        echelon: list[dict] = []
        prev = 1
        while rows:
            pivot_col = min(min(r) for r in rows)
            pick = next(k for k, r in enumerate(rows) if pivot_col in r)
            pivot_row = rows.pop(pick)
            p = pivot_row[pivot_col]
            nxt: list[dict] = []
            for r in rows:
                a = r.get(pivot_col)
                if rational:
                    if a is None:
                        new = {j: (p * v) // prev for j, v in r.items()}
                    else:
                        new = {}
                        for j in set(r) | set(pivot_row):
                            val = p * r.get(j, 0) - a * pivot_row.get(j, 0)
                            if val:
                                new[j] = val // prev
                        new.pop(pivot_col, None)
                else:
                    if a is None:
                        new = r
                    else:
                        factor = a / p
                        new = {}
                        for j in set(r) | set(pivot_row):
                            val = r.get(j, self.field.zero) \
                                - factor * pivot_row.get(j, self.field.zero)
                            if val:
                                new[j] = val
                        new.pop(pivot_col, None)
                if new:
                    nxt.append(new)
            echelon.append(pivot_row)
            rows = nxt
            if rational:
                prev = p
        return echelon

    def rref(self):
        """Canonical reduced row echelon form: (pivot_cols, rows over the field)."""
        if self._rref_cache is not None:
            return self._rref_cache
        echelon = self._forward_eliminate(self.rows_list())
        if self.field.char == 0:
            echelon = [{j: Fraction(v) for j, v in r.items()} for r in echelon]
        # normalize pivots and back-eliminate, bottom-up
        echelon.sort(key=lambda r: min(r))
        pivots = [min(r) for r in echelon]
        for k in range(len(echelon) - 1, -1, -1):
            row = echelon[k]
            pc = pivots[k]
            pv = row[pc]
            row = {j: v / pv for j, v in row.items()}
            echelon[k] = row
            for kk in range(k):
                upper = echelon[kk]
                a = upper.get(pc)
                if a is None:
                    continue
                new = dict(upper)
                for j, v in row.items():
                    val = new.get(j, self.field.zero) - a * v
                    if val:
                        new[j] = val
                    elif j in new:
                        del new[j]
                echelon[kk] = new
        self._rref_cache = (tuple(pivots), tuple(echelon))
        return self._rref_cache

    @property
    def rank(self) -> int:
        return len(self.rref()[0])

    def kernel_basis(self) -> list[dict]:
        """Canonical kernel basis, one vector per free column, in column order."""
        pivots, rows = self.rref()
        pivot_set = set(pivots)
        basis = []
        for free in range(self.ncols):
            if free in pivot_set:
                continue
            vec = {free: self.field.one}
            for pc, row in zip(pivots, rows):
                a = row.get(free)
                if a:
                    vec[pc] = -a
            basis.append(vec)
        return basis

    def solve(self, b: dict):
        """A particular solution x of self @ x = b, or None with no solution.

        Free variables are set to zero, so the solution is canonical for the
        column order.
        """
        aug = SparseMatrix(self.nrows, self.ncols + 1, self.field)
        for j in range(self.ncols):
            aug.set_column(j, self.cols[j])
        aug.set_column(self.ncols, b)
        pivots, rows = aug.rref()
        x: dict = {}
        for pc, row in zip(pivots, rows):
            if pc == self.ncols:
                return None
            v = row.get(self.ncols)
            if v:
                x[pc] = v
        return x

    def reduce_mod_rowspace(self, vec: dict) -> dict:
        """Reduce a row vector against this matrix's row space (via its rref)."""
        pivots, rows = self.rref()
        out = dict(vec)
        for pc, row in zip(pivots, rows):
            a = out.get(pc)
            if not a:
                continue
            for j, v in row.items():
                val = out.get(j, self.field.zero) - a * v
                if val:
                    out[j] = val
                elif j in out:
                    del out[j]
        return out


def from_row_vectors(vectors: list[dict], ncols: int, field) -> SparseMatrix:
    """A matrix whose i-th row is the i-th vector (dicts over column index)."""
    out = SparseMatrix(len(vectors), ncols, field)
    cols: list[dict] = [dict() for _ in range(ncols)]
    for i, vec in enumerate(vectors):
        for j, v in vec.items():
            cols[j][i] = v
    for j in range(ncols):
        out.set_column(j, cols[j])
    return out


def dense_rank(rows: list[list], field) -> int:
    """Plain dense Gaussian elimination; an independent cross-check oracle."""
    rows = [list(r) for r in rows]
    if not rows:
        return 0
    ncols = len(rows[0])
    rank = 0
    for col in range(ncols):
        pivot = None
        for i in range(rank, len(rows)):
            if rows[i][col]:
                pivot = i
                break
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        pv = rows[rank][col]
        for i in range(len(rows)):
            if i != rank and rows[i][col]:
                factor = rows[i][col] / pv
                rows[i] = [a - factor * b for a, b in zip(rows[i], rows[rank])]
        rank += 1
    return rank
