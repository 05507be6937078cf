"""
Exact sparse linear algebra over the rationals.

Matrices are immutable ``SparseMat`` values holding, for every row, a tuple of
``(column, Fraction)`` pairs sorted by column.  Elimination works on dict rows
and only ever touches columns that are already present, so block-diagonal
inputs (for example multigraded Koszul differentials) are eliminated block by
block without any extra bookkeeping.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

Row = tuple  # tuple[tuple[int, Fraction], ...]


class NotABasisError(ValueError):
    pass


def _clean_row(items) -> Row:
    out = []
    for c, v in sorted(items):
        if v:
            out.append((c, Fraction(v)))
    return tuple(out)


@dataclass(frozen=True)
class SparseMat:
    nrows: int
    ncols: int
    rows: tuple  # tuple[Row, ...], one entry per row

    def __post_init__(self):
        if len(self.rows) != self.nrows:
            raise ValueError("row count mismatch")

    @classmethod
    def from_rows(cls, rows: Iterable, ncols: int) -> "SparseMat":
        """Build from rows given as dicts ``{col: value}`` or pair sequences."""
        cleaned = []
        for r in rows:
            items = r.items() if isinstance(r, dict) else r
            row = _clean_row(items)
            if row and (row[0][0] < 0 or row[-1][0] >= ncols):
                raise ValueError("column index out of range")
            cleaned.append(row)
        return cls(len(cleaned), ncols, tuple(cleaned))

    @classmethod
    def from_dense(cls, dense: Sequence[Sequence], ncols: int | None = None) -> "SparseMat":
        if ncols is None:
            ncols = len(dense[0]) if dense else 0
        return cls.from_rows(
            [{j: v for j, v in enumerate(r) if v} for r in dense], ncols
        )

    @classmethod
    def from_triplets(cls, nrows: int, ncols: int, triplets) -> "SparseMat":
        acc = [dict() for _ in range(nrows)]
        for i, j, v in triplets:
            acc[i][j] = acc[i].get(j, 0) + Fraction(v)
        return cls.from_rows(acc, ncols)

    @classmethod
    def identity(cls, n: int) -> "SparseMat":
        return cls(n, n, tuple(((i, Fraction(1)),) for i in range(n)))

    @classmethod
    def zero(cls, nrows: int, ncols: int) -> "SparseMat":
        return cls(nrows, ncols, tuple(() for _ in range(nrows)))

    def triplets(self):
        for i, row in enumerate(self.rows):
            for j, v in row:
                yield i, j, v

    def nnz(self) -> int:
        return sum(len(r) for r in self.rows)

    def transpose(self) -> "SparseMat":
        cols = [[] for _ in range(self.ncols)]
        for i, row in enumerate(self.rows):
            for j, v in row:
                cols[j].append((i, v))
        return SparseMat(self.ncols, self.nrows, tuple(tuple(c) for c in cols))

    def to_dense(self) -> list:
        out = [[Fraction(0)] * self.ncols for _ in range(self.nrows)]
        for i, j, v in self.triplets():
            out[i][j] = v
        return out

    def row_dicts(self) -> list:
        return [dict(r) for r in self.rows]

    def apply(self, vec: dict) -> dict:
        """Matrix times a sparse column vector ``{col: value}``."""
        out = {}
        for i, row in enumerate(self.rows):
            s = 0
            for j, v in row:
                x = vec.get(j)
                if x:
                    s += v * x
            if s:
                out[i] = Fraction(s)
        return out

    def select_columns(self, cols: Sequence[int]) -> "SparseMat":
        """Reindex columns: new column ``k`` is old column ``cols[k]``."""
        pos = {c: k for k, c in enumerate(cols)}
        rows = []
        for row in self.rows:
            rows.append({pos[j]: v for j, v in row if j in pos})
        return SparseMat.from_rows(rows, len(cols))

    def stack(self, other: "SparseMat") -> "SparseMat":
        if other.ncols != self.ncols:
            raise ValueError("column count mismatch")
        return SparseMat(self.nrows + other.nrows, self.ncols, self.rows + other.rows)

    def __matmul__(self, other: "SparseMat") -> "SparseMat":
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch")
        orows = other.rows
        out = []
        for row in self.rows:
            acc = {}
            for k, a in row:
                for j, b in orows[k]:
                    acc[j] = acc.get(j, 0) + a * b
            out.append(acc)
        return SparseMat.from_rows(out, other.ncols)


# ---------------------------------------------------------------------------
# elimination core


def _reduce_into(row: dict, pivots: dict, stop_at_free: bool) -> int | None:
    """Reduce ``row`` in place against echelon ``pivots`` (col -> monic row).

    Columns are visited in increasing order.  With ``stop_at_free`` the scan
    stops at the first column that is not a pivot and returns it; otherwise
    every pivot column is cleared.  Returns the leading column of the result,
    or None if the row became zero.
    """
    heap = list(row)
    heapq.heapify(heap)
    queued = set(heap)
    lead = None
    while heap:
        c = heapq.heappop(heap)
        queued.discard(c)
        a = row.get(c)
        if not a:
            continue
        prow = pivots.get(c)
        if prow is None:
            if lead is None:
                lead = c
                if stop_at_free:
                    return lead
            continue
        for j, v in prow.items():
            nv = row.get(j, 0) - a * v
            if nv:
                row[j] = nv
                if j not in queued:
                    queued.add(j)
                    heapq.heappush(heap, j)
            else:
                row.pop(j, None)
    return lead


def _echelon(rows: Iterable[dict]) -> dict:
    """Incremental (non-reduced) echelon form: leading col -> monic row."""
    pivots: dict = {}
    for src in rows:
        row = {j: Fraction(v) for j, v in src.items() if v}
        if not row:
            continue
        lead = _reduce_into(row, pivots, stop_at_free=True)
        if lead is None:
            continue
        inv = 1 / row[lead]
        if inv != 1:
            for j in row:
                row[j] *= inv
        pivots[lead] = row
    return pivots


def _back_substitute(pivots: dict) -> list:
    """Turn an echelon dict into reduced rows, ordered by pivot column."""
    cols = sorted(pivots)
    done: dict = {}
    for c in reversed(cols):
        row = pivots[c]
        for j in sorted(k for k in row if k > c and k in done):
            a = row.get(j)
            if not a:
                continue
            for k, v in done[j].items():
                nv = row.get(k, 0) - a * v
                if nv:
                    row[k] = nv
                else:
                    row.pop(k, None)
        done[c] = row
    return [done[c] for c in cols]


def rank(m: SparseMat) -> int:
    return len(_echelon(m.row_dicts()))


def rref(m: SparseMat) -> tuple:
    """Reduced row echelon form.

    Returns ``(rank, pivots, reduced)`` where ``reduced`` has exactly ``rank``
    rows, each monic at its pivot, with zeros in every other pivot column.
    The reduced form of a row space is unique, so the output depends only on
    the row space of ``m``.
    """
    rows = _back_substitute(_echelon(m.row_dicts()))
    pivots = [min(r) for r in rows]
    reduced = SparseMat.from_rows(rows, m.ncols)
    return len(rows), pivots, reduced


def kernel_basis(m: SparseMat) -> SparseMat:
    """Basis of the right null space, one row per free column.

    The row attached to free column ``f`` has a 1 at ``f``, zeros at the other
    free columns, and ``-reduced[i][f]`` at pivot column ``i``.
    """
    _, pivots, red = rref(m)
    pivset = set(pivots)
    free = [c for c in range(m.ncols) if c not in pivset]
    by_free = {f: {f: Fraction(1)} for f in free}
    for pc, row in zip(pivots, red.rows):
        for j, v in row:
            if j != pc:
                by_free[j][pc] = -v
    return SparseMat.from_rows([by_free[f] for f in free], m.ncols)


def nullity(m: SparseMat) -> int:
    return m.ncols - rank(m)


def in_row_space(vec: dict, basis_rref: SparseMat) -> bool:
    """Membership test against a matrix already in reduced echelon form."""
    pivots = {row[0][0]: dict(row) for row in basis_rref.rows}
    row = {j: Fraction(v) for j, v in vec.items() if v}
    return _reduce_into(row, pivots, stop_at_free=True) is None


def same_row_space(a: SparseMat, b: SparseMat) -> bool:
    if a.ncols != b.ncols:
        return False
    return rref(a)[2].rows == rref(b)[2].rows


def weight_elimination(rows: SparseMat, col_weights: Sequence[int]) -> tuple:
    """Initial subspace of ``rows`` under a torus weight on the columns.

    Columns are ordered by ``(weight, index)`` and the rows brought into
    reduced echelon form in that order, so each row starts at its minimal
    weight and the initial forms are independent.  Returns
    ``(initial_rows, det_weight)`` where ``initial_rows`` is the reduced
    echelon form (original column order) of the lowest-weight truncations and
    ``det_weight`` is the sum of the row minima.
    """
    if len(col_weights) != rows.ncols:
        raise ValueError("one weight per column required")
    order = sorted(range(rows.ncols), key=lambda c: (col_weights[c], c))
    permuted = rows.select_columns(order)
    rk, pivots, red = rref(permuted)
    if rk != rows.nrows:
        raise NotABasisError("not a basis")
    det_weight = 0
    truncated = []
    for pc, row in zip(pivots, red.rows):
        w = col_weights[order[pc]]
        det_weight += w
        truncated.append({order[j]: v for j, v in row if col_weights[order[j]] == w})
    initial = rref(SparseMat.from_rows(truncated, rows.ncols))[2]
    return initial, det_weight


def initial_weights(rows: SparseMat, col_weights: Sequence[int]) -> list:
    """Sorted lowest weights of a basis adapted to the weight filtration."""
    order = sorted(range(rows.ncols), key=lambda c: (col_weights[c], c))
    rk, pivots, _ = rref(rows.select_columns(order))
    if rk != rows.nrows:
        raise NotABasisError("not a basis")
    return sorted(col_weights[order[pc]] for pc in pivots)
