"""
Koszul complexes of S = Sym V, of an ideal I, and of the quotient R = S/I.

In homological degree p and internal degree q the differential is

    d_{p,q}(x_{s0} ^ ... ^ x_{s(p-1)} ⊗ y) = Σ_i (-1)^i x_{s0} ^ .. ^ x_{si}^ .. ⊗ x_{si} y,

with wedge subsets ordered lexicographically and the inner factor in the
module's own basis.  ``K_{p,q}(R)`` is computed from the bottom row of the
S -> R comparison diagram: ``dim ker d^R_{p,q} - rank d^R_{p+1,q-1}``, using
quotient pieces ``R_j = Sym^j V / I_j``.  By convention ``d_{0,q}`` is the
zero map, so ``K_{0,q}(R) = dim R_q - rank d^R_{1,q-1}``.
"""

from __future__ import annotations

import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from math import comb

from .ideals import GradedSubspace
from .linalg import SparseMat, kernel_basis, rank
from .polyring import mono_mul, mono_var, sym_basis, sym_dim, sym_index, wedge_index, wedge_subsets


class SyzygyPointUndefined(ValueError):
    pass


# ---------------------------------------------------------------------------
# graded modules over S, each with a fixed basis per degree


class SymModule:
    """S itself, in the graded-lex monomial basis."""

    def __init__(self, r: int):
        self.r = r
        self._mult: dict = {}

    def dim(self, q: int) -> int:
        return sym_dim(self.r, q)

    def mult(self, q: int) -> list:
        """``mult(q)[j][v]``: x_v times basis element j, as ``{target: coeff}``."""
        if q not in self._mult:
            r = self.r
            tgt = sym_index(r, q + 1)
            xs = [mono_var(r, v) for v in range(r)]
            self._mult[q] = [[{tgt[mono_mul(m, xv)]: 1} for xv in xs] for m in sym_basis(r, q)]
        return self._mult[q]


class QuotientModule:
    """R = S/I with basis the standard monomials (non-pivots of I_q's echelon form)."""

    def __init__(self, X):
        self.X = X
        self.r = X.r
        self._std: dict = {}
        self._nf: dict = {}
        self._mult: dict = {}
        self._ranks: dict = {}

    def standard(self, q: int) -> list:
        if q not in self._std:
            if q < 0:
                self._std[q] = []
            else:
                piv = set(self.X.piece(q).pivots)
                self._std[q] = [j for j in range(sym_dim(self.r, q)) if j not in piv]
        return self._std[q]

    def dim(self, q: int) -> int:
        return len(self.standard(q))

    def normal_forms(self, q: int) -> list:
        """Coordinates in R_q of every monomial of Sym^q."""
        if q not in self._nf:
            std = self.standard(q)
            pos = {j: k for k, j in enumerate(std)}
            nf = [None] * sym_dim(self.r, q)
            for j in std:
                nf[j] = {pos[j]: 1}
            for row in self.X.piece(q).rows.rows:
                lead = row[0][0]
                nf[lead] = {pos[c]: -v for c, v in row[1:]}
            self._nf[q] = nf
        return self._nf[q]

    def mult(self, q: int) -> list:
        if q not in self._mult:
            r = self.r
            basis = sym_basis(r, q)
            tgt = sym_index(r, q + 1)
            nf = self.normal_forms(q + 1)
            xs = [mono_var(r, v) for v in range(r)]
            self._mult[q] = [[nf[tgt[mono_mul(basis[j], xv)]] for xv in xs] for j in self.standard(q)]
        return self._mult[q]


class IdealModule:
    """I itself, with basis the reduced echelon rows of each piece."""

    def __init__(self, X):
        self.X = X
        self.r = X.r
        self._mult: dict = {}

    def dim(self, q: int) -> int:
        return self.X.piece(q).dim if q >= 0 else 0

    def mult(self, q: int) -> list:
        if q not in self._mult:
            r = self.r
            src = sym_basis(r, q)
            tgt = sym_index(r, q + 1)
            nxt = self.X.piece(q + 1)
            row_of = {c: k for k, c in enumerate(nxt.pivots)}
            xs = [mono_var(r, v) for v in range(r)]
            out = []
            for row in self.X.piece(q).rows.rows:
                per_v = []
                for xv in xs:
                    # coordinates in a reduced echelon basis are read off at the pivots
                    per_v.append({row_of[c]: val for c, val in ((tgt[mono_mul(src[j], xv)], val) for j, val in row) if c in row_of})
                out.append(per_v)
            self._mult[q] = out
        return self._mult[q]


# ---------------------------------------------------------------------------
# differentials


def _koszul_columns(module, p: int, q: int) -> tuple:
    r = module.r
    src_dim = module.dim(q)
    if p == 0 or src_dim == 0:
        return [dict() for _ in range(comb(r, p) * src_dim)], comb(r, p - 1) * module.dim(q + 1) if p > 0 else 0
    tgt_dim = module.dim(q + 1)
    tindex = wedge_index(r, p - 1)
    mult = module.mult(q)
    cols = []
    for S in wedge_subsets(r, p):
        faces = []
        for i, s in enumerate(S):
            faces.append((s, 1 if i % 2 == 0 else -1, tindex[S[:i] + S[i + 1:]] * tgt_dim))
        for j in range(src_dim):
            col = {}
            mj = mult[j]
            for s, sign, offset in faces:
                for t, c in mj[s].items():
                    col[offset + t] = col.get(offset + t, 0) + sign * c
            cols.append(col)
    return cols, comb(r, p - 1) * tgt_dim


def koszul_matrix(module, p: int, q: int) -> SparseMat:
    """Matrix of ``d_{p,q}: Λ^p V ⊗ U_q -> Λ^{p-1} V ⊗ U_{q+1}`` (target x source)."""
    cols, tgt = _koszul_columns(module, p, q)
    return SparseMat.from_rows(cols, tgt).transpose()


def differential_rank(module, p: int, q: int) -> int:
    if p <= 0 or p > module.r or q < 0 or module.dim(q) == 0:
        return 0
    cache = getattr(module, "_ranks", None)
    if cache is not None and (p, q) in cache:
        return cache[(p, q)]
    cols, tgt = _koszul_columns(module, p, q)
    rk = rank(SparseMat.from_rows(cols, tgt))
    if cache is not None:
        cache[(p, q)] = rk
    return rk


def koszul_dim_module(module, p: int, q: int) -> int:
    if p < 0 or p > module.r or q < 0:
        return 0
    chain = comb(module.r, p) * module.dim(q)
    return chain - differential_rank(module, p, q) - differential_rank(module, p + 1, q - 1)


def koszul_dim(X, p: int, q: int) -> int:
    """``dim K_{p,q}(S/I_X)``."""
    module = X if isinstance(X, QuotientModule) else QuotientModule(X)
    return koszul_dim_module(module, p, q)


def schur_dim(r: int, p: int, q: int) -> int:
    """Dimension of the hook Schur functor of shape (q, 1^p) applied to a rank-r space."""
    if not (0 <= p < r) or q < 1:
        raise ValueError("schur_dim needs 0 <= p < r and q >= 1")
    return comb(r + q - 1, p + q) * comb(p + q - 1, p)


def kernel_dim_on_S(r: int, p: int, q: int) -> int:
    """``dim ker d_{p,q}`` on S by direct elimination."""
    module = SymModule(r)
    return comb(r, p) * module.dim(q) - differential_rank(module, p, q)


# ---------------------------------------------------------------------------
# Betti tables


@dataclass(frozen=True, order=True)
class KoszulCell:
    p: int
    q: int


@dataclass
class BettiTable:
    name: str
    r: int
    entries: dict = field(default_factory=dict)  # KoszulCell -> int

    def __getitem__(self, pq) -> int:
        p, q = pq
        return self.entries.get(KoszulCell(p, q), 0)

    def cells(self) -> list:
        return sorted(self.entries)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "r": self.r,
            "cells": [{"p": c.p, "q": c.q, "dim": self.entries[c]} for c in self.cells()],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=False, separators=(", ", ": "))

    def to_csv(self) -> str:
        lines = ["p,q,dim"]
        lines += [f"{c.p},{c.q},{self.entries[c]}" for c in self.cells()]
        return "\n".join(lines)

    def pretty(self) -> str:
        """Rows indexed by q, columns by p; zeros shown as blanks."""
        ps = sorted({c.p for c in self.entries})
        qs = sorted({c.q for c in self.entries})
        width = max([len(str(v)) for v in self.entries.values()] + [1]) + 1
        head = "q\\p " + "".join(str(p).rjust(width) for p in ps)
        lines = [f"{self.name} (r={self.r})", head]
        for q in qs:
            cells = []
            for p in ps:
                v = self[p, q]
                cells.append((str(v) if v else ".").rjust(width))
            lines.append(f"{q:>3} " + "".join(cells))
        return "\n".join(lines)

    def rows(self) -> list:
        """Nonzero entries of each row q, as printed tables list them."""
        qs = sorted({c.q for c in self.entries})
        return [[self.entries[c] for c in self.cells() if c.q == q and self.entries[c]] for q in qs]


def _rank_job(args):
    X, p, q = args
    return differential_rank(QuotientModule(X), p, q)


def default_threads() -> int:
    try:
        return max(1, int(os.environ.get("SYZSTAB_THREADS", "1")))
    except ValueError:
        return 1


def betti_table(X, pmax: int | None = None, qmax: int = 4, threads: int | None = None, name: str = "") -> BettiTable:
    """Koszul dimensions over ``0 <= p <= pmax``, ``0 <= q <= qmax``.

    With ``threads > 1`` the differential ranks are computed in worker
    processes; the table does not depend on the thread count.
    """
    r = X.r
    if pmax is None:
        pmax = max(r - 2, 0)
    pmax = min(pmax, r)
    threads = default_threads() if threads is None else threads
    module = QuotientModule(X)
    needed = sorted(
        {(p, q) for p in range(pmax + 1) for q in range(qmax + 1) if p >= 1}
        | {(p + 1, q - 1) for p in range(pmax + 1) for q in range(1, qmax + 1) if p + 1 <= r}
    )
    if threads > 1 and len(needed) > 1:
        for q in range(qmax + 2):
            X.piece(q)
        with ProcessPoolExecutor(max_workers=threads) as pool:
            ranks = list(pool.map(_rank_job, [(X, p, q) for p, q in needed]))
        module._ranks.update(dict(zip(needed, ranks)))
    table = BettiTable(name or getattr(X, "name", "") or "scheme", r)
    for p in range(pmax + 1):
        for q in range(qmax + 1):
            table.entries[KoszulCell(p, q)] = koszul_dim_module(module, p, q)
    return table


# ---------------------------------------------------------------------------
# syzygy kernels


@dataclass(frozen=True)
class SyzygyKernel:
    cell: KoszulCell
    basis: GradedSubspace

    @property
    def dim(self) -> int:
        return self.basis.dim


def wedge_sym_label(p: int, q: int) -> str:
    return f"Λ^{p} V ⊗ Sym^{q} V"


def syzygy_kernel(X, p: int, q: int) -> SyzygyKernel:
    """``ker(Λ^p V ⊗ I_q -> Λ^{p-1} V ⊗ I_{q+1})`` inside ``Λ^p V ⊗ Sym^q V``.

    The syzygy point is defined only when ``K_{p,q}(S/I_X) = 0``; for ``p = 0``
    the kernel is ``I_q`` itself.
    """
    r = X.r
    if not (0 <= p <= r) or q < 1:
        raise SyzygyPointUndefined(f"(p,q)=({p},{q}) out of range")
    if p > 0:
        kpq = koszul_dim(X, p, q)
        if kpq:
            raise SyzygyPointUndefined(f"syzygy point undefined: dim K_{{{p},{q}}} = {kpq}")
    piece = X.piece(q)
    nsym = sym_dim(r, q)
    if p == 0:
        basis = GradedSubspace(wedge_sym_label(0, q), r, 0, q, piece.rows)
        return SyzygyKernel(KoszulCell(0, q), basis)
    ker = kernel_basis(koszul_matrix(IdealModule(X), p, q))
    ideal_rows = piece.rows.rows
    dim_i = piece.dim
    rows = []
    for krow in ker.rows:
        vec: dict = {}
        for k, c in krow:
            s, j = divmod(k, dim_i)
            offset = s * nsym
            for col, v in ideal_rows[j]:
                vec[offset + col] = vec.get(offset + col, 0) + c * v
        rows.append(vec)
    mat = SparseMat.from_rows(rows, comb(r, p) * nsym)
    return SyzygyKernel(KoszulCell(p, q), GradedSubspace.from_rows(wedge_sym_label(p, q), r, p, q, mat))


def wedge_sym_weights(r: int, p: int, q: int, rho) -> list:
    """Torus weight of every basis element of ``Λ^p V ⊗ Sym^q V``."""
    mw = [sum(e * w for e, w in zip(m, rho)) for m in sym_basis(r, q)]
    out = []
    for S in wedge_subsets(r, p):
        ws = sum(rho[i] for i in S)
        out.extend(ws + w for w in mw)
    return out
