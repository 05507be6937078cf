"""
Homogeneous ideals handled one graded piece at a time.

A scheme is either an ``IdealPresentation`` (explicit homogeneous generators)
or a ``Parameterization`` (a substitution map into a small target algebra,
whose kernel in each degree is the ideal piece).  Both expose ``piece(q)``,
returning ``(I_X)_q`` as a ``GradedSubspace`` of ``Sym^q V``.  No saturation is
ever attempted: for generator lists the piece is the span of monomial
multiples, which is what every construction in the gallery needs.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from itertools import combinations
from pathlib import Path
from typing import Sequence

from .linalg import SparseMat, in_row_space, kernel_basis, rank, rref
from .polyring import (
    Polynomial,
    RingCtx,
    TargetAlgebra,
    mono_mul,
    mono_var,
    parse_poly,
    sym_basis,
    sym_dim,
    sym_index,
)


@dataclass(frozen=True)
class GradedSubspace:
    """A subspace of a named graded piece, stored as a reduced echelon basis.

    ``ambient`` is a label such as ``"Sym^2 V"`` or ``"Λ^1 V ⊗ Sym^2 V"``; the
    columns of ``rows`` are coordinates in the canonical basis of that piece.
    """

    ambient: str
    r: int
    p: int
    q: int
    rows: SparseMat

    @classmethod
    def from_rows(cls, ambient: str, r: int, p: int, q: int, rows: SparseMat) -> "GradedSubspace":
        return cls(ambient, r, p, q, rref(rows)[2])

    @property
    def dim(self) -> int:
        return self.rows.nrows

    @property
    def ambient_dim(self) -> int:
        return self.rows.ncols

    @property
    def pivots(self) -> list:
        return [row[0][0] for row in self.rows.rows]

    def contains(self, vec) -> bool:
        if isinstance(vec, Polynomial):
            vec = vec.to_vector(self.q)
        return in_row_space(vec, self.rows)

    def contains_subspace(self, other: "GradedSubspace") -> bool:
        return all(self.contains(dict(row)) for row in other.rows.rows)

    def __eq__(self, other):
        return (
            isinstance(other, GradedSubspace)
            and self.r == other.r
            and self.p == other.p
            and self.q == other.q
            and self.rows.ncols == other.rows.ncols
            and self.rows.rows == other.rows.rows
        )

    def __hash__(self):
        return hash((self.r, self.p, self.q, self.rows.rows))

    def polys(self) -> list:
        """Basis as polynomials (only for subspaces of ``Sym^q V``)."""
        if self.p != 0:
            raise ValueError("not a subspace of Sym^q V")
        return [Polynomial.from_vector(self.r, self.q, row) for row in self.rows.rows]


def sym_label(q: int) -> str:
    return f"Sym^{q} V"


def subspace_of_polys(r: int, q: int, polys: Sequence[Polynomial]) -> GradedSubspace:
    rows = SparseMat.from_rows([f.to_vector(q) for f in polys], sym_dim(r, q))
    return GradedSubspace.from_rows(sym_label(q), r, 0, q, rows)


class _PieceCache:
    def __init__(self):
        self._pieces: dict = {}
        self._lock = threading.RLock()

    def get(self, q, build):
        with self._lock:
            if q not in self._pieces:
                self._pieces[q] = build(q)
            return self._pieces[q]

    def __getstate__(self):
        return {"_pieces": dict(self._pieces)}

    def __setstate__(self, state):
        self._pieces = state["_pieces"]
        self._lock = threading.RLock()


class IdealPresentation:
    def __init__(self, ctx: RingCtx, generators: Sequence[Polynomial], name: str = ""):
        self.ctx = ctx
        gens = []
        for g in generators:
            if g.nvars != ctx.r:
                raise ValueError("generator has wrong number of variables")
            if g.is_zero():
                continue
            if not g.is_homogeneous():
                raise ValueError(f"generator {g.format(ctx.names)} is not homogeneous")
            gens.append(g)
        self.generators = tuple(gens)
        self.name = name
        self._cache = _PieceCache()

    @property
    def r(self) -> int:
        return self.ctx.r

    def __repr__(self):
        return f"IdealPresentation(r={self.r}, {len(self.generators)} generators, name={self.name!r})"

    def piece(self, q: int) -> GradedSubspace:
        return self._cache.get(q, self._build_piece)

    def _build_piece(self, q: int) -> GradedSubspace:
        r = self.r
        n = sym_dim(r, q)
        rows = [g.to_vector(q) for g in self.generators if g.degree() == q]
        if q > 0 and any(g.degree() < q for g in self.generators):
            prev = self.piece(q - 1)
            src = sym_basis(r, q - 1)
            tgt = sym_index(r, q)
            for v in range(r):
                xv = mono_var(r, v)
                for row in prev.rows.rows:
                    rows.append({tgt[mono_mul(src[j], xv)]: c for j, c in row})
        return GradedSubspace.from_rows(sym_label(q), r, 0, q, SparseMat.from_rows(rows, n))

    def hilbert(self, q: int) -> int:
        return hilbert_fn(self, q)

    def with_generators(self, extra: Sequence[Polynomial], name: str = "") -> "IdealPresentation":
        return IdealPresentation(self.ctx, list(self.generators) + list(extra), name or self.name)

    def permuted(self, sigma: Sequence[int]) -> "IdealPresentation":
        return IdealPresentation(self.ctx, [g.permuted(sigma) for g in self.generators], self.name)


@dataclass
class Parameterization:
    """A scheme given as the closure of the image of a substitution map.

    ``images[i]`` is the image of ``x_i`` in ``algebra``.  The degree-``q``
    ideal piece is the kernel of the induced map on ``Sym^q V``.  For an
    affine chart (images not homogeneous) this is the ideal of the closure of
    the image; ``kind`` carries constructor metadata such as ``("carpet", 2)``.
    """

    ctx: RingCtx
    algebra: TargetAlgebra
    images: tuple
    homogeneous_degree: int | None = None
    name: str = ""
    kind: tuple = ()
    _cache: _PieceCache = field(default_factory=_PieceCache, repr=False, compare=False)
    _mono_images: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        self.images = tuple(self.images)
        if len(self.images) != self.ctx.r:
            raise ValueError("need one image per variable")
        if self.homogeneous_degree is not None:
            for f in self.images:
                if not f.is_homogeneous(self.homogeneous_degree):
                    raise ValueError("image is not homogeneous of the declared degree")

    @property
    def r(self) -> int:
        return self.ctx.r

    def monomial_images(self, q: int) -> list:
        """Images of the degree-``q`` monomials, built from degree ``q-1``."""
        if q not in self._mono_images:
            if q == 0:
                self._mono_images[0] = [self.algebra.one()]
            else:
                prev_basis = sym_index(self.r, q - 1)
                prev = self.monomial_images(q - 1)
                out = []
                for m in sym_basis(self.r, q):
                    v = next(i for i, e in enumerate(m) if e)
                    lower = list(m)
                    lower[v] -= 1
                    out.append(self.algebra.mul(prev[prev_basis[tuple(lower)]], self.images[v]))
                self._mono_images[q] = out
        return self._mono_images[q]

    def substitution_matrix(self, q: int) -> tuple:
        """Matrix of ``Sym^q V -> algebra`` (target monomials x source monomials)."""
        imgs = self.monomial_images(q)
        tindex: dict = {}
        cols = []
        for f in imgs:
            col = {}
            for m, c in f.terms.items():
                if m not in tindex:
                    tindex[m] = len(tindex)
                col[tindex[m]] = c
            cols.append(col)
        mat = SparseMat.from_rows(cols, len(tindex)).transpose()
        return mat, sorted(tindex, key=tindex.get)

    def piece(self, q: int) -> GradedSubspace:
        return self._cache.get(q, self._build_piece)

    def _build_piece(self, q: int) -> GradedSubspace:
        mat, _ = self.substitution_matrix(q)
        return GradedSubspace.from_rows(sym_label(q), self.r, 0, q, kernel_basis(mat))

    def hilbert(self, q: int) -> int:
        return hilbert_fn(self, q)

    def __getstate__(self):
        state = dict(self.__dict__)
        state["_mono_images"] = {}
        return state


def ideal_piece(X, q: int) -> GradedSubspace:
    return X.piece(q)


def piece_from_parameterization(P: Parameterization, q: int) -> GradedSubspace:
    return P.piece(q)


def hilbert_fn(X, q: int) -> int:
    """``dim Sym^q V - dim (I_X)_q``."""
    if q < 0:
        return 0
    return sym_dim(X.r, q) - X.piece(q).dim


def image_rank(P: Parameterization, q: int) -> int:
    """Rank of the substitution map in degree ``q`` (equals ``hilbert_fn``)."""
    return rank(P.substitution_matrix(q)[0])


# ---------------------------------------------------------------------------
# carpets and ribbons

CARPET_ALGEBRA = TargetAlgebra(("s", "t", "e"), frozenset({2}))
RIBBON_ALGEBRA = TargetAlgebra(("t", "e"), frozenset({1}))


def _st(s: int, t: int, e: int, c=1) -> Polynomial:
    return Polynomial(3, {(s, t, e): c})


def carpet_parameterization(k: int) -> Parameterization:
    """Chart of the K3 carpet in ``P^{2k+1}``.

    ``x_i = t^i`` for ``0 <= i <= k`` and ``x_{k+1+i} = s t^i + i t^{i-1} e``
    with ``e^2 = 0``.
    """
    if k < 1:
        raise ValueError("carpet needs k >= 1")
    images = [_st(0, i, 0) for i in range(k + 1)]
    for i in range(k + 1):
        f = _st(1, i, 0)
        if i:
            f = f + _st(0, i - 1, 1, i)
        images.append(f)
    return Parameterization(
        RingCtx(2 * k + 2), CARPET_ALGEBRA, tuple(images), name=f"carpet-{k}", kind=("carpet", k)
    )


def hyperplane_restrict(P: Parameterization) -> Parameterization:
    """Section of a carpet by ``x_k = x_{k+1}``: the balanced canonical ribbon.

    Setting ``s = t^k`` makes the two coordinates equal; the duplicate is
    dropped, leaving ``2k+1`` coordinates ``t^i`` (``i <= k``) and
    ``t^{k+i} + i t^{i-1} e`` (``1 <= i <= k``).
    """
    if not P.kind or P.kind[0] != "carpet":
        raise ValueError("hyperplane_restrict expects a carpet parameterization")
    k = P.kind[1]
    images = [Polynomial(2, {(i, 0): 1}) for i in range(k + 1)]
    for i in range(1, k + 1):
        images.append(Polynomial(2, {(k + i, 0): 1, (i - 1, 1): i}))
    return Parameterization(
        RingCtx(2 * k + 1), RIBBON_ALGEBRA, tuple(images), name=f"ribbon-{k}", kind=("ribbon", k)
    )


# ---------------------------------------------------------------------------
# determinantal and Pfaffian ideals


def _check_linear(entries) -> int:
    nvars = None
    for f in entries:
        if isinstance(f, Polynomial) and not f.is_zero():
            if not f.is_homogeneous(1):
                raise ValueError("matrix entries must be linear forms")
            nvars = f.nvars
    if nvars is None:
        raise ValueError("matrix has no nonzero entries")
    return nvars


def _as_poly(f, nvars: int) -> Polynomial:
    return f if isinstance(f, Polynomial) else Polynomial.constant(nvars, f)


def minors_ideal(matrix: Sequence[Sequence[Polynomial]], ctx: RingCtx | None = None, name: str = "") -> IdealPresentation:
    """All 2x2 minors of a 2 x n matrix of linear forms."""
    if len(matrix) != 2 or len(matrix[0]) != len(matrix[1]):
        raise ValueError("expected a 2 x n matrix")
    nvars = _check_linear([f for row in matrix for f in row])
    top = [_as_poly(f, nvars) for f in matrix[0]]
    bot = [_as_poly(f, nvars) for f in matrix[1]]
    gens = [top[i] * bot[j] - top[j] * bot[i] for i, j in combinations(range(len(top)), 2)]
    return IdealPresentation(ctx or RingCtx(nvars), gens, name)


def sym_minors_ideal(matrix: Sequence[Sequence[Polynomial]], ctx: RingCtx | None = None, name: str = "") -> IdealPresentation:
    """The distinct 2x2 minors of a symmetric 3x3 matrix of linear forms."""
    if len(matrix) != 3 or any(len(row) != 3 for row in matrix):
        raise ValueError("expected a 3 x 3 matrix")
    for i in range(3):
        for j in range(3):
            if matrix[i][j] != matrix[j][i]:
                raise ValueError("matrix is not symmetric")
    nvars = _check_linear([f for row in matrix for f in row])
    a = [[_as_poly(f, nvars) for f in row] for row in matrix]
    pairs = list(combinations(range(3), 2))
    gens = []
    for x, (i, j) in enumerate(pairs):
        for (k, l) in pairs[x:]:
            gens.append(a[i][k] * a[j][l] - a[i][l] * a[j][k])
    return IdealPresentation(ctx or RingCtx(nvars), gens, name)


def pfaffians(matrix: Sequence[Sequence[Polynomial]]) -> list:
    """Signed 4x4 sub-Pfaffians ``(-1)^i Pf(M without row/col i)``.

    With this sign the column of Pfaffians is annihilated by ``M``.
    """
    n = len(matrix)
    if n != 5 or any(len(row) != 5 for row in matrix):
        raise ValueError("expected a 5 x 5 matrix")
    nvars = _check_linear([f for row in matrix for f in row])
    a = [[_as_poly(f, nvars) for f in row] for row in matrix]
    for i in range(5):
        if not a[i][i].is_zero():
            raise ValueError("matrix is not antisymmetric")
        for j in range(5):
            if a[i][j] != -a[j][i]:
                raise ValueError("matrix is not antisymmetric")
    out = []
    for i in range(5):
        w, x, y, z = [j for j in range(5) if j != i]
        pf = a[w][x] * a[y][z] - a[w][y] * a[x][z] + a[w][z] * a[x][y]
        out.append(pf if i % 2 == 0 else -pf)
    return out


def pfaffian_ideal(matrix: Sequence[Sequence[Polynomial]], ctx: RingCtx | None = None, name: str = "") -> IdealPresentation:
    gens = pfaffians(matrix)
    return IdealPresentation(ctx or RingCtx(gens[0].nvars), gens, name)


def parse_matrix(lines: Sequence[str], r: int) -> list:
    """Rows separated by lines, entries by commas, in the polynomial grammar."""
    return [[parse_poly(cell, r) if cell.strip() != "0" else Polynomial(r) for cell in line.split(",")] for line in lines]


# ---------------------------------------------------------------------------
# ideal file format


class IdealFileError(ValueError):
    pass


def minimal_generators(X, max_degree: int = 4) -> list:
    """Generators of X's pieces up to ``max_degree``, degree by degree.

    In each degree the new generators are the reduced echelon rows of
    ``I_q`` whose pivots are not reached by ``V * I_{q-1}``.
    """
    r = X.r
    gens = []
    for q in range(1, max_degree + 1):
        piece = X.piece(q)
        if q > 1:
            prev = X.piece(q - 1)
            src = sym_basis(r, q - 1)
            tgt = sym_index(r, q)
            rows = []
            for v in range(r):
                xv = mono_var(r, v)
                for row in prev.rows.rows:
                    rows.append({tgt[mono_mul(src[j], xv)]: c for j, c in row})
            span = GradedSubspace.from_rows(sym_label(q), r, 0, q, SparseMat.from_rows(rows, piece.ambient_dim))
        else:
            span = GradedSubspace.from_rows(sym_label(q), r, 0, q, SparseMat.zero(0, piece.ambient_dim))
        for row in piece.rows.rows:
            vec = dict(row)
            if not span.contains(vec):
                gens.append(Polynomial.from_vector(r, q, vec))
                span = GradedSubspace.from_rows(
                    sym_label(q), r, 0, q, span.rows.stack(SparseMat.from_rows([vec], piece.ambient_dim))
                )
    return gens


def dumps_ideal(X, max_degree: int = 4, names: Sequence[str] | None = None) -> str:
    if isinstance(X, IdealPresentation):
        gens = list(X.generators)
    else:
        gens = minimal_generators(X, max_degree)
    if names is None:
        names = [f"x{i}" for i in range(X.r)]
    lines = [f"r={X.r}"]
    lines += [g.format(names) for g in gens]
    return "\n".join(lines) + "\n"


def loads_ideal(text: str, name: str = "") -> IdealPresentation:
    r = None
    gens = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if r is None:
            if not line.replace(" ", "").startswith("r="):
                raise IdealFileError(f"line {lineno}: expected header 'r=<int>'")
            try:
                r = int(line.replace(" ", "")[2:])
            except ValueError:
                raise IdealFileError(f"line {lineno}: bad variable count") from None
            continue
        try:
            gens.append(parse_poly(line, r))
        except ValueError as exc:
            raise IdealFileError(f"line {lineno}: {exc}") from None
    if r is None:
        raise IdealFileError("missing header 'r=<int>'")
    return IdealPresentation(RingCtx(r), gens, name)


def load_ideal(path, name: str = "") -> IdealPresentation:
    path = Path(path)
    return loads_ideal(path.read_text(), name or path.stem)
