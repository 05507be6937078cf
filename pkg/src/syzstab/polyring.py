"""
Graded polynomial ring ``Sym V`` with exact rational coefficients.

Monomials are exponent tuples.  Every graded piece is enumerated in graded
lexicographic order with ``x0 > x1 > ...`` (so ``x0^q`` comes first), and
``Λ^p V ⊗ U`` bases are ordered lexicographically on ``(subset, inner index)``.
These two conventions fix the coordinates of every matrix in the package.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Iterable, Sequence

from .linalg import SparseMat


@dataclass(frozen=True)
class RingCtx:
    r: int
    names: tuple = ()

    def __post_init__(self):
        if self.r < 1:
            raise ValueError("need at least one variable")
        if not self.names:
            object.__setattr__(self, "names", tuple(f"x{i}" for i in range(self.r)))
        if len(self.names) != self.r or len(set(self.names)) != self.r:
            raise ValueError("variable names must be distinct, one per variable")

    def renamed(self, prefix: str) -> "RingCtx":
        return RingCtx(self.r, tuple(f"{prefix}{i}" for i in range(self.r)))


# ---------------------------------------------------------------------------
# monomial bases


@lru_cache(maxsize=None)
def _grlex(r: int, q: int) -> tuple:
    if r == 1:
        return ((q,),)
    out = []
    for a in range(q, -1, -1):
        for rest in _grlex(r - 1, q - a):
            out.append((a,) + rest)
    return tuple(out)


def sym_basis(ctx: RingCtx | int, q: int) -> tuple:
    """Degree-``q`` monomials of ``Sym V`` in graded-lex order."""
    r = ctx if isinstance(ctx, int) else ctx.r
    if q < 0:
        return ()
    return _grlex(r, q)


@lru_cache(maxsize=None)
def sym_index(r: int, q: int) -> dict:
    return {m: i for i, m in enumerate(_grlex(r, q))}


@lru_cache(maxsize=None)
def wedge_subsets(r: int, p: int) -> tuple:
    return tuple(combinations(range(r), p))


@lru_cache(maxsize=None)
def wedge_index(r: int, p: int) -> dict:
    return {s: i for i, s in enumerate(wedge_subsets(r, p))}


@dataclass(frozen=True)
class WedgeTensorBasis:
    """Basis of ``Λ^p V ⊗ U`` with ``U`` of dimension ``inner_dim``."""

    r: int
    p: int
    inner_dim: int
    inner: str = "U"

    def __len__(self) -> int:
        return comb(self.r, self.p) * self.inner_dim

    def index(self, subset: tuple, j: int) -> int:
        return wedge_index(self.r, self.p)[subset] * self.inner_dim + j

    def element(self, k: int) -> tuple:
        s, j = divmod(k, self.inner_dim)
        return wedge_subsets(self.r, self.p)[s], j

    def elements(self):
        for s in wedge_subsets(self.r, self.p):
            for j in range(self.inner_dim):
                yield s, j


def mono_mul(a: tuple, b: tuple) -> tuple:
    return tuple(x + y for x, y in zip(a, b))


def mono_var(r: int, v: int) -> tuple:
    e = [0] * r
    e[v] = 1
    return tuple(e)


def mono_weight(m: tuple, weights: Sequence[int]) -> int:
    return sum(e * w for e, w in zip(m, weights))


# ---------------------------------------------------------------------------
# polynomials


class Polynomial:
    """Sparse polynomial: a mapping from exponent tuples to nonzero Fractions."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: dict | None = None):
        self.nvars = nvars
        self.terms = {}
        if terms:
            for m, c in terms.items():
                if c:
                    if len(m) != nvars:
                        raise ValueError("exponent length mismatch")
                    self.terms[tuple(m)] = Fraction(c)

    @classmethod
    def constant(cls, nvars: int, c) -> "Polynomial":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def var(cls, nvars: int, v: int, c=1) -> "Polynomial":
        return cls(nvars, {mono_var(nvars, v): c})

    def __repr__(self):
        return f"Polynomial({self.nvars}, {self.terms!r})"

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.terms == ({(0,) * self.nvars: Fraction(other)} if other else {})
        return isinstance(other, Polynomial) and self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    def degrees(self) -> set:
        return {sum(m) for m in self.terms}

    def is_homogeneous(self, q: int | None = None) -> bool:
        ds = self.degrees()
        if not ds:
            return True
        return len(ds) == 1 and (q is None or ds == {q})

    def degree(self) -> int:
        return max(self.degrees(), default=-1)

    def __add__(self, other):
        if not isinstance(other, Polynomial):
            other = Polynomial.constant(self.nvars, other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m, 0) + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return Polynomial(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.nvars, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other if isinstance(other, Polynomial) else -Fraction(other))

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "Polynomial":
        return Polynomial(self.nvars, {m: c * v for m, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            return self.scale(Fraction(other))
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = mono_mul(m1, m2)
                out[m] = out.get(m, 0) + c1 * c2
        return Polynomial(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = Polynomial.constant(self.nvars, 1)
        for _ in range(n):
            out = out * self
        return out

    def weight_range(self, weights: Sequence[int]) -> tuple:
        ws = [mono_weight(m, weights) for m in self.terms]
        return min(ws), max(ws)

    def permuted(self, sigma: Sequence[int]) -> "Polynomial":
        """Rename variable ``i`` to ``sigma[i]``."""
        out = {}
        for m, c in self.terms.items():
            e = [0] * self.nvars
            for i, a in enumerate(m):
                e[sigma[i]] = a
            out[tuple(e)] = c
        return Polynomial(self.nvars, out)

    def to_vector(self, q: int) -> dict:
        """Coordinates in the graded-lex basis of ``Sym^q``."""
        idx = sym_index(self.nvars, q)
        try:
            return {idx[m]: c for m, c in self.terms.items()}
        except KeyError:
            raise ValueError(f"polynomial is not homogeneous of degree {q}") from None

    @classmethod
    def from_vector(cls, nvars: int, q: int, vec) -> "Polynomial":
        basis = sym_basis(nvars, q)
        items = vec.items() if isinstance(vec, dict) else vec
        return cls(nvars, {basis[j]: c for j, c in items})

    def format(self, names: Sequence[str] | None = None) -> str:
        return format_poly(self, names)

    def __str__(self):
        return format_poly(self)


def _grlex_key(m: tuple):
    return (sum(m), m)


def format_coeff(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_poly(f: Polynomial, names: Sequence[str] | None = None) -> str:
    if names is None:
        names = [f"x{i}" for i in range(f.nvars)]
    if not f.terms:
        return "0"
    parts = []
    for m in sorted(f.terms, key=_grlex_key, reverse=True):
        c = f.terms[m]
        factors = []
        for i, e in enumerate(m):
            if e == 1:
                factors.append(names[i])
            elif e > 1:
                factors.append(f"{names[i]}^{e}")
        mag = abs(c)
        body = "*".join(factors)
        if not body:
            body = format_coeff(mag)
        elif mag != 1:
            body = f"{format_coeff(mag)}*{body}"
        sign = "-" if c < 0 else "+"
        parts.append((sign, body))
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


_TERM_RE = re.compile(r"([+-]?)([^+-]+)")
_COEFF_RE = re.compile(r"^(\d+(?:/\d+)?)\*?")
_FACTOR_RE = re.compile(r"\*?([A-Za-z]+)(\d+)(?:\^(\d+))?")


class PolynomialSyntaxError(ValueError):
    pass


def parse_poly(text: str, r: int) -> Polynomial:
    """Parse ``[coeff][*]var[^exp]`` products joined by ``+``/``-``.

    Variables are a letter prefix followed by the index (``x3``, ``z0``);
    whitespace is ignored.
    """
    s = "".join(text.split())
    if not s:
        raise PolynomialSyntaxError("empty polynomial")
    out = Polynomial(r)
    pos = 0
    while pos < len(s):
        mt = _TERM_RE.match(s, pos)
        if not mt or mt.end() == pos:
            raise PolynomialSyntaxError(f"cannot parse near {s[pos:]!r}")
        sign, body = mt.group(1), mt.group(2)
        pos = mt.end()
        if "**" in body or body.startswith("*") or body.endswith("*"):
            raise PolynomialSyntaxError(f"stray '*' in term {body!r}")
        coeff = Fraction(1)
        mc = _COEFF_RE.match(body)
        rest = body
        if mc:
            coeff = Fraction(mc.group(1))
            rest = body[mc.end():]
        exps = [0] * r
        k = 0
        while k < len(rest):
            mf = _FACTOR_RE.match(rest, k)
            if not mf:
                raise PolynomialSyntaxError(f"bad factor in term {body!r}")
            v = int(mf.group(2))
            if v >= r:
                raise PolynomialSyntaxError(f"variable index {v} out of range for r={r}")
            exps[v] += int(mf.group(3) or 1)
            k = mf.end()
        if sign == "-":
            coeff = -coeff
        out = out + Polynomial(r, {tuple(exps): coeff})
    return out


# ---------------------------------------------------------------------------
# target algebras for parameterizations


@dataclass(frozen=True)
class TargetAlgebra:
    """Polynomial algebra in a few variables, some of them square-zero."""

    names: tuple
    nilpotent: frozenset = field(default_factory=frozenset)

    @property
    def nvars(self) -> int:
        return len(self.names)

    def mul(self, a: Polynomial, b: Polynomial) -> Polynomial:
        nil = self.nilpotent
        out: dict = {}
        for m1, c1 in a.terms.items():
            for m2, c2 in b.terms.items():
                m = mono_mul(m1, m2)
                if any(m[i] > 1 for i in nil):
                    continue
                out[m] = out.get(m, 0) + c1 * c2
        return Polynomial(self.nvars, out)

    def one(self) -> Polynomial:
        return Polynomial.constant(self.nvars, 1)

    def truncate(self, f: Polynomial) -> Polynomial:
        return Polynomial(
            self.nvars,
            {m: c for m, c in f.terms.items() if all(m[i] <= 1 for i in self.nilpotent)},
        )

    def format(self, f: Polynomial) -> str:
        return format_poly(f, self.names)


def substitute(f: Polynomial, images: Sequence[Polynomial], algebra: TargetAlgebra) -> Polynomial:
    """Ring-homomorphic image of ``f`` under ``x_i -> images[i]``."""
    if len(images) != f.nvars:
        raise ValueError("need one image per variable")
    powers: dict = {}

    def power(i, e):
        key = (i, e)
        if key not in powers:
            powers[key] = algebra.one() if e == 0 else algebra.mul(power(i, e - 1), images[i])
        return powers[key]

    out = Polynomial(algebra.nvars)
    for m, c in f.terms.items():
        term = algebra.one()
        for i, e in enumerate(m):
            if e:
                term = algebra.mul(term, power(i, e))
        out = out + term.scale(c)
    return out


# ---------------------------------------------------------------------------
# multiplication maps


def mult_map(r: int, rows: SparseMat, q: int, v: int) -> SparseMat:
    """Multiplication by ``x_v`` from a degree-``q`` subspace into ``Sym^{q+1}``.

    ``rows`` holds the subspace basis in ``Sym^q`` coordinates; the result has
    one column per basis row (a linear map, target x source).
    """
    src = sym_basis(r, q)
    tgt = sym_index(r, q + 1)
    xv = mono_var(r, v)
    cols = []
    for row in rows.rows:
        cols.append({tgt[mono_mul(src[j], xv)]: c for j, c in row})
    return SparseMat.from_rows(cols, len(tgt)).transpose()


def sym_dim(r: int, q: int) -> int:
    return comb(r + q - 1, q) if q >= 0 else 0


def poly_rows(polys: Iterable[Polynomial], q: int) -> list:
    return [f.to_vector(q) for f in polys]
