"""
Hilbert-Mumford weights of syzygy points under diagonal one-parameter subgroups.

Sign convention: for the kernel subspace K = ker(Λ^p V ⊗ I_q -> Λ^{p-1} V ⊗ I_{q+1})
we set

    μ(X, p, q, ρ) := -(sum of the lowest ρ-weights of a weight-adapted basis of K),

and call X semistable with respect to ρ when μ >= 0.  With this sign the
quadric section C₀ of the singular del Pezzo has μ_(0,2) = 12, the del Pezzo
itself μ_(1,2) = -3, and the two-ray weight μ_(0,2) + β μ_(1,2) vanishes at
β = 4.
"""

from __future__ import annotations

import json
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm

from .ideals import IdealPresentation
from .koszul import SyzygyPointUndefined, default_threads, syzygy_kernel, wedge_sym_weights
from .linalg import initial_weights, weight_elimination
from .polyring import Polynomial, sym_basis

LIMIT_CUTOFF = 3


@dataclass(frozen=True)
class OneParamSubgroup:
    weights: tuple

    def __post_init__(self):
        w = tuple(self.weights)
        if not all(isinstance(x, int) for x in w):
            raise TypeError("weights must be integers; use OneParamSubgroup.of for rationals")
        if sum(w) != 0:
            raise ValueError(f"weights {w} do not sum to zero")
        if not any(w):
            raise ValueError("trivial one-parameter subgroup")
        object.__setattr__(self, "weights", w)

    @classmethod
    def of(cls, weights) -> "OneParamSubgroup":
        """Accept ints, Fractions or strings like ``"-7/2"``; clear denominators."""
        fr = [Fraction(x) for x in weights]
        den = lcm(*(f.denominator for f in fr)) if fr else 1
        return cls(tuple(int(f * den) for f in fr))

    @classmethod
    def parse(cls, text: str) -> "OneParamSubgroup":
        return cls.of(part.strip() for part in text.split(","))

    @property
    def r(self) -> int:
        return len(self.weights)

    def inverse(self) -> "OneParamSubgroup":
        return OneParamSubgroup(tuple(-w for w in self.weights))

    def scaled(self, k: int) -> "OneParamSubgroup":
        if k <= 0:
            raise ValueError("scale must be positive")
        return OneParamSubgroup(tuple(k * w for w in self.weights))

    def permuted(self, sigma) -> "OneParamSubgroup":
        """Weights following the renaming ``x_i -> x_sigma(i)``."""
        out = [0] * self.r
        for i, w in enumerate(self.weights):
            out[sigma[i]] = w
        return OneParamSubgroup(tuple(out))

    def __str__(self):
        return ",".join(str(w) for w in self.weights)


def _as_1ps(rho) -> OneParamSubgroup:
    return rho if isinstance(rho, OneParamSubgroup) else OneParamSubgroup.of(rho)


def _check_r(X, rho: OneParamSubgroup):
    if rho.r != X.r:
        raise ValueError(f"1-PS has {rho.r} weights but the ambient space has {X.r} coordinates")


def monomial_weights(r: int, q: int, rho) -> list:
    return [sum(e * w for e, w in zip(m, rho)) for m in sym_basis(r, q)]


def hm_weight(X, p: int, q: int, rho) -> int:
    """μ of the (p,q)-syzygy point; raises SyzygyPointUndefined when K_{p,q} ≠ 0."""
    rho = _as_1ps(rho)
    _check_r(X, rho)
    K = syzygy_kernel(X, p, q).basis
    _, dw = weight_elimination(K.rows, wedge_sym_weights(X.r, p, q, rho.weights))
    return -dw


def det_piece_weight(X, q: int, rho) -> int:
    """ρ-weight on the determinant of the initial space of I_q."""
    rho = _as_1ps(rho)
    _check_r(X, rho)
    _, dw = weight_elimination(X.piece(q).rows, monomial_weights(X.r, q, rho.weights))
    return dw


def det_quotient_weight(X, q: int, rho) -> int:
    rho = _as_1ps(rho)
    return sum(monomial_weights(X.r, q, rho.weights)) - det_piece_weight(X, q, rho)


def quotient_weights(X, q: int, rho) -> list:
    """ρ-weights of a weight-adapted basis of R_q = Sym^q / I_q, sorted."""
    rho = _as_1ps(rho)
    _check_r(X, rho)
    allw = monomial_weights(X.r, q, rho.weights)
    left = Counter(allw)
    left.subtract(initial_weights(X.piece(q).rows, allw))
    return sorted(left.elements())


def vgit_weight(X, rho, beta, mu=None) -> Fraction:
    """μ_(0,2) + β μ_(1,2), the weight for the linearization O(1) ⊠ O(β)."""
    mu02, mu12 = mu if mu is not None else (hm_weight(X, 0, 2, rho), hm_weight(X, 1, 2, rho))
    return mu02 + Fraction(beta) * mu12


def _wall(mu02: int, mu12: int | None):
    if not mu12:
        return None
    b = Fraction(-mu02, mu12)
    return b if b > 0 else None


def wall(X, rho):
    """β > 0 where the two-ray weight changes sign, or None."""
    try:
        mu12 = hm_weight(X, 1, 2, rho)
    except SyzygyPointUndefined:
        return None
    return _wall(hm_weight(X, 0, 2, rho), mu12)


def verdict(w_rho, w_inv) -> str:
    if w_rho < 0:
        return "unstable (destabilized by rho)"
    if w_inv < 0:
        return "unstable (destabilized by rho^-1)"
    if w_rho == 0 and w_inv == 0:
        return "strictly semistable (probe)"
    return "semistable (probe)"


@dataclass
class HMReport:
    rho: OneParamSubgroup
    mu02: int
    mu12: int | None
    wall_beta: Fraction | None
    inv_mu02: int
    inv_mu12: int | None
    beta: Fraction | None = None
    verdicts: list = field(default_factory=list)

    @property
    def weight(self):
        if self.beta is None or self.mu12 is None:
            return None
        return self.mu02 + self.beta * self.mu12

    def weight_at(self, beta) -> Fraction:
        if self.mu12 is None:
            raise SyzygyPointUndefined("syzygy point undefined at (1,2)")
        return self.mu02 + Fraction(beta) * self.mu12

    def verdict_at(self, beta) -> str:
        b = Fraction(beta)
        if self.mu12 is None:
            raise SyzygyPointUndefined("syzygy point undefined at (1,2)")
        return verdict(self.mu02 + b * self.mu12, self.inv_mu02 + b * self.inv_mu12)

    def to_dict(self) -> dict:
        d = {
            "rho": list(self.rho.weights),
            "mu02": self.mu02,
            "mu12": self.mu12,
            "wall": None if self.wall_beta is None else f"{self.wall_beta.numerator}/{self.wall_beta.denominator}",
        }
        if self.beta is not None:
            d["beta"] = str(self.beta)
            d["weight"] = None if self.weight is None else str(self.weight)
        d["verdicts"] = self.verdicts
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def _range_verdicts(rep: HMReport) -> list:
    if rep.mu12 is None:
        return [f"all beta: {verdict(rep.mu02, rep.inv_mu02)} on the Hilbert point alone"]
    out = []
    w = rep.wall_beta
    if w is None:
        out.append(f"beta > 0: {rep.verdict_at(1)}")
        return out
    out.append(f"0 < beta < {w}: {rep.verdict_at(w / 2)}")
    out.append(f"beta = {w}: {rep.verdict_at(w)}")
    out.append(f"beta > {w}: {rep.verdict_at(w + 1)}")
    return out


def hm_report(X, rho, beta=None) -> HMReport:
    rho = _as_1ps(rho)
    inv = rho.inverse()
    mu02, inv02 = hm_weight(X, 0, 2, rho), hm_weight(X, 0, 2, inv)
    try:
        mu12, inv12 = hm_weight(X, 1, 2, rho), hm_weight(X, 1, 2, inv)
    except SyzygyPointUndefined:
        mu12 = inv12 = None
    rep = HMReport(rho, mu02, mu12, _wall(mu02, mu12), inv02, inv12, None if beta is None else Fraction(beta))
    rep.verdicts = _range_verdicts(rep)
    if rep.beta is not None and mu12 is not None:
        rep.verdicts.insert(0, f"beta = {rep.beta}: {rep.verdict_at(rep.beta)}")
    return rep


def _report_job(args):
    X, rho, beta = args
    return hm_report(X, rho, beta)


def probe_1ps_family(X, family, beta, threads: int | None = None) -> list:
    """One HMReport per 1-PS, in input order."""
    family = [_as_1ps(r) for r in family]
    threads = default_threads() if threads is None else threads
    if threads > 1 and len(family) > 1:
        for q in range(4):
            X.piece(q)
        with ProcessPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(_report_job, [(X, r, beta) for r in family]))
    return [hm_report(X, r, beta) for r in family]


def limit_scheme(X, rho, cutoff: int = LIMIT_CUTOFF, force: bool = False) -> IdealPresentation:
    """Flat limit lim ρ(t)·X as t -> 0, through degree ``cutoff``.

    Generators are the initial spaces of I_1..I_cutoff; pieces beyond the
    cutoff are not guaranteed to be those of the true limit.
    """
    rho = _as_1ps(rho)
    _check_r(X, rho)
    if cutoff > LIMIT_CUTOFF and not force:
        raise ValueError(f"cutoff {cutoff} exceeds {LIMIT_CUTOFF}; pass force=True")
    r = X.r
    gens = []
    for q in range(1, cutoff + 1):
        piece = X.piece(q)
        if not piece.dim:
            continue
        init, _ = weight_elimination(piece.rows, monomial_weights(r, q, rho.weights))
        basis = sym_basis(r, q)
        for row in init.rows:
            gens.append(Polynomial(r, {basis[j]: c for j, c in row}))
    ctx = X.ctx
    return IdealPresentation(ctx, gens, name=f"lim {getattr(X, 'name', '') or 'X'}")


def normalized_weights(weights, anchor: int) -> list:
    """``w - anchor`` for each weight, sorted."""
    return sorted(w - anchor for w in weights)
