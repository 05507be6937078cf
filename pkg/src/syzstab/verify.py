"""
Regression anchors: every numeric claim the package reproduces, with its
provenance tag (PAPER, DERIVED or TRIVIAL) and a short citation string.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from . import divisors as D
from . import gallery as G
from .ideals import subspace_of_polys
from .koszul import betti_table, koszul_dim, schur_dim, syzygy_kernel, wedge_sym_weights
from .linalg import initial_weights
from .polyring import Polynomial
from .stability import (
    det_piece_weight,
    det_quotient_weight,
    hm_weight,
    limit_scheme,
    probe_1ps_family,
    quotient_weights,
    vgit_weight,
    wall,
)

RHO = G.RHO_SIGMA0


@dataclass(frozen=True)
class Anchor:
    name: str
    tag: str
    cite: str
    compute: Callable[[], object]
    expected: object


@dataclass
class AnchorResult:
    anchor: Anchor
    observed: object
    ok: bool
    seconds: float
    error: str = ""

    def to_dict(self) -> dict:
        return {
            "name": self.anchor.name,
            "tag": self.anchor.tag,
            "cite": self.anchor.cite,
            "expected": str(self.anchor.expected),
            "observed": str(self.observed),
            "ok": self.ok,
            "error": self.error,
        }


def _hilbert_list(name: str, qs) -> list:
    X = G.get(name).obj
    return [X.hilbert(q) for q in qs]


def _carpet_vanishing(k: int) -> list:
    X = G.get(f"carpet-{k}").obj
    return [koszul_dim(X, p, 2) for p in range(k)]


def _linear_strand(name: str) -> list:
    X = G.get(name).obj
    return [koszul_dim(X, p, 1) for p in (1, 2, 3)]


def _cone_section():
    cone = G.get("elliptic-cone").obj
    x = [Polynomial.var(6, i) for i in range(6)]
    Q = x[0] * x[0] + x[1] * x[2] - x[3] * x[4] + x[5] * x[5]
    return G.quadric_section(cone, Q, name="cone-section")


def _cone_syzygy_weights() -> list:
    cone = G.get("elliptic-cone").obj
    K = syzygy_kernel(cone, 1, 2).basis
    return initial_weights(K.rows, wedge_sym_weights(6, 1, 2, G.cone_rho()))


def _carpet1_double_quadric() -> bool:
    X = G.get("carpet-1").obj
    return X.piece(4).contains(G.carpet_k1_double_quadric())


def _carpet2_quadrics() -> bool:
    X = G.get("carpet-2").obj
    return X.piece(2) == subspace_of_polys(6, 2, G.carpet_k2_quadrics())


def _section_kernel_equals_sigma0() -> bool:
    a = syzygy_kernel(G.get("sigma0-section").obj, 1, 2).basis
    b = syzygy_kernel(G.get("sigma0").obj, 1, 2).basis
    return a == b


def _probes_nonnegative() -> bool:
    reps = probe_1ps_family(G.get("C0").obj, G.CENTRALIZER_PROBES, 4, threads=1)
    return all(r.weight >= 0 for r in reps)


def anchors() -> list:
    A = Anchor
    C0 = lambda: G.get("C0").obj  # noqa: E731
    S0 = lambda: G.get("sigma0").obj  # noqa: E731
    sec = lambda: G.get("sigma0-section").obj  # noqa: E731
    return [
        A("carpet-1 double quadric in degree 4", "PAPER", "a double quadric given by the equation", _carpet1_double_quadric, True),
        A("carpet-2 quadrics", "PAPER", "(2,2,2) complete intersection", _carpet2_quadrics, True),
        *[
            A(f"carpet-{k} Hilbert function", "PAPER", "of rank 2+i^2(g-1)", (lambda k=k: _hilbert_list(f"carpet-{k}", (1, 2, 3))), [2 + 2 * k * q * q for q in (1, 2, 3)])
            for k in (1, 2, 3)
        ],
        *[
            A(f"ribbon-{k} Hilbert function", "DERIVED", "h0(K^q) = (2q-1)(g-1)", (lambda k=k: _hilbert_list(f"ribbon-{k}", (2, 3))), [(2 * q - 1) * 2 * k for q in (2, 3)])
            for k in (1, 2, 3)
        ],
        A("K_{p,2}(carpet-2) = 0, p <= 1", "PAPER", "K_{p,2}(X)=0 for p <= k-1", lambda: _carpet_vanishing(2), [0, 0]),
        A("K_{p,2}(carpet-3) = 0, p <= 2", "PAPER", "K_{p,2}(X)=0 for p <= k-1", lambda: _carpet_vanishing(3), [0, 0, 0]),
        A("section Betti table", "PAPER", "Clifford index 2 table 1; 6 5; 5 6; 1", lambda: betti_table(sec(), pmax=4, qmax=3).rows(), [[1], [6, 5], [5, 6], [1]]),
        A("scroll-2 linear strand", "PAPER", "Clifford index 1 row 6 8 3", lambda: _linear_strand("scroll-2"), [6, 8, 3]),
        A("veronese linear strand", "DERIVED", "minimal degree surface: Eagon-Northcott strand", lambda: _linear_strand("veronese"), [6, 8, 3]),
        A("schur_dim(6,1,2)", "PAPER", "S^{lambda_{p,2}}(V) = wedge^{p+1}V (x) V / wedge^{p+2}V", lambda: schur_dim(6, 1, 2), 70),
        A("det I_Sigma0(2) weight", "PAPER", "rho acts on det H0(I(2)) with weight 2", lambda: det_piece_weight(S0(), 2, RHO), 2),
        A("det I_Sigma0(3) weight", "PAPER", "with weight 9", lambda: det_piece_weight(S0(), 3, RHO), 9),
        A("det H0(O_Sigma0(2)) weight", "PAPER", "on det H0(O(2)) with weight -2", lambda: det_quotient_weight(S0(), 2, RHO), -2),
        A("weights on H0(O_Sigma0(2))", "PAPER", "(-14,-8,-8,-8,10,10,10,-2,...,4)", lambda: quotient_weights(S0(), 2, RHO), sorted([-14, -8, -8, -8, 10, 10, 10, -2, -2, -2, -2, -2, 4, 4, 4, 4])),
        A("Sigma0 (1,2) kernel dimension", "PAPER", "table entry 5", lambda: syzygy_kernel(S0(), 1, 2).dim, 5),
        A("section (1,2) kernel equals Sigma0's", "PAPER", "the only linear syzygies among the quadrics are those coming from S", _section_kernel_equals_sigma0, True),
        A("mu_(0,2)(C0)", "PAPER", "14-2=12", lambda: hm_weight(C0(), 0, 2, RHO), 12),
        A("mu_(1,2)(Sigma0)", "PAPER", "the rho-weight of Sp_(1,2)(Sigma0) is -3", lambda: hm_weight(S0(), 1, 2, RHO), -3),
        A("mu_(0,2)(section)", "DERIVED", "equality iff the lowest rho-weight term of Q is z0^2", lambda: hm_weight(sec(), 0, 2, RHO), 12),
        A("vgit(C0, rho, 4)", "PAPER", "C0 is polystable for beta=4", lambda: vgit_weight(C0(), RHO, 4), 0),
        A("vgit(C0, rho, 5)", "PAPER", "destabilized by rho when beta > 4", lambda: vgit_weight(C0(), RHO, 5), -3),
        A("vgit(C0, rho^-1, 3)", "PAPER", "destabilized by rho^-1 when beta < 4", lambda: vgit_weight(C0(), [-w for w in RHO], 3), -3),
        A("wall(C0)", "PAPER", "beta = 4 is the first wall", lambda: wall(C0(), RHO), Fraction(4)),
        A("wall(section)", "DERIVED", "same weight pair as C0", lambda: wall(sec(), RHO), Fraction(4)),
        A("centralizer probes at beta=4", "DERIVED", "no probed 1-PS destabilizes C0", _probes_nonnegative, True),
        A("flat limit of the section", "PAPER", "I_C0 = (z0^2, I_Sigma0)", lambda: limit_scheme(sec(), RHO).piece(2) == C0().piece(2), True),
        A("scroll-1 mu_(0,2)", "DERIVED", "weight a-5 on x0..xa, a+1 on the rest; minor sum 3(-2)+3(4)", lambda: hm_weight(G.get("scroll-1").obj, 0, 2, (-4, -4, 2, 2, 2, 2)), -6),
        A("cone quadric weight", "PAPER", "five quadrics homogeneous of weight 2", lambda: det_piece_weight(G.get("elliptic-cone").obj, 2, G.cone_rho()), 10),
        A("cone syzygy weights", "DERIVED", "syzygies homogeneous of weight 3; five of them (6*5 - dim I_3)", _cone_syzygy_weights, [3, 3, 3, 3, 3]),
        A("cone section mu_(0,2)", "PAPER", "Sp_(0,2)(C) strictly semistable: smallest weight term of Q is -10", lambda: hm_weight(_cone_section(), 0, 2, G.cone_rho()), 0),
        A("c1(S_{0,2}) on M6", "PAPER", "descend to 8 lambda - delta", lambda: D.c1_S_pq_mg(6, 0, 2), D.mg(8, -1)),
        A("c1(S_{1,2}) on M6", "PAPER", "and 47/2 lambda - 3 delta", lambda: D.c1_S_pq_mg(6, 1, 2), D.mg(Fraction(47, 2), -3)),
        A("polarization(4)", "PAPER", "102 lambda - 13 delta", lambda: D.polarization(4), D.mg(102, -13)),
        A("moving slope", "PAPER", "moving slope of M6 is 102/13", lambda: D.slope(D.polarization(4)), Fraction(102, 13)),
        A("alpha_of_beta(4)", "PAPER", "G(4) = M6(35/102)", lambda: D.alpha_of_beta(4), Fraction(35, 102)),
        A("alpha limit", "PAPER", "alpha in (16/47, 35/102)", D.alpha_limit, Fraction(16, 47)),
        A("c1(E_2) on F_7", "PAPER", "(2g-1) lambda + 2/(g+1) gamma", lambda: D.c1_E_k3(7, 2), D.k3b(7, 13, Fraction(1, 4))),
        A("c1(E_1) normalization", "DERIVED", "c1(pi_* L) = 0", lambda: D.c1_E_k3(9, 1).is_zero(), True),
        A("rank E_3 on F_5", "PAPER", "of rank 2+i^2(g-1)", lambda: D.rank_E("k3", 5, 3), 38),
        A("rank E_2 on M6", "PAPER", "(2n-1)(g-1) for n >= 2", lambda: D.rank_E("curve", 6, 2), 15),
        A("summation(6,2,0)", "DERIVED", "C(6,2) - C(6,1) + C(6,0)", lambda: D.summation(6, 2, 0), 10),
    ]


def run_anchors(selected=None) -> list:
    out = []
    for a in anchors():
        if selected and a.name not in selected:
            continue
        t = time.perf_counter()
        try:
            got = a.compute()
            out.append(AnchorResult(a, got, got == a.expected, time.perf_counter() - t))
        except Exception as exc:  # report, do not abort the sweep
            out.append(AnchorResult(a, None, False, time.perf_counter() - t, f"{type(exc).__name__}: {exc}"))
    return out


def format_report(results: list, fmt: str = "pretty") -> str:
    if fmt == "json":
        passed = sum(r.ok for r in results)
        return json.dumps({"passed": passed, "failed": len(results) - passed, "anchors": [r.to_dict() for r in results]}, indent=1)
    if fmt == "csv":
        lines = ["name,tag,ok,expected,observed"]
        for r in results:
            lines.append(",".join(f'"{v}"' for v in (r.anchor.name, r.anchor.tag, r.ok, r.anchor.expected, r.observed)))
        return "\n".join(lines)
    lines = []
    for r in results:
        mark = "PASS" if r.ok else "FAIL"
        lines.append(f"[{mark}] {r.anchor.name:<40} {r.anchor.tag:<8} \"{r.anchor.cite}\"")
        if not r.ok:
            lines.append(f"       expected {r.anchor.expected}, observed {r.observed} {r.error}".rstrip())
    passed = sum(r.ok for r in results)
    lines.append(f"{passed} passed, {len(results) - passed} failed")
    return "\n".join(lines)
