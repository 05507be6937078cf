"""
Formal Q-linear divisor classes on the moduli of polarized K3 surfaces and on M̄_g.

Three bases are used:

    Mg   lambda, delta
    K3A  lambda, kappa11, kappa30
    K3B  lambda, gamma

On the K3 side the normalization c1(pi_* L) = 0 gives
kappa11 = 12 lambda - 4/(g+1) gamma and kappa30 = 3(g-1) lambda + 2/(g+1) gamma,
so K3A is redundant and K3 classes compare through their K3B form.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import comb

BASES = {
    "Mg": ("lambda", "delta"),
    "K3A": ("lambda", "kappa11", "kappa30"),
    "K3B": ("lambda", "gamma"),
}
PRETTY = {"lambda": "λ", "delta": "δ", "kappa11": "κ11", "kappa30": "κ30", "gamma": "γ"}


class InfiniteSlopeError(ValueError):
    pass


def binom(n: int, k: int) -> int:
    """Binomial coefficient, zero outside 0 <= k <= n (n may be negative)."""
    if k < 0 or n < 0 or k > n:
        return 0
    return comb(n, k)


def _frac_str(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class DivisorClass:
    basis: str
    coeffs: tuple  # ((symbol, Fraction), ...) in basis order
    g: int | None = None

    @classmethod
    def make(cls, basis: str, g: int | None = None, **coeffs) -> "DivisorClass":
        if basis not in BASES:
            raise ValueError(f"unknown basis {basis!r}")
        unknown = set(coeffs) - set(BASES[basis])
        if unknown:
            raise ValueError(f"symbols {sorted(unknown)} not in basis {basis}")
        if basis != "Mg" and g is None:
            raise ValueError("K3 classes need a genus")
        return cls(basis, tuple((s, Fraction(coeffs.get(s, 0))) for s in BASES[basis]), g)

    def __getitem__(self, sym: str) -> Fraction:
        return dict(self.coeffs)[sym]

    def _combine(self, other: "DivisorClass", sign: int) -> "DivisorClass":
        if other.basis != self.basis:
            other = other.to_basis(self.basis)
        if self.g != other.g and None not in (self.g, other.g):
            raise ValueError("genus mismatch")
        c = {s: v + sign * other[s] for s, v in self.coeffs}
        return DivisorClass.make(self.basis, self.g if self.g is not None else other.g, **c)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __mul__(self, k):
        return DivisorClass.make(self.basis, self.g, **{s: v * Fraction(k) for s, v in self.coeffs})

    __rmul__ = __mul__

    def __truediv__(self, k):
        return self * (1 / Fraction(k))

    def __neg__(self):
        return self * -1

    def to_basis(self, basis: str) -> "DivisorClass":
        if basis == self.basis:
            return self
        if "Mg" in (basis, self.basis):
            raise ValueError("no conversion between M̄_g and K3 bases")
        g = self.g
        c = dict(self.coeffs)
        if basis == "K3B":
            lam = c["lambda"] + 12 * c["kappa11"] + 3 * (g - 1) * c["kappa30"]
            gam = Fraction(-4, g + 1) * c["kappa11"] + Fraction(2, g + 1) * c["kappa30"]
            return DivisorClass.make("K3B", g, **{"lambda": lam, "gamma": gam})
        # gamma = kappa30 - (g-1)/4 kappa11
        gam = c["gamma"]
        return DivisorClass.make("K3A", g, **{"lambda": c["lambda"], "kappa11": -Fraction(g - 1, 4) * gam, "kappa30": gam})

    def normal_form(self) -> "DivisorClass":
        return self if self.basis == "Mg" else self.to_basis("K3B")

    def __eq__(self, other):
        if not isinstance(other, DivisorClass):
            return NotImplemented
        a, b = self.normal_form(), other.normal_form()
        return a.basis == b.basis and a.coeffs == b.coeffs and (a.basis == "Mg" or a.g == b.g)

    def __hash__(self):
        n = self.normal_form()
        return hash((n.basis, n.coeffs, n.g))

    def is_zero(self) -> bool:
        return not any(v for _, v in self.normal_form().coeffs)

    def format(self) -> str:
        parts = []
        for s, v in self.coeffs:
            if not v:
                continue
            mag = abs(v)
            body = PRETTY[s] if mag == 1 else f"({_frac_str(mag)}){PRETTY[s]}" if mag.denominator != 1 else f"{mag}{PRETTY[s]}"
            parts.append(("- " if v < 0 else "+ ") + body)
        if not parts:
            return "0"
        text = " ".join(parts)
        return text[2:] if text.startswith("+ ") else "-" + text[2:]

    def __str__(self):
        return self.format()

    def to_dict(self) -> dict:
        d = {"basis": self.basis, "coeffs": {s: _frac_str(v) for s, v in self.coeffs}}
        if self.g is not None:
            d["g"] = self.g
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def mg(lam, delta) -> DivisorClass:
    return DivisorClass.make("Mg", **{"lambda": lam, "delta": delta})


def k3a(g: int, lam=0, kappa11=0, kappa30=0) -> DivisorClass:
    return DivisorClass.make("K3A", g, **{"lambda": lam, "kappa11": kappa11, "kappa30": kappa30})


def k3b(g: int, lam=0, gamma=0) -> DivisorClass:
    return DivisorClass.make("K3B", g, **{"lambda": lam, "gamma": gamma})


# ---------------------------------------------------------------------------
# summation lemma


def summation(r: int, p: int, a: int) -> int:
    """Σ_i (-1)^i C(r, p-i) C(i, a), summed directly."""
    if not 0 <= a <= p <= r:
        raise ValueError("need 0 <= a <= p <= r")
    return sum((-1) ** i * comb(r, p - i) * comb(i, a) for i in range(p + 1))


def summation_closed(r: int, p: int, a: int) -> int:
    if a == r:  # C(-1, 0) = 1
        return (-1) ** a
    return (-1) ** a * binom(r - 1 - a, p - a)


# ---------------------------------------------------------------------------
# K3 surfaces


def rank_E(kind: str, g: int, n: int) -> int:
    """Rank of the n-th tautological bundle over the K3 or curve moduli space."""
    if n < 1:
        raise ValueError("n >= 1")
    if kind == "k3":
        return 2 + n * n * (g - 1)
    if kind == "curve":
        return g if n == 1 else (2 * n - 1) * (g - 1)
    raise ValueError(f"unknown kind {kind!r}")


def c1_E_k3(g: int, i: int) -> DivisorClass:
    if i < 1:
        raise ValueError("i >= 1")
    return k3a(g, lam=-(Fraction((g - 1) * i * i, 2) + 1), kappa11=Fraction(i, 12), kappa30=Fraction(i ** 3, 6))


def c1_S_pq_k3(g: int, p: int, q: int) -> DivisorClass:
    """Alternating sum Σ (-1)^i C(g+1, p-i) c1(E_{q+i}) in the K3A basis."""
    if not 0 <= p <= g or q < 2:
        raise ValueError("need 0 <= p <= g and q >= 2")
    total = k3a(g)
    for i in range(p + 1):
        total = total + (-1) ** i * comb(g + 1, p - i) * c1_E_k3(g, q + i)
    return total


def c1_S_pq_k3_closed(g: int, p: int, q: int) -> DivisorClass:
    """Closed form of the alternating sum after the summation lemma."""
    B = binom
    k11 = Fraction(q * B(g, p) - B(g - 1, p - 1), 12)
    k30 = Fraction(
        q ** 3 * B(g, p) - (3 * q * q + 3 * q + 1) * B(g - 1, p - 1) + (6 * q + 6) * B(g - 2, p - 2) - 6 * B(g - 3, p - 3),
        6,
    )
    lam = -Fraction(g - 1, 2) * (q * q * B(g, p) - (2 * q + 1) * B(g - 1, p - 1) + 2 * B(g - 2, p - 2)) - B(g, p)
    return k3a(g, lam=lam, kappa11=k11, kappa30=k30)


def c1_S_p2_k3_simplified(g: int, p: int) -> DivisorClass:
    """The q = 2 class written with kappa30 and lambda only."""
    c = binom(g - 2, p)
    return k3a(
        g,
        lam=-c * (g - 1 - Fraction(g - 1, g - p - 1)),
        kappa30=c * (1 - Fraction(p, g - 2)),
    )


def effective_p2_k3(g: int, p: int) -> DivisorClass:
    """Positive multiple of c1(S_{p,2}) normalized to gamma-coefficient 2/(g+1)."""
    return k3b(g, lam=Fraction((g - 1) * (2 * g - 3 * p - 1), g - p - 1), gamma=Fraction(2, g + 1))


def effective_p2_scale(g: int, p: int) -> Fraction:
    """The factor relating c1(S_{p,2}) to ``effective_p2_k3``."""
    return Fraction(binom(g - 2, p) * (g - 2 - p), g - 2)


# ---------------------------------------------------------------------------
# canonical curves over M̄_g


def kappa_mg() -> DivisorClass:
    return mg(12, -1)


def c1_E_mg(g: int, n: int) -> DivisorClass:
    """c1 of the n-th twisted Hodge-type bundle, valid for n >= 2."""
    if n < 2:
        raise ValueError("formula holds for n >= 2")
    return kappa_mg() * comb(n, 2) + mg(1, 0) - mg(Fraction(n * (2 * n - 1) * (g - 1), g), 0)


def c1_S_pq_mg(g: int, p: int, q: int) -> DivisorClass:
    if not 0 <= p <= g or q < 2:
        raise ValueError("need 0 <= p <= g and q >= 2")
    total = mg(0, 0)
    for i in range(p + 1):
        total = total + (-1) ** i * comb(g, p - i) * c1_E_mg(g, q + i)
    return total


def c1_S_pq_mg_closed(g: int, p: int, q: int) -> DivisorClass:
    B = binom
    base = mg(8 + Fraction(4, g), -1)
    a = B(g - 3, p - 2) - q * B(g - 2, p - 1) + comb(q, 2) * B(g - 1, p)
    lam = -Fraction(g - 1, g) * (q * B(g - 1, p) - B(g - 2, p - 1)) + B(g - 1, p)
    return base * a + mg(lam, 0)


def c1_S_0q_mg(g: int, q: int) -> DivisorClass:
    return mg(8 + Fraction(4, g), -1) * comb(q, 2) - mg(q - 1 - Fraction(q, g), 0)


def c1_S_p2_mg(g: int, p: int) -> DivisorClass:
    return mg(8 + Fraction(4, g) - Fraction((g - 1) * (g - 2), g * (g - p - 1)), -1) * binom(g - 3, p)


# ---------------------------------------------------------------------------
# genus six two-ray game


def polarization(beta) -> DivisorClass:
    """Descended class of O(1) ⊠ O(beta) in genus six."""
    return c1_S_pq_mg(6, 0, 2) + c1_S_pq_mg(6, 1, 2) * Fraction(beta)


def slope(D: DivisorClass) -> Fraction:
    """a/b for D = a λ - b δ."""
    D = D.normal_form()
    if D.basis != "Mg":
        raise ValueError("slope is defined for M̄_g classes")
    if D["delta"] == 0:
        raise InfiniteSlopeError("infinite slope")
    return D["lambda"] / -D["delta"]


def alpha_of_slope(s) -> Fraction:
    """α with 13λ - (2-α)δ of slope s."""
    return 2 - Fraction(13) / Fraction(s)


def alpha_of_beta(beta) -> Fraction:
    return alpha_of_slope(slope(polarization(beta)))


def alpha_limit() -> Fraction:
    """Limit of alpha_of_beta as beta -> infinity (slope of the (1,2) class alone)."""
    return alpha_of_slope(slope(c1_S_pq_mg(6, 1, 2)))
