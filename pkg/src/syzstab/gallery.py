"""
Named constructors for the explicit schemes used throughout the package.

Each constructor returns a ``GalleryItem`` bundling the scheme with a table of
expected values.  ``GalleryItem.run_checks`` recomputes every entry, so the
gallery doubles as a regression table.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from importlib import resources

from .ideals import (
    IdealPresentation,
    Parameterization,
    carpet_parameterization,
    hilbert_fn,
    hyperplane_restrict,
    minors_ideal,
    parse_matrix,
    pfaffian_ideal,
    sym_minors_ideal,
)
from .linalg import SparseMat, kernel_basis
from .polyring import Polynomial, RingCtx, TargetAlgebra, parse_poly, sym_basis

# weights of the torus acting on Σ₀ in the basis a, b1, b2, b3, c1, c2
RHO_SIGMA0 = (-7, -1, -1, -1, 5, 5)
CENTRALIZER_PROBES = ((-2, 0, 0, 0, 1, 1), (2, 0, 0, 0, -1, -1))


@dataclass(frozen=True)
class Check:
    value: object
    tag: str  # PAPER / DERIVED / TRIVIAL
    cite: str = ""


@dataclass
class GalleryItem:
    name: str
    obj: object
    description: str = ""
    expected: dict = field(default_factory=dict)  # check name -> Check

    @property
    def r(self) -> int:
        return self.obj.r

    def run_checks(self) -> dict:
        """Recompute every expected entry; returns name -> (ok, computed, Check)."""
        out = {}
        for key, check in self.expected.items():
            got = evaluate_check(self.obj, key)
            out[key] = (got == check.value, got, check)
        return out


def evaluate_check(X, key: str):
    kind, _, arg = key.partition(":")
    if kind == "hilbert":
        return hilbert_fn(X, int(arg))
    if kind == "piece_dim":
        return X.piece(int(arg)).dim
    raise KeyError(f"unknown check {key!r}")


def _x(r: int, i: int) -> Polynomial:
    return Polynomial.var(r, i)


# ---------------------------------------------------------------------------
# K3 carpets and canonical ribbons


def carpet(k: int) -> GalleryItem:
    P = carpet_parameterization(k)
    exp = {f"hilbert:{q}": Check(2 + 2 * k * q * q, "PAPER", "rank 2+i^2(g-1), g=2k+1") for q in (1, 2, 3)}
    if k == 1:
        exp["piece_dim:2"] = Check(0, "PAPER", "double quadric: no quadrics")
        exp["piece_dim:4"] = Check(1, "PAPER", "double quadric generator")
    if k == 2:
        exp["piece_dim:2"] = Check(3, "PAPER", "(2,2,2) complete intersection")
    return GalleryItem(f"carpet-{k}", P, f"K3 carpet S_{2 * k + 1} in P^{2 * k + 1}", exp)


def carpet_k2_quadrics() -> list:
    r = 6
    x = [_x(r, i) for i in range(r)]
    return [
        x[0] * x[2] - x[1] * x[1],
        x[3] * x[5] - x[4] * x[4],
        x[0] * x[5] + x[2] * x[3] - 2 * x[1] * x[4],
    ]


def carpet_k1_double_quadric() -> Polynomial:
    # index-corrected form: the k=1 chart forces x0*x3 - x1*x2
    x = [_x(4, i) for i in range(4)]
    return (x[0] * x[3] - x[1] * x[2]) ** 2


def ribbon(k: int) -> GalleryItem:
    R = hyperplane_restrict(carpet_parameterization(k))
    exp = {"hilbert:1": Check(2 * k + 1, "DERIVED", "canonical curve of genus 2k+1")}
    for q in (2, 3):
        exp[f"hilbert:{q}"] = Check((2 * q - 1) * 2 * k, "DERIVED", "h0(K^q) = (2q-1)(g-1)")
    return GalleryItem(f"ribbon-{k}", R, f"balanced canonical ribbon R_{2 * k + 1}", exp)


# ---------------------------------------------------------------------------
# surfaces of minimal degree in P^5


def scroll(a: int) -> GalleryItem:
    """Rational normal surface scroll S_{a,4-a} from its 2x4 matrix."""
    if a not in (1, 2):
        raise ValueError("scroll(a) needs a in {1, 2}")
    r = 6
    x = [_x(r, i) for i in range(r)]
    top = [x[i] for i in range(a)] + [x[i] for i in range(a + 1, 5)]
    bot = [x[i] for i in range(1, a + 1)] + [x[i] for i in range(a + 2, 6)]
    X = minors_ideal([top, bot], RingCtx(r), name=f"scroll-{a}")
    exp = {
        "piece_dim:2": Check(6, "PAPER" if a == 2 else "DERIVED", "six 2x2 minors"),
        "hilbert:1": Check(6, "TRIVIAL"),
    }
    return GalleryItem(f"scroll-{a}", X, f"scroll S_{{{a},{4 - a}}}, Maroni invariant {abs(4 - 2 * a)}", exp)


def maroni_invariant(a: int) -> int:
    return abs(4 - 2 * a)


def destabilizing_scroll_rho(a: int) -> tuple:
    """Weight ``a-5`` on x0..x_a and ``a+1`` on the rest."""
    return tuple([a - 5] * (a + 1) + [a + 1] * (5 - a))


def veronese_matrix() -> list:
    r = 6
    x = [_x(r, i) for i in range(r)]
    return [[x[0], x[1], x[2]], [x[1], x[3], x[4]], [x[2], x[4], x[5]]]


def veronese() -> GalleryItem:
    X = sym_minors_ideal(veronese_matrix(), RingCtx(6), name="veronese")
    exp = {
        "piece_dim:2": Check(6, "DERIVED", "rank of the symmetric minor span"),
        "hilbert:2": Check(15, "DERIVED", "h0(P^2, O(4))"),
    }
    return GalleryItem("veronese", X, "Veronese surface v2(P^2) in P^5", exp)


def veronese_parameterization() -> Parameterization:
    # x0..x5 -> u^2, uv, uw, v^2, vw, w^2, matching the symmetric matrix slots
    alg = TargetAlgebra(("u", "v", "w"))
    mons = [(2, 0, 0), (1, 1, 0), (1, 0, 1), (0, 2, 0), (0, 1, 1), (0, 0, 2)]
    images = tuple(Polynomial(3, {m: 1}) for m in mons)
    return Parameterization(RingCtx(6), alg, images, homogeneous_degree=2, name="veronese-param")


# ---------------------------------------------------------------------------
# quintic del Pezzo surfaces


PLANE = TargetAlgebra(("x", "y", "z"))


def _plane(*terms) -> Polynomial:
    return Polynomial(3, {m: c for m, c in terms})


def sigma0_cubic_basis() -> tuple:
    """a = xy(x-y), b1 = zx^2, b2 = zxy, b3 = zy^2, c1 = z^2x, c2 = z^2y."""
    return (
        _plane(((2, 1, 0), 1), ((1, 2, 0), -1)),
        _plane(((2, 0, 1), 1)),
        _plane(((1, 1, 1), 1)),
        _plane(((0, 2, 1), 1)),
        _plane(((1, 0, 2), 1)),
        _plane(((0, 1, 2), 1)),
    )


def sigma0_parameterization() -> Parameterization:
    return Parameterization(
        RingCtx(6, tuple(f"z{i}" for i in range(6))),
        PLANE,
        sigma0_cubic_basis(),
        homogeneous_degree=3,
        name="sigma0-param",
    )


# The z4 entries carry the sign that makes the Pfaffians vanish on the cubic
# basis (z0..z5) = (a, b1, b2, b3, c1, c2).
SIGMA0_MATRIX = (
    "0,   z1,  z1,  z2, -z0",
    "-z1, 0,  -z4,  0,   z2",
    "-z1, z4,  0,   z5,  z3",
    "-z2, 0,  -z5,  0,   z3",
    "z0, -z2, -z3, -z3,  0",
)


def sigma0_matrix() -> list:
    return parse_matrix(SIGMA0_MATRIX, 6)


def sigma0_quadrics() -> list:
    """The five quadrics of Σ₀ in the generator form used for C₀."""
    r = 6
    z = [_x(r, i) for i in range(r)]
    return [
        z[3] * z[4] - z[2] * z[5],
        z[2] * z[4] - z[1] * z[5],
        z[2] * z[2] - z[1] * z[3],
        z[1] * z[3] - z[2] * z[3] - z[0] * z[5],
        z[1] * z[2] - z[0] * z[4] - z[1] * z[3],
    ]


def _sigma0_ideal() -> IdealPresentation:
    return pfaffian_ideal(sigma0_matrix(), RingCtx(6, tuple(f"z{i}" for i in range(6))), name="sigma0")


def del_pezzo_singular() -> GalleryItem:
    X = _sigma0_ideal()
    exp = {
        "hilbert:1": Check(6, "TRIVIAL"),
        "piece_dim:2": Check(5, "PAPER", "h0(P^5, I_S(2)) = 5"),
        "hilbert:2": Check(16, "DERIVED", "21 - 5; sixteen listed rho-weights"),
        "piece_dim:3": Check(25, "DERIVED", "56 - h0(-3K) = 56 - 31"),
    }
    return GalleryItem("sigma0", X, "quintic del Pezzo with one A1 point (Pfaffian ideal)", exp)


def smooth_del_pezzo_basis() -> tuple:
    """Reduced basis of plane cubics through [1:0:0], [0:1:0], [0:0:1], [1:1:1]."""
    mons = sym_basis(3, 3)
    points = [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1)]
    rows = []
    for pt in points:
        row = {}
        for j, m in enumerate(mons):
            v = 1
            for c, e in zip(pt, m):
                v *= c ** e
            if v:
                row[j] = v
        rows.append(row)
    ker = kernel_basis(SparseMat.from_rows(rows, len(mons)))
    return tuple(Polynomial(3, {mons[j]: c for j, c in row}) for row in ker.rows)


def del_pezzo_smooth() -> GalleryItem:
    P = Parameterization(RingCtx(6), PLANE, smooth_del_pezzo_basis(), homogeneous_degree=3, name="sigma")
    exp = {
        "hilbert:1": Check(6, "TRIVIAL"),
        "piece_dim:2": Check(5, "PAPER", "h0(P^5, I_S(2)) = 5"),
        "piece_dim:3": Check(25, "DERIVED", "56 - h0(-3K) = 56 - 31"),
    }
    return GalleryItem("sigma", P, "smooth quintic del Pezzo (cubics through four general points)", exp)


def quadric_section(S: GalleryItem | IdealPresentation, Q: Polynomial, name: str = "") -> IdealPresentation:
    """Ideal generated by the quadrics of ``S`` together with ``Q``."""
    X = S.obj if isinstance(S, GalleryItem) else S
    quadrics = X.piece(2).polys()
    return IdealPresentation(X.ctx, quadrics + [Q], name)


def c_zero() -> GalleryItem:
    X = _sigma0_ideal()
    z0 = _x(6, 0)
    C0 = IdealPresentation(X.ctx, list(X.generators) + [z0 * z0], name="C0")
    exp = {
        "piece_dim:2": Check(6, "PAPER", "I_{C0} = (z0^2, I_Sigma0): six quadrics"),
        "hilbert:2": Check(15, "DERIVED", "21 - 6 = h0(K^2) for genus 6"),
    }
    return GalleryItem("C0", C0, "rho-fixed quadric section (z0^2) of Σ₀", exp)


def _data(name: str) -> str:
    return resources.files("syzstab.data").joinpath(name).read_text()


def stored_section_quadric() -> Polynomial:
    lines = [ln.split("#", 1)[0].strip() for ln in _data("sigma0_section.txt").splitlines()]
    return parse_poly(next(ln for ln in lines if ln), 6)


def sigma0_section() -> GalleryItem:
    S = del_pezzo_singular()
    X = quadric_section(S, stored_section_quadric(), name="sigma0-section")
    exp = {
        "hilbert:1": Check(6, "TRIVIAL"),
        "hilbert:2": Check(15, "DERIVED", "canonical genus 6: (2q-1)(g-1)"),
        "hilbert:3": Check(25, "DERIVED", "canonical genus 6: (2q-1)(g-1)"),
    }
    return GalleryItem("sigma0-section", X, "stored generic quadric section of Σ₀ (genus 6, Clifford index 2)", exp)


def stored_cone_matrix() -> list:
    lines = [ln.split("#", 1)[0].strip() for ln in _data("elliptic_cone.txt").splitlines()]
    return parse_matrix([ln for ln in lines if ln], 6)


def elliptic_normal_curve(matrix) -> IdealPresentation:
    """The Pfaffian ideal in x1..x5 alone, i.e. the base curve in P^4."""
    shifted = [[Polynomial(5, {m[1:]: c for m, c in f.terms.items()}) for f in row] for row in matrix]
    return pfaffian_ideal(shifted, RingCtx(5), name="elliptic-quintic")


class InvalidConeError(ValueError):
    pass


def elliptic_cone(matrix=None) -> GalleryItem:
    """Cone with vertex ``[1:0:...:0]`` over a Pfaffian quintic curve in P^4.

    ``matrix`` is a 5x5 antisymmetric matrix of linear forms in x1..x5 (as
    polynomials in x0..x5).  The base curve must have Hilbert function ``5q``
    for ``1 <= q <= 4``.
    """
    if matrix is None:
        matrix = stored_cone_matrix()
    for row in matrix:
        for f in row:
            if any(m[0] for m in f.terms):
                raise InvalidConeError("matrix entries may not involve x0")
    E = elliptic_normal_curve(matrix)
    for q in range(1, 5):
        if hilbert_fn(E, q) != 5 * q:
            raise InvalidConeError(f"base curve has hilbert({q}) = {hilbert_fn(E, q)}, expected {5 * q}")
    X = pfaffian_ideal(matrix, RingCtx(6), name="elliptic-cone")
    exp = {
        "piece_dim:2": Check(5, "PAPER", "h0(P^5, I_S(2)) = 5"),
        "hilbert:2": Check(16, "DERIVED", "1 + 5 + 10"),
        "hilbert:3": Check(31, "DERIVED", "1 + 5 + 10 + 15"),
    }
    return GalleryItem("elliptic-cone", X, "cone over an elliptic normal quintic", exp)


def cone_rho() -> tuple:
    return (-5, 1, 1, 1, 1, 1)


# ---------------------------------------------------------------------------
# registry

RESERVED = ("sigma-a1a2", "sigma-a2", "sigma-a3", "sigma-a4", "sigma-2a1")

_REGISTRY = {
    "carpet-1": lambda: carpet(1),
    "carpet-2": lambda: carpet(2),
    "carpet-3": lambda: carpet(3),
    "ribbon-1": lambda: ribbon(1),
    "ribbon-2": lambda: ribbon(2),
    "ribbon-3": lambda: ribbon(3),
    "scroll-1": lambda: scroll(1),
    "scroll-2": lambda: scroll(2),
    "veronese": veronese,
    "sigma0": del_pezzo_singular,
    "sigma": del_pezzo_smooth,
    "C0": c_zero,
    "sigma0-section": sigma0_section,
    "elliptic-cone": elliptic_cone,
}


class UnknownSchemeError(KeyError):
    pass


def names() -> list:
    return list(_REGISTRY)


def get(name: str) -> GalleryItem:
    if name in RESERVED:
        raise NotImplementedError(f"{name}: singular del Pezzo type reserved but not constructed")
    try:
        return _REGISTRY[name]()
    except KeyError:
        raise UnknownSchemeError(name) from None

