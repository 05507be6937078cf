from fractions import Fraction

import pytest

from syzstab import gallery as G
from syzstab.polyring import Polynomial, sym_basis


@pytest.mark.parametrize("name", G.names())
def test_gallery_expected_values(name):
    item = G.get(name)
    results = item.run_checks()
    assert results
    bad = {k: v[:2] for k, v in results.items() if not v[0]}
    assert not bad


def test_reserved_and_unknown_names():
    for name in G.RESERVED:
        with pytest.raises(NotImplementedError):
            G.get(name)
    with pytest.raises(G.UnknownSchemeError):
        G.get("no-such-scheme")


def test_stored_section_quadric_shape():
    Q = G.stored_section_quadric()
    assert Q.is_homogeneous(2)
    assert Q.terms[(2, 0, 0, 0, 0, 0)] != 0
    assert all(c.denominator == 1 and -3 <= c <= 3 for c in Q.terms.values())


def test_c_zero_generators_match_listed_form():
    C0 = G.get("C0").obj
    z0 = Polynomial.var(6, 0)
    listed = [z0 * z0] + G.sigma0_quadrics()
    from syzstab.ideals import subspace_of_polys

    assert C0.piece(2) == subspace_of_polys(6, 2, listed)


def test_scroll_maroni_and_rho():
    assert G.maroni_invariant(1) == 2 and G.maroni_invariant(2) == 0
    assert G.destabilizing_scroll_rho(1) == (-4, -4, 2, 2, 2, 2)
    assert sum(G.destabilizing_scroll_rho(2)) == 0
    with pytest.raises(ValueError):
        G.scroll(3)


def test_veronese_matches_its_parameterization():
    assert G.get("veronese").obj.piece(2) == G.veronese_parameterization().piece(2)


def test_smooth_del_pezzo_cubics():
    basis = G.smooth_del_pezzo_basis()
    assert len(basis) == 6
    assert all(f.is_homogeneous(3) for f in basis)


def test_elliptic_cone_validation():
    M = G.stored_cone_matrix()
    # entries in x0 are rejected
    bad = [row[:] for row in M]
    bad[0][1] = bad[0][1] + Polynomial.var(6, 0)
    bad[1][0] = bad[1][0] - Polynomial.var(6, 0)
    with pytest.raises(G.InvalidConeError):
        G.elliptic_cone(bad)
    # a degenerate matrix fails the Hilbert function test
    x1 = Polynomial.var(6, 1)
    zero = Polynomial(6)
    flat = [[zero] * 5 for _ in range(5)]
    for i in range(5):
        for j in range(i + 1, 5):
            flat[i][j], flat[j][i] = x1, -x1
    with pytest.raises(G.InvalidConeError):
        G.elliptic_cone(flat)


def test_elliptic_cone_quadrics_avoid_the_vertex_variable():
    X = G.get("elliptic-cone").obj
    for f in X.piece(2).polys():
        assert all(m[0] == 0 for m in f.terms)
    assert G.cone_rho() == (-5, 1, 1, 1, 1, 1)


def test_rho_constants():
    assert G.RHO_SIGMA0 == (-7, -1, -1, -1, 5, 5)
    assert all(sum(p) == 0 for p in G.CENTRALIZER_PROBES)
    assert Fraction(sum(G.RHO_SIGMA0)) == 0
    assert len(sym_basis(6, 2)) == 21
