from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from syzstab.polyring import (
    Polynomial,
    PolynomialSyntaxError,
    RingCtx,
    TargetAlgebra,
    WedgeTensorBasis,
    format_poly,
    parse_poly,
    substitute,
    sym_basis,
    sym_dim,
    sym_index,
    wedge_index,
    wedge_subsets,
)


def polys(r=4, q=2):
    monos = sym_basis(r, q)
    return st.dictionaries(st.sampled_from(monos), st.fractions(max_denominator=5).filter(bool), max_size=6).map(
        lambda d: Polynomial(r, d)
    )


def test_sym_basis_order_and_size():
    b = sym_basis(3, 2)
    assert b[0] == (2, 0, 0)
    assert b[-1] == (0, 0, 2)
    assert len(b) == sym_dim(3, 2) == 6
    for r in range(1, 7):
        for q in range(5):
            assert len(sym_basis(r, q)) == comb(r + q - 1, q)
    assert sym_index(3, 2)[(1, 1, 0)] == 1


def test_wedge_tensor_indexing():
    assert wedge_subsets(4, 2)[0] == (0, 1)
    assert wedge_index(4, 2)[(2, 3)] == 5
    B = WedgeTensorBasis(4, 2, 3)
    assert len(B) == 18
    for k in range(len(B)):
        S, j = B.element(k)
        assert B.index(S, j) == k


def test_parse_and_format():
    f = parse_poly("x0*x3 - x1*x2", 4)
    assert format_poly(f) == "x0*x3 - x1*x2"
    g = parse_poly("-1/2 * z1 + 3 z2^2", 3)
    assert g.terms == {(0, 1, 0): Fraction(-1, 2), (0, 0, 2): 3}
    assert format_poly(parse_poly("-1/2*x1", 2)) == "-1/2*x1"
    for bad in ("x0 +", "x9", "x0^", "2**x1", "y"):
        with pytest.raises(PolynomialSyntaxError):
            parse_poly(bad, 4)


@settings(max_examples=200, deadline=None)
@given(polys())
def test_format_parse_roundtrip(f):
    assert parse_poly(format_poly(f), 4) == f


@settings(max_examples=100, deadline=None)
@given(polys(), polys(q=1), polys(q=1))
def test_ring_axioms(f, a, b):
    assert f * (a + b) == f * a + f * b
    assert a * b == b * a
    assert (f - f).is_zero()
    assert (a * b).is_homogeneous() or (a * b).is_zero()


@settings(max_examples=100, deadline=None)
@given(polys(q=3))
def test_vector_roundtrip(f):
    assert Polynomial.from_vector(4, 3, f.to_vector(3)) == f


def test_permuted_renames_variables():
    f = parse_poly("x0*x1 + x2^2", 3)
    assert f.permuted((1, 2, 0)) == parse_poly("x1*x2 + x0^2", 3)


def test_nilpotent_target_algebra():
    A = TargetAlgebra(("t", "e"), nilpotent=(1,))
    t, e = Polynomial.var(2, 0), Polynomial.var(2, 1)
    assert A.mul(e, e).is_zero()
    assert A.mul(t + e, t + e) == t * t + 2 * t * e
    images = [t, t + e]
    f = parse_poly("x0*x1", 2)
    assert substitute(f, images, A) == t * t + t * e


def test_ring_ctx_validation():
    assert RingCtx(3).names == ("x0", "x1", "x2")
    with pytest.raises(ValueError):
        RingCtx(2, ("a", "a"))
    with pytest.raises(ValueError):
        RingCtx(0)
