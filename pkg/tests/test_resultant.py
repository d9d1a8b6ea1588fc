import math
import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracle import cofactor_resultant, naive_gcd_degree
from zeroapn.gf2n import make_ctx
from zeroapn.gf2poly import BitPoly, factor, parse, parse_factored
from zeroapn.multivar import MultiPoly
from zeroapn.resultant import (
    BiPoly,
    bareiss_det,
    degree_bound,
    res_eliminate,
    res_eliminate_interp,
    res_product_formula_check,
    res_scalar,
)

EQ = {
    "3.11": "xy^2 + x^5 + x^4y^2 + x + y^2 + x^4",
    "3.12": "x^4y^4 + x^4y + x^4 + y^5 + y^4 + y",
    "3.18": "x*y^2+x^3+x^2*y^2+x+y^2+x^2",
    "3.19": "yx^4+y^3+y^2x^4+y+x^4+y^2",
}


def bi(label):
    return BiPoly.parse(EQ[label])


def test_scalar_examples():
    for f in ("x+1", "x^3+x+1", "x^4+x"):
        assert res_scalar(parse(f), parse(f)) == 0
    assert res_scalar(parse("x+1"), parse("x")) == 1
    assert res_scalar(parse("x^2+x+1"), parse("x+1")) == 1
    with pytest.raises(ValueError):
        res_scalar(parse("1"), parse("1"))


def test_formal_degree_padding():
    # padding one side scales by the other's leading coefficient; padding both gives 0
    assert res_scalar(parse("x+1"), parse("x"), deg_f=2) == 1
    assert res_scalar(parse("x+1"), parse("x"), deg_f=2, deg_g=2) == 0
    with pytest.raises(ValueError):
        res_scalar(parse("x^2+1"), parse("x"), deg_f=1)


def test_eliminate_examples():
    r = res_eliminate(bi("3.18"), bi("3.19"))
    assert factor(r) == parse_factored("x(x+1)(x^2+x+1)^4(x^3+x+1)(x^3+x^2+1)")
    r = res_eliminate(bi("3.11"), bi("3.12"))
    fr = factor(r).as_dict()
    assert parse("x^5+x^2+1") in fr and parse("x^5+x^3+1") in fr


def test_eliminate_rejects_constant_y():
    with pytest.raises(ValueError):
        res_eliminate(BiPoly.parse("x+1"), bi("3.18"))


def test_product_formula_examples():
    assert res_product_formula_check(parse("x^2+x+1"), parse("x"), 2)
    assert res_scalar(parse("x^2+x+1"), parse("x")) == 1
    assert res_product_formula_check(parse("x^2+1"), parse("x+1"), 1)
    with pytest.raises(ValueError):
        res_product_formula_check(parse("x^3+x+1"), parse("x"), 2)


def test_cofactor_oracle_exhaustive():
    polys = [BitPoly(v) for v in range(2, 64)]
    for f in polys:
        for g in polys:
            assert res_scalar(f, g) == cofactor_resultant(f, g)


def test_oracle_edge_cases():
    assert cofactor_resultant(parse("x"), parse("x+1")) == 1
    assert cofactor_resultant(parse("x^3+x"), parse("x^3+x")) == 0
    with pytest.raises(ValueError):
        cofactor_resultant(parse("x^7+1"), parse("x^6+1"))


@given(st.integers(2, (1 << 9) - 1).map(BitPoly), st.integers(2, (1 << 9) - 1).map(BitPoly))
def test_zero_iff_common_factor(f, g):
    assert (res_scalar(f, g) == 0) == (naive_gcd_degree(f, g) >= 1)


def random_bipoly(rng, ydeg, xdeg):
    coeffs = [BitPoly(rng.randrange(1 << (xdeg + 1))) for _ in range(ydeg)]
    coeffs.append(BitPoly(rng.randrange(1, 1 << (xdeg + 1))))
    return BiPoly(tuple(coeffs))


def test_two_determinant_paths_agree():
    rng = random.Random(11)
    for _ in range(25):
        F = random_bipoly(rng, rng.randint(1, 5), rng.randint(0, 6))
        G = random_bipoly(rng, rng.randint(1, 5), rng.randint(0, 6))
        r = res_eliminate(F, G)
        assert r == res_eliminate_interp(F, G)
        assert r.degree <= degree_bound(F, G)
        assert r == res_eliminate(G, F)


def test_bareiss_small():
    assert bareiss_det([[1, 1], [1, 1]]) == 0
    assert bareiss_det([[2, 1], [1, 3]]) == 0b111


def test_common_zeros_kill_resultant():
    rng = random.Random(3)
    ctx = make_ctx(6)
    xs = np.repeat(np.arange(64), 64)
    ys = np.tile(np.arange(64), 64)
    for _ in range(8):
        F = random_bipoly(rng, 3, 3)
        G = random_bipoly(rng, 3, 3)
        r = MultiPoly.from_bitpoly(res_eliminate(F, G))
        fv = MultiPoly.parse(str(F)).evaluate(ctx, {"x": xs, "y": ys})
        gv = MultiPoly.parse(str(G)).evaluate(ctx, {"x": xs, "y": ys})
        hits = np.unique(xs[(fv == 0) & (gv == 0)])
        if hits.size:
            assert not r.evaluate(ctx, {"x": hits}).any()


@settings(max_examples=200, deadline=None)
@given(st.integers(2, 127).map(BitPoly), st.integers(2, 127).map(BitPoly))
def test_product_formula_property(f, g):
    ext = math.lcm(*(p.degree for p, _ in factor(f)))
    assert res_product_formula_check(f, g, ext)
