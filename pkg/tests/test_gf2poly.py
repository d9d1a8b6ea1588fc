import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zeroapn import gf2poly
from zeroapn.gf2poly import ONE, ZERO, BitPoly, factor, gcd, is_irreducible, parse

polys = st.integers(min_value=0, max_value=(1 << 40) - 1).map(BitPoly)
nonzero = st.integers(min_value=1, max_value=(1 << 40) - 1).map(BitPoly)
big = st.integers(min_value=1, max_value=(1 << 3000) - 1).map(BitPoly)


def P(s):
    return parse(s)


def test_add_examples():
    assert P("x+1") + P("x+1") == ZERO
    assert P("x^2+x+1") + P("x+1") == P("x^2")


def test_mul_examples():
    assert P("x+1") * P("x+1") == P("x^2+1")
    assert P("x^3+x+1") * P("x^3+x^2+1") == P("x^6+x^5+x^4+x^3+x^2+x+1")


def test_divmod_examples():
    assert divmod(P("x^2+1"), P("x+1")) == (P("x+1"), ZERO)
    assert divmod(P("x^3"), P("x+1")) == (P("x^2+x+1"), ONE)
    with pytest.raises(ZeroDivisionError):
        divmod(P("x"), ZERO)


def test_gcd_examples():
    assert gcd(P("x^2+1"), P("x+1")) == P("x+1")
    assert gcd(P("x^3+x+1"), P("x^3+x^2+1")) == ONE
    with pytest.raises(ValueError):
        gcd(ZERO, ZERO)


def test_irreducible_examples():
    assert is_irreducible(P("x^2+x+1"))
    assert not is_irreducible(P("x^2+1"))
    assert is_irreducible(P("x^5+x^2+1"))
    with pytest.raises(ValueError):
        is_irreducible(ONE)


def test_factor_golden_lines():
    f = factor(P("x^2+1"))
    assert list(f) == [(P("x+1"), 2)]
    target = gf2poly.parse_factored("x(x+1)(x^2+x+1)^4(x^3+x+1)(x^3+x^2+1)")
    assert factor(target.expand()) == target
    f31 = gf2poly.parse_factored("x^7(x+1)^7(x^3+x+1)^2(x^3+x^2+1)^2(x^9+x+1)(x^9+x^8+1)")
    assert list(factor(f31.expand())) == list(f31)
    with pytest.raises(ValueError):
        factor(ZERO)


def test_text_formats():
    assert str(P("x^5+x^2+1")) == "x^5+x^2+1"
    assert P("0x25") == P("x^5+x^2+1")
    assert P("x^5+x^2+1").hex() == "0x25"
    assert str(ZERO) == "0"


@given(polys, nonzero)
def test_divmod_recomposes(a, b):
    q, r = divmod(a, b)
    assert q * b + r == a
    assert r.degree < b.degree


@settings(max_examples=30, deadline=None)
@given(big, st.integers(min_value=1, max_value=(1 << 1400) - 1).map(BitPoly))
def test_large_paths_match_schoolbook(a, b):
    # exercises the spread multiply and the Newton quotient
    q, r = divmod(a * b, b)
    assert q == a and r == ZERO
    prod = 0
    bb = b.bits
    i = 0
    while bb:
        if bb & 1:
            prod ^= a.bits << i
        bb >>= 1
        i += 1
    assert (a * b).bits == prod


@given(nonzero, nonzero)
def test_gcd_divides_both(a, b):
    g = gcd(a, b)
    assert a % g == ZERO and b % g == ZERO


def test_common_divisors_divide_gcd():
    rng = random.Random(5)
    small = [BitPoly(v) for v in range(2, 128)]
    for _ in range(60):
        a = BitPoly(rng.randrange(1, 1 << 12))
        b = BitPoly(rng.randrange(1, 1 << 12))
        g = gcd(a, b)
        for c in small:
            if a % c == ZERO and b % c == ZERO:
                assert g % c == ZERO


@settings(max_examples=60, deadline=None)
@given(st.integers(min_value=1, max_value=(1 << 64) - 1).map(BitPoly))
def test_factor_invariants(a):
    f = factor(a)
    assert f.expand() == a
    keys = [p.sort_key() for p, _ in f]
    assert keys == sorted(keys) and len(set(keys)) == len(keys)
    for p, m in f:
        assert m >= 1 and is_irreducible(p)


@given(polys, polys)
def test_frobenius_square(a, b):
    assert (a * b).square() == a.square() * b.square()
    assert a.square().exponents() == [2 * e for e in a.exponents()]
    assert a.square().sqrt() == a


def test_irreducible_counts():
    # number of irreducibles of degree n over F_2 (necklace formula)
    expected = {1: 2, 2: 1, 3: 2, 4: 3, 5: 6, 6: 9, 7: 18, 8: 30}
    for n, cnt in expected.items():
        got = sum(is_irreducible(BitPoly(v)) for v in range(1 << n, 1 << (n + 1)))
        assert got == cnt
