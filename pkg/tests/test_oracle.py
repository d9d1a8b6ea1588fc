from oracle import cofactor_resultant, naive_spectrum
from zeroapn.diffanalysis import spectrum
from zeroapn.gf2n import make_ctx
from zeroapn.gf2poly import BitPoly, parse


def test_oracle_anchors():
    assert naive_spectrum(4, 3).uniformity == 2
    assert naive_spectrum(4, 0).uniformity == 16
    assert cofactor_resultant(parse("x^3+x+1"), parse("x^3+x+1")) == 0
    assert cofactor_resultant(parse("x"), parse("x+1")) == 1


def test_naive_spectrum_agrees_everywhere():
    for n in range(1, 9):
        ctx = make_ctx(n)
        for d in range(1 << n):
            s = naive_spectrum(n, d)
            s.check()
            assert s == spectrum(ctx, d), (n, d)


def test_naive_spectrum_other_modulus():
    m = parse("x^6+x^5+1")
    ctx = make_ctx(6, m)
    for d in range(64):
        assert naive_spectrum(6, d, m) == spectrum(ctx, d)


def test_cofactor_resultant_is_symmetric():
    polys = [BitPoly(v) for v in range(2, 32)]
    for f in polys:
        for g in polys:
            assert cofactor_resultant(f, g) == cofactor_resultant(g, f)
