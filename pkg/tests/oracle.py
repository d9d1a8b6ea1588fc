"""Slow reference implementations for the test suite.

Nothing here touches the package's fast paths: field products are done by
shift-and-reduce on plain ints, spectra enumerate every (a, x) pair, and
resultants expand the Sylvester determinant by cofactors.
"""

from collections import Counter
from functools import lru_cache

from zeroapn.diffanalysis import DiffSpectrum
from zeroapn.gf2poly import BitPoly


def naive_mul(a, b, modulus, n):
    """Shift-and-add product of two residues, reducing as we go."""
    out = 0
    top = 1 << n
    while b:
        if b & 1:
            out ^= a
        b >>= 1
        a <<= 1
        if a & top:
            a ^= modulus
    return out


def naive_pow(a, d, modulus, n):
    out = 1
    while d:
        if d & 1:
            out = naive_mul(out, a, modulus, n)
        a = naive_mul(a, a, modulus, n)
        d >>= 1
    return out


def naive_power_map(n, d, modulus):
    size = 1 << n
    vals = [0] * size
    for x in range(size):
        vals[x] = naive_pow(x, d, modulus, n) if x else (1 if d == 0 else 0)
    return vals


def naive_spectrum(n, d, modulus=None):
    if n > 10:
        raise ValueError("naive_spectrum is limited to n <= 10")
    if modulus is None:
        from zeroapn.gf2n import smallest_irreducible
        modulus = smallest_irreducible(n)
    m = int(modulus.bits) if isinstance(modulus, BitPoly) else int(modulus)
    size = 1 << n
    q1 = size - 1
    e = d if d == 0 else (d % q1 or q1)
    f = naive_power_map(n, e, m)
    rows = []
    for a in range(1, size):
        counts = Counter(f[x ^ a] ^ f[x] for x in range(size))
        per_b = [counts.get(b, 0) for b in range(size)]
        rows.append(Counter(per_b))
    return DiffSpectrum(n, d, tuple(rows))


def sylvester_rows(f, g):
    """Sylvester matrix over F_2 from coefficient lists, highest degree first."""
    m, n = len(f) - 1, len(g) - 1
    size = m + n
    rows = []
    for i in range(n):
        rows.append([0] * i + list(f) + [0] * (size - m - 1 - i))
    for i in range(m):
        rows.append([0] * i + list(g) + [0] * (size - n - 1 - i))
    return rows


def laplace_det(rows):
    size = len(rows)

    @lru_cache(maxsize=None)
    def minor(r, cols):
        if r == size:
            return 1
        acc = 0
        for c in cols:
            if rows[r][c]:
                acc ^= minor(r + 1, tuple(x for x in cols if x != c))
        return acc

    return minor(0, tuple(range(size)))


def cofactor_resultant(f, g):
    """Res(f, g) over F_2 by cofactor expansion; f, g are BitPolys."""
    df, dg = f.degree, g.degree
    if df < 0 or dg < 0:
        raise ValueError("zero polynomial has no resultant")
    if df + dg > 12:
        raise ValueError("cofactor_resultant is limited to deg f + deg g <= 12")
    if df == 0 and dg == 0:
        raise ValueError("both polynomials are constant")
    fc = [f.coeff(i) for i in range(df, -1, -1)]
    gc = [g.coeff(i) for i in range(dg, -1, -1)]
    return laplace_det(sylvester_rows(fc, gc))


def naive_gcd_degree(f, g):
    a, b = int(f.bits), int(g.bits)
    while b:
        while a and a.bit_length() >= b.bit_length():
            a ^= b << (a.bit_length() - b.bit_length())
        a, b = b, a
    return a.bit_length() - 1
