"""Polynomials over GF(2), bit-packed into Python integers.

Bit i of the backing integer is the coefficient of x^i.  All operations are
exact and pure; BitPoly instances are immutable and hashable.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from typing import Iterable, Iterator

import numpy as np

__all__ = [
    "BitPoly",
    "Factorization",
    "X",
    "ONE",
    "ZERO",
    "add",
    "mul",
    "divmod_poly",
    "gcd",
    "is_irreducible",
    "factor",
    "parse",
    "parse_factored",
    "clmul",
    "clsquare",
]

# Above this operand size the integer-multiplication trick beats the shift loop.
_SPREAD_THRESHOLD = 200
# Quotients longer than this use Newton inversion instead of long division.
_NEWTON_THRESHOLD = 1200


def _clmul_loop(a: int, b: int) -> int:
    if a.bit_count() < b.bit_count():
        a, b = b, a
    c = 0
    while b:
        low = b & -b
        c ^= a * low
        b ^= low
    return c


def _spread(a: int, nbytes: int) -> int:
    bits = np.unpackbits(np.frombuffer(a.to_bytes(nbytes, "little"), dtype=np.uint8), bitorder="little")
    return int.from_bytes(bits.astype("<u2").tobytes(), "little")


def _clmul_spread(a: int, b: int) -> int:
    # Each output coefficient is a sum of at most min(deg)+1 < 2^16 terms, so
    # 16-bit slots never carry into each other; keep the parity of every slot.
    na = (a.bit_length() + 7) // 8
    nb = (b.bit_length() + 7) // 8
    p = _spread(a, na) * _spread(b, nb)
    nslots = 8 * (na + nb)
    slots = np.frombuffer(p.to_bytes(2 * nslots, "little"), dtype="<u2")
    bits = (slots & 1).astype(np.uint8)
    return int.from_bytes(np.packbits(bits, bitorder="little").tobytes(), "little")


def clmul(a: int, b: int) -> int:
    """Carry-less product of two bit-packed polynomials."""
    if not a or not b:
        return 0
    if min(a.bit_length(), b.bit_length()) < _SPREAD_THRESHOLD or max(a.bit_length(), b.bit_length()) >= 1 << 15:
        return _clmul_loop(a, b)
    return _clmul_spread(a, b)


def clsquare(a: int) -> int:
    """Square in GF(2)[x]: bit i moves to bit 2i."""
    if a < 2:
        return a
    nbytes = (a.bit_length() + 7) // 8
    bits = np.unpackbits(np.frombuffer(a.to_bytes(nbytes, "little"), dtype=np.uint8), bitorder="little")
    out = np.zeros(2 * bits.size, dtype=np.uint8)
    out[::2] = bits
    return int.from_bytes(np.packbits(out, bitorder="little").tobytes(), "little")


def _sqrt_bits(a: int) -> int:
    # Inverse of clsquare; caller guarantees only even-position bits are set.
    nbytes = (a.bit_length() + 7) // 8
    bits = np.unpackbits(np.frombuffer(a.to_bytes(nbytes, "little"), dtype=np.uint8), bitorder="little")
    return int.from_bytes(np.packbits(bits[::2], bitorder="little").tobytes(), "little")


def _reverse(a: int, length: int) -> int:
    return int(format(a, f"0{length}b")[::-1], 2)


def _inverse_series(c: int, prec: int) -> int:
    # c^-1 mod x^prec for c(0) = 1; Newton step g <- c g^2 in characteristic 2
    g, k = 1, 1
    while k < prec:
        k = min(2 * k, prec)
        g = clmul(clsquare(g), c & ((1 << k) - 1)) & ((1 << k) - 1)
    return g


def _divmod(a: int, b: int) -> tuple[int, int]:
    if b == 0:
        raise ZeroDivisionError("division by the zero polynomial")
    db = b.bit_length()
    lq = a.bit_length() - db + 1
    if lq > _NEWTON_THRESHOLD:
        ra = _reverse(a, a.bit_length()) & ((1 << lq) - 1)
        inv = _inverse_series(_reverse(b, db), lq)
        q = _reverse(clmul(ra, inv) & ((1 << lq) - 1), lq)
        return q, a ^ clmul(q, b)
    q = 0
    while True:
        shift = a.bit_length() - db
        if shift < 0:
            return q, a
        q |= 1 << shift
        a ^= b << shift


def _mod(a: int, b: int) -> int:
    if b == 0:
        raise ZeroDivisionError("division by the zero polynomial")
    db = b.bit_length()
    if a.bit_length() - db + 1 > _NEWTON_THRESHOLD:
        return _divmod(a, b)[1]
    while True:
        shift = a.bit_length() - db
        if shift < 0:
            return a
        a ^= b << shift


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, _mod(a, b)
    return a


def _mulmod(a: int, b: int, m: int) -> int:
    return _mod(clmul(a, b), m)


def _sqrmod(a: int, m: int) -> int:
    return _mod(clsquare(a), m)


class BitPoly:
    """A polynomial over GF(2).

    >>> BitPoly.parse("x^3+x+1") * BitPoly.parse("x^3+x^2+1")
    BitPoly('x^6+x^5+x^4+x^3+x^2+x+1')
    """

    __slots__ = ("bits",)

    def __init__(self, bits: int = 0):
        if isinstance(bits, BitPoly):
            bits = bits.bits
        if bits < 0:
            raise ValueError("coefficient bitmask must be nonnegative")
        object.__setattr__(self, "bits", int(bits))

    def __setattr__(self, name, value):
        raise AttributeError("BitPoly is immutable")

    @classmethod
    def parse(cls, text: str) -> "BitPoly":
        return parse(text)

    @classmethod
    def from_exponents(cls, exps: Iterable[int]) -> "BitPoly":
        bits = 0
        for e in exps:
            bits ^= 1 << e
        return cls(bits)

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return self.bits.bit_length() - 1

    def is_zero(self) -> bool:
        return self.bits == 0

    def coeff(self, i: int) -> int:
        return (self.bits >> i) & 1

    def exponents(self) -> list[int]:
        """Exponents with nonzero coefficient, descending."""
        b = self.bits
        out = []
        while b:
            e = b.bit_length() - 1
            out.append(e)
            b ^= 1 << e
        return out

    def derivative(self) -> "BitPoly":
        # d/dx x^i = i x^(i-1); only odd i survive in characteristic 2
        return BitPoly((self.bits & _mask(self.bits, 0xAA)) >> 1)

    def square(self) -> "BitPoly":
        return BitPoly(clsquare(self.bits))

    def sqrt(self) -> "BitPoly":
        """Square root of a perfect square (all exponents even)."""
        if self.bits & _mask(self.bits, 0xAA):
            raise ValueError(f"{self} is not a square")
        return BitPoly(_sqrt_bits(self.bits))

    def __call__(self, x: int) -> int:
        """Evaluate at an integer point of GF(2): 0 or 1."""
        if x & 1:
            return self.bits.bit_count() & 1
        return self.bits & 1

    def __add__(self, other: "BitPoly") -> "BitPoly":
        return BitPoly(self.bits ^ _as_bits(other))

    __radd__ = __add__
    __sub__ = __add__
    __rsub__ = __add__
    __xor__ = __add__

    def __mul__(self, other: "BitPoly") -> "BitPoly":
        return BitPoly(clmul(self.bits, _as_bits(other)))

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "BitPoly":
        if e < 0:
            raise ValueError("negative exponent")
        result, base = 1, self.bits
        while e:
            if e & 1:
                result = clmul(result, base)
            e >>= 1
            if e:
                base = clsquare(base)
        return BitPoly(result)

    def __divmod__(self, other: "BitPoly") -> tuple["BitPoly", "BitPoly"]:
        q, r = _divmod(self.bits, _as_bits(other))
        return BitPoly(q), BitPoly(r)

    def __floordiv__(self, other: "BitPoly") -> "BitPoly":
        return divmod(self, other)[0]

    def __mod__(self, other: "BitPoly") -> "BitPoly":
        return BitPoly(_mod(self.bits, _as_bits(other)))

    def exact_div(self, other: "BitPoly") -> "BitPoly":
        q, r = _divmod(self.bits, _as_bits(other))
        if r:
            raise ArithmeticError(f"{other} does not divide {self}")
        return BitPoly(q)

    def __eq__(self, other) -> bool:
        if isinstance(other, BitPoly):
            return self.bits == other.bits
        if isinstance(other, int) and other in (0, 1):
            return self.bits == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.bits)

    def __bool__(self) -> bool:
        return self.bits != 0

    def sort_key(self) -> tuple[int, int]:
        return (self.degree, self.bits)

    def __lt__(self, other: "BitPoly") -> bool:
        return self.sort_key() < other.sort_key()

    def __str__(self) -> str:
        return format_poly(self.bits)

    def __repr__(self) -> str:
        return f"BitPoly('{self}')"

    def hex(self) -> str:
        return hex(self.bits)


def _mask(a: int, byte: int) -> int:
    return int.from_bytes(bytes([byte]) * ((a.bit_length() + 7) // 8 + 1), "little")


def _as_bits(p) -> int:
    if isinstance(p, BitPoly):
        return p.bits
    if isinstance(p, int) and p >= 0:
        return p
    raise TypeError(f"cannot interpret {p!r} as a GF(2) polynomial")


ZERO = BitPoly(0)
ONE = BitPoly(1)
X = BitPoly(2)


def format_poly(bits: int, var: str = "x") -> str:
    if bits == 0:
        return "0"
    terms = []
    for e in BitPoly(bits).exponents():
        if e == 0:
            terms.append("1")
        elif e == 1:
            terms.append(var)
        else:
            terms.append(f"{var}^{e}")
    return "+".join(terms)


_TERM = re.compile(r"^(?:(?P<one>1)|(?P<var>[a-zA-Z])(?:\^\{?(?P<exp>\d+)\}?)?)$")


def parse(text: str, var: str = "x") -> BitPoly:
    """Parse `x^5+x^2+1` style text or a `0x`-prefixed hex bitmask."""
    s = text.replace(" ", "")
    if s.lower().startswith("0x"):
        return BitPoly(int(s, 16))
    if s == "0":
        return ZERO
    bits = 0
    for term in s.split("+"):
        m = _TERM.match(term)
        if not m or (m.group("var") and m.group("var") != var):
            raise ValueError(f"bad term {term!r} in polynomial {text!r}")
        e = 0 if m.group("one") else int(m.group("exp") or 1)
        bits ^= 1 << e
    return BitPoly(bits)


def add(a: BitPoly, b: BitPoly) -> BitPoly:
    return a + b


def mul(a: BitPoly, b: BitPoly) -> BitPoly:
    return a * b


def divmod_poly(a: BitPoly, b: BitPoly) -> tuple[BitPoly, BitPoly]:
    """Return (q, r) with a = q*b + r and deg r < deg b."""
    return divmod(a, b)


def gcd(a: BitPoly, b: BitPoly) -> BitPoly:
    if not a and not b:
        raise ValueError("gcd(0, 0) is undefined")
    return BitPoly(_gcd(a.bits, b.bits))


def _prime_factors(n: int) -> list[int]:
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def _x_pow_2k(k: int, m: int) -> int:
    h = _mod(2, m)
    for _ in range(k):
        h = _sqrmod(h, m)
    return h


def is_irreducible(a: BitPoly) -> bool:
    """Rabin's irreducibility test."""
    n = a.degree
    if n < 1:
        raise ValueError("irreducibility is undefined for constants")
    if n == 1:
        return True
    m = a.bits
    if not m & 1:
        return False
    if _x_pow_2k(n, m) != _mod(2, m):
        return False
    for p in _prime_factors(n):
        h = _x_pow_2k(n // p, m)
        if _gcd(m, h ^ 2) != 1:
            return False
    return True


@dataclass(frozen=True)
class Factorization:
    """Irreducible factors with multiplicities, in canonical order."""

    factors: tuple[tuple[BitPoly, int], ...]

    def __iter__(self) -> Iterator[tuple[BitPoly, int]]:
        return iter(self.factors)

    def __len__(self) -> int:
        return len(self.factors)

    def expand(self) -> BitPoly:
        out = ONE
        for f, m in self.factors:
            out = out * f**m
        return out

    def as_dict(self) -> dict[BitPoly, int]:
        return dict(self.factors)

    def degrees(self) -> set[int]:
        return {f.degree for f, _ in self.factors}

    def __str__(self) -> str:
        return format_factorization(self)

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[BitPoly, int]]) -> "Factorization":
        merged: dict[BitPoly, int] = {}
        for f, m in pairs:
            merged[f] = merged.get(f, 0) + m
        return cls(tuple(sorted(merged.items(), key=lambda fm: fm[0].sort_key())))


def format_factorization(fac: Factorization) -> str:
    parts = []
    for f, m in fac:
        s = f"({f})"
        parts.append(s if m == 1 else f"{s}^{m}")
    return " * ".join(parts) if parts else "1"


_FACTOR_TOKEN = re.compile(
    r"\((?P<body>[^()]*)\)(?:\^\{?(?P<m1>\d+)\}?)?"
    r"|(?P<var>x)(?:\^\{?(?P<m2>\d+)\}?)?"
    r"|(?P<sep>[*\u00b7])"
    r"|(?P<one>1)"
)


def parse_factored(text: str) -> Factorization:
    """Parse `(x)^7 * (x+1)^7 * (x^3+x+1)^2` or the juxtaposed form
    `x^7(x+1)^7(x^3+x+1)^2` into a Factorization.  Factors are not checked
    for irreducibility."""
    s = text.replace(" ", "")
    pairs = []
    pos = 0
    while pos < len(s):
        m = _FACTOR_TOKEN.match(s, pos)
        if not m:
            raise ValueError(f"cannot parse factored form at {s[pos:]!r}")
        pos = m.end()
        if m.group("body") is not None:
            pairs.append((parse(m.group("body")), int(m.group("m1") or 1)))
        elif m.group("var"):
            pairs.append((X, int(m.group("m2") or 1)))
    return Factorization.from_pairs(pairs)


def _squarefree(f: int) -> list[tuple[int, int]]:
    # Squarefree decomposition in characteristic 2; parts are pairwise coprime.
    if f == 1:
        return []
    out: list[tuple[int, int]] = []
    fp = BitPoly(f).derivative().bits
    if fp == 0:
        return [(g, 2 * m) for g, m in _squarefree(_sqrt_bits(f))]
    c = _gcd(f, fp)
    w = _divmod(f, c)[0]
    i = 1
    while w != 1:
        y = _gcd(w, c)
        z = _divmod(w, y)[0]
        if z != 1:
            out.append((z, i))
        i += 1
        w = y
        c = _divmod(c, y)[0]
    if c != 1:
        out.extend((g, 2 * m) for g, m in _squarefree(_sqrt_bits(c)))
    return out


def _distinct_degree(f: int) -> list[tuple[int, int]]:
    out = []
    h = 2
    d = 0
    while f != 1 and 2 * (d + 1) <= f.bit_length() - 1:
        d += 1
        h = _sqrmod(h, f)
        g = _gcd(f, h ^ 2)
        if g != 1:
            out.append((g, d))
            f = _divmod(f, g)[0]
            h = _mod(h, f)
    if f != 1:
        out.append((f, f.bit_length() - 1))
    return out


def _equal_degree(f: int, d: int, rng: random.Random) -> list[int]:
    n = f.bit_length() - 1
    if n == d:
        return [f]
    while True:
        a = rng.getrandbits(n) | 2
        t, s = a, a
        for _ in range(d - 1):
            s = _sqrmod(s, f)
            t ^= s
        g = _gcd(f, t)
        if g != 1 and g != f:
            return _equal_degree(g, d, rng) + _equal_degree(_divmod(f, g)[0], d, rng)


def factor(a: BitPoly) -> Factorization:
    """Complete factorization into irreducibles over GF(2)."""
    if not a:
        raise ValueError("cannot factor the zero polynomial")
    rng = random.Random(0x0A9)
    pairs = []
    for part, mult in _squarefree(a.bits):
        for g, d in _distinct_degree(part):
            pairs.extend((BitPoly(p), mult) for p in _equal_degree(g, d, rng))
    return Factorization.from_pairs(pairs)
