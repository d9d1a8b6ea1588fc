"""Arithmetic in GF(2^n) for 1 <= n <= 24 under an explicit irreducible modulus.

Elements are n-bit integers.  Contexts with n <= 20 carry exp/log tables
(numpy arrays) built from the smallest primitive element; larger contexts
multiply by reduction only.
"""

from __future__ import annotations

import functools
import math

import numpy as np

from .gf2poly import BitPoly, _mod, _prime_factors, clmul, is_irreducible

MAX_N = 24
TABLE_MAX_N = 20


@functools.lru_cache(maxsize=None)
def smallest_irreducible(n: int) -> BitPoly:
    """The degree-n irreducible whose bit pattern is the smallest integer."""
    if n == 1:
        return BitPoly(0b11)
    for bits in range((1 << n) | 1, 1 << (n + 1), 2):
        p = BitPoly(bits)
        if is_irreducible(p):
            return p
    raise AssertionError("unreachable: irreducibles exist in every degree")


class FieldCtx:
    """GF(2^n) = GF(2)[x]/(modulus)."""

    def __init__(self, n: int, modulus: BitPoly | None = None):
        if not 1 <= n <= MAX_N:
            raise ValueError(f"extension degree must be in [1, {MAX_N}], got {n}")
        if modulus is None:
            modulus = smallest_irreducible(n)
        if modulus.degree != n:
            raise ValueError(f"modulus {modulus} has degree {modulus.degree}, expected {n}")
        if n > 1 and not is_irreducible(modulus):
            raise ValueError(f"modulus {modulus} is reducible")
        self.n = n
        self.modulus = modulus
        self.order = 1 << n
        self.mult_order = (1 << n) - 1
        self._mod = modulus.bits
        self._exp: np.ndarray | None = None
        self._log: np.ndarray | None = None

    def __repr__(self) -> str:
        return f"FieldCtx(n={self.n}, modulus={self.modulus})"

    def __eq__(self, other) -> bool:
        return isinstance(other, FieldCtx) and (self.n, self._mod) == (other.n, other._mod)

    def __hash__(self) -> int:
        return hash((self.n, self._mod))

    # scalar arithmetic on raw integers

    def mul(self, a: int, b: int) -> int:
        if self.n == 1:
            return a & b
        return _mod(clmul(a, b), self._mod)

    def pow(self, a: int, d: int) -> int:
        if d < 0:
            raise ValueError("negative exponent")
        if a == 0:
            return 0 if d else 1
        if d:
            d %= self.mult_order
            if d == 0:
                d = self.mult_order
        result, base = 1, a
        while d:
            if d & 1:
                result = self.mul(result, base)
            d >>= 1
            if d:
                base = self.mul(base, base)
        return result

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return self.pow(a, self.mult_order - 1)

    def elem(self, bits: int) -> "FieldElem":
        return FieldElem(self, bits)

    # tables

    @property
    def has_tables(self) -> bool:
        return self.n <= TABLE_MAX_N

    def primitive_element(self) -> int:
        primes = _prime_factors(self.mult_order) if self.mult_order > 1 else []
        for g in range(1, self.order):
            if all(self.pow(g, self.mult_order // p) != 1 for p in primes):
                return g
        raise AssertionError("unreachable: GF(2^n)* is cyclic")

    def _build_tables(self) -> None:
        if not self.has_tables:
            raise ValueError(f"tables are only built for n <= {TABLE_MAX_N}")
        g = self.primitive_element()
        q1 = self.mult_order
        exp = np.empty(2 * q1, dtype=np.int64)
        log = np.zeros(self.order, dtype=np.int64)
        v = 1
        for i in range(q1):
            exp[i] = v
            log[v] = i
            v = self.mul(v, g)
        exp[q1:] = exp[:q1]
        self._exp, self._log = exp, log

    @property
    def exp_table(self) -> np.ndarray:
        """exp[i] = g^i for 0 <= i < 2(2^n - 1), g the smallest primitive element."""
        if self._exp is None:
            self._build_tables()
        return self._exp

    @property
    def log_table(self) -> np.ndarray:
        """log[a] for a != 0; log[0] is a placeholder 0 and must be masked."""
        if self._log is None:
            self._build_tables()
        return self._log

    def table_mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return int(self.exp_table[self.log_table[a] + self.log_table[b]])

    def power_table(self, d: int) -> np.ndarray:
        """Array f with f[x] = x^d for every x in the field (fpow conventions)."""
        if d < 0:
            raise ValueError("negative exponent")
        out = np.empty(self.order, dtype=np.int64)
        out[0] = 0 if d else 1
        if self.has_tables:
            e = (self.log_table[1:] * (d % self.mult_order)) % self.mult_order
            out[1:] = self.exp_table[e]
        else:
            for a in range(1, self.order):
                out[a] = self.pow(a, d)
        return out

    def subfield_elements(self, m: int) -> list[int]:
        """All elements of GF(2^gcd(m, n)) inside this field, ascending."""
        g = math.gcd(m, self.n)
        step = self.mult_order // ((1 << g) - 1)
        if self.has_tables:
            members = {0} | {int(self.exp_table[(j * step) % self.mult_order]) for j in range((1 << g) - 1)}
        else:
            gen = self.pow(self.primitive_element(), step)
            members, v = {0}, 1
            for _ in range((1 << g) - 1):
                members.add(v)
                v = self.mul(v, gen)
        return sorted(members)


class FieldElem:
    """An element of a specific FieldCtx."""

    __slots__ = ("ctx", "bits")

    def __init__(self, ctx: FieldCtx, bits: int):
        if not 0 <= bits < ctx.order:
            raise ValueError(f"{bits} is not a residue of GF(2^{ctx.n})")
        self.ctx = ctx
        self.bits = bits

    def _check(self, other: "FieldElem") -> None:
        if not isinstance(other, FieldElem):
            raise TypeError(f"expected FieldElem, got {type(other).__name__}")
        if other.ctx != self.ctx:
            raise ValueError("field context mismatch")

    def __add__(self, other: "FieldElem") -> "FieldElem":
        self._check(other)
        return FieldElem(self.ctx, self.bits ^ other.bits)

    __sub__ = __add__

    def __mul__(self, other: "FieldElem") -> "FieldElem":
        self._check(other)
        return FieldElem(self.ctx, self.ctx.mul(self.bits, other.bits))

    def __pow__(self, d: int) -> "FieldElem":
        return FieldElem(self.ctx, self.ctx.pow(self.bits, d))

    def __eq__(self, other) -> bool:
        return isinstance(other, FieldElem) and self.ctx == other.ctx and self.bits == other.bits

    def __hash__(self) -> int:
        return hash((self.ctx, self.bits))

    def __repr__(self) -> str:
        return f"FieldElem({self.bits:#x} in GF(2^{self.ctx.n}))"


@functools.lru_cache(maxsize=64)
def make_ctx(n: int, modulus: BitPoly | None = None) -> FieldCtx:
    """Field context for GF(2^n); default modulus is the smallest irreducible."""
    return FieldCtx(n, modulus)


def fmul(ctx: FieldCtx, a: FieldElem, b: FieldElem) -> FieldElem:
    if a.ctx != ctx or b.ctx != ctx:
        raise ValueError("field context mismatch")
    return a * b


def fpow(ctx: FieldCtx, a: FieldElem, d: int) -> FieldElem:
    """a^d; for a != 0 the exponent is reduced mod 2^n - 1 (a positive multiple
    of 2^n - 1 gives 1), 0^d = 0 for d >= 1 and 0^0 = 1."""
    if a.ctx != ctx:
        raise ValueError("field context mismatch")
    return a**d


def in_subfield(ctx: FieldCtx, a: FieldElem, m: int) -> bool:
    """True iff a^(2^m) = a, i.e. a lies in GF(2^gcd(m, n))."""
    if a.ctx != ctx:
        raise ValueError("field context mismatch")
    v = a.bits
    for _ in range(m % ctx.n if ctx.n > 1 else 0):
        v = ctx.mul(v, v)
    return v == a.bits
