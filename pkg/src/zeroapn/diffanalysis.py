"""Differential spectra and (partial) APN predicates of power maps x -> x^d."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from .gf2n import FieldCtx, FieldElem


def reduce_exponent(n: int, d: int) -> int:
    """d modulo 2^n - 1 with fpow's convention (positive multiples -> 2^n - 1)."""
    q1 = (1 << n) - 1
    if d == 0:
        return 0
    r = d % q1
    return r if r else q1


@dataclass(frozen=True)
class DiffSpectrum:
    """Differential table of x^d summarised per row.

    ``rows[a - 1]`` maps each count c to the number of b with delta(a, b) = c.
    In the default (power-map) mode every row is the same object.
    """

    n: int
    d: int
    rows: tuple[Counter, ...] = field(repr=False)

    @property
    def uniformity(self) -> int:
        return max(max(r) for r in self.rows)

    @property
    def histogram(self) -> Counter:
        """Multiset of all delta(a, b) values over a != 0 and all b."""
        total: Counter = Counter()
        for r in self.rows:
            total.update(r)
        return total

    def row_sums(self) -> list[int]:
        return [sum(c * m for c, m in r.items()) for r in self.rows]

    def check(self) -> None:
        size = 1 << self.n
        for a, r in enumerate(self.rows, start=1):
            if sum(c * m for c, m in r.items()) != size:
                raise AssertionError(f"row a={a} does not sum to {size}")
            if sum(r.values()) != size:
                raise AssertionError(f"row a={a} does not cover every b")
            if any(c % 2 for c in r):
                raise AssertionError(f"row a={a} has an odd count")

    def __eq__(self, other) -> bool:
        if not isinstance(other, DiffSpectrum):
            return NotImplemented
        return self.n == other.n and self.histogram == other.histogram

    def __hash__(self) -> int:
        return hash((self.n, tuple(sorted(self.histogram.items()))))


def _row_counts(values: np.ndarray, size: int) -> Counter:
    counts = np.bincount(values, minlength=size)
    vals, mult = np.unique(counts, return_counts=True)
    return Counter({int(v): int(m) for v, m in zip(vals, mult)})


def spectrum(ctx: FieldCtx, d: int, full: bool = False) -> DiffSpectrum:
    """Differential spectrum of x^d over ctx.

    By default only the a = 1 row is enumerated: for a power map
    D_a f(x) = a^d D_1 f(x/a), so every row has the same multiset.  ``full``
    enumerates every (a, x) pair instead.
    """
    size = ctx.order
    f = ctx.power_table(d)
    xs = np.arange(size)
    if not full:
        row = _row_counts(f[xs ^ 1] ^ f, size)
        return DiffSpectrum(ctx.n, d, (row,) * (size - 1))
    rows = tuple(_row_counts(f[xs ^ a] ^ f, size) for a in range(1, size))
    return DiffSpectrum(ctx.n, d, rows)


def uniformity(ctx: FieldCtx, d: int) -> int:
    f = ctx.power_table(d)
    xs = np.arange(ctx.order)
    return int(np.bincount(f[xs ^ 1] ^ f, minlength=ctx.order).max())


def is_apn(ctx: FieldCtx, d: int) -> bool:
    return uniformity(ctx, d) == 2


def zero_apn_solution_count(ctx: FieldCtx, d: int) -> int:
    """Number of x outside {0, 1} with (x+1)^d + x^d + 1 = 0."""
    f = ctx.power_table(d)
    xs = np.arange(2, ctx.order)
    return int(np.count_nonzero((f[xs ^ 1] ^ f[xs]) == 1))


def is_zero_apn(ctx: FieldCtx, d: int) -> bool:
    return zero_apn_solution_count(ctx, d) == 0


def is_x0_apn(ctx: FieldCtx, d: int, x0: FieldElem | int) -> bool:
    """Partial-APN test at x0 over all pairs (x, y).

    Every (x, y) with f(x0) + f(x) + f(y) + f(x0 + x + y) = 0 must satisfy
    x = x0, y = x0 or x = y.
    """
    if isinstance(x0, FieldElem):
        if x0.ctx != ctx:
            raise ValueError("field context mismatch")
        x0 = x0.bits
    f = ctx.power_table(d)
    ys = np.arange(ctx.order)
    for x in range(ctx.order):
        if x == x0:
            continue
        hit = (f[x0] ^ f[x] ^ f[ys] ^ f[x0 ^ x ^ ys]) == 0
        hit[x0] = False
        hit[x] = False
        if hit.any():
            return False
    return True
