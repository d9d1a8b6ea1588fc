"""CCZ equivalence of power exponents over GF(2^n).

x^d and x^e are CCZ equivalent iff e = 2^a d or d e = 2^a (mod 2^n - 1).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable


def _modulus(n: int) -> int:
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    return (1 << n) - 1


def _reduce(n: int, d: int) -> int:
    q1 = _modulus(n)
    r = d % q1
    if r == 0 and q1 > 1:
        raise ValueError(f"exponent {d} is 0 mod 2^{n}-1")
    return r if q1 > 1 else 1


def cyclotomic_coset(n: int, d: int) -> list[int]:
    """Orbit of d under doubling mod 2^n - 1, sorted."""
    q1 = _modulus(n)
    d %= q1
    out = {d}
    v = (2 * d) % q1
    while v not in out:
        out.add(v)
        v = (2 * v) % q1
    return sorted(out)


def coset_leader(n: int, d: int) -> int:
    return cyclotomic_coset(n, _reduce(n, d))[0]


def inverse_exponent(n: int, d: int) -> int | None:
    """d^-1 mod 2^n - 1, or None when gcd(d, 2^n - 1) > 1."""
    q1 = _modulus(n)
    if q1 == 1:
        return 1
    if math.gcd(d, q1) != 1:
        return None
    return pow(d, -1, q1)


@dataclass(frozen=True)
class ExponentClass:
    n: int
    members: tuple[int, ...]

    @property
    def canonical(self) -> int:
        return self.members[0]

    def coset_leaders(self) -> list[int]:
        return sorted({coset_leader(self.n, d) for d in self.members})


def ccz_class(n: int, d: int) -> ExponentClass:
    d = _reduce(n, d)
    members = set(cyclotomic_coset(n, d))
    inv = inverse_exponent(n, d)
    if inv is not None:
        members.update(cyclotomic_coset(n, inv))
    return ExponentClass(n, tuple(sorted(members)))


def canonical_rep(n: int, d: int) -> int:
    """Smallest exponent CCZ equivalent to d (doubling plus inversion)."""
    return ccz_class(n, d).canonical


def are_ccz_equiv(n: int, d1: int, d2: int) -> bool:
    return canonical_rep(n, d1) == canonical_rep(n, d2)


def distinct_classes(n: int, ds: Iterable[int]) -> list[ExponentClass]:
    seen: dict[int, ExponentClass] = {}
    for d in ds:
        cls = ccz_class(n, d)
        seen.setdefault(cls.canonical, cls)
    return [seen[c] for c in sorted(seen)]


def all_classes(n: int) -> list[ExponentClass]:
    """Partition of [1, 2^n - 2] into CCZ classes, sorted by canonical."""
    q1 = _modulus(n)
    done = bytearray(q1)
    out = []
    for d in range(1, q1):
        if done[d]:
            continue
        cls = ccz_class(n, d)
        for m in cls.members:
            done[m] = 1
        out.append(cls)
    return out
