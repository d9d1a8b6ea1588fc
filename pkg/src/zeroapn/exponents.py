"""Exponent families of known 0-APN power maps and the congruence criteria.

Rows come from a JSON manifest (``data/table1.json``): each row carries an
integer formula or a linear congruence, its parameters, and a condition,
all as restricted Python expressions.
"""

from __future__ import annotations

import functools
import itertools
import json
import math
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from . import _expr

TABLE1_MANIFEST = "table1.json"


@dataclass(frozen=True)
class FamilyDescriptor:
    """One row of the family table."""

    row_id: int
    params: tuple[str, ...]
    conditions: str
    reference: str
    formula: str | None = None
    congruence: tuple[str, str] | None = None
    examples: tuple[tuple[int, int], ...] = ()
    table_conditions: str | None = None
    check: bool = True

    def applicable(self, n: int, env: dict[str, int]) -> bool:
        return bool(_expr.evaluate(self.conditions, {"n": n, **env}))

    def example_exponents(self, n: int) -> list[int]:
        return sorted({d for d, nn in self.examples if nn == n})


@dataclass(frozen=True)
class CongruenceInstance:
    n: int
    m: int
    k: int
    d: int | None


def _load_rows(data: dict) -> dict[int, FamilyDescriptor]:
    rows = {}
    for r in data["rows"]:
        cong = r.get("congruence")
        desc = FamilyDescriptor(
            row_id=int(r["row"]),
            params=tuple(r["params"]),
            conditions=r["conditions"],
            reference=r.get("reference", ""),
            formula=r.get("formula"),
            congruence=(cong["a"], cong["b"]) if cong else None,
            examples=tuple((int(d), int(n)) for d, n in r.get("examples", [])),
            table_conditions=r.get("table_conditions"),
            check=bool(r.get("check", True)),
        )
        if (desc.formula is None) == (desc.congruence is None):
            raise ValueError(f"row {desc.row_id} needs exactly one of formula/congruence")
        for text in (desc.conditions, desc.formula, *(desc.congruence or ())):
            if text is not None:
                try:
                    _expr.compile_expr(text)
                except SyntaxError as exc:
                    raise ValueError(f"row {desc.row_id}: cannot parse {text!r}") from exc
        rows[desc.row_id] = desc
    return rows


def load_manifest(path: str | Path | None = None) -> dict[int, FamilyDescriptor]:
    if path is None:
        return _default_manifest()
    with open(path) as fh:
        return _load_rows(json.load(fh))


@functools.lru_cache(maxsize=1)
def _default_manifest() -> dict[int, FamilyDescriptor]:
    text = resources.files("zeroapn.data").joinpath(TABLE1_MANIFEST).read_text()
    return _load_rows(json.loads(text))


def solve_linear_congruence(a: int, b: int, M: int) -> list[int]:
    """All x in [0, M) with a*x = b (mod M), ascending."""
    if M < 1:
        raise ValueError("modulus must be positive")
    g = math.gcd(a, M)
    if b % g:
        return []
    M2 = M // g
    x0 = ((b // g) * pow(a // g, -1, M2)) % M2 if M2 > 1 else 0
    return [x0 + i * M2 for i in range(g)]


def _param_values(n: int) -> range:
    return range(1, 2 * n + 1)


def family_members(row_id: int, n: int, manifest: dict[int, FamilyDescriptor] | None = None) -> list[int]:
    """Distinct exponents in [1, 2^n - 2] produced by a row for this n."""
    rows = manifest or _default_manifest()
    if row_id not in rows:
        raise KeyError(f"unknown row {row_id}")
    row = rows[row_id]
    q1 = (1 << n) - 1
    out: set[int] = set()
    for values in itertools.product(_param_values(n), repeat=len(row.params)):
        env = {"n": n, **dict(zip(row.params, values))}
        if row.formula is not None:
            if not row.applicable(n, env):
                continue
            d = _expr.evaluate(row.formula, env) % q1
            if d:
                out.add(d)
        else:
            a = _expr.evaluate(row.congruence[0], env)
            b = _expr.evaluate(row.congruence[1], env)
            for d in solve_linear_congruence(a % q1, b % q1, q1):
                if d and row.applicable(n, {**env, "d": d}):
                    out.add(d)
    return sorted(out)


def row_admissible(row_id: int, n: int, manifest: dict[int, FamilyDescriptor] | None = None) -> bool:
    """Whether any parameter choice satisfies the row's conditions at n."""
    return bool(family_members(row_id, n, manifest))


def thm41_predicate(n: int, m: int, k: int) -> bool:
    """gcd(n, m) = gcd(n, m - k) = 1."""
    return math.gcd(n, m) == 1 and math.gcd(n, m - k) == 1


def thm43_case_i(n: int, m: int, k: int) -> bool:
    return (n // math.gcd(n, k)) % 2 == 1 and math.gcd(n, m + k) == 1 and math.gcd(n, m - k) == 1


def thm43_case_ii(n: int, m: int, k: int, d: int) -> bool:
    return (
        d % 3 == 0
        and n % 2 == 0
        and k % 2 == 1
        and m % 2 == 1
        and (n // math.gcd(n, k)) % 2 == 0
        and math.gcd(k, n) == 1
        and math.gcd(m + k, n) == 2
        and math.gcd(m - k, n) == 2
    )


def thm43_predicate(n: int, m: int, k: int, d: int) -> bool:
    """Two-case criterion for (2^k + 1) d = 2^m + 1 (mod 2^n - 1)."""
    q1 = (1 << n) - 1
    if ((1 << k) + 1) * d % q1 != ((1 << m) + 1) % q1:
        raise ValueError(f"d={d} does not solve (2^{k}+1)d = 2^{m}+1 mod 2^{n}-1")
    return thm43_case_i(n, m, k) or thm43_case_ii(n, m, k, d)


def congruence_instances(n: int, sign: int) -> list[CongruenceInstance]:
    """Every (m, k) in [1, n)^2 with its solutions d of
    (2^k + sign) d = 2^m + sign (mod 2^n - 1); unsolvable pairs get d=None."""
    if sign not in (-1, 1):
        raise ValueError("sign must be +1 or -1")
    q1 = (1 << n) - 1
    out = []
    for m in range(1, n):
        for k in range(1, n):
            sols = [d for d in solve_linear_congruence(((1 << k) + sign) % q1, ((1 << m) + sign) % q1, q1) if d]
            if not sols:
                out.append(CongruenceInstance(n, m, k, None))
            out.extend(CongruenceInstance(n, m, k, d) for d in sols)
    return out


def cor_exponents(l: int, k: int, n: int, sign: str) -> int:
    """(2^(lk) - 1)/(2^k - 1) for sign '-', (2^(lk) + 1)/(2^k + 1) for '+',
    reduced mod 2^n - 1 into [1, 2^n - 1]."""
    if sign not in ("-", "+"):
        raise ValueError("sign must be '-' or '+'")
    if l < 1 or k < 1:
        raise ValueError("l and k must be positive")
    if sign == "-":
        num, den = (1 << (l * k)) - 1, (1 << k) - 1
    else:
        num, den = (1 << (l * k)) + 1, (1 << k) + 1
    if num % den:
        raise ValueError(f"(2^{l * k}{sign}1)/(2^{k}{sign}1) is not an integer")
    q1 = (1 << n) - 1
    d = (num // den) % q1
    return d if d else q1
