"""Multivariate method: Frobenius-conjugate systems and iterated resultants.

A MultiPoly is a sparse polynomial over GF(2) in the variables x, y, z, u.
Resultants with respect to one variable are computed by Kronecker packing
every other variable into a single BitPoly variable, which reduces the
problem to ``resultant.res_eliminate``.
"""

from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path

import numpy as np

from . import _expr
from .gf2n import make_ctx
from .gf2poly import BitPoly, Factorization, _divmod, clmul, factor, parse_factored
from .resultant import BiPoly, res_eliminate, res_eliminate_interp

VARS = ("x", "y", "z", "u")
_VIDX = {v: i for i, v in enumerate(VARS)}


class MultiPoly:
    """Sparse polynomial over GF(2) in x, y, z, u (immutable)."""

    __slots__ = ("terms",)

    def __init__(self, terms=()):
        out: set[tuple[int, ...]] = set()
        for t in terms:
            t = tuple(t) + (0,) * (len(VARS) - len(t))
            if len(t) != len(VARS) or min(t) < 0:
                raise ValueError(f"bad exponent vector {t}")
            out ^= {t}
        object.__setattr__(self, "terms", frozenset(out))

    def __setattr__(self, name, value):
        raise AttributeError("MultiPoly is immutable")

    @classmethod
    def var(cls, name: str, power: int = 1) -> "MultiPoly":
        e = [0] * len(VARS)
        e[_index(name)] = power
        return cls([tuple(e)])

    @classmethod
    def one(cls) -> "MultiPoly":
        return cls([(0,) * len(VARS)])

    @classmethod
    def parse(cls, text: str) -> "MultiPoly":
        return _Parser(text).parse()

    @classmethod
    def from_bitpoly(cls, p: BitPoly | int, var: str = "x") -> "MultiPoly":
        bits = p.bits if isinstance(p, BitPoly) else p
        i = _index(var)
        out = []
        for e in range(bits.bit_length()):
            if bits >> e & 1:
                t = [0] * len(VARS)
                t[i] = e
                out.append(tuple(t))
        return cls(out)

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self, var: str) -> int:
        i = _index(var)
        return max((t[i] for t in self.terms), default=-1)

    def degrees(self) -> tuple[int, ...]:
        return tuple(max((t[i] for t in self.terms), default=0) for i in range(len(VARS)))

    def variables(self) -> set[str]:
        return {v for i, v in enumerate(VARS) if any(t[i] for t in self.terms)}

    def is_univariate(self, var: str = "x") -> bool:
        return self.variables() <= {var}

    def to_bitpoly(self, var: str = "x") -> BitPoly:
        if not self.is_univariate(var):
            raise ValueError(f"{self} is not univariate in {var}")
        i = _index(var)
        bits = 0
        for t in self.terms:
            bits |= 1 << t[i]
        return BitPoly(bits)

    def __eq__(self, other) -> bool:
        if isinstance(other, int) and other in (0, 1):
            other = MultiPoly() if other == 0 else MultiPoly.one()
        return isinstance(other, MultiPoly) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(self.terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __add__(self, other: "MultiPoly") -> "MultiPoly":
        return MultiPoly(self.terms ^ other.terms)

    __sub__ = __add__

    def __mul__(self, other: "MultiPoly") -> "MultiPoly":
        if not self.terms or not other.terms:
            return MultiPoly()
        if len(self.terms) * len(other.terms) <= 64:
            out: set = set()
            for a in self.terms:
                for b in other.terms:
                    out ^= {tuple(p + q for p, q in zip(a, b))}
            return MultiPoly(out)
        slots = [a + b + 1 for a, b in zip(self.degrees(), other.degrees())]
        return _unpack(clmul(_pack(self, slots), _pack(other, slots)), slots)

    def __pow__(self, e: int) -> "MultiPoly":
        if e < 0:
            raise ValueError("negative power")
        result, base = MultiPoly.one(), self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base.frobenius()
        return result

    def frobenius(self, j: int = 1) -> "MultiPoly":
        """Raise to the 2^j-th power (every exponent doubled j times)."""
        return MultiPoly(tuple(e << j for e in t) for t in self.terms)

    def frobenius_normal(self) -> "MultiPoly":
        """Undo as many squarings as the exponents allow."""
        if not self.terms:
            return self
        g = 0
        for t in self.terms:
            for e in t:
                g = math.gcd(g, e)
        if g == 0:
            return self
        shift = (g & -g).bit_length() - 1
        return MultiPoly(tuple(e >> shift for e in t) for t in self.terms)

    def exact_div(self, other: "MultiPoly") -> "MultiPoly":
        if not other.terms:
            raise ZeroDivisionError("division by zero polynomial")
        if not self.terms:
            return MultiPoly()
        slots = [d + 1 for d in self.degrees()]
        if any(b >= s for b, s in zip(other.degrees(), slots)):
            raise ArithmeticError(f"{other} does not divide {self}")
        q, r = _divmod(_pack(self, slots), _pack(other, slots))
        quot = _unpack(q, slots) if not r else None
        if quot is None or quot * other != self:
            raise ArithmeticError(f"{other} does not divide {self}")
        return quot

    def evaluate(self, ctx, values: dict[str, np.ndarray | int]) -> np.ndarray:
        """Value at field points; ``values`` maps each used variable to an
        array of elements of ctx (all arrays share a shape)."""
        exp, log, q1 = ctx.exp_table, ctx.log_table, ctx.mult_order
        arrays = {v: np.asarray(values[v], dtype=np.int64) for v in self.variables()}
        shape = np.broadcast_shapes(*(a.shape for a in arrays.values())) if arrays else ()
        acc = np.zeros(shape, dtype=np.int64)
        for t in self.terms:
            logsum = np.zeros(shape, dtype=np.int64)
            zero = np.zeros(shape, dtype=bool)
            for v, a in arrays.items():
                e = t[_VIDX[v]]
                if e:
                    zero |= a == 0
                    logsum = logsum + log[a] * e
            acc ^= np.where(zero, 0, exp[logsum % q1])
        return acc

    def sorted_terms(self) -> list[tuple[int, ...]]:
        return sorted(self.terms, reverse=True)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for t in self.sorted_terms():
            mono = []
            for v, e in zip(VARS, t):
                if e == 1:
                    mono.append(v)
                elif e > 1:
                    mono.append(f"{v}^{e}")
            parts.append("*".join(mono) or "1")
        return "+".join(parts)

    def __repr__(self) -> str:
        return f"MultiPoly('{self}')"


def _index(var: str) -> int:
    try:
        return _VIDX[var]
    except KeyError:
        raise ValueError(f"unknown variable {var!r}") from None


def _pack(p: MultiPoly, slots) -> int:
    bits = 0
    for t in p.terms:
        e, mult = 0, 1
        for ti, s in zip(t, slots):
            e += ti * mult
            mult *= s
        bits ^= 1 << e
    return bits


def _unpack(bits: int, slots) -> MultiPoly:
    out = []
    e = 0
    while bits:
        low = (bits & -bits).bit_length() - 1
        bits ^= 1 << low
        t = []
        r = low
        for s in slots:
            t.append(r % s)
            r //= s
        if r:
            raise ArithmeticError("packed exponent overflow")
        out.append(tuple(t))
    return MultiPoly(out)


_TOKEN = re.compile(r"\s*(?:(?P<var>[xyzu])|(?P<num>\d+)|(?P<op>[-+*^()·]))")


class _Parser:
    """Recursive descent over sums, juxtaposed/starred products and powers."""

    def __init__(self, text: str):
        clean = text.replace("{", "").replace("}", "").replace("\\cdot", "*")
        self.tokens = []
        pos = 0
        clean = clean.strip()
        while pos < len(clean):
            m = _TOKEN.match(clean, pos)
            if not m or m.end() == pos:
                raise ValueError(f"cannot parse {text!r} at {clean[pos:pos + 20]!r}")
            kind = m.lastgroup
            self.tokens.append((kind, m.group(kind)))
            pos = m.end()
            while pos < len(clean) and clean[pos].isspace():
                pos += 1
        self.i = 0
        self.text = text

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None)

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def parse(self) -> MultiPoly:
        if not self.tokens:
            raise ValueError("empty polynomial")
        p = self.sum()
        if self.i != len(self.tokens):
            raise ValueError(f"trailing input in {self.text!r}")
        return p

    def sum(self) -> MultiPoly:
        acc = self.product()
        while self.peek()[1] in ("+", "-"):
            self.take()
            acc = acc + self.product()
        return acc

    def product(self) -> MultiPoly:
        acc = self.power()
        while True:
            kind, val = self.peek()
            if val in ("*", "·"):
                self.take()
                acc = acc * self.power()
            elif kind in ("var", "num") or val == "(":
                acc = acc * self.power()
            else:
                return acc

    def power(self) -> MultiPoly:
        base = self.atom()
        if self.peek()[1] == "^":
            self.take()
            kind, val = self.take()
            if kind != "num":
                raise ValueError(f"bad exponent in {self.text!r}")
            return base ** int(val)
        return base

    def atom(self) -> MultiPoly:
        kind, val = self.take()
        if kind == "var":
            if self.peek()[1] == "^":
                self.take()
                k2, e = self.take()
                if k2 != "num":
                    raise ValueError(f"bad exponent in {self.text!r}")
                return MultiPoly.var(val, int(e))
            return MultiPoly.var(val)
        if kind == "num":
            return MultiPoly.one() if int(val) % 2 else MultiPoly()
        if val == "(":
            inner = self.sum()
            if self.take()[1] != ")":
                raise ValueError(f"unbalanced parenthesis in {self.text!r}")
            return inner
        raise ValueError(f"unexpected token {val!r} in {self.text!r}")


def resultant(f: MultiPoly, g: MultiPoly, var: str, method: str = "bareiss") -> MultiPoly:
    """Res(f, g) with respect to var, other variables kept symbolic."""
    vi = _index(var)
    p, q = f.degree(var), g.degree(var)
    if p < 1 or q < 1:
        raise ValueError(f"both polynomials need positive degree in {var}")
    fd, gd = f.degrees(), g.degrees()
    others = [i for i in range(len(VARS)) if i != vi]
    # deg_w Res <= q deg_w f + p deg_w g
    slots = [0] * len(VARS)
    for i in others:
        slots[i] = q * fd[i] + p * gd[i] + 1
    slots[vi] = 1
    packed_slots = [slots[i] for i in others]

    def to_bi(h: MultiPoly) -> BiPoly:
        coeffs: dict[int, int] = {}
        for t in h.terms:
            e, mult = 0, 1
            for i, s in zip(others, packed_slots):
                e += t[i] * mult
                mult *= s
            coeffs[t[vi]] = coeffs.get(t[vi], 0) ^ (1 << e)
        top = max(coeffs)
        return BiPoly(tuple(BitPoly(coeffs.get(j, 0)) for j in range(top + 1)))

    F, G = to_bi(f), to_bi(g)
    if method == "bareiss":
        r = res_eliminate(F, G)
    elif method == "interp":
        r = res_eliminate_interp(F, G)
    else:
        raise ValueError(f"unknown method {method!r}")
    flat = _unpack(r.bits, packed_slots)
    out = []
    for t in flat.terms:
        full = [0] * len(VARS)
        for i, e in zip(others, t):
            full[i] = e
        out.append(tuple(full))
    return MultiPoly(out)


@dataclass(frozen=True)
class RotationRule:
    """Frobenius rotation: variable v goes to target[v] with its exponent
    multiplied by mult[v] (2 for a wrap such as z^{2^k} = x^2, 1/2 for
    z^{2^k} = x^{1/2})."""

    mapping: tuple[tuple[str, str, Fraction], ...]

    @classmethod
    def from_spec(cls, spec: dict[str, str]) -> "RotationRule":
        """``{"x": "y", "y": "z", "z": "x^2"}``; ``"x^1/2"`` for halving."""
        out = []
        for src, tgt in spec.items():
            name, _, power = tgt.partition("^")
            out.append((src, name, Fraction(power) if power else Fraction(1)))
        for s, t, _ in out:
            _index(s)
            _index(t)
        return cls(tuple(out))

    def as_dict(self) -> dict[str, tuple[str, Fraction]]:
        return {s: (t, m) for s, t, m in self.mapping}

    def __str__(self) -> str:
        parts = []
        for s, t, m in self.mapping:
            parts.append(f"{s}->{t}" + ("" if m == 1 else f"^{m}"))
        return ", ".join(parts)


def frobenius_rotate(p: MultiPoly, rule: RotationRule) -> MultiPoly:
    """Apply the rotation: every variable replaced by its successor."""
    table = rule.as_dict()
    out = []
    for t in p.terms:
        new = [0] * len(VARS)
        for v, e in zip(VARS, t):
            if not e:
                continue
            if v not in table:
                raise ValueError(f"variable {v} not covered by rotation rule")
            tgt, mult = table[v]
            val = e * mult
            if val.denominator != 1:
                raise ValueError(f"exponent {e} of {v} not divisible under rule {rule}")
            new[_VIDX[tgt]] += int(val)
        out.append(tuple(new))
    return MultiPoly(out)


def rotation_closes(first: MultiPoly, last: MultiPoly, rule: RotationRule, max_squarings: int = 4) -> bool:
    """Rotating last (after enough squarings to keep exponents integral)
    gives a Frobenius power of first."""
    for j in range(max_squarings + 1):
        try:
            rotated = frobenius_rotate(last.frobenius(j), rule)
        except ValueError:
            continue
        return rotated.frobenius_normal() == first.frobenius_normal()
    return False


@dataclass(frozen=True)
class Step:
    """One elimination stage of a stored plan."""

    var: str
    pairs: tuple[tuple[str, str, str], ...]
    divide: tuple[tuple[str, MultiPoly], ...] = ()


@dataclass(frozen=True)
class ConjugateSystem:
    theorem_id: str
    equations: tuple[tuple[str, MultiPoly], ...]
    rule: RotationRule
    plan: tuple[Step, ...] = ()
    goldens: tuple[tuple[str, str], ...] = ()
    identities: tuple[tuple[str, str], ...] = ()
    heavy: bool = False
    family: dict = field(default_factory=dict, compare=False, hash=False)

    def equation(self, label: str) -> MultiPoly:
        for name, p in self.equations:
            if name == label:
                return p
        raise KeyError(f"no equation {label!r} in system {self.theorem_id}")

    @property
    def labels(self) -> list[str]:
        return [name for name, _ in self.equations]

    @property
    def order(self) -> list[str]:
        return [s.var for s in self.plan]

    def golden(self, label: str) -> str | None:
        return dict(self.goldens).get(label)

    def admissible_k(self, kmax: int = 12, nmax: int = 16) -> list[int]:
        out = []
        for k in range(1, kmax + 1):
            env = {"k": k}
            n = _expr.evaluate(self.family["n"], env)
            if 2 <= n <= nmax and _expr.evaluate(self.family.get("condition", "1 == 1"), {"n": n, **env}):
                out.append(k)
        return out


@dataclass
class EliminationReport:
    theorem_id: str
    order: list[str]
    intermediates: list[tuple[str, MultiPoly]]
    cofactors: list[tuple[str, MultiPoly]]
    final: MultiPoly
    final_factors: Factorization | None
    candidate_subfields: set[int]

    @property
    def final_bitpoly(self) -> BitPoly | None:
        return self.final.to_bitpoly("x") if self.final.is_univariate("x") else None


def _check_nonzero(label: str, p: MultiPoly) -> None:
    if p.is_zero():
        raise ArithmeticError(f"resultant {label} is identically zero")


def _finish(sys_id: str, order, inter, cof, final: MultiPoly) -> EliminationReport:
    if final.is_univariate("x") and not final.is_zero():
        fx = factor(final.to_bitpoly("x"))
        subs = {f.degree for f, _ in fx if f.degree > 1}
    else:
        fx, subs = None, set()
    return EliminationReport(sys_id, list(order), inter, cof, final, fx, subs)


def run_plan(sys: ConjugateSystem, method: str = "bareiss") -> EliminationReport:
    """Follow the stored pairing and cofactor divisions of a system."""
    if not sys.plan:
        raise ValueError(f"system {sys.theorem_id} has no stored plan")
    pool = dict(sys.equations)
    inter, cof = [], []
    last = None
    for step in sys.plan:
        for a, b, out in step.pairs:
            r = resultant(pool[a], pool[b], step.var, method)
            _check_nonzero(out, r)
            inter.append((out, r))
            pool[out] = r
            last = out
        for label, c in step.divide:
            pool[label] = pool[label].exact_div(c)
            cof.append((label, c))
    return _finish(sys.theorem_id, sys.order, inter, cof, pool[last])


def _strip_trivial(p: MultiPoly, variables) -> tuple[MultiPoly, list[MultiPoly]]:
    removed = []
    for v in variables:
        for c in (MultiPoly.var(v), MultiPoly.var(v) + MultiPoly.one()):
            while p.degree(v) > 0:
                try:
                    p = p.exact_div(c)
                except ArithmeticError:
                    break
                removed.append(c)
    return p, removed


def eliminate(sys: ConjugateSystem, order: list[str] | None = None, method: str = "bareiss") -> EliminationReport:
    """Eliminate variables in order.

    With no order (or the stored one) the system's stored plan is used.
    Otherwise each stage takes the lexicographically first equation holding
    the variable as pivot, pairs it with every other such equation, and
    strips factors v and v + 1 for the variables v still present.
    """
    if order is None or (sys.plan and list(order) == sys.order):
        return run_plan(sys, method)
    used = set().union(*(p.variables() for _, p in sys.equations))
    if set(order) != used - {"x"} or len(order) != len(set(order)):
        raise ValueError(f"order must list every variable except x: {sorted(used - {'x'})}")
    if len(sys.equations) < 2:
        raise ValueError("system too small to eliminate")
    pool = sorted(sys.equations)
    inter, cof = [], []
    for var in order:
        holding = [(n, p) for n, p in pool if p.degree(var) > 0]
        rest = [(n, p) for n, p in pool if p.degree(var) <= 0]
        if len(holding) < 2 and not rest:
            raise ValueError(f"cannot eliminate {var}: one equation left")
        if len(holding) < 2:
            raise ValueError(f"only one equation contains {var}")
        (pn, pivot), others = holding[0], holding[1:]
        new = []
        for n, p in others:
            label = f"Res_{var}({pn},{n})"
            r = resultant(pivot, p, var, method)
            _check_nonzero(label, r)
            inter.append((label, r))
            r, removed = _strip_trivial(r, [v for v in VARS if r.degree(v) > 0])
            cof.extend((label, c) for c in removed)
            new.append((label, r))
        pool = rest + new
    if len(pool) != 1:
        finals = [p for _, p in pool if not p.is_univariate("x")]
        if finals:
            raise ValueError("elimination left more than one equation")
    return _finish(sys.theorem_id, order, inter, cof, pool[-1][1])


SYSTEM_DIR = "systems"


def _load_system(data: dict) -> ConjugateSystem:
    eqs = tuple((name, MultiPoly.parse(text)) for name, text in data["equations"])
    plan = tuple(
        Step(
            var=s["var"],
            pairs=tuple(tuple(p) for p in s["pairs"]),
            divide=tuple((lab, MultiPoly.parse(c)) for lab, c in s.get("divide", [])),
        )
        for s in data.get("plan", [])
    )
    return ConjugateSystem(
        theorem_id=data["theorem"],
        equations=eqs,
        rule=RotationRule.from_spec(data["rotation"]),
        plan=plan,
        goldens=tuple(tuple(g) for g in data.get("goldens", [])),
        identities=tuple(tuple(i) for i in data.get("identities", [])),
        heavy=bool(data.get("heavy", False)),
        family=data.get("family", {}),
    )


def load_system(path: str | Path) -> ConjugateSystem:
    with open(path) as fh:
        return _load_system(json.load(fh))


def builtin_ids() -> list[str]:
    root = resources.files("zeroapn.data").joinpath(SYSTEM_DIR)
    ids = [p.name[len("thm"):-len(".json")] for p in root.iterdir() if p.name.endswith(".json")]
    return sorted(ids, key=lambda s: tuple(int(v) for v in s.split(".")))


_CACHE: dict[str, ConjugateSystem] = {}


def builtin_system(theorem_id: str) -> ConjugateSystem:
    theorem_id = str(theorem_id)
    if theorem_id not in _CACHE:
        path = resources.files("zeroapn.data").joinpath(SYSTEM_DIR, f"thm{theorem_id}.json")
        if not path.is_file():
            raise KeyError(f"unknown theorem {theorem_id}")
        _CACHE[theorem_id] = _load_system(json.loads(path.read_text()))
    return _CACHE[theorem_id]


def golden_poly(text: str) -> MultiPoly:
    return MultiPoly.parse(text)


def golden_factorization(text: str) -> Factorization:
    return parse_factored(text)


def check_goldens(sys: ConjugateSystem, report: EliminationReport) -> list[str]:
    """Labels whose computed value differs from the stored golden.

    Goldens are compared after expansion, so a factored golden matches its
    product bit for bit.  ``final`` refers to the chain output after any
    recorded division."""
    computed = dict(report.intermediates)
    computed["final"] = report.final
    return [label for label, text in sys.goldens if computed.get(label) != golden_poly(text)]


def candidate_subfield_check(n: int, d: int, degrees) -> bool:
    """For each s, no element of GF(2^gcd(s, n)) outside {0, 1} solves
    (x+1)^d + x^d + 1 = 0 in GF(2^n)."""
    degrees = set(degrees)
    if not degrees:
        return True
    ctx = make_ctx(n)
    q1 = (1 << n) - 1
    f = ctx.power_table(d % q1 or q1)
    for s in degrees:
        g = math.gcd(s, n)
        if g == 1:
            continue
        sub = np.asarray(ctx.subfield_elements(g), dtype=np.int64)
        sub = sub[sub > 1]
        if np.any((f[sub ^ 1] ^ f[sub]) == 1):
            return False
    return True


def conjugate_values(sys: ConjugateSystem, k: int):
    """Field context and the conjugate arrays (x over all of GF(2^n)) for
    a concrete k, using the family's conjugate exponents."""
    env = {"k": k}
    n = _expr.evaluate(sys.family["n"], env)
    ctx = make_ctx(n)
    xs = np.arange(ctx.order, dtype=np.int64)
    values = {"x": xs}
    for v, e_text in sys.family.get("conjugates", {}).items():
        e = _expr.evaluate(e_text, {"n": n, **env}) % ((1 << n) - 1)
        values[v] = ctx.power_table(e)[xs]
    return n, ctx, values


def elimination_soundness(sys: ConjugateSystem, k: int, report: EliminationReport | None = None) -> list[int]:
    """Points x outside {0, 1} where every system equation vanishes at the
    concrete conjugates yet the final resultant does not.  Empty means the
    elimination is sound at this k."""
    report = report or run_plan(sys)
    n, ctx, values = conjugate_values(sys, k)
    common = np.ones(ctx.order, dtype=bool)
    for _, eq in sys.equations:
        common &= eq.evaluate(ctx, values) == 0
    common[:2] = False
    final_vals = report.final.evaluate(ctx, values)
    return [int(x) for x in np.nonzero(common & (final_vals != 0))[0]]
