"""Sylvester resultants over GF(2).

Scalar resultants of univariate polynomials, and elimination resultants
Res(F, G, y) of polynomials in y whose coefficients are BitPolys in x.  The
elimination determinant has two independent evaluators: fraction-free
(Bareiss) elimination over GF(2)[x], and evaluation at points of GF(2^m)
followed by interpolation.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

import numpy as np

from .gf2n import make_ctx
from .gf2poly import BitPoly, _divmod, clmul, factor, format_poly

__all__ = [
    "BiPoly",
    "sylvester_matrix",
    "res_scalar",
    "res_eliminate",
    "res_eliminate_interp",
    "res_product_formula_check",
    "bareiss_det",
    "parse_monomials",
]


_MONO_RE = re.compile(r"([a-z])(?:\^\{?(\d+)\}?)?")


def parse_monomials(text: str, variables: tuple[str, ...]) -> set[tuple[int, ...]]:
    """Parse a sum of monomials such as ``x*y^2+x^3+1`` (``*`` optional,
    ``x^{12}`` accepted) into the set of exponent vectors; repeated terms
    cancel in pairs."""
    s = text.replace(" ", "").replace("\n", "")
    if s in ("", "0"):
        return set()
    index = {v: i for i, v in enumerate(variables)}
    out: set[tuple[int, ...]] = set()
    for term in s.split("+"):
        exps = [0] * len(variables)
        body = term.replace("*", "")
        if body != "1":
            pos = 0
            while pos < len(body):
                m = _MONO_RE.match(body, pos)
                if not m or m.group(1) not in index:
                    raise ValueError(f"bad monomial {term!r} in {text!r}")
                exps[index[m.group(1)]] += int(m.group(2) or 1)
                pos = m.end()
        out ^= {tuple(exps)}
    return out


def _format_term(exps: tuple[int, ...], variables: tuple[str, ...]) -> str:
    parts = []
    for v, e in zip(variables, exps):
        if e == 1:
            parts.append(v)
        elif e > 1:
            parts.append(f"{v}^{e}")
    return "*".join(parts) or "1"


@dataclass(frozen=True)
class BiPoly:
    """Polynomial in y whose coefficients are BitPolys in x.

    ``coeffs[j]`` is the coefficient of y^j; the top entry is nonzero unless
    the polynomial is zero (empty tuple).
    """

    coeffs: tuple[BitPoly, ...]

    def __post_init__(self):
        c = list(self.coeffs)
        while c and not c[-1]:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(BitPoly(v) for v in c))

    @classmethod
    def parse(cls, text: str) -> "BiPoly":
        terms = parse_monomials(text, ("x", "y"))
        if not terms:
            return cls(())
        top = max(j for _, j in terms)
        bits = [0] * (top + 1)
        for i, j in terms:
            bits[j] ^= 1 << i
        return cls(tuple(BitPoly(b) for b in bits))

    @classmethod
    def from_terms(cls, terms) -> "BiPoly":
        bits: dict[int, int] = {}
        for i, j in terms:
            bits[j] = bits.get(j, 0) ^ (1 << i)
        top = max(bits, default=-1)
        return cls(tuple(BitPoly(bits.get(j, 0)) for j in range(top + 1)))

    @property
    def ydeg(self) -> int:
        return len(self.coeffs) - 1

    @property
    def xdeg(self) -> int:
        return max((c.degree for c in self.coeffs), default=-1)

    def terms(self) -> set[tuple[int, int]]:
        return {(i, j) for j, c in enumerate(self.coeffs) for i in c.exponents()}

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other) -> bool:
        return isinstance(other, BiPoly) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __add__(self, other: "BiPoly") -> "BiPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (BitPoly(0),) * (n - len(self.coeffs))
        b = other.coeffs + (BitPoly(0),) * (n - len(other.coeffs))
        return BiPoly(tuple(p + q for p, q in zip(a, b)))

    def __mul__(self, other: "BiPoly") -> "BiPoly":
        if self.is_zero() or other.is_zero():
            return BiPoly(())
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        out[i + j] ^= clmul(a.bits, b.bits)
        return BiPoly(tuple(BitPoly(v) for v in out))

    def swap(self) -> "BiPoly":
        """Exchange the roles of x and y."""
        return BiPoly.from_terms((j, i) for i, j in self.terms())

    def eval_y(self, y: BitPoly) -> BitPoly:
        acc = BitPoly(0)
        for c in reversed(self.coeffs):
            acc = acc * y + c
        return acc

    def __str__(self) -> str:
        terms = sorted(self.terms(), key=lambda t: (-t[0], -t[1]))
        return "+".join(_format_term(t, ("x", "y")) for t in terms) or "0"

    def __repr__(self) -> str:
        return f"BiPoly('{self}')"


def sylvester_matrix(f: list[int], g: list[int]) -> list[list[int]]:
    """Sylvester matrix of two coefficient lists given low-to-high, using
    their formal lengths (len - 1 is the formal degree)."""
    p, q = len(f) - 1, len(g) - 1
    size = p + q
    rows = []
    for i in range(q):
        row = [0] * size
        for t, c in enumerate(reversed(f)):
            row[i + t] = c
        rows.append(row)
    for i in range(p):
        row = [0] * size
        for t, c in enumerate(reversed(g)):
            row[i + t] = c
        rows.append(row)
    return rows


def bareiss_det(matrix: list[list[int]]) -> int:
    """Determinant of a square matrix over GF(2)[x] (bit-packed entries) by
    fraction-free elimination; every division is exact."""
    m = [list(r) for r in matrix]
    n = len(m)
    if n == 0:
        return 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k]:
                    m[k], m[i] = m[i], m[k]
                    break
            else:
                return 0
        pivot = m[k][k]
        row_k = m[k]
        for i in range(k + 1, n):
            row_i = m[i]
            lead = row_i[k]
            for j in range(k + 1, n):
                v = clmul(pivot, row_i[j])
                if lead and row_k[j]:
                    v ^= clmul(lead, row_k[j])
                if prev != 1 and v:
                    v, r = _divmod(v, prev)
                    if r:
                        raise ArithmeticError("inexact division in fraction-free elimination")
                row_i[j] = v
            row_i[k] = 0
        prev = pivot
    return m[n - 1][n - 1]


def _f2_det(rows: list[list[int]]) -> int:
    # Gaussian elimination over GF(2) with rows packed as ints.
    packed = []
    for r in rows:
        v = 0
        for j, c in enumerate(r):
            if c & 1:
                v |= 1 << j
        packed.append(v)
    n = len(packed)
    for col in range(n):
        bit = 1 << col
        piv = next((i for i in range(col, n) if packed[i] & bit), None)
        if piv is None:
            return 0
        packed[col], packed[piv] = packed[piv], packed[col]
        for i in range(col + 1, n):
            if packed[i] & bit:
                packed[i] ^= packed[col]
    return 1


def res_scalar(f: BitPoly, g: BitPoly, deg_f: int | None = None, deg_g: int | None = None) -> int:
    """Res(f, g) in GF(2) as the Sylvester determinant of order deg_f + deg_g.

    Formal degrees default to the actual degrees."""
    p = f.degree if deg_f is None else deg_f
    q = g.degree if deg_g is None else deg_g
    if p < 1 and q < 1:
        raise ValueError("resultant needs at least one nonconstant polynomial")
    if p < f.degree or q < g.degree:
        raise ValueError("formal degree below actual degree")
    fc = [f.coeff(i) for i in range(p + 1)]
    gc = [g.coeff(i) for i in range(q + 1)]
    return _f2_det(sylvester_matrix(fc, gc))


def _check_elim(F: BiPoly, G: BiPoly) -> None:
    if F.ydeg < 1 or G.ydeg < 1:
        raise ValueError("both polynomials need positive degree in y")


def res_eliminate(F: BiPoly, G: BiPoly) -> BitPoly:
    """Res(F, G, y) by fraction-free elimination over GF(2)[x]."""
    _check_elim(F, G)
    mat = sylvester_matrix([c.bits for c in F.coeffs], [c.bits for c in G.coeffs])
    return BitPoly(bareiss_det(mat))


def degree_bound(F: BiPoly, G: BiPoly) -> int:
    """Sum over Sylvester rows of the largest x-degree in the row."""
    return G.ydeg * max(F.xdeg, 0) + F.ydeg * max(G.xdeg, 0)


def _gf_mul(exp, log, a, b):
    prod = exp[log[a] + log[b]]
    return np.where((a == 0) | (b == 0), 0, prod)


def _gf_inv(exp, log, q1, a):
    return exp[(q1 - log[a]) % q1]


def _eval_at(exp, log, poly: int, pts: np.ndarray) -> np.ndarray:
    acc = np.zeros_like(pts)
    for e in range(poly.bit_length() - 1, -1, -1):
        acc = _gf_mul(exp, log, acc, pts)
        if (poly >> e) & 1:
            acc = acc ^ 1
    return acc


def _batched_det(exp, log, q1, mats: np.ndarray) -> np.ndarray:
    """Determinants of a stack of matrices over GF(2^m), one per leading index."""
    a = mats.copy()
    npts, n, _ = a.shape
    det = np.ones(npts, dtype=np.int64)
    alive = np.ones(npts, dtype=bool)
    idx = np.arange(npts)
    for c in range(n):
        nz = a[:, c:, c] != 0
        has = nz.any(axis=1)
        alive &= has
        piv = c + np.argmax(nz, axis=1)
        swap = piv != c
        if swap.any():
            rows_c = a[idx[swap], c, :].copy()
            a[idx[swap], c, :] = a[idx[swap], piv[swap], :]
            a[idx[swap], piv[swap], :] = rows_c
        pv = np.where(alive, a[:, c, c], 1)
        det = _gf_mul(exp, log, det, pv)
        if c + 1 == n:
            break
        inv = _gf_inv(exp, log, q1, pv)
        factors = _gf_mul(exp, log, a[:, c + 1 :, c], inv[:, None])
        upd = _gf_mul(exp, log, factors[:, :, None], a[:, None, c, c:])
        a[:, c + 1 :, c:] ^= upd
    return np.where(alive, det, 0)


def _interpolate(exp, log, q1, pts: np.ndarray, vals: np.ndarray) -> np.ndarray:
    """Coefficients (low to high) of the polynomial through (pts, vals)."""
    dd = vals.copy()
    npts = len(pts)
    for j in range(1, npts):
        num = dd[j:] ^ dd[j - 1 : -1]
        den = pts[j:] ^ pts[: npts - j]
        dd[j:] = _gf_mul(exp, log, num, _gf_inv(exp, log, q1, den))
    coeffs = np.zeros(npts, dtype=np.int64)
    coeffs[0] = dd[-1]
    deg = 0
    for j in range(npts - 2, -1, -1):
        # coeffs <- coeffs * (x + pts[j]) + dd[j]
        shifted = np.zeros_like(coeffs)
        shifted[1 : deg + 2] = coeffs[: deg + 1]
        scaled = _gf_mul(exp, log, coeffs, np.full_like(coeffs, pts[j]))
        coeffs = shifted ^ scaled
        coeffs[0] ^= dd[j]
        deg += 1
    return coeffs


def res_eliminate_interp(F: BiPoly, G: BiPoly, chunk: int = 512) -> BitPoly:
    """Res(F, G, y) by evaluating x at points of GF(2^m), taking numeric
    Sylvester determinants, and interpolating."""
    _check_elim(F, G)
    bound = degree_bound(F, G)
    m = max(2, (bound + 1).bit_length())
    ctx = make_ctx(m)
    exp, log, q1 = ctx.exp_table, ctx.log_table, ctx.mult_order
    pts = np.arange(bound + 1, dtype=np.int64)
    fc, gc = [c.bits for c in F.coeffs], [c.bits for c in G.coeffs]
    vals = np.empty(len(pts), dtype=np.int64)
    for start in range(0, len(pts), chunk):
        sub = pts[start : start + chunk]
        fv = [_eval_at(exp, log, c, sub) for c in fc]
        gv = [_eval_at(exp, log, c, sub) for c in gc]
        p, q = len(fc) - 1, len(gc) - 1
        size = p + q
        mats = np.zeros((len(sub), size, size), dtype=np.int64)
        for i in range(q):
            for t, v in enumerate(reversed(fv)):
                mats[:, i, i + t] = v
        for i in range(p):
            for t, v in enumerate(reversed(gv)):
                mats[:, q + i, i + t] = v
        vals[start : start + len(sub)] = _batched_det(exp, log, q1, mats)
    coeffs = _interpolate(exp, log, q1, pts, vals)
    if np.any(coeffs > 1):
        raise ArithmeticError("interpolated resultant has coefficients outside GF(2)")
    bits = 0
    for i in np.nonzero(coeffs)[0]:
        bits |= 1 << int(i)
    return BitPoly(bits)


def res_product_formula_check(f: BitPoly, g: BitPoly, ext_degree: int) -> bool:
    """Compare res_scalar(f, g) with the product of g over the roots of f
    (with multiplicity) in GF(2^ext_degree)."""
    if f.degree < 1:
        raise ValueError("f must be nonconstant")
    ctx = make_ctx(ext_degree)
    exp, log = ctx.exp_table, ctx.log_table
    elems = np.arange(ctx.order, dtype=np.int64)
    gvals = _eval_at(exp, log, g.bits, elems)
    prod = 1
    for h, mult in factor(f):
        if ext_degree % h.degree:
            raise ValueError(f"factor {h} of f does not split in GF(2^{ext_degree})")
        roots = elems[_eval_at(exp, log, h.bits, elems) == 0]
        if len(roots) != h.degree:
            raise AssertionError(f"found {len(roots)} roots of {h}")
        for r in roots:
            for _ in range(mult):
                prod = ctx.mul(prod, int(gvals[r]))
    if prod not in (0, 1):
        raise AssertionError("root product is not in GF(2)")
    deg_g = max(g.degree, 0)
    return prod == res_scalar(f, g, f.degree, deg_g) if g.degree >= 0 else prod == 0
