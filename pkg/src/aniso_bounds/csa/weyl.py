"""The p^2-dimensional algebra over F_p[x, y] with v^p = x, u^p = y, vu - uv = 1.

Elements are dicts {(i, j): coefficient} over the basis u^i v^j (0 <= i, j < p);
coefficients are dicts {(a, b): c} meaning sum c x^a y^b with c in F_p.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from math import comb

SUPPORTED_PRIMES = (2, 3, 5)


# --- F_p[x, y] --------------------------------------------------------------

def padd(f, g, p):
    out = dict(f)
    for m, c in g.items():
        c = (out.get(m, 0) + c) % p
        if c:
            out[m] = c
        else:
            out.pop(m, None)
    return out


def pscale(f, c, p):
    c %= p
    return {m: v * c % p for m, v in f.items()} if c else {}


def pmul(f, g, p):
    out = {}
    for (a1, b1), c1 in f.items():
        for (a2, b2), c2 in g.items():
            m = (a1 + a2, b1 + b2)
            out[m] = (out.get(m, 0) + c1 * c2) % p
    return {m: c for m, c in out.items() if c}


def pformat(f) -> str:
    terms = []
    for (a, b), c in sorted(f.items(), reverse=True):
        mono = "*".join(s for s in (
            "" if a == 0 else ("x" if a == 1 else f"x^{a}"),
            "" if b == 0 else ("y" if b == 1 else f"y^{b}")) if s)
        if not mono:
            terms.append(str(c))
        else:
            terms.append(mono if c == 1 else f"{c}*{mono}")
    return " + ".join(terms) or "0"


ONE = {(0, 0): 1}


# --- the algebra ----------------------------------------------------------

@dataclass(frozen=True)
class WeylAlgebraElement:
    p: int
    terms: tuple  # sorted ((i, j), ((a, b), c), ...) pairs, frozen form of the dict

    @classmethod
    def from_dict(cls, p: int, d: dict) -> WeylAlgebraElement:
        items = []
        for (i, j), f in d.items():
            if not (0 <= i < p and 0 <= j < p):
                raise ValueError("basis index outside normal form")
            f = {m: c % p for m, c in f.items() if c % p}
            if f:
                items.append(((i, j), tuple(sorted(f.items()))))
        return cls(p, tuple(sorted(items)))

    def to_dict(self) -> dict:
        return {ij: dict(f) for ij, f in self.terms}

    @classmethod
    def zero(cls, p):
        return cls(p, ())

    @classmethod
    def scalar(cls, p, f=None):
        return cls.from_dict(p, {(0, 0): dict(ONE if f is None else f)})

    @classmethod
    def u(cls, p):
        return cls.from_dict(p, {(1, 0): dict(ONE)})

    @classmethod
    def v(cls, p):
        return cls.from_dict(p, {(0, 1): dict(ONE)})

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other):
        out = self.to_dict()
        for ij, f in other.to_dict().items():
            out[ij] = padd(out.get(ij, {}), f, self.p)
        return WeylAlgebraElement.from_dict(self.p, out)

    def __neg__(self):
        return WeylAlgebraElement.from_dict(
            self.p, {ij: pscale(f, -1, self.p) for ij, f in self.to_dict().items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return WeylAlgebraElement.from_dict(
                self.p, {ij: pscale(f, other, self.p) for ij, f in self.to_dict().items()})
        p = self.p
        out = {}
        for (i, j), f in self.terms:
            for (k, l), g in other.terms:
                coeff = pmul(dict(f), dict(g), p)
                for (a, b), h in _monomial_product(i, j, k, l, p).items():
                    out[(a, b)] = padd(out.get((a, b), {}), pmul(coeff, h, p), p)
        return WeylAlgebraElement.from_dict(p, out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        result = WeylAlgebraElement.scalar(self.p)
        for _ in range(e):
            result = result * self
        return result

    def commutator(self, other):
        return self * other - other * self

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for (i, j), f in sorted(self.terms, reverse=True):
            mono = "*".join(s for s in (
                "" if i == 0 else ("u" if i == 1 else f"u^{i}"),
                "" if j == 0 else ("v" if j == 1 else f"v^{j}")) if s)
            cs = pformat(dict(f))
            if not mono:
                parts.append(cs)
            elif cs == "1":
                parts.append(mono)
            elif len(f) == 1:
                parts.append(f"{cs}*{mono}")
            else:
                parts.append(f"({cs})*{mono}")
        return " + ".join(parts)


def _reduce_exponents(i, j, p):
    """u^i v^j with i, j possibly >= p: (normal-form index, central factor x^a y^b)."""
    return (i % p, j % p), (j // p, i // p)


def _monomial_product(i, j, k, l, p) -> dict:
    """(u^i v^j)(u^k v^l) in normal form.

    v^j u^k = sum_s C(j, s) k!/(k-s)! u^(k-s) v^(j-s), since v acts on
    polynomials in u as d/du; then u^p = y and v^p = x are central.
    """
    out = {}
    falling = 1
    for s in range(0, min(j, k) + 1):
        if s:
            falling *= (k - s + 1)
        c = comb(j, s) * falling % p
        if not c:
            continue
        idx, (a, b) = _reduce_exponents(i + k - s, j - s + l, p)
        out[idx] = padd(out.get(idx, {}), {(a, b): c}, p)
    return {ij: f for ij, f in out.items() if f}


# --- expression parsing ---------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([uvxy])|(\^)|([+\-*()]))")


def _tokenize(text):
    pos, out = 0, []
    text = text.replace("·", "*")
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            raise ValueError(f"unexpected character at {pos} in {text!r}")
        out.append(m.group(1) or m.group(2) or m.group(3) or m.group(4))
        pos = m.end()
    return out


def weyl_normal_form(expr, p: int) -> WeylAlgebraElement:
    """Normal form of an expression in u, v, x, y and integers, e.g. 'v*(u*v)' or 'x*v*u + 2*u'.

    Juxtaposition multiplies; products are taken left to right in the algebra.
    """
    if p not in SUPPORTED_PRIMES:
        raise ValueError(f"p must be one of {SUPPORTED_PRIMES}")
    if isinstance(expr, WeylAlgebraElement):
        return expr
    tokens = _tokenize(expr)
    pos = 0

    def peek():
        return tokens[pos] if pos < len(tokens) else None

    def take():
        nonlocal pos
        if pos >= len(tokens):
            raise ValueError("unexpected end of expression")
        pos += 1
        return tokens[pos - 1]

    def atom():
        t = take()
        if t == "(":
            val = parse_sum()
            if take() != ")":
                raise ValueError("missing ')'")
            return val
        if t == "u":
            return WeylAlgebraElement.u(p)
        if t == "v":
            return WeylAlgebraElement.v(p)
        if t == "x":
            return WeylAlgebraElement.scalar(p, {(1, 0): 1})
        if t == "y":
            return WeylAlgebraElement.scalar(p, {(0, 1): 1})
        if t.isdigit():
            return WeylAlgebraElement.scalar(p) * int(t)
        raise ValueError(f"unexpected token {t!r}")

    def factor():
        base = atom()
        if peek() == "^":
            take()
            e = take()
            if e is None or not e.isdigit():
                raise ValueError("exponent must be a non-negative integer")
            base = base ** int(e)
        return base

    def term():
        val = factor()
        while peek() is not None and peek() not in ("+", "-", ")"):
            if peek() == "*":
                take()
            val = val * factor()
        return val

    def parse_sum():
        sign = 1
        if peek() == "-":
            take()
            sign = -1
        val = term() * sign
        while peek() in ("+", "-"):
            op = take()
            t = term()
            val = val + t if op == "+" else val - t
        return val

    result = parse_sum()
    if pos != len(tokens):
        raise ValueError(f"trailing input in {expr!r}")
    return result


# --- identities -----------------------------------------------------------

@dataclass(frozen=True)
class IdentityReport:
    p: int
    lhs: str
    rhs: str
    difference: str

    @property
    def holds(self) -> bool:
        return self.difference == "0"

    def to_json(self) -> dict:
        return {"p": self.p, "(uv)^p - uv": self.lhs, "u^p v^p": self.rhs,
                "difference": self.difference, "holds": self.holds}


def weyl_identity_check(p: int) -> IdentityReport:
    """(uv)^p - uv - u^p v^p in normal form; it is zero."""
    if p not in SUPPORTED_PRIMES:
        raise ValueError(f"p must be one of {SUPPORTED_PRIMES}")
    u, v = WeylAlgebraElement.u(p), WeylAlgebraElement.v(p)
    uv = u * v
    lhs = uv ** p - uv
    rhs = (u ** p) * (v ** p)
    diff = lhs - rhs
    return IdentityReport(p, str(lhs), str(rhs), str(diff))


def basis(p):
    return [(i, j) for i in range(p) for j in range(p)]


def ad(a: WeylAlgebraElement, w: WeylAlgebraElement) -> WeylAlgebraElement:
    return a * w - w * a


@dataclass(frozen=True)
class AdSolveReport:
    p: int
    preimage: WeylAlgebraElement
    nilpotent: bool         # (ad v)^p kills every basis monomial
    kernel_rank: int        # rank of ker(ad v) as a module, expected p
    image_rank: int

    def to_json(self) -> dict:
        return {"p": self.p, "preimage_of_1": str(self.preimage),
                "ad_v_nilpotent_of_order_p": self.nilpotent,
                "kernel_rank": self.kernel_rank, "image_rank": self.image_rank}


def _ad_matrix(p):
    """Columns: ad v applied to each basis monomial, as coefficient lists over F_p[x, y]."""
    v = WeylAlgebraElement.v(p)
    cols = []
    idx = basis(p)
    for ij in idx:
        img = ad(v, WeylAlgebraElement.from_dict(p, {ij: dict(ONE)})).to_dict()
        cols.append([img.get(kl, {}) for kl in idx])
    return [[cols[c][r] for c in range(len(idx))] for r in range(len(idx))]


def _is_unit(f):
    return len(f) == 1 and (0, 0) in f


def _solve_unit_pivots(A, b, p):
    """Solve A z = b over F_p[x, y] by elimination with constant (unit) pivots.

    Returns (solution with free variables set to 0, rank). A pivot that is not a
    unit would require fraction-field arithmetic and raises ArithmeticError.
    """
    n_rows, n_cols = len(A), len(A[0])
    M = [list(row) + [b[r]] for r, row in enumerate(A)]
    pivots = []
    r = 0
    for c in range(n_cols):
        piv = next((i for i in range(r, n_rows) if M[i][c]), None)
        if piv is None:
            continue
        if not _is_unit(M[piv][c]):
            unit = next((i for i in range(r, n_rows) if _is_unit(M[i][c])), None)
            if unit is None:
                raise ArithmeticError("non-unit pivot; polynomial elimination insufficient")
            piv = unit
        M[r], M[piv] = M[piv], M[r]
        inv = pow(M[r][c][(0, 0)], -1, p)
        M[r] = [pscale(f, inv, p) for f in M[r]]
        for i in range(n_rows):
            if i != r and M[i][c]:
                f = M[i][c]
                M[i] = [padd(a, pscale(pmul(f, bb, p), -1, p), p) for a, bb in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
    if any(M[i][n_cols] for i in range(r, n_rows)):
        return None, r
    z = [{} for _ in range(n_cols)]
    for i, c in enumerate(pivots):
        z[c] = M[i][n_cols]
    return z, r


def ad_solve(p: int) -> AdSolveReport:
    """A u' with [v, u'] = 1, found by solving the linear system for ad v, plus (ad v)^p = 0."""
    if p not in SUPPORTED_PRIMES:
        raise ValueError(f"p must be one of {SUPPORTED_PRIMES}")
    v = WeylAlgebraElement.v(p)
    idx = basis(p)
    nilpotent = True
    for ij in idx:
        w = WeylAlgebraElement.from_dict(p, {ij: dict(ONE)})
        for _ in range(p):
            w = ad(v, w)
        nilpotent = nilpotent and w.is_zero()
    A = _ad_matrix(p)
    target = [dict(ONE) if ij == (0, 0) else {} for ij in idx]
    z, rk = _solve_unit_pivots(A, target, p)
    if z is None:
        raise ArithmeticError("1 is not in the image of ad v")
    pre = WeylAlgebraElement.from_dict(p, {ij: f for ij, f in zip(idx, z)})
    if ad(v, pre) != WeylAlgebraElement.scalar(p):
        raise AssertionError("preimage check failed")
    return AdSolveReport(p, pre, nilpotent, len(idx) - rk, rk)


def centralizes_generators(a: WeylAlgebraElement) -> bool:
    """Does a commute with both u and v?"""
    p = a.p
    return ad(WeylAlgebraElement.u(p), a).is_zero() and ad(WeylAlgebraElement.v(p), a).is_zero()
