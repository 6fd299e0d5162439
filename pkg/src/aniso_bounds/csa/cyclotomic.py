"""Matrices over Q(zeta_N) and the shape of their minimal polynomials.

Field elements are tuples of Fractions of length phi(N): coefficients of
1, z, ..., z^(phi(N)-1), reduced modulo the cyclotomic polynomial Phi_N.
Factorisation over Q(zeta_N) is delegated to sympy; the product of the factors
is checked against the minimal polynomial in this module's own arithmetic.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from ..errors import NotScalarPower
from ..exactalg import cyclotomic

MAX_CONDUCTOR = 24
MAX_DIM = 3
MAX_POWER = 24


class CyclotomicField:
    """Q(zeta_N) with dense coefficient vectors."""

    def __init__(self, N: int):
        if not 1 <= N <= MAX_CONDUCTOR:
            raise ValueError(f"conductor must be in 1..{MAX_CONDUCTOR}")
        self.N = N
        self.phi = tuple(Fraction(c) for c in cyclotomic(N))
        self.degree = len(self.phi) - 1

    def reduce(self, coeffs) -> tuple:
        a = [Fraction(c) for c in coeffs]
        k = self.degree
        for i in range(len(a) - 1, k - 1, -1):
            c = a[i]
            if c:
                for j in range(k + 1):
                    a[i - k + j] -= c * self.phi[j]
        a = a[:k] + [Fraction(0)] * max(0, k - len(a))
        return tuple(a)

    @property
    def zero(self):
        return (Fraction(0),) * self.degree

    @property
    def one(self):
        return self.from_rational(1)

    def from_rational(self, c):
        return self.reduce([Fraction(c)])

    def zeta(self):
        return self.reduce([0, 1])

    def add(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def neg(self, a):
        return tuple(-x for x in a)

    def sub(self, a, b):
        return tuple(x - y for x, y in zip(a, b))

    def mul(self, a, b):
        out = [Fraction(0)] * (2 * self.degree)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return self.reduce(out)

    def is_zero(self, a):
        return not any(a)

    def inv(self, a):
        """Inverse by solving the multiplication-by-a matrix against 1."""
        if self.is_zero(a):
            raise ZeroDivisionError("inverse of zero in cyclotomic field")
        k = self.degree
        cols = [self.mul(a, self.reduce([0] * i + [1])) for i in range(k)]
        M = [[cols[j][i] for j in range(k)] + [Fraction(int(i == 0))] for i in range(k)]
        for c in range(k):
            piv = next(r for r in range(c, k) if M[r][c])
            M[c], M[piv] = M[piv], M[c]
            pv = M[c][c]
            M[c] = [x / pv for x in M[c]]
            for r in range(k):
                if r != c and M[r][c]:
                    f = M[r][c]
                    M[r] = [x - f * y for x, y in zip(M[r], M[c])]
        return tuple(M[i][k] for i in range(k))

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def format(self, a) -> str:
        terms = []
        for e in range(len(a) - 1, -1, -1):
            c = a[e]
            if not c:
                continue
            mono = "" if e == 0 else ("z" if e == 1 else f"z^{e}")
            if not mono:
                terms.append(str(c))
            elif c == 1:
                terms.append(mono)
            elif c == -1:
                terms.append(f"-{mono}")
            else:
                terms.append(f"{c}*{mono}")
        return " + ".join(terms).replace("+ -", "- ") or "0"

    _TERM = re.compile(r"^([+-]?)(\d+(?:/\d+)?)?\*?(z(?:\^(\d+))?)?$")

    def parse(self, obj):
        """Accept a rational, a coefficient list (low degree first) or text like 'z^2 - 1/2'."""
        if isinstance(obj, (list, tuple)):
            return self.reduce(obj)
        if isinstance(obj, (int, Fraction)) and not isinstance(obj, bool):
            return self.from_rational(obj)
        s = str(obj).replace(" ", "")
        if not s:
            raise ValueError("empty cyclotomic element")
        coeffs = {}
        for term in re.findall(r"[+-]?[^+-]+", s):
            m = self._TERM.match(term)
            if not m or (m.group(2) is None and m.group(3) is None):
                raise ValueError(f"cannot parse cyclotomic element {obj!r}")
            c = Fraction(m.group(2)) if m.group(2) else Fraction(1)
            if m.group(1) == "-":
                c = -c
            e = 0 if not m.group(3) else (int(m.group(4)) if m.group(4) else 1)
            coeffs[e] = coeffs.get(e, 0) + c
        top = max(coeffs)
        return self.reduce([coeffs.get(i, 0) for i in range(top + 1)])


@lru_cache(maxsize=None)
def cyclotomic_field(N: int) -> CyclotomicField:
    return CyclotomicField(N)


@dataclass(frozen=True)
class CyclotomicMatrix:
    N: int
    n: int
    entries: tuple  # n x n tuple of field elements

    @classmethod
    def from_rows(cls, N: int, rows) -> CyclotomicMatrix:
        K = cyclotomic_field(N)
        n = len(rows)
        if not 1 <= n <= MAX_DIM or any(len(r) != n for r in rows):
            raise ValueError(f"matrix must be square of size 1..{MAX_DIM}")
        return cls(N, n, tuple(tuple(K.parse(x) for x in r) for r in rows))

    @classmethod
    def from_json(cls, obj, N: int | None = None) -> CyclotomicMatrix:
        rows = obj["entries"] if isinstance(obj, dict) else obj
        if N is None:
            N = obj.get("N", 1) if isinstance(obj, dict) else 1
        return cls.from_rows(int(N), rows)

    @property
    def field(self) -> CyclotomicField:
        return cyclotomic_field(self.N)

    def __matmul__(self, other: CyclotomicMatrix) -> CyclotomicMatrix:
        K, n = self.field, self.n
        rows = []
        for i in range(n):
            row = []
            for j in range(n):
                acc = K.zero
                for t in range(n):
                    acc = K.add(acc, K.mul(self.entries[i][t], other.entries[t][j]))
                row.append(acc)
            rows.append(tuple(row))
        return CyclotomicMatrix(self.N, n, tuple(rows))

    @classmethod
    def identity(cls, N, n):
        K = cyclotomic_field(N)
        return cls(N, n, tuple(tuple(K.one if i == j else K.zero for j in range(n)) for i in range(n)))

    def scalar_value(self):
        """a if the matrix equals a*I, else None."""
        K = self.field
        a = self.entries[0][0]
        for i in range(self.n):
            for j in range(self.n):
                if self.entries[i][j] != (a if i == j else K.zero):
                    return None
        return a

    def flat(self):
        return [x for r in self.entries for x in r]


# --- polynomials over K (lists of elements, low degree first) --------------

def _poly_mul(K, f, g):
    out = [K.zero] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        for j, b in enumerate(g):
            out[i + j] = K.add(out[i + j], K.mul(a, b))
    return out


def minimal_polynomial(M: CyclotomicMatrix) -> list:
    """Monic minimal polynomial over Q(zeta_N), by the first linear dependence among vec(M^k)."""
    K, n = M.field, M.n
    powers = [CyclotomicMatrix.identity(M.N, n)]
    # echelon basis of spanned vectors, each with its expression in powers
    basis = []  # (vector, combination, pivot index)
    for deg in range(n * n + 1):
        if deg:
            powers.append(powers[-1] @ M)
        vec = powers[deg].flat()
        comb = [K.zero] * deg + [K.one]
        for bvec, bcomb, piv in basis:
            c = vec[piv]
            if not K.is_zero(c):
                vec = [K.sub(x, K.mul(c, y)) for x, y in zip(vec, bvec)]
                bc = bcomb + [K.zero] * (len(comb) - len(bcomb))
                comb = [K.sub(x, K.mul(c, y)) for x, y in zip(comb, bc)]
        piv = next((i for i, x in enumerate(vec) if not K.is_zero(x)), None)
        if piv is None:
            return comb
        inv = K.inv(vec[piv])
        basis.append(([K.mul(inv, x) for x in vec], [K.mul(inv, x) for x in comb], piv))
    raise AssertionError("Cayley-Hamilton violated")


def _sympy_domain(N):
    import sympy
    if N in (1, 2):
        return sympy.QQ
    return sympy.QQ.algebraic_field(sympy.exp(2 * sympy.pi * sympy.I / N))


def factor_over_cyclotomic(K: CyclotomicField, f: list) -> list[list]:
    """Monic irreducible factors over Q(zeta_N), with multiplicity, as coefficient lists."""
    import sympy
    dom = _sympy_domain(K.N)
    y = sympy.Symbol("y")

    def to_dom(a):
        if K.degree == 1:
            return dom.convert(sympy.Rational(a[0].numerator, a[0].denominator))
        high_first = [sympy.QQ(c.numerator, c.denominator) for c in reversed(a)]
        while len(high_first) > 1 and high_first[0] == 0:
            high_first.pop(0)
        return dom.new(high_first)

    def from_dom(c):
        if K.degree == 1:
            return K.from_rational(Fraction(int(c.numerator), int(c.denominator)))
        coeffs = [Fraction(int(x.numerator), int(x.denominator)) for x in reversed(c.rep)]
        return K.reduce(coeffs)

    poly = sympy.Poly.from_list([to_dom(a) for a in reversed(f)], y, domain=dom)
    lead, factors = poly.factor_list()
    out = []
    for g, mult in factors:
        coeffs = [from_dom(c) for c in reversed(g.rep.to_list())]
        inv = K.inv(coeffs[-1])
        coeffs = [K.mul(inv, c) for c in coeffs]
        out.extend([coeffs] * mult)
    return out


@dataclass(frozen=True)
class MinpolyReport:
    N: int
    m: int                # least m with M^m scalar
    scalar: tuple         # M^m = scalar * I
    minpoly: tuple
    factors: tuple
    r: int | None         # common exponent when every factor is y^r - b
    constants: tuple      # the b's
    shape_ok: bool
    product_ok: bool

    @property
    def may_split_further(self) -> bool:
        """A factor y^r - b with r > 1 could split over a larger cyclotomic field."""
        return self.r is not None and self.r > 1

    def to_json(self) -> dict:
        K = cyclotomic_field(self.N)
        fmt = lambda f: [K.format(c) for c in f]  # noqa: E731
        return {"N": self.N, "m": self.m, "scalar": K.format(self.scalar),
                "minpoly": fmt(self.minpoly), "factors": [fmt(f) for f in self.factors],
                "r": self.r, "constants": [K.format(b) for b in self.constants],
                "shape_ok": self.shape_ok, "product_ok": self.product_ok,
                "r_divides_m": self.r is not None and self.m % self.r == 0,
                "may_split_further": self.may_split_further}


def _binomial_shape(K, f):
    """(r, b) if f = y^r - b, else None."""
    r = len(f) - 1
    if any(not K.is_zero(c) for c in f[1:r]):
        return None
    return r, K.neg(f[0])


def minpoly_structure(M: CyclotomicMatrix) -> MinpolyReport:
    """Minimal polynomial of M over Q(zeta_N) and whether it is a product of y^r - b_i."""
    K = M.field
    P = M
    scalar = None
    for m in range(1, MAX_POWER + 1):
        if m > 1:
            P = P @ M
        scalar = P.scalar_value()
        if scalar is not None:
            break
    else:
        raise NotScalarPower(f"no m <= {MAX_POWER} with M^m scalar")
    f = minimal_polynomial(M)
    factors = factor_over_cyclotomic(K, f)
    prod = [K.one]
    for g in factors:
        prod = _poly_mul(K, prod, g)
    product_ok = prod == f
    shapes = [_binomial_shape(K, g) for g in factors]
    rs = {s[0] for s in shapes if s is not None}
    shape_ok = all(s is not None for s in shapes) and len(rs) == 1
    r = rs.pop() if shape_ok else None
    constants = tuple(s[1] for s in shapes) if shape_ok else ()
    if shape_ok and m % r:
        shape_ok = False
    return MinpolyReport(M.N, m, scalar, tuple(f), tuple(tuple(g) for g in factors),
                         r, constants, shape_ok, product_ok)
