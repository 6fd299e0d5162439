"""Exact fields: small finite fields F_{p^k} and the rationals behind one small interface.

Finite-field elements are plain ints: the coefficient vector (c_0, ..., c_{k-1})
of c_0 + c_1 w + ... + c_{k-1} w^{k-1} read as base-p digits, c_0 least
significant. So 0 and 1 are the usual constants and ``w`` (the class of the
polynomial variable) is the int p. Element order throughout is the order of
these ints.
"""

from __future__ import annotations

import itertools
import re
from fractions import Fraction
from functools import lru_cache

MAX_P = 13
MAX_K = 4


def is_prime(n: int) -> bool:
    return n >= 2 and all(n % q for q in range(2, int(n ** 0.5) + 1))


def _polymulmod_p(a, b, p):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return out


def _poly_rem_p(a, mod, p):
    a = list(a)
    k = len(mod) - 1
    for i in range(len(a) - 1, k - 1, -1):
        c = a[i]
        if c:
            for j in range(k + 1):
                a[i - k + j] = (a[i - k + j] - c * mod[j]) % p
    return a[:k] + [0] * max(0, k - len(a))


def _has_root_or_factor(poly, p):
    """True iff the monic ``poly`` (low first) over F_p has a factor of degree <= deg/2."""
    k = len(poly) - 1
    for deg in range(1, k // 2 + 1):
        for tail in itertools.product(range(p), repeat=deg):
            if not any(_poly_rem_p(poly, list(tail) + [1], p)):
                return True
    return False


@lru_cache(maxsize=None)
def smallest_irreducible(p: int, k: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible of degree k over F_p.

    Candidates x^k + c_{k-1} x^{k-1} + ... + c_0 are ordered by the tuple
    (c_{k-1}, ..., c_0); coefficients are returned low degree first.
    """
    if k == 1:
        return (0, 1)
    for high_first in itertools.product(range(p), repeat=k):
        poly = list(reversed(high_first)) + [1]
        if poly[0] == 0:
            continue
        if not _has_root_or_factor(poly, p):
            return tuple(poly)
    raise AssertionError("no irreducible polynomial found")


class FiniteField:
    """F_q with q = p^k, p <= 13, k <= 4, built on the smallest irreducible modulus."""

    def __init__(self, p: int, k: int = 1):
        if not is_prime(p) or p > MAX_P:
            raise ValueError(f"characteristic must be a prime <= {MAX_P}, got {p}")
        if not 1 <= k <= MAX_K:
            raise ValueError(f"extension degree must be in 1..{MAX_K}, got {k}")
        self.p = p
        self.k = k
        self.q = p ** k
        self.modulus = smallest_irreducible(p, k)
        self._build_tables()

    # construction ---------------------------------------------------------
    def _digits(self, a: int) -> list[int]:
        out = []
        for _ in range(self.k):
            a, r = divmod(a, self.p)
            out.append(r)
        return out

    def _from_digits(self, digits) -> int:
        a = 0
        for c in reversed(list(digits)[:self.k]):
            a = a * self.p + c
        return a

    def _slow_mul(self, a: int, b: int) -> int:
        prod = _polymulmod_p(self._digits(a), self._digits(b), self.p)
        return self._from_digits(_poly_rem_p(prod, self.modulus, self.p))

    def _slow_add(self, a: int, b: int) -> int:
        return self._from_digits([(x + y) % self.p for x, y in zip(self._digits(a), self._digits(b))])

    def _build_tables(self):
        q = self.q
        for g in range(2 if q > 2 else 1, q):
            exp = [1]
            x = g
            while x != 1:
                exp.append(x)
                x = self._slow_mul(x, g)
            if len(exp) == q - 1:
                break
        else:
            raise AssertionError("no primitive element")
        self.primitive = g
        self._exp = exp + exp
        self._log = [None] * q
        for i, x in enumerate(exp):
            self._log[x] = i
        self._add = None
        if q <= 1024:
            self._add = [[self._slow_add(a, b) for b in range(q)] for a in range(q)]
        self._neg = [self._from_digits([(-x) % self.p for x in self._digits(a)]) for a in range(q)]

    # interface ------------------------------------------------------------
    @property
    def char(self) -> int:
        return self.p

    zero = 0
    one = 1

    @property
    def gen(self) -> int:
        """The class of the polynomial variable, written ``w``."""
        return self.p if self.k > 1 else self.primitive

    def elements(self) -> range:
        return range(self.q)

    def add(self, a: int, b: int) -> int:
        if self._add is None:
            return self._slow_add(a, b)
        return self._add[a][b]

    def neg(self, a: int) -> int:
        return self._neg[a]

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self._neg[b])

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self._exp[self._log[a] + self._log[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in finite field")
        return self._exp[(self.q - 1 - self._log[a]) % (self.q - 1)]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e < 0:
                raise ZeroDivisionError("negative power of zero")
            return 1 if e == 0 else 0
        return self._exp[(self._log[a] * e) % (self.q - 1)]

    def from_int(self, n: int) -> int:
        """Image of an integer under Z -> F_p -> F_q."""
        return n % self.p

    def scale(self, n: int, a: int) -> int:
        """n * a for an integer n."""
        return self.mul(self.from_int(n), a)

    def is_zero(self, a) -> bool:
        return a == 0

    def frobenius(self, a: int) -> int:
        return self.pow(a, self.p)

    def sqrt(self, a: int) -> int:
        """Square root in a field of characteristic 2: a^(2^(k-1))."""
        if self.p != 2:
            raise ValueError("closed-form square root only in characteristic 2")
        return self.pow(a, 2 ** (self.k - 1))

    def artin_schreier(self, c: int) -> int:
        """theta(c) = c - c^p."""
        return self.sub(c, self.frobenius(c))

    def artin_schreier_image(self) -> frozenset[int]:
        return frozenset(self.artin_schreier(c) for c in self.elements())

    def coset_rep(self, a: int, image: frozenset[int] | None = None) -> int:
        """Smallest element of a + image (image an additive subgroup)."""
        if image is None:
            image = self.artin_schreier_image()
        return min(self.add(a, s) for s in image)

    # text ---------------------------------------------------------------
    def format(self, a: int) -> str:
        if self.k == 1:
            return str(a)
        terms = []
        for e, c in reversed(list(enumerate(self._digits(a)))):
            if not c:
                continue
            mono = "" if e == 0 else ("w" if e == 1 else f"w^{e}")
            if not mono:
                terms.append(str(c))
            else:
                terms.append(mono if c == 1 else f"{c}*{mono}")
        return "+".join(terms) or "0"

    _TERM = re.compile(r"^\s*(?:(\d+)\s*\*?\s*)?(w(?:\s*\^\s*(\d+))?)?\s*$")

    def parse(self, text) -> int:
        """Parse '0', '1', 'w', 'w^2', 'w+1', '2*w^3+1', ... into an element."""
        if isinstance(text, int) and not isinstance(text, bool):
            return self.from_int(text)
        s = str(text).replace(" ", "")
        if not s:
            raise ValueError("empty field element")
        result = 0
        for term in s.split("+"):
            m = self._TERM.match(term)
            if not term or not m or (m.group(1) is None and m.group(2) is None):
                raise ValueError(f"cannot parse field element {text!r}")
            coeff = self.from_int(int(m.group(1))) if m.group(1) else 1
            if m.group(2):
                e = int(m.group(3)) if m.group(3) else 1
                coeff = self.mul(coeff, self.pow(self.gen, e))
            result = self.add(result, coeff)
        return result

    def __eq__(self, other):
        return isinstance(other, FiniteField) and (self.p, self.k) == (other.p, other.k)

    def __hash__(self):
        return hash((self.p, self.k))

    def __repr__(self):
        return f"FiniteField({self.p}, {self.k})"

    def to_json(self) -> dict:
        return {"p": self.p, "k": self.k}


@lru_cache(maxsize=None)
def GF(p: int, k: int = 1) -> FiniteField:
    return FiniteField(p, k)


class Rationals:
    """The field Q with Fraction elements, matching the FiniteField interface."""

    char = 0
    zero = Fraction(0)
    one = Fraction(1)

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / Fraction(a)

    def div(self, a, b):
        return Fraction(a) / b

    def pow(self, a, e):
        return Fraction(a) ** e

    def from_int(self, n):
        return Fraction(n)

    def scale(self, n, a):
        return n * a

    def is_zero(self, a):
        return a == 0

    def parse(self, text):
        return Fraction(str(text))

    def format(self, a):
        return str(a)

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("Q")

    def __repr__(self):
        return "Rationals()"

    def to_json(self):
        return "Q"


QQ = Rationals()


def field_from_json(obj):
    if obj in ("Q", "QQ", "rationals", None):
        return QQ
    if isinstance(obj, dict):
        return GF(int(obj["p"]), int(obj.get("k", 1)))
    raise ValueError(f"unrecognised field description {obj!r}")
