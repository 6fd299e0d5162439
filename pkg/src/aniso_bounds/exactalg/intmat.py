"""Square integer matrices with checked 128-bit arithmetic, and their reductions mod m."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from ..errors import IntegerOverflow, NotInvertible

INT_BITS = 128
_LIMIT = 1 << (INT_BITS - 1)
MAX_DIM = 6


def checked(x: int) -> int:
    """Return ``x`` unchanged, or raise if it leaves the signed 128-bit range."""
    if not -_LIMIT <= x < _LIMIT:
        raise IntegerOverflow(f"integer {x} exceeds signed {INT_BITS}-bit range")
    return x


def _dot(row, col) -> int:
    return checked(sum(a * b for a, b in zip(row, col)))


@dataclass(frozen=True)
class IntMatrix:
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in r) for r in self.entries)
        n = len(rows)
        if not 1 <= n <= MAX_DIM or any(len(r) != n for r in rows):
            raise ValueError(f"IntMatrix must be square of size 1..{MAX_DIM}")
        for r in rows:
            for x in r:
                checked(x)
        object.__setattr__(self, "entries", rows)

    @property
    def n(self) -> int:
        return len(self.entries)

    @classmethod
    def identity(cls, n: int) -> IntMatrix:
        return cls(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @classmethod
    def diag(cls, *values: int) -> IntMatrix:
        n = len(values)
        return cls(tuple(tuple(values[i] if i == j else 0 for j in range(n)) for i in range(n)))

    @classmethod
    def scalar(cls, n: int, c: int) -> IntMatrix:
        return cls.diag(*([c] * n))

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def rows(self) -> list[list[int]]:
        return [list(r) for r in self.entries]

    def columns(self) -> list[tuple[int, ...]]:
        return list(zip(*self.entries))

    def __matmul__(self, other):
        if isinstance(other, IntMatrix):
            cols = other.columns()
            return IntMatrix(tuple(tuple(_dot(r, c) for c in cols) for r in self.entries))
        # integer column vector
        v = tuple(other)
        if len(v) != self.n:
            raise ValueError("dimension mismatch")
        return tuple(_dot(r, v) for r in self.entries)

    def __add__(self, other: IntMatrix) -> IntMatrix:
        return IntMatrix(tuple(tuple(checked(a + b) for a, b in zip(r, s))
                               for r, s in zip(self.entries, other.entries)))

    def __sub__(self, other: IntMatrix) -> IntMatrix:
        return IntMatrix(tuple(tuple(checked(a - b) for a, b in zip(r, s))
                               for r, s in zip(self.entries, other.entries)))

    def __neg__(self) -> IntMatrix:
        return IntMatrix(tuple(tuple(-a for a in r) for r in self.entries))

    def __pow__(self, k: int) -> IntMatrix:
        if k < 0:
            return self.inverse() ** (-k)
        result, base = IntMatrix.identity(self.n), self
        while k:
            if k & 1:
                result = result @ base
            k >>= 1
            if k:
                base = base @ base
        return result

    def transpose(self) -> IntMatrix:
        return IntMatrix(tuple(self.columns()))

    def is_identity(self) -> bool:
        return all(x == (i == j) for i, r in enumerate(self.entries) for j, x in enumerate(r))

    def trace(self) -> int:
        return sum(self.entries[i][i] for i in range(self.n))

    def det(self) -> int:
        return bareiss_det(self.rows())

    def inverse(self) -> IntMatrix:
        """Inverse over Z; only unimodular matrices qualify."""
        d = self.det()
        if d not in (1, -1):
            raise NotInvertible(f"det = {d}, matrix is not invertible over Z")
        adj = adjugate(self.rows())
        return IntMatrix(tuple(tuple(d * a for a in r) for r in adj))

    def key(self) -> bytes:
        """Canonical row-major byte encoding, used for deduplication."""
        return b"".join(x.to_bytes(16, "big", signed=True) for r in self.entries for x in r)

    def mod(self, m: int) -> ModMatrix:
        return ModMatrix(m, tuple(tuple(x % m for x in r) for r in self.entries))

    def to_json(self) -> dict:
        return {"n": self.n, "entries": [list(r) for r in self.entries]}

    @classmethod
    def from_json(cls, obj) -> IntMatrix:
        if isinstance(obj, dict):
            m = cls(tuple(tuple(r) for r in obj["entries"]))
            if "n" in obj and obj["n"] != m.n:
                raise ValueError(f"declared n={obj['n']} does not match entries")
            return m
        return cls(tuple(tuple(r) for r in obj))

    def __repr__(self):
        return f"IntMatrix({[list(r) for r in self.entries]})"


@dataclass(frozen=True)
class ModMatrix:
    m: int
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.m < 2:
            raise ValueError("modulus must be >= 2")
        object.__setattr__(self, "entries",
                           tuple(tuple(int(x) % self.m for x in r) for r in self.entries))

    @property
    def n(self) -> int:
        return len(self.entries)

    def __matmul__(self, other: ModMatrix) -> ModMatrix:
        if other.m != self.m:
            raise ValueError("moduli differ")
        cols = list(zip(*other.entries))
        return ModMatrix(self.m, tuple(tuple(sum(a * b for a, b in zip(r, c)) % self.m for c in cols)
                                       for r in self.entries))

    def apply(self, v) -> tuple[int, ...]:
        return tuple(sum(a * b for a, b in zip(r, v)) % self.m for r in self.entries)

    def is_identity(self) -> bool:
        return all(x == (i == j) for i, r in enumerate(self.entries) for j, x in enumerate(r))


def bareiss_det(rows: list[list[int]]) -> int:
    a = [list(r) for r in rows]
    n = len(a)
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = checked((a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev)
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def adjugate(rows: list[list[int]]) -> list[list[int]]:
    n = len(rows)
    if n == 1:
        return [[1]]
    adj = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [r[:j] + r[j + 1:] for k, r in enumerate(rows) if k != i]
            adj[j][i] = (-1) ** (i + j) * bareiss_det(minor)
    return adj


def charpoly(A: IntMatrix) -> list[int]:
    """Characteristic polynomial det(xI - A), coefficients low degree first (monic).

    Faddeev-LeVerrier; every division is exact over Z.
    """
    n = A.n
    coeffs = [0] * n + [1]
    M = IntMatrix.identity(n)
    c = 1
    for k in range(1, n + 1):
        if k > 1:
            M = A @ M + IntMatrix.scalar(n, c)
        else:
            M = IntMatrix.identity(n)
        AM = A @ M
        c = -AM.trace() // k
        coeffs[n - k] = c
    return coeffs


# --- integer polynomials (low degree first) -------------------------------

def _trim(p):
    p = list(p)
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return p


def poly_divmod_monic(a, b):
    """Divide integer polynomial a by monic b."""
    a = list(a)
    if len(a) < len(b):
        return [0], _trim(a)
    q = [0] * (len(a) - len(b) + 1)
    for i in range(len(a) - len(b), -1, -1):
        c = a[i + len(b) - 1]
        q[i] = c
        if c:
            for j, bj in enumerate(b):
                a[i + j] -= c * bj
    return _trim(q), _trim(a[:len(b) - 1] or [0])


@lru_cache(maxsize=None)
def cyclotomic(d: int) -> tuple[int, ...]:
    """Integer coefficients of the d-th cyclotomic polynomial, low degree first."""
    num = [-1] + [0] * (d - 1) + [1]
    for e in range(1, d):
        if d % e == 0:
            num, r = poly_divmod_monic(num, cyclotomic(e))
            assert r == [0]
    return tuple(num)


def euler_phi(n: int) -> int:
    result, m, p = n, n, 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


def cyclotomic_orders(n: int) -> list[int]:
    """All d with phi(d) <= n: the possible orders of roots of unity in degree <= n."""
    # phi(d) >= sqrt(d/2), so d <= 2 n^2 is a safe search range
    return [d for d in range(1, 2 * n * n + 3) if euler_phi(d) <= n]


def finite_order_exponent(n: int) -> int:
    """lcm of all orders an element of GL_n(Z) of finite order can have.

    An element of finite order k has minimal polynomial a product of distinct
    cyclotomic factors with total degree <= n, so k is the lcm of some d's
    with phi-sum at most n; the lcm over all d with phi(d) <= n is a multiple.
    """
    return math.lcm(*cyclotomic_orders(n))


def matrix_order(A: IntMatrix) -> int | None:
    """Multiplicative order of A in GL_n(Z), or None for infinite order.

    Strips cyclotomic factors from the characteristic polynomial; A has finite
    order iff nothing else remains and A^N = I for N the lcm of the stripped
    indices (the power check catches non-semisimple A such as unipotents).
    """
    if A.det() not in (1, -1):
        raise NotInvertible("matrix_order needs det(A) = +-1")
    rest = charpoly(A)
    found = []
    for d in cyclotomic_orders(A.n):
        phi = cyclotomic(d)
        while len(rest) >= len(phi):
            q, r = poly_divmod_monic(rest, phi)
            if r != [0]:
                break
            rest = q
            found.append(d)
    if rest != [1]:
        return None
    N = math.lcm(*found)
    if not (A ** N).is_identity():
        return None
    for k in sorted(k for k in range(1, N + 1) if N % k == 0):
        if (A ** k).is_identity():
            return k
    raise AssertionError("unreachable: A^N = I")
