"""Smith normal form over Z and the kernel computations built on it."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from .intmat import IntMatrix, checked


@dataclass(frozen=True)
class SnfDecomposition:
    S: IntMatrix
    U: IntMatrix
    V: IntMatrix

    @property
    def diagonal(self) -> list[int]:
        return [self.S[i, i] for i in range(self.S.n)]


def _identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def smith_rect(A: list[list[int]]):
    """Smith form of a rectangular integer matrix.

    Returns (S, U, V) as lists of lists with U*A*V = S, U (rows x rows) and
    V (cols x cols) unimodular, S diagonal with d_1 | d_2 | ... and d_i >= 0.
    Pivot: smallest nonzero |entry| of the active block, ties in row-major order.
    """
    m = len(A)
    n = len(A[0]) if m else 0
    S = [list(r) for r in A]
    U = _identity(m)
    V = _identity(n)

    def swap_rows(i, j):
        S[i], S[j] = S[j], S[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for r in S:
            r[i], r[j] = r[j], r[i]
        for r in V:
            r[i], r[j] = r[j], r[i]

    def add_row(dst, src, c):  # row_dst += c * row_src
        S[dst] = [checked(a + c * b) for a, b in zip(S[dst], S[src])]
        U[dst] = [checked(a + c * b) for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, c):  # col_dst += c * col_src
        for r in S:
            r[dst] = checked(r[dst] + c * r[src])
        for r in V:
            r[dst] = checked(r[dst] + c * r[src])

    for t in range(min(m, n)):
        while True:
            pivot = None
            for i in range(t, m):
                for j in range(t, n):
                    x = S[i][j]
                    if x and (pivot is None or abs(x) < abs(S[pivot[0]][pivot[1]])):
                        pivot = (i, j)
            if pivot is None:
                break
            swap_rows(t, pivot[0])
            swap_cols(t, pivot[1])
            p = S[t][t]
            dirty = False
            for i in range(t + 1, m):
                if S[i][t]:
                    add_row(i, t, -(S[i][t] // p))
                    dirty = dirty or S[i][t] != 0
            for j in range(t + 1, n):
                if S[t][j]:
                    add_col(j, t, -(S[t][j] // p))
                    dirty = dirty or S[t][j] != 0
            if dirty:
                continue
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                        if S[i][j] % p), None)
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if t < m and t < n and S[t][t] < 0:
            S[t] = [-x for x in S[t]]
            U[t] = [-x for x in U[t]]
    return S, U, V


def snf(A: IntMatrix) -> SnfDecomposition:
    S, U, V = smith_rect(A.rows())
    return SnfDecomposition(IntMatrix(tuple(map(tuple, S))),
                            IntMatrix(tuple(map(tuple, U))),
                            IntMatrix(tuple(map(tuple, V))))


def hermite_rows(vectors: list[list[int]]) -> list[tuple[int, ...]]:
    """Row-style Hermite normal form of the lattice spanned by ``vectors``.

    Canonical: positive pivots, entries above each pivot reduced into [0, pivot).
    """
    rows = [list(v) for v in vectors if any(v)]
    if not rows:
        return []
    n = len(rows[0])
    out = []
    col = 0
    while rows and col < n:
        nz = [r for r in rows if r[col]]
        if not nz:
            col += 1
            continue
        while len(nz) > 1:
            nz.sort(key=lambda r: abs(r[col]))
            p = nz[0]
            for r in nz[1:]:
                q = r[col] // p[col]
                for k in range(n):
                    r[k] = checked(r[k] - q * p[k])
            nz = [r for r in nz if r[col]]
        p = nz[0]
        if p[col] < 0:
            p[:] = [-x for x in p]
        rows = [r for r in rows if r is not p and any(r)]
        out.append(p)
        col += 1
    for i, r in enumerate(out):
        piv = next(k for k, x in enumerate(r) if x)
        for prev in out[:i]:
            q = prev[piv] // r[piv]
            if q:
                for k in range(n):
                    prev[k] = checked(prev[k] - q * r[k])
    return [tuple(r) for r in out]


def integer_kernel(M: list[list[int]], n: int) -> list[tuple[int, ...]]:
    """Z-basis (in Hermite form) of {v in Z^n : M v = 0}; saturated by construction."""
    if not M:
        return [tuple(int(i == j) for j in range(n)) for i in range(n)]
    S, _U, V = smith_rect(M)
    rank = sum(1 for i in range(min(len(S), n)) if S[i][i])
    basis = [[V[i][j] for i in range(n)] for j in range(rank, n)]
    return hermite_rows(basis)


def stacked_fixed_matrix(gens: list[IntMatrix], n: int) -> list[list[int]]:
    rows = []
    for g in gens:
        rows.extend((g - IntMatrix.identity(n)).rows())
    return rows


def invariant_sublattice(gens: list[IntMatrix], n: int | None = None) -> list[tuple[int, ...]]:
    """Z-basis of the vectors fixed by every generator."""
    if n is None:
        if not gens:
            raise ValueError("dimension required when no generators are given")
        n = gens[0].n
    return integer_kernel(stacked_fixed_matrix(gens, n), n)


@dataclass(frozen=True)
class FixedModule:
    """The submodule of (Z/dZ)^n fixed by a set of integer matrices.

    It is isomorphic to the direct sum of Z/a_i for the ``factors`` a_i (each
    dividing d); ``generators`` are matching vectors mod d.
    """
    d: int
    n: int
    factors: tuple[int, ...]
    generators: tuple[tuple[int, ...], ...]

    @property
    def size(self) -> int:
        return math.prod(self.factors)

    def count_dividing(self, e: int) -> int:
        """Number of elements whose order divides e."""
        return math.prod(math.gcd(a, e) for a in self.factors)

    def count_exact(self, e: int) -> int:
        """Number of elements of exact additive order e."""
        return sum(_mobius(e // f) * self.count_dividing(f) for f in _divisors(e))

    def elements(self):
        d, n = self.d, self.n
        for coeffs in itertools.product(*(range(a) for a in self.factors)):
            v = [0] * n
            for c, g in zip(coeffs, self.generators):
                for k in range(n):
                    v[k] += c * g[k]
            yield tuple(x % d for x in v)


def _divisors(n):
    return [k for k in range(1, n + 1) if n % k == 0]


def _mobius(n):
    result, p = 1, 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            result = -result
        p += 1
    return -result if n > 1 else result


def fixed_module(gens: list[IntMatrix], d: int, n: int | None = None) -> FixedModule:
    """Structure of {v in (Z/dZ)^n : g v = v for all g} via Smith form of the stacked (g - I)."""
    if d < 2:
        raise ValueError("modulus d must be >= 2")
    if n is None:
        n = gens[0].n
    M = stacked_fixed_matrix(gens, n)
    if M:
        S, _U, V = smith_rect(M)
        diag = [S[i][i] if i < len(S) else 0 for i in range(n)]
    else:
        V = _identity(n)
        diag = [0] * n
    factors, gens_out = [], []
    for j in range(n):
        g = math.gcd(diag[j], d)  # gcd(0, d) = d: free coordinate
        if g == 1:
            continue
        step = d // g
        factors.append(g)
        gens_out.append(tuple(step * V[i][j] % d for i in range(n)))
    return FixedModule(d, n, tuple(factors), tuple(gens_out))


def additive_order(v, d: int) -> int:
    """Least m > 0 with m v = 0 in (Z/dZ)^n, by trial multiplication."""
    for m in range(1, d + 1):
        if all(m * x % d == 0 for x in v):
            return m
    raise AssertionError("unreachable")


def kernel_mod(gens: list[IntMatrix], d: int, n: int | None = None) -> list[tuple[tuple[int, ...], int]]:
    """All invariant classes in (Z/dZ)^n, each paired with its exact additive order, sorted."""
    fm = fixed_module(gens, d, n)
    return sorted((v, additive_order(v, d)) for v in set(fm.elements()))
