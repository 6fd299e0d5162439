"""Finite subgroups of GL_n(Z): closure, reduction mod m, the Minkowski constants."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import CapExceeded, InfiniteOrderGenerator
from .exactalg import IntMatrix, finite_order_exponent, invariant_sublattice, matrix_order

DEFAULT_CAP = 10_000

#: Maximal order of a finite subgroup of GL_n(Z), known values.
UPSILON = {1: 2, 2: 12, 3: 48}


@dataclass(frozen=True)
class MatrixGroup:
    n: int
    elements: tuple[IntMatrix, ...]
    generators: tuple[IntMatrix, ...] = field(default=())

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, g):
        return g.key() in {h.key() for h in self.elements}

    def to_json(self) -> dict:
        return {"n": self.n, "generators": [g.to_json() for g in self.generators]}

    @classmethod
    def from_json(cls, obj, cap: int = DEFAULT_CAP) -> MatrixGroup:
        gens = [IntMatrix.from_json(g) for g in obj.get("generators", [])]
        n = obj.get("n", obj.get("rank"))
        if n is None:
            if not gens:
                raise ValueError("group JSON needs 'n' or at least one generator")
            n = gens[0].n
        return closure(gens, cap=cap, n=n)


def closure(gens: list[IntMatrix], cap: int = DEFAULT_CAP, n: int | None = None) -> MatrixGroup:
    """Group generated by ``gens``, by breadth-first right multiplication."""
    gens = list(gens)
    if n is None:
        if not gens:
            raise ValueError("dimension required for an empty generating set")
        n = gens[0].n
    for g in gens:
        if g.n != n:
            raise ValueError("generators of mixed dimension")
        if matrix_order(g) is None:
            raise InfiniteOrderGenerator(f"generator {g} has infinite order")
    ident = IntMatrix.identity(n)
    seen = {ident.key(): ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for h in frontier:
            for g in gens:
                x = h @ g
                k = x.key()
                if k not in seen:
                    seen[k] = x
                    nxt.append(x)
                    if len(seen) > cap:
                        raise CapExceeded(f"closure exceeded cap {cap}")
        frontier = nxt
    elements = tuple(sorted(seen.values(), key=lambda m: m.entries))
    return MatrixGroup(n, elements, tuple(gens))


@dataclass(frozen=True)
class MinkowskiResult:
    m: int
    injective: bool
    image_size: int
    witness: IntMatrix | None = None  # non-identity element of the kernel

    def to_json(self) -> dict:
        out = {"m": self.m, "injective": self.injective, "image_size": self.image_size}
        if self.witness is not None:
            out["witness"] = self.witness.to_json()
        return out


def minkowski_injection_check(G: MatrixGroup, m: int) -> MinkowskiResult:
    """Is reduction G -> GL_n(Z/mZ) injective? If not, name a kernel element."""
    if m < 2:
        raise ValueError("modulus must be >= 2")
    images = {}
    for g in G.elements:
        images.setdefault(g.mod(m).entries, []).append(g)
    if len(images) == G.order:
        return MinkowskiResult(m, True, len(images))
    for group in images.values():
        if len(group) > 1:
            a, b = group[0], group[1]
            # a^{-1} b is a non-identity kernel element
            w = a.inverse() @ b
            return MinkowskiResult(m, False, len(images), w)
    raise AssertionError("unreachable")


def gl_mod_order(n: int, q: int = 3) -> int:
    """|GL_n(F_q)|, the reduction-mod-3 upper bound for Upsilon(n) when q = 3."""
    return math.prod(q ** n - q ** i for i in range(n))


# --- Upsilon search -------------------------------------------------------

def _finite_order_candidates(n: int, bound: int) -> np.ndarray:
    """All matrices with entries in [-B, B] of finite multiplicative order, shape (N, n, n)."""
    vals = np.array(list(itertools.product(range(-bound, bound + 1), repeat=n * n)),
                    dtype=np.int64).reshape(-1, n, n)
    dets = np.rint(np.linalg.det(vals.astype(float))).astype(np.int64)
    vals = vals[np.abs(dets) == 1]
    L = finite_order_exponent(n)
    ok = _power_is_identity(vals, L)
    return vals[ok]


def _power_is_identity(mats: np.ndarray, e: int) -> np.ndarray:
    n = mats.shape[-1]
    result = np.broadcast_to(np.eye(n, dtype=np.int64), mats.shape).copy()
    base = mats.copy()
    while e:
        if e & 1:
            result = result @ base
        e >>= 1
        if e:
            base = base @ base
    return (result == np.eye(n, dtype=np.int64)).all(axis=(-2, -1))


def _signed_permutations(n: int) -> np.ndarray:
    mats = []
    for perm in itertools.permutations(range(n)):
        for signs in itertools.product((1, -1), repeat=n):
            m = np.zeros((n, n), dtype=np.int64)
            for r, (c, s) in enumerate(zip(perm, signs)):
                m[r, c] = s
            mats.append(m)
    return np.array(mats)


def _conjugacy_representatives(cands: np.ndarray, index: dict) -> list[int]:
    """Smallest index in each orbit of ``cands`` under signed-permutation conjugation."""
    W = _signed_permutations(cands.shape[-1])
    Winv = np.transpose(W, (0, 2, 1))
    reps, done = [], set()
    for i in range(len(cands)):
        if i in done:
            continue
        reps.append(i)
        for c in W @ cands[i] @ Winv:
            done.add(index[tuple(int(x) for x in c.ravel())])
    return reps


def _fast_closure(gens, n, limit, L):
    """Closure on tuples; None as soon as an element of infinite order appears
    or the size passes ``limit`` (both certify the group is not finite)."""
    ident = tuple(int(i == j) for i in range(n) for j in range(n))

    def mul(a, b):
        return tuple(sum(a[i * n + k] * b[k * n + j] for k in range(n))
                     for i in range(n) for j in range(n))

    def finite(a):
        r, b, e = ident, a, L
        while e:
            if e & 1:
                r = mul(r, b)
            e >>= 1
            if e:
                b = mul(b, b)
        return r == ident

    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for h in frontier:
            for g in gens:
                x = mul(h, g)
                if x not in seen:
                    if not finite(x):
                        return None
                    seen.add(x)
                    nxt.append(x)
                    if len(seen) > limit:
                        return None
        frontier = nxt
    return seen


@dataclass(frozen=True)
class UpsilonSearchResult:
    n: int
    entry_bound: int
    order: int
    generators: tuple[IntMatrix, ...]
    candidates: int
    closures: int

    def to_json(self) -> dict:
        return {"n": self.n, "entry_bound": self.entry_bound, "order": self.order,
                "generators": [g.to_json() for g in self.generators],
                "candidates": self.candidates, "closures": self.closures,
                "gl_mod3_bound": gl_mod_order(self.n)}


def upsilon_search(n: int, entry_bound: int = 1) -> UpsilonSearchResult:
    """Largest finite subgroup of GL_n(Z) generated by at most two matrices with
    entries in [-B, B]. A lower-bound search, not a proof of maximality.

    Signed permutation matrices preserve the entry box under conjugation, and
    conjugate pairs generate groups of equal order, so the first generator
    runs over one representative per conjugacy orbit only. A pair (a, b) is skipped when both lie in a group already found, since
    <a, b> is then a subgroup of it. Closures stop as soon as an element of
    infinite order appears or the size passes |GL_n(F_3)|, which bounds every
    finite subgroup because reduction mod 3 is injective on them.
    """
    if n not in (1, 2, 3):
        raise ValueError("upsilon_search supports n in {1, 2, 3}")
    if entry_bound < 1:
        raise ValueError("entry bound must be >= 1")
    cands = _finite_order_candidates(n, entry_bound)
    L = finite_order_exponent(n)
    limit = gl_mod_order(n)
    N = len(cands)
    tuples = [tuple(int(x) for x in m.ravel()) for m in cands]
    index = {t: i for i, t in enumerate(tuples)}
    member_of = [set() for _ in range(N)]
    best, best_gens, closures = 1, (), 0
    group_id = 0
    for i in _conjugacy_representatives(cands, index):
        prods = cands[i] @ cands
        finite = _power_is_identity(prods, L)
        for j in np.nonzero(finite)[0]:
            j = int(j)
            if member_of[i] & member_of[j]:
                continue
            gens = [tuples[i]] if i == j else [tuples[i], tuples[j]]
            group = _fast_closure(gens, n, limit, L)
            closures += 1
            if group is None:
                continue
            for t in group:
                k = index.get(t)
                if k is not None:
                    member_of[k].add(group_id)
            group_id += 1
            if len(group) > best:
                best = len(group)
                best_gens = tuple(IntMatrix(tuple(tuple(g[r * n:(r + 1) * n]) for r in range(n)))
                                  for g in gens)
    return UpsilonSearchResult(n, entry_bound, best, best_gens, N, closures)


# --- rank-2 fixed vector lemma --------------------------------------------

@dataclass(frozen=True)
class FixedVectorResult:
    holds: bool  # hypothesis "every element fixes a non-zero vector" holds
    vector: tuple[int, ...] | None = None
    witness: IntMatrix | None = None  # element fixing nothing, when the hypothesis fails

    def to_json(self) -> dict:
        if self.holds:
            return {"hypothesis": "holds", "fixed_vector": list(self.vector)}
        return {"hypothesis": "fails", "witness": self.witness.to_json()}


def fixed_vector_group_check(G: MatrixGroup) -> FixedVectorResult:
    if G.n != 2:
        raise ValueError("the fixed-vector check is for rank-2 groups")
    for g in G.elements:
        if not invariant_sublattice([g]):
            return FixedVectorResult(False, witness=g)
    basis = invariant_sublattice(list(G.elements))
    if not basis:
        raise AssertionError(f"no common fixed vector although every element fixes one: {G}")
    return FixedVectorResult(True, vector=basis[0])
