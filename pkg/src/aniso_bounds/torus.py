"""Algebraic tori through their cocharacter lattices with a finite Galois image acting."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import NotCyclic
from .exactalg import IntMatrix, fixed_module, integer_kernel, invariant_sublattice, smith_rect
from .glnz import DEFAULT_CAP, MatrixGroup, closure

MAX_RANK = 4
MAX_DMAX = 60
DEFAULT_DMAX = 60


@dataclass(frozen=True)
class GaloisLattice:
    rank: int
    gamma: MatrixGroup

    @classmethod
    def from_generators(cls, gens: list[IntMatrix], rank: int | None = None,
                        cap: int = DEFAULT_CAP) -> GaloisLattice:
        if rank is None:
            if not gens:
                raise ValueError("rank required for an empty generating set")
            rank = gens[0].n
        if not 1 <= rank <= MAX_RANK:
            raise ValueError(f"lattice rank must be in 1..{MAX_RANK}")
        return cls(rank, closure(gens, cap=cap, n=rank))

    @classmethod
    def from_json(cls, obj) -> GaloisLattice:
        gens = [IntMatrix.from_json(g) for g in obj.get("generators", [])]
        return cls.from_generators(gens, obj.get("rank"))

    @property
    def generators(self) -> list[IntMatrix]:
        # the full element list: fixed points of generators equal those of the group
        return list(self.gamma.generators) or [IntMatrix.identity(self.rank)]


def is_anisotropic(L: GaloisLattice) -> bool:
    """No non-zero invariant cocharacter, i.e. no split one-dimensional subtorus."""
    return not invariant_sublattice(L.generators, L.rank)


@dataclass(frozen=True)
class TorsionProfile:
    rank: int
    d_max: int
    exact_counts: dict[int, int]   # d -> invariant classes of exact order d
    group_sizes: dict[int, int]    # d -> size of the invariant part of Lambda/d Lambda
    max_exact_order: int
    char: int = 0

    @property
    def kummer_valid(self) -> dict[int, bool]:
        """Where the identification with d-torsion points is legitimate (char does not divide d)."""
        return {d: self.char == 0 or d % self.char != 0 for d in self.exact_counts}

    def to_json(self) -> dict:
        return {"rank": self.rank, "d_max": self.d_max, "char": self.char,
                "max_exact_order": self.max_exact_order,
                "exact_counts": {str(d): c for d, c in self.exact_counts.items()},
                "group_sizes": {str(d): c for d, c in self.group_sizes.items()},
                "kummer_valid": {str(d): v for d, v in self.kummer_valid.items()}}


def torsion_profile(L: GaloisLattice, d_max: int = DEFAULT_DMAX, char: int = 0) -> TorsionProfile:
    """Invariant classes in Lambda/d Lambda for 2 <= d <= d_max, counted by exact order."""
    if not 2 <= d_max <= MAX_DMAX:
        raise ValueError(f"d_max must be in 2..{MAX_DMAX}")
    exact, sizes = {}, {}
    for d in range(2, d_max + 1):
        fm = fixed_module(L.generators, d, L.rank)
        exact[d] = fm.count_exact(d)
        sizes[d] = fm.size
    max_order = max((d for d, c in exact.items() if c), default=1)
    return TorsionProfile(L.rank, d_max, exact, sizes, max_order, char)


def trace_vector(L: GaloisLattice, v) -> tuple[int, ...]:
    """Sum of the Galois translates of v; invariant by construction."""
    v = tuple(int(x) for x in v)
    if len(v) != L.rank:
        raise ValueError("vector has wrong length")
    total = [0] * L.rank
    for g in L.gamma.elements:
        for i, x in enumerate(g @ v):
            total[i] += x
    return tuple(total)


@dataclass(frozen=True)
class H1Result:
    order_gamma: int
    invariants: tuple[int, ...]  # H^1 = direct sum of Z/a for a in invariants (all > 1)

    @property
    def order(self) -> int:
        out = 1
        for a in self.invariants:
            out *= a
        return out

    @property
    def annihilated(self) -> bool:
        """|Gamma| kills H^1."""
        return all(self.order_gamma % a == 0 for a in self.invariants)

    def to_json(self) -> dict:
        return {"gamma_order": self.order_gamma, "invariants": list(self.invariants),
                "order": self.order, "annihilated_by_gamma_order": self.annihilated}


def cyclic_generator(G: MatrixGroup) -> IntMatrix:
    from .exactalg import matrix_order
    for g in G.elements:
        if matrix_order(g) == G.order:
            return g
    raise NotCyclic(f"group of order {G.order} is not cyclic")


def h1_cyclic(L: GaloisLattice) -> H1Result:
    """H^1(Gamma, Lambda) = ker(N) / im(sigma - 1) for cyclic Gamma = <sigma>."""
    sigma = cyclic_generator(L.gamma)
    n, r = L.rank, L.gamma.order
    ident = IntMatrix.identity(n)
    norm = ident
    power = ident
    for _ in range(r - 1):
        power = power @ sigma
        norm = norm + power
    K = integer_kernel(norm.rows(), n)  # rows are a saturated basis of ker N
    k = len(K)
    if k == 0:
        return H1Result(r, ())
    # left inverse of the saturated basis: P K^T = I_k
    Kt = [[K[j][i] for j in range(k)] for i in range(n)]
    S, U, V = smith_rect(Kt)
    if any(S[i][i] != 1 for i in range(k)):
        raise AssertionError("kernel basis not saturated")
    P = [[sum(V[i][t] * U[t][j] for t in range(k)) for j in range(n)] for i in range(k)]
    D = sigma - ident
    cols = []
    for j in range(n):
        col = [D[i, j] for i in range(n)]
        c = [sum(P[a][i] * col[i] for i in range(n)) for a in range(k)]
        if [sum(Kt[i][a] * c[a] for a in range(k)) for i in range(n)] != col:
            raise AssertionError("image of sigma - 1 escapes ker N")
        cols.append(c)
    C = [[cols[j][a] for j in range(n)] for a in range(k)]
    S2, _, _ = smith_rect(C)
    diag = [S2[i][i] if i < len(S2) and i < n else 0 for i in range(k)]
    if any(x == 0 for x in diag):
        raise AssertionError("H^1 of a finite group is finite")
    return H1Result(r, tuple(x for x in diag if x > 1))
