"""Finite matrix groups over F_q and audits of order-versus-exponent inequalities.

Elements are flat row-major tuples of field encodings. In projective mode an
element stands for its class in PGL_n, represented by the scalar multiple whose
first non-zero entry is 1.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from ..errors import GroupTooLarge
from ..exactalg import GF, FiniteField, field_from_json

MAX_ORDER = 100_000


def _mat_mul(F: FiniteField, n: int, a, b):
    out = []
    for i in range(n):
        for j in range(n):
            acc = 0
            for t in range(n):
                x, y = a[i * n + t], b[t * n + j]
                if x and y:
                    acc = F.add(acc, F.mul(x, y))
            out.append(acc)
    return tuple(out)


def _det(F: FiniteField, n: int, a):
    """Determinant by elimination over F."""
    rows = [list(a[i * n:(i + 1) * n]) for i in range(n)]
    det = 1
    for c in range(n):
        piv = next((r for r in range(c, n) if rows[r][c]), None)
        if piv is None:
            return 0
        if piv != c:
            rows[c], rows[piv] = rows[piv], rows[c]
            det = F.neg(det)
        det = F.mul(det, rows[c][c])
        inv = F.inv(rows[c][c])
        for r in range(c + 1, n):
            if rows[r][c]:
                f = F.mul(rows[r][c], inv)
                rows[r] = [F.sub(x, F.mul(f, y)) for x, y in zip(rows[r], rows[c])]
    return det


def normalize_projective(F: FiniteField, a):
    lead = next(x for x in a if x)
    inv = F.inv(lead)
    return tuple(F.mul(inv, x) for x in a)


class FiniteMatrixGroup:
    """A finite subgroup of GL_n(F_q), or of PGL_n(F_q) when ``projective``."""

    def __init__(self, field: FiniteField, n: int, elements, projective: bool = False):
        self.field = field
        self.n = n
        self.projective = projective
        self.elements = tuple(sorted(elements))
        if len(self.elements) > MAX_ORDER:
            raise GroupTooLarge(f"group order {len(self.elements)} exceeds {MAX_ORDER}")
        self.index = {g: i for i, g in enumerate(self.elements)}
        self._table = None

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self):
        return len(self.elements)

    def identity(self):
        return tuple(int(i == j) for i in range(self.n) for j in range(self.n))

    def mul(self, a, b):
        c = _mat_mul(self.field, self.n, a, b)
        return normalize_projective(self.field, c) if self.projective else c

    @property
    def table(self) -> list[list[int]]:
        """Cayley table on element indices."""
        if self._table is None:
            idx = self.index
            self._table = [[idx[self.mul(a, b)] for b in self.elements] for a in self.elements]
        return self._table

    def element_orders(self) -> list[int]:
        T = self.table
        e = self.index[self.identity()]
        orders = []
        for i in range(self.order):
            k, x = 1, i
            while x != e:
                x = T[x][i]
                k += 1
            orders.append(k)
        return orders

    @classmethod
    def generated(cls, field: FiniteField, n: int, gens, projective: bool = False,
                  limit: int = MAX_ORDER) -> FiniteMatrixGroup:
        gens = [tuple(field.parse(x) if isinstance(x, str) else int(x) for x in g) for g in gens]
        for g in gens:
            if len(g) != n * n:
                raise ValueError("generator has wrong size")
            if _det(field, n, g) == 0:
                raise ValueError("generator is singular")
        if projective:
            gens = [normalize_projective(field, g) for g in gens]
        ident = tuple(int(i == j) for i in range(n) for j in range(n))
        seen = {ident}
        frontier = [ident]
        while frontier:
            nxt = []
            for h in frontier:
                for g in gens:
                    x = _mat_mul(field, n, h, g)
                    if projective:
                        x = normalize_projective(field, x)
                    if x not in seen:
                        seen.add(x)
                        nxt.append(x)
                        if len(seen) > limit:
                            raise GroupTooLarge(f"closure exceeded {limit} elements")
            frontier = nxt
        return cls(field, n, seen, projective)

    @classmethod
    def from_json(cls, obj) -> FiniteMatrixGroup:
        """{"field": {"p":, "k":}, "n": 2, "generators": [[[..],[..]], ...]} or "group": "GL"/"PGL"."""
        F = field_from_json(obj["field"])
        if not isinstance(F, FiniteField):
            raise ValueError("audits need a finite field")
        n = int(obj.get("n", 2))
        projective = bool(obj.get("projective", False))
        kind = obj.get("group")
        if kind == "GL":
            return general_linear(F, n)
        if kind == "PGL":
            return projective_linear(F, n)
        if kind is not None:
            raise ValueError(f"unknown group name {kind!r}")
        gens = [[x for row in g for x in row] for g in obj.get("generators", [])]
        return cls.generated(F, n, gens, projective)


def general_linear(F: FiniteField, n: int) -> FiniteMatrixGroup:
    if F.q ** (n * n) > 10 ** 7:
        raise GroupTooLarge("GL_n(F_q) enumeration too large")
    elems = [a for a in itertools.product(range(F.q), repeat=n * n) if _det(F, n, a)]
    return FiniteMatrixGroup(F, n, elems)


def projective_linear(F: FiniteField, n: int) -> FiniteMatrixGroup:
    G = general_linear(F, n)
    elems = {normalize_projective(F, a) for a in G.elements}
    return FiniteMatrixGroup(F, n, elems, projective=True)


# --- subgroup sweep -------------------------------------------------------

def _closure_indices(table, gens, e) -> frozenset[int]:
    seen = {e}
    frontier = [e]
    while frontier:
        nxt = []
        for h in frontier:
            row = table[h]
            for g in gens:
                x = row[g]
                if x not in seen:
                    seen.add(x)
                    nxt.append(x)
        frontier = nxt
    return frozenset(seen)


def subgroup_sweep(G: FiniteMatrixGroup, cap: int | None = None) -> list[frozenset[int]]:
    """Cyclic subgroups plus subgroups generated by two cyclic ones, deduplicated.

    A sweep, not an enumeration of the subgroup lattice. Result ordered by
    (size, sorted indices); ``cap`` truncates after that ordering.
    """
    T = G.table
    e = G.index[G.identity()]
    cyclic = {}
    for i in range(G.order):
        c = _closure_indices(T, [i], e)
        cyclic.setdefault(c, i)
    gens = sorted(cyclic.items(), key=lambda kv: (len(kv[0]), sorted(kv[0])))
    found = set(cyclic)
    for (c1, g1), (c2, g2) in itertools.combinations(gens, 2):
        if c2 <= c1 or c1 <= c2:
            continue
        found.add(_closure_indices(T, [g1, g2], e))
    out = sorted(found, key=lambda s: (len(s), sorted(s)))
    return out[:cap] if cap else out


# --- the audit ------------------------------------------------------------

def coprime_part(m: int, p: int) -> int:
    while p > 1 and m % p == 0:
        m //= p
    return m


@dataclass(frozen=True)
class AuditReport:
    mode: str
    p: int
    n: int
    group_order: int
    d: int                   # lcm of the orders of the elements of order coprime to p
    order_prime: int         # |G|'
    n_prime: int
    bound: int
    applicable: bool         # hypotheses of the inequality are met
    holds: bool              # the inequality itself
    note: str = ""

    @property
    def slack(self) -> int:
        projective = self.mode == "projective" and self.applicable
        compared = self.group_order if projective else self.order_prime
        return self.bound - compared

    @property
    def violation(self) -> bool:
        return self.applicable and not self.holds

    def to_json(self) -> dict:
        out = {"mode": self.mode, "char": self.p, "n": self.n, "group_order": self.group_order,
               "d": self.d, "order_prime": self.order_prime, "n_prime": self.n_prime,
               "bound": self.bound, "slack": self.slack, "applicable": self.applicable,
               "holds": self.holds, "violation": self.violation}
        if self.note:
            out["note"] = self.note
        return out


def _audit_from_orders(orders, p, n, mode) -> AuditReport:
    order = len(orders)
    d = math.lcm(1, *(o for o in orders if o % p))
    gp = coprime_part(order, p)
    np_ = coprime_part(n, p)
    if mode == "general":
        bound = d ** n
        return AuditReport(mode, p, n, order, d, gp, np_, bound, True, gp <= bound)
    if mode != "projective":
        raise ValueError("mode must be 'general' or 'projective'")
    bound = (np_ * d) ** (n - 1)
    has_p_elements = any(o % p == 0 for o in orders)
    if has_p_elements:
        # g^d = 1 with p not dividing d fails for the p-elements; the variant
        # |G|' <= (n'd)^(n-1) is reported but is not a consequence of the lemma.
        return AuditReport(mode, p, n, order, d, gp, np_, bound, False, gp <= bound,
                           "elements of order divisible by the characteristic; "
                           "holds compares |G|' with the bound")
    return AuditReport(mode, p, n, order, d, gp, np_, bound, True, order <= bound)


def exponent_bound_audit(G: FiniteMatrixGroup, mode: str = "general") -> AuditReport:
    """Compare |G|' with d^n (general) or |G| with (n'd)^(n-1) (projective)."""
    if G.order > MAX_ORDER:
        raise GroupTooLarge(f"group order {G.order} exceeds {MAX_ORDER}")
    if mode == "projective" and not G.projective:
        raise ValueError("projective mode needs a group of PGL_n coset representatives")
    return _audit_from_orders(G.element_orders(), G.field.p, G.n, mode)


@dataclass(frozen=True)
class SweepSummary:
    mode: str
    field: tuple
    n: int
    subgroups: int
    applicable: int
    violations: list
    tightest: AuditReport | None

    def to_json(self) -> dict:
        return {"mode": self.mode, "field": {"p": self.field[0], "k": self.field[1]},
                "n": self.n, "subgroups": self.subgroups, "applicable": self.applicable,
                "violations": [v.to_json() for v in self.violations],
                "tightest": self.tightest.to_json() if self.tightest else None}


def audit_sweep(G: FiniteMatrixGroup, mode: str = "general", cap: int | None = None) -> SweepSummary:
    """Run the audit on every subgroup produced by :func:`subgroup_sweep`."""
    orders = G.element_orders()
    subs = subgroup_sweep(G, cap)
    violations, applicable, tightest = [], 0, None
    for s in subs:
        rep = _audit_from_orders([orders[i] for i in s], G.field.p, G.n, mode)
        if rep.applicable:
            applicable += 1
            if tightest is None or (rep.slack, -rep.group_order) < (tightest.slack, -tightest.group_order):
                tightest = rep
        if rep.violation:
            violations.append(rep)
    return SweepSummary(mode, (G.field.p, G.field.k), G.n, len(subs), applicable,
                        violations, tightest)


def gl(p: int, n: int = 2, k: int = 1) -> FiniteMatrixGroup:
    return general_linear(GF(p, k), n)


def pgl(p: int, n: int = 2, k: int = 1) -> FiniteMatrixGroup:
    return projective_linear(GF(p, k), n)
