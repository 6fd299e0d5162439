"""Residues of t*df/f on the projective line over F_q, up to the Artin-Schreier image.

A function f is only ever handled through its divisor; at a point P the
residue of t*df/f is t*ord_P(f). Points are field elements or ``INF``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import CharTwo, DivisorNotPrincipal, Obstruction
from .exactalg import FiniteField, field_from_json

INF = "inf"


@dataclass(frozen=True)
class ASCokernel:
    field: FiniteField
    image: frozenset
    reps: tuple

    @property
    def order(self) -> int:
        return len(self.reps)

    def rep(self, a: int) -> int:
        return self.field.coset_rep(a, self.image)

    def is_trivial_class(self, a: int) -> bool:
        return a in self.image

    def to_json(self) -> dict:
        F = self.field
        return {"field": F.to_json(), "image": [F.format(a) for a in sorted(self.image)],
                "reps": [F.format(a) for a in self.reps], "order": self.order}


def as_cokernel(F: FiniteField) -> ASCokernel:
    """Image of c -> c - c^p and the smallest element of each coset."""
    image = F.artin_schreier_image()
    reps = sorted({F.coset_rep(a, image) for a in F.elements()})
    return ASCokernel(F, image, tuple(reps))


def parse_point(F: FiniteField, text):
    if isinstance(text, str) and text.strip().lower() in (INF, "infinity", "∞"):
        return INF
    return F.parse(text)


def format_point(F: FiniteField, P) -> str:
    return INF if P == INF else F.format(P)


@dataclass(frozen=True)
class FactoredFunction:
    """A rational function on P^1 known by its divisor: ((point, ord), ...)."""

    field: FiniteField
    divisor: tuple

    @classmethod
    def from_pairs(cls, F: FiniteField, pairs) -> FactoredFunction:
        pts = [(parse_point(F, P), int(m)) for P, m in pairs]
        seen = [P for P, _ in pts]
        if len(set(seen)) != len(seen):
            raise DivisorNotPrincipal("repeated point in divisor")
        return cls(F, tuple(pts))

    @classmethod
    def from_json(cls, obj) -> FactoredFunction:
        F = field_from_json(obj["field"])
        return cls.from_pairs(F, obj["divisor"])

    @property
    def degree(self) -> int:
        return sum(m for _, m in self.divisor)

    def to_json(self) -> dict:
        F = self.field
        return {"field": F.to_json(),
                "divisor": [[format_point(F, P), m] for P, m in self.divisor]}


@dataclass(frozen=True)
class ResidueData:
    t: int
    raw: dict        # point -> t * ord_P(f) in F_q
    residues: dict   # point -> cokernel representative
    raw_sum: int

    def to_json(self, F: FiniteField) -> dict:
        return {"t": F.format(self.t),
                "raw": {format_point(F, P): F.format(v) for P, v in self.raw.items()},
                "residues": {format_point(F, P): F.format(v) for P, v in self.residues.items()},
                "raw_sum": F.format(self.raw_sum)}


def residues(f: FactoredFunction, t, coker: ASCokernel | None = None) -> ResidueData:
    F = f.field
    if f.degree != 0:
        raise DivisorNotPrincipal(f"divisor has degree {f.degree}, not 0")
    t = F.parse(t) if isinstance(t, str) else t
    coker = coker or as_cokernel(F)
    raw, res, total = {}, {}, 0
    for P, m in f.divisor:
        v = F.scale(m, t)
        raw[P] = v
        res[P] = coker.rep(v)
        total = F.add(total, v)
    return ResidueData(t, raw, res, total)


@dataclass(frozen=True)
class AdmissibleForm:
    f: FactoredFunction
    t: int
    data: ResidueData

    def to_json(self) -> dict:
        F = self.f.field
        return {"multiplicities": [m for _, m in self.f.divisor], **self.f.to_json(),
                **self.data.to_json(F)}


def admissible_form(points, F: FiniteField) -> AdmissibleForm:
    """A divisor supported on ``points`` with no order divisible by p, and t outside im(theta).

    Orders are +1 except at the last point, which balances the sum. For odd p
    the balancing order would vanish mod p when |points| = 1 (mod p); then the
    first point gets order 2 instead.
    """
    pts = [parse_point(F, P) for P in points]
    if len(pts) < 2:
        raise ValueError("need at least two points")
    if len(set(pts)) != len(pts):
        raise ValueError("points must be distinct")
    p, k = F.p, len(pts)
    if p == 2 and k % 2:
        raise Obstruction(f"{k} odd orders cannot sum to 0")
    mults = [1] * (k - 1) + [-(k - 1)]
    if (k - 1) % p == 0:
        mults[0] = 2
        mults[-1] = -k
    assert sum(mults) == 0 and all(m % p for m in mults)
    coker = as_cokernel(F)
    t = min(a for a in F.elements() if a not in coker.image)
    f = FactoredFunction(F, tuple(zip(pts, mults)))
    data = residues(f, t, coker)
    if any(coker.is_trivial_class(v) for v in data.raw.values()):
        raise AssertionError("a residue landed in the Artin-Schreier image")
    return AdmissibleForm(f, t, data)


def delta_from_json(obj):
    F = field_from_json(obj["field"])
    if not isinstance(F, FiniteField):
        raise ValueError("residue calculus needs a finite field")
    return F, list(obj["points"])


def conic_char2_class(a, F: FiniteField) -> str:
    """'no_point' if h^2 + h + a has no root in F (the quadratic extension is a field), else 'splits'."""
    if F.p != 2:
        raise CharTwo("the conic model is for characteristic 2")
    a = F.parse(a) if isinstance(a, str) else a
    for h in F.elements():
        if F.add(F.add(F.mul(h, h), h), a) == 0:
            return "splits"
    return "no_point"
