"""Quadratic forms over Q and small finite fields, stored so characteristic 2 works.

A form is q(x) = sum_{i <= j} c_ij x_i x_j with the upper-triangular c_ij kept
as is; the Gram matrix would lose information in characteristic 2.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass

from .errors import (
    CharTwo,
    Degenerate,
    IsotropicAxis,
    OddDimension,
    SearchSpaceTooLarge,
)
from .exactalg.fields import QQ, FiniteField, field_from_json

MAX_DIM = 6
SEARCH_LIMIT = 10 ** 7


class QuadForm:
    def __init__(self, field, dim: int, coeffs: dict[tuple[int, int], object]):
        if not 1 <= dim <= MAX_DIM:
            raise ValueError(f"dimension must be in 1..{MAX_DIM}")
        self.field = field
        self.dim = dim
        self.coeffs = {}
        for (i, j), c in coeffs.items():
            if not (0 <= i <= j < dim):
                raise ValueError(f"coefficient index ({i}, {j}) outside upper triangle")
            # finite-field ints are element encodings; strings go through the parser
            if isinstance(c, str) or field is QQ:
                c = field.parse(c)
            elif not 0 <= c < field.q:
                raise ValueError(f"{c} is not an element of {field!r}")
            if not field.is_zero(c):
                self.coeffs[(i, j)] = c

    def c(self, i: int, j: int):
        if i > j:
            i, j = j, i
        return self.coeffs.get((i, j), self.field.zero)

    def __call__(self, x):
        F = self.field
        total = F.zero
        for (i, j), c in self.coeffs.items():
            total = F.add(total, F.mul(c, F.mul(x[i], x[j])))
        return total

    def B(self, v, w):
        """Associated bilinear form q(v + w) - q(v) - q(w)."""
        F = self.field
        total = F.zero
        for (i, j), c in self.coeffs.items():
            term = F.add(F.mul(v[i], w[j]), F.mul(v[j], w[i]))
            total = F.add(total, F.mul(c, term))
        return total

    def transform(self, M) -> QuadForm:
        """The form x -> q(M x); M given row-major, its columns are the new basis."""
        n = self.dim
        cols = [tuple(M[i][j] for i in range(n)) for j in range(n)]
        new = {}
        for i in range(n):
            new[(i, i)] = self(cols[i])
            for j in range(i + 1, n):
                new[(i, j)] = self.B(cols[i], cols[j])
        return QuadForm(self.field, n, new)

    def __eq__(self, other):
        return (isinstance(other, QuadForm) and self.field == other.field
                and self.dim == other.dim and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.dim, tuple(sorted(self.coeffs.items()))))

    def __repr__(self):
        F = self.field
        terms = []
        for (i, j), c in sorted(self.coeffs.items()):
            mono = f"x{i + 1}^2" if i == j else f"x{i + 1}x{j + 1}"
            cs = F.format(c)
            terms.append(mono if cs == "1" else f"{cs}*{mono}")
        return f"QuadForm({F!r}, {' + '.join(terms) or '0'})"

    def to_json(self) -> dict:
        F = self.field
        return {"field": F.to_json(), "dim": self.dim,
                "coeffs": {f"{i + 1}{j + 1}": (F.format(c) if F is not QQ else str(c))
                           for (i, j), c in sorted(self.coeffs.items())}}

    @classmethod
    def from_json(cls, obj) -> QuadForm:
        F = field_from_json(obj.get("field"))
        dim = int(obj["dim"])
        coeffs = {}
        for key, val in obj["coeffs"].items():
            key = str(key).replace(",", "").replace(" ", "")
            if len(key) != 2 or not key.isdigit():
                raise ValueError(f"coefficient key {key!r} must be two 1-based digits like '12'")
            i, j = int(key[0]) - 1, int(key[1]) - 1
            coeffs[(min(i, j), max(i, j))] = F.parse(val)
        return cls(F, dim, coeffs)


def bilinear(q: QuadForm) -> list[list]:
    F = q.field
    n = q.dim
    return [[F.scale(2, q.c(i, i)) if i == j else q.c(i, j) for j in range(n)] for i in range(n)]


# --- linear algebra over the form's field ---------------------------------

def rank(F, rows) -> int:
    a = [list(r) for r in rows]
    r = 0
    ncols = len(a[0]) if a else 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(a)) if not F.is_zero(a[i][col])), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = F.inv(a[r][col])
        a[r] = [F.mul(inv, x) for x in a[r]]
        for i in range(len(a)):
            if i != r and not F.is_zero(a[i][col]):
                f = a[i][col]
                a[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(a[i], a[r])]
        r += 1
    return r


def is_nondegenerate(q: QuadForm) -> bool:
    return rank(q.field, bilinear(q)) == q.dim


def _mat_mul(F, A, B):
    n = len(A)
    return [[_sum(F, (F.mul(A[i][k], B[k][j]) for k in range(n))) for j in range(n)] for i in range(n)]


def _sum(F, it):
    total = F.zero
    for x in it:
        total = F.add(total, x)
    return total


def _identity(F, n):
    return [[F.one if i == j else F.zero for j in range(n)] for i in range(n)]


# --- isotropy -------------------------------------------------------------

def represents_zero(q: QuadForm):
    """A non-zero vector v with q(v) = 0 (first in lexicographic order), or None if anisotropic."""
    F = q.field
    if not isinstance(F, FiniteField):
        raise ValueError("exhaustive isotropy search needs a finite field")
    if F.q ** q.dim > SEARCH_LIMIT:
        raise SearchSpaceTooLarge(f"{F.q}^{q.dim} vectors exceed {SEARCH_LIMIT}")
    for v in itertools.product(F.elements(), repeat=q.dim):
        if any(v) and q(v) == 0:
            return v
    return None


# --- reflections ----------------------------------------------------------

def _element(F, x):
    """Strings and rationals are parsed; finite-field ints are already element encodings."""
    if isinstance(x, str) or F is QQ:
        return F.parse(x)
    if not 0 <= x < F.q:
        raise ValueError(f"{x} is not an element of {F!r}")
    return x


def reflection(q: QuadForm, v) -> list[list]:
    """Matrix of u -> u - B(v, u)/q(v) v, the reflection in the hyperplane orthogonal to v."""
    F = q.field
    if F.char == 2:
        raise CharTwo("reflections need characteristic != 2")
    v = tuple(_element(F, x) for x in v)
    qv = q(v)
    if F.is_zero(qv):
        raise IsotropicAxis("q(v) = 0")
    n = q.dim
    M = [[F.zero] * n for _ in range(n)]
    for j in range(n):
        e = tuple(F.one if i == j else F.zero for i in range(n))
        s = F.div(q.B(v, e), qv)
        for i in range(n):
            M[i][j] = F.sub(e[i], F.mul(s, v[i]))
    return M


# --- Arf invariant in characteristic 2 -----------------------------------

@dataclass(frozen=True)
class ArfResult:
    a: int
    basis_change: tuple[tuple[int, ...], ...]  # row-major, columns are the new basis
    arf_class: int
    field: FiniteField

    def to_json(self) -> dict:
        F = self.field
        return {"a": F.format(self.a), "arf_class": F.format(self.arf_class),
                "basis_change": [[F.format(x) for x in r] for r in self.basis_change]}


def canonical_form(F: FiniteField, dim: int, a: int) -> QuadForm:
    """x1^2 + x1 x2 + a x2^2 + x3 x4 + ... + x_{2k-1} x_{2k}."""
    coeffs = {(0, 0): 1, (0, 1): 1, (1, 1): a}
    for i in range(2, dim, 2):
        coeffs[(i, i + 1)] = 1
    return QuadForm(F, dim, coeffs)


def _check_char2(q: QuadForm) -> FiniteField:
    F = q.field
    if not isinstance(F, FiniteField) or F.p != 2:
        raise ValueError("Arf theory here needs a finite field of characteristic 2")
    if q.dim % 2:
        raise OddDimension("non-degenerate forms in characteristic 2 have even dimension")
    if not is_nondegenerate(q):
        raise Degenerate("associated bilinear form is degenerate")
    return F


def _vadd(F, u, v):
    return tuple(F.add(a, b) for a, b in zip(u, v))


def _vscale(F, c, v):
    return tuple(F.mul(c, a) for a in v)


def arf_canonicalize(q: QuadForm) -> ArfResult:
    """Change of basis taking q to x1^2 + x1 x2 + a x2^2 + (hyperbolic planes).

    Hyperbolic planes are split off while the working space has dimension >= 4
    (an isotropic vector always exists there, built from square roots); the
    final plane is normalised to the x1^2 + x1 x2 + a x2^2 shape.
    """
    F = _check_char2(q)
    n = q.dim
    space = [tuple(F.one if i == j else F.zero for i in range(n)) for j in range(n)]
    hyperbolic = []

    def partner(e, basis):
        """f in span(basis) with B(e, f) = 1."""
        for w in basis:
            b = q.B(e, w)
            if b:
                return _vscale(F, F.inv(b), w)
        raise Degenerate("no partner vector")

    def complement(e, f, basis):
        """Project the basis onto the orthogonal complement of the plane <e, f> (B(e, f) = 1)."""
        out = []
        for w in basis:
            w2 = _vadd(F, w, _vscale(F, q.B(w, f), e))
            w2 = _vadd(F, w2, _vscale(F, q.B(w, e), f))
            out.append(w2)
        # keep a basis: drop dependent vectors
        chosen = []
        for w in out:
            if rank(F, chosen + [w]) > len(chosen):
                chosen.append(w)
        return chosen

    while len(space) >= 4:
        e1 = space[0]
        f1 = partner(e1, space)
        rest = complement(e1, f1, space)
        e2 = rest[0]
        if q(e1) == 0:
            iso = e1
        elif q(e2) == 0:
            iso = e2
        else:
            lam = F.sqrt(F.div(q(e1), q(e2)))
            iso = _vadd(F, e1, _vscale(F, lam, e2))
        f = partner(iso, space)
        f = _vadd(F, f, _vscale(F, q(f), iso))  # now q(f) = 0, B(iso, f) = 1
        hyperbolic.append((iso, f))
        space = complement(iso, f, space)

    e, f = space[0], partner(space[0], space)
    if q(e) == 0:
        if q(_vadd(F, e, f)) != 0:
            e = _vadd(F, e, f)
        else:
            e, f = f, e
    s = F.sqrt(q(e))
    e = _vscale(F, F.inv(s), e)
    f = _vscale(F, s, f)
    a = q(f)

    new_basis = [e, f] + [v for pair in hyperbolic for v in pair]
    M = tuple(tuple(new_basis[j][i] for j in range(n)) for i in range(n))
    if q.transform(M) != canonical_form(F, n, a):
        raise AssertionError("Arf canonicalisation failed to round-trip")
    image = F.artin_schreier_image()
    return ArfResult(a, M, F.coset_rep(a, image), F)


def arf_equivalence(q1: QuadForm, q2: QuadForm) -> bool:
    if q1.field != q2.field or q1.dim != q2.dim:
        raise ValueError("forms must share field and dimension")
    return arf_canonicalize(q1).arf_class == arf_canonicalize(q2).arf_class


def general_linear_group(F: FiniteField, n: int, limit: int = 10 ** 6):
    """All invertible n x n matrices over F (row-major tuples), by enumeration."""
    total = F.q ** (n * n)
    if total > limit * 10:
        raise SearchSpaceTooLarge(f"{total} matrices to scan")
    out = []
    for flat in itertools.product(F.elements(), repeat=n * n):
        M = [flat[i * n:(i + 1) * n] for i in range(n)]
        if rank(F, M) == n:
            out.append(tuple(tuple(r) for r in M))
            if len(out) > limit:
                raise SearchSpaceTooLarge(f"|GL_{n}| exceeds {limit}")
    return out


def equivalent_brute_force(q1: QuadForm, q2: QuadForm) -> bool:
    """Search every change of basis M for q1(M x) = q2(x)."""
    if q1.field != q2.field or q1.dim != q2.dim:
        return False
    return any(q1.transform(M) == q2 for M in general_linear_group(q1.field, q1.dim))


# --- orthogonal groups over F_p -------------------------------------------

@dataclass(frozen=True)
class OrderPReport:
    p: int
    group_order: int
    order_counts: dict[int, int]

    @property
    def has_order_p(self) -> bool:
        return any(k % self.p == 0 for k in self.order_counts)

    def to_json(self) -> dict:
        return {"p": self.p, "group_order": self.group_order,
                "order_counts": {str(k): v for k, v in sorted(self.order_counts.items())},
                "has_order_p": self.has_order_p}


def orthogonal_group(q: QuadForm):
    """All invertible matrices M with q(M x) = q(x), by exhaustive search."""
    F = q.field
    n = q.dim
    if F.q ** (n * n) > SEARCH_LIMIT:
        raise SearchSpaceTooLarge(f"{F.q}^{n * n} matrices exceed {SEARCH_LIMIT}")
    out = []
    for flat in itertools.product(F.elements(), repeat=n * n):
        M = tuple(tuple(flat[i * n:(i + 1) * n]) for i in range(n))
        if q.transform(M) == q and rank(F, M) == n:
            out.append(M)
    return out


def _matrix_order(F, M) -> int:
    n = len(M)
    ident = _identity(F, n)
    P = [list(r) for r in M]
    k = 1
    while P != ident:
        P = _mat_mul(F, P, M)
        k += 1
    return k


def order_p_scan(q: QuadForm) -> OrderPReport:
    F = q.field
    if not isinstance(F, FiniteField) or F.k != 1 or F.p == 2:
        raise ValueError("order_p_scan needs a prime field of odd characteristic")
    if represents_zero(q) is not None:
        raise ValueError("form represents zero; the scan is for anisotropic forms")
    group = orthogonal_group(q)
    counts = Counter(_matrix_order(F, M) for M in group)
    report = OrderPReport(F.p, len(group), dict(sorted(counts.items())))
    if report.has_order_p:
        raise AssertionError(f"element of order divisible by p in O(q) for {q}")
    return report
