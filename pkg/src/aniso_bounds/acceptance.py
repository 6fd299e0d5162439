"""The acceptance suite: thirteen end-to-end checks with their time budgets.

Shared by ``aniso-bounds verify-all`` and the test suite. Each check recomputes
its evidence from scratch; nothing is cached between checks.
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources

from .brauer import FactoredFunction, admissible_form, as_cokernel, conic_char2_class, residues
from .csa import ad_solve, audit_sweep, gl, pgl, weyl_identity_check
from .errors import CapExceeded, Obstruction
from .exactalg import GF, QQ, IntMatrix, kernel_mod, matrix_order
from .glnz import MatrixGroup, closure, minkowski_injection_check, upsilon_search
from .quadform import (
    QuadForm,
    arf_canonicalize,
    canonical_form,
    is_nondegenerate,
    order_p_scan,
    reflection,
    represents_zero,
)
from .torus import GaloisLattice, h1_cyclic, is_anisotropic, torsion_profile

GOLDEN_TABLE = "bounds_table.golden.json"


@dataclass
class CriterionResult:
    number: int
    name: str
    passed: bool
    seconds: float
    budget: float | None = None
    detail: dict = field(default_factory=dict)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        budget = f" (budget {self.budget:g}s)" if self.budget else ""
        return f"[{status}] {self.number:2d} {self.name}: {self.seconds:.2f}s{budget}"

    def to_json(self, stable: bool = False) -> dict:
        out = {"number": self.number, "name": self.name, "passed": self.passed,
               "budget_s": self.budget, "detail": self.detail}
        if not stable:
            out["seconds"] = round(self.seconds, 3)
        return out


def _box(n: int, bound: int):
    for flat in itertools.product(range(-bound, bound + 1), repeat=n * n):
        yield IntMatrix(tuple(tuple(flat[i * n:(i + 1) * n]) for i in range(n)))


def _exact_order_by_powers(A: IntMatrix, limit: int = 12) -> int | None:
    """Independent route: smallest k <= limit with A^k = I."""
    P = A
    for k in range(1, limit + 1):
        if P.is_identity():
            return k
        P = P @ A
    return None


# --- 1 --------------------------------------------------------------------

def criterion_upsilon() -> dict:
    found = {n: upsilon_search(n, 1) for n in (1, 2, 3)}
    orders = {n: r.order for n, r in found.items()}
    return {"passed": orders == {1: 2, 2: 12, 3: 48},
            "orders": {str(n): o for n, o in orders.items()},
            "closures": {str(n): r.closures for n, r in found.items()},
            "_groups": [closure(list(r.generators), n=n) for n, r in found.items() if r.generators]}


# --- 2 --------------------------------------------------------------------

def criterion_gl2_spectrum() -> dict:
    spectrum, finite, mismatches = set(), [], 0
    for A in _box(2, 3):
        if abs(A.det()) != 1:
            continue
        k = matrix_order(A)
        if k != _exact_order_by_powers(A):
            mismatches += 1
        if k is not None:
            spectrum.add(k)
            finite.append(A)
    return {"passed": spectrum <= {1, 2, 3, 4, 6} and mismatches == 0,
            "orders_seen": sorted(spectrum), "finite_order_matrices": len(finite),
            "route_mismatches": mismatches, "_finite": finite}


# --- 3 --------------------------------------------------------------------

def criterion_minkowski(groups: list[MatrixGroup]) -> dict:
    failures = []
    for G in groups:
        for m in (3, 4, 5):
            if not minkowski_injection_check(G, m).injective:
                failures.append({"group_order": G.order, "m": m})
    pm = closure([-IntMatrix.identity(2)])
    mod2 = minkowski_injection_check(pm, 2)
    witness_ok = mod2.witness is not None and mod2.witness == -IntMatrix.identity(2)
    return {"passed": not failures and not mod2.injective and witness_ok,
            "groups_checked": len(groups), "failures": failures,
            "mod2_pm_identity_injective": mod2.injective}


# --- 4 --------------------------------------------------------------------

def random_anisotropic_rank2(count: int = 200, seed: int = 20240601) -> list[GaloisLattice]:
    rng = random.Random(seed)
    finite = [A for A in _box(2, 2) if abs(A.det()) == 1 and matrix_order(A) is not None]
    out = []
    while len(out) < count:
        gens = rng.sample(finite, rng.choice((1, 2)))
        try:
            L = GaloisLattice.from_generators(gens, 2, cap=200)
        except CapExceeded:
            continue
        if is_anisotropic(L):
            out.append(L)
    return out


def criterion_anisotropic_torsion(count: int = 200) -> dict:
    lattices = random_anisotropic_rank2(count)
    bad, cross = [], 0
    for L in lattices:
        prof = torsion_profile(L, 60)
        if prof.max_exact_order > 6 or prof.exact_counts[5] or max(prof.group_sizes.values()) > 36:
            bad.append(L.gamma.to_json())
        for d in range(2, 13):
            enum = kernel_mod(L.generators, d, 2)
            if sum(1 for _, o in enum if o == d) != prof.exact_counts[d] or len(enum) != prof.group_sizes[d]:
                cross += 1
    return {"passed": not bad and cross == 0, "samples": len(lattices),
            "distinct_groups": len({tuple(g.key() for g in L.gamma.elements) for L in lattices}),
            "violations": bad, "enumeration_mismatches": cross}


# --- 5 --------------------------------------------------------------------

def _annihilated_by_search(sigma: IntMatrix, r: int, kernel_basis, bound: int = 12) -> bool:
    """r * k lies in (sigma - 1) Z^2 for each basis vector k of ker N, by direct search."""
    D = sigma - IntMatrix.identity(2)
    image = {D @ (x, y) for x in range(-bound, bound + 1) for y in range(-bound, bound + 1)}
    return all(tuple(r * c for c in k) in image for k in kernel_basis)


def criterion_h1() -> dict:
    from .exactalg import integer_kernel
    checked, failures = {2: 0, 3: 0, 4: 0, 6: 0}, []
    for A in _box(2, 2):
        if abs(A.det()) != 1:
            continue
        r = matrix_order(A)
        if r not in checked:
            continue
        L = GaloisLattice.from_generators([A])
        h = h1_cyclic(L)
        N = IntMatrix.identity(2)
        P = IntMatrix.identity(2)
        for _ in range(r - 1):
            P = P @ A
            N = N + P
        K = integer_kernel(N.rows(), 2)
        if not (h.annihilated and _annihilated_by_search(A, r, K)):
            failures.append(A.to_json())
        checked[r] += 1
    return {"passed": not failures and all(checked.values()),
            "generators_checked": {str(r): c for r, c in checked.items()}, "failures": failures}


# --- 6, 7 -----------------------------------------------------------------

def criterion_herzog_praeger() -> dict:
    sweeps = [audit_sweep(gl(3), "general"), audit_sweep(gl(5), "general")]
    total = sum(s.subgroups for s in sweeps)
    violations = sum(len(s.violations) for s in sweeps)
    return {"passed": total >= 500 and violations == 0, "subgroups": total,
            "per_field": {str(s.field[0]): s.subgroups for s in sweeps}, "violations": violations}


def criterion_projective() -> dict:
    sweeps = [audit_sweep(pgl(5), "projective"), audit_sweep(pgl(7), "projective")]
    violations = sum(len(s.violations) for s in sweeps)
    return {"passed": violations == 0 and all(s.applicable for s in sweeps),
            "per_field": {str(s.field[0]): {"subgroups": s.subgroups, "applicable": s.applicable}
                          for s in sweeps},
            "violations": violations}


# --- 8 --------------------------------------------------------------------

def _orbit_classes(forms, F, n):
    """Equivalence classes by brute-force action of GL_n(F) on a set of forms."""
    from .quadform import general_linear_group
    group = general_linear_group(F, n)
    remaining, classes = set(forms), []
    while remaining:
        q = min(remaining, key=lambda f: sorted(f.coeffs.items()))
        orbit = {q.transform(M) for M in group}
        classes.append(orbit & set(forms))
        remaining -= orbit
    return classes


def criterion_arf() -> dict:
    detail, ok = {}, True
    for k in (1, 2):
        F = GF(2, k)
        forms = [QuadForm(F, 2, {(0, 0): a, (0, 1): b, (1, 1): c})
                 for a in F.elements() for b in F.elements() for c in F.elements() if b]
        classes = _orbit_classes(forms, F, 2)
        arf = {q: arf_canonicalize(q).arf_class for q in forms}
        consistent = all(len({arf[q] for q in cls}) == 1 for cls in classes)
        distinct = len({arf[next(iter(cls))] for cls in classes}) == len(classes)
        ok &= len(classes) == 2 and consistent and distinct
        detail[f"F{F.q}"] = {"forms": len(forms), "classes": len(classes),
                             "matches_cokernel": consistent and distinct}
    F2 = GF(2)
    keys = [(i, j) for i in range(4) for j in range(i, 4)]
    nondeg = anisotropic = roundtrip_fail = 0
    for bits in itertools.product((0, 1), repeat=len(keys)):
        q = QuadForm(F2, 4, dict(zip(keys, bits)))
        if not is_nondegenerate(q):
            continue
        nondeg += 1
        if represents_zero(q) is None:
            anisotropic += 1
        res = arf_canonicalize(q)
        if q.transform(res.basis_change) != canonical_form(F2, 4, res.a):
            roundtrip_fail += 1
    ok &= nondeg > 0 and anisotropic == 0 and roundtrip_fail == 0
    detail["F2_dim4"] = {"nondegenerate": nondeg, "anisotropic": anisotropic,
                         "roundtrip_failures": roundtrip_fail}
    return {"passed": ok, **detail}


# --- 9 --------------------------------------------------------------------

def criterion_reflections(count: int = 100, seed: int = 7) -> dict:
    rng = random.Random(seed)
    done = failures = 0
    while done < count:
        n = rng.choice((2, 3, 4))
        coeffs = {(i, j): Fraction(rng.randint(-5, 5), rng.choice((1, 1, 2, 3)))
                  for i in range(n) for j in range(i, n)}
        q = QuadForm(QQ, n, coeffs)
        v = [Fraction(rng.randint(-4, 4)) for _ in range(n)]
        if q(v) == 0:
            continue
        f = reflection(q, v)
        ident = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
        ff = [[sum(f[i][t] * f[t][j] for t in range(n)) for j in range(n)] for i in range(n)]
        fv = [sum(f[i][j] * v[j] for j in range(n)) for i in range(n)]
        if ff != ident or q.transform(f) != q or fv != [-x for x in v]:
            failures += 1
        done += 1
    return {"passed": failures == 0, "samples": done, "failures": failures}


# --- 10 -------------------------------------------------------------------

def criterion_order_p() -> dict:
    detail, ok = {}, True
    for p in (3, 5, 7):
        F = GF(p)
        forms = [QuadForm(F, 2, {(0, 0): a, (0, 1): b, (1, 1): c})
                 for a in range(p) for b in range(p) for c in range(p)]
        forms = [q for q in forms if is_nondegenerate(q) and represents_zero(q) is None]
        orders = set()
        for q in forms:
            rep = order_p_scan(q)
            orders |= set(rep.order_counts)
            ok &= not rep.has_order_p
        ok &= bool(forms)
        detail[str(p)] = {"anisotropic_forms": len(forms), "orders_seen": sorted(orders)}
    return {"passed": ok, **detail}


# --- 11 -------------------------------------------------------------------

def criterion_weyl() -> dict:
    res = {p: (weyl_identity_check(p).holds, ad_solve(p).nilpotent) for p in (2, 3, 5)}
    return {"passed": all(a and b for a, b in res.values()),
            "identity": {str(p): a for p, (a, _) in res.items()},
            "ad_v_nilpotent": {str(p): b for p, (_, b) in res.items()}}


# --- 12 -------------------------------------------------------------------

def _random_divisor(F, rng):
    points = list(F.elements()) + ["inf"]
    k = rng.randint(2, min(6, len(points)))
    pts = rng.sample(points, k)
    mults = [rng.randint(-5, 5) for _ in range(k - 1)]
    mults.append(-sum(mults))
    return FactoredFunction(F, tuple(zip(pts, mults)))


def criterion_residues(count: int = 100, seed: int = 11) -> dict:
    rng = random.Random(seed)
    nonzero_sums = 0
    for F in (GF(2), GF(2, 2), GF(3)):
        coker = as_cokernel(F)
        for _ in range(count):
            f = _random_divisor(F, rng)
            data = residues(f, rng.choice(list(F.elements())), coker)
            if data.raw_sum != 0:
                nonzero_sums += 1
    F4 = GF(2, 2)
    form = admissible_form(["0", "1", "w", "inf"], F4)
    mults = [m for _, m in form.f.divisor]
    admissible_ok = (sum(mults) == 0 and all(m % 2 for m in mults)
                     and form.t not in as_cokernel(F4).image)
    try:
        admissible_form(["0", "1", "inf"], GF(2))
        obstruction_ok = False
    except Obstruction:
        obstruction_ok = True
    disagreements = 0
    for k in (1, 2, 3):
        F = GF(2, k)
        image = as_cokernel(F).image
        for a in F.elements():
            if (conic_char2_class(a, F) == "no_point") != (a not in image):
                disagreements += 1
    return {"passed": nonzero_sums == 0 and admissible_ok and obstruction_ok and disagreements == 0,
            "divisors": 3 * count, "nonzero_raw_sums": nonzero_sums,
            "admissible_F4": mults, "obstruction_F2": obstruction_ok,
            "conic_disagreements": disagreements}


# --- 13 -------------------------------------------------------------------

def golden_table_text() -> str:
    return resources.files("aniso_bounds.data").joinpath(GOLDEN_TABLE).read_text(encoding="utf-8")


def criterion_golden() -> dict:
    from .cli import render, run
    code, report = run(["bounds", "--table", "--stable"])
    produced = render(report)
    expected = golden_table_text()
    return {"passed": code == 0 and produced == expected, "bytes": len(produced),
            "matches": produced == expected}


# --- driver ---------------------------------------------------------------

CRITERIA = (
    (1, "upsilon reproduction", 60.0),
    (2, "GL2(Z) order spectrum", 60.0),
    (3, "Minkowski injectivity", None),
    (4, "anisotropic rank-2 torsion", None),
    (5, "H1 annihilation", None),
    (6, "Herzog-Praeger audit", 120.0),
    (7, "projective exponent audit", None),
    (8, "Arf suite", None),
    (9, "reflection identities", None),
    (10, "order-p exclusion", None),
    (11, "Weyl identities", 10.0),
    (12, "residue calculus", None),
    (13, "bounds golden table", None),
)


def _timed(fn, *args):
    t0 = time.perf_counter()
    out = fn(*args)
    return out, time.perf_counter() - t0


def run_criterion(number: int, context: dict | None = None) -> CriterionResult:
    """Run one criterion. ``context`` carries groups from 1-2 into 3."""
    context = {} if context is None else context
    _, name, budget = CRITERIA[number - 1]
    if number == 3:
        if "groups" not in context:
            run_criterion(1, context)
            run_criterion(2, context)
        out, secs = _timed(criterion_minkowski, context["groups"])
    else:
        fn = {1: criterion_upsilon, 2: criterion_gl2_spectrum, 4: criterion_anisotropic_torsion,
              5: criterion_h1, 6: criterion_herzog_praeger, 7: criterion_projective,
              8: criterion_arf, 9: criterion_reflections, 10: criterion_order_p,
              11: criterion_weyl, 12: criterion_residues, 13: criterion_golden}[number]
        out, secs = _timed(fn)
    if number == 1:
        context.setdefault("groups", []).extend(out.pop("_groups"))
    if number == 2:
        context.setdefault("groups", []).extend(closure([A]) for A in out.pop("_finite"))
    passed = bool(out.pop("passed")) and (budget is None or secs < budget)
    return CriterionResult(number, name, passed, secs, budget, out)


def run_all(numbers=None) -> list[CriterionResult]:
    context: dict = {}
    return [run_criterion(k, context) for k in (numbers or range(1, 14))]
