"""Command-line entry point: ``aniso-bounds <subcommand> ...`` with JSON reports.

Exit status: 0 when every check passes, 2 when a check fails, 1 on bad input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from pathlib import Path

from .errors import AnisoBoundsError, Obstruction

THREADS_ENV = "ANISO_BOUNDS_THREADS"


class InputError(Exception):
    """Malformed arguments or input files; reported on one line, exit status 1."""


def load_json(arg: str):
    """Inline JSON (starting with '{' or '['), '-' for stdin, or a file path."""
    text = arg.strip()
    try:
        if text.startswith(("{", "[")):
            return json.loads(text)
        if text == "-":
            return json.load(sys.stdin)
        return json.loads(Path(arg).read_text(encoding="utf-8"))
    except FileNotFoundError:
        raise InputError(f"no such file: {arg}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON in {arg}: {exc.msg} at line {exc.lineno}") from None


def threads_from_env() -> int:
    raw = os.environ.get(THREADS_ENV)
    if raw is None or raw == "":
        return 1
    try:
        value = int(raw)
    except ValueError:
        raise InputError(f"{THREADS_ENV} must be a positive integer, got {raw!r}") from None
    if value < 1:
        raise InputError(f"{THREADS_ENV} must be a positive integer, got {raw!r}")
    return value


# --- subcommand handlers: each returns (inputs, results, checks) -----------

def _glnz(a):
    from .exactalg import IntMatrix, matrix_order
    from .glnz import MatrixGroup, fixed_vector_group_check, minkowski_injection_check, upsilon_search
    if a.upsilon is not None:
        res = upsilon_search(a.upsilon, a.entry_bound)
        return ({"upsilon": a.upsilon, "entry_bound": a.entry_bound}, res.to_json(),
                {"known_value": res.order == {1: 2, 2: 12, 3: 48}[a.upsilon]})
    if a.closure:
        G = MatrixGroup.from_json(load_json(a.closure), cap=a.cap)
        return ({"closure": a.closure, "cap": a.cap},
                {"order": G.order, "elements": [g.to_json()["entries"] for g in G.elements]}, {})
    if a.minkowski:
        G = MatrixGroup.from_json(load_json(a.minkowski), cap=a.cap)
        res = minkowski_injection_check(G, a.m)
        checks = {"injective": res.injective} if a.m > 2 else {}
        return {"minkowski": a.minkowski, "m": a.m}, {"group_order": G.order, **res.to_json()}, checks
    if a.fixed_vector:
        G = MatrixGroup.from_json(load_json(a.fixed_vector), cap=a.cap)
        return {"fixed_vector": a.fixed_vector}, fixed_vector_group_check(G).to_json(), {}
    if a.order is not None:
        A = IntMatrix.from_json(load_json(a.order))
        return {"order": a.order}, {"order": matrix_order(A)}, {}
    raise InputError("glnz needs one of --upsilon, --closure, --minkowski, --fixed-vector, --order")


def _torus(a):
    from .torus import GaloisLattice, h1_cyclic, is_anisotropic, torsion_profile, trace_vector
    path = a.profile or a.anisotropic or a.h1 or a.trace
    if not path:
        raise InputError("torus needs one of --profile, --anisotropic, --h1, --trace")
    L = GaloisLattice.from_json(load_json(path))
    if a.profile:
        prof = torsion_profile(L, a.dmax, a.char)
        checks = {}
        if L.rank == 2 and is_anisotropic(L):
            checks = {"max_exact_order_le_6": prof.max_exact_order <= 6,
                      "no_order_5": prof.exact_counts.get(5, 0) == 0,
                      "invariant_group_le_36": max(prof.group_sizes.values()) <= 36}
        return ({"profile": a.profile, "dmax": a.dmax, "char": a.char},
                {"gamma_order": L.gamma.order, "anisotropic": is_anisotropic(L), **prof.to_json()}, checks)
    if a.anisotropic:
        return ({"anisotropic": a.anisotropic},
                {"gamma_order": L.gamma.order, "anisotropic": is_anisotropic(L)}, {})
    if a.h1:
        res = h1_cyclic(L)
        return {"h1": a.h1}, res.to_json(), {"annihilated_by_gamma_order": res.annihilated}
    vec = _vector(a.vector)
    w = trace_vector(L, vec)
    fixed = all(g @ w == w for g in L.gamma.elements)
    return {"trace": a.trace, "vector": list(vec)}, {"trace_vector": list(w)}, {"invariant": fixed}


def _vector(text):
    if text is None:
        raise InputError("a vector is required (e.g. --axis \"[1,0]\")")
    try:
        vec = json.loads(text)
    except json.JSONDecodeError:
        raise InputError(f"malformed vector {text!r}") from None
    if not isinstance(vec, list):
        raise InputError(f"vector must be a JSON list, got {text!r}")
    return vec


def _quadform(a):
    from .quadform import (
        QuadForm,
        arf_canonicalize,
        arf_equivalence,
        bilinear,
        order_p_scan,
        reflection,
        represents_zero,
    )
    path = a.isotropy or a.arf or a.reflect or a.bilinear or a.order_p
    if not path:
        raise InputError("quadform needs one of --isotropy, --arf, --reflect, --bilinear, --order-p")
    q = QuadForm.from_json(load_json(path))
    F = q.field
    if a.isotropy:
        w = represents_zero(q)
        return ({"isotropy": a.isotropy},
                {"isotropic": w is not None, "witness": None if w is None else [F.format(x) for x in w]}, {})
    if a.bilinear:
        return {"bilinear": a.bilinear}, {"matrix": [[F.format(x) for x in r] for r in bilinear(q)]}, {}
    if a.arf:
        res = arf_canonicalize(q).to_json()
        checks = {"round_trip": True}
        inputs = {"arf": a.arf}
        if a.compare:
            q2 = QuadForm.from_json(load_json(a.compare))
            res["equivalent"] = arf_equivalence(q, q2)
            inputs["compare"] = a.compare
        return inputs, res, checks
    if a.order_p:
        rep = order_p_scan(q)
        return {"order_p": a.order_p}, rep.to_json(), {"no_order_p": not rep.has_order_p}
    axis = _vector(a.axis)
    M = reflection(q, axis)
    n = q.dim
    v = [F.parse(x) for x in axis]

    def dot(xs, ys):
        acc = F.zero
        for x, y in zip(xs, ys):
            acc = F.add(acc, F.mul(x, y))
        return acc

    cols = [[M[t][j] for t in range(n)] for j in range(n)]
    sq = [[dot(M[i], cols[j]) for j in range(n)] for i in range(n)]
    fv = [dot(M[i], v) for i in range(n)]
    checks = {"involution": sq == [[F.one if i == j else F.zero for j in range(n)] for i in range(n)],
              "preserves_form": q.transform(M) == q,
              "negates_axis": fv == [F.neg(x) for x in v]}
    return {"reflect": a.reflect, "axis": axis}, {"matrix": [[F.format(x) for x in r] for r in M]}, checks


def _csa(a):
    from .csa import (
        CyclotomicMatrix,
        FiniteMatrixGroup,
        ad_solve,
        audit_sweep,
        exponent_bound_audit,
        minpoly_structure,
        weyl_identity_check,
        weyl_normal_form,
    )
    if a.weyl_identity is not None:
        rep = weyl_identity_check(a.weyl_identity)
        ad = ad_solve(a.weyl_identity)
        return ({"weyl_identity": a.weyl_identity}, {**rep.to_json(), "ad_solve": ad.to_json()},
                {"identity_holds": rep.holds, "ad_v_nilpotent": ad.nilpotent})
    if a.ad_solve is not None:
        ad = ad_solve(a.ad_solve)
        return {"ad_solve": a.ad_solve}, ad.to_json(), {"ad_v_nilpotent": ad.nilpotent}
    if a.normal_form is not None:
        return ({"normal_form": a.normal_form, "p": a.p},
                {"normal_form": str(weyl_normal_form(a.normal_form, a.p))}, {})
    if a.audit:
        G = FiniteMatrixGroup.from_json(load_json(a.audit))
        if a.sweep:
            s = audit_sweep(G, a.mode)
            return ({"audit": a.audit, "mode": a.mode, "sweep": True}, s.to_json(),
                    {"no_violation": not s.violations})
        rep = exponent_bound_audit(G, a.mode)
        return {"audit": a.audit, "mode": a.mode}, rep.to_json(), {"no_violation": not rep.violation}
    if a.minpoly:
        obj = load_json(a.minpoly)
        M = CyclotomicMatrix.from_json(obj, a.N)
        rep = minpoly_structure(M)
        return ({"minpoly": a.minpoly, "N": M.N}, rep.to_json(),
                {"product_equals_minpoly": rep.product_ok, "binomial_factors": rep.shape_ok})
    raise InputError("csa needs one of --weyl-identity, --ad-solve, --normal-form, --audit, --minpoly")


def _brauer(a):
    from .brauer import (
        FactoredFunction,
        admissible_form,
        as_cokernel,
        conic_char2_class,
        delta_from_json,
        residues,
    )
    from .exactalg import GF, FiniteField, field_from_json
    if a.coker:
        p, k = a.coker
        co = as_cokernel(GF(p, k))
        return {"coker": [p, k]}, co.to_json(), {"order_is_p": co.order == p}
    if a.admissible:
        F, pts = delta_from_json(load_json(a.admissible))
        try:
            form = admissible_form(pts, F)
        except Obstruction as exc:
            return {"admissible": a.admissible}, {"obstruction": exc.reason}, {}
        return {"admissible": a.admissible}, form.to_json(), {"raw_sum_zero": form.data.raw_sum == 0}
    if a.conic_class:
        value, fpath = a.conic_class
        F = field_from_json(load_json(fpath))
        if not isinstance(F, FiniteField):
            raise InputError("conic class needs a finite field")
        cls = conic_char2_class(value, F)
        a_el = F.parse(value)
        agrees = (cls == "no_point") == (a_el not in as_cokernel(F).image)
        return ({"conic_class": [value, fpath]}, {"a": F.format(a_el), "class": cls},
                {"agrees_with_cokernel": agrees})
    if a.residues:
        f = FactoredFunction.from_json(load_json(a.residues))
        data = residues(f, a.t)
        return {"residues": a.residues, "t": a.t}, data.to_json(f.field), {"raw_sum_zero": data.raw_sum == 0}
    raise InputError("brauer needs one of --coker, --admissible, --conic-class, --residues")


def _bounds(a):
    from .bounds import BoundQuery, assemble_bir_bound, evaluate, ledger_table
    if a.table:
        return {"table": True}, ledger_table(), {}
    if a.assemble:
        kwargs = {"surface": a.assemble, "char": a.char, "perfect": not a.non_perfect,
                  "degree": a.degree, "m": a.m}
        res = assemble_bir_bound(**kwargs)
        return {k: v for k, v in kwargs.items() if v is not None}, res.to_json(), {}
    if not a.case:
        raise InputError("bounds needs --case, --assemble or --table")
    q = BoundQuery(a.case, n=a.n, char=a.char, perfect=not a.non_perfect, has_point=a.has_point,
                   division=not a.split, degree=a.degree, m=a.m, p=a.p, n_prime=a.n_prime,
                   surface=a.surface, dynkin=a.dynkin, r=a.r)
    return q.to_json(), evaluate(q).to_json(), {}


def _verify_all(a):
    from .acceptance import run_all
    numbers = None
    if a.only:
        try:
            numbers = sorted({int(x) for x in a.only.split(",")})
        except ValueError:
            raise InputError(f"--only takes comma-separated criterion numbers, got {a.only!r}") from None
        if any(not 1 <= k <= 13 for k in numbers):
            raise InputError("criterion numbers run from 1 to 13")
    results = run_all(numbers)
    for r in results:
        print(r.line(), file=sys.stderr)
    return ({"only": numbers} if numbers else {},
            {"criteria": [r.to_json(stable=a.stable) for r in results]},
            {f"criterion_{r.number}": r.passed for r in results})


HANDLERS = {"glnz": _glnz, "torus": _torus, "quadform": _quadform, "csa": _csa,
            "brauer": _brauer, "bounds": _bounds, "verify-all": _verify_all}


# --- parser ---------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(message)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--stable", action="store_true", default=argparse.SUPPRESS,
                        help="omit wall time and other volatile fields")
    parser = _Parser(prog="aniso-bounds", parents=[common],
                     description="Exact checks for finite groups, tori, quadratic forms and bounds.")
    sub = parser.add_subparsers(dest="subcommand", required=True, parser_class=_Parser)

    g = sub.add_parser("glnz", parents=[common], help="finite subgroups of GL_n(Z)")
    g.add_argument("--upsilon", type=int, choices=(1, 2, 3), metavar="N")
    g.add_argument("--entry-bound", type=int, default=1)
    g.add_argument("--closure", metavar="GROUP_JSON")
    g.add_argument("--minkowski", metavar="GROUP_JSON")
    g.add_argument("-m", type=int, default=3)
    g.add_argument("--fixed-vector", metavar="GROUP_JSON")
    g.add_argument("--order", metavar="MATRIX_JSON")
    g.add_argument("--cap", type=int, default=10_000)

    t = sub.add_parser("torus", parents=[common], help="Galois lattices")
    t.add_argument("--profile", metavar="LATTICE_JSON")
    t.add_argument("--dmax", type=int, default=60)
    t.add_argument("--char", type=int, default=0)
    t.add_argument("--anisotropic", metavar="LATTICE_JSON")
    t.add_argument("--h1", metavar="LATTICE_JSON")
    t.add_argument("--trace", metavar="LATTICE_JSON")
    t.add_argument("--vector")

    q = sub.add_parser("quadform", parents=[common], help="quadratic forms")
    q.add_argument("--isotropy", metavar="FORM_JSON")
    q.add_argument("--bilinear", metavar="FORM_JSON")
    q.add_argument("--arf", metavar="FORM_JSON")
    q.add_argument("--compare", metavar="FORM_JSON")
    q.add_argument("--reflect", metavar="FORM_JSON")
    q.add_argument("--axis")
    q.add_argument("--order-p", metavar="FORM_JSON")

    c = sub.add_parser("csa", parents=[common], help="central simple algebra checks")
    c.add_argument("--weyl-identity", type=int, choices=(2, 3, 5), metavar="P")
    c.add_argument("--ad-solve", type=int, choices=(2, 3, 5), metavar="P")
    c.add_argument("--normal-form", metavar="EXPR")
    c.add_argument("-p", type=int, choices=(2, 3, 5), default=2)
    c.add_argument("--audit", metavar="GROUP_JSON")
    c.add_argument("--mode", choices=("general", "projective"), default="general")
    c.add_argument("--sweep", action="store_true")
    c.add_argument("--minpoly", metavar="MATRIX_JSON")
    c.add_argument("-N", type=int, default=None)

    b = sub.add_parser("brauer", parents=[common], help="Artin-Schreier residues")
    b.add_argument("--coker", type=int, nargs=2, metavar=("P", "K"))
    b.add_argument("--admissible", metavar="DELTA_JSON")
    b.add_argument("--conic-class", nargs=2, metavar=("A", "FIELD_JSON"))
    b.add_argument("--residues", metavar="DIVISOR_JSON")
    b.add_argument("--t", default="1")

    o = sub.add_parser("bounds", parents=[common], help="explicit bounds with citations")
    o.add_argument("--case")
    o.add_argument("--table", action="store_true")
    o.add_argument("--assemble", choices=("del_pezzo", "conic_bundle"))
    o.add_argument("--n", type=int)
    o.add_argument("--char", type=int, default=0)
    o.add_argument("--non-perfect", action="store_true")
    o.add_argument("--perfect", action="store_true", help="the default; accepted for symmetry")
    o.add_argument("--no-point", action="store_true", help="the default")
    o.add_argument("--has-point", action="store_true")
    o.add_argument("--split", action="store_true", help="algebra is not a division algebra")
    o.add_argument("--degree", type=int)
    o.add_argument("--m", type=int)
    o.add_argument("--p", type=int)
    o.add_argument("--n-prime", type=int)
    o.add_argument("--surface")
    o.add_argument("--dynkin")
    o.add_argument("--r", type=int)

    v = sub.add_parser("verify-all", parents=[common], help="run the acceptance suite")
    v.add_argument("--only", metavar="LIST")
    return parser


def run(argv) -> tuple[int, dict]:
    """Parse and execute; returns (exit status, report). Input errors raise InputError."""
    args = build_parser().parse_args(argv)
    args.stable = getattr(args, "stable", False)
    threads_from_env()
    t0 = time.perf_counter()
    inputs, results, checks = HANDLERS[args.subcommand](args)
    report = {"subcommand": args.subcommand, "inputs": inputs, "results": results,
              "checks": {"passed": sorted(k for k, v in checks.items() if v),
                         "failed": sorted(k for k, v in checks.items() if not v)}}
    if not args.stable:
        report["wall_time"] = round(time.perf_counter() - t0, 4)
    return (2 if report["checks"]["failed"] else 0), report


def render(report: dict) -> str:
    return json.dumps(report, indent=2, ensure_ascii=False) + "\n"


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        code, report = run(argv)
    except (InputError, AnisoBoundsError, ValueError, KeyError, TypeError) as exc:
        msg = str(exc).splitlines()[0] if str(exc) else type(exc).__name__
        print(f"aniso-bounds: error: {type(exc).__name__}: {msg}", file=sys.stderr)
        return 1
    sys.stdout.write(render(report))
    return code


if __name__ == "__main__":
    sys.exit(main())
