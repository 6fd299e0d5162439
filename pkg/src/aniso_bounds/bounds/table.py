"""The full ledger as a list of rows: query, answer, anchor."""

from __future__ import annotations

from .rules import BRAUER_KERNEL, BoundQuery, assemble_bir_bound, evaluate

DYNKIN_SAMPLES = ("A1", "A2", "B2", "B3", "C3", "C4", "D4", "D5", "E6", "E7", "E8", "F4", "G2")


def table_queries() -> list[BoundQuery]:
    qs = [BoundQuery("minkowski_upsilon", n=n) for n in (1, 2, 3)]
    qs += [BoundQuery("minkowski_mod3", n=n) for n in (1, 2, 3, 4)]
    qs += [BoundQuery("torus", n=n) for n in (1, 2, 3)]
    qs += [BoundQuery("severi_brauer", n=n, char=7) for n in (2, 3, 4, 5)]
    qs += [BoundQuery("severi_brauer", n=3, char=0), BoundQuery("severi_brauer", n=3, division=False)]
    qs += [BoundQuery("severi_brauer_p", n_prime=1, p=3, m=1), BoundQuery("severi_brauer_p", n_prime=2, p=3, m=1)]
    qs += [BoundQuery("quadric", n=n) for n in (3, 4, 5, 6)]
    qs += [BoundQuery("quadric", n=3, has_point=True)]
    qs += [BoundQuery("del_pezzo", degree=6), BoundQuery("del_pezzo", degree=6, char=2, perfect=False),
           BoundQuery("del_pezzo", degree=6, char=3, perfect=False),
           BoundQuery("del_pezzo", degree=5), BoundQuery("del_pezzo", degree=5, char=5)]
    qs += [BoundQuery("conic_bundle", m=m) for m in range(0, 9)]
    qs += [BoundQuery("brauer_kernel", surface=s) for s in BRAUER_KERNEL]
    qs += [BoundQuery("torsion_primes", dynkin=t) for t in DYNKIN_SAMPLES]
    qs += [BoundQuery("lag_constant", r=1, n=1)]
    return qs


ASSEMBLY_SAMPLES = (
    {"surface": "del_pezzo", "degree": 9},
    {"surface": "del_pezzo", "degree": 9, "char": 3, "perfect": False},
    {"surface": "del_pezzo", "degree": 8},
    {"surface": "del_pezzo", "degree": 8, "char": 2, "perfect": False},
    {"surface": "del_pezzo", "degree": 7},
    {"surface": "del_pezzo", "degree": 6},
    {"surface": "del_pezzo", "degree": 4},
    {"surface": "conic_bundle", "m": 0},
    {"surface": "conic_bundle", "m": 2},
    {"surface": "conic_bundle", "m": 5},
    {"surface": "conic_bundle", "m": 5, "char": 2},
)


def ledger_table() -> dict:
    rows = [{"query": q.to_json(), **evaluate(q).to_json()} for q in table_queries()]
    assembled = [{"query": dict(s), **assemble_bir_bound(**s).to_json()} for s in ASSEMBLY_SAMPLES]
    return {"rules": rows, "assembled": assembled}
