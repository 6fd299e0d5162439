from __future__ import annotations

import json
import math
from importlib import resources

import pytest
from hypothesis import given
from hypothesis import strategies as st

from aniso_bounds.bounds import (
    CITATIONS,
    BoundQuery,
    assemble_bir_bound,
    evaluate,
    ledger_table,
    table_queries,
    torsion_primes_for,
)
from aniso_bounds.errors import OutOfLedger
from aniso_bounds.glnz import upsilon_search


def ev(case, **kw):
    return evaluate(BoundQuery(case, **kw))


def test_every_anchor_is_verbatim_in_the_source(source_text):
    missing = [k for k, v in CITATIONS.items() if v not in source_text]
    assert missing == []


def test_upsilon_constants_in_source(source_text):
    assert r"\Upsilon(1)=2" in source_text and r"\Upsilon(3)=48" in source_text


@pytest.mark.parametrize("case,kw,value,anchor", [
    ("quadric", {"n": 4}, 32, "at most~$32$"),
    ("del_pezzo", {"degree": 6}, 432, r"$12\cdot 36=432$"),
    ("conic_bundle", {"m": 5}, 16 * 120, "d(m)= 16 m!$ works in all cases"),
    ("torus", {"n": 3}, 48 ** 3, r"order at most~$\Upsilon(n)^n$"),
    ("severi_brauer", {"n": 3}, 27, r"$|G|\leqslant 27$"),
    ("del_pezzo", {"degree": 5}, 648, r"$|\operatorname{Aut}(X)|\leqslant 648$"),
    ("del_pezzo", {"degree": 3, "char": 5}, 696729600, r"$696\,729\,600$"),
    ("del_pezzo", {"degree": 6, "char": 2, "perfect": False}, 108, r"$|G|' \leqslant 108$"),
    ("del_pezzo", {"degree": 7, "char": 3, "perfect": False}, 48, r"$|G|' \leqslant 48$"),
    ("brauer_kernel", {"surface": "severi_brauer_surface"}, 3, "has order $3$"),
    ("brauer_kernel", {"surface": "product_of_conics"}, 4, "has order $4$"),
    ("brauer_kernel", {"surface": "quadric_pic_z"}, 1, "is trivial"),
    ("brauer_kernel", {"surface": "product_with_conic"}, 2, "thus, has order $2$"),
])
def test_examples(case, kw, value, anchor):
    res = ev(case, **kw)
    assert res.value == value and res.citation == anchor


def test_e8_torsion_primes():
    res = ev("torsion_primes", dynkin="E8")
    assert res.value == [2, 3, 5] and res.kind == "prime_set"
    assert res.citation == r"$\mathcal{T}(H)= \{2, 3, 5\}$"


@pytest.mark.parametrize("dynkin,primes", [
    ("A1", []), ("A7", []), ("C3", []), ("B2", [2]), ("B5", [2]), ("D4", [2]), ("G2", [2]),
    ("F4", [2, 3]), ("E6", [2, 3]), ("E7", [2, 3]), ("E8", [2, 3, 5]), ("e_8", [2, 3, 5]),
])
def test_torsion_primes_table(dynkin, primes):
    assert torsion_primes_for(dynkin)[0] == primes


@pytest.mark.parametrize("dynkin", ["C2", "D3", "E9", "G3", "H3", "X"])
def test_torsion_primes_off_grid(dynkin):
    with pytest.raises(OutOfLedger):
        torsion_primes_for(dynkin)


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_severi_brauer_formula(n):
    res = ev("severi_brauer", n=n, char=7)
    assert res.value == n ** (2 * (n - 1)) and res.extra["exponent"] == n


def test_severi_brauer_variants():
    assert ev("severi_brauer", n=3, division=False).kind == "unbounded"
    res = ev("severi_brauer_p", p=3, m=1, n_prime=2)
    assert res.value == {"normal_coprime_order_max": 2 ** 10, "abelian_p_exponent_max": 3}
    with pytest.raises(OutOfLedger):
        ev("severi_brauer", n=3, char=3)


def test_assembly_examples():
    assert assemble_bir_bound("conic_bundle", m=2).value == 16
    assert assemble_bir_bound("conic_bundle", m=2).citation == r"then  $|G| \leqslant 16$"
    assert assemble_bir_bound("del_pezzo", degree=9).value == 81
    assert assemble_bir_bound("conic_bundle", m=0).kind == "excluded"
    assert assemble_bir_bound("del_pezzo", degree=7).kind == "excluded"
    res = assemble_bir_bound("conic_bundle", m=5, char=2)
    assert res.kind == "factor" and res.value == 120
    with pytest.raises(OutOfLedger):
        assemble_bir_bound("cubic_threefold")


def test_lag_constant_is_symbolic():
    res = ev("lag_constant", r=2, n=3)
    assert res.kind == "exists_not_computed" and res.value == "L(2,3)"
    assert not isinstance(res.value, int)


def test_conic_bundle_nondecreasing():
    values = [ev("conic_bundle", m=m).value for m in range(0, 65)]
    assert all(a <= b for a, b in zip(values, values[1:]))
    assembled = [assemble_bir_bound("conic_bundle", m=m).value for m in range(1, 30)]
    assert all(a <= b for a, b in zip(assembled, assembled[1:]))


@pytest.mark.parametrize("parity", [0, 1])
def test_quadric_nondecreasing_within_parity(parity):
    ns = [n for n in range(3, 16) if n % 2 == parity]
    values = [ev("quadric", n=n).value for n in ns]
    assert all(a <= b for a, b in zip(values, values[1:]))


off_grid = st.one_of(
    st.builds(lambda n: BoundQuery("torus", n=n), st.integers(4, 50)),
    st.builds(lambda n: BoundQuery("torus", n=n), st.integers(-5, 0)),
    st.builds(lambda n: BoundQuery("quadric", n=n), st.integers(-3, 2)),
    st.builds(lambda d: BoundQuery("del_pezzo", degree=d), st.integers(10, 40)),
    st.builds(lambda m: BoundQuery("conic_bundle", m=m), st.integers(65, 500)),
    st.builds(lambda n: BoundQuery("minkowski_mod3", n=n), st.integers(7, 30)),
    st.builds(lambda c: BoundQuery("quadric", n=5, char=c), st.sampled_from([4, 6, 9, 15])),
    st.builds(lambda s: BoundQuery(s, n=3), st.text(min_size=1, max_size=8).filter(
        lambda s: s not in ("torus", "quadric", "severi_brauer", "lag_constant",
                            "minkowski_upsilon", "minkowski_mod3"))),
    st.just(BoundQuery("quadric", n=4, char=2, perfect=False)),
    st.just(BoundQuery("torus", n=2, roots_of_unity=False)),
    st.just(BoundQuery("brauer_kernel", surface="cubic")),
)


@given(off_grid)
def test_off_grid_raises(q):
    with pytest.raises(OutOfLedger):
        evaluate(q)


@given(st.sampled_from(table_queries()))
def test_every_result_cites_the_table(q):
    res = evaluate(q)
    assert res.citation and res.citation in CITATIONS.values()
    assert all(c in CITATIONS.values() for c in res.chain)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_torus_bound_is_upsilon_search_power(n):
    found = upsilon_search(n).order
    assert ev("torus", n=n).value == found ** n


def _golden():
    text = resources.files("aniso_bounds.data").joinpath("bounds_table.golden.json").read_text("utf-8")
    return json.loads(text)["results"]


def test_golden_file_matches_live_table():
    assert _golden() == json.loads(json.dumps(ledger_table()))


def test_golden_contains_required_values():
    rows = _golden()["rules"]
    bounds = [r["bound"] for r in rows]
    for v in (27, 81, 32, 432, 108, 48, 648, 696729600, 2, 12, 48 ** 3, 12 ** 2):
        assert v in bounds, v
    for n in (2, 3, 4, 5):
        assert n ** (2 * (n - 1)) in bounds
    for n in (3, 5):
        assert 2 ** (n - 1) in bounds
    assert 8 ** 5 in bounds
    quadric4 = next(r for r in rows if r["query"] == {"case": "quadric", "n": 4})
    assert quadric4["bound"] == 32 and quadric4["general_even_bound"] == 8 ** 3
    for m in range(9):
        assert 16 * math.factorial(m) in bounds
    assert sorted(r["bound"] for r in rows if r["query"]["case"] == "brauer_kernel") == [1, 2, 3, 4]
    sets = {r["query"]["dynkin"]: r["bound"] for r in rows if r["query"]["case"] == "torsion_primes"}
    assert set(sets) >= {"A1", "B2", "C3", "D4", "E6", "E7", "E8", "F4", "G2"}
    assert all(r["citation"] in CITATIONS.values() for r in rows + _golden()["assembled"])
