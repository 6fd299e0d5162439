from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from aniso_bounds.brauer import (
    INF,
    FactoredFunction,
    admissible_form,
    as_cokernel,
    conic_char2_class,
    residues,
)
from aniso_bounds.errors import CharTwo, DivisorNotPrincipal, Obstruction
from aniso_bounds.exactalg import GF

FIELDS = [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (5, 1), (2, 4)]


def _trace(F, a):
    """Absolute trace a + a^p + ... + a^(p^(k-1)), by repeated Frobenius."""
    total, x = 0, a
    for _ in range(F.k):
        total = F.add(total, x)
        x = F.pow(x, F.p)
    return total


@pytest.mark.parametrize("p,k", FIELDS)
def test_cokernel_is_trace_kernel(p, k):
    F = GF(p, k)
    co = as_cokernel(F)
    assert co.image == frozenset(a for a in F.elements() if _trace(F, a) == 0)
    assert co.order == p
    assert co.reps[0] == 0
    assert {co.rep(a) for a in F.elements()} == set(co.reps)


def test_f8_image():
    F = GF(2, 3)
    co = as_cokernel(F)
    assert sorted(F.format(a) for a in co.image) == sorted(["0", "w", "w^2", "w^2+w"])


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_conic_class_matches_trace(k):
    F = GF(2, k)
    for a in F.elements():
        expected = "splits" if _trace(F, a) == 0 else "no_point"
        assert conic_char2_class(a, F) == expected


def test_conic_class_needs_char_two():
    with pytest.raises(CharTwo):
        conic_char2_class(1, GF(3))


def principal_divisors(F):
    points = st.lists(st.one_of(st.integers(0, F.q - 1), st.just(INF)), min_size=1, max_size=6,
                      unique=True)

    def build(pts):
        return st.lists(st.integers(-5, 5), min_size=len(pts) - 1, max_size=len(pts) - 1).map(
            lambda ms: list(zip(pts, ms + [-sum(ms)])))
    return points.flatmap(build)


@given(st.sampled_from([(2, 1), (2, 2), (3, 1), (2, 3), (5, 1)]).flatmap(
    lambda pk: st.tuples(st.just(GF(*pk)), principal_divisors(GF(*pk)), st.integers(0, GF(*pk).q - 1))))
def test_raw_residues_sum_to_zero(data):
    F, pairs, t = data
    f = FactoredFunction(F, tuple(pairs))
    res = residues(f, t)
    assert res.raw_sum == 0
    for P, m in pairs:
        assert res.raw[P] == F.scale(m, t)
        assert res.residues[P] == F.coset_rep(res.raw[P])


def test_divisor_errors():
    F = GF(3)
    with pytest.raises(DivisorNotPrincipal):
        residues(FactoredFunction.from_pairs(F, [(0, 1), (1, 1)]), 1)
    with pytest.raises(DivisorNotPrincipal):
        FactoredFunction.from_pairs(F, [(0, 1), (0, -1)])


def test_json_divisor():
    f = FactoredFunction.from_json({"field": {"p": 2, "k": 2}, "divisor": [["w", 1], ["inf", -1]]})
    assert f.degree == 0
    assert FactoredFunction.from_json(f.to_json()) == f


def test_admissible_f3_four_points():
    F = GF(3)
    form = admissible_form([0, 1, 2, "inf"], F)
    assert [m for _, m in form.f.divisor] == [2, 1, 1, -4]
    assert form.data.raw_sum == 0


@pytest.mark.parametrize("p,k,points", [
    (2, 2, ["0", "1", "w", "inf"]),
    (2, 1, ["0", "1"]),
    (3, 1, ["0", "1"]),
    (5, 1, ["0", "1", "2", "3", "4", "inf"]),
    (3, 2, ["0", "1", "w", "w+1"]),
])
def test_admissible_forms_have_nontrivial_residues(p, k, points):
    F = GF(p, k)
    form = admissible_form(points, F)
    co = as_cokernel(F)
    assert all(m % p for _, m in form.f.divisor)
    assert sum(m for _, m in form.f.divisor) == 0
    assert all(not co.is_trivial_class(v) for v in form.data.raw.values())
    assert form.t not in co.image


@pytest.mark.parametrize("points", [["0", "1", "inf"], ["0", "1", "w", "w+1", "inf"]])
def test_odd_support_obstructed_in_char_two(points):
    F = GF(2, 2) if "w" in points else GF(2)
    with pytest.raises(Obstruction):
        admissible_form(points, F)


def test_admissible_input_errors():
    with pytest.raises(ValueError):
        admissible_form(["0"], GF(3))
    with pytest.raises(ValueError):
        admissible_form(["0", "0"], GF(3))
