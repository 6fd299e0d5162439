from __future__ import annotations

import itertools
from fractions import Fraction

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from aniso_bounds.errors import CharTwo, IsotropicAxis
from aniso_bounds.exactalg import GF, QQ
from aniso_bounds.quadform import (
    QuadForm,
    arf_canonicalize,
    arf_equivalence,
    bilinear,
    canonical_form,
    equivalent_brute_force,
    is_nondegenerate,
    order_p_scan,
    orthogonal_group,
    reflection,
    represents_zero,
)


def binary(F, a, b, c):
    return QuadForm(F, 2, {(0, 0): a, (0, 1): b, (1, 1): c})


def all_binary(F):
    return [binary(F, a, b, c) for a, b, c in itertools.product(F.elements(), repeat=3)]


def _isotropic_brute(q):
    F = q.field
    return any(q(v) == 0 for v in itertools.product(F.elements(), repeat=q.dim) if any(v))


def _apply(F, M, v):
    n = len(v)
    out = []
    for i in range(n):
        acc = F.zero
        for j in range(n):
            acc = F.add(acc, F.mul(M[i][j], v[j]))
        out.append(acc)
    return tuple(out)


def _matmul(F, A, B):
    n = len(A)
    return [[_dot(F, A[i], [B[k][j] for k in range(n)]) for j in range(n)] for i in range(n)]


def _dot(F, a, b):
    acc = F.zero
    for x, y in zip(a, b):
        acc = F.add(acc, F.mul(x, y))
    return acc


# --- basics ---------------------------------------------------------------

def test_json_round_trip_and_bilinear():
    q = QuadForm.from_json({"field": {"p": 5}, "dim": 3, "coeffs": {"11": 1, "12": 3, "33": 4}})
    assert QuadForm.from_json(q.to_json()) == q
    B = bilinear(q)
    assert B == [[2, 3, 0], [3, 0, 0], [0, 0, 3]]
    assert all(B[i][j] == B[j][i] for i in range(3) for j in range(3))


def test_invalid_coefficients():
    with pytest.raises(ValueError):
        QuadForm(GF(3), 2, {(1, 0): 1})
    with pytest.raises(ValueError):
        QuadForm(GF(3), 2, {(0, 0): 3})
    with pytest.raises(ValueError):
        QuadForm(GF(3), 7, {})


@pytest.mark.parametrize("p", [3, 5, 7])
def test_sum_of_two_squares(p):
    q = binary(GF(p), 1, 0, 1)
    assert (represents_zero(q) is None) == (p % 4 == 3)


@given(st.sampled_from([(2, 1), (3, 1), (2, 2), (5, 1)]), st.data())
def test_isotropy_matches_enumeration(pk, data):
    F = GF(*pk)
    dim = data.draw(st.integers(1, 3))
    coeffs = {(i, j): data.draw(st.integers(0, F.q - 1)) for i in range(dim) for j in range(i, dim)}
    q = QuadForm(F, dim, coeffs)
    v = represents_zero(q)
    assert (v is not None) == _isotropic_brute(q)
    if v is not None:
        assert q(v) == 0 and any(v)


@given(st.sampled_from([(2, 1), (3, 1), (5, 1), (2, 2)]), st.data())
def test_three_variables_always_isotropic(pk, data):
    F = GF(*pk)
    coeffs = {(i, j): data.draw(st.integers(0, F.q - 1)) for i in range(3) for j in range(i, 3)}
    assert represents_zero(QuadForm(F, 3, coeffs)) is not None


def test_rational_forms_refuse_exhaustive_search():
    with pytest.raises(ValueError):
        represents_zero(QuadForm(QQ, 2, {(0, 0): 1, (1, 1): 1}))


# --- reflections ----------------------------------------------------------

rationals = st.fractions(min_value=-5, max_value=5, max_denominator=4)


@given(st.integers(2, 4).flatmap(lambda n: st.tuples(
    st.just(n),
    st.lists(rationals, min_size=n * (n + 1) // 2, max_size=n * (n + 1) // 2),
    st.lists(rationals, min_size=n, max_size=n))))
def test_reflection_identities_over_q(data):
    n, cs, v = data
    pairs = [(i, j) for i in range(n) for j in range(i, n)]
    q = QuadForm(QQ, n, dict(zip(pairs, cs)))
    assume(q(v) != 0)
    f = reflection(q, v)
    ident = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    assert _matmul(QQ, f, f) == ident
    assert q.transform(f) == q
    assert _apply(QQ, f, v) == tuple(-x for x in v)


@given(st.data())
def test_reflection_identities_over_f25(data):
    F = GF(5, 2)
    n = data.draw(st.integers(2, 3))
    coeffs = {(i, j): data.draw(st.integers(0, F.q - 1)) for i in range(n) for j in range(i, n)}
    q = QuadForm(F, n, coeffs)
    v = tuple(data.draw(st.integers(0, F.q - 1)) for _ in range(n))
    assume(q(v) != 0)
    f = reflection(q, v)
    ident = [[int(i == j) for j in range(n)] for i in range(n)]
    assert _matmul(F, f, f) == ident
    assert q.transform(f) == q
    assert _apply(F, f, v) == tuple(F.neg(x) for x in v)


def test_reflection_errors():
    with pytest.raises(IsotropicAxis):
        reflection(binary(GF(5), 1, 0, 1), (1, 2))
    with pytest.raises(CharTwo):
        reflection(binary(GF(2), 1, 1, 1), (1, 0))


# --- Arf invariant --------------------------------------------------------

def _brute_classes(forms):
    classes = []
    for q in forms:
        for cls in classes:
            if equivalent_brute_force(cls[0], q):
                cls.append(q)
                break
        else:
            classes.append([q])
    return classes


@pytest.mark.parametrize("k", [1, 2])
def test_arf_classes_match_brute_force(k):
    F = GF(2, k)
    forms = [q for q in all_binary(F) if is_nondegenerate(q)]
    classes = _brute_classes(forms)
    assert len(classes) == 2
    for cls in classes:
        assert len({arf_canonicalize(q).arf_class for q in cls}) == 1
    assert arf_canonicalize(classes[0][0]).arf_class != arf_canonicalize(classes[1][0]).arf_class


@given(st.sampled_from([(2, 1), (2, 2), (2, 3)]), st.data())
def test_arf_round_trip(pk, data):
    F = GF(*pk)
    n = data.draw(st.sampled_from([2, 4]))
    coeffs = {(i, j): data.draw(st.integers(0, F.q - 1)) for i in range(n) for j in range(i, n)}
    q = QuadForm(F, n, coeffs)
    assume(is_nondegenerate(q))
    res = arf_canonicalize(q)
    assert q.transform(res.basis_change) == canonical_form(F, n, res.a)
    assert res.arf_class == F.coset_rep(res.a)


def test_dim4_f2_all_isotropic():
    F = GF(2)
    pairs = [(i, j) for i in range(4) for j in range(i, 4)]
    count = 0
    for cs in itertools.product((0, 1), repeat=len(pairs)):
        q = QuadForm(F, 4, dict(zip(pairs, cs)))
        if is_nondegenerate(q):
            count += 1
            assert represents_zero(q) is not None
    assert count == 448


def test_arf_equivalence_api():
    F = GF(2)
    hyperbolic = binary(F, 0, 1, 0)
    anisotropic = binary(F, 1, 1, 1)
    assert not arf_equivalence(hyperbolic, anisotropic)
    assert arf_equivalence(hyperbolic, binary(F, 1, 1, 0))


# --- orthogonal groups ----------------------------------------------------

@pytest.mark.parametrize("p", [3, 5])
def test_anisotropic_binary_orthogonal_groups(p):
    F = GF(p)
    forms = [q for q in all_binary(F) if is_nondegenerate(q) and represents_zero(q) is None]
    assert forms
    for q in forms:
        rep = order_p_scan(q)
        # the anisotropic binary orthogonal group is dihedral of order 2(p + 1)
        assert rep.group_order == len(orthogonal_group(q)) == 2 * (p + 1)
        assert not rep.has_order_p


def test_order_p_scan_rejects_isotropic():
    with pytest.raises(ValueError):
        order_p_scan(binary(GF(5), 1, 0, 1))
