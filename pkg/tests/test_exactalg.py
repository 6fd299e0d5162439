from __future__ import annotations

import itertools
import math
from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given
from hypothesis import strategies as st
from sympy.matrices.normalforms import smith_normal_form

from aniso_bounds.errors import IntegerOverflow, NotInvertible
from aniso_bounds.exactalg import (
    GF,
    QQ,
    IntMatrix,
    charpoly,
    cyclotomic,
    field_from_json,
    fixed_module,
    hermite_rows,
    integer_kernel,
    kernel_mod,
    matrix_order,
    smallest_irreducible,
    smith_rect,
    snf,
)

FIELDS = [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (5, 1), (7, 1), (2, 4)]


def square(n, lo=-4, hi=4):
    row = st.lists(st.integers(lo, hi), min_size=n, max_size=n)
    return st.lists(row, min_size=n, max_size=n)


# --- finite fields --------------------------------------------------------

@pytest.mark.parametrize("p,k", FIELDS)
def test_no_zero_divisors_by_full_table(p, k):
    F = GF(p, k)
    nonzero = [a for a in F.elements() if a]
    assert F.q == p ** k == len(nonzero) + 1
    for a in nonzero:
        prods = {F.mul(a, b) for b in nonzero}
        assert 0 not in prods and len(prods) == len(nonzero)


@pytest.mark.parametrize("p,k", FIELDS)
def test_multiplicative_group_is_cyclic(p, k):
    F = GF(p, k)
    orders = []
    for a in range(1, F.q):
        e, x = 1, a
        while x != 1:
            x = F.mul(x, a)
            e += 1
        orders.append(e)
    assert max(orders) == F.q - 1


@pytest.mark.parametrize("p,k", [(2, 2), (2, 3), (3, 2), (5, 2), (2, 4), (3, 3)])
def test_modulus_has_no_proper_factor(p, k):
    f = sp.Poly(list(reversed(smallest_irreducible(p, k))), sp.Symbol("w"), modulus=p)
    assert f.degree() == k and f.is_irreducible


@given(st.sampled_from(FIELDS), st.data())
def test_field_axioms(pk, data):
    F = GF(*pk)
    a, b, c = (data.draw(st.integers(0, F.q - 1)) for _ in range(3))
    assert F.add(a, F.add(b, c)) == F.add(F.add(a, b), c)
    assert F.mul(a, F.mul(b, c)) == F.mul(F.mul(a, b), c)
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    assert F.add(a, F.neg(a)) == 0
    assert F.sub(F.add(a, b), b) == a
    assert F.frobenius(F.add(a, b)) == F.add(F.frobenius(a), F.frobenius(b))
    if a:
        assert F.mul(a, F.inv(a)) == 1
        assert F.pow(a, F.q - 1) == 1


@given(st.sampled_from(FIELDS), st.data())
def test_format_parse_round_trip(pk, data):
    F = GF(*pk)
    a = data.draw(st.integers(0, F.q - 1))
    assert F.parse(F.format(a)) == a


def test_field_json_and_rationals():
    assert field_from_json({"p": 2, "k": 2}) == GF(2, 2)
    assert field_from_json("Q") is QQ
    with pytest.raises(ValueError):
        field_from_json("R")
    assert QQ.mul(Fraction(2, 3), QQ.inv(Fraction(2, 3))) == 1


# --- integer matrices -----------------------------------------------------

@given(square(3))
def test_det_against_sympy(rows):
    assert IntMatrix(rows).det() == sp.Matrix(rows).det()


@given(square(3))
def test_charpoly_against_sympy(rows):
    x = sp.Symbol("x")
    expected = sp.Poly(sp.Matrix(rows).charpoly(x).as_expr(), x).all_coeffs()[::-1]
    assert charpoly(IntMatrix(rows)) == [int(c) for c in expected]


@pytest.mark.parametrize("d", range(1, 31))
def test_cyclotomic_against_sympy(d):
    x = sp.Symbol("x")
    expected = sp.Poly(sp.cyclotomic_poly(d, x), x).all_coeffs()[::-1]
    assert list(cyclotomic(d)) == [int(c) for c in expected]


def test_overflow_is_checked():
    big = 1 << 126
    with pytest.raises(IntegerOverflow):
        IntMatrix(((big, 0), (0, 1))) @ IntMatrix(((4, 0), (0, 1)))
    with pytest.raises(IntegerOverflow):
        IntMatrix(((1 << 127, 0), (0, 1)))


def test_inverse_requires_unimodular():
    A = IntMatrix(((2, 1), (1, 1)))
    assert (A @ A.inverse()).is_identity()
    with pytest.raises(NotInvertible):
        IntMatrix(((2, 0), (0, 1))).inverse()


def _order_by_powers(A, limit=30):
    P = A
    for k in range(1, limit + 1):
        if P.is_identity():
            return k
        P = P @ A
    return None


def _unimodular(n, bound=1):
    for flat in itertools.product(range(-bound, bound + 1), repeat=n * n):
        A = IntMatrix(tuple(tuple(flat[i * n:(i + 1) * n]) for i in range(n)))
        if A.det() in (1, -1):
            yield A


def test_matrix_order_matches_powering_on_gl2_box():
    seen = set()
    for A in _unimodular(2, 2):
        k = matrix_order(A)
        assert k == _order_by_powers(A)
        seen.add(k)
    assert seen == {1, 2, 3, 4, 6, None}


def test_matrix_order_unipotent_is_infinite():
    assert matrix_order(IntMatrix(((1, 1), (0, 1)))) is None
    assert matrix_order(IntMatrix(((-1, 1), (0, -1)))) is None


# --- Smith and Hermite forms ----------------------------------------------

@given(st.integers(1, 4).flatmap(lambda n: square(n, -6, 6)))
def test_snf_decomposition(rows):
    A = IntMatrix(rows)
    d = snf(A)
    assert d.U @ A @ d.V == d.S
    assert abs(d.U.det()) == 1 and abs(d.V.det()) == 1
    diag = d.diagonal
    assert all(d.S[i, j] == 0 for i in range(A.n) for j in range(A.n) if i != j)
    for a, b in zip(diag, diag[1:]):
        assert (b == 0) if a == 0 else (b % a == 0)
    assert all(x >= 0 for x in diag)
    expected = smith_normal_form(sp.Matrix(rows), domain=sp.ZZ)
    assert sorted(diag) == sorted(abs(int(expected[i, i])) for i in range(A.n))


@given(st.integers(1, 3), st.integers(1, 4), st.data())
def test_integer_kernel(rows_n, n, data):
    M = data.draw(st.lists(st.lists(st.integers(-4, 4), min_size=n, max_size=n),
                           min_size=rows_n, max_size=rows_n))
    K = integer_kernel(M, n)
    assert len(K) == n - sp.Matrix(M).rank()
    for k in K:
        assert all(sum(a * b for a, b in zip(r, k)) == 0 for r in M)
    if K:
        # saturated: the gcd of the maximal minors is 1
        minors = sp.Matrix(K)
        g = 0
        for cols in itertools.combinations(range(n), len(K)):
            g = math.gcd(g, int(minors[:, list(cols)].det()))
        assert g == 1


def test_hermite_is_canonical():
    a = hermite_rows([[2, 4], [0, 3]])
    b = hermite_rows([[2, 7], [2, 4]])
    assert a == b


def test_smith_rect_non_square():
    S, U, V = smith_rect([[2, 4, 4], [-6, 6, 12]])
    assert S[0][0] == 2 and S[1][1] == 6


# --- fixed classes mod d --------------------------------------------------

def _brute_fixed(gens, d, n):
    out = []
    for v in itertools.product(range(d), repeat=n):
        if all(tuple(x % d for x in (g @ v)) == v for g in gens):
            out.append(v)
    return out


def _brute_order(v, d):
    return next(m for m in range(1, d + 1) if all(m * x % d == 0 for x in v))


@given(st.lists(st.sampled_from(list(_unimodular(2, 1))), min_size=1, max_size=2),
       st.integers(2, 14))
def test_fixed_module_counts_by_enumeration(gens, d):
    fm = fixed_module(gens, d, 2)
    brute = _brute_fixed(gens, d, 2)
    assert fm.size == len(brute)
    assert sorted(set(fm.elements())) == sorted(brute)
    for e in range(1, d + 1):
        if d % e == 0:
            assert fm.count_exact(e) == sum(1 for v in brute if _brute_order(v, d) == e)
    assert kernel_mod(gens, d, 2) == sorted((v, _brute_order(v, d)) for v in brute)


def test_fixed_module_rank3():
    g = IntMatrix(((0, 0, 1), (1, 0, 0), (0, 1, 0)))
    for d in (2, 3, 4, 6):
        assert fixed_module([g], d, 3).size == len(_brute_fixed([g], d, 3))
