from __future__ import annotations

import itertools
from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given
from hypothesis import strategies as st

from aniso_bounds.csa.cyclotomic import (
    CyclotomicMatrix,
    cyclotomic_field,
    minimal_polynomial,
    minpoly_structure,
)
from aniso_bounds.errors import NotScalarPower

z = sp.Symbol("z")
CONDUCTORS = [1, 3, 4, 5, 7, 8, 12]


def _to_sympy(a):
    return sum(sp.Rational(c.numerator, c.denominator) * z ** i for i, c in enumerate(a))


def _from_sympy(K, expr):
    poly = sp.Poly(sp.rem(sp.expand(expr), sp.cyclotomic_poly(K.N, z), z), z)
    coeffs = poly.all_coeffs()[::-1]
    return K.reduce([Fraction(int(sp.fraction(c)[0]), int(sp.fraction(c)[1])) for c in coeffs])


def elements(N):
    K = cyclotomic_field(N)
    coeff = st.fractions(min_value=-3, max_value=3, max_denominator=3)
    return st.lists(coeff, min_size=K.degree, max_size=K.degree).map(K.reduce)


@given(st.sampled_from(CONDUCTORS).flatmap(lambda N: st.tuples(st.just(N), elements(N), elements(N))))
def test_arithmetic_against_sympy(data):
    N, a, b = data
    K = cyclotomic_field(N)
    assert K.mul(a, b) == _from_sympy(K, _to_sympy(a) * _to_sympy(b))
    assert K.add(a, b) == _from_sympy(K, _to_sympy(a) + _to_sympy(b))
    if not K.is_zero(a):
        assert K.mul(a, K.inv(a)) == K.one
        assert K.mul(K.div(b, a), a) == b


@pytest.mark.parametrize("N", CONDUCTORS + [24])
def test_zeta_has_order_n(N):
    K = cyclotomic_field(N)
    x, k = K.zeta(), 1
    while x != K.one:
        x = K.mul(x, K.zeta())
        k += 1
    assert k == N


@given(st.sampled_from(CONDUCTORS).flatmap(elements))
def test_format_parse(a):
    K = next(cyclotomic_field(N) for N in CONDUCTORS if cyclotomic_field(N).degree == len(a))
    assert K.parse(K.format(a)) == a


def _rational_minpoly_oracle(rows):
    """Least monic divisor of the characteristic polynomial that annihilates the matrix."""
    x = sp.Symbol("x")
    M = sp.Matrix(rows)
    n = M.shape[0]
    _, factors = sp.factor_list(M.charpoly(x).as_expr(), x)
    best = None
    for exps in itertools.product(*(range(1, e + 1) for _, e in factors)):
        f = sp.prod([g ** k for (g, _), k in zip(factors, exps)])
        P = sp.Poly(f, x)
        val = sp.zeros(n, n)
        for c in P.all_coeffs():
            val = val * M + c * sp.eye(n)
        if val == sp.zeros(n, n) and (best is None or P.degree() < best.degree()):
            best = P
    return [Fraction(int(sp.fraction(c)[0]), int(sp.fraction(c)[1])) for c in best.all_coeffs()[::-1]]


def _signed_permutations(n):
    for perm in itertools.permutations(range(n)):
        for signs in itertools.product((1, -1), repeat=n):
            yield [[signs[i] if perm[i] == j else 0 for j in range(n)] for i in range(n)]


@pytest.mark.parametrize("rows", list(_signed_permutations(3))[::3] + [[[0, -1], [1, -1]], [[2, 0], [0, 2]]])
def test_minpoly_over_q_against_sympy(rows):
    M = CyclotomicMatrix.from_rows(1, rows)
    assert [c[0] for c in minimal_polynomial(M)] == _rational_minpoly_oracle(rows)


@given(st.sampled_from(list(_signed_permutations(3))), st.sampled_from([1, 3, 4, 8, 12]))
def test_factor_product_is_minpoly(rows, N):
    rep = minpoly_structure(CyclotomicMatrix.from_rows(N, rows))
    assert rep.product_ok
    assert rep.m <= 8


def test_rotation_over_q_and_gaussian_field():
    rot = [[0, -1], [1, 0]]
    over_q = minpoly_structure(CyclotomicMatrix.from_rows(1, rot))
    assert over_q.r == 2 and over_q.may_split_further
    assert [cyclotomic_field(1).format(b) for b in over_q.constants] == ["-1"]
    over_i = minpoly_structure(CyclotomicMatrix.from_rows(4, rot))
    assert over_i.r == 1 and not over_i.may_split_further
    K = cyclotomic_field(4)
    assert sorted(K.format(b) for b in over_i.constants) == sorted(["z", "-z"])


def test_order_three_shape_depends_on_field():
    rows = [[0, -1], [1, -1]]
    assert not minpoly_structure(CyclotomicMatrix.from_rows(1, rows)).shape_ok
    assert minpoly_structure(CyclotomicMatrix.from_rows(3, rows)).shape_ok


def test_scalar_matrix():
    rep = minpoly_structure(CyclotomicMatrix.from_rows(1, [[2, 0], [0, 2]]))
    assert rep.m == 1 and rep.r == 1 and rep.shape_ok


def test_unipotent_is_rejected():
    with pytest.raises(NotScalarPower):
        minpoly_structure(CyclotomicMatrix.from_rows(1, [[1, 1], [0, 1]]))


def test_input_limits():
    with pytest.raises(ValueError):
        cyclotomic_field(25)
    with pytest.raises(ValueError):
        CyclotomicMatrix.from_rows(1, [[1] * 4] * 4)
