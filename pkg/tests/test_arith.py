import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from orush.arith.integers import (
    factorize,
    is_prime,
    is_squarefree,
    lcm,
    primes_up_to,
    primorial,
    radical,
    sqrt_mod,
    valuation,
    xgcd,
)
from orush.arith.linalg import integer_echelon, integer_kernel, rational_kernel
from orush.arith.poly import SparsePoly, poly_mul
from orush.arith.scalars import GF, QQ, ZZ, IntegersMod, PrimeFieldElem, QuadElem, QuadraticOrder, format_fraction, parse_fraction
from orush.errors import BudgetExceededError, NonUnitError, PreconditionError, RingMismatchError
from oracles import naive_primes, naive_primorial


# ---------------------------------------------------------------- integers


def test_primes_match_naive_sieve():
    assert primes_up_to(200) == naive_primes(200)
    assert [n for n in range(-5, 60) if is_prime(n)] == naive_primes(59)


@given(st.integers(min_value=1, max_value=10**6))
def test_factorize_round_trip(n):
    f = factorize(n)
    prod = 1
    for p, e in f.items():
        assert is_prime(p)
        prod *= p**e
    assert prod == n


def test_factorize_sign_and_errors():
    assert factorize(-12) == {2: 2, 3: 1}
    with pytest.raises(PreconditionError):
        factorize(0)
    with pytest.raises(BudgetExceededError):
        factorize(1000003 * 1000033, budget=100)


def test_valuation_radical_squarefree():
    assert valuation(72, 2) == 3 and valuation(72, 3) == 2 and valuation(7, 2) == 0
    assert valuation(0, 5) == float("inf")
    assert radical(72) == 6 and radical(0) == 0
    assert is_squarefree(30) and not is_squarefree(12) and not is_squarefree(0)


@given(st.integers(-10**6, 10**6), st.integers(-10**6, 10**6))
def test_xgcd_bezout(a, b):
    g, s, t = xgcd(a, b)
    assert g >= 0 and s * a + t * b == g
    if a or b:
        assert a % g == 0 and b % g == 0


def test_lcm_and_primorial():
    assert lcm(4, 6) == 12 and lcm(0, 5) == 0
    for n in range(2, 101):
        assert primorial(n) == naive_primorial(n)


def test_sqrt_mod():
    for p in (3, 5, 7, 13, 29):
        for a in range(p):
            r = sqrt_mod(a, p)
            squares = {x * x % p for x in range(p)}
            assert (r is not None) == (a in squares)
            if r is not None:
                assert r * r % p == a


# ---------------------------------------------------------------- scalars


def test_fraction_io():
    assert parse_fraction("3/6") == Fraction(1, 2)
    assert parse_fraction("-7") == -7
    assert format_fraction(5) == "5/1"
    with pytest.raises(PreconditionError):
        parse_fraction("1/0")
    with pytest.raises(PreconditionError):
        parse_fraction("abc")


def test_prime_field_arithmetic():
    F = GF(7)
    a, b = F(3), F(5)
    assert a + b == 1 and a * b == 1 and a - b == 5
    assert a / b == a * b.inverse() and (a**6) == 1
    assert F(Fraction(1, 2)) * 2 == 1
    with pytest.raises(NonUnitError):
        F(0).inverse()
    with pytest.raises(RingMismatchError):
        F(1) + GF(5)(1)
    with pytest.raises(PreconditionError):
        PrimeFieldElem(1, 9)


@given(st.integers(-50, 50), st.integers(-50, 50), st.integers(-50, 50), st.integers(-50, 50))
def test_quad_norm_multiplicative(a, b, c, e):
    for d in (-5, -3, 2, 3):
        x, y = QuadElem(a, b, d), QuadElem(c, e, d)
        assert (x * y).norm() == x.norm() * y.norm()
        assert x * x.conjugate() == x.norm()


def test_quadratic_order_tags():
    R = QuadraticOrder(-5)
    assert R.w * R.w == -5 and R.is_maximal
    assert not QuadraticOrder(-3).is_maximal
    assert R.parse("1-w") == QuadElem(1, -1, -5)
    assert R.format(QuadElem(2, -3, -5)) == "2-3w"
    with pytest.raises(PreconditionError):
        QuadraticOrder(12)
    with pytest.raises(PreconditionError):
        QuadraticOrder(1)
    with pytest.raises(RingMismatchError):
        R(Fraction(1, 2))
    Zm = IntegersMod(12)
    assert Zm(-1) == 11 and Zm.ideal([8]).gen == 4
    assert QQ(3) == Fraction(3)


# ---------------------------------------------------------------- linear algebra


def _matmul(U, A):
    return [[sum(U[i][k] * A[k][j] for k in range(len(A))) for j in range(len(A[0]))] for i in range(len(U))]


@settings(max_examples=60)
@given(st.lists(st.lists(st.integers(-30, 30), min_size=3, max_size=3), min_size=1, max_size=5))
def test_integer_echelon_is_unimodular_transform(rows):
    H, U = integer_echelon(rows, 3)
    assert _matmul(U, rows) == H
    for u in integer_kernel(rows):
        assert all(sum(u[i] * rows[i][j] for i in range(len(rows))) == 0 for j in range(3))


def test_integer_kernel_small():
    assert integer_kernel([[2, 0], [0, 3], [2, 3]]) in ([[1, 1, -1]], [[-1, -1, 1]])
    assert integer_kernel([[1, 0], [0, 1]]) == []


def test_rational_kernel_over_q_and_fp():
    cols = [[1, 0], [0, 1], [1, 1]]
    (v,) = rational_kernel(cols, 2)
    assert [v[0] + v[2], v[1] + v[2]] == [0, 0] and v[2] == 1
    F = GF(2)
    (v,) = rational_kernel([[1, 1], [1, 1]], 2, F)
    assert v[0] + v[1] == 0


# ---------------------------------------------------------------- polynomials


def test_poly_basic_arithmetic():
    x = SparsePoly.variable(ZZ)
    f = 3 * x**2 - x + 1
    assert f.degree() == 2 and f.leading_coefficient() == 3
    assert f.coeff(1) == -1 and f.coeff(7) == 0
    assert f(2) == 11
    assert repr(f) == "3*x^2 - x + 1"
    assert (f - f).is_zero() and (f - f).degree() == -1
    assert f.derivative() == 6 * x - 1


def test_poly_division_and_mismatch():
    x = SparsePoly.variable(QQ)
    f = x**3 - 1
    q, r = f.divmod(x - 1)
    assert r.is_zero() and q == x**2 + x + 1
    assert (x - 1).divides(f)
    with pytest.raises(RingMismatchError):
        poly_mul(SparsePoly.variable(ZZ), SparsePoly.variable(GF(3)))
    with pytest.raises(NonUnitError):
        SparsePoly.variable(ZZ).divmod(SparsePoly(ZZ, {1: 2}))


@settings(max_examples=80)
@given(st.data())
def test_poly_ring_axioms(data):
    rng = random.Random(data.draw(st.integers(0, 10**6)))

    def rand():
        return SparsePoly(ZZ, {rng.randint(0, 5): rng.randint(-9, 9) for _ in range(4)})

    f, g, h = rand(), rand(), rand()
    assert f * (g + h) == f * g + f * h
    assert (f * g) * h == f * (g * h)
    assert f * g == g * f
    for t in range(-3, 4):
        assert (f * g)(t) == f(t) * g(t)


def test_poly_bivariate_and_json():
    f = SparsePoly(QQ, {(2, 0): 1, (0, 3): -1, (0, 2): Fraction(1, 2)}, ("x", "y"))
    assert f.degree() == 3 and f.degree("x") == 2
    cols = f.coefficients_in("x")
    assert cols[2] == SparsePoly.constant(QQ, 1, ("y",))
    back = SparsePoly.from_json(f.to_json(), QQ, ("x", "y"))
    assert back == f
    g = SparsePoly(ZZ, {0: 4, 2: -1})
    assert g.to_json() == [[0, "4/1"], [2, "-1/1"]]
    assert SparsePoly.from_json(g.to_json()) == g
    with pytest.raises(PreconditionError):
        SparsePoly.from_json({"bad": 1})
