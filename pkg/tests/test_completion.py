import random

import pytest

from orush.arith.poly import SparsePoly
from orush.arith.scalars import GF, QQ, ZZ
from orush.arith.series import TruncSeries
from orush.completion import (
    CERTIFICATE,
    FAILS_AS_EXPECTED,
    dim2_demo,
    dvr_content_chain,
    eisenstein_check,
    node_demo,
    xp_demo,
)
from orush.errors import InconclusiveError, PrecisionError, PreconditionError
from oracles import binom_half, monic_quadratic_has_root, naive_primorial

# ---------------------------------------------------------------- DVR content chain


def test_chain_for_y3_plus_y5():
    chain = dvr_content_chain(TruncSeries(QQ, [0, 0, 0, 1, 0, 1], 8), 8)
    assert chain.exponents == (1, 2, 3, 3, 3, 3, 3, 3)
    assert chain.order == 3 and chain.stabilization_index == 3
    assert chain.to_json()["content"] == "(y^3)"


def test_chain_unit_and_zero():
    chain = dvr_content_chain(TruncSeries(QQ, [1, 1], 6))
    assert chain.exponents == (0,) * 6 and chain.to_json()["content"] == "(1)"
    with pytest.raises(InconclusiveError):
        dvr_content_chain(TruncSeries(QQ, [0], 6))
    with pytest.raises(PrecisionError):
        dvr_content_chain(TruncSeries(QQ, [1], 4), 5)


def test_chain_matches_order_on_random_series():
    rng = random.Random(20)
    for _ in range(200):
        field = rng.choice((QQ, GF(2), GF(3)))
        T = rng.randint(1, 12)
        order = rng.randint(0, T + 2)
        coeffs = [0] * order + [rng.choice((1, 2, -1))] + [rng.randint(-3, 3) for _ in range(T)]
        g = TruncSeries(field, [field(c) for c in coeffs[:T]], T)
        true_order = next((i for i, c in enumerate(g.coeffs) if c), None)
        if true_order is None:
            with pytest.raises(InconclusiveError):
                dvr_content_chain(g)
            continue
        chain = dvr_content_chain(g)
        assert chain.exponents == tuple(min(true_order, t) for t in range(1, T + 1))
        assert all(a <= b for a, b in zip(chain.exponents, chain.exponents[1:]))


# ---------------------------------------------------------------- Eisenstein


def test_eisenstein_over_integers():
    x = SparsePoly.variable(ZZ)
    assert eisenstein_check(x**2 - 2, 2)
    assert eisenstein_check(x**3 + 3 * x + 3, 3)
    assert not eisenstein_check(x**2 - 1, 2)
    assert not eisenstein_check(x**2 - 4, 2)
    assert not eisenstein_check(2 * x**2 - 2, 2)
    for pi in (0, 1, -1):
        with pytest.raises(PreconditionError):
            eisenstein_check(x**2 - 2, pi)


def _bivariate(p, a, b):
    F = GF(p)
    terms = {(2, 0): 1}
    for j, c in enumerate(a):
        if c:
            terms[(1, j)] = c
    for j, c in enumerate(b):
        if c:
            terms[(0, j)] = c
    return SparsePoly(F, terms, ("x", "y"))


@pytest.mark.parametrize("p", [3, 5])
def test_eisenstein_implies_no_root_over_fp(p):
    rng = random.Random(p)
    F = GF(p)
    y = SparsePoly(F, {1: 1}, ("y",))
    seen = 0
    for _ in range(150):
        a = [rng.randrange(p) for _ in range(rng.randint(0, 3))]
        b = [rng.randrange(p) for _ in range(rng.randint(0, 4))]
        if rng.random() < 0.5:
            a = [0] + a
            b = [0, rng.randrange(1, p)] + b
        if eisenstein_check(_bivariate(p, a, b), y):
            seen += 1
            assert not monic_quadratic_has_root(a, b, p)
    assert seen > 10


@pytest.mark.parametrize("p", [3, 5])
def test_split_quadratics_are_never_eisenstein(p):
    rng = random.Random(100 + p)
    F = GF(p)
    y = SparsePoly(F, {1: 1}, ("y",))
    for _ in range(100):
        r1 = SparsePoly(F, {j: rng.randrange(p) for j in range(3)}, ("y",))
        r2 = SparsePoly(F, {j: rng.randrange(p) for j in range(3)}, ("y",))
        s, q = r1 + r2, r1 * r2
        terms = {(2, 0): 1}
        terms.update({(1, e): -c for e, c in s.terms.items()})
        terms.update({(0, e): c for e, c in q.terms.items()})
        f = SparsePoly(F, terms, ("x", "y"))
        assert not eisenstein_check(f, y)
        assert not eisenstein_check(f, y + 1)


def test_eisenstein_field_errors():
    F = GF(3)
    f = SparsePoly(F, {(2, 0): 1, (0, 1): 1}, ("x", "y"))
    with pytest.raises(PreconditionError):
        eisenstein_check(f, SparsePoly(F, {0: 2}, ("y",)))
    with pytest.raises(PreconditionError):
        eisenstein_check(f, SparsePoly(F, {}, ("y",)))
    with pytest.raises(PreconditionError):
        eisenstein_check(f, 3)


# ---------------------------------------------------------------- dim2 factorizations


def test_dim2_char_zero():
    rep = dim2_demo(32, 0)
    cert = rep.certificate
    assert rep.verdict == FAILS_AS_EXPECTED and rep.details["eisenstein_at_y+1"] is True
    assert cert.residual.is_zero() and cert.prec == 32
    for k in range(32):
        c = cert.root[k]
        assert c == binom_half(k)
        assert c.denominator & (c.denominator - 1) == 0
    assert cert.factors[0] * cert.factors[1] == cert.target


def test_dim2_char_two():
    rep = dim2_demo(16, 2)
    cert = rep.certificate
    assert rep.verdict == FAILS_AS_EXPECTED and rep.details["eisenstein_at_y+1"] is True
    assert cert.residual.is_zero() and cert.root**3 == TruncSeries(GF(2), [1, 1], 16)
    assert cert.target.degree() == 3 and sorted(f.degree() for f in cert.factors) == [1, 2]


def test_dim2_smallest_precision_and_errors():
    assert dim2_demo(2, 0).certificate.residual.is_zero()
    assert dim2_demo(2, 2).certificate.residual.is_zero()
    with pytest.raises(PreconditionError):
        dim2_demo(1)
    with pytest.raises(PreconditionError):
        dim2_demo(8, 3)


# ---------------------------------------------------------------- node


@pytest.mark.parametrize("T", [3, 12])
def test_node_branches(T):
    rep = node_demo(T, 6)
    assert rep.verdict == FAILS_AS_EXPECTED
    assert rep.certificate.residual.is_zero()
    assert rep.details["kernel_dimension"] == 0
    assert len(rep.details["basis"]) == 13


def test_node_odd_characteristic_and_errors():
    assert node_demo(8, 4, 3).details["kernel_dimension"] == 0
    with pytest.raises(PreconditionError):
        node_demo(8, 4, 2)
    with pytest.raises(PreconditionError):
        node_demo(2)


# ---------------------------------------------------------------- Z[x/p]


def test_xp_matches_primorial():
    rep = xp_demo(10)
    assert rep.details["intersection"] == 210 and rep.verdict == FAILS_AS_EXPECTED
    assert [w["p"] for w in rep.certificate["witnesses"]] == [2, 3, 5, 7]
    for N in range(2, 101):
        assert xp_demo(N).details["intersection"] == naive_primorial(N)
    with pytest.raises(PreconditionError):
        xp_demo(1)


def test_demo_reports_are_json_ready():
    import json

    for rep in (dim2_demo(6), dim2_demo(6, 2), node_demo(6, 3), xp_demo(12)):
        a = json.dumps(rep.to_json(), sort_keys=True)
        b = json.dumps(rep.to_json(), sort_keys=True)
        assert a == b and rep.verdict in (CERTIFICATE, FAILS_AS_EXPECTED)
