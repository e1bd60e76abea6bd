import random
from fractions import Fraction

import pytest

from orush.arith.poly import SparsePoly
from orush.arith.scalars import QQ, ZZ, IntegersMod, QuadraticOrder
from orush.checkers import (
    FAILS,
    HOLDS_ON_SAMPLES,
    HOLDS_PROVEN,
    INCONCLUSIVE,
    StackedAlgebra,
    dm_exponent,
    dvr_base_check,
    gaussian_check,
    gaussian_sample,
    power_content_check,
    power_content_transitivity_check,
    prime_extension_check,
    prop46_condition_check,
    reverify,
    sample_pairs,
    weak_content_check,
    weak_content_sample,
)
from orush.content import MonomialQuotientAlgebra as Alg
from orush.content import content
from orush.errors import ExponentNotFoundError, PreconditionError
from orush.ideals import IdealZ, primes_above

R3 = QuadraticOrder(-3)
R5 = QuadraticOrder(-5)
ZX = Alg(ZZ)
ZXY_NODE = Alg(ZZ, ("x", "y"), ((1, 1),))
ZX_DUAL = Alg(ZZ, ("x",), ((2,),))


def nongaussian_pair():
    A = Alg(R3)
    x, w = A.var("x"), A.scalar(R3.w)
    return (1 + w) + 2 * x, (1 - w) + 2 * x


# ---------------------------------------------------------------- Gaussian and DM


def test_gaussian_failure_over_nonmaximal_order():
    f, g = nongaussian_pair()
    rep = gaussian_check(f, g)
    assert rep.verdict == FAILS
    assert rep.witness["c(fg)"].hnf == (4, 0, 4) and rep.witness["c(f)c(g)"].hnf == (4, 2, 2)
    assert rep.witness["c(fg)"].norm() == 16 and rep.witness["c(f)c(g)"].norm() == 8
    assert rep.witness["c(f)c(g)"].contains(rep.witness["c(fg)"])
    assert reverify(rep)


def test_hand_expansion_of_product():
    f, g = nongaussian_pair()
    x = f.algebra.var("x")
    assert f * g == 4 + 4 * x + 4 * x**2


def test_gaussian_trivial_and_sampled():
    A = Alg(R5)
    g = A.random_element(random.Random(0), 10, 4)
    assert gaussian_check(A.one, g).verdict == HOLDS_PROVEN
    rep = gaussian_sample(A, samples=100, seed=3)
    assert rep.verdict == HOLDS_ON_SAMPLES and rep.budget == 100 and rep.seed == 3


def test_dm_exponent_examples():
    f, g = nongaussian_pair()
    res = dm_exponent(f, g)
    assert res.n == 2 and res.ideal.hnf == (8, 4, 4) and res.cap == 3
    cf, cg, cfg = content(f).ideal, content(g).ideal, content(f * g).ideal
    assert cf**2 * cg == cf * cfg and cf * cg != cfg
    x = ZX.var("x")
    assert dm_exponent(2 * x + 3, 5 * x + 7).n == 1
    assert dm_exponent(ZX.scalar(2), ZX.scalar(2)).n == 1
    with pytest.raises(ExponentNotFoundError):
        dm_exponent(f, g, cap=1)


def test_sampled_implications_gaussian_dm_weak():
    for A in (Alg(ZZ), Alg(R5), Alg(ZZ, ("x", "y"))):
        for f, g in sample_pairs(A, 60, 9, 8, 3):
            n = dm_exponent(f, g).n
            if gaussian_check(f, g).verdict == HOLDS_PROVEN:
                assert n == 1
            if n == 1:
                assert weak_content_check(f, g).verdict == HOLDS_PROVEN
            assert n <= max(g.degree(), 0) + 1


def test_monomial_quotients_need_not_have_a_dm_exponent():
    x, y = ZXY_NODE.var("x"), ZXY_NODE.var("y")
    with pytest.raises(ExponentNotFoundError):
        dm_exponent(2 * x + 3 * y, 3 * x + 2 * y, cap=6)
    for f, g in sample_pairs(ZXY_NODE, 40, 9, 8, 3):
        if gaussian_check(f, g).verdict == HOLDS_PROVEN:
            assert weak_content_check(f, g).verdict == HOLDS_PROVEN


# ---------------------------------------------------------------- weak content and prime extension


def test_weak_content_examples():
    x, y = ZXY_NODE.var("x"), ZXY_NODE.var("y")
    rep = weak_content_check(x, y)
    assert rep.verdict == FAILS and rep.witness["sqrt(c(fg))"] == IdealZ(0) and rep.witness["sqrt(c(f)c(g))"] == IdealZ(1)
    assert reverify(rep)
    assert weak_content_check(ZXY_NODE.zero, x + 3).verdict == HOLDS_PROVEN
    assert weak_content_sample(ZX, samples=200, seed=1).verdict == HOLDS_ON_SAMPLES


def test_prime_extension_examples():
    assert prime_extension_check(IdealZ(5), ZX).verdict == HOLDS_PROVEN
    rep = prime_extension_check(IdealZ(2), ZXY_NODE)
    assert rep.verdict == FAILS and (str(rep.witness["u"]), str(rep.witness["v"])) == ("x", "y")
    assert reverify(rep)
    rep = prime_extension_check(IdealZ(3), Alg(ZZ, ("x",), ((2,),)))
    assert (str(rep.witness["u"]), str(rep.witness["v"])) == ("x", "x") and reverify(rep)
    assert prime_extension_check(IdealZ(3), Alg(ZZ, ("x", "y"), ((1, 0),))).verdict == HOLDS_PROVEN
    P = primes_above(3, -5)[0]
    assert prime_extension_check(P, Alg(R5)).verdict == HOLDS_PROVEN
    with pytest.raises(PreconditionError):
        prime_extension_check(IdealZ(6), ZX)
    with pytest.raises(PreconditionError):
        prime_extension_check(IdealZ(2), Alg(R5))


def test_prime_extension_everywhere_implies_weak_content_on_samples():
    for A in (ZX, Alg(ZZ, ("x", "y"), ((1, 0),)), Alg(R5)):
        primes = [IdealZ(p) for p in (2, 3, 5, 7)] if A.base == ZZ else primes_above(2, -5) + primes_above(3, -5)
        if all(prime_extension_check(P, A).verdict == HOLDS_PROVEN for P in primes):
            assert weak_content_sample(A, samples=60, seed=2, coeff_bound=10, degree_bound=3).holds


# ---------------------------------------------------------------- power content


def test_power_content_examples():
    rep = power_content_check(ZX_DUAL)
    assert rep.verdict == FAILS
    assert str(rep.witness["f"]) == "x" and rep.witness["n"] == 2 and rep.witness["I"] == IdealZ(0)
    assert reverify(rep)
    assert power_content_check(ZXY_NODE).verdict == HOLDS_PROVEN
    assert power_content_check(ZX).verdict == HOLDS_PROVEN


@pytest.mark.parametrize(
    "algebra",
    [
        ZX,
        ZX_DUAL,
        ZXY_NODE,
        Alg(ZZ, ("x", "y"), ((2, 1),)),
        Alg(ZZ, ("x", "y"), ((1, 1), (0, 3))),
        Alg(ZZ, ("x",), ((3,),)),
        Alg(R5, ("x",), ((2,),)),
        Alg(R5, ("x", "y"), ((1, 1),)),
        Alg(IntegersMod(12), ("x",)),
        Alg(IntegersMod(12), ("x",), ((2,),)),
    ],
    ids=str,
)
def test_structural_decision_agrees_with_sampling(algebra):
    rep = power_content_check(algebra, samples=200, seed=0)
    assert rep.details["samples_agree"], rep.details
    if rep.verdict == FAILS:
        assert reverify(rep)


def test_power_content_report_is_deterministic():
    a = power_content_check(ZX_DUAL, samples=50, seed=42).to_json()
    b = power_content_check(ZX_DUAL, samples=50, seed=42).to_json()
    assert a == b
    assert set(a) >= {"property", "verdict", "witness", "seed", "budget"}


def test_transitivity():
    rep = power_content_transitivity_check(StackedAlgebra(ZX, ("y",), ((1, 1),)))
    assert rep.verdict == HOLDS_PROVEN and rep.details["conclusion_composite"] == HOLDS_PROVEN
    assert rep.details["premise_A"] == HOLDS_PROVEN
    rep = power_content_transitivity_check(StackedAlgebra(ZX_DUAL, ("y",)))
    assert rep.verdict == HOLDS_PROVEN and rep.details.get("vacuous")
    rep = power_content_transitivity_check(StackedAlgebra(ZX, ("y",)))
    assert rep.verdict == HOLDS_PROVEN and rep.details["premise_B_over_A"] == HOLDS_PROVEN
    rep = power_content_transitivity_check(StackedAlgebra(ZX, ("y",), ((0, 2),)))
    assert rep.verdict == HOLDS_PROVEN and rep.details.get("vacuous")
    rep = power_content_transitivity_check(StackedAlgebra(ZX, ("y",), ((1, 2),)))
    assert rep.verdict == INCONCLUSIVE


# ---------------------------------------------------------------- intersection bridge and DVR base


def test_prop46_examples():
    x, y = ZXY_NODE.var("x"), ZXY_NODE.var("y")
    rep = prop46_condition_check(x, y)
    assert rep.verdict == FAILS and rep.details["c(I∩J)"] == IdealZ(0) and reverify(rep)
    f = 3 * ZX.var("x") + 6
    assert prop46_condition_check(f, f).verdict == HOLDS_PROVEN
    assert prop46_condition_check(ZX.scalar(2), ZX.scalar(3)).details["c(I)∩c(J)"] == IdealZ(6)
    assert prop46_condition_check(ZX.scalar(2), ZX.scalar(3)).verdict == HOLDS_PROVEN


def test_prop46_bounded_path_matches_exact_on_monomials():
    x, y = ZXY_NODE.var("x"), ZXY_NODE.var("y")
    bounded = prop46_condition_check(x + 0 * y, y + ZXY_NODE.zero, degree_bound=4)
    assert bounded.details["method"].startswith("monomial")
    rep = prop46_condition_check(x + y, x + 2, degree_bound=4)
    assert rep.details["degree_bound"] == 4
    assert rep.verdict in (HOLDS_PROVEN, INCONCLUSIVE)
    A = Alg(ZZ)
    rep = prop46_condition_check(2 * A.var("x") + 4, 6 * A.var("x"), degree_bound=3)
    assert rep.verdict == HOLDS_PROVEN and rep.details["c(I∩J)"] == IdealZ(6)


def test_dvr_base_examples():
    x = SparsePoly.variable(QQ)
    assert dvr_base_check(3, 9 * x + 3).details["order"] == 1
    assert dvr_base_check(2, x).details["order"] == 0
    rep = dvr_base_check(5, 25 * x**2 + 50)
    assert rep.verdict == HOLDS_PROVEN and rep.details["order"] == 2
    assert dvr_base_check(3, Fraction(9, 2) * x).details["order"] == 2
    with pytest.raises(PreconditionError):
        dvr_base_check(3, 0 * x)
    with pytest.raises(PreconditionError):
        dvr_base_check(2, Fraction(1, 2) * x)
