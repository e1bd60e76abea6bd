"""Decision procedures and witness searches for content-algebra properties.

Every checker returns a :class:`VerdictReport`.  ``holds-proven`` is only
issued by exact, terminating computations; sampled evidence is reported as
``holds-on-samples``; ``fails`` always carries a witness that
:func:`reverify` can re-check from scratch.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Sequence

from orush.arith.integers import DEFAULT_TRIAL_BUDGET, valuation
from orush.arith.linalg import integer_kernel
from orush.arith.poly import SparsePoly
from orush.arith.scalars import ZZ, IntegerRing, IntegersMod, QuadElem, QuadraticOrder, Ring
from orush.content import (
    AlgElement,
    MonomialQuotientAlgebra,
    _as_element,
    base_ideal,
    content,
    in_extension,
)
from orush.errors import ExponentNotFoundError, PreconditionError
from orush.ideals import IdealZ, QuadIdeal, ideal_radical, primes_above

HOLDS_PROVEN = "holds-proven"
HOLDS_ON_SAMPLES = "holds-on-samples"
FAILS = "fails"
INCONCLUSIVE = "inconclusive"

DEFAULT_SAMPLES = 1000
DEFAULT_COEFF_BOUND = 20
DEFAULT_DEGREE_BOUND = 6


def jsonify(obj: Any) -> Any:
    if obj is None or isinstance(obj, (bool, int, str)):
        return obj
    if isinstance(obj, Fraction):
        return f"{obj.numerator}/{obj.denominator}"
    if isinstance(obj, (AlgElement, SparsePoly, QuadElem)):
        return str(obj)
    if hasattr(obj, "to_json"):
        return obj.to_json()
    if isinstance(obj, dict):
        return {str(k): jsonify(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonify(v) for v in obj]
    return str(obj)


@dataclass(frozen=True)
class VerdictReport:
    property: str
    verdict: str
    witness: dict | None = None
    budget: int | None = None
    seed: int | None = None
    details: dict = field(default_factory=dict)

    @property
    def holds(self) -> bool:
        return self.verdict in (HOLDS_PROVEN, HOLDS_ON_SAMPLES)

    def to_json(self) -> dict:
        return {
            "property": self.property,
            "verdict": self.verdict,
            "witness": jsonify(self.witness),
            "seed": self.seed,
            "budget": self.budget,
            "details": jsonify(self.details),
        }


# ====================================================================== helpers


def _pair(f: Any, g: Any) -> tuple[AlgElement, AlgElement]:
    f, g = _as_element(f), _as_element(g)
    if f.algebra != g.algebra:
        raise PreconditionError(f"f and g live in different algebras: {f.algebra} vs {g.algebra}")
    return f, g


def _gaussian_sides(f: AlgElement, g: AlgElement) -> tuple[Any, Any]:
    return content(f * g).ideal, content(f).ideal * content(g).ideal


def _weak_sides(f: AlgElement, g: AlgElement, budget: int) -> tuple[Any, Any]:
    lhs, rhs = _gaussian_sides(f, g)
    return ideal_radical(lhs, budget), ideal_radical(rhs, budget)


def _nilradical(base: Ring) -> Any:
    """Nilradical of the supported base rings (only Z/m has a nonzero one)."""
    if isinstance(base, IntegersMod):
        from orush.arith.integers import radical

        return IdealZ(radical(base.m), base.m)
    return base_ideal(base, [])


# ====================================================================== Gaussian / DM


def gaussian_check(f: Any, g: Any) -> VerdictReport:
    """Exact test of ``c(fg) == c(f) c(g)`` for one pair."""
    f, g = _pair(f, g)
    lhs, rhs = _gaussian_sides(f, g)
    details = {"c(f)": content(f).ideal, "c(g)": content(g).ideal, "c(fg)": lhs, "c(f)c(g)": rhs}
    if lhs == rhs:
        return VerdictReport("gaussian", HOLDS_PROVEN, None, details=details)
    return VerdictReport("gaussian", FAILS, {"f": f, "g": g, "c(fg)": lhs, "c(f)c(g)": rhs}, details=details)


def sample_pairs(algebra: MonomialQuotientAlgebra, samples: int, seed: int, coeff_bound: int, degree_bound: int):
    rng = random.Random(seed)
    for _ in range(samples):
        yield (
            algebra.random_element(rng, coeff_bound, degree_bound),
            algebra.random_element(rng, coeff_bound, degree_bound),
        )


def gaussian_sample(
    algebra: MonomialQuotientAlgebra,
    samples: int = DEFAULT_SAMPLES,
    seed: int = 0,
    coeff_bound: int = DEFAULT_COEFF_BOUND,
    degree_bound: int = DEFAULT_DEGREE_BOUND,
) -> VerdictReport:
    """Search for a non-Gaussian pair among seeded random samples."""
    for f, g in sample_pairs(algebra, samples, seed, coeff_bound, degree_bound):
        rep = gaussian_check(f, g)
        if rep.verdict == FAILS:
            return VerdictReport("gaussian", FAILS, rep.witness, samples, seed, rep.details)
    return VerdictReport("gaussian", HOLDS_ON_SAMPLES, None, samples, seed, {"algebra": str(algebra)})


@dataclass(frozen=True)
class DMExponentResult:
    """Least ``n`` with ``c(f)^n c(g) == c(f)^(n-1) c(fg)``."""

    f: AlgElement
    g: AlgElement
    n: int
    cap: int
    ideal: Any

    def to_json(self) -> dict:
        return {"f": str(self.f), "g": str(self.g), "n": self.n, "cap": self.cap, "ideal": self.ideal.to_json()}


def dm_exponent(f: Any, g: Any, cap: int | None = None) -> DMExponentResult:
    """Smallest Dedekind-Mertens exponent in ``[1, cap]``; ``cap`` defaults to ``deg(g) + 2``."""
    f, g = _pair(f, g)
    if cap is None:
        cap = max(g.degree(), 0) + 2
    cf, cg, cfg = content(f).ideal, content(g).ideal, content(f * g).ideal
    power = base_ideal(f.algebra.base, [1])
    for n in range(1, cap + 1):
        lhs = power * cf * cg
        if lhs == power * cfg:
            return DMExponentResult(f, g, n, cap, lhs)
        power = power * cf
    raise ExponentNotFoundError(f"no Dedekind-Mertens exponent n <= {cap} for f = {f}, g = {g}")


# ====================================================================== weak content


def weak_content_check(f: Any, g: Any, budget: int = DEFAULT_TRIAL_BUDGET) -> VerdictReport:
    """Exact comparison of ``sqrt(c(fg))`` and ``sqrt(c(f) c(g))``."""
    f, g = _pair(f, g)
    lhs, rhs = _weak_sides(f, g, budget)
    details = {"sqrt(c(fg))": lhs, "sqrt(c(f)c(g))": rhs}
    if lhs == rhs:
        return VerdictReport("weak-content", HOLDS_PROVEN, None, details=details)
    return VerdictReport("weak-content", FAILS, {"f": f, "g": g, "sqrt(c(fg))": lhs, "sqrt(c(f)c(g))": rhs}, details=details)


def weak_content_sample(
    algebra: MonomialQuotientAlgebra,
    samples: int = DEFAULT_SAMPLES,
    seed: int = 0,
    coeff_bound: int = DEFAULT_COEFF_BOUND,
    degree_bound: int = DEFAULT_DEGREE_BOUND,
    budget: int = DEFAULT_TRIAL_BUDGET,
) -> VerdictReport:
    for f, g in sample_pairs(algebra, samples, seed, coeff_bound, degree_bound):
        rep = weak_content_check(f, g, budget)
        if rep.verdict == FAILS:
            return VerdictReport("weak-content", FAILS, rep.witness, samples, seed, rep.details)
    return VerdictReport("weak-content", HOLDS_ON_SAMPLES, None, samples, seed, {"algebra": str(algebra)})


# ====================================================================== prime extension


def _check_base_prime(p: Any, base: Ring) -> None:
    if isinstance(base, QuadraticOrder):
        ok = isinstance(p, QuadIdeal) and p.d == base.d
    elif isinstance(base, IntegersMod):
        ok = isinstance(p, IdealZ) and p.modulus == base.m
    else:
        ok = isinstance(p, IdealZ) and p.modulus == 0
    if not ok:
        raise PreconditionError(f"{p} is not an ideal of {base}")
    if not p.is_prime():
        raise PreconditionError(f"{p} is not a prime ideal of {base}")


def _split_relation(m: tuple[int, ...]) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Write a relation monomial of degree >= 2 as ``u * v`` with both factors nonconstant."""
    i = next(k for k, e in enumerate(m) if e)
    u = tuple(int(k == i) for k in range(len(m)))
    v = tuple(e - a for e, a in zip(m, u))
    return u, v


def prime_extension_check(p: Any, A: MonomialQuotientAlgebra) -> VerdictReport:
    """Decide whether ``pS`` is prime for ``S = A``.

    ``S/pS = (R/p)[x]/(M)`` is a domain exactly when every minimal relation is
    a single variable, so the decision reads the relations only.  A failing
    relation ``m = u*v`` yields the zero-divisor witness ``(u, v)``.
    """
    _check_base_prime(p, A.base)
    for m in A.relations:
        if sum(m) >= 2:
            u, v = _split_relation(m)
            wu, wv = A.element({u: 1}), A.element({v: 1})
            return VerdictReport(
                "prime-extension",
                FAILS,
                {"p": p, "u": wu, "v": wv, "relation": A._mono_str(m)},
                details={"algebra": str(A)},
            )
    return VerdictReport("prime-extension", HOLDS_PROVEN, None, details={"algebra": str(A), "p": p})


# ====================================================================== power content


def _radical_ideal_pool(base: Ring) -> list[Any]:
    """A few radical ideals of the base ring for witness sampling."""
    if isinstance(base, IntegersMod):
        from orush.arith.integers import factorize

        primes = sorted(factorize(base.m))
        pool = [IdealZ(1, base.m)]
        prod = 1
        for q in primes:
            pool.append(IdealZ(q, base.m))
            prod *= q
        pool.append(IdealZ(prod, base.m))
        return pool
    if isinstance(base, QuadraticOrder):
        primes = [P for q in (2, 3, 5, 7) for P in primes_above(q, base.d)]
        pool = [QuadIdeal.zero(base.d)] + primes
        pool += [primes[i] * primes[j] for i in range(len(primes)) for j in range(i + 1, len(primes))][:6]
        return pool
    return [IdealZ(g) for g in (0, 2, 3, 5, 6, 7, 10, 15, 30)]


def _ideal_elements(I: Any, base: Ring) -> list[Any]:
    if isinstance(I, QuadIdeal):
        return I.generators() or [base.zero]
    return [base(I.gen)]


def _power_content_samples(A: MonomialQuotientAlgebra, samples: int, seed: int, coeff_bound: int, degree_bound: int):
    """Search for ``f`` with ``f**n in IS`` but ``f`` outside ``IS``, ``I`` radical.

    Half of the candidates are uniformly random; the other half are
    ``h + c*m`` with ``h`` in ``IS`` and ``m`` a single nonconstant basis
    monomial, which is where nilpotents of a monomial quotient live.
    """
    rng = random.Random(seed)
    pool = _radical_ideal_pool(A.base)
    max_n = max((max(m) for m in A.relations), default=1)
    max_n = max(max_n, 2)
    basis = [m for m in A.basis(degree_bound) if any(m)]
    for k in range(samples):
        I = pool[rng.randrange(len(pool))]
        if k % 2 == 0 or not basis:
            f = A.random_element(rng, coeff_bound, degree_bound)
        else:
            gens = _ideal_elements(I, A.base)
            h = A.random_element(rng, coeff_bound, degree_bound) * gens[rng.randrange(len(gens))]
            m = basis[rng.randrange(len(basis))]
            f = h + A.element({m: A.base.random_element(rng, coeff_bound)})
        if in_extension(f, I):
            continue
        for n in range(2, max_n + 1):
            if in_extension(f**n, I):
                return {"f": f, "n": n, "I": I}
    return None


def power_content_check(
    A: MonomialQuotientAlgebra,
    samples: int = 200,
    seed: int = 0,
    coeff_bound: int = 5,
    degree_bound: int = 4,
) -> VerdictReport:
    """Decide the power-content property of ``R -> A`` from the relation monomials.

    ``A`` is power-content exactly when every minimal relation is squarefree.
    On failure the witness is ``f = rad(m)`` for a non-squarefree relation
    ``m``, with ``n = max exponent of m`` and ``I`` the nilradical of ``R``:
    ``f**n == 0`` lies in ``IS`` while ``f`` has a unit coordinate.  The
    structural answer is cross-checked by a seeded nilpotency-witness search.
    """
    if not isinstance(A.base, (IntegerRing, IntegersMod, QuadraticOrder)):
        raise PreconditionError(f"unsupported base ring {A.base}")
    bad = [m for m in A.relations if max(m) >= 2]
    sampled = _power_content_samples(A, samples, seed, coeff_bound, degree_bound)
    details = {
        "algebra": str(A),
        "squarefree_relations": not bad,
        "sampled_witness_found": sampled is not None,
        "samples_agree": (sampled is None) == (not bad),
    }
    if sampled is not None:
        details["sampled_witness"] = sampled
    if not bad:
        return VerdictReport("power-content", HOLDS_PROVEN, None, samples, seed, details)
    m = bad[0]
    f = A.element({tuple(int(e > 0) for e in m): 1})
    witness = {"f": f, "n": max(m), "I": _nilradical(A.base)}
    return VerdictReport("power-content", FAILS, witness, samples, seed, details)


@dataclass(frozen=True)
class StackedAlgebra:
    """``B = A[new_vars]/(relations)`` where relations may mention ``A``'s variables."""

    base: MonomialQuotientAlgebra
    new_vars: tuple[str, ...]
    relations: tuple[tuple[int, ...], ...] = ()

    @property
    def all_vars(self) -> tuple[str, ...]:
        return self.base.vars + self.new_vars

    def composite(self) -> MonomialQuotientAlgebra:
        k = len(self.new_vars)
        rels = [m + (0,) * k for m in self.base.relations] + list(self.relations)
        return MonomialQuotientAlgebra(self.base.base, self.all_vars, tuple(rels))

    def is_free_over_base(self) -> bool:
        nb = len(self.base.vars)
        return all(not any(m[:nb]) for m in self.relations)


def power_content_transitivity_check(B: StackedAlgebra, samples: int = 100, seed: int = 0) -> VerdictReport:
    """Check ``PC(R->A) and PC(A->B)  =>  PC(R->B)`` on the monomial decision procedure.

    ``A -> B`` is decided only when ``B``'s relations involve the new
    variables alone (then ``B`` is free over ``A`` and the squarefree criterion
    applies); otherwise that premise is reported as undecided.
    """
    A = B.base
    composite = B.composite()
    pa = power_content_check(A, samples, seed)
    pc = power_content_check(composite, samples, seed)
    if B.is_free_over_base():
        nb = len(A.vars)
        top = MonomialQuotientAlgebra(A.base, B.new_vars, tuple(m[nb:] for m in B.relations))
        pb_verdict = power_content_check(top, samples, seed).verdict
    else:
        pb_verdict = "undecided (relations mix base and new variables; B is not free over A)"
    details = {
        "A": str(A),
        "B_over_A": f"{A}[{','.join(B.new_vars)}]/relations {list(B.relations)}",
        "composite": str(composite),
        "premise_A": pa.verdict,
        "premise_B_over_A": pb_verdict,
        "conclusion_composite": pc.verdict,
    }
    if pc.holds:
        return VerdictReport("power-content-transitivity", HOLDS_PROVEN, None, samples, seed, details)
    if pa.verdict == FAILS or pb_verdict == FAILS:
        details["vacuous"] = True
        return VerdictReport("power-content-transitivity", HOLDS_PROVEN, None, samples, seed, details)
    if pb_verdict != HOLDS_PROVEN:
        return VerdictReport("power-content-transitivity", INCONCLUSIVE, None, samples, seed, details)
    return VerdictReport(
        "power-content-transitivity", FAILS, {"composite_witness": pc.witness}, samples, seed, details
    )


# ====================================================================== intersection bridge


def _to_int_coords(c: Any, base: Ring) -> list[int]:
    if isinstance(base, QuadraticOrder):
        return [c.a, c.b]
    return [int(c)]


def _from_int_coords(v: Sequence[int], base: Ring) -> Any:
    if isinstance(base, QuadraticOrder):
        return QuadElem(v[0], v[1], base.d)
    return base(v[0])


def _bounded_principal_intersection(f: AlgElement, g: AlgElement, degree_bound: int) -> list[AlgElement]:
    """Generators of ``{h f : deg h <= D} ∩ {k g : deg k <= D}`` as a Z-module.

    Coordinates are taken in the basis monomials of degree at most
    ``D + max(deg f, deg g)``; quadratic-order coefficients contribute two
    integer coordinates each and ``Z/m`` coefficients add the relations
    ``m * e_i``.
    """
    A = f.algebra
    base = A.base
    top = degree_bound + max(f.degree(), g.degree(), 0)
    cells = A.basis(top)
    index = {m: i for i, m in enumerate(cells)}
    width = 2 if isinstance(base, QuadraticOrder) else 1
    dim = len(cells) * width
    scalars = [base.one] + ([base.w] if isinstance(base, QuadraticOrder) else [])

    def vectors(h: AlgElement) -> list[list[int]]:
        out = []
        for u in A.basis(degree_bound):
            for s in scalars:
                e = h * A.element({u: s})
                vec = [0] * dim
                for m, c in e.terms.items():
                    i = index[m] * width
                    vec[i : i + width] = _to_int_coords(c, base)
                out.append(vec)
        if isinstance(base, IntegersMod):
            for i in range(dim):
                vec = [0] * dim
                vec[i] = base.m
                out.append(vec)
        return out

    F = vectors(f)
    G = vectors(g)
    stacked = F + [[-x for x in row] for row in G]
    gens = []
    for u in integer_kernel(stacked):
        vec = [sum(u[i] * F[i][j] for i in range(len(F))) for j in range(dim)]
        terms = {}
        for m, i in index.items():
            coords = vec[i * width : (i + 1) * width]
            if any(coords):
                terms[m] = _from_int_coords(coords, base)
        elem = A.element(terms)
        if elem:
            gens.append(elem)
    return gens


def _monomial_term(f: AlgElement) -> tuple[tuple[int, ...], Any] | None:
    if len(f.terms) != 1:
        return None
    ((m, c),) = f.terms.items()
    return m, c


def prop46_condition_check(
    f: Any, g: Any, degree_bound: int = 8, budget: int = DEFAULT_TRIAL_BUDGET
) -> VerdictReport:
    """Check ``c(I) ∩ c(J) ⊆ sqrt(c(I ∩ J))`` for principal ``I = (f)``, ``J = (g)``.

    When ``f`` and ``g`` are single terms ``a*m1``, ``b*m2`` (or equal, or
    zero) the intersection is exact: it is ``(aR ∩ bR) * lcm(m1, m2) * S`` if
    ``lcm(m1, m2)`` survives in ``S`` and zero otherwise.  Otherwise it is
    computed from multipliers of degree at most ``degree_bound``; that only
    under-approximates ``I ∩ J``, so a passing containment is still proven
    while a failing one is reported as inconclusive.
    """
    f, g = _pair(f, g)
    A = f.algebra
    cI, cJ = content(f).ideal, content(g).ideal
    lhs = cI & cJ
    exact = True
    tf, tg = _monomial_term(f), _monomial_term(g)
    if f == g:
        c_cap = cI
        method = "equal generators"
    elif f.is_zero() or g.is_zero():
        c_cap = base_ideal(A.base, [])
        method = "zero generator"
    elif tf is not None and tg is not None:
        (m1, a), (m2, b) = tf, tg
        lcm_m = tuple(max(x, y) for x, y in zip(m1, m2))
        if A.is_standard(lcm_m):
            c_cap = base_ideal(A.base, [a]) & base_ideal(A.base, [b])
        else:
            c_cap = base_ideal(A.base, [])
        method = "monomial terms (exact)"
    else:
        gens = _bounded_principal_intersection(f, g, degree_bound)
        c_cap = base_ideal(A.base, [c for h in gens for c in h.coordinates()])
        exact = False
        method = f"bounded multipliers, degree <= {degree_bound}"
    rad = ideal_radical(c_cap, budget)
    holds = rad.contains(lhs)
    details = {
        "method": method,
        "degree_bound": None if exact else degree_bound,
        "c(I)": cI,
        "c(J)": cJ,
        "c(I)∩c(J)": lhs,
        "c(I∩J)": c_cap,
        "sqrt(c(I∩J))": rad,
    }
    if holds:
        return VerdictReport("prop46", HOLDS_PROVEN, None, details=details)
    if not exact:
        return VerdictReport("prop46", INCONCLUSIVE, None, budget=degree_bound, details=details)
    return VerdictReport("prop46", FAILS, {"f": f, "g": g, "c(I)∩c(J)": lhs, "sqrt(c(I∩J))": rad}, details=details)


# ====================================================================== DVR base


def dvr_base_check(p: int, f: SparsePoly) -> VerdictReport:
    """Prime extension of ``(p)`` plus the finite ``p``-adic order of ``f`` over ``Z_(p)``.

    Coefficients are rationals whose denominators avoid ``p``.  Because
    ``S/pS`` is the same for ``Z`` and ``Z_(p)``, primality of ``pS`` is read
    from the relation-free decision over ``Z``.
    """
    if f.is_zero():
        raise PreconditionError("f = 0 lies in every p^n S")
    coeffs = [Fraction(c) for c in f.coefficients()]
    if any(c.denominator % p == 0 for c in coeffs):
        raise PreconditionError(f"a coefficient of f has a denominator divisible by {p}")
    prime = prime_extension_check(IdealZ(p), MonomialQuotientAlgebra(ZZ, f.vars))
    order = min(valuation(c.numerator, p) for c in coeffs)
    pk = p**order
    assert all(valuation(c.numerator, p) >= order for c in coeffs)
    assert any((c.numerator // pk) % p for c in coeffs)
    details = {"p": p, "order": order, "p_extends_to_prime": prime.verdict, "f": str(f)}
    verdict = HOLDS_PROVEN if prime.verdict == HOLDS_PROVEN else FAILS
    witness = None if verdict == HOLDS_PROVEN else prime.witness
    return VerdictReport("dvr-base", verdict, witness, details=details)


# ====================================================================== re-verification


def reverify(report: VerdictReport, budget: int = DEFAULT_TRIAL_BUDGET) -> bool:
    """Recompute the failing comparison stored in a ``fails`` report from its witness."""
    if report.verdict != FAILS or report.witness is None:
        return False
    w = report.witness
    if report.property == "gaussian":
        lhs, rhs = _gaussian_sides(w["f"], w["g"])
        return lhs != rhs
    if report.property == "weak-content":
        lhs, rhs = _weak_sides(w["f"], w["g"], budget)
        return lhs != rhs
    if report.property == "prime-extension":
        p, u, v = w["p"], w["u"], w["v"]
        return not in_extension(u, p) and not in_extension(v, p) and in_extension(u * v, p)
    if report.property == "power-content":
        f, n, I = w["f"], w["n"], w["I"]
        return ideal_radical(I, budget) == I and in_extension(f**n, I) and not in_extension(f, I)
    if report.property == "prop46":
        f, g = w["f"], w["g"]
        again = prop46_condition_check(f, g, budget=budget)
        return again.verdict == FAILS
    return False
