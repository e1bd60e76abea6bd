"""Content of elements of free algebras over Z, Z/m and quadratic orders.

The algebras handled here are ``S = R[x1..xk]/(M)`` with ``M`` a finite set of
monomials and ``k <= 2``.  Such an ``S`` is a free ``R``-module on the
monomials outside ``(M)``, so the Ohm-Rush content of ``f`` is the ideal of
``R`` generated by the coordinates of ``f`` in that basis.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Any, Iterable, Mapping, Sequence

from orush.arith.integers import DEFAULT_TRIAL_BUDGET, primes_up_to, valuation
from orush.arith.poly import SparsePoly, join_terms
from orush.arith.scalars import IntegerRing, QuadraticOrder, Ring
from orush.errors import PreconditionError, RingMismatchError
from orush.ideals import IdealZ, factor_ideal, primes_above

Monomial = tuple[int, ...]


def _divides(m: Monomial, n: Monomial) -> bool:
    return all(a <= b for a, b in zip(m, n))


def _minimalize(rels: Iterable[Monomial]) -> tuple[Monomial, ...]:
    rels = sorted(set(rels), key=lambda m: (sum(m), m))
    kept: list[Monomial] = []
    for m in rels:
        if not any(_divides(k, m) for k in kept):
            kept.append(m)
    return tuple(kept)


@dataclass(frozen=True)
class MonomialQuotientAlgebra:
    """``base[vars]/(relations)``; relations are exponent tuples, kept minimal."""

    base: Ring
    vars: tuple[str, ...] = ("x",)
    relations: tuple[Monomial, ...] = ()

    def __post_init__(self) -> None:
        if len(self.vars) > 2:
            raise PreconditionError("at most two variables are supported")
        rels = []
        for m in self.relations:
            m = tuple(int(e) for e in m)
            if len(m) != len(self.vars) or min(m, default=0) < 0:
                raise PreconditionError(f"relation {m} does not match variables {self.vars}")
            if not any(m):
                raise PreconditionError("the relation 1 would make the algebra zero")
            rels.append(m)
        object.__setattr__(self, "vars", tuple(self.vars))
        object.__setattr__(self, "relations", _minimalize(rels))

    @property
    def nvars(self) -> int:
        return len(self.vars)

    def is_standard(self, m: Monomial) -> bool:
        return not any(_divides(r, m) for r in self.relations)

    def element(self, terms: Mapping[Monomial, Any] | Iterable = ()) -> AlgElement:
        return AlgElement(self, terms)

    @property
    def zero(self) -> AlgElement:
        return AlgElement(self, {})

    @property
    def one(self) -> AlgElement:
        return AlgElement(self, {(0,) * self.nvars: 1})

    def scalar(self, c: Any) -> AlgElement:
        return AlgElement(self, {(0,) * self.nvars: c})

    def var(self, name: str) -> AlgElement:
        if name not in self.vars:
            raise PreconditionError(f"{name!r} is not a variable of {self}")
        e = tuple(int(v == name) for v in self.vars)
        return AlgElement(self, {e: 1})

    def from_poly(self, p: SparsePoly) -> AlgElement:
        if p.ring != self.base:
            raise RingMismatchError(f"polynomial over {p.ring}, algebra over {self.base}")
        if p.vars != self.vars[: p.nvars] or p.nvars != self.nvars:
            raise RingMismatchError(f"polynomial variables {p.vars} vs algebra variables {self.vars}")
        terms = {((e,) if p.nvars == 1 else e): c for e, c in p.terms.items()}
        return AlgElement(self, terms)

    def basis(self, max_degree: int) -> list[Monomial]:
        """Standard monomials of total degree at most ``max_degree``."""
        out = []
        for e in itertools.product(range(max_degree + 1), repeat=self.nvars):
            if sum(e) <= max_degree and self.is_standard(e):
                out.append(e)
        return sorted(out, key=lambda m: (sum(m), m))

    def random_element(self, rng: random.Random, coeff_bound: int = 20, degree_bound: int = 6, density: float = 0.5) -> AlgElement:
        terms = {}
        for m in self.basis(degree_bound):
            if rng.random() < density:
                terms[m] = self.base.random_element(rng, coeff_bound)
        return AlgElement(self, terms)

    def with_base(self, base: Ring) -> MonomialQuotientAlgebra:
        return MonomialQuotientAlgebra(base, self.vars, self.relations)

    def _mono_str(self, m: Monomial) -> str:
        parts = [v if e == 1 else f"{v}^{e}" for v, e in zip(self.vars, m) if e]
        return "*".join(parts) or "1"

    def __str__(self) -> str:
        s = f"{self.base}[{','.join(self.vars)}]"
        if self.relations:
            s += "/(" + ", ".join(self._mono_str(m) for m in self.relations) + ")"
        return s

    def to_json(self) -> dict:
        return {"base": self.base.name, "vars": list(self.vars), "relations": [list(m) for m in self.relations]}


class AlgElement:
    """Element of a :class:`MonomialQuotientAlgebra`, stored in its monomial basis."""

    __slots__ = ("algebra", "_terms", "_hash")

    def __init__(self, algebra: MonomialQuotientAlgebra, terms: Mapping[Monomial, Any] | Iterable = ()):
        self.algebra = algebra
        base = algebra.base
        items = terms.items() if isinstance(terms, Mapping) else terms
        out: dict[Monomial, Any] = {}
        for m, c in items:
            m = tuple(int(e) for e in m)
            if len(m) != algebra.nvars:
                raise PreconditionError(f"monomial {m} has the wrong number of exponents")
            if not algebra.is_standard(m):
                continue
            c = base(c)
            out[m] = out[m] + c if m in out else c
        self._terms = {m: c for m, c in out.items() if not base.is_zero(c)}
        self._hash: int | None = None

    @property
    def terms(self) -> Mapping[Monomial, Any]:
        return dict(self._terms)

    def coordinates(self) -> list[Any]:
        return [self._terms[m] for m in sorted(self._terms)]

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def degree(self) -> int:
        """Total degree of the support; ``-1`` for zero."""
        return max((sum(m) for m in self._terms), default=-1)

    def is_monomial_term(self) -> bool:
        return len(self._terms) <= 1

    def _lift(self, other: Any) -> AlgElement | None:
        if isinstance(other, AlgElement):
            if other.algebra != self.algebra:
                raise RingMismatchError(f"elements of {self.algebra} and {other.algebra}")
            return other
        try:
            return self.algebra.scalar(self.algebra.base(other))
        except RingMismatchError:
            return None

    def __add__(self, other: Any) -> AlgElement:
        o = self._lift(other)
        if o is None:
            return NotImplemented
        out = dict(self._terms)
        for m, c in o._terms.items():
            out[m] = out[m] + c if m in out else c
        return AlgElement(self.algebra, out)

    __radd__ = __add__

    def __neg__(self) -> AlgElement:
        return AlgElement(self.algebra, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other: Any) -> AlgElement:
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other: Any) -> AlgElement:
        return -(self - other)

    def __mul__(self, other: Any) -> AlgElement:
        o = self._lift(other)
        if o is None:
            return NotImplemented
        out: dict[Monomial, Any] = {}
        std = self.algebra.is_standard
        for m1, c1 in self._terms.items():
            for m2, c2 in o._terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                if not std(m):
                    continue
                c = c1 * c2
                out[m] = out[m] + c if m in out else c
        return AlgElement(self.algebra, out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> AlgElement:
        if n < 0:
            raise PreconditionError("negative power")
        out = self.algebra.one
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other: object) -> bool:
        if isinstance(other, AlgElement):
            return self.algebra == other.algebra and self._terms == other._terms
        if isinstance(other, int):
            return self == self.algebra.scalar(other)
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.algebra, frozenset(self._terms.items())))
        return self._hash

    def __repr__(self) -> str:
        if not self._terms:
            return "0"
        order = sorted(self._terms, key=lambda m: (sum(m), m), reverse=True)
        return join_terms((self._terms[m], "" if not any(m) else self.algebra._mono_str(m)) for m in order)

    def to_json(self) -> dict:
        fmt = self.algebra.base.format
        return {"algebra": self.algebra.to_json(), "terms": [[list(m), fmt(self._terms[m])] for m in sorted(self._terms)]}


def algebra_from_json(data: Mapping[str, Any]) -> MonomialQuotientAlgebra:
    from orush.cli import base_ring_from_name

    for key in ("base", "vars"):
        if key not in data:
            raise PreconditionError(f"algebra JSON is missing field {key!r}")
    return MonomialQuotientAlgebra(
        base_ring_from_name(str(data["base"])),
        tuple(data["vars"]),
        tuple(tuple(m) for m in data.get("relations", [])),
    )


def element_from_json(data: Mapping[str, Any]) -> AlgElement:
    if "algebra" not in data or "terms" not in data:
        raise PreconditionError("element JSON needs fields 'algebra' and 'terms'")
    alg = algebra_from_json(data["algebra"])
    terms = []
    for item in data["terms"]:
        if not (isinstance(item, list) and len(item) == 2):
            raise PreconditionError(f"bad term {item!r} in field 'terms'")
        terms.append((tuple(item[0]), alg.base.parse(str(item[1]))))
    return AlgElement(alg, terms)


# ====================================================================== content


def _as_element(f: AlgElement | SparsePoly) -> AlgElement:
    if isinstance(f, AlgElement):
        return f
    if isinstance(f, SparsePoly):
        return MonomialQuotientAlgebra(f.ring, f.vars).from_poly(f)
    raise PreconditionError(f"expected an algebra element or polynomial, got {type(f).__name__}")


def base_ideal(ring: Ring, gens: Iterable[Any]) -> Any:
    """The ideal of the base ring generated by ``gens``."""
    if not hasattr(ring, "ideal"):
        raise PreconditionError(f"ideals of {ring} are not supported")
    return ring.ideal(list(gens))


@dataclass(frozen=True)
class ContentResult:
    """``c(f)`` together with the basis coordinates that generate it."""

    ideal: Any
    coordinates: tuple[Any, ...]

    def to_json(self) -> dict:
        return {"ideal": self.ideal.to_json(), "coordinates": [str(c) for c in self.coordinates]}


def content(f: AlgElement | SparsePoly) -> ContentResult:
    """Ohm-Rush content: the ideal generated by the coordinates of ``f``."""
    f = _as_element(f)
    coords = tuple(f.coordinates())
    return ContentResult(base_ideal(f.algebra.base, coords), coords)


def in_extension(f: AlgElement | SparsePoly, I: Any) -> bool:
    """Decide ``f in I*S``, i.e. whether ``I`` belongs to ``L_f``."""
    f = _as_element(f)
    return all(c in I for c in f.coordinates())


def ideal_content(gens: Sequence[AlgElement | SparsePoly], algebra: MonomialQuotientAlgebra | None = None) -> Any:
    """Content of the ideal generated by ``gens``: the sum of their contents."""
    elems = [_as_element(g) for g in gens]
    if not elems:
        if algebra is None:
            raise PreconditionError("pass the algebra when the generator list is empty")
        return base_ideal(algebra.base, [])
    coords = [c for g in elems for c in g.coordinates()]
    return base_ideal(elems[0].algebra.base, coords)


# ---------------------------------------------------------------- Dedekind criterion


@dataclass(frozen=True)
class DedekindORResult:
    """Outcome of the finite-primes / bounded-order criterion for one element."""

    primes: tuple[Any, ...]
    exponents: tuple[int, ...]
    bound_n: int
    spot_checked: tuple[Any, ...]

    def to_json(self) -> dict:
        return {
            "primes": [p.to_json() for p in self.primes],
            "exponents": list(self.exponents),
            "bound_n": self.bound_n,
            "spot_checked": [q.to_json() for q in self.spot_checked],
        }


def _prime_decomposition(I: Any, budget: int) -> list[tuple[Any, int]]:
    if isinstance(I, IdealZ):
        if I.modulus:
            raise PreconditionError("Z/m is not a Dedekind domain")
        return [(IdealZ(p), e) for p, e in sorted(I.prime_factors(budget).items())]
    return list(factor_ideal(I, budget).factors)


def _primes_over(q: int, ring: Ring) -> list[Any]:
    if isinstance(ring, QuadraticOrder):
        return primes_above(q, ring.d)
    return [IdealZ(q)]


def dedekind_or_check(f: AlgElement | SparsePoly, budget: int = DEFAULT_TRIAL_BUDGET, spot_bound: int = 50) -> DedekindORResult:
    """Finite set of primes in ``L_f`` and a uniform exponent ``n`` with ``f`` outside ``p**n S``.

    The primes are those dividing ``c(f)`` and ``n`` is one more than the
    largest exponent in the factorization of ``c(f)``.  Both facts are
    re-checked by membership tests, together with primes over rational primes
    up to ``spot_bound`` that do not contain ``c(f)``.
    """
    f = _as_element(f)
    ring = f.algebra.base
    if not isinstance(ring, (IntegerRing, QuadraticOrder)):
        raise PreconditionError(f"base ring {ring} is not a supported Dedekind domain")
    if f.is_zero():
        raise PreconditionError("the criterion is undefined for f = 0")
    c = content(f).ideal
    if c.is_unit():
        decomposition = []
    else:
        decomposition = _prime_decomposition(c, budget)
    primes = tuple(p for p, _ in decomposition)
    exps = tuple(e for _, e in decomposition)
    n = max(exps, default=0) + 1
    for p in primes:
        if not in_extension(f, p):
            raise AssertionError(f"{p} divides c(f) but f is not in pS")
        if in_extension(f, p**n):
            raise AssertionError(f"f lies in {p}^{n} S")
    spot = []
    for q in primes_up_to(spot_bound):
        for Q in _primes_over(q, ring):
            if Q in primes:
                continue
            if in_extension(f, Q):
                raise AssertionError(f"f lies in {Q} S although {Q} does not divide c(f)")
            spot.append(Q)
    return DedekindORResult(primes, exps, n, tuple(spot))


def content_localize_check(f: AlgElement | SparsePoly | Sequence[int], p: int) -> bool:
    """Content commutes with localization at ``p``: ``v_p(gcd) == min v_p(coordinate)``."""
    if isinstance(f, (AlgElement, SparsePoly)):
        coords = [int(c) for c in _as_element(f).coordinates()]
    else:
        coords = [int(c) for c in f]
    gen = IdealZ.from_generators(coords).gen
    return valuation(gen, p) == min((valuation(c, p) for c in coords), default=float("inf"))
