"""Ideals of Z (or Z/m) and of quadratic orders Z[w], w**2 = d.

Ideals of ``Z[w]`` are stored as Hermite normal forms ``(a, b, c)`` meaning
the lattice ``Z*a + Z*(b + c*w)`` in the basis ``(1, w)``, with ``a, c > 0``
and ``0 <= b < a``.  The zero ideal is kept as a distinguished value.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Any, Iterable, Sequence

from orush.arith.integers import DEFAULT_TRIAL_BUDGET, factorize, is_prime, lcm, radical, sqrt_mod
from orush.arith.linalg import integer_echelon, integer_kernel
from orush.arith.scalars import QuadElem
from orush.errors import PreconditionError, RingMismatchError, UnsupportedOrderError

# ====================================================================== Z, Z/m


@dataclass(frozen=True)
class IdealZ:
    """The ideal ``(gen)`` of ``Z``, or of ``Z/modulus`` when ``modulus > 0``.

    Over ``Z/m`` the generator is normalized to ``gcd(gen, m)``, so the zero
    ideal of ``Z/m`` has ``gen == m``.
    """

    gen: int
    modulus: int = 0

    def __post_init__(self) -> None:
        g = abs(self.gen)
        if self.modulus:
            g = gcd(g, self.modulus)
        object.__setattr__(self, "gen", g)

    @classmethod
    def from_generators(cls, gens: Iterable[int], modulus: int = 0) -> IdealZ:
        g = 0
        for x in gens:
            g = gcd(g, int(x))
        return cls(g, modulus)

    def _check(self, other: IdealZ) -> None:
        if not isinstance(other, IdealZ) or other.modulus != self.modulus:
            raise RingMismatchError(f"cannot combine {self} with {other}")

    def is_zero(self) -> bool:
        return self.gen == (self.modulus or 0)

    def is_unit(self) -> bool:
        return self.gen == 1

    def __mul__(self, other: IdealZ) -> IdealZ:
        self._check(other)
        return IdealZ(self.gen * other.gen, self.modulus)

    def __add__(self, other: IdealZ) -> IdealZ:
        self._check(other)
        return IdealZ(gcd(self.gen, other.gen), self.modulus)

    def __and__(self, other: IdealZ) -> IdealZ:
        self._check(other)
        return IdealZ(lcm(self.gen, other.gen), self.modulus)

    intersect = __and__

    def __pow__(self, n: int) -> IdealZ:
        return IdealZ(self.gen**n, self.modulus)

    def contains(self, other: IdealZ) -> bool:
        """``other`` is a subset of ``self``."""
        self._check(other)
        if self.gen == 0:
            return other.gen == 0
        return other.gen % self.gen == 0

    def __le__(self, other: IdealZ) -> bool:
        return other.contains(self)

    def __contains__(self, x: Any) -> bool:
        x = int(x)
        if self.modulus:
            x %= self.modulus
        return x == 0 if self.gen == 0 else x % self.gen == 0

    def radical(self, budget: int = DEFAULT_TRIAL_BUDGET) -> IdealZ:
        if self.gen == 0:
            return self
        return IdealZ(radical(self.gen, budget), self.modulus)

    def is_prime(self) -> bool:
        if self.modulus == 0 and self.gen == 0:
            return True
        return is_prime(self.gen)

    def prime_factors(self, budget: int = DEFAULT_TRIAL_BUDGET) -> dict[int, int]:
        if self.gen == 0:
            raise PreconditionError("the zero ideal has no prime factorization")
        return factorize(self.gen, budget)

    def to_json(self) -> dict:
        out: dict[str, int] = {"gen": self.gen}
        if self.modulus:
            out["mod"] = self.modulus
        return out

    @classmethod
    def from_json(cls, data: dict) -> IdealZ:
        if "gen" not in data or not isinstance(data["gen"], int):
            raise PreconditionError("IdealZ JSON needs an integer field 'gen'")
        return cls(data["gen"], int(data.get("mod", 0)))

    def __str__(self) -> str:
        return f"({self.gen})" if not self.modulus else f"({self.gen}) in ZZ/{self.modulus}"


def idealz_radical(I: IdealZ, budget: int = DEFAULT_TRIAL_BUDGET) -> IdealZ:
    return I.radical(budget)


# ====================================================================== Z[w]


def _lattice_hnf(vectors: Iterable[Sequence[int]]) -> tuple[int, int, int] | None:
    """HNF ``(a, b, c)`` of the sublattice of Z^2 spanned by ``(x, y)`` vectors.

    Columns are processed in the order (w-coordinate, 1-coordinate) so that the
    first pivot is ``c`` and the second ``a``.  Returns ``None`` for the zero
    lattice; a rank-1 lattice is a caller error.
    """
    rows = [(y, x) for x, y in vectors if x or y]
    if not rows:
        return None
    H, _ = integer_echelon(rows, 2)
    if len(H) < 2 or H[0][0] == 0 or H[1][1] == 0:
        raise PreconditionError("generators span a lattice of rank < 2")
    c, b = H[0]
    a = H[1][1]
    return a, b % a, c


@dataclass(frozen=True)
class QuadIdeal:
    """Ideal of ``Z[sqrt(d)]`` in Hermite normal form; ``hnf is None`` is the zero ideal."""

    d: int
    hnf: tuple[int, int, int] | None

    @classmethod
    def zero(cls, d: int) -> QuadIdeal:
        return cls(d, None)

    @classmethod
    def unit(cls, d: int) -> QuadIdeal:
        return cls(d, (1, 0, 1))

    @property
    def a(self) -> int:
        return self.hnf[0] if self.hnf else 0

    @property
    def b(self) -> int:
        return self.hnf[1] if self.hnf else 0

    @property
    def c(self) -> int:
        return self.hnf[2] if self.hnf else 0

    def is_zero(self) -> bool:
        return self.hnf is None

    def is_unit(self) -> bool:
        return self.hnf == (1, 0, 1)

    def norm(self) -> int:
        """Index of the ideal in ``Z[w]``: ``a*c`` (0 for the zero ideal)."""
        return self.a * self.c

    def generators(self) -> list[QuadElem]:
        if self.hnf is None:
            return []
        a, b, c = self.hnf
        return [QuadElem(a, 0, self.d), QuadElem(b, c, self.d)]

    def is_w_closed(self) -> bool:
        """The lattice is stable under multiplication by ``w`` (i.e. it is an ideal)."""
        w = QuadElem(0, 1, self.d)
        return all((w * g) in self for g in self.generators())

    def _check(self, other: QuadIdeal) -> None:
        if not isinstance(other, QuadIdeal) or other.d != self.d:
            raise RingMismatchError(f"ideals of different orders: {self} vs {other}")

    def __contains__(self, x: Any) -> bool:
        if isinstance(x, int):
            x = QuadElem(x, 0, self.d)
        if x.d != self.d:
            raise RingMismatchError(f"{x!r} is not in Z[sqrt({self.d})]")
        if self.hnf is None:
            return not x
        a, b, c = self.hnf
        if x.b % c:
            return False
        k = x.b // c
        return (x.a - k * b) % a == 0

    def contains(self, other: QuadIdeal) -> bool:
        """``other`` is a subset of ``self``."""
        self._check(other)
        return all(g in self for g in other.generators())

    def __le__(self, other: QuadIdeal) -> bool:
        return other.contains(self)

    def __mul__(self, other: QuadIdeal) -> QuadIdeal:
        self._check(other)
        if self.hnf is None or other.hnf is None:
            return QuadIdeal.zero(self.d)
        return hnf_from_generators([g * h for g in self.generators() for h in other.generators()], self.d)

    def __add__(self, other: QuadIdeal) -> QuadIdeal:
        self._check(other)
        return hnf_from_generators(self.generators() + other.generators(), self.d)

    def __and__(self, other: QuadIdeal) -> QuadIdeal:
        """Intersection via the integer kernel of the stacked bases ``[B1; -B2]``."""
        self._check(other)
        if self.hnf is None or other.hnf is None:
            return QuadIdeal.zero(self.d)
        b1 = [(g.a, g.b) for g in self.generators()]
        b2 = [(g.a, g.b) for g in other.generators()]
        stacked = [list(v) for v in b1] + [[-v[0], -v[1]] for v in b2]
        vecs = []
        for u in integer_kernel(stacked):
            vecs.append((u[0] * b1[0][0] + u[1] * b1[1][0], u[0] * b1[0][1] + u[1] * b1[1][1]))
        return QuadIdeal(self.d, _lattice_hnf(vecs))

    intersect = __and__

    def __pow__(self, n: int) -> QuadIdeal:
        if n < 0:
            raise PreconditionError("negative ideal powers need fractional ideals")
        out = QuadIdeal.unit(self.d)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def radical(self, budget: int = DEFAULT_TRIAL_BUDGET) -> QuadIdeal:
        return ideal_radical(self, budget)

    def is_prime(self, budget: int = DEFAULT_TRIAL_BUDGET) -> bool:
        if self.hnf is None:
            return True
        if self.is_unit():
            return False
        fac = factor_ideal(self, budget)
        return len(fac.factors) == 1 and fac.factors[0][1] == 1

    def to_json(self) -> dict:
        return {"d": self.d, "hnf": list(self.hnf) if self.hnf else None}

    @classmethod
    def from_json(cls, data: dict) -> QuadIdeal:
        if "d" not in data or "hnf" not in data:
            raise PreconditionError("QuadIdeal JSON needs fields 'd' and 'hnf'")
        hnf = data["hnf"]
        if hnf is None:
            return cls.zero(int(data["d"]))
        if not (isinstance(hnf, list) and len(hnf) == 3):
            raise PreconditionError("QuadIdeal field 'hnf' must be [a, b, c] or null")
        a, b, c = (int(v) for v in hnf)
        ideal = hnf_from_generators([QuadElem(a, 0, int(data["d"])), QuadElem(b, c, int(data["d"]))], int(data["d"]))
        if ideal.hnf != (a, b, c):
            raise PreconditionError(f"field 'hnf' {hnf} is not the canonical form of an ideal")
        return ideal

    def __str__(self) -> str:
        if self.hnf is None:
            return "(0)"
        return f"HNF{self.hnf}"


def hnf_from_generators(gens: Sequence[QuadElem], d: int | None = None) -> QuadIdeal:
    """Canonical HNF of the ideal generated by ``gens`` in ``Z[sqrt(d)]``.

    Each generator ``g`` contributes both ``g`` and ``w*g``, which makes the
    resulting lattice closed under multiplication by ``w``.
    """
    gens = list(gens)
    if d is None:
        if not gens:
            raise PreconditionError("pass d when the generator list is empty")
        d = gens[0].d
    vecs = []
    for g in gens:
        if isinstance(g, int):
            g = QuadElem(g, 0, d)
        if g.d != d:
            raise RingMismatchError(f"generator {g!r} is not in Z[sqrt({d})]")
        vecs.append((g.a, g.b))
        vecs.append((d * g.b, g.a))
    return QuadIdeal(d, _lattice_hnf(vecs))


# ---------------------------------------------------------------- factorization


@dataclass(frozen=True)
class IdealFactorization:
    d: int
    factors: tuple[tuple[QuadIdeal, int], ...]

    @property
    def primes(self) -> list[QuadIdeal]:
        return [p for p, _ in self.factors]

    def product(self) -> QuadIdeal:
        out = QuadIdeal.unit(self.d)
        for p, e in self.factors:
            out = out * p**e
        return out

    def to_json(self) -> list:
        return [{"prime": p.to_json(), "exp": e} for p, e in self.factors]

    def __str__(self) -> str:
        return " * ".join(f"{p}^{e}" if e > 1 else str(p) for p, e in self.factors) or "(1)"


def primes_above(p: int, d: int) -> list[QuadIdeal]:
    """Prime ideals of the maximal order ``Z[sqrt(d)]`` lying over the rational prime ``p``."""
    if d % 4 == 1:
        raise UnsupportedOrderError(f"Z[sqrt({d})] is not the maximal order")
    if d % p == 0:
        return [QuadIdeal(d, (p, 0, 1))]
    if p == 2:
        return [QuadIdeal(d, (2, 1, 1))]
    r = sqrt_mod(d, p) if pow(d % p, (p - 1) // 2, p) == 1 else None
    if r is None:
        return [QuadIdeal(d, (p, 0, p))]
    # (p, w - r) and (p, w + r)
    return sorted({QuadIdeal(d, (p, (-r) % p, 1)), QuadIdeal(d, (p, r % p, 1))}, key=lambda P: P.hnf)


def factor_ideal(I: QuadIdeal, budget: int = DEFAULT_TRIAL_BUDGET) -> IdealFactorization:
    """Prime factorization of a nonzero proper ideal of a maximal order ``Z[sqrt(d)]``.

    Exponents are found by containment: the exponent of ``P`` is the largest
    ``k`` with ``I`` inside ``P**k``.
    """
    if I.d % 4 == 1:
        raise UnsupportedOrderError(f"Z[sqrt({I.d})] is not maximal; factorization refused")
    if I.is_zero():
        raise PreconditionError("the zero ideal has no prime factorization")
    if I.is_unit():
        raise PreconditionError("the unit ideal has no prime factorization")
    factors = []
    for p in sorted(factorize(I.norm(), budget)):
        for P in primes_above(p, I.d):
            k = 0
            power = P
            while power.contains(I):
                k += 1
                power = power * P
            if k:
                factors.append((P, k))
    fac = IdealFactorization(I.d, tuple(factors))
    if fac.product() != I:
        raise AssertionError(f"factorization {fac} does not reconstruct {I}")
    return fac


def ideal_radical(I: QuadIdeal | IdealZ, budget: int = DEFAULT_TRIAL_BUDGET) -> Any:
    """Radical ideal: product of the distinct primes dividing ``I``."""
    if isinstance(I, IdealZ):
        return I.radical(budget)
    if I.d % 4 == 1:
        raise UnsupportedOrderError(f"Z[sqrt({I.d})] is not maximal; radical refused")
    if I.is_zero() or I.is_unit():
        return I
    out = QuadIdeal.unit(I.d)
    for P in factor_ideal(I, budget).primes:
        out = out * P
    return out


def is_reduced_quotient(I: QuadIdeal | IdealZ, budget: int = DEFAULT_TRIAL_BUDGET) -> bool:
    """``R/I`` is reduced, i.e. ``I`` equals its radical."""
    return ideal_radical(I, budget) == I


def ideal_mul(I: Any, J: Any) -> Any:
    return I * J


def ideal_add(I: Any, J: Any) -> Any:
    return I + J


def ideal_intersect(I: Any, J: Any) -> Any:
    return I & J


def ideal_contains(I: Any, J: Any) -> bool:
    return I.contains(J)


def ideal_mem(I: Any, x: Any) -> bool:
    return x in I
