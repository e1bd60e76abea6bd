"""Exact scalar rings: coefficient ring tags and their element types.

A *ring tag* is a small immutable object that knows how to coerce values into
the ring, produce ``zero``/``one`` and print/parse coefficient strings.  Plain
``int`` serves for the integers and ``fractions.Fraction`` for the rationals;
prime-field residues and quadratic-order elements get their own classes.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Any

from orush.arith.integers import factorize, is_prime
from orush.errors import NonUnitError, PreconditionError, RingMismatchError


def parse_fraction(text: str) -> Fraction:
    """Parse the ``"num/den"`` coefficient strings used in JSON files."""
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise PreconditionError(f"bad rational coefficient {text!r}") from exc


def format_fraction(q: Fraction | int) -> str:
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


# ---------------------------------------------------------------- elements


@dataclass(frozen=True, slots=True)
class PrimeFieldElem:
    """Residue class modulo a prime ``p``; the residue is kept in ``[0, p)``."""

    residue: int
    p: int

    def __post_init__(self) -> None:
        if not is_prime(self.p):
            raise PreconditionError(f"modulus {self.p} is not prime")
        object.__setattr__(self, "residue", self.residue % self.p)

    def _coerce(self, other: Any) -> PrimeFieldElem | None:
        if isinstance(other, PrimeFieldElem):
            if other.p != self.p:
                raise RingMismatchError(f"GF({self.p}) vs GF({other.p})")
            return other
        if isinstance(other, int):
            return PrimeFieldElem(other, self.p)
        if isinstance(other, Fraction):
            return PrimeFieldElem(other.numerator, self.p) / PrimeFieldElem(other.denominator, self.p)
        return None

    def __add__(self, other: Any) -> PrimeFieldElem:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return PrimeFieldElem(self.residue + o.residue, self.p)

    __radd__ = __add__

    def __neg__(self) -> PrimeFieldElem:
        return PrimeFieldElem(-self.residue, self.p)

    def __sub__(self, other: Any) -> PrimeFieldElem:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return PrimeFieldElem(self.residue - o.residue, self.p)

    def __rsub__(self, other: Any) -> PrimeFieldElem:
        return -(self - other)

    def __mul__(self, other: Any) -> PrimeFieldElem:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return PrimeFieldElem(self.residue * o.residue, self.p)

    __rmul__ = __mul__

    def inverse(self) -> PrimeFieldElem:
        if self.residue == 0:
            raise NonUnitError(f"0 is not invertible in GF({self.p})")
        return PrimeFieldElem(pow(self.residue, -1, self.p), self.p)

    def __truediv__(self, other: Any) -> PrimeFieldElem:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other: Any) -> PrimeFieldElem:
        return self._coerce(other) / self

    def __pow__(self, n: int) -> PrimeFieldElem:
        if n < 0:
            return self.inverse() ** -n
        return PrimeFieldElem(pow(self.residue, n, self.p), self.p)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, PrimeFieldElem):
            return self.p == other.p and self.residue == other.residue
        if isinstance(other, int):
            return self.residue == other % self.p
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.residue, self.p))

    def __bool__(self) -> bool:
        return self.residue != 0

    def __repr__(self) -> str:
        return f"{self.residue} (mod {self.p})"


@dataclass(frozen=True, slots=True)
class QuadElem:
    """The element ``a + b*w`` of ``Z[w]`` with ``w**2 == d``."""

    a: int
    b: int
    d: int

    def _coerce(self, other: Any) -> QuadElem | None:
        if isinstance(other, QuadElem):
            if other.d != self.d:
                raise RingMismatchError(f"Z[sqrt({self.d})] vs Z[sqrt({other.d})]")
            return other
        if isinstance(other, int):
            return QuadElem(other, 0, self.d)
        return None

    def __add__(self, other: Any) -> QuadElem:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadElem(self.a + o.a, self.b + o.b, self.d)

    __radd__ = __add__

    def __neg__(self) -> QuadElem:
        return QuadElem(-self.a, -self.b, self.d)

    def __sub__(self, other: Any) -> QuadElem:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadElem(self.a - o.a, self.b - o.b, self.d)

    def __rsub__(self, other: Any) -> QuadElem:
        return -(self - other)

    def __mul__(self, other: Any) -> QuadElem:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadElem(
            self.a * o.a + self.d * self.b * o.b,
            self.a * o.b + self.b * o.a,
            self.d,
        )

    __rmul__ = __mul__

    def __pow__(self, n: int) -> QuadElem:
        if n < 0:
            raise NonUnitError("negative powers are not supported in Z[w]")
        out = QuadElem(1, 0, self.d)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def conjugate(self) -> QuadElem:
        return QuadElem(self.a, -self.b, self.d)

    def norm(self) -> int:
        return self.a * self.a - self.d * self.b * self.b

    def __eq__(self, other: object) -> bool:
        if isinstance(other, QuadElem):
            return (self.a, self.b, self.d) == (other.a, other.b, other.d)
        if isinstance(other, int):
            return self.b == 0 and self.a == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.a, self.b, self.d))

    def __bool__(self) -> bool:
        return self.a != 0 or self.b != 0

    def __repr__(self) -> str:
        if self.b == 0:
            return str(self.a)
        w = "w" if self.b == 1 else "-w" if self.b == -1 else f"{self.b}*w"
        if self.a == 0:
            return w
        sign = "-" if self.b < 0 else "+"
        return f"({self.a}{sign}{w.lstrip('-')})"


# ---------------------------------------------------------------- ring tags


class Ring:
    """Common surface of the coefficient ring tags."""

    name: str = "?"
    is_field: bool = False

    def __call__(self, value: Any) -> Any:  # pragma: no cover - abstract
        raise NotImplementedError

    @property
    def zero(self) -> Any:
        return self(0)

    @property
    def one(self) -> Any:
        return self(1)

    def is_zero(self, value: Any) -> bool:
        return not value

    def format(self, value: Any) -> str:
        return str(value)

    def parse(self, text: str) -> Any:
        return self(parse_fraction(text))

    def random_element(self, rng: random.Random, bound: int) -> Any:
        return self(rng.randint(-bound, bound))

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class IntegerRing(Ring):
    name = "ZZ"

    def __call__(self, value: Any) -> int:
        if isinstance(value, bool):
            return int(value)
        if isinstance(value, int):
            return value
        if isinstance(value, Fraction) and value.denominator == 1:
            return value.numerator
        if isinstance(value, QuadElem) and value.b == 0:
            return value.a
        raise RingMismatchError(f"{value!r} is not an integer")

    def format(self, value: int) -> str:
        return format_fraction(value)

    def ideal(self, gens: Any) -> Any:
        from orush.ideals import IdealZ

        return IdealZ.from_generators(gens)


@dataclass(frozen=True)
class IntegersMod(Ring):
    """``Z/mZ`` with elements stored as least nonnegative residues."""

    m: int

    def __post_init__(self) -> None:
        if self.m < 2:
            raise PreconditionError("modulus of Z/m must be at least 2")

    @property
    def name(self) -> str:  # type: ignore[override]
        return f"ZZ/{self.m}"

    def __call__(self, value: Any) -> int:
        return ZZ(value) % self.m

    def format(self, value: int) -> str:
        return format_fraction(value)

    def random_element(self, rng: random.Random, bound: int) -> int:
        return rng.randrange(self.m)

    def ideal(self, gens: Any) -> Any:
        from orush.ideals import IdealZ

        return IdealZ.from_generators(gens, modulus=self.m)


@dataclass(frozen=True)
class RationalField(Ring):
    name = "QQ"
    is_field = True

    def __call__(self, value: Any) -> Fraction:
        if isinstance(value, (int, Fraction)):
            return Fraction(value)
        raise RingMismatchError(f"{value!r} is not rational")

    def format(self, value: Fraction) -> str:
        return format_fraction(value)

    @property
    def characteristic(self) -> int:
        return 0


@dataclass(frozen=True)
class PrimeField(Ring):
    p: int
    is_field = True

    def __post_init__(self) -> None:
        if not is_prime(self.p):
            raise PreconditionError(f"GF({self.p}): modulus is not prime")

    @property
    def name(self) -> str:  # type: ignore[override]
        return f"GF({self.p})"

    @property
    def characteristic(self) -> int:
        return self.p

    def __call__(self, value: Any) -> PrimeFieldElem:
        if isinstance(value, PrimeFieldElem):
            if value.p != self.p:
                raise RingMismatchError(f"{value!r} is not in GF({self.p})")
            return value
        if isinstance(value, int):
            return PrimeFieldElem(value, self.p)
        if isinstance(value, Fraction):
            if value.denominator % self.p == 0:
                raise NonUnitError(f"{value} has a denominator divisible by {self.p}")
            return PrimeFieldElem(value.numerator, self.p) / value.denominator
        raise RingMismatchError(f"{value!r} is not in GF({self.p})")

    def format(self, value: PrimeFieldElem) -> str:
        return format_fraction(value.residue)

    def random_element(self, rng: random.Random, bound: int) -> PrimeFieldElem:
        return PrimeFieldElem(rng.randrange(self.p), self.p)


@dataclass(frozen=True)
class QuadraticOrder(Ring):
    """The order ``Z[w]``, ``w**2 == d``, with ``d`` squarefree and not 0 or 1."""

    d: int

    def __post_init__(self) -> None:
        if self.d in (0, 1):
            raise PreconditionError("d must differ from 0 and 1")
        if any(e > 1 for e in factorize(self.d).values()):
            raise PreconditionError(f"d = {self.d} is not squarefree")

    @property
    def name(self) -> str:  # type: ignore[override]
        return f"ZZ[sqrt({self.d})]"

    @property
    def is_maximal(self) -> bool:
        return self.d % 4 != 1

    @property
    def w(self) -> QuadElem:
        return QuadElem(0, 1, self.d)

    def __call__(self, value: Any) -> QuadElem:
        if isinstance(value, QuadElem):
            if value.d != self.d:
                raise RingMismatchError(f"{value!r} is not in {self.name}")
            return value
        if isinstance(value, bool):
            return QuadElem(int(value), 0, self.d)
        if isinstance(value, int):
            return QuadElem(value, 0, self.d)
        if isinstance(value, Fraction) and value.denominator == 1:
            return QuadElem(value.numerator, 0, self.d)
        raise RingMismatchError(f"{value!r} is not in {self.name}")

    def format(self, value: QuadElem) -> str:
        return f"{value.a}+{value.b}w" if value.b >= 0 else f"{value.a}{value.b}w"

    def parse(self, text: str) -> QuadElem:
        from orush.expr import parse_scalar

        return parse_scalar(text, self)

    def random_element(self, rng: random.Random, bound: int) -> QuadElem:
        return QuadElem(rng.randint(-bound, bound), rng.randint(-bound, bound), self.d)

    def ideal(self, gens: Any) -> Any:
        from orush.ideals import hnf_from_generators

        return hnf_from_generators([self(g) for g in gens], self.d)


ZZ = IntegerRing()
QQ = RationalField()


def GF(p: int) -> PrimeField:
    return PrimeField(p)
