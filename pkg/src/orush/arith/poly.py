"""Sparse polynomials in one or two variables over an exact coefficient ring."""
from __future__ import annotations

from fractions import Fraction
from types import MappingProxyType
from typing import Any, Iterable, Mapping

from orush.arith.scalars import QQ, ZZ, Ring
from orush.errors import NonUnitError, PreconditionError, RingMismatchError

Exponent = Any  # int for one variable, (i, j) for two


class SparsePoly:
    """Immutable map from exponent to nonzero coefficient.

    ``vars`` holds one or two variable names.  Single-variable polynomials key
    their terms by ``int``; bivariate ones by ``(i, j)`` tuples in the order of
    ``vars``.
    """

    __slots__ = ("ring", "vars", "_terms", "_hash")

    def __init__(self, ring: Ring, terms: Mapping[Exponent, Any] | Iterable = (), vars: tuple[str, ...] = ("x",)):
        if not 1 <= len(vars) <= 2:
            raise PreconditionError("SparsePoly supports one or two variables")
        if len(set(vars)) != len(vars):
            raise PreconditionError(f"repeated variable names {vars}")
        self.ring = ring
        self.vars = tuple(vars)
        items = terms.items() if isinstance(terms, Mapping) else terms
        out: dict[Exponent, Any] = {}
        for e, c in items:
            e = self._norm_exp(e)
            c = ring(c)
            if e in out:
                c = out[e] + c
            out[e] = c
        self._terms = {e: c for e, c in out.items() if not ring.is_zero(c)}
        self._hash: int | None = None

    def _norm_exp(self, e: Any) -> Exponent:
        if len(self.vars) == 1:
            if isinstance(e, (tuple, list)):
                (e,) = e
            e = int(e)
            if e < 0:
                raise PreconditionError("negative exponent")
            return e
        e = tuple(int(k) for k in e)
        if len(e) != 2 or min(e) < 0:
            raise PreconditionError(f"bad exponent {e}")
        return e

    # ------------------------------------------------------------ construction

    @classmethod
    def constant(cls, ring: Ring, c: Any, vars: tuple[str, ...] = ("x",)) -> SparsePoly:
        zero = 0 if len(vars) == 1 else (0, 0)
        return cls(ring, {zero: c}, vars)

    @classmethod
    def variable(cls, ring: Ring, name: str = "x", vars: tuple[str, ...] | None = None) -> SparsePoly:
        vars = vars or (name,)
        if len(vars) == 1:
            return cls(ring, {1: ring.one}, vars)
        e = (1, 0) if vars[0] == name else (0, 1)
        return cls(ring, {e: ring.one}, vars)

    @classmethod
    def from_coeffs(cls, ring: Ring, coeffs: Iterable[Any], var: str = "x") -> SparsePoly:
        """Univariate polynomial from a dense low-to-high coefficient list."""
        return cls(ring, dict(enumerate(coeffs)), (var,))

    # ------------------------------------------------------------ accessors

    @property
    def terms(self) -> Mapping[Exponent, Any]:
        return MappingProxyType(self._terms)

    @property
    def nvars(self) -> int:
        return len(self.vars)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def coeff(self, e: Exponent) -> Any:
        return self._terms.get(self._norm_exp(e), self.ring.zero)

    def coefficients(self) -> list[Any]:
        return [self._terms[e] for e in sorted(self._terms)]

    def degree(self, var: str | None = None) -> int:
        """Largest exponent; total degree for bivariate input unless ``var`` given.

        The zero polynomial has degree ``-1``.
        """
        if not self._terms:
            return -1
        if self.nvars == 1:
            return max(self._terms)
        if var is None:
            return max(i + j for i, j in self._terms)
        k = self.vars.index(var)
        return max(e[k] for e in self._terms)

    def leading_coefficient(self) -> Any:
        if self.nvars != 1:
            raise PreconditionError("leading coefficient is defined for one variable only")
        if not self._terms:
            return self.ring.zero
        return self._terms[max(self._terms)]

    def coefficients_in(self, var: str) -> dict[int, SparsePoly]:
        """View a bivariate polynomial as a polynomial in ``var`` over the other variable."""
        if self.nvars != 2:
            raise PreconditionError("coefficients_in needs a bivariate polynomial")
        k = self.vars.index(var)
        other = self.vars[1 - k]
        grouped: dict[int, dict[int, Any]] = {}
        for e, c in self._terms.items():
            grouped.setdefault(e[k], {})[e[1 - k]] = c
        return {i: SparsePoly(self.ring, g, (other,)) for i, g in grouped.items()}

    # ------------------------------------------------------------ arithmetic

    def _check(self, other: SparsePoly) -> None:
        if other.ring != self.ring:
            raise RingMismatchError(f"coefficient rings differ: {self.ring} vs {other.ring}")
        if other.vars != self.vars:
            raise RingMismatchError(f"variables differ: {self.vars} vs {other.vars}")

    def _lift(self, other: Any) -> SparsePoly | None:
        if isinstance(other, SparsePoly):
            self._check(other)
            return other
        try:
            return SparsePoly.constant(self.ring, self.ring(other), self.vars)
        except RingMismatchError:
            return None

    def __add__(self, other: Any) -> SparsePoly:
        o = self._lift(other)
        if o is None:
            return NotImplemented
        out = dict(self._terms)
        for e, c in o._terms.items():
            out[e] = out[e] + c if e in out else c
        return SparsePoly(self.ring, out, self.vars)

    __radd__ = __add__

    def __neg__(self) -> SparsePoly:
        return SparsePoly(self.ring, {e: -c for e, c in self._terms.items()}, self.vars)

    def __sub__(self, other: Any) -> SparsePoly:
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other: Any) -> SparsePoly:
        return -(self - other)

    def __mul__(self, other: Any) -> SparsePoly:
        o = self._lift(other)
        if o is None:
            return NotImplemented
        out: dict[Exponent, Any] = {}
        biv = self.nvars == 2
        for e1, c1 in self._terms.items():
            for e2, c2 in o._terms.items():
                e = (e1[0] + e2[0], e1[1] + e2[1]) if biv else e1 + e2
                c = c1 * c2
                out[e] = out[e] + c if e in out else c
        return SparsePoly(self.ring, out, self.vars)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> SparsePoly:
        if n < 0:
            raise PreconditionError("negative polynomial power")
        out = SparsePoly.constant(self.ring, self.ring.one, self.vars)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def map_coefficients(self, fn: Any, ring: Ring | None = None) -> SparsePoly:
        return SparsePoly(ring or self.ring, {e: fn(c) for e, c in self._terms.items()}, self.vars)

    def derivative(self) -> SparsePoly:
        if self.nvars != 1:
            raise PreconditionError("derivative is implemented for one variable")
        return SparsePoly(self.ring, {e - 1: c * e for e, c in self._terms.items() if e}, self.vars)

    def __call__(self, value: Any) -> Any:
        """Evaluate a univariate polynomial at ``value`` by Horner's rule."""
        if self.nvars != 1:
            raise PreconditionError("evaluation is implemented for one variable")
        if not self._terms:
            return value * 0 if not isinstance(value, int) else self.ring.zero
        top = max(self._terms)
        acc: Any = self._terms[top]
        for e in range(top - 1, -1, -1):
            acc = acc * value
            if e in self._terms:
                acc = acc + self._terms[e]
        return acc

    def divmod(self, divisor: SparsePoly) -> tuple[SparsePoly, SparsePoly]:
        """Univariate long division; the divisor's leading coefficient must be a unit."""
        self._check(divisor)
        if self.nvars != 1:
            raise PreconditionError("division is implemented for one variable")
        if divisor.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        lead_inv = _unit_inverse(self.ring, divisor.leading_coefficient())
        dd = divisor.degree()
        rem = dict(self._terms)
        quo: dict[int, Any] = {}
        zero = self.ring.zero
        for k in range(self.degree() - dd, -1, -1):
            c = rem.get(k + dd, zero)
            if self.ring.is_zero(c):
                continue
            q = c * lead_inv
            quo[k] = q
            for e, dc in divisor._terms.items():
                rem[k + e] = rem.get(k + e, zero) - q * dc
        return SparsePoly(self.ring, quo, self.vars), SparsePoly(self.ring, rem, self.vars)

    def __floordiv__(self, divisor: SparsePoly) -> SparsePoly:
        return self.divmod(divisor)[0]

    def __mod__(self, divisor: SparsePoly) -> SparsePoly:
        return self.divmod(divisor)[1]

    def divides(self, other: SparsePoly) -> bool:
        """``self | other`` in ``k[var]`` for a field ``k`` (univariate only)."""
        if self.is_zero():
            return other.is_zero()
        return other.divmod(self)[1].is_zero()

    # ------------------------------------------------------------ comparison / io

    def __eq__(self, other: object) -> bool:
        if isinstance(other, SparsePoly):
            return self.ring == other.ring and self.vars == other.vars and self._terms == other._terms
        if isinstance(other, (int,)):
            return self == SparsePoly.constant(self.ring, other, self.vars)
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.ring, self.vars, frozenset(self._terms.items())))
        return self._hash

    def _mono(self, e: Exponent) -> str:
        parts = []
        exps = (e,) if self.nvars == 1 else e
        for v, k in zip(self.vars, exps):
            if k == 1:
                parts.append(v)
            elif k > 1:
                parts.append(f"{v}^{k}")
        return "*".join(parts)

    def __repr__(self) -> str:
        if not self._terms:
            return "0"
        return join_terms((self._terms[e], self._mono(e)) for e in sorted(self._terms, reverse=True))

    def to_json(self) -> list:
        """``[[exponent, "num/den"], ...]`` sorted by exponent."""
        return [[list(e) if self.nvars == 2 else e, self.ring.format(self._terms[e])] for e in sorted(self._terms)]

    @classmethod
    def from_json(cls, data: list, ring: Ring = ZZ, vars: tuple[str, ...] | None = None) -> SparsePoly:
        if not isinstance(data, list):
            raise PreconditionError("polynomial JSON must be an array of [exponent, coefficient] pairs")
        terms = []
        for item in data:
            if not (isinstance(item, list) and len(item) == 2 and isinstance(item[1], (str, int))):
                raise PreconditionError(f"bad polynomial term {item!r}")
            terms.append((item[0], ring.parse(str(item[1]))))
        if vars is None:
            vars = ("x", "y") if terms and isinstance(terms[0][0], list) else ("x",)
        return cls(ring, terms, vars)


def join_terms(terms: Iterable[tuple[Any, str]]) -> str:
    """Render ``(coefficient, monomial)`` pairs as ``3*x^2 - x + 1``."""
    out = []
    for c, m in terms:
        neg = isinstance(c, (int, Fraction)) and c < 0
        a = -c if neg else c
        body = f"{a}" if not m else (m if a == 1 else f"{a}*{m}")
        if not out:
            out.append(f"-{body}" if neg else body)
        else:
            out.append(f"- {body}" if neg else f"+ {body}")
    return " ".join(out) or "0"


def _unit_inverse(ring: Ring, c: Any) -> Any:
    if ring.is_field:
        if ring.is_zero(c):
            raise NonUnitError("zero leading coefficient")
        return ring.one / c
    if hasattr(c, "invert"):
        return c.invert()
    if c in (1, -1):
        return c
    raise NonUnitError(f"leading coefficient {c!r} is not a unit of {ring}")


def poly_mul(f: SparsePoly, g: SparsePoly) -> SparsePoly:
    """Exact product; mixing coefficient rings raises :class:`RingMismatchError`."""
    if not isinstance(g, SparsePoly) or not isinstance(f, SparsePoly):
        raise RingMismatchError("poly_mul expects two SparsePoly operands")
    f._check(g)
    return f * g


__all__ = ["SparsePoly", "poly_mul", "QQ", "ZZ"]
