"""One-variable power series known exactly below a precision bound.

A :class:`TruncSeries` of precision ``T`` records ``c_0 .. c_{T-1}``; nothing
is known about higher coefficients and reading one raises
:class:`~orush.errors.PrecisionError`.  Binary operations return the minimum
of the operand precisions.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Iterable, Sequence

from orush.arith.poly import SparsePoly
from orush.arith.scalars import QQ, PrimeField, Ring, format_fraction, parse_fraction
from orush.errors import LiftingObstructionError, NonUnitError, PrecisionError, PreconditionError, RingMismatchError


class TruncSeries:
    __slots__ = ("field", "var", "prec", "_c")

    def __init__(self, field: Ring, coeffs: Iterable[Any], prec: int | None = None, var: str = "y"):
        if not field.is_field:
            raise PreconditionError(f"series coefficients must lie in a field, not {field}")
        cs = [field(c) for c in coeffs]
        if prec is None:
            prec = len(cs)
        if prec < 1:
            raise PreconditionError("series precision must be positive")
        if len(cs) > prec:
            cs = cs[:prec]
        cs.extend([field.zero] * (prec - len(cs)))
        self.field = field
        self.var = var
        self.prec = prec
        self._c = tuple(cs)

    @classmethod
    def from_poly(cls, p: SparsePoly, prec: int) -> TruncSeries:
        """Truncate an exact univariate polynomial to a series of precision ``prec``."""
        if p.nvars != 1:
            raise PreconditionError("series from a univariate polynomial only")
        cs = [p.coeff(i) for i in range(prec)]
        return cls(p.ring, cs, prec, p.vars[0])

    @classmethod
    def monomial(cls, field: Ring, k: int, prec: int, var: str = "y", c: Any = 1) -> TruncSeries:
        cs = [field.zero] * prec
        if k < prec:
            cs[k] = field(c)
        return cls(field, cs, prec, var)

    # ------------------------------------------------------------ access

    def coeff(self, i: int) -> Any:
        if not 0 <= i < self.prec:
            raise PrecisionError(f"coefficient {i} of a series known only below {self.prec}")
        return self._c[i]

    __getitem__ = coeff

    @property
    def coeffs(self) -> tuple[Any, ...]:
        return self._c

    def order(self) -> int | None:
        """Index of the first nonzero coefficient, or ``None`` if all known ones vanish."""
        for i, c in enumerate(self._c):
            if c:
                return i
        return None

    def is_zero(self) -> bool:
        return self.order() is None

    def __bool__(self) -> bool:
        return not self.is_zero()

    def truncate(self, prec: int) -> TruncSeries:
        if prec > self.prec:
            raise PrecisionError(f"cannot extend precision {self.prec} to {prec}")
        return TruncSeries(self.field, self._c[:prec], prec, self.var)

    def to_poly(self) -> SparsePoly:
        return SparsePoly.from_coeffs(self.field, self._c, self.var)

    # ------------------------------------------------------------ arithmetic

    def _lift(self, other: Any) -> TruncSeries | None:
        if isinstance(other, TruncSeries):
            if other.field != self.field or other.var != self.var:
                raise RingMismatchError(f"series over {other.field}[[{other.var}]] vs {self.field}[[{self.var}]]")
            return other
        try:
            c = self.field(other)
        except (RingMismatchError, TypeError):
            return None
        return TruncSeries(self.field, [c], self.prec, self.var)

    def __add__(self, other: Any) -> TruncSeries:
        o = self._lift(other)
        if o is None:
            return NotImplemented
        n = min(self.prec, o.prec)
        return TruncSeries(self.field, [self._c[i] + o._c[i] for i in range(n)], n, self.var)

    __radd__ = __add__

    def __neg__(self) -> TruncSeries:
        return TruncSeries(self.field, [-c for c in self._c], self.prec, self.var)

    def __sub__(self, other: Any) -> TruncSeries:
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other: Any) -> TruncSeries:
        return -(self - other)

    def __mul__(self, other: Any) -> TruncSeries:
        o = self._lift(other)
        if o is None:
            return NotImplemented
        n = min(self.prec, o.prec)
        a, b = self._c, o._c
        zero = self.field.zero
        out = [zero] * n
        for i in range(n):
            ai = a[i]
            if not ai:
                continue
            for j in range(n - i):
                if b[j]:
                    out[i + j] = out[i + j] + ai * b[j]
        return TruncSeries(self.field, out, n, self.var)

    __rmul__ = __mul__

    def invert(self) -> TruncSeries:
        """Multiplicative inverse modulo ``var**prec``; the constant term must be nonzero."""
        c0 = self._c[0]
        if not c0:
            raise NonUnitError("series with zero constant term is not invertible")
        inv0 = self.field.one / c0
        out = [inv0]
        for k in range(1, self.prec):
            acc = self.field.zero
            for i in range(1, k + 1):
                acc = acc + self._c[i] * out[k - i]
            out.append(-acc * inv0)
        return TruncSeries(self.field, out, self.prec, self.var)

    def __truediv__(self, other: Any) -> TruncSeries:
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self * o.invert()

    def __pow__(self, n: int) -> TruncSeries:
        if n < 0:
            return self.invert() ** -n
        out = TruncSeries(self.field, [self.field.one], self.prec, self.var)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # ------------------------------------------------------------ comparison / io

    def __eq__(self, other: object) -> bool:
        if isinstance(other, TruncSeries):
            return (self.field, self.var, self.prec, self._c) == (other.field, other.var, other.prec, other._c)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.field, self.var, self.prec, self._c))

    def __repr__(self) -> str:
        terms = []
        for i, c in enumerate(self._c):
            if not c:
                continue
            mono = "" if i == 0 else self.var if i == 1 else f"{self.var}^{i}"
            if not mono:
                terms.append(str(c))
            else:
                terms.append(mono if c == 1 else f"({c})*{mono}")
        head = " + ".join(terms) or "0"
        return f"{head} + O({self.var}^{self.prec})"

    def to_json(self) -> dict:
        out: dict[str, Any] = {"var": self.var, "prec": self.prec, "coeffs": [self.field.format(c) for c in self._c]}
        if isinstance(self.field, PrimeField):
            out["field"] = self.field.name
        return out

    @classmethod
    def from_json(cls, data: dict, field: Ring | None = None) -> TruncSeries:
        for key in ("var", "prec", "coeffs"):
            if key not in data:
                raise PreconditionError(f"series JSON is missing field {key!r}")
        if field is None:
            field = field_from_name(data.get("field", "QQ"))
        prec = data["prec"]
        if not isinstance(prec, int) or prec < 1:
            raise PreconditionError("series field 'prec' must be a positive integer")
        coeffs = data["coeffs"]
        if not isinstance(coeffs, list) or len(coeffs) > prec:
            raise PreconditionError("series field 'coeffs' must be a list no longer than 'prec'")
        try:
            values = [field(parse_fraction(str(c))) for c in coeffs]
        except PreconditionError as exc:
            raise PreconditionError(f"series field 'coeffs': {exc}") from exc
        return cls(field, values, prec, str(data["var"]))


def field_from_name(name: str) -> Ring:
    name = name.strip()
    if name in ("QQ", "Q", "0"):
        return QQ
    if name.startswith("GF(") and name.endswith(")"):
        return PrimeField(int(name[3:-1]))
    if name.isdigit():
        return PrimeField(int(name))
    raise PreconditionError(f"unknown coefficient field {name!r}")


@dataclass(frozen=True)
class SeriesRing(Ring):
    """Tag for polynomials whose coefficients are series known below ``prec``."""

    field: Ring
    var: str
    prec: int

    @property
    def name(self) -> str:  # type: ignore[override]
        return f"{self.field}[[{self.var}]]/({self.var}^{self.prec})"

    def __call__(self, value: Any) -> TruncSeries:
        if isinstance(value, TruncSeries):
            if value.field != self.field or value.var != self.var:
                raise RingMismatchError(f"{value!r} is not in {self.name}")
            return value.truncate(self.prec)
        return TruncSeries(self.field, [self.field(value)], self.prec, self.var)

    def is_zero(self, value: TruncSeries) -> bool:
        return value.is_zero()

    def format(self, value: TruncSeries) -> str:
        return "[" + ", ".join(format_fraction(c) if isinstance(c, (int, Fraction)) else str(c) for c in value.coeffs) + "]"


def series_add(u: TruncSeries, v: TruncSeries) -> TruncSeries:
    return u + v


def series_mul(u: TruncSeries, v: TruncSeries) -> TruncSeries:
    return u * v


def series_invert(u: TruncSeries) -> TruncSeries:
    return u.invert()


def series_poly(coeffs: Sequence[Any], ring: SeriesRing, var: str = "t") -> SparsePoly:
    """Polynomial in ``var`` whose coefficients (low to high) are series or scalars."""
    return SparsePoly(ring, dict(enumerate(coeffs)), (var,))


def hensel_lift_root(phi: SparsePoly, t0: Any, prec: int, method: str = "linear") -> TruncSeries:
    """Lift a simple root ``t0`` of ``phi mod y`` to a root of ``phi`` modulo ``y**prec``.

    ``phi`` is a univariate polynomial over a :class:`SeriesRing`.  The default
    ``"linear"`` method fixes one coefficient per step: if ``s`` is a root
    modulo ``y**k`` then ``s + c*y**k`` is a root modulo ``y**(k+1)`` for
    ``c = -[y**k]phi(s) / phi'(t0)``.  It needs no division by 2 and so works
    in every characteristic.  ``"newton"`` doubles the precision each round via
    ``s - phi(s)/phi'(s)``.
    """
    ring = phi.ring
    if not isinstance(ring, SeriesRing):
        raise PreconditionError("phi must have truncated-series coefficients")
    if prec > ring.prec:
        raise PrecisionError(f"phi is known only below {ring.var}^{ring.prec}, asked for {prec}")
    if prec < 1:
        raise PreconditionError("precision must be positive")
    field = ring.field
    t0 = field(t0)
    residue = phi.map_coefficients(lambda c: c.coeff(0), ring=field)
    if residue(t0):
        raise PreconditionError(f"{t0} is not a root of phi modulo {ring.var}")
    slope = residue.derivative()(t0)
    if not slope:
        raise LiftingObstructionError(f"{t0} is a multiple root of phi modulo {ring.var}")

    if method == "linear":
        coeffs = [t0]
        slope_inv = field.one / slope
        for k in range(1, prec):
            sub_ring = SeriesRing(field, ring.var, k + 1)
            phi_k = phi.map_coefficients(sub_ring, ring=sub_ring)
            s = TruncSeries(field, coeffs, k + 1, ring.var)
            err = phi_k(s).coeff(k)
            coeffs.append(-err * slope_inv)
        root = TruncSeries(field, coeffs, prec, ring.var)
    elif method == "newton":
        dphi = phi.derivative()
        root = TruncSeries(field, [t0], 1, ring.var)
        k = 1
        while k < prec:
            k = min(2 * k, prec)
            sub_ring = SeriesRing(field, ring.var, k)
            s = TruncSeries(field, root.coeffs, k, ring.var)
            num = phi.map_coefficients(sub_ring, ring=sub_ring)(s)
            den = dphi.map_coefficients(sub_ring, ring=sub_ring)(s)
            root = s - num / den
    else:
        raise PreconditionError(f"unknown lifting method {method!r}")

    check = phi.map_coefficients(SeriesRing(field, ring.var, prec), ring=SeriesRing(field, ring.var, prec))(root)
    assert check.is_zero(), "lifted root does not annihilate phi"
    return root
