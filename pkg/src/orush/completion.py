"""Finite-precision certificates about completions.

Nothing here builds a completed ring.  Every object is a statement checked
modulo an explicit power of the maximal ideal: content chains of a series
over ``k[y]`` localized at ``(y)``, factorizations that exist only after
completing, the two branches of the node, and the constructive membership
witnesses for ``Z[x/p : p prime]``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from orush.arith.integers import is_prime, primes_up_to
from orush.arith.linalg import rational_kernel
from orush.arith.poly import SparsePoly
from orush.arith.scalars import QQ, IntegerRing, PrimeField, Ring
from orush.arith.series import SeriesRing, TruncSeries, hensel_lift_root
from orush.checkers import jsonify
from orush.errors import InconclusiveError, PrecisionError, PreconditionError
from orush.ideals import IdealZ

CERTIFICATE = "certificate-produced"
FAILS_AS_EXPECTED = "fails-as-expected"


@dataclass(frozen=True)
class DemoReport:
    demo: str
    verdict: str
    certificate: Any = None
    details: dict = field(default_factory=dict)
    conclusion: str = ""

    def to_json(self) -> dict:
        return {
            "demo": self.demo,
            "verdict": self.verdict,
            "certificate": jsonify(self.certificate),
            "details": jsonify(self.details),
            "conclusion": self.conclusion,
        }


# ====================================================================== DVR chain


def _local_exponent(coeffs: tuple[Any, ...], t: int) -> int:
    """``e`` with ``(p, y**t) = (y**e)`` in ``k[y]_(y)``, for ``p = sum coeffs[i] y**i``."""
    for i, c in enumerate(coeffs[:t]):
        if c:
            return i
    return t


@dataclass(frozen=True)
class ApproxContentChain:
    """Exponents ``e_t`` of ``I_t = (g_t) + (y**t)`` for ``t = 1..T``."""

    series: TruncSeries
    exponents: tuple[int, ...]
    order: int
    stabilization_index: int

    def __post_init__(self) -> None:
        e = self.exponents
        # (y^a) contains (y^b) exactly when a <= b
        assert all(a <= b for a, b in zip(e, e[1:])), "chain is not descending"
        assert all(x == min(self.order, t) for t, x in enumerate(e, start=1))

    @property
    def precision(self) -> int:
        return len(self.exponents)

    @property
    def content_exponent(self) -> int:
        return self.exponents[-1]

    def to_json(self) -> dict:
        return {
            "series": self.series.to_json(),
            "exponents": list(self.exponents),
            "order": self.order,
            "stabilization_index": self.stabilization_index,
            "content": f"({self.series.var}^{self.order})" if self.order else "(1)",
        }


def dvr_content_chain(g: TruncSeries, T: int | None = None) -> ApproxContentChain:
    """Content-approximation chain of ``g`` over ``k[y]_(y)`` at precision ``T``.

    ``g_t`` is the truncation of ``g`` below ``y**t``, so ``g - g_t`` lies in
    ``(y**t)`` and ``I_t = (g_t, y**t)`` is computed from ``g_t`` alone.
    """
    T = g.prec if T is None else T
    if T < 1:
        raise PreconditionError("precision must be positive")
    if T > g.prec:
        raise PrecisionError(f"series known only below {g.var}^{g.prec}, asked for {T}")
    g = g.truncate(T)
    order = g.order()
    if order is None:
        raise InconclusiveError(f"g vanishes below {g.var}^{T}; its content is undetermined")
    exps = tuple(_local_exponent(g.coeffs[:t], t) for t in range(1, T + 1))
    stab = next(t for t, e in enumerate(exps, start=1) if e == order)
    return ApproxContentChain(g, exps, order, stab)


# ====================================================================== Eisenstein


def _divides(pi: Any, c: Any) -> bool:
    if isinstance(pi, int):
        return c % pi == 0
    return pi.divides(c)


def eisenstein_check(f: SparsePoly, pi: Any) -> bool:
    """Eisenstein's criterion for ``f`` in ``x`` at the prime element ``pi``.

    ``f`` is either univariate over ``ZZ`` with ``pi`` an integer, or
    bivariate in ``(x, y)`` over a field with ``pi`` a univariate polynomial
    in ``y``.  Returns whether ``pi`` misses the leading coefficient, divides
    all others, and ``pi**2`` misses the constant coefficient.
    """
    if isinstance(f.ring, IntegerRing) and f.nvars == 1:
        if not isinstance(pi, int):
            raise PreconditionError("over ZZ the prime element must be an integer")
        if pi in (0, 1, -1):
            raise PreconditionError(f"pi = {pi} is zero or a unit")
        coeffs = {e: c for e, c in f.terms.items()}
        zero = 0
    elif f.ring.is_field and f.nvars == 2 and "x" in f.vars:
        if not isinstance(pi, SparsePoly) or pi.nvars != 1 or pi.ring != f.ring:
            raise PreconditionError("pi must be a univariate polynomial over the coefficient field")
        if pi.degree() < 1:
            raise PreconditionError(f"pi = {pi} is zero or a unit")
        other = f.vars[1 - f.vars.index("x")]
        if pi.vars != (other,):
            raise PreconditionError(f"pi must be a polynomial in {other}")
        coeffs = f.coefficients_in("x")
        zero = SparsePoly(f.ring, {}, (other,))
    else:
        raise PreconditionError("unsupported coefficient ring for the Eisenstein test")
    if not coeffs:
        raise PreconditionError("f = 0")
    n = max(coeffs)
    if n < 1:
        return False
    if _divides(pi, coeffs[n]):
        return False
    if any(not _divides(pi, coeffs.get(i, zero)) for i in range(n)):
        return False
    return not _divides(pi * pi, coeffs.get(0, zero))


# ====================================================================== factorization certificates


@dataclass(frozen=True)
class FactorizationCertificate:
    """``target == factors[0] * factors[1]`` in ``x`` over series known below ``prec``."""

    target: SparsePoly
    factors: tuple[SparsePoly, SparsePoly]
    prec: int
    residual: SparsePoly
    root: TruncSeries

    def __post_init__(self) -> None:
        assert self.residual.is_zero(), "certificate residual does not vanish"
        assert all(fac.degree() >= 1 for fac in self.factors), "a factor is a unit"

    def to_json(self) -> dict:
        ring = self.target.ring
        fmt = lambda p: {str(e): ring.format(c) for e, c in sorted(p.terms.items())}
        return {
            "prec": self.prec,
            "variable": self.target.vars[0],
            "series_variable": ring.var,
            "target": fmt(self.target),
            "factors": [fmt(f) for f in self.factors],
            "residual": fmt(self.residual),
            "root": self.root.to_json(),
        }


def _field_for(characteristic: int) -> Ring:
    return QQ if characteristic == 0 else PrimeField(characteristic)


def _series(ring: SeriesRing, coeffs: list[Any]) -> TruncSeries:
    return TruncSeries(ring.field, coeffs, ring.prec, ring.var)


def _root_of_one_plus(ring: SeriesRing, n: int) -> TruncSeries:
    """The ``n``-th root of ``1 + var`` with constant term 1."""
    one = ring.field.one
    phi = SparsePoly(ring, {n: _series(ring, [one]), 0: _series(ring, [-one, -one])}, ("t",))
    return hensel_lift_root(phi, 1, ring.prec)


def _certify(target: SparsePoly, a: SparsePoly, b: SparsePoly, root: TruncSeries) -> FactorizationCertificate:
    return FactorizationCertificate(target, (a, b), target.ring.prec, target - a * b, root)


def dim2_demo(T: int, characteristic: int = 0) -> DemoReport:
    """Factor ``x^n - y^n (1+y)`` over ``k[[y]]`` with ``n = 2`` (char 0) or ``n = 3`` (char 2).

    The polynomial is Eisenstein at ``y + 1`` in ``k[y]_(y)[x]``, hence prime
    there, yet it splits off the linear factor ``x - y*s`` once ``s``, a root
    of ``1 + y``, is available in the completion.
    """
    if T < 2:
        raise PreconditionError("precision must be at least 2")
    if characteristic not in (0, 2):
        raise PreconditionError("characteristic must be 0 or 2")
    n = 2 if characteristic == 0 else 3
    k = _field_for(characteristic)
    R = SeriesRing(k, "y", T)
    s = _root_of_one_plus(R, n)
    y = _series(R, [0, 1])
    ys = y * s
    target = SparsePoly(R, {n: R(1), 0: -(y**n) * (1 + y)}, ("x",))
    minus = SparsePoly(R, {1: R(1), 0: -ys}, ("x",))
    if n == 2:
        other = SparsePoly(R, {1: R(1), 0: ys}, ("x",))
    else:
        other, rem = target.divmod(minus)
        assert rem.is_zero(), "x - y*s does not divide the target"
    cert = _certify(target, other, minus, s)
    poly_f = SparsePoly(k, {(n, 0): 1, (0, n): -1, (0, n + 1): -1}, ("x", "y"))
    pi = SparsePoly(k, {1: 1, 0: 1}, ("y",))
    eis = eisenstein_check(poly_f, pi)
    details = {
        "characteristic": characteristic,
        "polynomial": f"x^{n} - y^{n}*(1+y)",
        "root": f"{'square' if n == 2 else 'cube'} root of 1+y",
        "eisenstein_at_y+1": eis,
    }
    conclusion = (
        f"x^{n} - y^{n}(1+y) is Eisenstein at y+1, so prime in k[y]_(y)[x], but it factors modulo y^{T} "
        "over the completion; the completion map is not a content algebra and hence not Ohm-Rush."
    )
    return DemoReport("dim2", FAILS_AS_EXPECTED, cert, details, conclusion)


# ====================================================================== node


def node_demo(T: int, degree_bound: int = 6, characteristic: int = 0) -> DemoReport:
    """The node ``y^2 = x^2 + x^3`` has two analytic branches ``y = +-x*sqrt(1+x)``.

    Part (i) certifies ``y^2 - x^2(1+x) = (y - xs)(y + xs)`` modulo ``x^T``.
    Part (ii) maps the basis ``x^i, x^i*y`` of the coordinate ring (degree at
    most ``degree_bound``) to ``k[[t]]`` by ``x -> t``, ``y -> t*s(t)`` and
    checks that the images are linearly independent; truncation can only
    create dependencies, so an empty kernel at finite precision is exact.
    """
    if characteristic == 2:
        raise PreconditionError("the node demo is unsupported in characteristic 2")
    if characteristic != 0 and not is_prime(characteristic):
        raise PreconditionError("characteristic must be 0 or an odd prime")
    if T < 3:
        raise PreconditionError("precision must be at least 3")
    k = _field_for(characteristic)
    R = SeriesRing(k, "x", T)
    s = _root_of_one_plus(R, 2)
    x = _series(R, [0, 1])
    xs = x * s
    target = SparsePoly(R, {2: R(1), 0: -(x**2) * (1 + x)}, ("y",))
    a = SparsePoly(R, {1: R(1), 0: -xs}, ("y",))
    b = SparsePoly(R, {1: R(1), 0: xs}, ("y",))
    cert = _certify(target, a, b, s)

    basis = [(i, 0) for i in range(degree_bound + 1)] + [(i, 1) for i in range(degree_bound)]
    map_prec = 2 * degree_bound + 2
    kernel: list = []
    while True:
        M = SeriesRing(k, "t", map_prec)
        st = _root_of_one_plus(M, 2)
        t = _series(M, [0, 1])
        y_img = t * st
        assert (y_img**2 - t**2 - t**3).is_zero(), "branch map does not respect the node equation"
        images = [(t**i) * (y_img**j) for i, j in basis]
        kernel = rational_kernel([img.coeffs for img in images], map_prec, None if characteristic == 0 else k)
        if not kernel or map_prec >= 8 * degree_bound + 8:
            break
        map_prec *= 2
    details = {
        "curve": "y^2 = x^2 + x^3",
        "characteristic": characteristic,
        "branches": ["y - x*s", "y + x*s"],
        "branch_map": "x -> t, y -> t*s(t)",
        "degree_bound": degree_bound,
        "basis": [("x^%d" % i) + ("*y" if j else "") for i, j in basis],
        "map_precision": map_prec,
        "kernel_dimension": len(kernel),
    }
    if kernel:
        return DemoReport("node", "inconclusive", cert, details, "branch map images are dependent at the tested precision")
    conclusion = (
        "The completion of the node has two minimal primes over the domain R, so Spec of the completion "
        "does not map injectively and the completion map is not Ohm-Rush; the branch map is injective on "
        f"the basis up to degree {degree_bound}, so (y - x*s) contracts to 0 in R at that degree."
    )
    return DemoReport("node", FAILS_AS_EXPECTED, cert, details, conclusion)


# ====================================================================== Z[x/p]


def xp_demo(N: int) -> DemoReport:
    """``S = Z[x/p : p prime]``: ``x`` lies in every ``pS`` yet ``x != 0``.

    Membership is shown by the explicit multiplier ``x/p``; the intersection
    of ``pZ`` over ``p <= N`` is the primorial of ``N``, and these ideals
    shrink to ``0`` as ``N`` grows, forcing ``c(x) = 0``.
    """
    if N < 2:
        raise PreconditionError("bound N must be at least 2")
    x = SparsePoly(QQ, {1: 1})
    witnesses = []
    growth = []
    inter = IdealZ(1)
    for p in primes_up_to(N):
        multiplier = SparsePoly(QQ, {1: QQ(1) / p})
        assert multiplier * p == x
        witnesses.append({"p": p, "multiplier": f"x/{p}", "identity": f"x = {p}*(x/{p})"})
        inter = inter & IdealZ(p)
        growth.append({"p": p, "intersection": inter.gen})
    details = {"N": N, "intersection": inter.gen, "growth": growth}
    conclusion = (
        f"x lies in pS for every prime p <= {N}; the intersection of these pZ is ({inter.gen}), "
        "which tends to 0, so c(x) = 0 while x != 0: S is not Ohm-Rush over Z although each localization is."
    )
    return DemoReport("xp", FAILS_AS_EXPECTED, {"witnesses": witnesses}, details, conclusion)


__all__ = [
    "ApproxContentChain",
    "DemoReport",
    "FactorizationCertificate",
    "dim2_demo",
    "dvr_content_chain",
    "eisenstein_check",
    "node_demo",
    "xp_demo",
]
