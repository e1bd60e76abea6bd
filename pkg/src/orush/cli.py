"""Command-line front end.

Exit codes: 0 when the property holds or a certificate is produced (including
demos whose expected outcome is a failure), 1 when a failure witness is
found, 2 on usage, input, budget or inconclusive outcomes.
"""
from __future__ import annotations

import argparse
import json
import os
import re
import sys
from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Any, Callable, Sequence

from orush.arith.integers import DEFAULT_TRIAL_BUDGET
from orush.arith.poly import SparsePoly
from orush.arith.scalars import QQ, ZZ, IntegersMod, QuadraticOrder, Ring
from orush.arith.series import TruncSeries, field_from_name
from orush.checkers import (
    FAILS,
    HOLDS_ON_SAMPLES,
    HOLDS_PROVEN,
    StackedAlgebra,
    VerdictReport,
    dm_exponent,
    dvr_base_check,
    gaussian_check,
    gaussian_sample,
    jsonify,
    power_content_check,
    power_content_transitivity_check,
    prime_extension_check,
    prop46_condition_check,
    weak_content_check,
    weak_content_sample,
)
from orush.completion import DemoReport, dim2_demo, dvr_content_chain, eisenstein_check, node_demo, xp_demo
from orush.content import MonomialQuotientAlgebra, content, dedekind_or_check, in_extension
from orush.errors import ExponentNotFoundError, OrushError, PreconditionError
from orush.expr import parse_expression
from orush.ideals import QuadIdeal, factor_ideal

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
SEED_ENV = "ORUSH_SEED"


class UsageError(OrushError):
    """Bad command-line input; the message names the offending field."""


# ====================================================================== config


@dataclass(frozen=True)
class RunConfig:
    seed: int = 0
    samples: int = 1000
    coeff_bound: int = 20
    degree_bound: int = 6
    prec: int = 16
    factor_budget: int = DEFAULT_TRIAL_BUDGET
    format: str = "text"

    def __post_init__(self) -> None:
        if not 0 <= self.seed < 2**64:
            raise UsageError("seed must be a 64-bit unsigned integer")
        for name in ("samples", "coeff_bound", "degree_bound", "prec", "factor_budget"):
            if getattr(self, name) < 1:
                raise UsageError(f"{name.replace('_', '-')} must be positive")
        if self.format not in ("text", "json"):
            raise UsageError("format must be text or json")

    def to_json(self) -> dict:
        return asdict(self)


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    seed = args.seed
    if seed is None:
        env = os.environ.get(SEED_ENV)
        if env is not None:
            try:
                seed = int(env)
            except ValueError as exc:
                raise UsageError(f"{SEED_ENV}={env!r} is not an integer") from exc
        else:
            seed = 0
    return RunConfig(
        seed=seed,
        samples=args.samples,
        coeff_bound=args.coeff_bound,
        degree_bound=args.degree_bound,
        prec=args.prec if args.prec is not None else 16,
        factor_budget=args.factor_budget,
        format="json" if args.json else "text",
    )


# ====================================================================== input parsing


_QUAD = re.compile(r"^Z{1,2}\[sqrt\((-?\d+)\)\]$")
_MOD = re.compile(r"^Z{1,2}/(\d+)$")


def base_ring_from_name(name: str) -> Ring:
    """Inverse of ``Ring.name``: ``ZZ``, ``QQ``, ``ZZ/m``, ``ZZ[sqrt(d)]``, ``GF(p)``."""
    name = name.replace(" ", "")
    if name in ("ZZ", "Z"):
        return ZZ
    if name in ("QQ", "Q"):
        return QQ
    if m := _QUAD.match(name):
        return QuadraticOrder(int(m.group(1)))
    if m := _MOD.match(name):
        return IntegersMod(int(m.group(1)))
    if name.startswith("GF("):
        return field_from_name(name)
    raise PreconditionError(f"unknown base ring {name!r}")


def _base_ring(args: argparse.Namespace) -> Ring:
    if args.d is not None and args.mod is not None:
        raise UsageError("--d and --mod are mutually exclusive")
    if args.d is not None:
        return QuadraticOrder(args.d)
    if args.mod is not None:
        return IntegersMod(args.mod)
    return ZZ


def _split_list(text: str) -> list[str]:
    """Split on commas that are not inside parentheses."""
    out, depth, cur = [], 0, []
    for ch in text:
        if ch == "," and depth == 0:
            out.append("".join(cur))
            cur = []
            continue
        depth += ch == "("
        depth -= ch == ")"
        cur.append(ch)
    out.append("".join(cur))
    return [s.strip() for s in out if s.strip()]


def _mentions_y(*texts: str | None) -> bool:
    return any(t and re.search(r"(?<![A-Za-z_])y(?![A-Za-z_0-9])", t) for t in texts)


def _vars_for(args: argparse.Namespace, *texts: str | None) -> tuple[str, ...]:
    if getattr(args, "vars", None):
        return tuple(v.strip() for v in args.vars.split(",") if v.strip())
    rels = getattr(args, "rel", None) or []
    return ("x", "y") if _mentions_y(*texts, *rels) else ("x",)


def _monomial_exponents(text: str, vars: tuple[str, ...], field_name: str) -> tuple[int, ...]:
    env = {v: {v: 1} for v in vars}

    class _Mono:
        def __init__(self, exps: dict[str, int]):
            self.exps = exps

        def __mul__(self, other: _Mono) -> _Mono:
            if not isinstance(other, _Mono):
                raise UsageError(f"field {field_name}: {text!r} is not a monomial")
            out = dict(self.exps)
            for k, e in other.exps.items():
                out[k] = out.get(k, 0) + e
            return _Mono(out)

        def __pow__(self, n: int) -> _Mono:
            return _Mono({k: e * n for k, e in self.exps.items()})

        def __add__(self, other: Any) -> _Mono:
            raise UsageError(f"field {field_name}: {text!r} is not a monomial")

        __sub__ = __radd__ = __add__

        def __neg__(self) -> _Mono:
            raise UsageError(f"field {field_name}: {text!r} is not a monomial")

    def const(c: Any) -> _Mono:
        if c != 1:
            raise UsageError(f"field {field_name}: relation {text!r} must be a monic monomial")
        return _Mono({})

    try:
        mono = parse_expression(text, {v: _Mono(e) for v, e in env.items()}, const)
    except PreconditionError as exc:
        raise UsageError(f"field {field_name}: {exc}") from exc
    return tuple(mono.exps.get(v, 0) for v in vars)


def _algebra(args: argparse.Namespace, *texts: str | None) -> MonomialQuotientAlgebra:
    vars = _vars_for(args, *texts)
    rels = [_monomial_exponents(r, vars, "--rel") for r in (getattr(args, "rel", None) or [])]
    return MonomialQuotientAlgebra(_base_ring(args), vars, tuple(rels))


def _element(A: MonomialQuotientAlgebra, text: str, field_name: str) -> Any:
    env: dict[str, Any] = {v: A.var(v) for v in A.vars}
    if isinstance(A.base, QuadraticOrder):
        env["w"] = A.scalar(A.base.w)
    try:
        return parse_expression(text, env, A.scalar)
    except PreconditionError as exc:
        raise UsageError(f"field {field_name}: {exc}") from exc


def _scalar(ring: Ring, text: str, field_name: str) -> Any:
    env = {"w": ring.w} if isinstance(ring, QuadraticOrder) else {}
    try:
        return parse_expression(text, env, ring)
    except PreconditionError as exc:
        raise UsageError(f"field {field_name}: {exc}") from exc


def _ideal(ring: Ring, text: str, field_name: str) -> Any:
    gens = [_scalar(ring, g, field_name) for g in _split_list(text)]
    if isinstance(ring, QuadraticOrder):
        return ring.ideal(gens)
    if isinstance(ring, IntegersMod):
        return ring.ideal([int(g) for g in gens])
    return ZZ.ideal([int(g) for g in gens])


def _load_json(path: str, what: str) -> Any:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {what} file {path!r}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise UsageError(f"{what} file {path!r} is not valid JSON: {exc.msg} at line {exc.lineno}") from exc


def _require(args: argparse.Namespace, *names: str) -> None:
    for n in names:
        if getattr(args, n, None) is None:
            raise UsageError(f"missing required option --{n.replace('_', '-')}")


# ====================================================================== output


@dataclass
class Outcome:
    code: int
    payload: dict
    lines: list[str]


def _verdict_code(verdict: str) -> int:
    if verdict in (HOLDS_PROVEN, HOLDS_ON_SAMPLES, "certificate-produced", "fails-as-expected"):
        return EXIT_OK
    if verdict == FAILS:
        return EXIT_FAIL
    return EXIT_USAGE


def _from_report(rep: VerdictReport | DemoReport, extra: list[str] | None = None) -> Outcome:
    payload = rep.to_json()
    lines = [f"verdict: {rep.verdict}"]
    if isinstance(rep, VerdictReport):
        lines.insert(0, f"property: {rep.property}")
        if rep.witness:
            lines.append("witness:")
            lines += [f"  {k} = {_show(v)}" for k, v in rep.witness.items()]
        for k, v in rep.details.items():
            lines.append(f"{k}: {_show(v)}")
    else:
        lines.insert(0, f"demo: {rep.demo}")
        for k, v in rep.details.items():
            lines.append(f"{k}: {_show(v)}")
        if rep.conclusion:
            lines.append(f"conclusion: {rep.conclusion}")
    lines += extra or []
    return Outcome(_verdict_code(rep.verdict), payload, lines)


def _show(v: Any) -> str:
    if isinstance(v, (list, tuple)):
        return "[" + ", ".join(_show(x) for x in v) + "]"
    if isinstance(v, dict):
        return json.dumps(jsonify(v), sort_keys=True)
    return str(v)


# ====================================================================== commands


def cmd_content(args: argparse.Namespace, cfg: RunConfig) -> Outcome:
    _require(args, "f")
    A = _algebra(args, args.f)
    f = _element(A, args.f, "--f")
    c = content(f)
    payload = {"algebra": A.to_json(), "f": str(f), "content": c.ideal.to_json(), "coordinates": [str(x) for x in c.coordinates]}
    return Outcome(EXIT_OK, payload, [f"algebra: {A}", f"f = {f}", f"c(f) = {c.ideal}"])


def cmd_lf(args: argparse.Namespace, cfg: RunConfig) -> Outcome:
    _require(args, "f", "ideal")
    A = _algebra(args, args.f)
    f = _element(A, args.f, "--f")
    I = _ideal(A.base, args.ideal, "--ideal")
    member = in_extension(f, I)
    payload = {"f": str(f), "ideal": I.to_json(), "in_L_f": member, "content": content(f).ideal.to_json()}
    lines = [f"f = {f}", f"I = {I}", f"f in IS: {member}", f"c(f) = {content(f).ideal}"]
    return Outcome(EXIT_OK if member else EXIT_FAIL, payload, lines)


def cmd_dedekind_or(args: argparse.Namespace, cfg: RunConfig) -> Outcome:
    _require(args, "f")
    A = _algebra(args, args.f)
    f = _element(A, args.f, "--f")
    res = dedekind_or_check(f, cfg.factor_budget)
    lines = [f"f = {f}", "primes in L_f: " + ", ".join(str(p) for p in res.primes), f"bound n = {res.bound_n}"]
    return Outcome(EXIT_OK, {"f": str(f), **res.to_json()}, lines)


def cmd_factor_ideal(args: argparse.Namespace, cfg: RunConfig) -> Outcome:
    _require(args, "gens")
    ring = _base_ring(args)
    I = _ideal(ring, args.gens, "--gens")
    if isinstance(I, QuadIdeal):
        fac = factor_ideal(I, cfg.factor_budget)
        payload = {"ideal": I.to_json(), "factors": fac.to_json(), "reconstructs": fac.product() == I}
        return Outcome(EXIT_OK, payload, [f"I = {I}", f"factorization: {fac}"])
    if I.modulus:
        raise UsageError("field --gens: ideals of ZZ/m have no prime factorization")
    if I.is_zero():
        raise UsageError("field --gens: the zero ideal has no prime factorization")
    fac = I.prime_factors(cfg.factor_budget)
    text = " * ".join(f"({p})^{e}" if e > 1 else f"({p})" for p, e in sorted(fac.items())) or "(1)"
    payload = {"ideal": I.to_json(), "factors": [{"prime": {"gen": p}, "exp": e} for p, e in sorted(fac.items())]}
    return Outcome(EXIT_OK, payload, [f"I = {I}", f"factorization: {text}"])


def _pair(args: argparse.Namespace) -> tuple[MonomialQuotientAlgebra, Any, Any]:
    A = _algebra(args, args.f, args.g)
    return A, _element(A, args.f, "--f"), _element(A, args.g, "--g")


def cmd_gaussian(args: argparse.Namespace, cfg: RunConfig) -> Outcome:
    if args.f is None and args.g is None:
        A = _algebra(args)
        return _from_report(gaussian_sample(A, cfg.samples, cfg.seed, cfg.coeff_bound, cfg.degree_bound))
    _require(args, "f", "g")
    _, f, g = _pair(args)
    return _from_report(gaussian_check(f, g))


def cmd_dm_exponent(args: argparse.Namespace, cfg: RunConfig) -> Outcome:
    _require(args, "f", "g")
    if args.cap is not None and args.cap < 1:
        raise UsageError("--cap must be positive")
    _, f, g = _pair(args)
    try:
        res = dm_exponent(f, g, args.cap)
    except ExponentNotFoundError as exc:
        return Outcome(EXIT_FAIL, {"property": "dm-exponent", "verdict": FAILS, "error": str(exc)}, [f"verdict: {FAILS}", str(exc)])
    payload = {"property": "dm-exponent", "verdict": HOLDS_PROVEN, **res.to_json()}
    return Outcome(EXIT_OK, payload, [f"f = {f}", f"g = {g}", f"n = {res.n} (cap {res.cap})", f"c(f)^n c(g) = {res.ideal}"])


def cmd_weak_content(args: argparse.Namespace, cfg: RunConfig) -> Outcome:
    if args.f is None and args.g is None:
        A = _algebra(args)
        rep = weak_content_sample(A, cfg.samples, cfg.seed, cfg.coeff_bound, cfg.degree_bound, cfg.factor_budget)
        return _from_report(rep)
    _require(args, "f", "g")
    _, f, g = _pair(args)
    return _from_report(weak_content_check(f, g, cfg.factor_budget))


def cmd_power_content(args: argparse.Namespace, cfg: RunConfig) -> Outcome:
    A = _algebra(args)
    return _from_report(power_content_check(A, cfg.samples, cfg.seed, min(cfg.coeff_bound, 5), min(cfg.degree_bound, 4)))


def cmd_prime_extension(args: argparse.Namespace, cfg: RunConfig) -> Outcome:
    _require(args, "p")
    A = _algebra(args)
    return _from_report(prime_extension_check(_ideal(A.base, args.p, "--p"), A))


def cmd_prop46(args: argparse.Namespace, cfg: RunConfig) -> Outcome:
    _require(args, "f", "g")
    _, f, g = _pair(args)
    return _from_report(prop46_condition_check(f, g, cfg.degree_bound, cfg.factor_budget))


def cmd_dvr_base(args: argparse.Namespace, cfg: RunConfig) -> Outcome:
    _require(args, "p", "f")
    try:
        p = int(args.p)
    except ValueError as exc:
        raise UsageError("field --p must be a rational prime") from exc
    vars = _vars_for(args, args.f)
    env = {v: SparsePoly.variable(QQ, v, vars) for v in vars}
    try:
        f = parse_expression(args.f, env, lambda c: SparsePoly.constant(QQ, c, vars))
    except PreconditionError as exc:
        raise UsageError(f"field --f: {exc}") from exc
    return _from_report(dvr_base_check(p, f))


def cmd_transitivity(args: argparse.Namespace, cfg: RunConfig) -> Outcome:
    base_vars = tuple(v.strip() for v in (args.vars or "x").split(","))
    new_vars = tuple(v.strip() for v in args.new_vars.split(","))
    A = MonomialQuotientAlgebra(
        _base_ring(args), base_vars, tuple(_monomial_exponents(r, base_vars, "--rel") for r in args.rel or [])
    )
    allv = base_vars + new_vars
    top = tuple(_monomial_exponents(r, allv, "--top-rel") for r in args.top_rel or [])
    B = StackedAlgebra(A, new_vars, top)
    return _from_report(power_content_transitivity_check(B, min(cfg.samples, 200), cfg.seed))


def cmd_dim2(args: argparse.Namespace, cfg: RunConfig) -> Outcome:
    return _from_report(dim2_demo(cfg.prec, args.char))


def cmd_node(args: argparse.Namespace, cfg: RunConfig) -> Outcome:
    return _from_report(node_demo(cfg.prec, cfg.degree_bound))


def cmd_dvr_chain(args: argparse.Namespace, cfg: RunConfig) -> Outcome:
    if args.series is not None:
        data = _load_json(args.series, "series")
        if not isinstance(data, dict):
            raise UsageError("series file must hold a JSON object with fields 'var', 'prec', 'coeffs'")
        try:
            g = TruncSeries.from_json(data)
        except PreconditionError as exc:
            raise UsageError(f"series file {args.series!r}: {exc}") from exc
    elif args.coeffs is not None:
        field = field_from_name(args.field)
        cs = [field(Fraction(c)) for c in _split_list(args.coeffs)]
        g = TruncSeries(field, cs, max(cfg.prec, len(cs)))
    else:
        raise UsageError("missing required option --series (or --coeffs)")
    T = min(cfg.prec, g.prec) if args.prec is None else cfg.prec
    chain = dvr_content_chain(g, T)
    d = chain.to_json()
    lines = [f"exponents: {tuple(chain.exponents)}", f"order: {chain.order}", f"stabilizes at t = {chain.stabilization_index}", f"content: {d['content']}"]
    return Outcome(EXIT_OK, {"demo": "dvr-chain", "verdict": "certificate-produced", "chain": d}, ["verdict: certificate-produced"] + lines)


def _eisenstein_poly(args: argparse.Namespace) -> tuple[SparsePoly, Ring]:
    if args.poly is not None:
        data = _load_json(args.poly, "polynomial")
        if not isinstance(data, dict) or "terms" not in data:
            raise UsageError("polynomial file must hold an object with fields 'ring' and 'terms'")
        ring = base_ring_from_name(str(data.get("ring", "ZZ")))
        vars = tuple(data.get("vars", ["x", "y"] if ring.is_field else ["x"]))
        try:
            return SparsePoly.from_json(data["terms"], ring, vars), ring
        except (PreconditionError, TypeError, ValueError) as exc:
            raise UsageError(f"polynomial file {args.poly!r}, field 'terms': {exc}") from exc
    if args.expr is not None:
        ring = base_ring_from_name(args.ring)
        vars = ("x", "y") if ring.is_field else ("x",)
        env = {v: SparsePoly.variable(ring, v, vars) for v in vars}
        try:
            return parse_expression(args.expr, env, lambda c: SparsePoly.constant(ring, c, vars)), ring
        except PreconditionError as exc:
            raise UsageError(f"field --expr: {exc}") from exc
    raise UsageError("missing required option --poly (or --expr)")


def cmd_eisenstein(args: argparse.Namespace, cfg: RunConfig) -> Outcome:
    _require(args, "prime")
    f, ring = _eisenstein_poly(args)
    if ring.is_field:
        other = [v for v in f.vars if v != "x"]
        env = {v: SparsePoly.variable(ring, v, tuple(other)) for v in other}
        pi = parse_expression(args.prime, env, lambda c: SparsePoly.constant(ring, c, tuple(other)))
    else:
        try:
            pi = int(args.prime)
        except ValueError as exc:
            raise UsageError("field --prime must be an integer over ZZ") from exc
    ok = eisenstein_check(f, pi)
    payload = {"demo": "eisenstein", "verdict": "certificate-produced" if ok else "not-eisenstein", "f": str(f), "pi": str(pi), "eisenstein": ok}
    return Outcome(EXIT_OK if ok else EXIT_FAIL, payload, [f"f = {f}", f"pi = {pi}", f"eisenstein: {ok}"])


def cmd_xp(args: argparse.Namespace, cfg: RunConfig) -> Outcome:
    return _from_report(xp_demo(args.bound))


# ====================================================================== parser


def _common_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_argument_group("run configuration")
    g.add_argument("--seed", type=int, default=None, help=f"random seed (default 0, or ${SEED_ENV})")
    g.add_argument("--samples", type=int, default=1000)
    g.add_argument("--coeff-bound", type=int, default=20)
    g.add_argument("--degree-bound", type=int, default=6)
    g.add_argument("--prec", type=int, default=None, help="series precision T (default 16)")
    g.add_argument("--factor-budget", type=int, default=DEFAULT_TRIAL_BUDGET)
    g.add_argument("--json", action="store_true", help="emit a JSON report on stdout")
    return p


def _algebra_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_argument_group("algebra")
    g.add_argument("--d", type=int, default=None, help="base ring ZZ[sqrt(d)], w*w = d")
    g.add_argument("--mod", type=int, default=None, help="base ring ZZ/m")
    g.add_argument("--vars", default=None, help="comma-separated variables (default x, or x,y)")
    g.add_argument("--rel", action="append", default=None, help="relation monomial such as x*y or x^2; repeatable")
    return p


COMMANDS: dict[str, tuple[Callable[[argparse.Namespace, RunConfig], Outcome], str]] = {
    "content": (cmd_content, "Ohm-Rush content of an element"),
    "lf": (cmd_lf, "decide whether an ideal I satisfies f in IS"),
    "dedekind-or": (cmd_dedekind_or, "finite primes and uniform exponent for f over a Dedekind base"),
    "factor-ideal": (cmd_factor_ideal, "prime factorization of an ideal"),
    "gaussian": (cmd_gaussian, "test c(fg) = c(f)c(g)"),
    "dm-exponent": (cmd_dm_exponent, "least Dedekind-Mertens exponent"),
    "weak-content": (cmd_weak_content, "test sqrt c(fg) = sqrt(c(f)c(g))"),
    "power-content": (cmd_power_content, "decide whether radical ideals extend to radical ideals"),
    "prime-extension": (cmd_prime_extension, "decide whether pS is prime"),
    "prop46": (cmd_prop46, "test c(I) ∩ c(J) ⊆ sqrt c(I ∩ J) for principal I, J"),
    "dvr-base": (cmd_dvr_base, "prime extension and finite p-adic order over Z_(p)"),
    "transitivity": (cmd_transitivity, "power-content transitivity on a tower"),
    "dim2": (cmd_dim2, "factorization of x^n - y^n(1+y) over k[[y]]"),
    "node": (cmd_node, "branch factorization of the node y^2 = x^2 + x^3"),
    "dvr-chain": (cmd_dvr_chain, "content-approximation chain of a series"),
    "xp": (cmd_xp, "constructive witnesses for Z[x/p : p prime]"),
    "eisenstein": (cmd_eisenstein, "Eisenstein criterion at a prime element"),
}

_ALGEBRA_COMMANDS = {
    "content", "lf", "dedekind-or", "factor-ideal", "gaussian", "dm-exponent", "weak-content",
    "power-content", "prime-extension", "prop46", "dvr-base", "transitivity",
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="orush", description="Exact Ohm-Rush content workbench.")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")
    common = _common_parser()
    algebra = _algebra_parser()
    subs = {}
    for name, (_, help_text) in COMMANDS.items():
        parents = [common, algebra] if name in _ALGEBRA_COMMANDS else [common]
        subs[name] = sub.add_parser(name, parents=parents, help=help_text, description=help_text)
    for name in ("content", "lf", "dedekind-or", "gaussian", "dm-exponent", "weak-content", "prop46", "dvr-base"):
        subs[name].add_argument("--f", default=None, help="element, e.g. (1+w)+2x")
    for name in ("gaussian", "dm-exponent", "weak-content", "prop46"):
        subs[name].add_argument("--g", default=None)
    subs["lf"].add_argument("--ideal", default=None, help="comma-separated generators")
    subs["factor-ideal"].add_argument("--gens", default=None, help="comma-separated generators, e.g. 2,1+w")
    subs["dm-exponent"].add_argument("--cap", type=int, default=None, help="search cap (default deg g + 2)")
    subs["prime-extension"].add_argument("--p", default=None, help="generators of the prime ideal")
    subs["dvr-base"].add_argument("--p", default=None, help="rational prime")
    subs["transitivity"].add_argument("--new-vars", default="y")
    subs["transitivity"].add_argument("--top-rel", action="append", default=None, help="relation of B over A")
    subs["dim2"].add_argument("--char", type=int, choices=(0, 2), default=0)
    subs["dvr-chain"].add_argument("--series", default=None, help="JSON file of a truncated series")
    subs["dvr-chain"].add_argument("--coeffs", default=None, help="comma-separated coefficients instead of a file")
    subs["dvr-chain"].add_argument("--field", default="QQ")
    subs["xp"].add_argument("--bound", type=int, default=10)
    subs["eisenstein"].add_argument("--poly", default=None, help="JSON file with fields ring, vars, terms")
    subs["eisenstein"].add_argument("--expr", default=None, help="polynomial expression instead of a file")
    subs["eisenstein"].add_argument("--ring", default="QQ", help="coefficient ring for --expr")
    subs["eisenstein"].add_argument("--prime", default=None, help="prime element, e.g. y+1 or 3")
    return parser


def run(argv: Sequence[str]) -> tuple[int, str]:
    """Parse ``argv``, run the command, and return ``(exit code, rendered report)``."""
    parser = build_parser()
    try:
        args = parser.parse_args(list(argv))
    except SystemExit as exc:
        return (EXIT_OK if exc.code == 0 else EXIT_USAGE), ""
    if args.command is None:
        return EXIT_USAGE, parser.format_usage()
    cfg: RunConfig | None = None
    try:
        cfg = _config_from_args(args)
        handler = COMMANDS[args.command][0]
        out = handler(args, cfg)
    except OrushError as exc:
        cfg_json = cfg.to_json() if cfg is not None else None
        err = {"command": args.command, "error": type(exc).__name__, "message": str(exc), "config": cfg_json}
        if getattr(args, "json", False):
            return EXIT_USAGE, json.dumps(err, sort_keys=True, ensure_ascii=False)
        return EXIT_USAGE, f"error ({type(exc).__name__}): {exc}"
    payload = {"command": args.command, "config": cfg.to_json(), **out.payload}
    if cfg.format == "json":
        return out.code, json.dumps(jsonify(payload), sort_keys=True, ensure_ascii=False)
    head = [f"command: {args.command}", "config: " + json.dumps(cfg.to_json(), sort_keys=True)]
    return out.code, "\n".join(head + out.lines)


def main(argv: Sequence[str] | None = None) -> int:
    code, text = run(sys.argv[1:] if argv is None else argv)
    if text:
        stream = sys.stderr if text.startswith("error") else sys.stdout
        print(text, file=stream)
    return code


if __name__ == "__main__":
    sys.exit(main())
