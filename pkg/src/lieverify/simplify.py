"""Canonical forms and the two-tier zero test.

`normalize` rewrites an expression into a deterministic normal form:
like factors are merged by syntactically equal base (exponents add),
sign/abs interactions are folded on the shared core, products are
distributed over bare sums, and like terms are collected with exact
rational coefficients.  Powers of sums are deliberately left alone;
(a+b)^2 - a^2 - 2*a*b - b^2 is for the numeric tier, not this one.

`is_zero` first asks whether the normal form is literally 0 and only
then falls back to seeded numeric sampling with a relative band:
below 1e-9 counts as zero, at or above 1e-6 is a refutation with a
recorded witness, anything between is retried once and then flagged.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Mapping

from .errors import DomainError, NonlinearInAtoms
from .expr import (
    FIRST_ORDER,
    JET_SYMBOLS,
    PARAMETERS,
    SECOND_ORDER,
    ZERO,
    ONE,
    Add,
    Const,
    Expr,
    Fun,
    JetPoint,
    Mul,
    Opaque,
    Pow,
    Sym,
    add,
    evaluate,
    free_symbols,
    fun,
    mul,
    pow_,
    sym,
)

REL_PROVE = 1e-9
REL_REJECT = 1e-6

_MAX_DISTRIBUTE_DEPTH = 40
_MAX_RESAMPLE = 100


# ordering -------------------------------------------------------------------

def sort_key(e: Expr):
    """Total deterministic order on expressions, as nested tuples."""
    if isinstance(e, Const):
        return (0, e.value)
    if isinstance(e, Sym):
        return (1, e.name)
    if isinstance(e, Fun):
        return (2, e.name, sort_key(e.arg))
    if isinstance(e, Opaque):
        return (3, e.name, e.deriv, len(e.args)) + tuple(sort_key(a) for a in e.args)
    if isinstance(e, Pow):
        return (4, sort_key(e.base), sort_key(e.exponent))
    if isinstance(e, Mul):
        return (5, len(e.factors)) + tuple(sort_key(f) for f in e.factors)
    if isinstance(e, Add):
        return (6, len(e.terms)) + tuple(sort_key(t) for t in e.terms)
    raise AssertionError(type(e))


# normalization --------------------------------------------------------------

_norm_cache: dict[Expr, Expr] = {}


def normalize(e: Expr) -> Expr:
    if len(_norm_cache) > 200_000:
        _norm_cache.clear()
    return _norm(e, 0)


def _norm(e: Expr, depth: int) -> Expr:
    cached = _norm_cache.get(e)
    if cached is not None:
        return cached
    if isinstance(e, (Const, Sym)):
        out = e
    elif isinstance(e, Fun):
        out = _norm_fun(e.name, _norm(e.arg, depth))
    elif isinstance(e, Opaque):
        out = Opaque(e.name, tuple(_norm(a, depth) for a in e.args), e.deriv)
    elif isinstance(e, Pow):
        out = _norm_pow(_norm(e.base, depth), _norm(e.exponent, depth), depth)
    elif isinstance(e, Mul):
        out = _norm_mul([_norm(f, depth) for f in e.factors], depth)
    elif isinstance(e, Add):
        out = _norm_add([_norm(t, depth) for t in e.terms])
    else:
        raise AssertionError(type(e))
    _norm_cache[e] = out
    return out


def _norm_fun(name: str, arg: Expr) -> Expr:
    if name == "ln" and isinstance(arg, Fun) and arg.name == "exp":
        return arg.arg
    if name == "abs" and isinstance(arg, Fun) and arg.name == "abs":
        return arg
    if name in ("abs", "sign") and isinstance(arg, Mul) and isinstance(arg.factors[0], Const):
        # |c*r| = |c|*|r|, sign(c*r) = sign(c)*sign(r) for constant c
        c = arg.factors[0].value
        rest = arg.factors[1:]
        inner = rest[0] if len(rest) == 1 else Mul(rest)
        if name == "abs":
            return mul(Const(abs(c)), fun("abs", inner))
        return mul(Const(1 if c > 0 else -1), fun("sign", inner))
    return fun(name, arg)


def _norm_pow(base: Expr, exponent: Expr, depth: int) -> Expr:
    if isinstance(base, Pow) and isinstance(exponent, Const) and exponent.value.denominator == 1:
        return _norm_pow(base.base, _norm(mul(base.exponent, exponent), depth), depth)
    if isinstance(base, Mul) and isinstance(exponent, Const) and exponent.value.denominator == 1:
        return _norm_mul([pow_(f, exponent) for f in base.factors], depth)
    if isinstance(base, Fun) and isinstance(exponent, Const) and exponent.value.denominator == 1:
        n = exponent.value.numerator
        if base.name == "sign":
            # sign(e)^n collapses by parity (e != 0 a.e.)
            if n % 2 == 0:
                return ONE
            return base
        if base.name == "abs" and n % 2 == 0:
            return _norm_pow(base.arg, exponent, depth)
    return pow_(base, exponent)


def _split_coeff(term: Expr) -> tuple[Fraction, Expr]:
    if isinstance(term, Const):
        return term.value, ONE
    if isinstance(term, Mul) and isinstance(term.factors[0], Const):
        rest = term.factors[1:]
        body = rest[0] if len(rest) == 1 else Mul(rest)
        return term.factors[0].value, body
    return Fraction(1), term


def _norm_add(terms: list[Expr]) -> Expr:
    const_sum = Fraction(0)
    buckets: dict[Expr, Fraction] = {}
    stack = list(reversed(terms))
    while stack:
        term = stack.pop()
        if isinstance(term, Add):
            stack.extend(reversed(term.terms))
            continue
        if isinstance(term, Const):
            const_sum += term.value
            continue
        c, mono = _split_coeff(term)
        buckets[mono] = buckets.get(mono, Fraction(0)) + c
    out: list[Expr] = []
    for mono, c in sorted(buckets.items(), key=lambda kv: sort_key(kv[0])):
        if c == 0:
            continue
        out.append(mono if c == 1 else mul(Const(c), mono))
    if const_sum != 0:
        out.append(Const(const_sum))
    if not out:
        return ZERO
    if len(out) == 1:
        return out[0]
    return Add(tuple(out))


def _factor_core(f: Expr) -> tuple[Expr, Expr | None, Expr | None, int]:
    """Split a factor into (core, plain_exp, abs_exp, sign_count)."""
    if isinstance(f, Pow):
        if isinstance(f.base, Fun) and f.base.name == "abs":
            return f.base.arg, None, f.exponent, 0
        return f.base, f.exponent, None, 0
    if isinstance(f, Fun):
        if f.name == "abs":
            return f.arg, None, ONE, 0
        if f.name == "sign":
            return f.arg, None, None, 1
    return f, ONE, None, 0


def _norm_mul(factors: list[Expr], depth: int) -> Expr:
    coeff = Fraction(1)
    plain: dict[Expr, list[Expr]] = {}
    absexp: dict[Expr, list[Expr]] = {}
    signs: dict[Expr, int] = {}
    order: list[Expr] = []
    stack = list(reversed(factors))
    while stack:
        f = stack.pop()
        if isinstance(f, Mul):
            stack.extend(reversed(f.factors))
            continue
        if isinstance(f, Const):
            coeff *= f.value
            continue
        core, p, a, s = _factor_core(f)
        if core not in plain:
            plain[core] = []
            absexp[core] = []
            signs[core] = 0
            order.append(core)
        if p is not None:
            plain[core].append(p)
        if a is not None:
            absexp[core].append(a)
        signs[core] += s
    if coeff == 0:
        return ZERO

    emitted: list[Expr] = []
    for core in order:
        p = _norm(add(*plain[core]), depth) if plain[core] else ZERO
        a = _norm(add(*absexp[core]), depth) if absexp[core] else ZERO
        s = signs[core] % 2
        if s and a != ZERO:
            # sign(e)*|e|^a = e*|e|^(a-1)
            p = _norm(add(p, ONE), depth)
            a = _norm(add(a, Const(-1)), depth)
            s = 0
        if s and a == ZERO and p != ZERO and isinstance(p, Const) and p.value.denominator == 1:
            # e^k*sign(e) = e^(k-1)*|e| for nonzero integer k
            p = Const(p.value - 1)
            a = ONE
            s = 0
        if a != ZERO and isinstance(p, Const) and p.value.denominator == 1:
            # shift the even integer part of the plain power into |e|
            k = (p.value.numerator // 2) * 2
            if k != 0:
                a = _norm(add(a, Const(k)), depth)
                p = Const(p.value - k)
        if isinstance(a, Const) and a.value.denominator == 1 and a.value.numerator % 2 == 0:
            # |e|^(2k) = e^(2k)
            p = _norm(add(p, a), depth)
            a = ZERO
        if p != ZERO:
            emitted.append(_norm_pow(core, p, depth))
        if a != ZERO:
            emitted.append(_norm_pow(_norm_fun("abs", core), a, depth))
        if s:
            emitted.append(fun("sign", core))

    flat: list[Expr] = []
    for f in emitted:
        if isinstance(f, Const):
            coeff *= f.value
        elif isinstance(f, Mul):
            for g in f.factors:
                if isinstance(g, Const):
                    coeff *= g.value
                else:
                    flat.append(g)
        else:
            flat.append(f)
    if coeff == 0:
        return ZERO

    adds = [f for f in flat if isinstance(f, Add)]
    if adds and depth < _MAX_DISTRIBUTE_DEPTH:
        rest = [f for f in flat if not isinstance(f, Add)]
        products: list[Expr] = [mul(Const(coeff), *rest)]
        for a in adds:
            products = [
                _norm(mul(tm, at), depth + 1) for tm in products for at in a.terms
            ]
        return _norm_add(products)

    flat.sort(key=sort_key)
    if not flat:
        return Const(coeff)
    if coeff != 1:
        return Mul((Const(coeff),) + tuple(flat))
    return flat[0] if len(flat) == 1 else Mul(tuple(flat))


# atom collection ------------------------------------------------------------

def _opaque_free(e: Expr) -> bool:
    stack = [e]
    while stack:
        n = stack.pop()
        if isinstance(n, Opaque):
            return False
        if isinstance(n, Add):
            stack.extend(n.terms)
        elif isinstance(n, Mul):
            stack.extend(n.factors)
        elif isinstance(n, Pow):
            stack.extend((n.base, n.exponent))
        elif isinstance(n, Fun):
            stack.append(n.arg)
    return True


def collect_atoms(e: Expr, monomial_syms: tuple[str, ...] = ()) -> dict[Expr, Expr]:
    """Split into {atom: coefficient} with atom-free coefficients.

    An atom is an opaque application (degree one, e.g. G'(w)) optionally
    times a monomial in the listed symbols; the constant atom is 1.  The
    split exists because the residuals this feeds on are affine-linear in
    the arbitrary function and polynomial in the higher jet coordinates.
    Raises NonlinearInAtoms otherwise (squared atoms, atoms inside other
    functions, symbols with non-constant exponents).
    """
    en = normalize(e)
    terms = en.terms if isinstance(en, Add) else (en,)
    syms = set(monomial_syms)
    groups: dict[Expr, list[Expr]] = {}
    for term in terms:
        c, mono = _split_coeff(term)
        factors = mono.factors if isinstance(mono, Mul) else (mono,)
        powers: dict[str, Fraction] = {}
        op_atom: Expr | None = None
        coeff_factors: list[Expr] = [] if c == 1 else [Const(c)]
        for f in factors:
            if isinstance(f, Opaque):
                if op_atom is not None:
                    raise NonlinearInAtoms("product of two opaque atoms")
                op_atom = f
                continue
            if isinstance(f, Pow) and isinstance(f.base, Opaque):
                raise NonlinearInAtoms("opaque atom raised to a power")
            if isinstance(f, Sym) and f.name in syms:
                powers[f.name] = powers.get(f.name, Fraction(0)) + 1
                continue
            if isinstance(f, Pow) and isinstance(f.base, Sym) and f.base.name in syms:
                if not isinstance(f.exponent, Const):
                    raise NonlinearInAtoms(
                        f"{f.base.name} carries a non-constant exponent"
                    )
                powers[f.base.name] = powers.get(f.base.name, Fraction(0)) + f.exponent.value
                continue
            if not _opaque_free(f):
                raise NonlinearInAtoms("opaque atom inside another function")
            if free_symbols(f) & syms:
                raise NonlinearInAtoms(
                    "monomial symbol appears inside a non-polynomial factor"
                )
            coeff_factors.append(f)
        parts: list[Expr] = [] if op_atom is None else [op_atom]
        for name, p in sorted(powers.items()):
            parts.append(pow_(sym(name), Const(p)))
        atom = mul(*parts) if parts else ONE
        groups.setdefault(atom, []).append(
            mul(*coeff_factors) if coeff_factors else ONE
        )
    out = {k: _norm_add(v) for k, v in groups.items()}
    return dict(sorted(out.items(), key=lambda kv: sort_key(kv[0])))


# sampling -------------------------------------------------------------------

_DEFAULT_RANGE = (0.3, 1.7)
_SIGNED_DEFAULT = frozenset(FIRST_ORDER) | frozenset(SECOND_ORDER)


@dataclass(frozen=True)
class SamplingDomain:
    """Per-symbol sampling ranges; unlisted symbols use [0.3, 1.7].

    Derivative coordinates default to a random sign on top of the
    magnitude range; an explicit range is always taken literally.
    A mapper, when present, re-expresses a sampled base point in new
    coordinates; it is how transformed equations are checked on the
    image of the original domain.
    """

    ranges: Mapping[str, tuple[float, float]] = field(default_factory=dict)
    mapper: Callable[[dict[str, float]], dict[str, float]] | None = None

    def sample(self, rng: random.Random, name: str) -> float:
        r = self.ranges.get(name)
        if r is not None:
            return rng.uniform(r[0], r[1])
        v = rng.uniform(*_DEFAULT_RANGE)
        if name in _SIGNED_DEFAULT and rng.random() < 0.5:
            v = -v
        return v

    def merged(self, overrides: Mapping[str, tuple[float, float]]) -> "SamplingDomain":
        merged = dict(self.ranges)
        merged.update(overrides)
        return SamplingDomain(merged, self.mapper)


def default_domain() -> SamplingDomain:
    return SamplingDomain({})


def _opaque_arities(e: Expr) -> dict[str, int]:
    out: dict[str, int] = {}
    stack = [e]
    while stack:
        n = stack.pop()
        if isinstance(n, Opaque):
            out[n.name] = len(n.args)
            stack.extend(n.args)
        elif isinstance(n, Add):
            stack.extend(n.terms)
        elif isinstance(n, Mul):
            stack.extend(n.factors)
        elif isinstance(n, Pow):
            stack.extend((n.base, n.exponent))
        elif isinstance(n, Fun):
            stack.append(n.arg)
    return out


def _surrogate(rng: random.Random, arity: int):
    """Smooth analytic stand-in for an opaque function, closed under d/dw."""
    amp = rng.uniform(0.5, 1.5)
    al = rng.uniform(0.7, 1.3)
    be = rng.uniform(0.7, 1.3)
    phase = rng.uniform(0.0, 2.0 * math.pi)
    if arity == 1:
        def fn1(deriv, w):
            n = deriv[0]
            return amp * al**n * math.sin(al * w + phase + n * math.pi / 2)
        return fn1

    def fn2(deriv, w, v):
        a, b = deriv
        return amp * al**a * be**b * math.sin(al * w + be * v + phase + (a + b) * math.pi / 2)
    return fn2


def sample_point(
    rng: random.Random,
    names: tuple[str, ...],
    arities: Mapping[str, int],
    domain: SamplingDomain,
) -> JetPoint:
    sample_names = names
    if domain.mapper is not None:
        sample_names = tuple(sorted(set(names) | {"t", "x", "u", "u_x"}))
    values = {name: domain.sample(rng, name) for name in sample_names}
    if domain.mapper is not None:
        values = domain.mapper(values)
    opaques = {name: _surrogate(rng, arities[name]) for name in sorted(arities)}
    return JetPoint(values, opaques)


# the zero test --------------------------------------------------------------

@dataclass(frozen=True)
class ZeroVerdict:
    status: str  # proved-zero | numeric-zero | nonzero
    seed: int
    points: int = 0
    max_abs: float = 0.0
    witness: dict | None = None
    witness_value: float | None = None
    witness_atom: str | None = None
    ambiguous: bool = False

    @property
    def ok(self) -> bool:
        return self.status != "nonzero"


def _eval_with_scale(e: Expr, point: JetPoint) -> tuple[float, float]:
    if isinstance(e, Add):
        vals = [evaluate(t, point) for t in e.terms]
        scale = max(abs(v) for v in vals)
        return math.fsum(vals), scale
    v = evaluate(e, point)
    return v, abs(v)


def _sample_run(
    e: Expr,
    rng: random.Random,
    domain: SamplingDomain,
    points: int,
) -> tuple[float, dict | None, float | None, bool]:
    """(max_rel, witness, witness_value, ambiguous); witness set on rejection."""
    names = tuple(sorted(free_symbols(e)))
    arities = _opaque_arities(e)
    max_rel = 0.0
    ambiguous = False
    for _ in range(points):
        rel, v, pt = _probe(e, rng, names, arities, domain)
        if rel >= REL_REJECT:
            return rel, dict(pt.values), v, ambiguous
        if rel >= REL_PROVE:
            # in the dead band: one fresh point, then record the doubt
            rel2, v2, pt2 = _probe(e, rng, names, arities, domain)
            if rel2 >= REL_REJECT:
                return rel2, dict(pt2.values), v2, ambiguous
            if rel2 >= REL_PROVE:
                ambiguous = True
            rel = max(rel, rel2)
        max_rel = max(max_rel, rel)
    return max_rel, None, None, ambiguous


def is_zero(
    e: Expr,
    *,
    seed: int = 42,
    key: str = "",
    domain: SamplingDomain | None = None,
    points: int = 32,
    monomial_syms: tuple[str, ...] = (),
) -> ZeroVerdict:
    en = normalize(e)
    if en == ZERO:
        return ZeroVerdict(status="proved-zero", seed=seed)
    rng = random.Random(f"{seed}|{key}")
    domain = domain or default_domain()

    try:
        atoms = collect_atoms(en, monomial_syms)
    except NonlinearInAtoms:
        atoms = None

    if atoms is not None:
        live = [(a, c) for a, c in atoms.items() if c != ZERO]
        if not live:
            return ZeroVerdict(status="proved-zero", seed=seed)
        max_rel = 0.0
        ambiguous = False
        for atom, coeff in live:
            rel, wit, wv, amb = _sample_run(coeff, rng, domain, points)
            ambiguous = ambiguous or amb
            if wit is not None:
                # a coefficient rejected; confirm on the whole expression so a
                # split across syntactically-unequal-but-equal atoms cannot
                # turn a true zero into a refutation
                rel2, wit2, wv2, _ = _sample_run(en, rng, domain, points)
                if wit2 is not None:
                    return ZeroVerdict(
                        status="nonzero", seed=seed, points=points, max_abs=rel2,
                        witness=wit2, witness_value=wv2,
                        witness_atom=_atom_label(atom),
                    )
                ambiguous = True
                max_rel = max(max_rel, rel2)
                continue
            max_rel = max(max_rel, rel)
        return ZeroVerdict(
            status="numeric-zero", seed=seed, points=points, max_abs=max_rel,
            ambiguous=ambiguous,
        )

    rel, wit, wv, amb = _sample_run(en, rng, domain, points)
    if wit is not None:
        return ZeroVerdict(
            status="nonzero", seed=seed, points=points, max_abs=rel,
            witness=wit, witness_value=wv,
        )
    return ZeroVerdict(
        status="numeric-zero", seed=seed, points=points, max_abs=rel, ambiguous=amb,
    )


def _atom_label(atom: Expr) -> str:
    from .parser import print_expr

    return print_expr(atom)


def _probe(
    e: Expr,
    rng: random.Random,
    names: tuple[str, ...],
    arities: Mapping[str, int],
    domain: SamplingDomain,
) -> tuple[float, float, JetPoint]:
    last: DomainError | None = None
    for _ in range(_MAX_RESAMPLE):
        pt = sample_point(rng, names, arities, domain)
        try:
            v, scale = _eval_with_scale(e, pt)
        except DomainError as err:
            last = err
            continue
        return abs(v) / (1.0 + scale), v, pt
    raise DomainError(
        f"no valid sample point after {_MAX_RESAMPLE} attempts: {last}"
    )
