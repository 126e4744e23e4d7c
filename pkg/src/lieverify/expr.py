"""Immutable expression trees over jet variables, parameters and opaque functions.

Nodes: exact rational constants, symbols, flattened sums and products, powers
with full expression exponents, elementary functions, and opaque function
applications carrying a derivative multi-index.  `ln` always means ln|.|;
a bare natural logarithm is not representable.  Construction keeps light
invariants (flattening, constant folding, 0/1 absorption); full canonical
form lives in `simplify.normalize`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Mapping

from .errors import DomainError, MissingBinding, OrderOverflow

JET_SYMBOLS = ("t", "x", "u", "u_t", "u_x", "u_tt", "u_tx", "u_xx")
FIRST_ORDER = ("u_t", "u_x")
SECOND_ORDER = ("u_tt", "u_tx", "u_xx")
PARAMETERS = ("beta", "k", "m", "q", "lam", "lam1", "lam2")
FUNCTIONS = ("ln", "exp", "sin", "cos", "abs", "sign")


class Expr:
    """Base node.  Instances are immutable; hash is precomputed."""

    __slots__ = ("_hash",)

    def __hash__(self) -> int:
        return self._hash

    def __add__(self, other):
        return add(self, as_expr(other))

    def __radd__(self, other):
        return add(as_expr(other), self)

    def __sub__(self, other):
        return add(self, neg(as_expr(other)))

    def __rsub__(self, other):
        return add(as_expr(other), neg(self))

    def __mul__(self, other):
        return mul(self, as_expr(other))

    def __rmul__(self, other):
        return mul(as_expr(other), self)

    def __truediv__(self, other):
        return div(self, as_expr(other))

    def __rtruediv__(self, other):
        return div(as_expr(other), self)

    def __pow__(self, other):
        return pow_(self, as_expr(other))

    def __neg__(self):
        return neg(self)

    def __repr__(self) -> str:
        from .parser import print_expr

        return print_expr(self)


class Const(Expr):
    __slots__ = ("value",)

    def __init__(self, value: int | Fraction):
        self.value = value if isinstance(value, Fraction) else Fraction(value)
        self._hash = hash(("const", self.value))

    __hash__ = Expr.__hash__

    def __eq__(self, other):
        return self is other or (type(other) is Const and self.value == other.value)


class Sym(Expr):
    __slots__ = ("name",)

    def __init__(self, name: str):
        self.name = name
        self._hash = hash(("sym", name))

    __hash__ = Expr.__hash__

    def __eq__(self, other):
        return self is other or (type(other) is Sym and self.name == other.name)


class Add(Expr):
    __slots__ = ("terms",)

    def __init__(self, terms: tuple[Expr, ...]):
        assert len(terms) >= 2
        self.terms = terms
        self._hash = hash(("add", terms))

    __hash__ = Expr.__hash__

    def __eq__(self, other):
        return self is other or (
            type(other) is Add and self._hash == other._hash and self.terms == other.terms
        )


class Mul(Expr):
    __slots__ = ("factors",)

    def __init__(self, factors: tuple[Expr, ...]):
        assert len(factors) >= 2
        self.factors = factors
        self._hash = hash(("mul", factors))

    __hash__ = Expr.__hash__

    def __eq__(self, other):
        return self is other or (
            type(other) is Mul and self._hash == other._hash and self.factors == other.factors
        )


class Pow(Expr):
    __slots__ = ("base", "exponent")

    def __init__(self, base: Expr, exponent: Expr):
        self.base = base
        self.exponent = exponent
        self._hash = hash(("pow", base, exponent))

    __hash__ = Expr.__hash__

    def __eq__(self, other):
        return self is other or (
            type(other) is Pow
            and self._hash == other._hash
            and self.base == other.base
            and self.exponent == other.exponent
        )


class Fun(Expr):
    __slots__ = ("name", "arg")

    def __init__(self, name: str, arg: Expr):
        self.name = name
        self.arg = arg
        self._hash = hash(("fun", name, arg))

    __hash__ = Expr.__hash__

    def __eq__(self, other):
        return self is other or (
            type(other) is Fun
            and self._hash == other._hash
            and self.name == other.name
            and self.arg == other.arg
        )


class Opaque(Expr):
    """Application of an uninterpreted function, e.g. G(x - beta*t).

    `deriv` is the partial-derivative multi-index, one entry per argument.
    """

    __slots__ = ("name", "args", "deriv")

    def __init__(self, name: str, args: tuple[Expr, ...], deriv: tuple[int, ...]):
        assert 1 <= len(args) <= 2 and len(deriv) == len(args)
        assert all(d >= 0 for d in deriv)
        self.name = name
        self.args = args
        self.deriv = deriv
        self._hash = hash(("opaque", name, args, deriv))

    __hash__ = Expr.__hash__

    def __eq__(self, other):
        return self is other or (
            type(other) is Opaque
            and self._hash == other._hash
            and self.name == other.name
            and self.deriv == other.deriv
            and self.args == other.args
        )


ZERO = Const(0)
ONE = Const(1)
MINUS_ONE = Const(-1)
HALF = Const(Fraction(1, 2))

_SYM_CACHE: dict[str, Sym] = {}


def sym(name: str) -> Sym:
    got = _SYM_CACHE.get(name)
    if got is None:
        got = _SYM_CACHE[name] = Sym(name)
    return got


def as_expr(v) -> Expr:
    if isinstance(v, Expr):
        return v
    if isinstance(v, (int, Fraction)):
        return Const(v)
    raise TypeError(f"cannot interpret {v!r} as an expression")


def add(*terms) -> Expr:
    const = Fraction(0)
    rest: list[Expr] = []
    for term in terms:
        term = as_expr(term)
        if isinstance(term, Add):
            for sub in term.terms:
                if isinstance(sub, Const):
                    const += sub.value
                else:
                    rest.append(sub)
        elif isinstance(term, Const):
            const += term.value
        else:
            rest.append(term)
    if const != 0:
        rest.append(Const(const))
    if not rest:
        return ZERO
    if len(rest) == 1:
        return rest[0]
    return Add(tuple(rest))


def mul(*factors) -> Expr:
    const = Fraction(1)
    rest: list[Expr] = []
    for f in factors:
        f = as_expr(f)
        if isinstance(f, Mul):
            for sub in f.factors:
                if isinstance(sub, Const):
                    const *= sub.value
                else:
                    rest.append(sub)
        elif isinstance(f, Const):
            const *= f.value
        else:
            rest.append(f)
    if const == 0:
        return ZERO
    if not rest:
        return Const(const)
    out = rest if const == 1 else [Const(const)] + rest
    if len(out) == 1:
        return out[0]
    return Mul(tuple(out))


def pow_(base, exponent) -> Expr:
    base = as_expr(base)
    exponent = as_expr(exponent)
    if isinstance(exponent, Const):
        if exponent.value == 0:
            return ONE
        if exponent.value == 1:
            return base
        if isinstance(base, Const) and exponent.value.denominator == 1:
            n = exponent.value.numerator
            if base.value == 0 and n < 0:
                raise DomainError("0 raised to a negative power")
            return Const(base.value**n)
    if isinstance(base, Const):
        if base.value == 1:
            return ONE
        if base.value == 0 and isinstance(exponent, Const) and exponent.value > 0:
            return ZERO
    return Pow(base, exponent)


def neg(e) -> Expr:
    return mul(MINUS_ONE, as_expr(e))


def div(a, b) -> Expr:
    return mul(as_expr(a), pow_(as_expr(b), MINUS_ONE))


def fun(name: str, arg) -> Expr:
    arg = as_expr(arg)
    if name == "sqrt":
        # surface sugar only; no abs is inserted
        return pow_(arg, HALF)
    if name not in FUNCTIONS:
        raise ValueError(f"unknown function {name!r}")
    if isinstance(arg, Const):
        if name == "abs":
            return Const(abs(arg.value))
        if name == "sign":
            return Const((arg.value > 0) - (arg.value < 0))
    return Fun(name, arg)


def opaque(name: str, args: Iterable, deriv: Iterable[int] | None = None) -> Expr:
    args_t = tuple(as_expr(a) for a in args)
    deriv_t = tuple(deriv) if deriv is not None else (0,) * len(args_t)
    return Opaque(name, args_t, deriv_t)


def G(*args) -> Expr:
    return opaque("G", args)


def is_zero_const(e: Expr) -> bool:
    return isinstance(e, Const) and e.value == 0


def free_symbols(e: Expr) -> frozenset[str]:
    out: set[str] = set()
    stack = [e]
    while stack:
        n = stack.pop()
        if isinstance(n, Sym):
            out.add(n.name)
        elif isinstance(n, Add):
            stack.extend(n.terms)
        elif isinstance(n, Mul):
            stack.extend(n.factors)
        elif isinstance(n, Pow):
            stack.append(n.base)
            stack.append(n.exponent)
        elif isinstance(n, Fun):
            stack.append(n.arg)
        elif isinstance(n, Opaque):
            stack.extend(n.args)
    return frozenset(out)


def opaque_names(e: Expr) -> frozenset[str]:
    out: set[str] = set()
    stack = [e]
    while stack:
        n = stack.pop()
        if isinstance(n, Opaque):
            out.add(n.name)
            stack.extend(n.args)
        elif isinstance(n, Add):
            stack.extend(n.terms)
        elif isinstance(n, Mul):
            stack.extend(n.factors)
        elif isinstance(n, Pow):
            stack.append(n.base)
            stack.append(n.exponent)
        elif isinstance(n, Fun):
            stack.append(n.arg)
    return frozenset(out)


def jet_order(e: Expr) -> int:
    syms = free_symbols(e)
    if any(s in syms for s in SECOND_ORDER):
        return 2
    if any(s in syms for s in FIRST_ORDER):
        return 1
    return 0


def diff(e: Expr, s) -> Expr:
    """Partial derivative; every symbol other than `s` is held fixed."""
    if isinstance(s, Sym):
        s = s.name
    if isinstance(e, Const):
        return ZERO
    if isinstance(e, Sym):
        return ONE if e.name == s else ZERO
    if s not in free_symbols(e):
        return ZERO
    if isinstance(e, Add):
        return add(*(diff(t, s) for t in e.terms))
    if isinstance(e, Mul):
        pieces = []
        fs = e.factors
        for i, f in enumerate(fs):
            d = diff(f, s)
            if is_zero_const(d):
                continue
            pieces.append(mul(*fs[:i], d, *fs[i + 1 :]))
        return add(*pieces)
    if isinstance(e, Pow):
        b, ex = e.base, e.exponent
        db = diff(b, s)
        dex = diff(ex, s)
        if is_zero_const(dex):
            # d(b^c) = c * b^(c-1) * b'
            return mul(ex, pow_(b, add(ex, MINUS_ONE)), db)
        # d(b^e) = b^e * (e' * ln|b| + e * b' / b)
        return mul(e, add(mul(dex, fun("ln", b)), mul(ex, db, pow_(b, MINUS_ONE))))
    if isinstance(e, Fun):
        da = diff(e.arg, s)
        if is_zero_const(da):
            return ZERO
        if e.name == "ln":
            # ln means ln|.|, so the derivative is arg'/arg either way
            return mul(da, pow_(e.arg, MINUS_ONE))
        if e.name == "exp":
            return mul(e, da)
        if e.name == "sin":
            return mul(fun("cos", e.arg), da)
        if e.name == "cos":
            return mul(MINUS_ONE, fun("sin", e.arg), da)
        if e.name == "abs":
            return mul(fun("sign", e.arg), da)
        if e.name == "sign":
            # zero almost everywhere; sampling never lands on the kink
            return ZERO
        raise AssertionError(e.name)
    if isinstance(e, Opaque):
        pieces = []
        for i, a in enumerate(e.args):
            da = diff(a, s)
            if is_zero_const(da):
                continue
            bumped = tuple(d + (1 if j == i else 0) for j, d in enumerate(e.deriv))
            pieces.append(mul(Opaque(e.name, e.args, bumped), da))
        return add(*pieces)
    raise AssertionError(type(e))


def diffn(e: Expr, s, n: int) -> Expr:
    for _ in range(n):
        e = diff(e, s)
    return e


def total_diff(e: Expr, v: str) -> Expr:
    """Total derivative D_t or D_x on the order-1 jet space.

    The input may depend on t, x, u, u_t, u_x and parameters; the result
    lives in the order-2 jet space.
    """
    if v not in ("t", "x"):
        raise ValueError(f"total derivative direction must be t or x, got {v!r}")
    syms = free_symbols(e)
    bad = [s for s in SECOND_ORDER if s in syms]
    if bad:
        raise OrderOverflow(f"total_diff input contains second-order jet symbols {bad}")
    if v == "t":
        return add(
            diff(e, "t"),
            mul(sym("u_t"), diff(e, "u")),
            mul(sym("u_tt"), diff(e, "u_t")),
            mul(sym("u_tx"), diff(e, "u_x")),
        )
    return add(
        diff(e, "x"),
        mul(sym("u_x"), diff(e, "u")),
        mul(sym("u_tx"), diff(e, "u_t")),
        mul(sym("u_xx"), diff(e, "u_x")),
    )


def substitute(e: Expr, bindings: Mapping) -> Expr:
    """Simultaneous substitution of symbols by expressions."""
    table: dict[str, Expr] = {}
    for key, val in bindings.items():
        name = key.name if isinstance(key, Sym) else key
        table[name] = as_expr(val)
    if not table:
        return e

    def go(n: Expr) -> Expr:
        if isinstance(n, Sym):
            return table.get(n.name, n)
        if isinstance(n, Const):
            return n
        if isinstance(n, Add):
            return add(*(go(t) for t in n.terms))
        if isinstance(n, Mul):
            return mul(*(go(f) for f in n.factors))
        if isinstance(n, Pow):
            return pow_(go(n.base), go(n.exponent))
        if isinstance(n, Fun):
            return fun(n.name, go(n.arg))
        if isinstance(n, Opaque):
            return Opaque(n.name, tuple(go(a) for a in n.args), n.deriv)
        raise AssertionError(type(n))

    return go(e)


# numeric evaluation ---------------------------------------------------------

OpaqueFn = Callable[..., float]


@dataclass(frozen=True)
class JetPoint:
    """Point of evaluation: symbol values plus opaque-function callables.

    Each opaque callable receives (deriv, *argument_values) and returns the
    value of that partial derivative at those arguments.
    """

    values: Mapping[str, float]
    opaque: Mapping[str, OpaqueFn] = field(default_factory=dict)


def _finite(v: float) -> float:
    if not math.isfinite(v):
        raise DomainError(f"non-finite intermediate value {v!r}")
    return v


def _eval_pow(base: float, exp_node: Expr, exp_val: float) -> float:
    if isinstance(exp_node, Const):
        fr = exp_node.value
        if fr.denominator == 1:
            n = fr.numerator
            if base == 0.0 and n < 0:
                raise DomainError("0.0 raised to a negative power")
            try:
                return _finite(base**n)
            except OverflowError as exc:
                raise DomainError(str(exc)) from exc
        if base == 0.0:
            if fr < 0:
                raise DomainError("0.0 raised to a negative power")
            return 0.0
        if base < 0.0:
            if fr.denominator % 2 == 1:
                # real odd root: (-8)^(1/3) = -2
                mag = (-base) ** float(fr)
                return _finite(-mag if fr.numerator % 2 else mag)
            raise DomainError(f"negative base {base} raised to {fr}")
        try:
            return _finite(base ** float(fr))
        except OverflowError as exc:
            raise DomainError(str(exc)) from exc
    if base < 0.0:
        raise DomainError(f"negative base {base} raised to non-constant exponent")
    if base == 0.0 and exp_val <= 0:
        raise DomainError("0.0 raised to a non-positive power")
    try:
        return _finite(base**exp_val)
    except OverflowError as exc:
        raise DomainError(str(exc)) from exc


def evaluate(e: Expr, point: JetPoint) -> float:
    """IEEE-double evaluation in the composition order defined by the tree."""

    def ev(n: Expr) -> float:
        if isinstance(n, Const):
            return float(n.value)
        if isinstance(n, Sym):
            v = point.values.get(n.name)
            if v is None:
                raise MissingBinding(f"no value bound for symbol {n.name!r}")
            return float(v)
        if isinstance(n, Add):
            total = 0.0
            for term in n.terms:
                total += ev(term)
            return _finite(total)
        if isinstance(n, Mul):
            out = 1.0
            for f in n.factors:
                out *= ev(f)
            return _finite(out)
        if isinstance(n, Pow):
            return _eval_pow(ev(n.base), n.exponent, ev(n.exponent))
        if isinstance(n, Fun):
            v = ev(n.arg)
            if n.name == "ln":
                if v == 0.0:
                    raise DomainError("ln|0|")
                return _finite(math.log(abs(v)))
            if n.name == "exp":
                try:
                    return _finite(math.exp(v))
                except OverflowError as exc:
                    raise DomainError(str(exc)) from exc
            if n.name == "sin":
                return math.sin(v)
            if n.name == "cos":
                return math.cos(v)
            if n.name == "abs":
                return abs(v)
            if n.name == "sign":
                return float((v > 0.0) - (v < 0.0))
            raise AssertionError(n.name)
        if isinstance(n, Opaque):
            fn = point.opaque.get(n.name)
            if fn is None:
                raise MissingBinding(f"no callable bound for opaque function {n.name!r}")
            args = tuple(ev(a) for a in n.args)
            return _finite(fn(n.deriv, *args))
        raise AssertionError(type(n))

    return ev(e)


def well_formed(e: Expr) -> bool:
    """Audit the construction invariants; used by tests."""
    if isinstance(e, Const):
        return isinstance(e.value, Fraction)
    if isinstance(e, Sym):
        return bool(e.name)
    if isinstance(e, Add):
        if len(e.terms) < 2:
            return False
        consts = [t for t in e.terms if isinstance(t, Const)]
        if len(consts) > 1 or any(c.value == 0 for c in consts):
            return False
        return all(not isinstance(t, Add) and well_formed(t) for t in e.terms)
    if isinstance(e, Mul):
        if len(e.factors) < 2:
            return False
        consts = [f for f in e.factors if isinstance(f, Const)]
        if len(consts) > 1 or any(c.value in (0, 1) for c in consts):
            return False
        return all(not isinstance(f, Mul) and well_formed(f) for f in e.factors)
    if isinstance(e, Pow):
        if isinstance(e.exponent, Const) and e.exponent.value in (0, 1):
            return False
        return well_formed(e.base) and well_formed(e.exponent)
    if isinstance(e, Fun):
        return e.name in FUNCTIONS and well_formed(e.arg)
    if isinstance(e, Opaque):
        return (
            1 <= len(e.args) <= 2
            and len(e.deriv) == len(e.args)
            and all(d >= 0 for d in e.deriv)
            and all(well_formed(a) for a in e.args)
        )
    return False
