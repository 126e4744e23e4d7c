"""Surface syntax: tokenizer, precedence-climbing parser, deterministic printer.

Binding strength: ^  >  unary -  >  * /  >  + -, with ^ right-associative.
There is no juxtaposition product; `2x` and `beta(x+1)` are syntax errors.
Integer literals only; rationals are written with `/`.  `ln` denotes ln|.|,
`sqrt(e)` is sugar for e^(1/2), and G with primes (arity 1) or subscripts
`_w`, `_v`, `_wv`, ... (arity 2) denotes derivatives of the opaque function.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import ArityError, ParseError, SourceSpan, UnknownDirection
from .expr import (
    Const,
    Expr,
    Add,
    Fun,
    Mul,
    Opaque,
    Pow,
    Sym,
    add,
    as_expr,
    diff,
    free_symbols,
    fun,
    mul,
    neg,
    opaque,
    pow_,
    sym,
)

_JET_SURFACE = {
    "t": "t",
    "x": "x",
    "u": "u",
    "ut": "u_t",
    "ux": "u_x",
    "utt": "u_tt",
    "utx": "u_tx",
    "uxx": "u_xx",
}
_PARAM_NAMES = ("beta", "k", "m", "q", "lam", "lam1", "lam2")
_FUNCTION_HEADS = ("ln", "exp", "sin", "cos", "abs", "sign", "sqrt")
_DIRECTIONS = ("d_t", "d_x", "d_u")

_SYM_TO_SURFACE = {v: k for k, v in _JET_SURFACE.items()}


@dataclass(frozen=True)
class _Token:
    kind: str  # num, name, op, lparen, rparen, comma, end
    text: str
    span: SourceSpan


def _tokenize(text: str) -> list[_Token]:
    tokens: list[_Token] = []
    i, line, col = 0, 1, 1
    n = len(text)

    def span(start: int, end: int, sline: int, scol: int) -> SourceSpan:
        return SourceSpan(start, end, sline, scol)

    while i < n:
        c = text[i]
        if c == "\n":
            i += 1
            line += 1
            col = 1
            continue
        if c.isspace():
            i += 1
            col += 1
            continue
        start, sline, scol = i, line, col
        if c.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            if j < n and text[j] == ".":
                raise ParseError(
                    "decimal literals are not supported; write rationals like 3/2",
                    span(start, j + 1, sline, scol),
                )
            tokens.append(_Token("num", text[i:j], span(start, j, sline, scol)))
            col += j - i
            i = j
            continue
        if c.isalpha() or c == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            while j < n and text[j] == "'":
                j += 1
            tokens.append(_Token("name", text[i:j], span(start, j, sline, scol)))
            col += j - i
            i = j
            continue
        if c in "+-*/^":
            tokens.append(_Token("op", c, span(start, i + 1, sline, scol)))
        elif c == "(":
            tokens.append(_Token("lparen", c, span(start, i + 1, sline, scol)))
        elif c == ")":
            tokens.append(_Token("rparen", c, span(start, i + 1, sline, scol)))
        elif c == ",":
            tokens.append(_Token("comma", c, span(start, i + 1, sline, scol)))
        else:
            raise ParseError(f"unexpected character {c!r}", span(start, i + 1, sline, scol))
        i += 1
        col += 1
    tokens.append(_Token("end", "", span(n, n, line, col)))
    return tokens


def _split_opaque_head(name: str) -> tuple[str, tuple[int, ...] | None, int | None]:
    """Return (base, deriv, required_arity) for an opaque head, else (name, None, None)."""
    if name.startswith("G"):
        rest = name[1:]
        if rest == "":
            return "G", (), None
        if set(rest) == {"'"}:
            return "G", (len(rest),), 1
        if rest.startswith("_") and rest[1:] and set(rest[1:]) <= {"w", "v"}:
            marks = rest[1:]
            if "v" in marks and "w" in marks and marks != "w" * marks.count("w") + "v" * marks.count("v"):
                return name, None, None
            return "G", (marks.count("w"), marks.count("v")), 2
    return name, None, None


class _Parser:
    def __init__(self, tokens: list[_Token], directions: bool):
        self.tokens = tokens
        self.pos = 0
        self.directions = directions
        self.opaque_arity: dict[str, int] = {}

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def advance(self) -> _Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind: str, what: str) -> _Token:
        tok = self.peek()
        if tok.kind != kind:
            raise ParseError(f"expected {what}, found {tok.text or 'end of input'!r}", tok.span)
        return self.advance()

    def parse(self) -> Expr:
        e = self.parse_sum()
        tok = self.peek()
        if tok.kind != "end":
            raise ParseError(f"unexpected trailing input {tok.text!r}", tok.span)
        return e

    def parse_sum(self) -> Expr:
        terms = [self.parse_product()]
        while True:
            tok = self.peek()
            if tok.kind == "op" and tok.text in "+-":
                self.advance()
                rhs = self.parse_product()
                terms.append(rhs if tok.text == "+" else neg(rhs))
            else:
                return add(*terms)

    def parse_product(self) -> Expr:
        out = self.parse_unary()
        while True:
            tok = self.peek()
            if tok.kind == "op" and tok.text in "*/":
                self.advance()
                rhs = self.parse_unary()
                out = mul(out, rhs) if tok.text == "*" else mul(out, pow_(rhs, Const(-1)))
            else:
                return out

    def parse_unary(self) -> Expr:
        tok = self.peek()
        if tok.kind == "op" and tok.text == "-":
            self.advance()
            return neg(self.parse_unary())
        return self.parse_power()

    def parse_power(self) -> Expr:
        base = self.parse_atom()
        tok = self.peek()
        if tok.kind == "op" and tok.text == "^":
            self.advance()
            # right-associative: exponent absorbs further ^ and unary -
            exponent = self.parse_unary()
            return pow_(base, exponent)
        return base

    def parse_atom(self) -> Expr:
        tok = self.advance()
        if tok.kind == "num":
            return Const(int(tok.text))
        if tok.kind == "lparen":
            e = self.parse_sum()
            self.expect("rparen", "')'")
            return e
        if tok.kind == "name":
            return self.resolve_name(tok)
        raise ParseError(f"expected an expression, found {tok.text or 'end of input'!r}", tok.span)

    def resolve_name(self, tok: _Token) -> Expr:
        name = tok.text
        base, deriv, required_arity = _split_opaque_head(name)
        if deriv is not None:
            args = self.parse_args(tok)
            arity = len(args)
            if required_arity is not None and arity != required_arity:
                raise ArityError(
                    f"{name} requires {required_arity} argument(s), got {arity}", tok.span
                )
            seen = self.opaque_arity.setdefault(base, arity)
            if seen != arity:
                raise ArityError(
                    f"{base} used with {arity} argument(s) after {seen}", tok.span
                )
            full_deriv = deriv if deriv else (0,) * arity
            if len(full_deriv) != arity:
                raise ArityError(
                    f"{name} derivative index does not fit {arity} argument(s)", tok.span
                )
            return opaque(base, args, full_deriv)
        if name in _FUNCTION_HEADS:
            args = self.parse_args(tok)
            if len(args) != 1:
                raise ArityError(f"{name} takes exactly one argument", tok.span)
            return fun(name, args[0])
        if self.peek().kind == "lparen":
            raise ParseError(f"{name!r} is not a function", tok.span)
        if name in _JET_SURFACE:
            return sym(_JET_SURFACE[name])
        if name in _PARAM_NAMES:
            return sym(name)
        if name in _DIRECTIONS:
            if self.directions:
                return sym(name)
            raise ParseError(f"direction {name} is only valid in a vector field", tok.span)
        if name.startswith("d_"):
            raise UnknownDirection(f"unknown direction {name!r}; use d_t, d_x or d_u", tok.span)
        raise ParseError(f"unknown identifier {name!r}", tok.span)

    def parse_args(self, head: _Token) -> tuple[Expr, ...]:
        tok = self.peek()
        if tok.kind != "lparen":
            raise ParseError(f"{head.text} requires parenthesized arguments", tok.span)
        self.advance()
        args = [self.parse_sum()]
        while self.peek().kind == "comma":
            self.advance()
            args.append(self.parse_sum())
        self.expect("rparen", "')'")
        return tuple(args)


def parse_expr(text: str) -> Expr:
    return _Parser(_tokenize(text), directions=False).parse()


def parse_vectorfield(text: str):
    """Parse `a*d_t + b*d_x + c*d_u` into a VectorField.

    The expression must be linear and homogeneous in the direction symbols.
    """
    from .liealg import VectorField
    from .simplify import normalize

    e = _Parser(_tokenize(text), directions=True).parse()
    coeffs = []
    for d in _DIRECTIONS:
        c = diff(e, d)
        if free_symbols(c) & set(_DIRECTIONS):
            raise ParseError(f"vector field is not linear in {d}")
        coeffs.append(c)
    recombined = add(*(mul(c, sym(d)) for c, d in zip(coeffs, _DIRECTIONS)))
    if normalize(add(e, neg(recombined))) != Const(0):
        raise ParseError("vector field is not a linear combination of d_t, d_x, d_u")
    try:
        return VectorField(*(normalize(c) for c in coeffs))
    except ValueError as err:
        raise ParseError(str(err)) from err


# printing -------------------------------------------------------------------

_ADD, _MUL, _POW, _ATOM = 1, 2, 3, 4


def _const_str(value: Fraction) -> tuple[str, int]:
    if value.denominator == 1:
        s = str(value.numerator)
        return s, (_ATOM if value >= 0 else _ADD)
    s = f"{value.numerator}/{value.denominator}"
    return s, (_MUL if value >= 0 else _ADD)


def _term_sign(e: Expr) -> tuple[str, Expr]:
    """Split a leading minus off an additive term."""
    if isinstance(e, Const) and e.value < 0:
        return "-", Const(-e.value)
    if isinstance(e, Mul) and isinstance(e.factors[0], Const) and e.factors[0].value < 0:
        c = Const(-e.factors[0].value)
        rest = e.factors[1:]
        if c.value == 1:
            return "-", rest[0] if len(rest) == 1 else Mul(rest)
        return "-", Mul((c,) + rest)
    return "+", e


def _opaque_head(e: Opaque) -> str:
    if all(d == 0 for d in e.deriv):
        return e.name
    if len(e.args) == 1:
        return e.name + "'" * e.deriv[0]
    return e.name + "_" + "w" * e.deriv[0] + "v" * e.deriv[1]


def _render(e: Expr) -> tuple[str, int]:
    if isinstance(e, Const):
        return _const_str(e.value)
    if isinstance(e, Sym):
        return _SYM_TO_SURFACE.get(e.name, e.name), _ATOM
    if isinstance(e, Add):
        parts: list[str] = []
        for i, term in enumerate(e.terms):
            sign, body = _term_sign(term)
            rendered = _pr(body, _MUL)
            if i == 0:
                parts.append(rendered if sign == "+" else "-" + rendered)
            else:
                parts.append(f" {sign} {rendered}")
        return "".join(parts), _ADD
    if isinstance(e, Mul):
        sign, body = _term_sign(e)
        factors = body.factors if isinstance(body, Mul) else (body,)
        rendered = "*".join(_pr(f, _MUL + 1) for f in factors)
        if sign == "-":
            return "-" + rendered, _ADD
        return rendered, _MUL
    if isinstance(e, Pow):
        base = _pr(e.base, _ATOM)
        exp_s, exp_prec = _render(e.exponent)
        if exp_prec < _ATOM:
            exp_s = f"({exp_s})"
        return f"{base}^{exp_s}", _POW
    if isinstance(e, Fun):
        return f"{e.name}({_pr(e.arg, _ADD)})", _ATOM
    if isinstance(e, Opaque):
        args = ", ".join(_pr(a, _ADD) for a in e.args)
        return f"{_opaque_head(e)}({args})", _ATOM
    raise AssertionError(type(e))


def _pr(e: Expr, min_prec: int) -> str:
    s, prec = _render(e)
    if prec < min_prec:
        return f"({s})"
    return s


def print_expr(e: Expr) -> str:
    return _pr(e, _ADD)


def print_vectorfield(vf) -> str:
    parts = []
    for coeff, d in zip(vf.components(), _DIRECTIONS):
        if isinstance(coeff, Const) and coeff.value == 0:
            continue
        if isinstance(coeff, Const) and coeff.value == 1:
            parts.append(sym(d))
        else:
            parts.append(mul(coeff, sym(d)))
    if not parts:
        return "0*d_u"
    return print_expr(add(*parts)) if len(parts) > 1 else print_expr(parts[0])
