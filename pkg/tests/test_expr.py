"""Expression kernel: constructors, derivatives, substitution, evaluation."""

import math
from fractions import Fraction

import pytest

from lieverify.errors import DomainError, MissingBinding, OrderOverflow
from lieverify.expr import (
    Add,
    Const,
    JetPoint,
    Mul,
    ONE,
    Pow,
    ZERO,
    add,
    as_expr,
    diff,
    diffn,
    div,
    evaluate,
    free_symbols,
    fun,
    G,
    is_zero_const,
    jet_order,
    mul,
    neg,
    opaque,
    opaque_names,
    pow_,
    substitute,
    sym,
    total_diff,
    well_formed,
)

t, x, u, ux = sym("t"), sym("x"), sym("u"), sym("u_x")


def ev(e, **vals):
    return evaluate(e, JetPoint(vals, {}))


# --- constructors -------------------------------------------------------------


def test_constant_folding():
    assert add(Const(1), Const(2)) == Const(3)
    assert mul(Const(2), Const(3)) == Const(6)
    assert pow_(Const(2), Const(3)) == Const(8)
    assert div(Const(1), Const(3)) == Const(Fraction(1, 3))


def test_add_flattens_and_drops_zero():
    e = add(x, add(t, ZERO), ZERO)
    assert isinstance(e, Add)
    assert set(e.terms) == {x, t}


def test_mul_zero_annihilates():
    assert mul(x, ZERO, t) == ZERO
    assert mul(ONE, x) == x


def test_pow_trivial_exponents():
    assert pow_(x, Const(1)) == x
    assert pow_(x, ZERO) == ONE
    with pytest.raises(DomainError):
        pow_(ZERO, Const(-1))


def test_as_expr_accepts_numbers():
    assert as_expr(3) == Const(3)
    assert as_expr(Fraction(1, 2)) == Const(Fraction(1, 2))
    assert as_expr(x) is x


def test_sym_interning():
    assert sym("t") is sym("t")


def test_well_formed_on_built_trees():
    for e in (add(x, t), mul(Const(2), x), pow_(u, Const(-1)), fun("exp", x), G(u)):
        assert well_formed(e)


# --- structure queries ---------------------------------------------------------


def test_free_symbols():
    e = add(mul(t, x), fun("ln", u), G(ux))
    assert free_symbols(e) == frozenset({"t", "x", "u", "u_x"})


def test_opaque_names():
    assert opaque_names(add(G(u), mul(x, opaque("H", (t,))))) == frozenset({"G", "H"})
    assert opaque_names(x) == frozenset()


def test_jet_order():
    assert jet_order(add(t, x)) == 0
    assert jet_order(ux) == 1
    assert jet_order(sym("u_xx")) == 2


def test_is_zero_const():
    assert is_zero_const(ZERO)
    assert not is_zero_const(x)


# --- differentiation ------------------------------------------------------------


def test_diff_polynomial():
    e = pow_(x, Const(3))
    assert ev(diff(e, "x"), x=2.0) == pytest.approx(12.0)
    assert diff(e, "t") == ZERO


def test_diff_product_rule():
    e = mul(t, x, u)
    assert ev(diff(e, "x"), t=2.0, x=5.0, u=3.0) == pytest.approx(6.0)


def test_diff_power_chain_rule():
    # d/dx (x^2 + 1)^(-1) = -2x (x^2+1)^-2
    e = pow_(add(pow_(x, Const(2)), ONE), Const(-1))
    assert ev(diff(e, "x"), x=1.0) == pytest.approx(-0.5)


def test_diff_symbolic_exponent_uses_log():
    e = pow_(x, t)  # d/dt x^t = x^t ln|x|
    got = ev(diff(e, "t"), x=2.0, t=3.0)
    assert got == pytest.approx(8.0 * math.log(2.0))


def test_diff_functions():
    assert ev(diff(fun("ln", x), "x"), x=4.0) == pytest.approx(0.25)
    assert ev(diff(fun("exp", mul(Const(2), x)), "x"), x=0.5) == pytest.approx(
        2.0 * math.e
    )
    assert ev(diff(fun("sin", x), "x"), x=0.0) == pytest.approx(1.0)
    assert ev(diff(fun("cos", x), "x"), x=0.0) == pytest.approx(0.0)
    # ln means ln|.|: derivative is 1/arg on both sides of zero
    assert ev(diff(fun("ln", x), "x"), x=-4.0) == pytest.approx(-0.25)


def test_diff_abs_and_sign():
    assert ev(diff(fun("abs", x), "x"), x=-3.0) == pytest.approx(-1.0)
    assert diff(fun("sign", x), "x") == ZERO


def test_diff_opaque_bumps_derivative_index():
    e = G(mul(ux, t))
    d = diff(e, "t")  # chain rule: G'(ux t) * ux
    pt = JetPoint(
        {"u_x": 2.0, "t": 3.0},
        {"G": lambda deriv, w: math.cos(w) if deriv == (1,) else math.sin(w)},
    )
    assert evaluate(d, pt) == pytest.approx(math.cos(6.0) * 2.0)


def test_diffn_iterates():
    assert ev(diffn(pow_(x, Const(4)), "x", 2), x=1.0) == pytest.approx(12.0)


def test_total_diff_first_order():
    # D_x u = u_x, D_t u_x = u_tx
    assert total_diff(u, "x") == ux
    assert total_diff(ux, "t") == sym("u_tx")


def test_total_diff_chain():
    e = mul(u, x)
    got = total_diff(e, "x")  # u + x u_x
    assert ev(got, x=2.0, u=3.0, u_x=5.0) == pytest.approx(13.0)


def test_total_diff_rejects_second_order_input():
    with pytest.raises(OrderOverflow):
        total_diff(sym("u_xx"), "x")
    with pytest.raises(ValueError):
        total_diff(u, "u")


# --- substitution ----------------------------------------------------------------


def test_substitute_symbols():
    e = add(mul(t, x), u)
    got = substitute(e, {"t": Const(2), "u": mul(x, x)})
    assert ev(got, x=3.0) == pytest.approx(15.0)


def test_substitute_inside_opaque_args():
    e = G(ux)
    got = substitute(e, {"u_x": mul(Const(2), x)})
    pt = JetPoint({"x": 3.0}, {"G": lambda deriv, w: w})
    assert evaluate(got, pt) == pytest.approx(6.0)


# --- evaluation ------------------------------------------------------------------


def test_evaluate_ln_is_log_abs():
    assert ev(fun("ln", x), x=-math.e) == pytest.approx(1.0)
    with pytest.raises(DomainError):
        ev(fun("ln", x), x=0.0)


def test_evaluate_odd_root_of_negative():
    assert ev(pow_(x, Const(Fraction(1, 3))), x=-8.0) == pytest.approx(-2.0)


def test_evaluate_even_denominator_root_rejects_negative():
    with pytest.raises(DomainError):
        ev(pow_(x, Const(Fraction(1, 2))), x=-4.0)


def test_evaluate_missing_binding():
    with pytest.raises(MissingBinding):
        ev(x)
    with pytest.raises(MissingBinding):
        evaluate(G(u), JetPoint({"u": 1.0}, {}))


def test_evaluate_sign():
    assert ev(fun("sign", x), x=-2.0) == -1.0
    assert ev(fun("sign", x), x=3.0) == 1.0
