"""Equivalence transforms: group laws, F action, operator pushforward."""

import random
from fractions import Fraction

import pytest

from lieverify.errors import NonInvertible
from lieverify.expr import ZERO, add, neg
from lieverify.equivtrans import (
    EquivalenceTransform,
    compose,
    identity,
    invert,
    pushforward_domain,
    pushforward_field,
    transform_F,
)
from lieverify.determine import verify_pair
from lieverify.liealg import structure_constants
from lieverify.parser import parse_expr, parse_vectorfield, print_expr
from lieverify.simplify import default_domain, is_zero, normalize, sample_point


def assert_equal_exprs(a, b):
    assert normalize(add(a, neg(b))) == ZERO, (print_expr(a), print_expr(b))


def assert_same_value(a, b, key):
    # structural forms may differ (e.g. an unexpanded binomial square);
    # sampled equality is the right notion here
    v = is_zero(add(a, neg(b)), key=key)
    assert v.ok, (print_expr(a), print_expr(b), v)


def T(gamma=1, gamma1=0, gamma2=0, epsilon=1, rho="1", theta="0"):
    return EquivalenceTransform(
        Fraction(gamma), Fraction(gamma1), Fraction(gamma2), epsilon,
        parse_expr(rho), parse_expr(theta),
    )


SAMPLES = (
    T(2),
    T(1, theta="t"),
    T(1, rho="exp((1/2)*x)"),
    T(3, 1, -2, -1, rho="2", theta="t + x"),
    T(Fraction(1, 2), 0, 1, 1, rho="exp(-x)", theta="(1/2)*x^2"),
)

F_SAMPLES = (
    "u",
    "u^(-1)*ux^2 + exp(x)*ux",
    "G(u)*ux^2",
    "u*ln(u) + x*ux",
)


# --- validation --------------------------------------------------------------------


def test_gamma_must_be_nonzero():
    with pytest.raises(NonInvertible):
        EquivalenceTransform(Fraction(0))


def test_epsilon_is_a_sign():
    with pytest.raises(NonInvertible):
        EquivalenceTransform(Fraction(1), epsilon=2)


def test_rho_restrictions():
    with pytest.raises(NonInvertible):
        EquivalenceTransform(Fraction(1), rho=parse_expr("t"))
    with pytest.raises(NonInvertible):
        EquivalenceTransform(Fraction(1), rho=parse_expr("0"))
    with pytest.raises(NonInvertible):
        EquivalenceTransform(Fraction(1), rho=parse_expr("x - x"))


def test_theta_restrictions():
    with pytest.raises(NonInvertible):
        EquivalenceTransform(Fraction(1), theta=parse_expr("u"))


# --- action on F -------------------------------------------------------------------


def test_identity_action_is_normalization():
    for s in F_SAMPLES:
        F = parse_expr(s)
        assert transform_F(identity(), F) == normalize(F)


def test_pure_time_scaling():
    assert print_expr(transform_F(T(2), parse_expr("u"))) == "(1/4)*u"


def test_scaling_invariant_class_member():
    # G(u) ux^2 has scaling weight exactly -2: invariant under gamma
    got = transform_F(T(2), parse_expr("G(u)*ux^2"))
    assert print_expr(got) == "G(u)*ux^2"


def test_theta_shift_feeds_source_term():
    got = transform_F(T(1, theta="t"), parse_expr("u"))
    assert_equal_exprs(got, parse_expr("u - t"))


def test_reflection_flips_odd_x_terms():
    got = transform_F(T(1, epsilon=-1), parse_expr("x*ux"))
    assert_equal_exprs(got, parse_expr("x*ux"))
    got = transform_F(T(1, epsilon=-1), parse_expr("ux"))
    assert_equal_exprs(got, parse_expr("-ux"))


def test_rho_produces_damping_terms():
    # rho = e^x, F = 0: the image picks up -rho'' u_old - 2 rho' ux_old, and
    # back-substituting u_old = e^-x u, ux_old = e^-x (ux - u) leaves u - 2 ux
    got = transform_F(T(1, rho="exp(x)"), parse_expr("0*u"))
    assert_equal_exprs(got, parse_expr("u - 2*ux"))


# --- group laws ----------------------------------------------------------------------


def test_compose_matches_sequential_action():
    for i, t1 in enumerate(SAMPLES[:3]):
        for j, t2 in enumerate(SAMPLES[2:]):
            for s in F_SAMPLES:
                F = parse_expr(s)
                a = transform_F(compose(t1, t2), F)
                b = transform_F(t1, transform_F(t2, F))
                assert_same_value(a, b, key=f"comp{i}{j}{s}")


def test_invert_round_trips_F():
    for tf in SAMPLES:
        for s in F_SAMPLES:
            F = parse_expr(s)
            back = transform_F(invert(tf), transform_F(tf, F))
            assert_same_value(back, normalize(F), key=f"inv|{s}")


def test_invert_round_trips_fields():
    fields = ("d_t", "t*d_t + x*d_x", "exp(x)*u*d_u", "t*x*d_u")
    for tf in SAMPLES:
        for fs in fields:
            f = parse_vectorfield(fs)
            back = pushforward_field(invert(tf), pushforward_field(tf, f))
            for ca, cb in zip(back.components(), f.components()):
                assert_same_value(ca, cb, key=f"invf|{fs}")


def test_compose_with_inverse_is_identity():
    for tf in SAMPLES:
        e = compose(tf, invert(tf))
        assert e.gamma == 1 and e.gamma1 == 0 and e.gamma2 == 0 and e.epsilon == 1
        assert normalize(e.rho) == normalize(parse_expr("1"))
        assert normalize(e.theta) == ZERO


# --- operator pushforward -------------------------------------------------------------


def test_pushforward_scales_translations():
    got = pushforward_field(T(2), parse_vectorfield("d_t"))
    assert print_expr(got.xi1) == "2"
    got = pushforward_field(T(2, epsilon=-1), parse_vectorfield("d_x"))
    assert print_expr(got.xi2) == "-2"


def test_pushforward_preserves_u_scaling_under_rho():
    got = pushforward_field(T(1, rho="x"), parse_vectorfield("u*d_u"))
    assert_equal_exprs(got.eta, parse_expr("u"))
    assert got.xi1 == ZERO and got.xi2 == ZERO


def test_pushforward_preserves_structure_constants():
    basis = tuple(parse_vectorfield(s) for s in ("d_t", "d_x", "t*d_t + x*d_x"))
    c_old = structure_constants(basis)
    for i, tf in enumerate(SAMPLES):
        pushed = tuple(pushforward_field(tf, f) for f in basis)
        dom = pushforward_domain(tf, default_domain())
        c_new = structure_constants(pushed, key=f"push{i}", domain=dom)
        assert c_new == c_old


def test_symmetry_survives_transform():
    # a symmetric pair stays symmetric after any group element
    f = parse_vectorfield("t*d_t + x*d_x")
    F = parse_expr("u^(-1)*ux^2")
    for i, tf in enumerate(SAMPLES):
        Ft = transform_F(tf, F)
        ft = pushforward_field(tf, f)
        dom = pushforward_domain(tf, default_domain())
        v = verify_pair(ft, Ft, key=f"surv{i}", domain=dom)
        assert v.ok, (i, print_expr(Ft))


def test_pushforward_domain_maps_points():
    tf = T(2, 1, 0)
    dom = pushforward_domain(tf, default_domain())
    rng = random.Random(0)
    pt = sample_point(rng, ("t", "x", "u", "u_x"), {}, dom)
    # t was drawn from [0.3, 1.7] and then mapped through 2t + 1
    assert 1.6 <= pt.values["t"] <= 4.4
