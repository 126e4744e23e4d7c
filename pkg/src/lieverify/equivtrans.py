"""The executable equivalence group.

A transform sends t to gamma*t + gamma1, x to epsilon*gamma*x + gamma2
and u to rho(x)*u + theta(t, x), with gamma != 0, rho != 0, epsilon = +-1.
Its action on the right-hand side is

    F~ = gamma^-2 * (rho*F + theta_tt - theta_xx - rho''*u - 2*rho'*u_x)

with the old variables back-substituted from the inverse map; this is a
straight chain-rule computation of v_tt - v_xx on solutions (derivation
in docs/equivalence.md).  The group laws and the covariance of symmetry
operators under pushforward are testable consequences, not assumptions.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from .determine import check_F
from .errors import NonInvertible
from .expr import (
    PARAMETERS,
    ONE,
    ZERO,
    Const,
    Expr,
    JetPoint,
    add,
    as_expr,
    diff,
    diffn,
    evaluate,
    free_symbols,
    mul,
    neg,
    pow_,
    substitute,
    sym,
)
from .liealg import VectorField
from .simplify import SamplingDomain, default_domain, normalize

_RHO_ALLOWED = frozenset({"x"}) | frozenset(PARAMETERS)
_THETA_ALLOWED = frozenset({"t", "x"}) | frozenset(PARAMETERS)


@dataclass(frozen=True)
class EquivalenceTransform:
    gamma: Fraction
    gamma1: Fraction = Fraction(0)
    gamma2: Fraction = Fraction(0)
    epsilon: int = 1
    rho: Expr = dc_field(default=ONE)
    theta: Expr = dc_field(default=ZERO)

    def __post_init__(self):
        object.__setattr__(self, "gamma", Fraction(self.gamma))
        object.__setattr__(self, "gamma1", Fraction(self.gamma1))
        object.__setattr__(self, "gamma2", Fraction(self.gamma2))
        object.__setattr__(self, "rho", as_expr(self.rho))
        object.__setattr__(self, "theta", as_expr(self.theta))
        if self.gamma == 0:
            raise NonInvertible("gamma must be nonzero")
        if self.epsilon not in (1, -1):
            raise NonInvertible("epsilon must be +1 or -1")
        if free_symbols(self.rho) - _RHO_ALLOWED:
            raise NonInvertible("rho may depend on x only")
        if free_symbols(self.theta) - _THETA_ALLOWED:
            raise NonInvertible("theta may depend on t and x only")
        if normalize(self.rho) == ZERO:
            raise NonInvertible("rho must be nonzero")
        self._check_rho_nonvanishing()

    def _check_rho_nonvanishing(self):
        rng = random.Random("rho-nonvanishing")
        names = tuple(sorted(free_symbols(self.rho)))
        dom = default_domain()
        for _ in range(16):
            pt = JetPoint({n: dom.sample(rng, n) for n in names}, {})
            try:
                v = evaluate(self.rho, pt)
            except Exception:
                continue
            if abs(v) < 1e-9:
                raise NonInvertible("rho vanishes on the sampling domain")

    # the backward map, expressed in the (renamed) new coordinates
    def old_in_new(self) -> dict[str, Expr]:
        t, x, u, ux = sym("t"), sym("x"), sym("u"), sym("u_x")
        eg = self.gamma * self.epsilon
        t_old = add(mul(Const(1 / self.gamma), t), Const(-self.gamma1 / self.gamma))
        x_old = add(mul(Const(1 / eg), x), Const(-self.gamma2 / eg))
        rho_b = substitute(self.rho, {"x": x_old})
        theta_b = substitute(self.theta, {"t": t_old, "x": x_old})
        rho1_b = substitute(diff(self.rho, "x"), {"x": x_old})
        theta_x_b = substitute(diff(self.theta, "x"), {"t": t_old, "x": x_old})
        inv_rho = pow_(rho_b, Const(-1))
        u_old = mul(add(u, neg(theta_b)), inv_rho)
        ux_old = mul(
            add(mul(Const(eg), ux), neg(mul(rho1_b, u_old)), neg(theta_x_b)),
            inv_rho,
        )
        return {"t": t_old, "x": x_old, "u": u_old, "u_x": ux_old}


def identity() -> EquivalenceTransform:
    return EquivalenceTransform(Fraction(1))


def transform_F(T: EquivalenceTransform, F: Expr) -> Expr:
    check_F(F)
    u, ux = sym("u"), sym("u_x")
    rho1 = diff(T.rho, "x")
    rho2 = diffn(T.rho, "x", 2)
    core = mul(
        Const(1 / T.gamma**2),
        add(
            mul(T.rho, F),
            diffn(T.theta, "t", 2),
            neg(diffn(T.theta, "x", 2)),
            neg(mul(rho2, u)),
            mul(Const(-2), rho1, ux),
        ),
    )
    out = normalize(substitute(core, T.old_in_new()))
    check_F(out)  # class preservation: no u_t analog may leak in
    return out


def pushforward_field(T: EquivalenceTransform, X: VectorField) -> VectorField:
    u = sym("u")
    xi1 = mul(Const(T.gamma), X.xi1)
    xi2 = mul(Const(T.gamma * T.epsilon), X.xi2)
    eta = add(
        mul(X.xi1, diff(T.theta, "t")),
        mul(X.xi2, add(mul(diff(T.rho, "x"), u), diff(T.theta, "x"))),
        mul(X.eta, T.rho),
    )
    back = T.old_in_new()
    sub = {k: back[k] for k in ("t", "x", "u")}
    return VectorField(
        normalize(substitute(xi1, sub)),
        normalize(substitute(xi2, sub)),
        normalize(substitute(eta, sub)),
    )


def compose(t1: EquivalenceTransform, t2: EquivalenceTransform) -> EquivalenceTransform:
    """t1 after t2: apply t2 first."""
    x, t = sym("x"), sym("t")
    mid_t = add(mul(Const(t2.gamma), t), Const(t2.gamma1))
    mid_x = add(mul(Const(t2.gamma * t2.epsilon), x), Const(t2.gamma2))
    rho1_mid = substitute(t1.rho, {"x": mid_x})
    theta1_mid = substitute(t1.theta, {"t": mid_t, "x": mid_x})
    return EquivalenceTransform(
        gamma=t1.gamma * t2.gamma,
        gamma1=t1.gamma * t2.gamma1 + t1.gamma1,
        gamma2=t1.epsilon * t1.gamma * t2.gamma2 + t1.gamma2,
        epsilon=t1.epsilon * t2.epsilon,
        rho=normalize(mul(rho1_mid, t2.rho)),
        theta=normalize(add(mul(rho1_mid, t2.theta), theta1_mid)),
    )


def invert(T: EquivalenceTransform) -> EquivalenceTransform:
    back = T.old_in_new()
    t_old, x_old = back["t"], back["x"]
    rho_b = substitute(T.rho, {"x": x_old})
    theta_b = substitute(T.theta, {"t": t_old, "x": x_old})
    inv_rho = pow_(rho_b, Const(-1))
    return EquivalenceTransform(
        gamma=1 / T.gamma,
        gamma1=-T.gamma1 / T.gamma,
        gamma2=Fraction(-T.epsilon) * T.gamma2 / T.gamma,
        epsilon=T.epsilon,
        rho=normalize(inv_rho),
        theta=normalize(neg(mul(theta_b, inv_rho))),
    )


def pushforward_domain(
    T: EquivalenceTransform, base: SamplingDomain
) -> SamplingDomain:
    """Sampling domain for the transformed equation: the image of `base`."""
    rho1 = diff(T.rho, "x")
    theta_x = diff(T.theta, "x")
    g = float(T.gamma)
    g1 = float(T.gamma1)
    g2 = float(T.gamma2)
    e = float(T.epsilon)
    inner = base.mapper

    def mapper(vals: dict[str, float]) -> dict[str, float]:
        if inner is not None:
            vals = inner(vals)
        pt = JetPoint(vals, {})
        rv = evaluate(T.rho, pt)
        r1v = evaluate(rho1, pt)
        thv = evaluate(T.theta, pt)
        thxv = evaluate(theta_x, pt)
        out = dict(vals)
        out["t"] = g * vals["t"] + g1
        out["x"] = e * g * vals["x"] + g2
        out["u"] = rv * vals["u"] + thv
        out["u_x"] = (r1v * vals["u"] + rv * vals["u_x"] + thxv) / (e * g)
        return out

    return SamplingDomain(base.ranges, mapper)
