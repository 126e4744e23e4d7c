"""Two independent invariance oracles that must agree.

The first is a literal transcription of the determining identity for the
canonical operator shape; the second builds the full second prolongation
from total derivatives, applies it to u_tt - u_xx - F and substitutes
u_tt -> u_xx + F.  Both residuals must vanish identically in the free
jet coordinates for the pair (operator, F) to be a symmetry.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import BadF, NotInFormTwo
from .expr import (
    PARAMETERS,
    Const,
    Expr,
    add,
    diff,
    diffn,
    free_symbols,
    mul,
    neg,
    substitute,
    sym,
    total_diff,
)
from .liealg import FormTwoOperator, VectorField, decompose_operator
from .simplify import SamplingDomain, ZeroVerdict, is_zero, normalize

_F_ALLOWED = frozenset({"t", "x", "u", "u_x"}) | frozenset(PARAMETERS)
_PROLONG_MONOMIALS = ("u_t", "u_tx", "u_xx")


def check_F(F: Expr) -> None:
    extra = free_symbols(F) - _F_ALLOWED
    if extra:
        raise BadF(f"F depends on {sorted(extra)}; only t, x, u, u_x are allowed")


@dataclass(frozen=True)
class Residual:
    expr: Expr
    origin: str  # eq3 | prolongation


def eq3_residual(op: FormTwoOperator, F: Expr) -> Residual:
    """The determining identity, transcribed term by term.

    r_tt - h''u - r_xx + (h-2*lam)F - (lam*t+lam1)F_t - (lam*x+lam2)F_x
    - (h*u+r)F_u - 2*u_x*h' - u_x*(h-lam)*F_ux - h'*u*F_ux - r_x*F_ux
    """
    check_F(F)
    t, x, u, ux = sym("t"), sym("x"), sym("u"), sym("u_x")
    F_t, F_x, F_u, F_ux = (diff(F, s) for s in ("t", "x", "u", "u_x"))
    h1 = diff(op.h, "x")
    h2 = diffn(op.h, "x", 2)
    r_x = diff(op.r, "x")
    expr = add(
        diffn(op.r, "t", 2),
        neg(mul(h2, u)),
        neg(diffn(op.r, "x", 2)),
        mul(add(op.h, mul(Const(-2), op.lam)), F),
        neg(mul(add(mul(op.lam, t), op.lam1), F_t)),
        neg(mul(add(mul(op.lam, x), op.lam2), F_x)),
        neg(mul(add(mul(op.h, u), op.r), F_u)),
        mul(Const(-2), ux, h1),
        neg(mul(ux, add(op.h, neg(op.lam)), F_ux)),
        neg(mul(h1, u, F_ux)),
        neg(mul(r_x, F_ux)),
    )
    return Residual(normalize(expr), "eq3")


@dataclass(frozen=True)
class Prolongation:
    eta_t: Expr
    eta_x: Expr
    eta_tt: Expr
    eta_xx: Expr


def prolong2(field: VectorField) -> Prolongation:
    """Second prolongation coefficients via recursive total derivatives.

    eta^t = D_t(eta) - u_t*D_t(xi1) - u_x*D_t(xi2), then
    eta^tt = D_t(eta^t) - u_tt*D_t(xi1) - u_tx*D_t(xi2); x-side analogous.
    Every total_diff input stays at jet order <= 1 because the field's
    coefficients live on (t, x, u).
    """
    xi1, xi2, eta = field.components()
    ut, ux = sym("u_t"), sym("u_x")
    utt, utx, uxx = sym("u_tt"), sym("u_tx"), sym("u_xx")
    dt_xi1, dt_xi2 = total_diff(xi1, "t"), total_diff(xi2, "t")
    dx_xi1, dx_xi2 = total_diff(xi1, "x"), total_diff(xi2, "x")
    eta_t = add(total_diff(eta, "t"), neg(mul(ut, dt_xi1)), neg(mul(ux, dt_xi2)))
    eta_x = add(total_diff(eta, "x"), neg(mul(ut, dx_xi1)), neg(mul(ux, dx_xi2)))
    eta_tt = add(total_diff(eta_t, "t"), neg(mul(utt, dt_xi1)), neg(mul(utx, dt_xi2)))
    eta_xx = add(total_diff(eta_x, "x"), neg(mul(utx, dx_xi1)), neg(mul(uxx, dx_xi2)))
    return Prolongation(eta_t, eta_x, eta_tt, eta_xx)


def prolongation_residual(field: VectorField, F: Expr) -> Residual:
    """Apply the prolonged field to u_tt - u_xx - F, on solutions."""
    check_F(F)
    pr = prolong2(field)
    xi1, xi2, eta = field.components()
    raw = add(
        pr.eta_tt,
        neg(pr.eta_xx),
        neg(mul(xi1, diff(F, "t"))),
        neg(mul(xi2, diff(F, "x"))),
        neg(mul(eta, diff(F, "u"))),
        neg(mul(pr.eta_x, diff(F, "u_x"))),
    )
    # on-solutions substitution; u_tt occurs linearly, one pass removes it
    on_sol = substitute(raw, {"u_tt": add(sym("u_xx"), F)})
    if "u_tt" in free_symbols(on_sol):
        raise AssertionError("u_tt survived the on-solutions substitution")
    return Residual(normalize(on_sol), "prolongation")


@dataclass(frozen=True)
class PairVerdict:
    eq3: ZeroVerdict | None
    eq3_note: str | None
    prolongation: ZeroVerdict
    agree: bool

    @property
    def ok(self) -> bool:
        return self.prolongation.ok and (self.eq3 is None or self.eq3.ok) and self.agree


def verify_pair(
    field: VectorField,
    F: Expr,
    *,
    seed: int = 42,
    key: str = "pair",
    domain: SamplingDomain | None = None,
    points: int = 32,
) -> PairVerdict:
    """Run both oracles on one (operator, F) claim.

    The eq3 oracle only applies to operators of the canonical shape; when
    decomposition fails, its slot carries the violated condition instead
    and agreement is judged on the prolongation verdict alone.
    """
    eq3_verdict: ZeroVerdict | None = None
    eq3_note: str | None = None
    try:
        op = decompose_operator(field)
    except NotInFormTwo as err:
        eq3_note = err.condition
    else:
        resid = eq3_residual(op, F)
        eq3_verdict = is_zero(
            resid.expr, seed=seed, key=f"{key}|eq3", domain=domain, points=points
        )
    resid_p = prolongation_residual(field, F)
    p_verdict = is_zero(
        resid_p.expr,
        seed=seed,
        key=f"{key}|prolong",
        domain=domain,
        points=points,
        monomial_syms=_PROLONG_MONOMIALS,
    )
    agree = eq3_verdict is None or (eq3_verdict.ok == p_verdict.ok)
    return PairVerdict(eq3_verdict, eq3_note, p_verdict, agree)
