"""Vector fields on (t, x, u), commutators, and 3D algebra classification.

Structure constants are computed exactly: a numeric least-squares pass
proposes rational coefficients, which are then re-verified symbolically.
A float never survives into a result.  Matching against the abstract
tables is basis-order-exact; no change of basis is attempted.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Mapping, Sequence

import numpy as np

from .errors import (
    DegenerateBasis,
    DomainError,
    JacobiViolation,
    NotClosed,
    NotInFormTwo,
    NotInSpan,
)
from .expr import (
    PARAMETERS,
    ZERO,
    Const,
    Expr,
    add,
    diff,
    evaluate,
    free_symbols,
    mul,
    neg,
    sym,
)
from .simplify import (
    SamplingDomain,
    _opaque_arities,
    default_domain,
    is_zero,
    normalize,
    sample_point,
)

_POINT_VARS = ("t", "x", "u")
_ALLOWED = frozenset(_POINT_VARS) | frozenset(PARAMETERS)


@dataclass(frozen=True)
class VectorField:
    """xi1*d_t + xi2*d_x + eta*d_u with coefficients on (t, x, u)."""

    xi1: Expr
    xi2: Expr
    eta: Expr

    def __post_init__(self):
        for c in (self.xi1, self.xi2, self.eta):
            extra = free_symbols(c) - _ALLOWED
            if extra:
                raise ValueError(
                    f"vector field coefficient depends on {sorted(extra)}"
                )

    def components(self) -> tuple[Expr, Expr, Expr]:
        return (self.xi1, self.xi2, self.eta)

    def apply(self, f: Expr) -> Expr:
        return add(
            mul(self.xi1, diff(f, "t")),
            mul(self.xi2, diff(f, "x")),
            mul(self.eta, diff(f, "u")),
        )

    def normalized(self) -> "VectorField":
        return VectorField(*(normalize(c) for c in self.components()))

    def is_trivial(self) -> bool:
        return all(normalize(c) == ZERO for c in self.components())

    def __str__(self) -> str:
        from .parser import print_vectorfield

        return print_vectorfield(self)


def commutator(a: VectorField, b: VectorField) -> VectorField:
    comps = tuple(
        normalize(add(a.apply(cb), neg(b.apply(ca))))
        for ca, cb in zip(a.components(), b.components())
    )
    return VectorField(*comps)


# the canonical operator shape -----------------------------------------------

@dataclass(frozen=True)
class FormTwoOperator:
    """(lam*t + lam1)*d_t + (lam*x + lam2)*d_x + (h(x)*u + r(t, x))*d_u."""

    lam: Expr
    lam1: Expr
    lam2: Expr
    h: Expr
    r: Expr

    def to_field(self) -> VectorField:
        t, x, u = sym("t"), sym("x"), sym("u")
        return VectorField(
            normalize(add(mul(self.lam, t), self.lam1)),
            normalize(add(mul(self.lam, x), self.lam2)),
            normalize(add(mul(self.h, u), self.r)),
        )


def _constant_on(e: Expr, allowed: frozenset[str]) -> bool:
    return free_symbols(e) <= (allowed | frozenset(PARAMETERS))


def decompose_operator(field: VectorField) -> FormTwoOperator:
    """Split a field into the canonical operator shape, or say why not."""
    xi1, xi2, eta = (normalize(c) for c in field.components())
    t, x, u = sym("t"), sym("x"), sym("u")

    lam = normalize(diff(xi1, "t"))
    if not _constant_on(lam, frozenset()):
        raise NotInFormTwo("xi1 is not affine in t")
    if not _constant_on(xi1, frozenset({"t"})):
        raise NotInFormTwo("xi1 depends on more than t")
    lam1 = normalize(add(xi1, neg(mul(lam, t))))
    if not _constant_on(lam1, frozenset()):
        raise NotInFormTwo("xi1 is not affine in t")

    if not _constant_on(xi2, frozenset({"x"})):
        raise NotInFormTwo("xi2 depends on more than x")
    lam_x = normalize(diff(xi2, "x"))
    if not _constant_on(lam_x, frozenset()):
        raise NotInFormTwo("xi2 is not affine in x")
    if normalize(add(lam, neg(lam_x))) != ZERO:
        raise NotInFormTwo("t and x dilation rates differ")
    lam2 = normalize(add(xi2, neg(mul(lam, x))))
    if not _constant_on(lam2, frozenset()):
        raise NotInFormTwo("xi2 is not affine in x")

    h = normalize(diff(eta, "u"))
    if not _constant_on(h, frozenset({"x"})):
        raise NotInFormTwo("d(eta)/du is not a function of x alone")
    r = normalize(add(eta, neg(mul(h, u))))
    if not _constant_on(r, frozenset({"t", "x"})):
        raise NotInFormTwo("eta - h*u is not a function of (t, x)")
    return FormTwoOperator(lam, lam1, lam2, h, r)


# exact linear algebra over sampled points -------------------------------------

_SVD_TOL = 1e-8
_LSTSQ_POINTS = 12


def express_in_basis(
    target: VectorField,
    basis: Sequence[VectorField],
    *,
    seed: int = 42,
    key: str = "span",
    domain: SamplingDomain | None = None,
) -> tuple[Fraction, ...]:
    """Exact coordinates of `target` in `basis`, with constant coefficients.

    Any parameter symbols must already be bound; a target that needs
    parameter-dependent coefficients is reported as NotInSpan.
    """
    tcomps = [normalize(c) for c in target.components()]
    bcomps = [[normalize(c) for c in b.components()] for b in basis]
    if all(c == ZERO for c in tcomps):
        return tuple(Fraction(0) for _ in basis)

    names: set[str] = set()
    arities: dict[str, int] = {}
    for comp in tcomps + [c for row in bcomps for c in row]:
        names |= free_symbols(comp)
        arities.update(_opaque_arities(comp))
    names_t = tuple(sorted(names))
    rng = random.Random(f"{seed}|{key}")
    domain = domain or default_domain()

    rows: list[list[float]] = []
    rhs: list[float] = []
    for _ in range(_LSTSQ_POINTS):
        for _attempt in range(100):
            pt = sample_point(rng, names_t, arities, domain)
            try:
                block = [
                    [evaluate(row[ci], pt) for row in bcomps] for ci in range(3)
                ]
                bvals = [evaluate(tcomps[ci], pt) for ci in range(3)]
            except DomainError:
                continue
            rows.extend(block)
            rhs.extend(bvals)
            break
        else:
            raise DomainError("could not sample a valid point for the span test")

    a = np.array(rows, dtype=float)
    b = np.array(rhs, dtype=float)
    svals = np.linalg.svd(a, compute_uv=False)
    if svals[0] == 0.0 or svals[-1] / svals[0] < _SVD_TOL:
        raise DegenerateBasis("basis fields are numerically dependent")
    sol, *_ = np.linalg.lstsq(a, b, rcond=None)
    coeffs = tuple(Fraction(float(v)).limit_denominator(10**6) for v in sol)

    # the floats only nominate; the symbols confirm
    for ci in range(3):
        resid = add(
            tcomps[ci],
            neg(add(*(mul(Const(c), row[ci]) for c, row in zip(coeffs, bcomps)))),
        )
        verdict = is_zero(resid, seed=seed, key=f"{key}|resid{ci}", domain=domain)
        if not verdict.ok:
            raise NotInSpan(
                "target is not a constant-coefficient combination of the basis"
            )
    return coeffs


def structure_constants(
    basis: Sequence[VectorField],
    *,
    seed: int = 42,
    key: str = "sc",
    domain: SamplingDomain | None = None,
) -> dict[tuple[int, int], tuple[Fraction, ...]]:
    """All brackets [e_i, e_j] expressed in the basis, antisymmetry included."""
    n = len(basis)
    out: dict[tuple[int, int], tuple[Fraction, ...]] = {}
    for i in range(n):
        out[(i, i)] = tuple(Fraction(0) for _ in range(n))
    for i in range(n):
        for j in range(i + 1, n):
            br = commutator(basis[i], basis[j])
            try:
                c = express_in_basis(
                    br, basis, seed=seed, key=f"{key}|{i}{j}", domain=domain
                )
            except NotInSpan as err:
                raise NotClosed(i, j) from err
            out[(i, j)] = c
            out[(j, i)] = tuple(-v for v in c)
    _check_jacobi(out, n)
    return out


def _check_jacobi(c: Mapping[tuple[int, int], tuple[Fraction, ...]], n: int) -> None:
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                for l in range(n):
                    total = sum(
                        c[(i, j)][m] * c[(m, k)][l]
                        + c[(j, k)][m] * c[(m, i)][l]
                        + c[(k, i)][m] * c[(m, j)][l]
                        for m in range(n)
                    )
                    if total != 0:
                        raise JacobiViolation(
                            f"Jacobi identity fails on (e{i+1}, e{j+1}, e{k+1})"
                        )


def bracket_strings(c: Mapping[tuple[int, int], tuple[Fraction, ...]]) -> list[str]:
    """Readable [e_i, e_j] = ... lines for the i < j pairs."""
    n = max(i for i, _ in c) + 1
    lines = []
    for i in range(n):
        for j in range(i + 1, n):
            parts = []
            for m, v in enumerate(c[(i, j)]):
                if v == 0:
                    continue
                if v == 1:
                    parts.append(f"e{m+1}")
                elif v == -1:
                    parts.append(f"-e{m+1}")
                else:
                    parts.append(f"{v}*e{m+1}")
            rhs = " + ".join(parts).replace("+ -", "- ") if parts else "0"
            lines.append(f"[e{i+1}, e{j+1}] = {rhs}")
    return lines


# abstract 3D tables -----------------------------------------------------------

# marker: exact Fraction, or (multiplier, parameter name)
_Marker = object


def _m(v) -> tuple[Fraction, str | None]:
    if isinstance(v, str):
        if v.startswith("-"):
            return Fraction(-1), v[1:]
        return Fraction(1), v
    return Fraction(v), None


@dataclass(frozen=True)
class AbstractAlgebra:
    name: str
    brackets: Mapping[tuple[int, int], tuple]
    constraint: Callable[[Fraction], bool] | None = None
    parameter: str | None = None
    provenance: str = "table"

    def describe(self) -> list[str]:
        lines = []
        for (i, j), row in sorted(self.brackets.items()):
            parts = []
            for m, v in enumerate(row):
                mult, p = _m(v)
                if mult == 0:
                    continue
                head = "" if mult == 1 else ("-" if mult == -1 else f"{mult}*")
                body = f"{p}*e{m+1}" if p else f"e{m+1}"
                parts.append(head + body)
            rhs = " + ".join(parts).replace("+ -", "- ") if parts else "0"
            lines.append(f"[e{i+1}, e{j+1}] = {rhs}")
        return lines


_Z = (0, 0, 0)

ABSTRACT_ALGEBRAS: tuple[AbstractAlgebra, ...] = (
    AbstractAlgebra("A3.1", {(0, 1): _Z, (0, 2): _Z, (1, 2): _Z}),
    AbstractAlgebra("A3.2", {(0, 1): (0, 1, 0), (0, 2): _Z, (1, 2): _Z}),
    AbstractAlgebra("A3.3", {(0, 1): _Z, (0, 2): _Z, (1, 2): (1, 0, 0)}),
    AbstractAlgebra("A3.4", {(0, 1): _Z, (0, 2): (1, 0, 0), (1, 2): (1, 1, 0)}),
    AbstractAlgebra("A3.5", {(0, 1): _Z, (0, 2): (1, 0, 0), (1, 2): (0, 1, 0)}),
    AbstractAlgebra("A3.6", {(0, 1): _Z, (0, 2): (1, 0, 0), (1, 2): (0, -1, 0)}),
    AbstractAlgebra(
        "A3.7",
        {(0, 1): _Z, (0, 2): (1, 0, 0), (1, 2): (0, "q", 0)},
        constraint=lambda q: 0 < abs(q) < 1,
        parameter="q",
    ),
    AbstractAlgebra(
        "A3.8",
        {(0, 1): _Z, (0, 2): (0, 1, 0), (1, 2): (-1, 0, 0)},
        provenance="derived-from-realization",
    ),
    AbstractAlgebra(
        "A3.9",
        {(0, 1): _Z, (0, 2): ("-p", "p", 0), (1, 2): ("-p", "-p", 0)},
        constraint=lambda p: p >= 1,
        parameter="p",
        provenance="derived-from-realization",
    ),
)

# semisimple references; no realization on the line may ever match these
REFERENCE_TABLES: tuple[AbstractAlgebra, ...] = (
    AbstractAlgebra(
        "so(3)", {(0, 1): (0, 0, 1), (0, 2): (0, -1, 0), (1, 2): (1, 0, 0)}
    ),
    AbstractAlgebra(
        "sl(2,R)", {(0, 1): (0, 2, 0), (0, 2): (0, 0, -2), (1, 2): (1, 0, 0)}
    ),
)


@dataclass(frozen=True)
class MatchResult:
    name: str
    parameter: tuple[str, Fraction] | None = None
    provenance: str = "table"


def _match_one(
    alg: AbstractAlgebra, c: Mapping[tuple[int, int], tuple[Fraction, ...]]
) -> MatchResult | None:
    bound: Fraction | None = None
    for (i, j), row in alg.brackets.items():
        got = c[(i, j)]
        if len(got) != 3:
            return None
        for m in range(3):
            mult, p = _m(row[m])
            if p is None:
                if got[m] != mult:
                    return None
                continue
            want = got[m] / mult
            if bound is None:
                bound = want
            elif bound != want:
                return None
    if alg.parameter is not None:
        if bound is None or (alg.constraint and not alg.constraint(bound)):
            return None
        return MatchResult(alg.name, (alg.parameter, bound), alg.provenance)
    return MatchResult(alg.name, None, alg.provenance)


def match_algebra(
    c: Mapping[tuple[int, int], tuple[Fraction, ...]]
) -> MatchResult | None:
    """Exact basis-order match against the 3D tables, references included."""
    for alg in ABSTRACT_ALGEBRAS + REFERENCE_TABLES:
        hit = _match_one(alg, c)
        if hit is not None:
            return hit
    return None
