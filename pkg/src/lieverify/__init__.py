"""Symbolic verification engine for point symmetries of u_tt = u_xx + F(t, x, u, u_x)."""

from .errors import (
    ArityError,
    BadF,
    CatalogError,
    DegenerateBasis,
    DomainError,
    DuplicateId,
    JacobiViolation,
    LieverifyError,
    MissingBinding,
    NonInvertible,
    NonlinearInAtoms,
    NotClosed,
    NotInFormTwo,
    NotInSpan,
    OrderOverflow,
    ParseError,
    SourceSpan,
    UnknownDirection,
    UnsatisfiableConstraint,
)
from .expr import (
    Const,
    Expr,
    Fun,
    JetPoint,
    Opaque,
    Pow,
    Sym,
    diff,
    evaluate,
    free_symbols,
    substitute,
    sym,
    total_diff,
)
from .parser import parse_expr, parse_vectorfield, print_expr
from .simplify import SamplingDomain, ZeroVerdict, default_domain, is_zero, normalize
from .liealg import (
    ABSTRACT_ALGEBRAS,
    FormTwoOperator,
    MatchResult,
    VectorField,
    bracket_strings,
    commutator,
    decompose_operator,
    express_in_basis,
    match_algebra,
    structure_constants,
)
from .determine import (
    PairVerdict,
    eq3_residual,
    prolong2,
    prolongation_residual,
    verify_pair,
)
from .equivtrans import (
    EquivalenceTransform,
    compose,
    identity,
    invert,
    pushforward_domain,
    pushforward_field,
    transform_F,
)
from .catalog import (
    CatalogEntry,
    EntryReport,
    ParamSpec,
    entry_records,
    instantiate_params,
    load_catalog,
    mutated_pairs,
    summarize,
    verify_catalog,
    verify_entry,
    with_added_term,
)

__version__ = "0.1.0"
