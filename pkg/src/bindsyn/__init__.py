"""Well-scoped syntax with variable binding, generated by algebraic signatures.

Terms use de Bruijn indices (the freshest variable is 0), form a monad under
simultaneous substitution, and can be quotiented by canonicalizing rules.
Models are folded into by structural recursion.
"""
from ._nodes import Op, Var
from .context import Renaming, extend, identity, renaming, weakening
from .errors import (
    ArityError,
    BindsynError,
    ContextMismatch,
    ModelDisagreement,
    NormalizationBudgetExceeded,
    QuotientViolation,
    ScopeError,
    SignatureError,
    UnknownOperation,
)
from .kernels import BACKEND
from .model import (
    Carrier,
    Model,
    check_model_laws,
    check_morphism,
    check_respects,
    fold,
    fold_quotient,
    mediate_modularity,
    pullback_model,
    relabel,
)
from .quotient import PresentableSignature, check_compatibility, presentable
from .sexpr import parse_term, print_term
from .signature import (
    SIGMA_LC,
    SIGMA_LJ,
    SIGMA_LL,
    AlgebraicSignature,
    FamilySchema,
    OperationDecl,
    SignatureMorphism,
    coproduct,
    elementary,
    family,
    morphism,
    product,
    pushout,
)
from .stdmodels import (
    Template,
    free_vars_model,
    instantiate,
    lj_to_ll_model,
    redex_model,
    redexes,
    size,
    size_model,
    translation_model,
)
from .term import compose, decompose, mk_op, rename, sigma, subst, subst_p, var, weaken

__version__ = "0.1.0"
