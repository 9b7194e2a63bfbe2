class BindsynError(Exception):
    """Base class for library errors."""


class ScopeError(BindsynError):
    pass


class ArityError(BindsynError):
    pass


class UnknownOperation(BindsynError):
    pass


class ContextMismatch(BindsynError):
    pass


class SignatureError(BindsynError):
    """Malformed signature, morphism or signature file."""


class NormalizationBudgetExceeded(BindsynError):
    """A normalizer failed to reach a fixpoint within its pass budget."""


class QuotientViolation(BindsynError):
    """A model does not respect the congruence it is folded through."""

    def __init__(self, message, counterexample=None):
        super().__init__(message)
        self.counterexample = counterexample


class ModelDisagreement(BindsynError):
    pass
