"""Exception types shared across the package."""


class DescentError(Exception):
    pass


class UnsupportedType(DescentError):
    """Coxeter type outside the supported finite list (E8, affine, bad rank)."""


class OutOfScope(UnsupportedType):
    """Classification query outside the classified range."""


class BudgetExceeded(DescentError):
    """Group too large for the configured enumeration budget."""


class FieldMismatch(DescentError):
    pass


class BasisExpansionFailed(DescentError):
    """Group-algebra product did not expand in the x_J basis."""


class RankMismatch(DescentError):
    """Two descriptions of the radical disagree."""


class RouteDisagreement(DescentError):
    """Independent routes to the same quantity gave different answers."""


class NoTarget(DescentError):
    """A decomposition-matrix row matched no modular simple."""


class LiftDivergence(DescentError):
    """Idempotent lifting did not converge within the iteration bound."""


class HypothesisViolated(DescentError):
    pass


class WrongFamily(DescentError):
    pass
