"""Exception types. Each carries an exit-code family used by the CLI."""


class CdalaError(Exception):
    exit_code = 4


class DivisionByZero(CdalaError, ZeroDivisionError):
    pass


class MixedRootOrder(CdalaError):
    pass


class VariantViolation(CdalaError):
    pass


class ShapeMismatch(CdalaError):
    pass


class NormalizationViolation(CdalaError):
    pass


class NotInAlgebra(CdalaError):
    pass


class SchemeDomain(CdalaError):
    pass


class RangeError(CdalaError):
    pass


class WindowTooSmall(CdalaError):
    exit_code = 5


class InsufficientData(CdalaError):
    exit_code = 5


class InsufficientOrder(InsufficientData):
    pass


class DegreeMismatch(CdalaError):
    exit_code = 6

    def __init__(self, msg: str, where=None):
        super().__init__(msg)
        self.where = where


class SeriesMismatch(CdalaError):
    exit_code = 6

    def __init__(self, msg: str, where=None):
        super().__init__(msg)
        self.where = where


class BudgetExceeded(CdalaError):
    exit_code = 5


class NotStabilized(CdalaError):
    exit_code = 5


class ExprSyntaxError(CdalaError, SyntaxError):
    """Parse failure; `pos` is the offending character offset."""

    exit_code = 3

    def __init__(self, msg: str, pos: int):
        super().__init__(f"{msg} at position {pos}")
        self.pos = pos
