"""Exception hierarchy shared by all mvskit modules."""

from __future__ import annotations


class MvsError(Exception):
    """Base class for every error raised by mvskit."""


class AxiomViolation(MvsError):
    def __init__(self, report):
        self.report = report
        failed = ", ".join(report.failed_axioms()) or "none"
        super().__init__(f"not a metric value set; failing: {failed}")


class SizeExceeded(MvsError):
    pass


class NotACongruence(MvsError):
    def __init__(self, reason: str, witness=None):
        self.reason = reason
        self.witness = witness
        super().__init__(f"relation is not a congruence: {reason} {witness or ''}".rstrip())


class NeutralClassNotTrivial(MvsError):
    def __init__(self, neutral_class):
        self.neutral_class = neutral_class
        super().__init__(f"class of the neutral element is {sorted(neutral_class)}, not a singleton")


class NotASubMvs(MvsError):
    pass


class NotCommutative(MvsError):
    def __init__(self, witness=None):
        self.witness = witness
        super().__init__(f"operation is not commutative (witness {witness})")


class H1Violation(MvsError):
    def __init__(self, element: int):
        self.element = element
        super().__init__(f"(H1) fails at element {element}")


class H2Violation(MvsError):
    def __init__(self, left: int, right: int):
        self.left = left
        self.right = right
        super().__init__(f"(H2) fails at pair ({left}, {right})")


class DomainMismatch(MvsError):
    pass


class NotBijective(MvsError):
    pass


class NotAQuasimetric(MvsError):
    def __init__(self, report):
        self.report = report
        super().__init__(f"table is not a quasimetric function: {report.describe()}")


class NeutralRadius(MvsError):
    pass


class PointSetMismatch(MvsError):
    pass


class InvalidTopology(MvsError):
    pass


class BudgetExceeded(MvsError):
    pass


class BoundTooSmall(MvsError):
    pass


class AlphabetMismatch(MvsError):
    pass


class DocumentSyntaxError(MvsError):
    def __init__(self, line: int, col: int, message: str):
        self.line = line
        self.col = col
        self.message = message
        super().__init__(f"line {line}, col {col}: {message}")


class DocumentSemanticError(MvsError):
    pass
