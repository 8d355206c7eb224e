"""Exception hierarchy.

Domain errors (bad descriptors, missing hypotheses, exhausted budgets) are
``QuadInvError`` subclasses; the CLI maps them to exit code 1.  Syntax errors
in the descriptor/form language are ``DslSyntaxError`` and map to exit code 2.
"""


class QuadInvError(Exception):
    """Base class for domain errors."""


class InvalidDescriptor(QuadInvError):
    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(str(v) for v in self.violations))


class NotMsUsComputable(QuadInvError):
    pass


class HypothesisRequired(QuadInvError):
    """The base field is not known to satisfy m(L) = u(L) = 2 u_s(k) for
    one-variable function fields L/k."""


class CapExceeded(QuadInvError):
    pass


class BudgetExceeded(QuadInvError):
    pass


class FormError(QuadInvError):
    """A form or element literal that is well-formed but meaningless here
    (zero entry, variable index out of range)."""


class DslSyntaxError(Exception):
    def __init__(self, message, text="", pos=0):
        self.text = text
        self.pos = pos
        self.line = text.count("\n", 0, pos) + 1
        self.column = pos - (text.rfind("\n", 0, pos) + 1) + 1
        where = f" at line {self.line}, column {self.column}" if text else ""
        super().__init__(message + where)


class GraphError(QuadInvError):
    pass


class Contradiction(QuadInvError):
    """An oracle disagreed with the decision procedure."""

    def __init__(self, report):
        self.report = report
        n = len(report.contradictions)
        super().__init__(f"{n} contradiction record(s) in the validation report")
