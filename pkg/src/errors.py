class EvError(Exception):
    """base error, carries the cli exit code"""

    exit_code = 1


class ClassMismatchError(EvError, ValueError):
    """a graph is not a member of the class an operation requires"""

    exit_code = 2


class GraphFormatError(EvError, ValueError):
    exit_code = 2


class LimitExceededError(EvError, ValueError):
    """size or enumeration limit exceeded"""

    exit_code = 3


class SearchBudgetExceeded(LimitExceededError):
    def __init__(self, nodes: int, found: int) -> None:
        super().__init__(
            f"epsilon search exhausted its budget after {nodes} nodes ({found} maps found)"
        )
        self.nodes = nodes
        self.found = found


class NotStrictError(EvError, ValueError):
    """a map that must be a strict homomorphism is not"""


class InvalidSpecError(EvError, ValueError):
    def __init__(self, violations: list) -> None:
        rules = ", ".join(v.rule for v in violations)
        super().__init__(f"invalid rearrangement spec: {rules}")
        self.violations = violations
