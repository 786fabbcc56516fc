class GraphInputError(ValueError):
    """Malformed graph data or a violated input precondition."""


class ContractViolation(AssertionError):
    """An internal contract or caller-side precondition does not hold."""
