class BudgetExceeded(RuntimeError):
    """An exhaustive enumeration would exceed its configured budget."""

    def __init__(self, what: str, needed: int, budget: int):
        super().__init__(f"{what}: needs {needed} enumerations, budget is {budget}")
        self.what = what
        self.needed = needed
        self.budget = budget


class UnqualifiedSetError(ValueError):
    """The given participant set cannot reconstruct the secret."""


class PreconditionError(ValueError):
    """A mathematical precondition of an operation does not hold."""
