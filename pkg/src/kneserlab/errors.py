"""Exception types shared across kneserlab."""


class DomainError(ValueError):
    """An argument violates an operation's precondition."""


class BudgetError(RuntimeError):
    """A computation would exceed its configured enumeration or node budget."""
