"""Exceptions shared across the package."""


class BudgetError(RuntimeError):
    """A request exceeds the length or order budget."""


class LiftError(ArithmeticError):
    """No chain-level lift exists; the inputs are not a valid pair."""


class ExtensionAmbiguous(ValueError):
    """Both Wang terms are nonzero, so the requested map is not determined by them."""
