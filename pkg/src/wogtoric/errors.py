"""Exception hierarchy shared by every module."""


class WogError(Exception):
    """Base class for all library errors."""


class InputError(WogError, ValueError):
    """Malformed graph, monomial, matrix or family input."""


class CapExceeded(WogError):
    """A configured enumeration cap was hit; the computation is inconclusive."""

    def __init__(self, what, cap):
        super().__init__(f"{what} exceeded cap of {cap}")
        self.what = what
        self.cap = cap


class CycleCapExceeded(CapExceeded):
    def __init__(self, cap):
        super().__init__("cycle enumeration", cap)


class PathCapExceeded(CapExceeded):
    def __init__(self, cap):
        super().__init__("connecting-path enumeration", cap)


class FiberCapExceeded(CapExceeded):
    def __init__(self, cap):
        super().__init__("fiber enumeration", cap)


class BudgetExceeded(CapExceeded):
    def __init__(self, what, cap):
        super().__init__(what, cap)


class EquivalenceViolation(WogError, AssertionError):
    """Graver = indispensable disagreed with the minimal-generation check."""


class NotFound(WogError):
    """Counterexample search exhausted its budget without a hit."""
