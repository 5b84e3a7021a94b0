"""Exception types raised across the engine."""


class TracelabError(Exception):
    pass


class ShapeMismatch(TracelabError, ValueError):
    pass


class AmbientMismatch(TracelabError, ValueError):
    pass


class AlgebraMismatch(TracelabError, ValueError):
    pass


class NotSubmodule(TracelabError, ValueError):
    pass


class NotCommutative(TracelabError):
    pass


class FieldNotFinite(TracelabError):
    pass


class RadicalUnsupported(TracelabError):
    pass


class Overflow(TracelabError):
    def __init__(self, cap: int, what: str = "submodules"):
        super().__init__(f"more than {cap} {what}")
        self.cap = cap


class Inconclusive(TracelabError):
    """A randomized search ran out of budget without a certified answer."""


class MatchFailure(TracelabError):
    """Internal consistency failure while matching socles to simple modules."""


class InternalError(TracelabError, AssertionError):
    """Two independent computations that must agree did not."""


class ParseError(TracelabError, ValueError):
    pass


class ValidationError(TracelabError, ValueError):
    def __init__(self, violations: list[str]):
        super().__init__("; ".join(violations))
        self.violations = list(violations)


class UnknownSuite(TracelabError, KeyError):
    pass
