"""Exception types shared across the package."""


class PartialSkewError(Exception):
    """Base class for all library errors."""


class InstanceMismatch(PartialSkewError):
    """Operands belong to different spaces, groups, rings or groupoids."""


class NeedsField(PartialSkewError):
    """A linear-algebra routine was asked to work over a non-field."""


class IllFormed(PartialSkewError):
    """An element or instance violates a structural precondition."""


class NotInvariant(PartialSkewError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NotAnIdeal(PartialSkewError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class ConditionViolated(PartialSkewError):
    """A hypothesis of the universal property of S(G) fails."""

    def __init__(self, condition, witness):
        super().__init__(f"condition ({condition}) fails at {witness!r}")
        self.condition = condition
        self.witness = witness


class OracleBudget(PartialSkewError):
    """An enumeration exceeded its declared budget."""


class NonAbelian(PartialSkewError):
    pass


class StarInjectivityFails(PartialSkewError):
    def __init__(self, vertex):
        super().__init__(f"vertex {vertex!r} receives more than one edge")
        self.witness = vertex


class NotGraded(PartialSkewError):
    pass
