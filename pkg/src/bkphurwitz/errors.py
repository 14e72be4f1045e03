"""Exception classes shared by all modules."""


class StructureError(ValueError):
    """Operands live in incompatible rings, or a generator is unknown."""


class DomainError(ValueError):
    """An argument is outside the domain of an operation (poles, ranges, weights)."""


class ConsistencyError(RuntimeError):
    """Two independent computations of the same quantity disagree."""
