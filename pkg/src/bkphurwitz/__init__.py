"""Exact Hurwitz numbers of Klein surfaces and the BKP tau functions generating them."""

from .core import Fraction, GradedPoly, LaurentZ, Ring
from .errors import ConsistencyError, DomainError, StructureError
from .partitions import Partition, partitions_of

__version__ = "0.1.0"

__all__ = [
    "Fraction", "GradedPoly", "LaurentZ", "Ring",
    "ConsistencyError", "DomainError", "StructureError",
    "Partition", "partitions_of", "__version__",
]
