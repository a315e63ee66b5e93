"""Exact zonal polynomials, their coefficient tables and independent cross-checks."""

__version__ = "0.1.0"

from .partitions import Partition, dominates, partitions_of  # noqa: E402
from .zonalcore import (  # noqa: E402
    coefficient,
    coefficient_table,
    is_zero_coefficient,
    zonal_polynomial,
    zonal_polynomial_m,
)

__all__ = [
    "Partition",
    "coefficient",
    "coefficient_table",
    "dominates",
    "is_zero_coefficient",
    "partitions_of",
    "zonal_polynomial",
    "zonal_polynomial_m",
]
