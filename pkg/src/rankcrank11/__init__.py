"""Exact tables and interval-certified asymptotics for partition rank and
crank inequalities between residue classes modulo 11."""

__version__ = "0.1.0"

from .bigq import (  # noqa: F401
    crank_class_table,
    exact_family_delta,
    partition_numbers,
    rank_class_table,
    table_context,
)
from .oracle import enumerate_partitions, histogram_mod11  # noqa: F401
