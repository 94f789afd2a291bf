"""Exact enumeration of rectangulations of a square and the homotopy invariants of tiling spaces."""

from .combinatorics import binomial, component_subset_count, composition_count
from .recursion import (
    CountTable,
    fill_table,
    parity_report,
    t_of_ms,
    t_of_mrs,
    t_total,
)
from .topology import WedgeReport, cell_dimension, euler_characteristic, wedge_count, wedge_report

__version__ = "0.1.0"
