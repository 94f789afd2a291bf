"""Cell-complex invariants of the space of tilings by at most n rectangles.

Each rectangulation with ``m`` tiles and ``s`` singular vertices is an open
cell of dimension ``m - s - 1``.  The space is homotopy equivalent to a wedge
of ``k_n`` spheres of dimension ``n - 1``, so its Euler characteristic is
``1 + (-1)**(n - 1) * k_n`` and ``k_n`` follows from the cell counts.
"""

from __future__ import annotations

from dataclasses import dataclass

from .recursion import CountTable, fill_table, t_of_ms


def cell_dimension(m: int, s: int) -> int:
    if m < 1 or s < 0:
        raise ValueError(f"need m >= 1 and s >= 0, got m={m}, s={s}")
    if s > m - 1:
        raise ValueError(f"no rectangulation with m={m} tiles has s={s} singular vertices")
    return m - s - 1


def euler_characteristic(n: int, table: CountTable) -> int:
    """Alternating count of cells of the tiling space, over all dimensions."""
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    if table.max_m < n:
        fill_table(n, table)
    chi = 0
    for m in range(1, n + 1):
        for s in range(m):
            t = t_of_ms(m, s, table)
            chi += -t if cell_dimension(m, s) % 2 else t
    return chi


def wedge_count(n: int, table: CountTable) -> int:
    """Number ``k_n`` of (n - 1)-spheres in the wedge."""
    k = euler_characteristic(n, table) - 1
    if n % 2 == 0:
        k = -k
    if k < 0:
        raise ArithmeticError(f"negative sphere count k_{n} = {k}; count table is inconsistent")
    return k


@dataclass(frozen=True)
class WedgeReport:
    n: int
    euler: int
    k: int

    def __post_init__(self):
        sign = 1 if self.n % 2 else -1
        if self.euler != 1 + sign * self.k:
            raise ValueError(f"euler={self.euler} does not match k={self.k} at n={self.n}")


def wedge_report(n: int, table: CountTable) -> WedgeReport:
    return WedgeReport(n, euler_characteristic(n, table), wedge_count(n, table))
