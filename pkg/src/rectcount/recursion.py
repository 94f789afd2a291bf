"""Counting rectangulations by tiles, right-side edges and singular vertices.

``t(m, r, s)`` is the number of rectangulations with ``m`` tiles, ``r`` edges
meeting the interior of the right side of the square and ``s`` singular
vertices.  Every rectangulation except the stack of horizontal strips is
obtained from a smaller one by pushing ``c`` vertical segments in from the
right, so ``t`` satisfies an inclusion-exclusion recurrence over smaller
tile counts.  The table is filled one tile count (layer) at a time; a layer
only reads layers below it.
"""

from __future__ import annotations

import functools
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from .combinatorics import binomial, component_subset_count, composition_count

log = logging.getLogger(__name__)

CACHE_HEADER = "rectcount-table v1"


@dataclass
class CountTable:
    """Exact values ``t(m, r, s)`` for ``1 <= m <= max_m``.

    ``layers[m - 1][r][s]`` holds ``t(m, r, s)`` for ``0 <= r, s <= m - 1``.
    Lookups outside the stored ranges return 0.
    """

    layers: list[list[list[int]]] = field(default_factory=list)

    @property
    def max_m(self) -> int:
        return len(self.layers)

    def get(self, m: int, r: int, s: int) -> int:
        if not 1 <= m <= self.max_m or not 0 <= r < m or not 0 <= s < m:
            return 0
        return self.layers[m - 1][r][s]

    def entries(self):
        """Yield ``(m, r, s, t)`` in increasing lexicographic order."""
        for m, layer in enumerate(self.layers, start=1):
            for r, row in enumerate(layer):
                for s, t in enumerate(row):
                    yield m, r, s, t


def _check_indices(m: int, r: int, s: int) -> None:
    if m < 1:
        raise ValueError(f"need m >= 1, got m={m}")
    if not 0 <= r < m:
        raise ValueError(f"need 0 <= r <= m - 1, got m={m}, r={r}")
    if s < 0:
        raise ValueError(f"need s >= 0, got s={s}")


def _ceil_half(n: int) -> int:
    return (n + 1) // 2


def t_of_mrs(m: int, r: int, s: int, table: CountTable) -> int:
    """Evaluate ``t(m, r, s)`` term by term from the recurrence.

    This is a direct transcription of the full sum, with no pruning: the
    zero convention of :func:`binomial` removes the vanishing terms.  Lower
    layers are filled into ``table`` on demand.  :func:`fill_table` uses a
    faster pruned evaluation that must agree with this one.
    """
    _check_indices(m, r, s)
    if r == m - 1 and s == 0:
        return 1
    if table.max_m < m - 1:
        fill_table(m - 1, table)
    total = 0
    for m_bar in range(1, m):
        dm = m - m_bar
        for r_bar in range(m_bar):
            ell = dm - (r - r_bar)
            for s_bar in range(s + 1):
                ds = s - s_bar
                t_bar = table.get(m_bar, r_bar, s_bar)
                for c in range(1, _ceil_half(r_bar + 1) + 1):
                    term = (
                        component_subset_count(r_bar, ell, c)
                        * binomial(ell - c, ds)
                        * binomial(dm - c - ds + ell - 1, ell - 1)
                        * t_bar
                    )
                    total += term if c % 2 else -term
    return total


@functools.lru_cache(maxsize=None)
def push_coefficient(dm: int, ell: int, r_bar: int, ds: int) -> int:
    """Signed weight of ``t(m_bar, r_bar, s_bar)`` in ``t(m, r, s)``.

    Sums over the number ``c`` of pushed-in segments: choose their slots on
    the right side, extend ``ds`` existing edges across them to form new
    singular vertices, then spread the remaining new edges over the ``ell``
    bins.  Depends on ``(m, r, s)`` only through ``dm``, ``ell`` and ``ds``.
    """
    if ell < 1:
        return 0
    total = 0
    for c in range(1, _ceil_half(r_bar + 1) + 1):
        spread = dm - c - ds
        if spread < 0:
            break
        term = (
            component_subset_count(r_bar, ell, c)
            * binomial(ell - c, ds)
            * composition_count(spread, ell)
        )
        total += term if c % 2 else -term
    return total


def _layer_row(lower: list[list[list[int]]], m: int, r: int) -> list[int]:
    """Compute ``[t(m, r, s) for s in range(m)]`` from the lower layers."""
    row = [0] * m
    if r == m - 1:
        row[0] = 1
    for s in range(m):
        if r == m - 1 and s == 0:
            continue
        total = 0
        for m_bar in range(max(1, m - r - 1), m):
            dm = m - m_bar
            layer = lower[m_bar - 1]
            # ell = dm - r + r_bar must lie in [1, r_bar + 1]; the upper
            # bound is dm <= r + 1, enforced by the m_bar range
            for r_bar in range(max(0, r + 1 - dm), m_bar):
                ell = dm - r + r_bar
                t_row = layer[r_bar]
                # a pushed segment covers at least one edge, so ds <= ell - 1
                for s_bar in range(max(0, s - ell + 1), min(s, m_bar - 1) + 1):
                    t_bar = t_row[s_bar]
                    if t_bar:
                        coeff = push_coefficient(dm, ell, r_bar, s - s_bar)
                        if coeff:
                            total += coeff * t_bar
        if total < 0:
            raise ArithmeticError(f"negative count t({m}, {r}, {s}) = {total}")
        row[s] = total
    return row


def fill_table(max_m: int, table: CountTable | None = None, threads: int = 1) -> CountTable:
    """Fill (or extend) a table through ``max_m`` tiles, layer by layer.

    Rows of one layer are independent; with ``threads > 1`` they are
    computed in worker processes.  The result does not depend on
    ``threads``.
    """
    if max_m < 1:
        raise ValueError(f"need max_m >= 1, got {max_m}")
    if table is None:
        table = CountTable()
    pool = ProcessPoolExecutor(threads) if threads > 1 and max_m > table.max_m else None
    try:
        for m in range(table.max_m + 1, max_m + 1):
            lower = table.layers
            if pool is None:
                layer = [_layer_row(lower, m, r) for r in range(m)]
            else:
                layer = list(pool.map(functools.partial(_layer_row, lower, m), range(m)))
            table.layers.append(layer)
            log.debug("layer m=%d done", m)
    finally:
        if pool is not None:
            pool.shutdown()
    return table


def t_of_ms(m: int, s: int, table: CountTable) -> int:
    """Number of rectangulations with ``m`` tiles and ``s`` singular vertices."""
    _check_indices(m, 0, s)
    if table.max_m < m:
        fill_table(m, table)
    return sum(table.get(m, r, s) for r in range(m))


def t_total(m: int, table: CountTable) -> int:
    """Total number of rectangulations with ``m`` tiles."""
    _check_indices(m, 0, 0)
    return sum(t_of_ms(m, s, table) for s in range(m))


@dataclass(frozen=True)
class ParityEntry:
    n: int
    parity: int
    conjectured: int

    @property
    def agrees(self) -> bool:
        return self.parity == self.conjectured


@dataclass(frozen=True)
class ParityReport:
    entries: tuple[ParityEntry, ...]

    @property
    def parities(self) -> list[int]:
        return [e.parity for e in self.entries]

    @property
    def all_agree(self) -> bool:
        return all(e.agrees for e in self.entries)


def conjectured_parity(n: int) -> int:
    """Parity pattern of the total count: odd exactly when n is 1 or 4 mod 8."""
    return 1 if n % 8 in (1, 4) else 0


def parity_report(max_m: int, table: CountTable) -> ParityReport:
    return ParityReport(
        tuple(
            ParityEntry(n, t_total(n, table) % 2, conjectured_parity(n))
            for n in range(1, max_m + 1)
        )
    )


def write_cache(table: CountTable, path: str | Path) -> None:
    lines = [CACHE_HEADER]
    lines.extend(f"{m} {r} {s} {t}" for m, r, s, t in table.entries())
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def read_cache(path: str | Path) -> CountTable:
    """Load a cache file, keeping only the complete leading layers."""
    text = Path(path).read_text(encoding="utf-8").splitlines()
    if not text or text[0].strip() != CACHE_HEADER:
        found = text[0].strip() if text else "<empty>"
        raise ValueError(f"{path}: unsupported cache header {found!r}")
    values: dict[tuple[int, int, int], int] = {}
    for lineno, line in enumerate(text[1:], start=2):
        if not line.strip():
            continue
        try:
            m, r, s, t = (int(x) for x in line.split())
        except ValueError:
            raise ValueError(f"{path}:{lineno}: malformed record {line!r}") from None
        if t < 0:
            raise ValueError(f"{path}:{lineno}: negative count")
        values[m, r, s] = t
    table = CountTable()
    m = 1
    while all((m, r, s) in values for r in range(m) for s in range(m)):
        table.layers.append([[values[m, r, s] for s in range(m)] for r in range(m)])
        m += 1
    return table


def load_or_fill(max_m: int, cache_path: str | Path | None = None, threads: int = 1) -> CountTable:
    """Fill through ``max_m``, reusing and updating an on-disk cache if given."""
    table = CountTable()
    if cache_path is not None and Path(cache_path).exists():
        table = read_cache(cache_path)
        log.info("loaded %d layers from %s", table.max_m, cache_path)
    grew = table.max_m < max_m
    fill_table(max_m, table, threads=threads)
    if cache_path is not None and grew:
        write_cache(table, cache_path)
    return table
