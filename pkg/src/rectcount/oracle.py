"""Brute-force enumeration of small rectangulations.

Rectangulations are realized as partitions of a p x q integer grid into
rectangles.  Each partition is reduced to a canonical encoding of its
direction-labelled 1-skeleton; two grid tilings are combinatorially
equivalent exactly when their skeletons agree as graphs whose edges carry
N/E/S/W labels, with the SW corner fixed.  Deduplicating by encoding gives
one representative per rectangulation.  Everything here is independent of
the recurrence in :mod:`rectcount.recursion` and is used to check it.
"""

from __future__ import annotations

import logging
from collections import Counter, deque
from dataclasses import dataclass, field
from typing import Iterator

from .recursion import CountTable, t_of_mrs
from .topology import euler_characteristic

log = logging.getLogger(__name__)

DEFAULT_BOUND = 6
EXTENDED_BOUND = 7

Rect = tuple[int, int, int, int]  # x0, x1, y0, y1

# direction index -> unit step; the order N, E, S, W fixes the traversal
DIRECTIONS = ((0, 1), (1, 0), (0, -1), (-1, 0))


@dataclass(frozen=True)
class GridTiling:
    width: int
    height: int
    tiles: tuple[Rect, ...]

    @property
    def m(self) -> int:
        return len(self.tiles)

    def validate(self) -> None:
        covered = set()
        for x0, x1, y0, y1 in self.tiles:
            if not (0 <= x0 < x1 <= self.width and 0 <= y0 < y1 <= self.height):
                raise ValueError(f"tile {(x0, x1, y0, y1)} outside {self.width}x{self.height} grid")
            for x in range(x0, x1):
                for y in range(y0, y1):
                    if (x, y) in covered:
                        raise ValueError(f"cell {(x, y)} covered twice")
                    covered.add((x, y))
        if len(covered) != self.width * self.height:
            raise ValueError("tiles do not cover the grid")


def enumerate_grid_tilings(p: int, q: int, m: int) -> Iterator[GridTiling]:
    """Yield every partition of the p x q grid into exactly ``m`` rectangles.

    Rectangles are placed with their lower-left corner at the first
    uncovered cell in (y, x) order and extend right and up, so each
    partition is produced once.
    """
    if p < 1 or q < 1 or m < 1:
        return
    if m > p * q:
        return
    covered = [[False] * p for _ in range(q)]  # covered[y][x]
    tiles: list[Rect] = []

    def first_free(y_from: int) -> tuple[int, int] | None:
        for y in range(y_from, q):
            row = covered[y]
            for x in range(p):
                if not row[x]:
                    return x, y
        return None

    def place(y_from: int, free: int) -> Iterator[GridTiling]:
        spot = first_free(y_from)
        if spot is None:
            if len(tiles) == m:
                yield GridTiling(p, q, tuple(tiles))
            return
        left = m - len(tiles)
        if left == 0 or free < left:
            return
        x0, y0 = spot
        max_w = 0
        while x0 + max_w < p and not covered[y0][x0 + max_w]:
            max_w += 1
        for w in range(1, max_w + 1):
            for h in range(1, q - y0 + 1):
                # cells above the current row are all free, since the
                # first free cell is the lowest-leftmost one
                area = w * h
                if left == 1 and area != free:
                    continue
                if area > free - (left - 1):
                    break
                for y in range(y0, y0 + h):
                    for x in range(x0, x0 + w):
                        covered[y][x] = True
                tiles.append((x0, x0 + w, y0, y0 + h))
                yield from place(y0, free - area)
                tiles.pop()
                for y in range(y0, y0 + h):
                    for x in range(x0, x0 + w):
                        covered[y][x] = False

    yield from place(0, p * q)


@dataclass
class Skeleton:
    """Direction-labelled 1-skeleton of a grid tiling."""

    width: int
    height: int
    # vertex -> 4 neighbours (N, E, S, W), None where no edge leaves
    adjacency: dict[tuple[int, int], list[tuple[int, int] | None]] = field(default_factory=dict)

    @property
    def vertex_count(self) -> int:
        return len(self.adjacency)

    @property
    def edge_count(self) -> int:
        return sum(self.degree(v) for v in self.adjacency) // 2

    def degree(self, v: tuple[int, int]) -> int:
        return sum(nb is not None for nb in self.adjacency[v])


def build_skeleton(t: GridTiling) -> Skeleton:
    corners: set[tuple[int, int]] = set()
    # unit segments on tile boundaries, keyed by (point, direction index)
    unit: set[tuple[tuple[int, int], int]] = set()

    def mark(a: tuple[int, int], d: int) -> None:
        dx, dy = DIRECTIONS[d]
        b = (a[0] + dx, a[1] + dy)
        unit.add((a, d))
        unit.add((b, (d + 2) % 4))

    for x0, x1, y0, y1 in t.tiles:
        corners.update(((x0, y0), (x1, y0), (x0, y1), (x1, y1)))
        for x in range(x0, x1):
            mark((x, y0), 1)
            mark((x, y1), 1)
        for y in range(y0, y1):
            mark((x0, y), 0)
            mark((x1, y), 0)

    sk = Skeleton(t.width, t.height)
    for v in corners:
        nbs: list[tuple[int, int] | None] = [None] * 4
        for d, (dx, dy) in enumerate(DIRECTIONS):
            if (v, d) not in unit:
                continue
            x, y = v[0] + dx, v[1] + dy
            while (x, y) not in corners:
                x, y = x + dx, y + dy
            nbs[d] = (x, y)
        sk.adjacency[v] = nbs
    return sk


def _encode(sk: Skeleton) -> bytes:
    start = (0, 0)
    index = {start: 0}
    order = [start]
    queue = deque([start])
    while queue:
        v = queue.popleft()
        for nb in sk.adjacency[v]:
            if nb is not None and nb not in index:
                index[nb] = len(order)
                order.append(nb)
                queue.append(nb)
    out = bytearray()
    for v in order:
        for nb in sk.adjacency[v]:
            code = 0 if nb is None else index[nb] + 1
            out += code.to_bytes(2, "big")
    return bytes(out)


def canonical_encoding(t: GridTiling) -> bytes:
    """Byte string identifying the rectangulation realized by ``t``.

    Breadth-first traversal from the SW corner, trying edges in the order
    N, E, S, W; each vertex contributes the discovery indices of its four
    neighbours (0 for a missing edge).  The traversal depends only on the
    labelled graph, so it is invariant under any realization change.
    """
    return _encode(build_skeleton(t))


@dataclass(frozen=True)
class ClassStats:
    m: int
    r: int
    s: int
    k: int
    e: int
    symmetric: bool

    @property
    def dimension(self) -> int:
        return self.m - self.s - 1

    def invariant_errors(self) -> list[str]:
        errors = []
        if self.k != 2 * self.m + 2 - self.s:
            errors.append(f"k={self.k} != 2m+2-s={2 * self.m + 2 - self.s}")
        if self.k - self.e + self.m != 1:
            errors.append(f"k-e+m={self.k - self.e + self.m} != 1")
        if not 0 <= self.r <= self.m - 1:
            errors.append(f"r={self.r} out of range")
        if not 0 <= self.s <= self.m - 1:
            errors.append(f"s={self.s} out of range")
        return errors


def square_symmetry(t: GridTiling, g: int) -> GridTiling:
    """Image of ``t`` under the square symmetry number ``g`` (0..7).

    ``g & 4`` transposes (reflects in the SW-NE diagonal) first, then
    ``g & 1`` mirrors x and ``g & 2`` mirrors y.
    """
    w, h = t.width, t.height
    tiles = t.tiles
    if g & 4:
        tiles = tuple((y0, y1, x0, x1) for x0, x1, y0, y1 in tiles)
        w, h = h, w
    if g & 1:
        tiles = tuple((w - x1, w - x0, y0, y1) for x0, x1, y0, y1 in tiles)
    if g & 2:
        tiles = tuple((x0, x1, h - y1, h - y0) for x0, x1, y0, y1 in tiles)
    return GridTiling(w, h, tiles)


def is_d8_symmetric(t: GridTiling, encoding: bytes | None = None) -> bool:
    if encoding is None:
        encoding = canonical_encoding(t)
    return all(canonical_encoding(square_symmetry(t, g)) == encoding for g in range(1, 8))


def class_stats(t: GridTiling, sk: Skeleton | None = None) -> ClassStats:
    if sk is None:
        sk = build_skeleton(t)
    r = sum(1 for (x, y) in sk.adjacency if x == t.width and 0 < y < t.height)
    s = sum(
        1
        for (x, y) in sk.adjacency
        if 0 < x < t.width and 0 < y < t.height and sk.degree((x, y)) == 4
    )
    return ClassStats(
        m=t.m,
        r=r,
        s=s,
        k=sk.vertex_count,
        e=sk.edge_count,
        symmetric=is_d8_symmetric(t, _encode(sk)),
    )


def is_reduced(t: GridTiling) -> bool:
    """True if every interior grid line carries part of a wall.

    A tiling with an unused grid line is a stretched copy of a tiling on a
    smaller grid, which the p, q sweep already visits.
    """
    xs = {x0 for x0, _, _, _ in t.tiles}
    ys = {y0 for _, _, y0, _ in t.tiles}
    return len(xs) == t.width and len(ys) == t.height


def _check_bound(m: int, bound: int) -> None:
    if m < 1:
        raise ValueError(f"need m >= 1, got {m}")
    if m > bound:
        raise ValueError(
            f"m={m} exceeds the brute-force bound {bound}; "
            f"m up to {EXTENDED_BOUND} is allowed with a raised bound"
        )


_class_cache: dict[int, dict[bytes, ClassStats]] = {}


def enumerate_rectangulations(m: int, bound: int = DEFAULT_BOUND) -> dict[bytes, ClassStats]:
    """All rectangulations with ``m`` tiles, keyed by canonical encoding.

    Every rectangulation has a realization on a grid with at most ``m``
    columns and rows, so sweeping ``p, q <= m`` and deduplicating finds
    each class.  Only reduced tilings are canonicalized.  Results are
    memoized per ``m``.
    """
    _check_bound(m, bound)
    if m in _class_cache:
        return _class_cache[m]
    classes: dict[bytes, ClassStats] = {}
    for p in range(1, m + 1):
        for q in range(1, m + 1):
            n_tilings = 0
            for t in enumerate_grid_tilings(p, q, m):
                n_tilings += 1
                if not is_reduced(t):
                    continue
                sk = build_skeleton(t)
                enc = _encode(sk)
                if enc not in classes:
                    classes[enc] = class_stats(t, sk)
            log.debug("m=%d grid %dx%d: %d tilings", m, p, q, n_tilings)
    _class_cache[m] = classes
    return classes


def census(classes: dict[bytes, ClassStats]) -> dict[tuple[int, int, int], int]:
    return dict(Counter((c.m, c.r, c.s) for c in classes.values()))


def d8_symmetric_count(n: int, bound: int = DEFAULT_BOUND) -> int:
    """Number of rectangulations with ``n`` tiles fixed by every square symmetry."""
    return sum(c.symmetric for c in enumerate_rectangulations(n, bound).values())


@dataclass
class VerificationReport:
    max_m: int
    classes_checked: int = 0
    # (m, r, s, oracle count, recursion count)
    mismatches: list[tuple[int, int, int, int, int]] = field(default_factory=list)
    invariant_failures: list[str] = field(default_factory=list)
    # (n, oracle alternating sum, euler characteristic from the table)
    euler_mismatches: list[tuple[int, int, int]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not (self.mismatches or self.invariant_failures or self.euler_mismatches)


def cross_check(max_m: int, table: CountTable, bound: int = DEFAULT_BOUND) -> VerificationReport:
    """Compare the brute-force census with the recurrence for every m <= max_m."""
    _check_bound(max_m, bound)
    report = VerificationReport(max_m)
    alternating = 0
    for m in range(1, max_m + 1):
        classes = enumerate_rectangulations(m, bound)
        report.classes_checked += len(classes)
        counts = census(classes)
        for r in range(m):
            for s in range(m):
                expected = counts.get((m, r, s), 0)
                got = table.get(m, r, s) if table.max_m >= m else t_of_mrs(m, r, s, table)
                if expected != got:
                    report.mismatches.append((m, r, s, expected, got))
        for enc, c in classes.items():
            for err in c.invariant_errors():
                report.invariant_failures.append(f"{enc.hex()}: {err}")
        extra = set(counts) - {(m, r, s) for r in range(m) for s in range(m)}
        for key in sorted(extra):
            report.mismatches.append((*key, counts[key], 0))
        alternating += sum(-1 if c.dimension % 2 else 1 for c in classes.values())
        chi = euler_characteristic(m, table)
        if alternating != chi:
            report.euler_mismatches.append((m, alternating, chi))
    return report


def dump_classes(classes: dict[bytes, ClassStats]) -> list[str]:
    """One line per class, ``m r s k e symmetric encoding-hex``, sorted by encoding."""
    return [
        f"{c.m} {c.r} {c.s} {c.k} {c.e} {int(c.symmetric)} {enc.hex()}"
        for enc, c in sorted(classes.items())
    ]
