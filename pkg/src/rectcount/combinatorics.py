"""Exact binomial-type counting functions used as recursion coefficients.

Everything here works on Python ints, so values never overflow and never
touch floating point.
"""

from __future__ import annotations

import math


def binomial(n: int, k: int) -> int:
    """C(n, k) with the zero convention.

    Returns 0 whenever ``k < 0``, ``k > n`` or ``n < 0``; this lets
    recursion terms that should vanish drop out without extra guards.
    """
    if n < 0 or k < 0 or k > n:
        return 0
    return math.comb(n, k)


def component_subset_count(r_bar: int, ell: int, c: int) -> int:
    """Number of subsets of {1, ..., r_bar + 1} with ``c`` runs and ``ell`` elements.

    A run (component) is a maximal block of consecutive integers.  The
    ``ell`` chosen elements are split into ``c`` nonempty runs in
    C(ell - 1, c - 1) ways, and the runs are dropped into the
    ``r_bar + 2 - ell`` gaps around the unchosen elements in
    C(r_bar + 2 - ell, c) ways.
    """
    return binomial(ell - 1, c - 1) * binomial(r_bar + 2 - ell, c)


def composition_count(m: int, n: int) -> int:
    """Number of nonnegative integer solutions of x_1 + ... + x_n = m."""
    if n < 1:
        raise ValueError(f"composition_count needs n >= 1, got n={n}")
    return binomial(m + n - 1, n - 1)
