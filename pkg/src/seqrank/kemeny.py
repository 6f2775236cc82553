"""Exact Kemeny aggregation and ranking-comparison metrics.

The solver runs a dynamic program over subsets of candidates (state =
set already placed at the top); it returns every optimal ranking, or a
single one chosen deterministically by a tie-break priority order.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from ._backend import kernels
from .core import Profile, Ranking, swap_distance
from .errors import ResourceLimitError

__all__ = [
    "disagreement_matrix",
    "kemeny_total_distance",
    "kemeny_rankings",
    "kemeny_ranking_tiebroken",
    "position_displacement",
]

DEFAULT_KEMENY_BOUND = 16


def disagreement_matrix(profile: Profile) -> np.ndarray:
    """m x m matrix; entry (c, d) = number of voters preferring d to c.

    Placing c anywhere above d costs exactly entry (c, d) disagreements.
    Off-diagonal entries of the matrix and its transpose sum to n.
    """
    m = profile.m
    out = np.zeros((m, m), dtype=np.int64)
    for count, r in profile.groups:
        order = r.order
        for i in range(m):
            above = order[i]
            for j in range(i + 1, m):
                out[order[j], above] += count
    return out


def kemeny_total_distance(ranking: Ranking, profile: Profile) -> int:
    """Sum over voters (with multiplicity) of the swap distance to ``ranking``."""
    return sum(count * swap_distance(ranking, r) for count, r in profile.groups)


def _edge_cost(pcost: np.ndarray, c: int, placed: int, full: int) -> int:
    """Disagreements of c against everything not yet placed (and not c)."""
    rem = full & ~placed & ~(1 << c)
    total = 0
    row = pcost[c]
    while rem:
        bit = rem & (-rem)
        total += int(row[bit.bit_length() - 1])
        rem ^= bit
    return total


def _solve(profile: Profile, bound: int):
    if profile.m > bound:
        raise ResourceLimitError(
            f"exact Kemeny limited to m <= {bound}, got m={profile.m}"
        )
    pcost = disagreement_matrix(profile)
    f, onpath = kernels.kemeny_dp(pcost)
    return pcost, f, onpath


def kemeny_rankings(profile: Profile, bound: int = DEFAULT_KEMENY_BOUND) -> tuple[frozenset[Ranking], int]:
    """All rankings minimizing the total swap distance, and the optimum."""
    m = profile.m
    pcost, f, onpath = _solve(profile, bound)
    full = (1 << m) - 1

    results: list[Ranking] = []
    prefix: list[int] = []

    def dfs(placed: int):
        if placed == full:
            results.append(Ranking(prefix))
            return
        rem = full ^ placed
        while rem:
            bit = rem & (-rem)
            c = bit.bit_length() - 1
            rem ^= bit
            nxt = placed | bit
            if onpath[nxt] and f[placed] + _edge_cost(pcost, c, placed, full) == f[nxt]:
                prefix.append(c)
                dfs(nxt)
                prefix.pop()

    dfs(0)
    return frozenset(results), int(f[full])


def kemeny_ranking_tiebroken(profile: Profile, tie: Ranking, bound: int = DEFAULT_KEMENY_BOUND) -> Ranking:
    """The optimal ranking that is lexicographically earliest by ``tie``.

    Rankings are compared position by position, preferring the candidate
    with higher tie priority; this is the deterministic representative
    used whenever an experiment needs a single Kemeny ranking.
    """
    m = profile.m
    pcost, f, onpath = _solve(profile, bound)
    full = (1 << m) - 1
    placed = 0
    order = []
    for _ in range(m):
        best = None
        rem = full ^ placed
        while rem:
            bit = rem & (-rem)
            c = bit.bit_length() - 1
            rem ^= bit
            nxt = placed | bit
            if onpath[nxt] and f[placed] + _edge_cost(pcost, c, placed, full) == f[nxt]:
                if best is None or tie.position(c) < tie.position(best):
                    best = c
        order.append(best)
        placed |= 1 << best
    return Ranking(order)


def position_displacement(r1: Ranking, r2: Ranking, position: int) -> Fraction:
    """How far the candidates at ``position`` in one ranking sit in the other.

    Defined as half the sum of the two cross-position offsets; 0 exactly
    when both rankings agree on the candidate at that position.
    """
    if r1.m != r2.m:
        raise ValueError("rankings over different sizes")
    if not 1 <= position <= r1.m:
        raise ValueError(f"position {position} out of range 1..{r1.m}")
    a = abs(position - r1.position(r2.candidate_at(position)))
    b = abs(position - r2.position(r1.candidate_at(position)))
    return Fraction(a + b, 2)
