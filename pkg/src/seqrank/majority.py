"""Weighted majority graphs and profile realization.

A profile induces an antisymmetric integer matrix of pairwise margins.
Conversely, any antisymmetric graph with even weights is realized here
as a profile (voter-pair construction), and graphs with the special
two-level block structure are realized with just two voters.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import Profile, Ranking
from .errors import ProfileParseError

__all__ = [
    "WeightedMajorityGraph",
    "BilevelGraph",
    "weighted_majority_graph",
    "c2_borda_scores",
    "mcgarvey_realize",
    "bilevel_realize",
    "sum_bilevel_realize",
    "padded_opposite_pairs",
    "parse_graph",
    "serialize_graph",
    "parse_bilevel",
]


@dataclass(frozen=True)
class WeightedMajorityGraph:
    """m candidates plus an antisymmetric ``int64[m, m]`` margin matrix."""

    m: int
    weights: np.ndarray

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=np.int64)
        if w.shape != (self.m, self.m):
            raise ValueError(f"weight matrix must be {self.m}x{self.m}")
        if np.diagonal(w).any():
            raise ValueError("diagonal must be zero")
        if (w != -w.T).any():
            raise ValueError("weights must be antisymmetric")
        object.__setattr__(self, "weights", w)

    def weight(self, c: int, d: int) -> int:
        return int(self.weights[c, d])

    def arcs(self) -> list[tuple[int, int, int]]:
        """Positive-weight arcs as (from, to, weight), sorted."""
        out = []
        for c in range(self.m):
            for d in range(self.m):
                if self.weights[c, d] > 0:
                    out.append((c, d, int(self.weights[c, d])))
        return out

    def __eq__(self, other):
        return (
            isinstance(other, WeightedMajorityGraph)
            and self.m == other.m
            and np.array_equal(self.weights, other.weights)
        )


def weighted_majority_graph(profile: Profile) -> WeightedMajorityGraph:
    """Exact pairwise margins, multiplicities included."""
    m = profile.m
    above = np.zeros((m, m), dtype=np.int64)
    for count, r in profile.groups:
        order = r.order
        for i in range(m):
            c = order[i]
            for j in range(i + 1, m):
                above[c, order[j]] += count
    return WeightedMajorityGraph(m, above - above.T)


def c2_borda_scores(graph: WeightedMajorityGraph) -> np.ndarray:
    """Row sums of the margin matrix.

    Affinely equivalent to Borda scores: for a profile with n voters over
    m candidates, row_sum(c) = 2 * borda(c) - n * (m + 1).
    """
    return graph.weights.sum(axis=1)


def mcgarvey_realize(graph: WeightedMajorityGraph) -> Profile:
    """A profile inducing the graph, one voter pair per two units of weight.

    Each pair ranks the arc's endpoints first (agreeing on them) and the
    filler candidates in opposite orders, so only the chosen arc gains
    weight.  Requires all weights even; voter count equals the sum of
    positive weights.
    """
    m = graph.m
    if (graph.weights % 2).any():
        raise ValueError("realization by voter pairs requires even weights")
    groups = []
    for c, d, w in graph.arcs():
        filler = [x for x in range(m) if x != c and x != d]
        first = Ranking([c, d] + filler)
        second = Ranking(filler[::-1] + [c, d])
        groups.append((w // 2, first))
        groups.append((w // 2, second))
    return Profile(m, groups)


@dataclass(frozen=True)
class BilevelGraph:
    """Arc set = union of block products upper_i x lower_i, all weight 2.

    Blocks are pairwise disjoint candidate sets (possibly empty) and need
    not cover all candidates; uncovered candidates carry no arcs.
    """

    m: int
    blocks: tuple[tuple[tuple[int, ...], tuple[int, ...]], ...]

    def __post_init__(self):
        seen = set()
        norm = []
        for upper, lower in self.blocks:
            upper = tuple(sorted(int(c) for c in upper))
            lower = tuple(sorted(int(c) for c in lower))
            for c in upper + lower:
                if not 0 <= c < self.m:
                    raise ValueError(f"candidate {c} out of range")
                if c in seen:
                    raise ValueError(f"candidate {c} appears in two blocks")
                seen.add(c)
            norm.append((upper, lower))
        object.__setattr__(self, "blocks", tuple(norm))

    def arcs(self) -> set[tuple[int, int]]:
        out = set()
        for upper, lower in self.blocks:
            for c in upper:
                for d in lower:
                    out.add((c, d))
        return out

    def graph(self) -> WeightedMajorityGraph:
        w = np.zeros((self.m, self.m), dtype=np.int64)
        for c, d in self.arcs():
            w[c, d] = 2
            w[d, c] = -2
        return WeightedMajorityGraph(self.m, w)


def bilevel_realize(graph: BilevelGraph) -> Profile:
    """The 2-voter profile whose majority graph is exactly the block arcs.

    Voter one ranks the blocks as upper_1, lower_1, upper_2, lower_2, ...;
    voter two reverses the block-pair order and each block's internal
    order but keeps upper blocks above their lower blocks, so only
    within-pair upper->lower comparisons survive cancellation.  Block
    internal order is ascending candidate index; candidates outside all
    blocks are appended as a final arc-free block.
    """
    m = graph.m
    covered = {c for upper, lower in graph.blocks for c in upper + lower}
    blocks = list(graph.blocks)
    leftover = tuple(sorted(set(range(m)) - covered))
    if leftover:
        blocks.append((leftover, ()))
    first: list[int] = []
    for upper, lower in blocks:
        first.extend(upper)
        first.extend(lower)
    second: list[int] = []
    for upper, lower in reversed(blocks):
        second.extend(reversed(upper))
        second.extend(reversed(lower))
    return Profile(m, [(1, Ranking(first)), (1, Ranking(second))])


def sum_bilevel_realize(parts: list[BilevelGraph], m: int | None = None) -> Profile:
    """Concatenate 2-voter realizations of arc-disjoint bilevel graphs."""
    if parts:
        m = parts[0].m
        if any(p.m != m for p in parts):
            raise ValueError("bilevel parts must share the candidate set")
    elif m is None:
        raise ValueError("m is required when no parts are given")
    seen: set[tuple[int, int]] = set()
    for p in parts:
        arcs = p.arcs()
        if seen & arcs:
            raise ValueError(f"overlapping arcs across parts: {sorted(seen & arcs)[:3]}")
        seen |= arcs
    groups = []
    for p in parts:
        groups.extend(bilevel_realize(p).groups)
    return Profile(m, groups)


def padded_opposite_pairs(profile: Profile, extra_pairs: int) -> Profile:
    """Append opposite-ranking voter pairs; the majority graph is unchanged."""
    if extra_pairs < 0:
        raise ValueError("extra_pairs must be >= 0")
    if extra_pairs == 0:
        return profile
    r = Ranking(range(profile.m))
    pads = [(extra_pairs, r), (extra_pairs, r.reverse())]
    return Profile(profile.m, list(profile.groups) + pads, profile.names)


# ---------------------------------------------------------------------------
# File formats
# ---------------------------------------------------------------------------
#
# Graph:   header "m", then one "c d w" line per positive-weight arc.
# Bilevel: header "m", then alternating "C: ..." / "D: ..." block lines.


def parse_graph(text: str) -> WeightedMajorityGraph:
    m = None
    w = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if m is None:
            try:
                m = int(line)
            except ValueError:
                raise ProfileParseError("graph header must be the candidate count", lineno) from None
            w = np.zeros((m, m), dtype=np.int64)
            continue
        parts = line.split()
        if len(parts) != 3:
            raise ProfileParseError("expected 'c d w'", lineno)
        try:
            c, d, weight = (int(x) for x in parts)
        except ValueError:
            raise ProfileParseError("arc entries must be integers", lineno) from None
        if not (0 <= c < m and 0 <= d < m) or c == d:
            raise ProfileParseError(f"bad arc ({c}, {d})", lineno)
        if weight <= 0:
            raise ProfileParseError("arc weights must be positive", lineno)
        if w[c, d] or w[d, c]:
            raise ProfileParseError(f"duplicate arc ({c}, {d})", lineno)
        w[c, d] = weight
        w[d, c] = -weight
    if m is None:
        raise ProfileParseError("empty graph file")
    return WeightedMajorityGraph(m, w)


def serialize_graph(graph: WeightedMajorityGraph) -> str:
    lines = [str(graph.m)]
    for c, d, w in graph.arcs():
        lines.append(f"{c} {d} {w}")
    return "\n".join(lines) + "\n"


def parse_bilevel(text: str) -> BilevelGraph:
    m = None
    uppers: list[tuple[int, ...]] = []
    lowers: list[tuple[int, ...]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if m is None:
            try:
                m = int(line)
            except ValueError:
                raise ProfileParseError("bilevel header must be the candidate count", lineno) from None
            continue
        tag, _, rest = line.partition(":")
        tag = tag.strip().upper()
        try:
            ids = tuple(int(x) for x in rest.split())
        except ValueError:
            raise ProfileParseError("block entries must be integers", lineno) from None
        if tag == "C":
            if len(uppers) != len(lowers):
                raise ProfileParseError("expected a 'D:' line", lineno)
            uppers.append(ids)
        elif tag == "D":
            if len(uppers) != len(lowers) + 1:
                raise ProfileParseError("expected a 'C:' line", lineno)
            lowers.append(ids)
        else:
            raise ProfileParseError("block lines must start with 'C:' or 'D:'", lineno)
    if m is None:
        raise ProfileParseError("empty bilevel file")
    if len(uppers) != len(lowers):
        raise ProfileParseError("unbalanced C/D block lines")
    return BilevelGraph(m, tuple(zip(uppers, lowers)))
