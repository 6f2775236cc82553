"""Rankings, profiles, scoring systems, and distances.

Candidates are dense 0-based indices ``0 .. m-1``.  A ranking is a
permutation of them, most-preferred first; positions are 1-based to match
the usual social-choice convention (position 1 = top).  Profiles are
multiplicity-compressed: a list of ``(count, ranking)`` groups over a
common candidate set.  All values are immutable after construction.

Scores are computed in exact arithmetic (integers for the built-in
scoring systems, :class:`fractions.Fraction` for custom ones); floats
only ever appear in statistics, never in rule execution.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Callable, Iterable, Sequence

import numpy as np

from .errors import ProfileParseError

__all__ = [
    "Ranking",
    "Profile",
    "ScoringSystem",
    "PLURALITY",
    "VETO",
    "BORDA",
    "HALF",
    "swap_distance",
    "normalized_swap_distance",
    "reverse_ranking",
    "reverse_profile",
    "scoring_vector",
    "scores",
    "winners",
    "losers",
    "reversed_system",
    "parse_profile",
    "serialize_profile",
]


class Ranking:
    """An immutable strict ranking of candidates, most-preferred first."""

    __slots__ = ("order", "_pos")

    def __init__(self, order: Iterable[int]):
        order = tuple(int(c) for c in order)
        m = len(order)
        if m == 0:
            raise ValueError("ranking must contain at least one candidate")
        if sorted(order) != list(range(m)):
            raise ValueError(f"not a permutation of 0..{m - 1}: {order}")
        object.__setattr__(self, "order", order)
        pos = [0] * m
        for r, c in enumerate(order):
            pos[c] = r + 1
        object.__setattr__(self, "_pos", tuple(pos))

    def __setattr__(self, name, value):
        raise AttributeError("Ranking is immutable")

    @property
    def m(self) -> int:
        return len(self.order)

    def position(self, candidate: int) -> int:
        """1-based position of ``candidate`` (1 = most preferred)."""
        return self._pos[candidate]

    def candidate_at(self, position: int) -> int:
        """Candidate ranked at 1-based ``position``."""
        if not 1 <= position <= self.m:
            raise ValueError(f"position {position} out of range 1..{self.m}")
        return self.order[position - 1]

    def prefers(self, c: int, d: int) -> bool:
        return self._pos[c] < self._pos[d]

    def reverse(self) -> "Ranking":
        return Ranking(self.order[::-1])

    def restrict(self, keep: Iterable[int]) -> "Ranking":
        """Ranking over ``keep`` re-indexed densely by ascending old index.

        The relative order of surviving candidates is preserved; candidate
        ids are remapped with :func:`restriction_map` of the same set.
        """
        keep = set(keep)
        remap = restriction_map(self.m, keep)
        return Ranking(remap[c] for c in self.order if c in keep)

    def relabel(self, mapping: Sequence[int]) -> "Ranking":
        """Apply a candidate permutation: new candidate = mapping[old]."""
        return Ranking(mapping[c] for c in self.order)

    def __iter__(self):
        return iter(self.order)

    def __len__(self):
        return len(self.order)

    def __getitem__(self, i):
        return self.order[i]

    def __eq__(self, other):
        return isinstance(other, Ranking) and self.order == other.order

    def __hash__(self):
        return hash(self.order)

    def __lt__(self, other):
        return self.order < other.order

    def __repr__(self):
        return f"Ranking({list(self.order)!r})"


def restriction_map(m: int, keep: Iterable[int]) -> dict[int, int]:
    """Old->new index map for restricting ``0..m-1`` to the set ``keep``."""
    keep = sorted(set(keep))
    if not keep:
        raise ValueError("restriction to an empty candidate set")
    if keep[0] < 0 or keep[-1] >= m:
        raise ValueError(f"candidate out of range 0..{m - 1}: {keep}")
    return {c: i for i, c in enumerate(keep)}


class Profile:
    """A multiplicity-compressed list of rankings over ``m`` candidates."""

    __slots__ = ("m", "groups", "names", "_mults", "_ranks")

    def __init__(
        self,
        m: int,
        groups: Iterable[tuple[int, Ranking | Sequence[int]]],
        names: Sequence[str] | None = None,
    ):
        m = int(m)
        if m < 1:
            raise ValueError("candidate count must be positive")
        norm = []
        for count, ranking in groups:
            count = int(count)
            if count <= 0:
                raise ValueError(f"group multiplicity must be positive, got {count}")
            if not isinstance(ranking, Ranking):
                ranking = Ranking(ranking)
            if ranking.m != m:
                raise ValueError(f"ranking over {ranking.m} candidates in a profile with m={m}")
            norm.append((count, ranking))
        # Zero groups is allowed: realization of an empty majority graph
        # yields a 0-voter profile.
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "groups", tuple(norm))
        if names is not None:
            names = tuple(str(x) for x in names)
            if len(names) != m:
                raise ValueError("names must have one entry per candidate")
        object.__setattr__(self, "names", names)
        object.__setattr__(self, "_mults", None)
        object.__setattr__(self, "_ranks", None)

    def __setattr__(self, name, value):
        raise AttributeError("Profile is immutable")

    @classmethod
    def from_rankings(cls, rankings: Iterable[Ranking | Sequence[int]], m: int | None = None) -> "Profile":
        rankings = [r if isinstance(r, Ranking) else Ranking(r) for r in rankings]
        if m is None:
            m = rankings[0].m
        return cls(m, [(1, r) for r in rankings])

    @property
    def n(self) -> int:
        """Total voter count (sum of multiplicities)."""
        return sum(c for c, _ in self.groups)

    def arrays(self) -> tuple[np.ndarray, np.ndarray]:
        """Kernel view: (multiplicities ``int64[g]``, orders ``int64[g, m]``)."""
        if self._mults is None:
            mults = np.array([c for c, _ in self.groups], dtype=np.int64)
            ranks = np.array(
                [r.order for _, r in self.groups], dtype=np.int64
            ).reshape(len(self.groups), self.m)
            object.__setattr__(self, "_mults", mults)
            object.__setattr__(self, "_ranks", ranks)
        return self._mults, self._ranks

    def canonicalize(self) -> "Profile":
        """Merge duplicate rankings and sort groups lexicographically."""
        merged: dict[tuple, int] = {}
        for count, r in self.groups:
            merged[r.order] = merged.get(r.order, 0) + count
        groups = [(merged[o], Ranking(o)) for o in sorted(merged)]
        return Profile(self.m, groups, self.names)

    def reverse(self) -> "Profile":
        return Profile(self.m, [(c, r.reverse()) for c, r in self.groups], self.names)

    def restrict(self, keep: Iterable[int]) -> tuple["Profile", dict[int, int]]:
        """Profile over ``keep`` (densely re-indexed) plus the old->new map."""
        keep = set(keep)
        remap = restriction_map(self.m, keep)
        groups = []
        for count, r in self.groups:
            groups.append((count, Ranking(remap[c] for c in r.order if c in keep)))
        names = None
        if self.names is not None:
            names = [self.names[c] for c in sorted(keep)]
        return Profile(len(keep), groups, names), remap

    def __add__(self, other: "Profile") -> "Profile":
        if not isinstance(other, Profile):
            return NotImplemented
        if other.m != self.m:
            raise ValueError("profiles over different candidate counts")
        return Profile(self.m, self.groups + other.groups, self.names)

    def __eq__(self, other):
        return (
            isinstance(other, Profile)
            and self.m == other.m
            and self.groups == other.groups
        )

    def __hash__(self):
        return hash((self.m, self.groups))

    def __repr__(self):
        body = ", ".join(f"{c}x{list(r.order)}" for c, r in self.groups)
        return f"Profile(m={self.m}, n={self.n}: {body})"


# ---------------------------------------------------------------------------
# Distances
# ---------------------------------------------------------------------------


def swap_distance(r1: Ranking, r2: Ranking) -> int:
    """Number of candidate pairs ordered oppositely by the two rankings."""
    if r1.m != r2.m:
        raise ValueError(f"rankings over different sizes: {r1.m} vs {r2.m}")
    from ._backend import kernels

    a = np.asarray(r1.order, dtype=np.int64)
    b = np.asarray(r2.order, dtype=np.int64)
    return int(kernels.kendall_tau(a, b))


def normalized_swap_distance(r1: Ranking, r2: Ranking) -> Fraction:
    """Swap distance divided by its maximum ``m*(m-1)/2``."""
    if r1.m < 2:
        raise ValueError("normalized swap distance requires m >= 2")
    return Fraction(swap_distance(r1, r2), r1.m * (r1.m - 1) // 2)


def reverse_ranking(r: Ranking) -> Ranking:
    return r.reverse()


def reverse_profile(p: Profile) -> Profile:
    return p.reverse()


# ---------------------------------------------------------------------------
# Scoring systems
# ---------------------------------------------------------------------------


def _plurality_vector(m: int) -> tuple[Fraction, ...]:
    return (Fraction(1),) + (Fraction(0),) * (m - 1)


def _veto_vector(m: int) -> tuple[Fraction, ...]:
    if m == 1:
        return (Fraction(-1),)
    return (Fraction(0),) * (m - 1) + (Fraction(-1),)


def _borda_vector(m: int) -> tuple[Fraction, ...]:
    return tuple(Fraction(m - i) for i in range(m))


def _half_vector(m: int) -> tuple[Fraction, ...]:
    ones = m // 2
    return (Fraction(1),) * ones + (Fraction(0),) * (m - ones)


class ScoringSystem:
    """A family of scoring vectors, one per candidate count.

    Built-ins: Plurality ``(1,0,...,0)``, Veto ``(0,...,0,-1)``, Borda
    ``(m,...,1)``, and Half (one point for each of the first ``floor(m/2)``
    positions).  Custom systems supply explicit vectors per ``m`` and/or a
    generator callable.
    """

    __slots__ = ("kind", "_vectors", "_generator")

    def __init__(
        self,
        kind: str,
        vectors: dict[int, Sequence] | None = None,
        generator: Callable[[int], Sequence] | None = None,
    ):
        object.__setattr__(self, "kind", kind)
        frozen = {}
        if vectors:
            for m, vec in vectors.items():
                vec = tuple(Fraction(x) for x in vec)
                if len(vec) != m:
                    raise ValueError(f"vector for m={m} has length {len(vec)}")
                frozen[int(m)] = vec
        object.__setattr__(self, "_vectors", frozen)
        object.__setattr__(self, "_generator", generator)

    def __setattr__(self, name, value):
        raise AttributeError("ScoringSystem is immutable")

    @classmethod
    def custom(cls, vectors: dict[int, Sequence] | None = None, generator=None, name="custom") -> "ScoringSystem":
        return cls(name, vectors=vectors, generator=generator)

    def vector(self, m: int) -> tuple[Fraction, ...]:
        """Exact scoring vector for ``m`` candidates."""
        if m < 1:
            raise ValueError("m must be positive")
        if m in self._vectors:
            return self._vectors[m]
        if self._generator is not None:
            vec = tuple(Fraction(x) for x in self._generator(m))
            if len(vec) != m:
                raise ValueError(f"generated vector for m={m} has length {len(vec)}")
            return vec
        raise ValueError(f"scoring system {self.kind!r} defines no vector for m={m}")

    def int_vector(self, m: int) -> tuple[int, ...]:
        """Vector scaled by the denominators' lcm: integer, order-equivalent."""
        vec = self.vector(m)
        scale = math.lcm(*(f.denominator for f in vec)) if vec else 1
        return tuple(int(f * scale) for f in vec)

    def vector_table(self, m: int) -> np.ndarray:
        """``int64[m, m]`` kernel table; row ``k-1`` holds the vector for k candidates."""
        table = np.zeros((m, m), dtype=np.int64)
        for k in range(1, m + 1):
            table[k - 1, :k] = self.int_vector(k)
        return table

    def reversed(self) -> "ScoringSystem":
        """The system with each vector reversed and negated."""
        base = self

        def gen(m: int):
            vec = base.vector(m)
            return tuple(-x for x in reversed(vec))

        return ScoringSystem(_REVERSED_NAMES.get(self.kind, f"{self.kind}*"), generator=gen)

    def __eq__(self, other):
        return isinstance(other, ScoringSystem) and self.kind == other.kind and self.kind != "custom"

    def __hash__(self):
        return hash(self.kind)

    def __repr__(self):
        return f"ScoringSystem({self.kind})"


PLURALITY = ScoringSystem("plurality", generator=_plurality_vector)
VETO = ScoringSystem("veto", generator=_veto_vector)
BORDA = ScoringSystem("borda", generator=_borda_vector)
HALF = ScoringSystem("half", generator=_half_vector)

_REVERSED_NAMES = {"plurality": "veto", "veto": "plurality"}

BUILTIN_SYSTEMS = {
    "plurality": PLURALITY,
    "veto": VETO,
    "borda": BORDA,
    "half": HALF,
}


def scoring_vector(system: ScoringSystem, m: int) -> tuple[Fraction, ...]:
    return system.vector(m)


def reversed_system(system: ScoringSystem) -> ScoringSystem:
    return system.reversed()


def scores(profile: Profile, system: ScoringSystem) -> tuple[Fraction, ...]:
    """Exact per-candidate scores: each voter awards its r-th choice vector[r]."""
    vec = system.vector(profile.m)
    out = [Fraction(0)] * profile.m
    for count, ranking in profile.groups:
        for r, c in enumerate(ranking.order):
            out[c] += count * vec[r]
    return tuple(out)


def winners(profile: Profile, system: ScoringSystem) -> frozenset[int]:
    """Candidates of maximum score."""
    sc = scores(profile, system)
    top = max(sc)
    return frozenset(c for c, s in enumerate(sc) if s == top)


def losers(profile: Profile, system: ScoringSystem) -> frozenset[int]:
    """Candidates of minimum score."""
    sc = scores(profile, system)
    bot = min(sc)
    return frozenset(c for c, s in enumerate(sc) if s == bot)


# ---------------------------------------------------------------------------
# Profile file format
# ---------------------------------------------------------------------------
#
#   # optional comments
#   m g
#   names: n_0 n_1 ... n_{m-1}     (optional, directly after the header)
#   count: i_1 i_2 ... i_m          (g such lines, 0-based, left = top)


def parse_profile(text: str) -> Profile:
    """Parse the profile file format; raises ProfileParseError with line numbers."""
    header = None
    names = None
    groups = []
    expected_groups = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if header is None:
            parts = line.split()
            if len(parts) != 2:
                raise ProfileParseError("header must be 'm g'", lineno)
            try:
                m, expected_groups = int(parts[0]), int(parts[1])
            except ValueError:
                raise ProfileParseError("header must contain two integers", lineno) from None
            if m < 1 or expected_groups < 0:
                raise ProfileParseError("m must be positive and g non-negative", lineno)
            header = (m, expected_groups)
            continue
        m, _ = header
        if line.startswith("names:"):
            if groups:
                raise ProfileParseError("names line must come before the groups", lineno)
            names = line[len("names:"):].split()
            if len(names) != m:
                raise ProfileParseError(f"expected {m} names, got {len(names)}", lineno)
            continue
        if ":" not in line:
            raise ProfileParseError("expected 'count: i_1 ... i_m'", lineno)
        count_part, _, rank_part = line.partition(":")
        try:
            count = int(count_part)
        except ValueError:
            raise ProfileParseError(f"bad multiplicity {count_part.strip()!r}", lineno) from None
        if count <= 0:
            raise ProfileParseError(f"multiplicity must be positive, got {count}", lineno)
        try:
            order = [int(x) for x in rank_part.split()]
        except ValueError:
            raise ProfileParseError("ranking entries must be integers", lineno) from None
        if len(order) != m:
            raise ProfileParseError(f"expected {m} candidates, got {len(order)}", lineno)
        if sorted(order) != list(range(m)):
            raise ProfileParseError(f"not a permutation of 0..{m - 1}", lineno)
        groups.append((count, Ranking(order)))
    if header is None:
        raise ProfileParseError("empty profile file")
    if len(groups) != header[1]:
        raise ProfileParseError(f"header announced {header[1]} groups, found {len(groups)}")
    return Profile(header[0], groups, names)


def serialize_profile(profile: Profile, comment: str | None = None) -> str:
    """Canonical text form: duplicates merged, groups sorted lexicographically."""
    prof = profile.canonicalize()
    lines = []
    if comment:
        for c in comment.splitlines():
            lines.append(f"# {c}")
    lines.append(f"{prof.m} {len(prof.groups)}")
    if prof.names is not None:
        lines.append("names: " + " ".join(prof.names))
    for count, r in prof.groups:
        lines.append(f"{count}: " + " ".join(str(c) for c in r.order))
    return "\n".join(lines) + "\n"
