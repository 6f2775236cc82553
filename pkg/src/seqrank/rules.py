"""Score, Sequential-Winner, and Sequential-Loser rule execution.

Each rule can be run resolutely (with a tie-break order, producing an
:class:`ExecutionTrace`) or irresolutely (:func:`enumerate_selected`,
producing the full set of selected rankings over every way of breaking
round ties).

Tie-break convention: one shared priority order drives every rule; when
several candidates are tied, winner-style selection takes the tied
candidate earliest in the order, and loser-style elimination removes the
tied candidate latest in the order.  With this convention the reversal
duality between Sequential-Winner under a system and Sequential-Loser
under the reversed system holds resolutely as well, provided the
tie-break order is reversed along with the profile.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from pathlib import Path

from ._backend import kernels
from .core import (
    BUILTIN_SYSTEMS,
    Profile,
    Ranking,
    ScoringSystem,
    scores,
)
from .errors import ResourceLimitError

__all__ = [
    "Rule",
    "RoundRecord",
    "ExecutionTrace",
    "run_score_rule",
    "run_seq_winner",
    "run_seq_loser",
    "run_rule",
    "enumerate_selected",
    "tie_round_count",
    "parse_rule",
]

SCORE = "score"
SEQ_WINNER = "seqwin"
SEQ_LOSER = "seqlose"
KEMENY = "kemeny"

_ALIASES = {
    "stv": (SEQ_LOSER, "plurality"),
    "coombs": (SEQ_LOSER, "veto"),
    "baldwin": (SEQ_LOSER, "borda"),
}

DEFAULT_ENUM_BOUND = 10


@dataclass(frozen=True)
class Rule:
    """A rule identifier: family plus scoring system (absent for Kemeny)."""

    family: str
    system: ScoringSystem | None = None

    def __post_init__(self):
        if self.family not in (SCORE, SEQ_WINNER, SEQ_LOSER, KEMENY):
            raise ValueError(f"unknown rule family {self.family!r}")
        if (self.system is None) != (self.family == KEMENY):
            raise ValueError("exactly the Kemeny rule carries no scoring system")

    def __str__(self):
        if self.family == KEMENY:
            return KEMENY
        return f"{self.family}:{self.system.kind}"

    @property
    def is_sequential(self) -> bool:
        return self.family in (SEQ_WINNER, SEQ_LOSER)


def parse_rule(text: str) -> Rule:
    """Parse rule identifiers like ``seqlose:plurality``, ``stv``, ``kemeny``.

    ``score:custom:<path>`` loads a custom scoring system from a text file
    with one ``m: s_1 ... s_m`` line per supported candidate count.
    """
    text = text.strip().lower()
    if text == KEMENY:
        return Rule(KEMENY)
    if text in _ALIASES:
        family, system = _ALIASES[text]
        return Rule(family, BUILTIN_SYSTEMS[system])
    parts = text.split(":", 2)
    if len(parts) >= 2 and parts[0] in (SCORE, SEQ_WINNER, SEQ_LOSER):
        family = parts[0]
        if parts[1] == "custom":
            if len(parts) != 3:
                raise ValueError("custom system needs a path: 'score:custom:<path>'")
            return Rule(family, load_custom_system(parts[2]))
        if parts[1] in BUILTIN_SYSTEMS:
            return Rule(family, BUILTIN_SYSTEMS[parts[1]])
        raise ValueError(f"unknown scoring system {parts[1]!r}")
    raise ValueError(f"unknown rule identifier {text!r}")


def load_custom_system(path: str | Path) -> ScoringSystem:
    """Read 'm: s_1 ... s_m' lines (integers or fractions) into a system."""
    from fractions import Fraction

    vectors = {}
    for raw in Path(path).read_text().splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        head, _, rest = line.partition(":")
        m = int(head)
        vectors[m] = [Fraction(x) for x in rest.split()]
    if not vectors:
        raise ValueError(f"no scoring vectors found in {path}")
    return ScoringSystem.custom(vectors=vectors)


@dataclass(frozen=True)
class RoundRecord:
    """One execution round: who was removed and whether a tie occurred."""

    round: int
    eliminated: int
    tie_occurred: bool
    tied_size: int


@dataclass(frozen=True)
class ExecutionTrace:
    rounds: tuple[RoundRecord, ...]
    output: Ranking


def _trace(profile: Profile, system: ScoringSystem, tie: Ranking, mode: int) -> ExecutionTrace:
    if tie.m != profile.m:
        raise ValueError("tie-break order must cover all candidates")
    mults, ranks = profile.arrays()
    vec_table = system.vector_table(profile.m)
    import numpy as np

    tie_pos = np.array([tie.position(c) for c in range(profile.m)], dtype=np.int64)
    elim, tie_sizes = kernels.run_trace(mults, ranks, vec_table, tie_pos, mode)
    rounds = tuple(
        RoundRecord(r + 1, int(elim[r]), int(tie_sizes[r]) >= 2, int(tie_sizes[r]))
        for r in range(profile.m)
    )
    if mode == kernels.MODE_SEQ_LOSER:
        output = Ranking(int(c) for c in elim[::-1])
    else:
        output = Ranking(int(c) for c in elim)
    return ExecutionTrace(rounds, output)


def run_score_rule(profile: Profile, system: ScoringSystem, tie: Ranking) -> ExecutionTrace:
    """Rank by initial scores, never recomputed; ties resolved by ``tie``.

    Round r places the remaining candidate of maximum initial score at
    position r; a tie is recorded when two or more remaining candidates
    share that maximum.
    """
    return _trace(profile, system, tie, kernels.MODE_SCORE_ONCE)


def run_seq_winner(profile: Profile, system: ScoringSystem, tie: Ranking) -> ExecutionTrace:
    """Repeatedly delete the tie-preferred score-winner, filling positions 1, 2, ..."""
    return _trace(profile, system, tie, kernels.MODE_SEQ_WINNER)


def run_seq_loser(profile: Profile, system: ScoringSystem, tie: Ranking) -> ExecutionTrace:
    """Repeatedly delete the tie-disfavoured score-loser, filling positions m, m-1, ..."""
    return _trace(profile, system, tie, kernels.MODE_SEQ_LOSER)


def run_rule(rule: Rule, profile: Profile, tie: Ranking) -> Ranking:
    """Resolute output ranking of any rule under the shared tie-break order."""
    if rule.family == SCORE:
        return run_score_rule(profile, rule.system, tie).output
    if rule.family == SEQ_WINNER:
        return run_seq_winner(profile, rule.system, tie).output
    if rule.family == SEQ_LOSER:
        return run_seq_loser(profile, rule.system, tie).output
    from .kemeny import kemeny_ranking_tiebroken

    return kemeny_ranking_tiebroken(profile, tie)


def tie_round_count(trace: ExecutionTrace) -> int:
    """Number of rounds in which at least two candidates were tied."""
    return sum(1 for r in trace.rounds if r.tie_occurred)


# ---------------------------------------------------------------------------
# Irresolute selected sets
# ---------------------------------------------------------------------------


def _score_selected(profile: Profile, system: ScoringSystem) -> frozenset[Ranking]:
    """All orderings consistent with the strict score comparisons."""
    sc = scores(profile, system)
    groups: dict = {}
    for c, s in enumerate(sc):
        groups.setdefault(s, []).append(c)
    tiers = [tuple(groups[s]) for s in sorted(groups, reverse=True)]
    out = []
    for perms in itertools.product(*(itertools.permutations(t) for t in tiers)):
        order = [c for block in perms for c in block]
        out.append(Ranking(order))
    return frozenset(out)


def _sequential_selected(profile: Profile, system: ScoringSystem, want_winner: bool) -> frozenset[Ranking]:
    mults, ranks = profile.arrays()
    vec_table = system.vector_table(profile.m)
    m = profile.m
    full = (1 << m) - 1
    memo: dict[int, tuple[tuple[int, ...], ...]] = {0: ((),)}

    def solve(alive: int) -> tuple[tuple[int, ...], ...]:
        got = memo.get(alive)
        if got is not None:
            return got
        win, lose = kernels.restricted_min_max(mults, ranks, vec_table, alive)
        ext = win if want_winner else lose
        acc = set()
        while ext:
            bit = ext & (-ext)
            c = bit.bit_length() - 1
            for rest in solve(alive ^ bit):
                if want_winner:
                    acc.add((c,) + rest)
                else:
                    acc.add(rest + (c,))
            ext ^= bit
        result = tuple(acc)
        memo[alive] = result
        return result

    return frozenset(Ranking(o) for o in solve(full))


def enumerate_selected(rule: Rule, profile: Profile, bound: int = DEFAULT_ENUM_BOUND) -> frozenset[Ranking]:
    """The exact selected set f(P), branching over every tied choice."""
    if profile.m > bound:
        raise ResourceLimitError(
            f"selected-set enumeration limited to m <= {bound}, got m={profile.m}"
        )
    if rule.family == SCORE:
        return _score_selected(profile, rule.system)
    if rule.family == SEQ_WINNER:
        return _sequential_selected(profile, rule.system, True)
    if rule.family == SEQ_LOSER:
        return _sequential_selected(profile, rule.system, False)
    from .kemeny import kemeny_rankings

    return frozenset(kemeny_rankings(profile)[0])
