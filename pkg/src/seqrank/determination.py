"""Position-k / Top-k / Winner Determination for sequential rules.

Decides whether a designated candidate can reach a given position in
some selected ranking, over every way of breaking round ties.  Four
procedures are provided and cross-validated against each other:

* :func:`subset_dp_decide` -- dynamic programming over elimination sets
  (candidate subsets occupying the first or last positions), the
  exponential-in-m workhorse;
* :func:`stv_decide` -- the Sequential-Plurality-Loser shortcut that
  first peels off candidates with zero first-place count;
* :func:`coombs_bottomlist_decide` -- the Sequential-Veto-Loser dynamic
  program over per-voter bottom lists (exponential in the voter count);
* :func:`brute_force_decide` -- memoized search over reachable
  remaining-candidate sets, the oracle the others are tested against.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from ._backend import kernels
from .core import PLURALITY, Profile, Ranking, scores
from .errors import ResourceLimitError
from .rules import KEMENY, SCORE, SEQ_LOSER, SEQ_WINNER, Rule

__all__ = [
    "DeterminationQuery",
    "subset_dp_decide",
    "transfer_query",
    "stv_decide",
    "coombs_bottomlist_decide",
    "brute_force_decide",
    "achievable_positions",
    "decide",
    "decide_with_witness",
    "margin_loser_decide",
]

EXACT = "exact"
TOPK = "topk"

DEFAULT_DP_BOUND = 22
DEFAULT_BRUTE_BOUND = 10
DEFAULT_MAX_STATES = 2_000_000
DEFAULT_VOTER_BOUND = 4


@dataclass(frozen=True)
class DeterminationQuery:
    """Can candidate ``candidate`` reach position ``position`` under ``rule``?"""

    rule: Rule
    candidate: int
    position: int
    mode: str = EXACT

    def __post_init__(self):
        if self.rule.family not in (SEQ_WINNER, SEQ_LOSER):
            raise ValueError("determination queries cover sequential rules only")
        if self.mode not in (EXACT, TOPK):
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.position < 1:
            raise ValueError("position must be >= 1")
        if self.candidate < 0:
            raise ValueError("candidate must be >= 0")

    def validate(self, profile: Profile):
        if self.candidate >= profile.m:
            raise ValueError(f"candidate {self.candidate} out of range for m={profile.m}")
        if self.position > profile.m:
            raise ValueError(f"position {self.position} out of range for m={profile.m}")


def _positions(query: DeterminationQuery) -> range:
    if query.mode == TOPK:
        return range(1, query.position + 1)
    return range(query.position, query.position + 1)


# ---------------------------------------------------------------------------
# Subset DP over elimination sets
# ---------------------------------------------------------------------------


def subset_dp_decide(profile: Profile, query: DeterminationQuery, bound: int = DEFAULT_DP_BOUND) -> bool:
    """Elimination-set dynamic program, exponential in the candidate count.

    For the winner family, a set is an elimination set when its members
    can occupy the first |set| positions of a selected ranking; the table
    only needs subsets of size position-1.  The loser family runs on the
    dual table over bottom sets (subsets of size m-position).
    """
    query.validate(profile)
    m = profile.m
    if m > bound:
        raise ResourceLimitError(f"subset DP limited to m <= {bound}, got m={m}")
    mults, ranks = profile.arrays()
    vec_table = query.rule.system.vector_table(m)
    want_winner = query.rule.family == SEQ_WINNER
    sizes = [(k - 1) if want_winner else (m - k) for k in _positions(query)]
    table = kernels.elimination_table(mults, ranks, vec_table, int(want_winner), max(sizes))
    full = (1 << m) - 1
    dbit = 1 << query.candidate
    want_sizes = set(sizes)
    for mask in range(1 << m):
        if mask & dbit or not table[mask]:
            continue
        if bin(mask).count("1") not in want_sizes:
            continue
        win, lose = kernels.restricted_min_max(mults, ranks, vec_table, full ^ mask)
        ext = win if want_winner else lose
        if ext & dbit:
            return True
    return False


def transfer_query(query: DeterminationQuery, profile: Profile) -> tuple[DeterminationQuery, Profile]:
    """The reversal-dual query: same answer on the reversed profile.

    A winner-family query at position k becomes a loser-family query
    under the reversed scoring system at position m-k+1, and vice versa;
    applying the transfer twice returns the original query.  Top-k mode
    has no positional dual, so only exact-mode queries transfer.
    """
    if query.mode != EXACT:
        raise ValueError("only exact-position queries have a reversal dual")
    m = profile.m
    family = SEQ_LOSER if query.rule.family == SEQ_WINNER else SEQ_WINNER
    rule = Rule(family, query.rule.system.reversed())
    twin = replace(query, rule=rule, position=m - query.position + 1)
    return twin, profile.reverse()


# ---------------------------------------------------------------------------
# STV: peel candidates that are never ranked first
# ---------------------------------------------------------------------------


def stv_decide(profile: Profile, query: DeterminationQuery, bound: int = DEFAULT_DP_BOUND) -> bool:
    """Sequential-Plurality-Loser determination, exponential only in n.

    Candidates with zero first-place count are all tied at the minimum
    score and stay there, so they are eliminated (in any interleaving)
    during the first rounds without affecting other scores.  They fill
    the bottom positions; the query is then answered on the residual
    profile, which has at most n candidates.
    """
    if query.rule.family != SEQ_LOSER or query.rule.system.kind != "plurality":
        raise ValueError("stv_decide applies to the plurality loser rule only")
    query.validate(profile)
    m = profile.m
    sc = scores(profile, PLURALITY)
    zero = frozenset(c for c in range(m) if sc[c] == 0)
    d = query.candidate
    if not zero:
        return subset_dp_decide(profile, query, bound=bound)
    if d in zero:
        # d occupies one of the bottom |zero| positions, any of them.
        lowest = m - len(zero) + 1
        return any(k >= lowest for k in _positions(query))
    keep = [c for c in range(m) if c not in zero]
    reduced, remap = profile.restrict(keep)
    top = m - len(zero)
    for k in _positions(query):
        if k > top:
            continue
        sub = DeterminationQuery(query.rule, remap[d], k)
        if subset_dp_decide(reduced, sub, bound=bound):
            return True
    return False


# ---------------------------------------------------------------------------
# Coombs: bottom-list dynamic program
# ---------------------------------------------------------------------------


def _bottoms(profile: Profile, alive: frozenset[int]) -> tuple[int, ...]:
    out = []
    for _, r in profile.groups:
        last = None
        for c in r.order:
            if c in alive:
                last = c
        out.append(last)
    return tuple(out)


def _deleted_by(profile: Profile, bottoms: tuple[int, ...]) -> frozenset[int]:
    """Candidates ranked below some voter's bottom in the original profile."""
    dead = set()
    for (_, r), x in zip(profile.groups, bottoms):
        cut = r.position(x)
        for c in range(profile.m):
            if r.position(c) > cut:
                dead.add(c)
    return frozenset(dead)


def coombs_bottomlist_decide(
    profile: Profile, query: DeterminationQuery, voter_bound: int = DEFAULT_VOTER_BOUND
) -> bool:
    """Sequential-Veto-Loser determination via bottom-list states.

    The bottom list (each voter's currently last-ranked candidate) fully
    captures an execution state: the eliminated set is recoverable as the
    candidates ranked below some voter's bottom.  States are expanded
    forward from the initial bottom list, each transition eliminating one
    candidate with the maximum bottom count of its state's profile.
    """
    if query.rule.family != SEQ_LOSER or query.rule.system.kind != "veto":
        raise ValueError("coombs_bottomlist_decide applies to the veto loser rule only")
    query.validate(profile)
    if profile.n > voter_bound:
        raise ResourceLimitError(
            f"bottom-list DP limited to n <= {voter_bound} voters, got n={profile.n}"
        )
    m = profile.m
    d = query.candidate
    targets = {k for k in _positions(query) if k <= m}
    start = _bottoms(profile, frozenset(range(m)))
    seen = {start}
    stack = [start]
    while stack:
        state = stack.pop()
        dead = _deleted_by(profile, state)
        if state != _bottoms(profile, frozenset(range(m)) - dead):
            continue  # not a valid bottom list; unreachable by construction
        alive = frozenset(range(m)) - dead
        counts = {c: 0 for c in alive}
        for (mult, _), x in zip(profile.groups, state):
            counts[x] += mult
        top = max(counts.values())
        losers = [c for c, v in counts.items() if v == top]
        # Eliminating d from a state with |alive| candidates puts it at
        # position |alive| of the output ranking.
        if d in losers and len(alive) in targets:
            return True
        for c in losers:
            rest = alive - {c}
            if not rest or d not in rest:
                continue
            nxt = _bottoms(profile, rest)
            if nxt not in seen:
                seen.add(nxt)
                stack.append(nxt)
    return False


# ---------------------------------------------------------------------------
# Reachable-state search (the oracle)
# ---------------------------------------------------------------------------


def _search_rounds(profile: Profile, rule: Rule, max_states: int) -> dict[int, int]:
    """For every candidate, the bitmask of rounds it can be removed in."""
    mults, ranks = profile.arrays()
    vec_table = rule.system.vector_table(profile.m)
    want_winner = rule.family == SEQ_WINNER
    m = profile.m
    full = (1 << m) - 1
    memo: dict[int, dict[int, int]] = {}

    def solve(alive: int) -> dict[int, int]:
        got = memo.get(alive)
        if got is not None:
            return got
        if len(memo) >= max_states:
            raise ResourceLimitError(f"reachable-state search exceeded {max_states} states")
        rnd = m - bin(alive).count("1") + 1
        win, lose = kernels.restricted_min_max(mults, ranks, vec_table, alive)
        ext = win if want_winner else lose
        out: dict[int, int] = {}
        while ext:
            bit = ext & (-ext)
            ext ^= bit
            c = bit.bit_length() - 1
            out[c] = out.get(c, 0) | (1 << rnd)
            rest = alive ^ bit
            if rest:
                for cand, rmask in solve(rest).items():
                    out[cand] = out.get(cand, 0) | rmask
        memo[alive] = out
        return out

    return solve(full)


def achievable_positions(
    profile: Profile,
    rule: Rule,
    candidate: int,
    bound: int = DEFAULT_BRUTE_BOUND,
    max_states: int = DEFAULT_MAX_STATES,
) -> frozenset[int]:
    """Every position the candidate reaches in some selected ranking."""
    if rule.family == SEQ_LOSER or rule.family == SEQ_WINNER:
        if profile.m > bound:
            raise ResourceLimitError(
                f"achievable-position search limited to m <= {bound}, got m={profile.m}"
            )
        rounds = _search_rounds(profile, rule, max_states).get(candidate, 0)
        m = profile.m
        out = set()
        for rnd in range(1, m + 1):
            if rounds >> rnd & 1:
                out.add(rnd if rule.family == SEQ_WINNER else m - rnd + 1)
        return frozenset(out)
    if rule.family == SCORE:
        sc = scores(profile, rule.system)
        above = sum(1 for s in sc if s > sc[candidate])
        below = sum(1 for s in sc if s < sc[candidate])
        return frozenset(range(above + 1, profile.m - below + 1))
    if rule.family == KEMENY:
        from .kemeny import kemeny_rankings

        sel, _ = kemeny_rankings(profile)
        return frozenset(r.position(candidate) for r in sel)
    raise ValueError(f"unsupported rule {rule}")


def brute_force_decide(
    profile: Profile,
    query: DeterminationQuery,
    bound: int = DEFAULT_BRUTE_BOUND,
    max_states: int = DEFAULT_MAX_STATES,
) -> bool:
    """Exhaustive recursion over every tied choice, memoized on remaining sets."""
    query.validate(profile)
    return decide_with_witness(profile, query, bound=bound, max_states=max_states)[0]


def decide_with_witness(
    profile: Profile,
    query: DeterminationQuery,
    bound: int | None = None,
    max_states: int = DEFAULT_MAX_STATES,
) -> tuple[bool, list[int] | None]:
    """Like :func:`brute_force_decide` but also returns an elimination order.

    The witness lists the removed candidate of every round; replaying it
    is valid for the rule and puts the designated candidate at a queried
    position.  Search is pruned at the target round, memoized on
    remaining-candidate sets.
    """
    query.validate(profile)
    m = profile.m
    if bound is not None and m > bound:
        raise ResourceLimitError(f"witness search limited to m <= {bound}, got m={m}")
    mults, ranks = profile.arrays()
    vec_table = query.rule.system.vector_table(m)
    want_winner = query.rule.family == SEQ_WINNER
    d = query.candidate
    dbit = 1 << d
    full = (1 << m) - 1
    if want_winner:
        target_rounds = {k for k in _positions(query)}
    else:
        target_rounds = {m - k + 1 for k in _positions(query)}
    last_target = max(target_rounds)
    failed: set[int] = set()
    prefix: list[int] = []

    def extremes(alive: int) -> int:
        win, lose = kernels.restricted_min_max(mults, ranks, vec_table, alive)
        return win if want_winner else lose

    def dfs(alive: int) -> bool:
        rnd = m - bin(alive).count("1") + 1
        if rnd > last_target or alive in failed:
            return False
        if len(failed) >= max_states:
            raise ResourceLimitError(f"witness search exceeded {max_states} states")
        ext = extremes(alive)
        if rnd in target_rounds and ext & dbit:
            prefix.append(d)
            return True
        ext &= ~dbit  # removing d in a non-target round can never help
        while ext:
            bit = ext & (-ext)
            ext ^= bit
            c = bit.bit_length() - 1
            prefix.append(c)
            if dfs(alive ^ bit):
                return True
            prefix.pop()
        failed.add(alive)
        return False

    if not dfs(full):
        return False, None
    # Complete the witness greedily past the decided prefix.
    alive = full
    for c in prefix:
        alive ^= 1 << c
    order = list(prefix)
    while alive:
        ext = extremes(alive)
        bit = ext & (-ext)
        order.append(bit.bit_length() - 1)
        alive ^= bit
    return True, order


# ---------------------------------------------------------------------------
# Margin-driven search for the Borda loser rule
# ---------------------------------------------------------------------------


def margin_loser_decide(
    graph,
    query: DeterminationQuery,
    max_states: int = DEFAULT_MAX_STATES,
) -> bool:
    """Sequential-Borda-Loser determination on a weighted majority graph.

    Borda scores of a profile are an affine transform of the graph's row
    sums, so eliminations depend on the margins alone.  When all margins
    among the remaining candidates are zero, every candidate stays tied
    forever and any elimination order is realizable; this closes the
    endgame without branching through it.
    """
    if query.rule.family != SEQ_LOSER or query.rule.system.kind != "borda":
        raise ValueError("margin_loser_decide applies to the Borda loser rule only")
    w = np.asarray(graph.weights if hasattr(graph, "weights") else graph, dtype=np.int64)
    m = w.shape[0]
    if query.candidate >= m or query.position > m:
        raise ValueError("query out of range for the graph")
    d = query.candidate
    dbit = 1 << d
    full = (1 << m) - 1
    target_rounds = {m - k + 1 for k in _positions(query)}
    last_target = max(target_rounds)
    failed: set[int] = set()

    def members(mask: int) -> list[int]:
        out = []
        while mask:
            bit = mask & (-mask)
            out.append(bit.bit_length() - 1)
            mask ^= bit
        return out

    def dfs(alive: int) -> bool:
        rnd = m - bin(alive).count("1") + 1
        if rnd > last_target or alive in failed:
            return False
        if len(failed) >= max_states:
            raise ResourceLimitError(f"margin search exceeded {max_states} states")
        cur = members(alive)
        sub = w[np.ix_(cur, cur)]
        if not sub.any():
            # Permanent full tie: d can be removed in any remaining round.
            return bool(alive & dbit) and any(r >= rnd for r in target_rounds)
        row = sub.sum(axis=1)
        low = row.min()
        losers = [cur[i] for i in range(len(cur)) if row[i] == low]
        if rnd in target_rounds and d in losers:
            return True
        for c in losers:
            if c == d:
                continue
            if dfs(alive ^ (1 << c)):
                return True
        failed.add(alive)
        return False

    return dfs(full)


# ---------------------------------------------------------------------------
# Dispatch
# ---------------------------------------------------------------------------


def decide(
    profile: Profile,
    query: DeterminationQuery,
    algo: str = "auto",
    bound: int = DEFAULT_DP_BOUND,
    max_states: int = DEFAULT_MAX_STATES,
) -> bool:
    """Answer a determination query with the requested algorithm.

    ``auto`` prefers the STV shortcut when it applies, then the subset DP
    within its bound, then the reachable-state search.
    """
    query.validate(profile)
    if algo == "dp":
        return subset_dp_decide(profile, query, bound=bound)
    if algo == "stv":
        return stv_decide(profile, query, bound=bound)
    if algo == "bottomlist":
        return coombs_bottomlist_decide(profile, query)
    if algo == "brute":
        return brute_force_decide(profile, query, bound=profile.m, max_states=max_states)
    if algo != "auto":
        raise ValueError(f"unknown algorithm {algo!r}")
    if query.rule.family == SEQ_LOSER and query.rule.system.kind == "plurality":
        sc = scores(profile, PLURALITY)
        if profile.m - sum(1 for s in sc if s == 0) <= bound:
            return stv_decide(profile, query, bound=bound)
    if profile.m <= bound:
        return subset_dp_decide(profile, query, bound=bound)
    return brute_force_decide(profile, query, bound=profile.m, max_states=max_states)
