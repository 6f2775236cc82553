"""Executable axiom checkers and randomized counterexample search.

Axioms are checked in set form against the full selected sets of the
irresolute rules, not against one tie-broken output.  A checker returns
``(holds, detail)``; the search samples impartial-culture witness data
and returns the first violating witness, which always re-verifies under
the checker.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any

import numpy as np

from .core import Profile, Ranking
from .majority import weighted_majority_graph
from .rules import Rule, enumerate_selected
from .sampling import generator, sample_impartial_culture_rng

__all__ = [
    "AXIOMS",
    "ARITY",
    "INDEPENDENCE_TOP",
    "INDEPENDENCE_BOTTOM",
    "REINFORCEMENT",
    "REINFORCEMENT_INCLUSION",
    "REINFORCEMENT_TOP",
    "REINFORCEMENT_BOTTOM",
    "CONDORCET_WINNER_TOP",
    "COPY_MAJORITY",
    "INDEPENDENCE_CLONES_TOP",
    "AxiomResult",
    "check_axiom_instance",
    "search_counterexample",
    "condorcet_winner",
    "majority_ranking",
    "clone_profile",
    "contract_clones",
]

INDEPENDENCE_TOP = "independence-top"
INDEPENDENCE_BOTTOM = "independence-bottom"
REINFORCEMENT = "reinforcement"
REINFORCEMENT_INCLUSION = "reinforcement-inclusion"
REINFORCEMENT_TOP = "reinforcement-top"
REINFORCEMENT_BOTTOM = "reinforcement-bottom"
CONDORCET_WINNER_TOP = "condorcet-winner-top"
COPY_MAJORITY = "copy-majority"
INDEPENDENCE_CLONES_TOP = "independence-clones-top"

# ``reinforcement`` is the set-equality form f(P+P') = f(P) & f(P');
# ``reinforcement-inclusion`` is the weaker membership form (a ranking
# selected in both parts stays selected in the combination).  The two
# differ for the sequential families: combining profiles can create new
# score ties and hence extra selected rankings, so the equality form
# fails there while the inclusion form always holds.
AXIOMS = (
    INDEPENDENCE_TOP,
    INDEPENDENCE_BOTTOM,
    REINFORCEMENT,
    REINFORCEMENT_INCLUSION,
    REINFORCEMENT_TOP,
    REINFORCEMENT_BOTTOM,
    CONDORCET_WINNER_TOP,
    COPY_MAJORITY,
    INDEPENDENCE_CLONES_TOP,
)

# Witness arity: 1 = one profile, 2 = two profiles over the same
# candidates, "clones" = (profile, clone set).
ARITY = {
    INDEPENDENCE_TOP: 1,
    INDEPENDENCE_BOTTOM: 1,
    REINFORCEMENT: 2,
    REINFORCEMENT_INCLUSION: 2,
    REINFORCEMENT_TOP: 2,
    REINFORCEMENT_BOTTOM: 2,
    CONDORCET_WINNER_TOP: 1,
    COPY_MAJORITY: 1,
    INDEPENDENCE_CLONES_TOP: "clones",
}


@dataclass(frozen=True)
class AxiomResult:
    holds: bool
    detail: str | None = None

    def __bool__(self):
        return self.holds


def condorcet_winner(profile: Profile) -> int | None:
    """The candidate beating every other in pairwise majority, if any."""
    w = weighted_majority_graph(profile).weights
    for c in range(profile.m):
        if all(w[c, d] > 0 for d in range(profile.m) if d != c):
            return c
    return None


def majority_ranking(profile: Profile) -> Ranking | None:
    """A ranking cast by strictly more than half the voters, if any."""
    merged = profile.canonicalize()
    for count, r in merged.groups:
        if 2 * count > merged.n:
            return r
    return None


def clone_profile(profile: Profile, target: int, rng: np.random.Generator) -> tuple[Profile, frozenset[int]]:
    """Duplicate one candidate adjacently in every vote.

    The new candidate takes index m; its side of the target alternates
    randomly per vote, so the clone set {target, m} is consecutive in
    every ranking by construction.
    """
    m = profile.m
    clone = m
    groups = []
    for count, r in profile.groups:
        for _ in range(count):
            order = []
            before = bool(rng.integers(2))
            for c in r.order:
                if c == target:
                    order.extend([clone, target] if before else [target, clone])
                else:
                    order.append(c)
            groups.append((1, Ranking(order)))
    return Profile(m + 1, groups), frozenset({target, clone})


def _check_clone_set(profile: Profile, clones: frozenset[int]):
    for _, r in profile.groups:
        positions = sorted(r.position(c) for c in clones)
        if positions[-1] - positions[0] != len(clones) - 1:
            raise ValueError(f"{sorted(clones)} is not consecutive in every vote")


def contract_clones(profile: Profile, clones: frozenset[int]) -> tuple[Profile, dict[int, int], int]:
    """Replace a clone set by its lowest member; returns (profile, map, rep).

    The returned map sends surviving old indices to dense new ones; the
    representative keeps the clone set's slot in every vote.
    """
    if len(clones) < 1:
        raise ValueError("clone set must be non-empty")
    _check_clone_set(profile, clones)
    rep = min(clones)
    keep = sorted(set(range(profile.m)) - clones | {rep})
    remap = {c: i for i, c in enumerate(keep)}
    groups = []
    for count, r in profile.groups:
        order = [remap[c] for c in r.order if c == rep or c not in clones]
        # rep stands at the position of the highest-ranked clone
        first = min(r.position(c) for c in clones)
        without = [remap[c] for c in r.order if c not in clones]
        merged = without[: first - 1] + [remap[rep]] + without[first - 1:]
        groups.append((count, Ranking(merged)))
        del order
    return Profile(len(keep), groups), remap, remap[rep]


def _clone_image(r: Ranking, clones: frozenset[int], remap: dict[int, int], rep: int) -> Ranking:
    """Delete the clones, re-insert the representative at the first one."""
    first = min(r.position(c) for c in clones)
    without = [remap[c] for c in r.order if c not in clones]
    pos = sum(1 for c in r.order[: first - 1] if c not in clones)
    return Ranking(without[:pos] + [rep] + without[pos:])


def _tops(selected) -> frozenset[int]:
    return frozenset(r.candidate_at(1) for r in selected)


def _bottoms(selected) -> frozenset[int]:
    return frozenset(r.candidate_at(r.m) for r in selected)


def check_axiom_instance(axiom: str, rule: Rule, witness: Any, bound: int = 10) -> AxiomResult:
    """Exact check of one axiom instance via full selected sets."""
    if axiom in (INDEPENDENCE_TOP, INDEPENDENCE_BOTTOM):
        profile = witness
        sel = enumerate_selected(rule, profile, bound)
        at_top = axiom == INDEPENDENCE_TOP
        edge = _tops(sel) if at_top else _bottoms(sel)
        for a in sorted(edge):
            keep = [c for c in range(profile.m) if c != a]
            reduced, remap = profile.restrict(keep)
            left = enumerate_selected(rule, reduced, bound)
            if at_top:
                right = frozenset(
                    Ranking(remap[c] for c in r.order[1:]) for r in sel if r.candidate_at(1) == a
                )
            else:
                right = frozenset(
                    Ranking(remap[c] for c in r.order[:-1]) for r in sel if r.candidate_at(r.m) == a
                )
            if left != right:
                return AxiomResult(False, f"removing candidate {a} changes the rest")
        return AxiomResult(True)

    if axiom in (REINFORCEMENT, REINFORCEMENT_INCLUSION):
        p1, p2 = witness
        s1 = enumerate_selected(rule, p1, bound)
        s2 = enumerate_selected(rule, p2, bound)
        inter = s1 & s2
        if not inter:
            return AxiomResult(True)
        combined = enumerate_selected(rule, p1 + p2, bound)
        if axiom == REINFORCEMENT_INCLUSION:
            if not inter <= combined:
                return AxiomResult(False, "a commonly selected ranking vanished")
            return AxiomResult(True)
        if combined != inter:
            return AxiomResult(False, "combined selection differs from the intersection")
        return AxiomResult(True)

    if axiom in (REINFORCEMENT_TOP, REINFORCEMENT_BOTTOM):
        p1, p2 = witness
        pick = _tops if axiom == REINFORCEMENT_TOP else _bottoms
        s1 = pick(enumerate_selected(rule, p1, bound))
        s2 = pick(enumerate_selected(rule, p2, bound))
        inter = s1 & s2
        if not inter:
            return AxiomResult(True)
        combined = pick(enumerate_selected(rule, p1 + p2, bound))
        if combined != inter:
            return AxiomResult(False, "combined edge candidates differ from the intersection")
        return AxiomResult(True)

    if axiom == CONDORCET_WINNER_TOP:
        profile = witness
        cw = condorcet_winner(profile)
        if cw is None:
            return AxiomResult(True)
        tops = _tops(enumerate_selected(rule, profile, bound))
        if tops != {cw}:
            return AxiomResult(False, f"Condorcet winner {cw} not fixed at the top: {sorted(tops)}")
        return AxiomResult(True)

    if axiom == COPY_MAJORITY:
        profile = witness
        maj = majority_ranking(profile)
        if maj is None:
            return AxiomResult(True)
        sel = enumerate_selected(rule, profile, bound)
        if sel != {maj}:
            return AxiomResult(False, "majority ranking not copied")
        return AxiomResult(True)

    if axiom == INDEPENDENCE_CLONES_TOP:
        # Replacing the clone set by one candidate must leave the selected
        # set unchanged up to the top-replacement mapping (clones deleted,
        # the replacement inserted where the best clone stood).
        profile, clones = witness
        contracted, remap, rep = contract_clones(profile, clones)
        sel = enumerate_selected(rule, profile, bound)
        sel_contracted = enumerate_selected(rule, contracted, bound)
        image = frozenset(_clone_image(r, clones, remap, rep) for r in sel)
        if image != sel_contracted:
            return AxiomResult(False, "selected sets differ under top replacement")
        return AxiomResult(True)

    raise ValueError(f"unknown axiom {axiom!r}")


def search_counterexample(
    axiom: str,
    rule: Rule,
    m_max: int = 5,
    n_max: int = 7,
    budget: int = 100_000,
    seed: int = 0,
):
    """Sample impartial-culture witnesses; return the first violation or None.

    Sampling is sharded by iteration index (stream = index), so results
    are reproducible and independent of execution order.
    """
    if budget < 1:
        raise ValueError("budget must be >= 1")
    arity = ARITY[axiom]
    m_min = 3 if arity == "clones" else 2
    for i in range(budget):
        rng = generator(seed, i)
        m = int(rng.integers(m_min, m_max + 1))
        n = int(rng.integers(1, n_max + 1))
        if arity == 1:
            witness: Any = sample_impartial_culture_rng(m, n, rng)
        elif arity == 2:
            n2 = int(rng.integers(1, n_max + 1))
            witness = (
                sample_impartial_culture_rng(m, n, rng),
                sample_impartial_culture_rng(m, n2, rng),
            )
        else:
            base = sample_impartial_culture_rng(m - 1, n, rng)
            target = int(rng.integers(m - 1))
            witness = clone_profile(base, target, rng)
        if not check_axiom_instance(axiom, rule, witness):
            return witness
    return None
