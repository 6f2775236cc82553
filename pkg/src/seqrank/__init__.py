"""seqrank: scoring-based rank aggregation and its decision problems.

Three families of social preference functions (rank by score, rank by
sequentially picking winners, rank by sequentially picking losers) over
arbitrary scoring systems, exact Kemeny aggregation, parallel-universe
position determination, seeded profile samplers, weighted-majority-graph
realization, hardness-reduction fixtures, axiom checkers, and a CSV
experiment harness.
"""

from ._backend import BACKEND
from .core import (
    BORDA,
    HALF,
    PLURALITY,
    VETO,
    Profile,
    Ranking,
    ScoringSystem,
    normalized_swap_distance,
    parse_profile,
    serialize_profile,
    swap_distance,
)
from .rules import Rule, enumerate_selected, parse_rule, run_seq_loser, run_seq_winner, run_score_rule

__all__ = [
    "BACKEND",
    "BORDA",
    "HALF",
    "PLURALITY",
    "VETO",
    "Profile",
    "Ranking",
    "Rule",
    "ScoringSystem",
    "enumerate_selected",
    "normalized_swap_distance",
    "parse_profile",
    "parse_rule",
    "run_score_rule",
    "run_seq_loser",
    "run_seq_winner",
    "serialize_profile",
    "swap_distance",
]

__version__ = "0.1.0"
