"""Hardness-reduction instance generators and their source-problem oracles.

Each generator turns a small combinatorial instance (SAT formula, graph,
hitting-set family) into a preference profile whose determination answer
matches the source instance, giving verified fixtures for the decision
procedures.  Where the underlying construction leaves an ordering
"arbitrary", candidates are completed in ascending index order (with the
designated candidate first where required), so fixtures are
deterministic.

Only yes/no-reproducible constructions are generated; parameterized
reductions that exist purely for complexity classification are not.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from ._backend import kernels
from .core import Profile, Ranking
from .errors import ProfileParseError, ResourceLimitError
from .majority import BilevelGraph, sum_bilevel_realize
from .rules import SEQ_WINNER, Rule

__all__ = [
    "SatFormula",
    "GraphInstance",
    "HittingSetInstance",
    "stv_from_sat",
    "stv_from_cubic_vc",
    "coombs_from_regular_clique",
    "baldwin8_from_cubic_vc",
    "baldwin8_target_graph",
    "seqwi_veto_topk_from_hitting_set",
    "witness_replay",
    "sat_brute",
    "vc_brute",
    "clique_brute",
    "hitting_brute",
    "enumerate_cubic_graphs",
    "enumerate_regular_graphs",
    "enumerate_occurrence_limited_formulas",
    "parse_sat",
    "parse_graph_instance",
    "parse_hitting_set",
]

ORACLE_BOUND = 20


# ---------------------------------------------------------------------------
# Source-problem instances
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SatFormula:
    """CNF with clauses of size <= 3 where each literal appears exactly twice.

    Literals are signed 1-based variable indices (+v / -v).
    """

    nvars: int
    clauses: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        counts: dict[int, int] = {}
        norm = []
        for clause in self.clauses:
            lits = tuple(sorted(set(int(x) for x in clause), key=lambda l: (abs(l), l < 0)))
            if len(lits) != len(clause):
                raise ValueError(f"duplicate literal within clause {clause}")
            if not 1 <= len(lits) <= 3:
                raise ValueError(f"clause size must be 1..3, got {clause}")
            for lit in lits:
                if lit == 0 or abs(lit) > self.nvars:
                    raise ValueError(f"literal {lit} out of range")
                counts[lit] = counts.get(lit, 0) + 1
            norm.append(lits)
        for v in range(1, self.nvars + 1):
            for lit in (v, -v):
                if counts.get(lit, 0) != 2:
                    raise ValueError(f"literal {lit} must appear exactly twice, appears {counts.get(lit, 0)}")
        object.__setattr__(self, "clauses", tuple(norm))

    @property
    def literals(self) -> list[int]:
        out = []
        for v in range(1, self.nvars + 1):
            out.extend((v, -v))
        return out


@dataclass(frozen=True)
class GraphInstance:
    """Simple undirected graph with degree-regularity flags."""

    q: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        norm = set()
        for a, b in self.edges:
            a, b = int(a), int(b)
            if a == b or not (0 <= a < self.q and 0 <= b < self.q):
                raise ValueError(f"bad edge ({a}, {b})")
            norm.add((min(a, b), max(a, b)))
        object.__setattr__(self, "edges", tuple(sorted(norm)))

    def degrees(self) -> list[int]:
        deg = [0] * self.q
        for a, b in self.edges:
            deg[a] += 1
            deg[b] += 1
        return deg

    @property
    def regular_degree(self) -> int | None:
        deg = set(self.degrees())
        return deg.pop() if len(deg) == 1 else None

    @property
    def is_cubic(self) -> bool:
        return self.regular_degree == 3

    def incident(self, v: int) -> list[int]:
        """Indices into ``edges`` of the edges touching v, ascending."""
        return [j for j, (a, b) in enumerate(self.edges) if v in (a, b)]

    def adjacent(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in set(self.edges)


@dataclass(frozen=True)
class HittingSetInstance:
    """Universe 0..nu-1, a family of subsets, and a target size."""

    nu: int
    sets: tuple[frozenset[int], ...]
    target: int

    def __post_init__(self):
        norm = []
        for s in self.sets:
            s = frozenset(int(x) for x in s)
            if any(not 0 <= x < self.nu for x in s):
                raise ValueError(f"set {sorted(s)} leaves the universe")
            norm.append(s)
        if not 0 <= self.target <= self.nu:
            raise ValueError("target must lie in 0..|U|")
        object.__setattr__(self, "sets", tuple(norm))


# ---------------------------------------------------------------------------
# Generators
# ---------------------------------------------------------------------------


def _complete(prefix: list[int], m: int) -> Ranking:
    tail = [c for c in range(m) if c not in set(prefix)]
    return Ranking(prefix + tail)


def _complete_bottom(suffix: list[int], m: int, canon: list[int] | None = None) -> Ranking:
    canon = canon if canon is not None else list(range(m))
    head = [c for c in canon if c not in set(suffix)]
    return Ranking(head + suffix)


def stv_from_sat(formula: SatFormula) -> tuple[Profile, int]:
    """Plurality-loser winner-determination instance from a SAT formula.

    Candidates: the designated candidate, a blocker, one candidate per
    clause, one per literal.  The designated candidate can win some
    execution iff the formula is satisfiable.
    """
    nf = len(formula.clauses)
    lits = formula.literals
    lit_index = {lit: 2 + nf + i for i, lit in enumerate(lits)}
    m = 2 + nf + len(lits)
    d, w = 0, 1

    groups: list[tuple[int, Ranking]] = [
        (100, _complete([d], m)),
        (99, _complete([w, d], m)),
    ]
    for j in range(nf):
        groups.append((98, _complete([2 + j, w, d], m)))
    for lit in lits:
        groups.append((60, _complete([lit_index[lit], lit_index[-lit], w, d], m)))
    for j, clause in enumerate(formula.clauses):
        for lit in clause:
            groups.append((2, _complete([lit_index[lit], 2 + j, w, d], m)))
    return Profile(m, groups), d


def stv_from_cubic_vc(graph: GraphInstance, t: int) -> tuple[Profile, int]:
    """Plurality-loser winner-determination instance from cubic vertex cover.

    Vertex pairs, edge candidates, and three special candidates; the
    designated candidate wins some execution iff the graph has a vertex
    cover of size t.
    """
    if not graph.is_cubic:
        raise ValueError("construction requires a cubic graph")
    if not 0 <= t <= graph.q:
        raise ValueError("cover size out of range")
    q = graph.q
    ne = len(graph.edges)
    # v_i -> 2i, v'_i -> 2i+1, edge j -> 2q+j, then d, w, and the tail guard.
    edge0 = 2 * q
    d = 2 * q + ne
    w = d + 1
    guard = d + 2
    m = 2 * q + ne + 3

    groups: list[tuple[int, Ranking]] = [
        (105 * q, _complete([d, w], m)),
        (99 * q, _complete([w, d], m)),
    ]
    for j in range(ne):
        groups.append((99 * q - 1, _complete([edge0 + j, w, d], m)))
    groups.append((99 * q - 3 * (q - t), _complete([guard, w, d], m)))
    for i in range(q):
        vi, vip = 2 * i, 2 * i + 1
        groups.append((60 * q - 3, _complete([vi, vip, w, d], m)))
        for j in graph.incident(i):
            groups.append((1, _complete([vi, edge0 + j, w, d], m)))
        groups.append((60 * q - 3, _complete([vip, vi, w, d], m)))
        groups.append((3, _complete([vip, guard, w, d], m)))
    return Profile(m, groups), d


def coombs_from_regular_clique(graph: GraphInstance, k: int) -> tuple[Profile, int]:
    """Veto-loser winner-determination instance from clique in a regular graph.

    The designated candidate is first in the canonical completion order
    and wins some execution iff the graph has a k-clique.
    """
    r = graph.regular_degree
    if r is None:
        raise ValueError("construction requires a regular graph")
    if k < 2 or k > graph.q:
        raise ValueError("clique size must lie in 2..q")
    q = graph.q
    d, w = 0, 1
    vert0 = 2
    dummy0 = 2 + q
    m = 2 * q + 2
    kk = k * (k - 2)

    groups: list[tuple[int, Ranking]] = [
        (kk + r + 1, _complete_bottom([d], m)),
        (r + 1, _complete_bottom([w], m)),
    ]
    for v in range(q):
        if kk > 0:
            groups.append((kk, _complete_bottom([dummy0 + v, vert0 + v], m)))
        groups.append((1, _complete_bottom([d, vert0 + v], m)))
    for a, b in graph.edges:
        groups.append((1, _complete_bottom([w, vert0 + a, vert0 + b], m)))
        groups.append((1, _complete_bottom([w, vert0 + b, vert0 + a], m)))
    return Profile(m, groups), d


def baldwin8_from_cubic_vc(graph: GraphInstance, t: int) -> tuple[Profile, int]:
    """Borda-loser winner determination with exactly 8 voters, from cubic VC.

    Builds four arc-disjoint bilevel graphs whose union is the target
    weighted majority graph (all arcs weight 2) and realizes each with a
    voter pair.  The designated candidate wins iff a size-t cover exists.
    """
    if not graph.is_cubic:
        raise ValueError("construction requires a cubic graph")
    if not 0 <= t <= graph.q:
        raise ValueError("cover size out of range")
    q = graph.q
    ne = len(graph.edges)
    vert = list(range(q))
    edge0 = q
    edges = [edge0 + j for j in range(ne)]
    d = q + ne
    b0 = d + 1
    bs = list(range(b0, b0 + 4))
    f0 = b0 + 4
    fs = list(range(f0, f0 + (q - t + 8)))
    g0 = f0 + (q - t + 8)
    gs = [g0]
    h0 = g0 + 1
    hs = list(range(h0, h0 + 4))
    k0 = h0 + 4
    ks = list(range(k0, k0 + 5))
    m = k0 + 5

    # Label each vertex's three incident edges in ascending edge order.
    labels = [[edge0 + j for j in graph.incident(v)] for v in vert]

    def edge_blocks(which: int) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
        by_edge: dict[int, list[int]] = {}
        for v in vert:
            by_edge.setdefault(labels[v][which], []).append(v)
        return [((e,), tuple(vv)) for e, vv in sorted(by_edge.items())]

    parts = [
        BilevelGraph(m, ((tuple(bs), tuple(vert)), (tuple(hs + gs), tuple(edges)))),
        BilevelGraph(m, tuple(edge_blocks(0)) + ((tuple(fs), tuple(bs)),)),
        BilevelGraph(m, tuple(edge_blocks(1)) + ((tuple(ks), tuple(hs)),)),
        BilevelGraph(m, tuple(edge_blocks(2)) + ((tuple(hs), (d,)),)),
    ]
    return sum_bilevel_realize(parts), d


def baldwin8_target_graph(graph: GraphInstance, t: int):
    """The weighted majority graph every baldwin8 profile must induce."""
    import numpy as np

    from .majority import WeightedMajorityGraph

    profile, d = baldwin8_from_cubic_vc(graph, t)
    q = graph.q
    ne = len(graph.edges)
    m = profile.m
    w = np.zeros((m, m), dtype=np.int64)
    edge0 = q
    b0 = q + ne + 1
    f0 = b0 + 4
    g0 = f0 + (q - t + 8)
    h0 = g0 + 1
    k0 = h0 + 4

    def add(c, dd):
        w[c, dd] = 2
        w[dd, c] = -2

    for j, (a, b) in enumerate(graph.edges):
        add(edge0 + j, a)
        add(edge0 + j, b)
    for bb in range(b0, b0 + 4):
        for v in range(q):
            add(bb, v)
    for hh in list(range(h0, h0 + 4)) + [g0]:
        for j in range(ne):
            add(hh, edge0 + j)
    for ff in range(f0, g0):
        for bb in range(b0, b0 + 4):
            add(ff, bb)
    for kk in range(k0, k0 + 5):
        for hh in range(h0, h0 + 4):
            add(kk, hh)
    for hh in range(h0, h0 + 4):
        add(hh, q + ne)
    return WeightedMajorityGraph(m, w)


def seqwi_veto_topk_from_hitting_set(inst: HittingSetInstance) -> tuple[Profile, int, int]:
    """Veto-winner Top-k instance from hitting set; k = target + 1.

    The designated candidate reaches one of the first target+1 positions
    iff a hitting set of the target size exists.
    """
    nu, mu, ell = inst.nu, len(inst.sets), inst.target
    set0 = nu
    b = nu + mu
    d = nu + mu + 1
    m = nu + mu + 2

    groups: list[tuple[int, Ranking]] = []
    for u in range(nu):
        for si, s in enumerate(inst.sets):
            if u in s:
                groups.append((1, _complete_bottom([b, set0 + si, u], m)))
        for up in range(nu):
            if up != u:
                groups.append((1, _complete_bottom([b, up, u], m)))
    for si in range(mu):
        groups.append((nu + mu + ell - 1, _complete_bottom([b, set0 + si], m)))
    groups.append((nu + mu + ell, _complete_bottom([d], m)))
    groups.append((nu + mu + ell + 1, _complete_bottom([b], m)))
    for u in range(nu):
        hits = sum(1 for s in inst.sets if u in s)
        pad = mu + 1 - hits
        if pad > 0:
            groups.append((pad, _complete_bottom([b, u], m)))
    return Profile(m, groups), d, ell + 1


# ---------------------------------------------------------------------------
# Witness replay
# ---------------------------------------------------------------------------


def witness_replay(profile: Profile, order: list[int], rule: Rule) -> bool:
    """Is ``order`` a valid round-by-round elimination sequence for the rule?

    Round r's candidate must be a score-winner (winner family) or
    score-loser (loser family) of the profile restricted to the still
    unremoved candidates.
    """
    m = profile.m
    if sorted(order) != list(range(m)):
        raise ValueError("witness must be a permutation of the candidates")
    if not rule.is_sequential:
        raise ValueError("witness replay covers sequential rules only")
    mults, ranks = profile.arrays()
    vec_table = rule.system.vector_table(m)
    want_winner = rule.family == SEQ_WINNER
    alive = (1 << m) - 1
    for c in order:
        win, lose = kernels.restricted_min_max(mults, ranks, vec_table, alive)
        ext = win if want_winner else lose
        if not (ext >> c) & 1:
            return False
        alive ^= 1 << c
    return True


# ---------------------------------------------------------------------------
# Brute-force source oracles
# ---------------------------------------------------------------------------


def sat_brute(formula: SatFormula) -> bool:
    if formula.nvars > ORACLE_BOUND:
        raise ResourceLimitError(f"SAT oracle limited to {ORACLE_BOUND} variables")
    for bits in range(1 << formula.nvars):
        ok = True
        for clause in formula.clauses:
            if not any((bits >> (abs(l) - 1)) & 1 == (l > 0) for l in clause):
                ok = False
                break
        if ok:
            return True
    return False


def vc_brute(graph: GraphInstance, t: int) -> bool:
    if graph.q > ORACLE_BOUND:
        raise ResourceLimitError(f"VC oracle limited to {ORACLE_BOUND} vertices")
    if t >= graph.q:
        return True
    for cover in itertools.combinations(range(graph.q), t):
        cset = set(cover)
        if all(a in cset or b in cset for a, b in graph.edges):
            return True
    return False


def clique_brute(graph: GraphInstance, k: int) -> bool:
    if graph.q > ORACLE_BOUND:
        raise ResourceLimitError(f"clique oracle limited to {ORACLE_BOUND} vertices")
    if k <= 1:
        return graph.q >= k
    for group in itertools.combinations(range(graph.q), k):
        if all(graph.adjacent(u, v) for u, v in itertools.combinations(group, 2)):
            return True
    return False


def hitting_brute(inst: HittingSetInstance) -> bool:
    if inst.nu > ORACLE_BOUND:
        raise ResourceLimitError(f"hitting-set oracle limited to {ORACLE_BOUND} elements")
    for chosen in itertools.combinations(range(inst.nu), inst.target):
        cset = set(chosen)
        if all(s & cset for s in inst.sets):
            return True
    return False


# ---------------------------------------------------------------------------
# Instance enumeration (exhaustive fixture universes)
# ---------------------------------------------------------------------------


def _canonical_edges(q: int, edges: frozenset[tuple[int, int]]) -> tuple:
    best = None
    for perm in itertools.permutations(range(q)):
        mapped = tuple(sorted((min(perm[a], perm[b]), max(perm[a], perm[b])) for a, b in edges))
        if best is None or mapped < best:
            best = mapped
    return best


def enumerate_regular_graphs(q: int, r: int) -> list[GraphInstance]:
    """All r-regular graphs on q vertices, up to isomorphism."""
    if q > 7:
        raise ResourceLimitError("graph enumeration limited to q <= 7")
    if (q * r) % 2 or r >= q:
        return []
    all_edges = list(itertools.combinations(range(q), 2))
    want = q * r // 2
    seen = set()
    out = []
    for chosen in itertools.combinations(all_edges, want):
        deg = [0] * q
        for a, b in chosen:
            deg[a] += 1
            deg[b] += 1
        if any(x != r for x in deg):
            continue
        key = _canonical_edges(q, frozenset(chosen))
        if key in seen:
            continue
        seen.add(key)
        out.append(GraphInstance(q, tuple(chosen)))
    return out


def enumerate_cubic_graphs(q: int) -> list[GraphInstance]:
    return enumerate_regular_graphs(q, 3)


def enumerate_occurrence_limited_formulas(nvars: int = 2) -> list[SatFormula]:
    """All formulas over nvars variables with clause size <= 3 and every
    literal appearing exactly twice (clauses form a multiset)."""
    lits = []
    for v in range(1, nvars + 1):
        lits.extend((v, -v))
    clause_types = []
    for size in (1, 2, 3):
        clause_types.extend(
            tuple(sorted(c, key=lambda l: (abs(l), l < 0)))
            for c in itertools.combinations(lits, size)
        )
    remaining = {lit: 2 for lit in lits}
    out: list[SatFormula] = []
    acc: list[tuple[int, ...]] = []

    def rec(idx: int):
        if idx == len(clause_types):
            if all(v == 0 for v in remaining.values()):
                out.append(SatFormula(nvars, tuple(acc)))
            return
        clause = clause_types[idx]
        most = min(remaining[l] for l in clause)
        rec(idx + 1)  # multiplicity 0 of this clause type
        pushed = 0
        for _ in range(most):
            for l in clause:
                remaining[l] -= 1
            acc.append(clause)
            pushed += 1
            rec(idx + 1)
        for _ in range(pushed):
            acc.pop()
            for l in clause:
                remaining[l] += 1

    rec(0)
    return out


# ---------------------------------------------------------------------------
# Instance file parsing
# ---------------------------------------------------------------------------


def parse_sat(text: str) -> SatFormula:
    """DIMACS CNF: 'p cnf <vars> <clauses>' then clause lines ending in 0."""
    nvars = None
    clauses = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c") or line.startswith("#"):
            continue
        if line.startswith("p"):
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise ProfileParseError("expected 'p cnf <vars> <clauses>'", lineno)
            nvars = int(parts[2])
            continue
        if nvars is None:
            raise ProfileParseError("clause before the problem line", lineno)
        lits = [int(x) for x in line.split()]
        if not lits or lits[-1] != 0:
            raise ProfileParseError("clause lines must end in 0", lineno)
        clauses.append(tuple(lits[:-1]))
    if nvars is None:
        raise ProfileParseError("missing problem line")
    return SatFormula(nvars, tuple(clauses))


def parse_graph_instance(text: str) -> tuple[GraphInstance, int | None]:
    """DIMACS-like: 'p edge <q> <edges>', 'e u v' (1-based), 't N' or 'k N'."""
    q = None
    edges = []
    param = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c") or line.startswith("#"):
            continue
        parts = line.split()
        if parts[0] == "p":
            if len(parts) < 3 or parts[1] != "edge":
                raise ProfileParseError("expected 'p edge <q> <edges>'", lineno)
            q = int(parts[2])
        elif parts[0] == "e":
            if q is None:
                raise ProfileParseError("edge before the problem line", lineno)
            if len(parts) != 3:
                raise ProfileParseError("expected 'e u v'", lineno)
            edges.append((int(parts[1]) - 1, int(parts[2]) - 1))
        elif parts[0] in ("t", "k", "l"):
            param = int(parts[1])
        else:
            raise ProfileParseError(f"unknown line {parts[0]!r}", lineno)
    if q is None:
        raise ProfileParseError("missing problem line")
    return GraphInstance(q, tuple(edges)), param


def parse_hitting_set(text: str) -> HittingSetInstance:
    """Lines: 'u <elements...>', 'l <target>', then 's <members...>' per set."""
    universe = None
    target = None
    sets = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if parts[0] == "u":
            universe = [int(x) for x in parts[1:]]
        elif parts[0] == "l":
            target = int(parts[1])
        elif parts[0] == "s":
            sets.append(parts[1:])
        else:
            raise ProfileParseError(f"unknown line {parts[0]!r}", lineno)
    if universe is None or target is None:
        raise ProfileParseError("hitting-set file needs 'u' and 'l' lines")
    index = {str(x): i for i, x in enumerate(universe)}
    try:
        family = tuple(frozenset(index[x] for x in s) for s in sets)
    except KeyError as exc:
        raise ProfileParseError(f"set member {exc} not in the universe") from None
    return HittingSetInstance(len(universe), family, target)
