"""Pure-Python kernels: the fallback backend.

Mirrors the compiled extension in ``_kernels.pyx`` function by function.
Hot loops operate on plain numpy arrays and Python ints (bitmasks for
candidate sets, least-significant bit = candidate 0).  Semantics,
argument order, and floating-point operation order are kept identical to
the compiled kernels so that both backends produce bit-identical output.
"""

from __future__ import annotations

import numpy as np

BACKEND = "python"

MODE_SCORE_ONCE = 0
MODE_SEQ_WINNER = 1
MODE_SEQ_LOSER = 2


def kendall_tau(a: np.ndarray, b: np.ndarray) -> int:
    """Number of discordant pairs between two permutations of 0..m-1."""
    m = len(a)
    posb = [0] * m
    for r in range(m):
        posb[b[r]] = r
    inv = 0
    for i in range(m):
        pi = posb[a[i]]
        for j in range(i + 1, m):
            if posb[a[j]] < pi:
                inv += 1
    return inv


def _round_scores(mults, ranks, vec, alive, score_buf):
    """Scores of alive candidates for one round; vec is the current vector."""
    g, m = ranks.shape
    for c in range(m):
        score_buf[c] = 0
    for i in range(g):
        w = int(mults[i])
        pos = 0
        row = ranks[i]
        for j in range(m):
            c = int(row[j])
            if alive[c]:
                score_buf[c] += w * int(vec[pos])
                pos += 1
    return score_buf


def run_trace(mults, ranks, vec_table, tie_pos, mode):
    """Execute one rule resolutely; returns (elim_order, tie_sizes).

    ``elim_order[r]`` is the candidate removed in round r (0-based);
    ``tie_sizes[r]`` is how many candidates were tied for removal.
    Mode 0 ranks by the initial scores without recomputation; mode 1
    removes a score-winner each round (filling the ranking top-down);
    mode 2 removes a score-loser each round (filling bottom-up).
    """
    g, m = ranks.shape
    alive = [True] * m
    elim = np.empty(m, dtype=np.int64)
    tie_sizes = np.empty(m, dtype=np.int64)
    score_buf = [0] * m

    if mode == MODE_SCORE_ONCE:
        _round_scores(mults, ranks, vec_table[m - 1], alive, score_buf)

    for rnd in range(m):
        m_alive = m - rnd
        if mode != MODE_SCORE_ONCE:
            _round_scores(mults, ranks, vec_table[m_alive - 1], alive, score_buf)
        best = None
        chosen = -1
        tied = 0
        for c in range(m):
            if not alive[c]:
                continue
            s = score_buf[c]
            if mode == MODE_SEQ_LOSER:
                if best is None or s < best:
                    best, chosen, tied = s, c, 1
                elif s == best:
                    tied += 1
                    if tie_pos[c] > tie_pos[chosen]:
                        chosen = c
            else:
                if best is None or s > best:
                    best, chosen, tied = s, c, 1
                elif s == best:
                    tied += 1
                    if tie_pos[c] < tie_pos[chosen]:
                        chosen = c
        elim[rnd] = chosen
        tie_sizes[rnd] = tied
        alive[chosen] = False
    return elim, tie_sizes


def restricted_min_max(mults, ranks, vec_table, alive_mask: int):
    """(winner_mask, loser_mask) of the profile restricted to ``alive_mask``."""
    g, m = ranks.shape
    alive = [(alive_mask >> c) & 1 == 1 for c in range(m)]
    m_alive = sum(alive)
    score_buf = [0] * m
    _round_scores(mults, ranks, vec_table[m_alive - 1], alive, score_buf)
    hi = lo = None
    for c in range(m):
        if alive[c]:
            s = score_buf[c]
            if hi is None or s > hi:
                hi = s
            if lo is None or s < lo:
                lo = s
    win = lose = 0
    for c in range(m):
        if alive[c]:
            if score_buf[c] == hi:
                win |= 1 << c
            if score_buf[c] == lo:
                lose |= 1 << c
    return win, lose


def elimination_table(mults, ranks, vec_table, want_winner: int, max_size: int):
    """uint8 table over candidate subsets; table[S]=1 iff S is reachable.

    A set S is marked when its members can occupy the first |S| positions
    (want_winner) or the last |S| positions (loser variant) in some
    execution.  Filled by forward propagation from the empty set, only up
    to subsets of size ``max_size``.
    """
    g, m = ranks.shape
    full = (1 << m) - 1
    table = np.zeros(1 << m, dtype=np.uint8)
    table[0] = 1
    # Process masks in increasing popcount so successors are set before use.
    by_size = [[] for _ in range(m + 1)]
    for mask in range(1 << m):
        by_size[bin(mask).count("1")].append(mask)
    for size in range(min(max_size, m)):
        for mask in by_size[size]:
            if not table[mask]:
                continue
            alive = full ^ mask
            win, lose = restricted_min_max(mults, ranks, vec_table, alive)
            ext = win if want_winner else lose
            while ext:
                bit = ext & (-ext)
                table[mask | bit] = 1
                ext ^= bit
    return table


def kemeny_dp(pcost: np.ndarray):
    """Subset DP over placed-prefix sets.

    pcost[c][d] = number of voters preferring d over c (the cost of
    ranking c above d).  Returns (f, onpath): f[S] = minimum cost of
    placing exactly the set S in the first |S| positions; onpath[S] = 1
    iff S is a prefix set of some optimal ranking.
    """
    m = pcost.shape[0]
    size = 1 << m
    full = size - 1
    tot = [int(pcost[c].sum()) for c in range(m)]
    # partial[c][S] = sum of pcost[c][d] over d in S, filled bit-by-bit.
    partial = np.zeros((m, size), dtype=np.int64)
    pc = pcost.astype(np.int64)
    for c in range(m):
        row = partial[c]
        cost_row = pc[c]
        for mask in range(1, size):
            low = mask & (-mask)
            row[mask] = row[mask ^ low] + cost_row[low.bit_length() - 1]
    INF = 1 << 62
    f = np.full(size, INF, dtype=np.int64)
    f[0] = 0
    for mask in range(1, size):
        best = INF
        sub = mask
        while sub:
            bit = sub & (-sub)
            c = bit.bit_length() - 1
            prev = mask ^ bit
            cand = f[prev] + tot[c] - partial[c][prev]
            if cand < best:
                best = cand
            sub ^= bit
        f[mask] = best
    onpath = np.zeros(size, dtype=np.uint8)
    onpath[full] = 1
    # Walk tight edges backwards from the full set.
    for mask in range(full, 0, -1):
        if not onpath[mask]:
            continue
        sub = mask
        while sub:
            bit = sub & (-sub)
            c = bit.bit_length() - 1
            prev = mask ^ bit
            if f[prev] + tot[c] - partial[c][prev] == f[mask]:
                onpath[prev] = 1
            sub ^= bit
    return f, onpath


def mallows_fill(u: np.ndarray, phi: float):
    """Repeated-insertion sampling relative to the identity ranking.

    ``u`` holds one uniform draw per insertion step, consumed in row-major
    order.  Row v of the result is a permutation of 0..m-1 (most-preferred
    first) where item i was inserted with displacement j with probability
    phi^j / (1 + phi + ... + phi^i).
    """
    n, steps = u.shape
    m = steps + 1
    out = np.empty((n, m), dtype=np.int64)
    buf = [0] * m
    for v in range(n):
        buf[0] = 0
        length = 1
        for i in range(1, m):
            # Z = 1 + phi + ... + phi^i, computed by repeated multiplication.
            z = 1.0
            p = 1.0
            for _ in range(i):
                p = p * phi
                z = z + p
            t = u[v, i - 1] * z
            acc = 1.0
            p = 1.0
            j = 0
            while acc <= t and j < i:
                j += 1
                p = p * phi
                acc = acc + p
            # displacement j: the new item jumps above j existing items
            ins = length - j
            for k in range(length, ins, -1):
                buf[k] = buf[k - 1]
            buf[ins] = i
            length += 1
        for k in range(m):
            out[v, k] = buf[k]
    return out
