# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: the hot inner loops of rule execution and the DPs.

Function-for-function twin of ``_kernels_py``; both backends must return
identical results (including float behaviour in the Mallows sampler,
which uses the same operation order).
"""

import numpy as np

cimport numpy as cnp

cnp.import_array()

BACKEND = "cython"

MODE_SCORE_ONCE = 0
MODE_SEQ_WINNER = 1
MODE_SEQ_LOSER = 2


def kendall_tau(cnp.int64_t[::1] a, cnp.int64_t[::1] b):
    cdef Py_ssize_t m = a.shape[0]
    cdef cnp.int64_t[::1] posb = np.empty(m, dtype=np.int64)
    cdef Py_ssize_t i, j
    cdef long long inv = 0
    cdef cnp.int64_t pi
    for i in range(m):
        posb[b[i]] = i
    for i in range(m):
        pi = posb[a[i]]
        for j in range(i + 1, m):
            if posb[a[j]] < pi:
                inv += 1
    return inv


cdef void _round_scores(cnp.int64_t[::1] mults, cnp.int64_t[:, ::1] ranks,
                        cnp.int64_t[::1] vec, char* alive,
                        cnp.int64_t* score_buf) noexcept:
    cdef Py_ssize_t g = ranks.shape[0]
    cdef Py_ssize_t m = ranks.shape[1]
    cdef Py_ssize_t i, j, pos
    cdef cnp.int64_t c, w
    for i in range(m):
        score_buf[i] = 0
    for i in range(g):
        w = mults[i]
        pos = 0
        for j in range(m):
            c = ranks[i, j]
            if alive[c]:
                score_buf[c] += w * vec[pos]
                pos += 1


def run_trace(cnp.int64_t[::1] mults, cnp.int64_t[:, ::1] ranks,
              cnp.int64_t[:, ::1] vec_table, cnp.int64_t[::1] tie_pos, int mode):
    cdef Py_ssize_t m = ranks.shape[1]
    cdef cnp.ndarray[cnp.int64_t, ndim=1] elim = np.empty(m, dtype=np.int64)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] tie_sizes = np.empty(m, dtype=np.int64)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] score_arr = np.zeros(m, dtype=np.int64)
    cdef cnp.ndarray[cnp.uint8_t, ndim=1] alive_arr = np.ones(m, dtype=np.uint8)
    cdef cnp.int64_t* score_buf = <cnp.int64_t*> score_arr.data
    cdef char* alive = <char*> alive_arr.data
    cdef Py_ssize_t rnd, c
    cdef Py_ssize_t m_alive
    cdef cnp.int64_t s, best
    cdef Py_ssize_t chosen
    cdef long long tied
    cdef bint have

    if mode == MODE_SCORE_ONCE:
        _round_scores(mults, ranks, vec_table[m - 1], alive, score_buf)

    for rnd in range(m):
        m_alive = m - rnd
        if mode != MODE_SCORE_ONCE:
            _round_scores(mults, ranks, vec_table[m_alive - 1], alive, score_buf)
        have = False
        best = 0
        chosen = -1
        tied = 0
        for c in range(m):
            if not alive[c]:
                continue
            s = score_buf[c]
            if mode == MODE_SEQ_LOSER:
                if not have or s < best:
                    best = s
                    chosen = c
                    tied = 1
                    have = True
                elif s == best:
                    tied += 1
                    if tie_pos[c] > tie_pos[chosen]:
                        chosen = c
            else:
                if not have or s > best:
                    best = s
                    chosen = c
                    tied = 1
                    have = True
                elif s == best:
                    tied += 1
                    if tie_pos[c] < tie_pos[chosen]:
                        chosen = c
        elim[rnd] = chosen
        tie_sizes[rnd] = tied
        alive[chosen] = 0
    return elim, tie_sizes


def restricted_min_max(cnp.int64_t[::1] mults, cnp.int64_t[:, ::1] ranks,
                       cnp.int64_t[:, ::1] vec_table, object alive_mask):
    """(winner_mask, loser_mask) over the alive set, as Python ints."""
    cdef Py_ssize_t m = ranks.shape[1]
    cdef unsigned long long mask = <unsigned long long> alive_mask
    cdef cnp.ndarray[cnp.int64_t, ndim=1] score_arr = np.zeros(m, dtype=np.int64)
    cdef cnp.ndarray[cnp.uint8_t, ndim=1] alive_arr = np.zeros(m, dtype=np.uint8)
    cdef cnp.int64_t* score_buf = <cnp.int64_t*> score_arr.data
    cdef char* alive = <char*> alive_arr.data
    cdef Py_ssize_t c
    cdef Py_ssize_t m_alive = 0
    for c in range(m):
        if (mask >> c) & 1:
            alive[c] = 1
            m_alive += 1
    _round_scores(mults, ranks, vec_table[m_alive - 1], alive, score_buf)
    cdef cnp.int64_t hi = 0, lo = 0
    cdef bint have = False
    for c in range(m):
        if alive[c]:
            if not have:
                hi = score_buf[c]
                lo = score_buf[c]
                have = True
            else:
                if score_buf[c] > hi:
                    hi = score_buf[c]
                if score_buf[c] < lo:
                    lo = score_buf[c]
    cdef unsigned long long win = 0, lose = 0
    for c in range(m):
        if alive[c]:
            if score_buf[c] == hi:
                win |= (<unsigned long long> 1) << c
            if score_buf[c] == lo:
                lose |= (<unsigned long long> 1) << c
    return int(win), int(lose)


def elimination_table(cnp.int64_t[::1] mults, cnp.int64_t[:, ::1] ranks,
                      cnp.int64_t[:, ::1] vec_table, int want_winner, int max_size):
    cdef Py_ssize_t m = ranks.shape[1]
    cdef unsigned long long full = ((<unsigned long long> 1) << m) - 1
    cdef cnp.ndarray[cnp.uint8_t, ndim=1] table_arr = np.zeros(1 << m, dtype=np.uint8)
    cdef char* table = <char*> table_arr.data
    table[0] = 1
    cdef cnp.ndarray[cnp.int64_t, ndim=1] score_arr = np.zeros(m, dtype=np.int64)
    cdef cnp.ndarray[cnp.uint8_t, ndim=1] alive_arr = np.zeros(m, dtype=np.uint8)
    cdef cnp.int64_t* score_buf = <cnp.int64_t*> score_arr.data
    cdef char* alive = <char*> alive_arr.data
    cdef unsigned long long mask, bit
    cdef Py_ssize_t c, size, m_alive
    cdef cnp.int64_t hi, lo, goal
    cdef bint have
    cdef int limit = max_size if max_size < m else m
    # masks in increasing popcount: simple pass per size keeps memory flat
    cdef int want_size
    for want_size in range(limit):
        for mask in range(full + 1):
            if not table[mask]:
                continue
            if _popcount(mask) != want_size:
                continue
            m_alive = 0
            for c in range(m):
                if (mask >> c) & 1:
                    alive[c] = 0
                else:
                    alive[c] = 1
                    m_alive += 1
            _round_scores(mults, ranks, vec_table[m_alive - 1], alive, score_buf)
            have = False
            hi = 0
            lo = 0
            for c in range(m):
                if alive[c]:
                    if not have:
                        hi = score_buf[c]
                        lo = score_buf[c]
                        have = True
                    else:
                        if score_buf[c] > hi:
                            hi = score_buf[c]
                        if score_buf[c] < lo:
                            lo = score_buf[c]
            goal = hi if want_winner else lo
            for c in range(m):
                if alive[c] and score_buf[c] == goal:
                    table[mask | ((<unsigned long long> 1) << c)] = 1
    return table_arr


cdef inline int _popcount(unsigned long long x) noexcept:
    cdef int count = 0
    while x:
        x &= x - 1
        count += 1
    return count


def kemeny_dp(cnp.int64_t[:, ::1] pcost):
    cdef Py_ssize_t m = pcost.shape[0]
    cdef Py_ssize_t size = (<Py_ssize_t> 1) << m
    cdef unsigned long long full = (<unsigned long long> size) - 1
    cdef cnp.ndarray[cnp.int64_t, ndim=1] tot_arr = np.zeros(m, dtype=np.int64)
    cdef cnp.int64_t* tot = <cnp.int64_t*> tot_arr.data
    cdef Py_ssize_t c, d
    for c in range(m):
        for d in range(m):
            tot[c] += pcost[c, d]
    cdef cnp.ndarray[cnp.int64_t, ndim=2] partial_arr = np.zeros((m, size), dtype=np.int64)
    cdef cnp.int64_t[:, ::1] partial = partial_arr
    cdef unsigned long long mask, low
    cdef Py_ssize_t j
    for c in range(m):
        for mask in range(1, <unsigned long long> size):
            low = mask & (~mask + 1)
            j = _bit_index(low)
            partial[c, mask] = partial[c, mask ^ low] + pcost[c, j]
    cdef cnp.int64_t INF = (<cnp.int64_t> 1) << 62
    cdef cnp.ndarray[cnp.int64_t, ndim=1] f_arr = np.full(size, INF, dtype=np.int64)
    cdef cnp.int64_t* f = <cnp.int64_t*> f_arr.data
    f[0] = 0
    cdef unsigned long long sub, bit, prev
    cdef cnp.int64_t best, cand
    for mask in range(1, <unsigned long long> size):
        best = INF
        sub = mask
        while sub:
            bit = sub & (~sub + 1)
            c = _bit_index(bit)
            prev = mask ^ bit
            cand = f[prev] + tot[c] - partial[c, prev]
            if cand < best:
                best = cand
            sub ^= bit
        f[mask] = best
    cdef cnp.ndarray[cnp.uint8_t, ndim=1] onpath_arr = np.zeros(size, dtype=np.uint8)
    cdef char* onpath = <char*> onpath_arr.data
    onpath[full] = 1
    for mask in range(full, 0, -1):
        if not onpath[mask]:
            continue
        sub = mask
        while sub:
            bit = sub & (~sub + 1)
            c = _bit_index(bit)
            prev = mask ^ bit
            if f[prev] + tot[c] - partial[c, prev] == f[mask]:
                onpath[prev] = 1
            sub ^= bit
    return f_arr, onpath_arr


cdef inline Py_ssize_t _bit_index(unsigned long long bit) noexcept:
    cdef Py_ssize_t i = 0
    while bit > 1:
        bit >>= 1
        i += 1
    return i


def mallows_fill(cnp.float64_t[:, ::1] u, double phi):
    cdef Py_ssize_t n = u.shape[0]
    cdef Py_ssize_t steps = u.shape[1]
    cdef Py_ssize_t m = steps + 1
    cdef cnp.ndarray[cnp.int64_t, ndim=2] out_arr = np.empty((n, m), dtype=np.int64)
    cdef cnp.int64_t[:, ::1] out = out_arr
    cdef cnp.ndarray[cnp.int64_t, ndim=1] buf_arr = np.empty(m, dtype=np.int64)
    cdef cnp.int64_t* buf = <cnp.int64_t*> buf_arr.data
    cdef Py_ssize_t v, i, j, k, ins, length
    cdef double z, p, t, acc
    for v in range(n):
        buf[0] = 0
        length = 1
        for i in range(1, m):
            z = 1.0
            p = 1.0
            for k in range(i):
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
            ins = length - j
            for k in range(length, ins, -1):
                buf[k] = buf[k - 1]
            buf[ins] = i
            length += 1
        for k in range(m):
            out[v, k] = buf[k]
    return out_arr
