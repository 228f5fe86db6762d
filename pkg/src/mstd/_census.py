"""Compiled subset DFS used by the prime census.

Each node of the walk is one subset of ``vals``; children add an element with
a larger index. Sum and positive-difference multiplicities are kept in
counter arrays and updated in O(depth) per step.
"""

import numpy as np
from numba import njit


@njit(cache=True, nogil=True)
def _add(vals, chosen, depth, e, sc, dc):
    s_new = 0
    d_new = 0
    for t in range(depth):
        a = vals[chosen[t]]
        s = e + a
        sc[s] += 1
        if sc[s] == 1:
            s_new += 1
        d = e - a
        dc[d] += 1
        if dc[d] == 1:
            d_new += 1
    s = 2 * e
    sc[s] += 1
    if sc[s] == 1:
        s_new += 1
    return s_new, d_new


@njit(cache=True, nogil=True)
def _remove(vals, chosen, depth, e, sc, dc):
    s_lost = 0
    d_lost = 0
    s = 2 * e
    sc[s] -= 1
    if sc[s] == 0:
        s_lost += 1
    for t in range(depth):
        a = vals[chosen[t]]
        s = e + a
        sc[s] -= 1
        if sc[s] == 0:
            s_lost += 1
        d = e - a
        dc[d] -= 1
        if dc[d] == 0:
            d_lost += 1
    return s_lost, d_lost


@njit(cache=True, nogil=True)
def subset_census(vals, prefix_len, prefix_mask, min_card, found_out, sample_every, sample_out):
    """Walk every subset whose membership on indices < prefix_len equals prefix_mask.

    Sum-dominant subsets with at least ``min_card`` elements are written to
    ``found_out`` as index bitmasks. Every ``sample_every``-th node, the row
    (mask, |A+A|, #positive differences) goes to ``sample_out``.
    Returns (found, nodes, samples); counts past the buffer ends are still tallied.
    """
    P = vals.shape[0]
    vmax = vals[P - 1]
    sc = np.zeros(2 * vmax + 1, np.int32)
    dc = np.zeros(vmax + 1, np.int32)
    chosen = np.empty(P, np.int64)
    cand = np.empty(P + 1, np.int64)
    S = 0
    Dp = 0
    depth = 0
    mask = np.int64(0)
    found = 0
    nodes = 0
    samples = 0

    for i in range(prefix_len):
        if (prefix_mask >> i) & 1:
            s_new, d_new = _add(vals, chosen, depth, vals[i], sc, dc)
            S += s_new
            Dp += d_new
            chosen[depth] = i
            depth += 1
            mask |= np.int64(1) << i
    base = depth
    cand[depth] = prefix_len
    visit = True
    while True:
        if visit:
            nodes += 1
            if depth >= min_card and S > 2 * Dp + 1:
                if found < found_out.shape[0]:
                    found_out[found] = mask
                found += 1
            if sample_every > 0 and depth > 0 and nodes % sample_every == 0:
                if samples < sample_out.shape[0]:
                    sample_out[samples, 0] = mask
                    sample_out[samples, 1] = S
                    sample_out[samples, 2] = Dp
                samples += 1
            visit = False
        j = cand[depth]
        if j < P:
            cand[depth] = j + 1
            s_new, d_new = _add(vals, chosen, depth, vals[j], sc, dc)
            S += s_new
            Dp += d_new
            chosen[depth] = j
            depth += 1
            mask |= np.int64(1) << j
            cand[depth] = j + 1
            visit = True
        else:
            if depth == base:
                break
            depth -= 1
            j = chosen[depth]
            mask &= ~(np.int64(1) << j)
            s_lost, d_lost = _remove(vals, chosen, depth, vals[j], sc, dc)
            S -= s_lost
            Dp -= d_lost
    return found, nodes, samples
