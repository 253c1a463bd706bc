"""Compiled inner loops: cycle enumeration, non-backtracking walk counts, edge swaps."""

import numba
import numpy as np


@numba.njit(cache=True, nogil=True)
def _cycle_dfs(nbr, r, out, counts):
    # Enumerate each simple cycle of length 3..r once: rooted at its least vertex,
    # only visiting larger vertices, orientation fixed by path[1] < path[-1].
    # With out.shape[0] == 0 only the per-length counts are filled.
    n, d = nbr.shape
    path = np.empty(r, np.int64)
    it = np.empty(r, np.int64)
    onpath = np.zeros(n, np.bool_)
    total = 0
    store = out.shape[0] > 0
    for s in range(n):
        path[0] = s
        onpath[s] = True
        depth = 1
        it[0] = 0
        while depth > 0:
            top = path[depth - 1]
            if it[depth - 1] >= d:
                onpath[top] = False
                depth -= 1
                continue
            w = nbr[top, it[depth - 1]]
            it[depth - 1] += 1
            if w == s:
                if depth >= 3 and path[1] < path[depth - 1]:
                    counts[depth] += 1
                    if store:
                        for i in range(depth):
                            out[total, i] = path[i]
                        out[total, r] = depth
                    total += 1
                continue
            if w < s or onpath[w] or depth >= r:
                continue
            path[depth] = w
            onpath[w] = True
            it[depth] = 0
            depth += 1
        onpath[s] = False
    return total


def enumerate_cycles(nbr, r):
    """Return ``(counts, cycles)``: ``counts[k]`` for k <= r, and one row per cycle.

    Each row of ``cycles`` holds the canonical vertex sequence followed by -1
    padding; column ``r`` carries the length.
    """
    nbr = np.ascontiguousarray(nbr, dtype=np.int64)
    counts = np.zeros(r + 1, np.int64)
    total = _cycle_dfs(nbr, r, np.empty((0, r + 1), np.int64), counts)
    out = np.full((total, r + 1), -1, np.int64)
    counts[:] = 0
    _cycle_dfs(nbr, r, out, counts)
    return counts, out


@numba.njit(cache=True, nogil=True)
def _nb_closed_walks(succ, kmax, counts):
    # counts[k] += number of length-k sequences e_0..e_{k-1} of directed edges with
    # every step (and the wrap-around step) non-backtracking: diag of B^k summed.
    m = succ.shape[0]
    nsucc = succ.shape[1]
    stack = np.empty(kmax + 1, np.int64)
    it = np.empty(kmax + 1, np.int64)
    for e0 in range(m):
        stack[0] = e0
        it[0] = 0
        depth = 1
        while depth > 0:
            if it[depth - 1] >= nsucc:
                depth -= 1
                continue
            f = succ[stack[depth - 1], it[depth - 1]]
            it[depth - 1] += 1
            if f == e0:
                counts[depth] += 1
            if depth < kmax:
                stack[depth] = f
                it[depth] = 0
                depth += 1


def nb_closed_walk_counts(succ, kmax):
    counts = np.zeros(kmax + 1, np.int64)
    if kmax >= 1 and len(succ):
        _nb_closed_walks(np.ascontiguousarray(succ, dtype=np.int64), kmax, counts)
    return counts


@numba.njit(cache=True, nogil=True)
def _swap_chain(nbr, edges, steps, seed):
    np.random.seed(seed)
    m = edges.shape[0]
    d = nbr.shape[1]
    accepted = 0
    for _ in range(steps):
        i = np.random.randint(m)
        j = np.random.randint(m)
        flip = np.random.random() < 0.5
        if i == j:
            continue
        a = edges[i, 0]
        b = edges[i, 1]
        if flip:
            c = edges[j, 1]
            e = edges[j, 0]
        else:
            c = edges[j, 0]
            e = edges[j, 1]
        # {a,b},{c,e} -> {a,e},{c,b}
        if a == e or c == b or a == c or b == e:
            continue
        bad = False
        for t in range(d):
            if nbr[a, t] == e or nbr[c, t] == b:
                bad = True
                break
        if bad:
            continue
        for t in range(d):
            if nbr[a, t] == b:
                nbr[a, t] = e
                break
        for t in range(d):
            if nbr[b, t] == a:
                nbr[b, t] = c
                break
        for t in range(d):
            if nbr[c, t] == e:
                nbr[c, t] = b
                break
        for t in range(d):
            if nbr[e, t] == c:
                nbr[e, t] = a
                break
        edges[i, 0] = a
        edges[i, 1] = e
        edges[j, 0] = c
        edges[j, 1] = b
        accepted += 1
    return accepted


def swap_chain(nbr, edges, steps, seed):
    """Run ``steps`` uniform double-edge-swap proposals in place; return accepted count."""
    return int(_swap_chain(nbr, edges, int(steps), np.uint32(seed)))
