"""Brute-force reference implementations, deliberately independent of mixclock."""

from itertools import combinations

import numpy as np


def brute_max_matching(edges):
    """Size of the largest matching, by exhaustive search over all matchings."""
    edges = sorted(set(edges))

    def best(i, used_t, used_o):
        if i == len(edges):
            return 0
        t, o = edges[i]
        skip = best(i + 1, used_t, used_o)
        if t in used_t or o in used_o:
            return skip
        return max(skip, 1 + best(i + 1, used_t | {t}, used_o | {o}))

    return best(0, frozenset(), frozenset())


def brute_min_cover(edges):
    """Size of the smallest vertex cover, by trying vertex subsets in size order."""
    edges = set(edges)
    verts = sorted({("t", t) for t, _ in edges} | {("o", o) for _, o in edges})
    for k in range(len(verts) + 1):
        for sub in combinations(verts, k):
            s = set(sub)
            if all(("t", t) in s or ("o", o) in s for t, o in edges):
                return k
    raise AssertionError("unreachable")


def floyd_warshall_hb(pairs):
    """Happened-before matrix from the two rules, closed by Floyd-Warshall."""
    n = len(pairs)
    r = np.zeros((n, n), dtype=bool)
    for j in range(n):
        tj, oj = pairs[j]
        for side in (0, 1):
            for i in range(j - 1, -1, -1):
                if pairs[i][side] == pairs[j][side]:
                    r[i, j] = True
                    break
    for k in range(n):
        r |= r[:, [k]] & r[[k], :]
    return r
