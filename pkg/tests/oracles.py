"""Brute-force references used by the tests.

Each oracle is deliberately naive and shares no code with the package.
"""
from collections import deque
from fractions import Fraction
from functools import lru_cache
from math import gcd

import numpy as np


def hyperbinary_count(n):
    """Ways to write n as a sum of powers of two, each used at most twice."""

    @lru_cache(maxsize=None)
    def ways(m, k):
        # powers 2^k, 2^(k+1), ... still available
        if m == 0:
            return 1
        p = 1 << k
        if p > m:
            return 0
        return sum(ways(m - t * p, k + 1) for t in range(3) if t * p <= m)

    return ways(n, 0)


def bfs_by_queue(count):
    """BFS of the tree p/q -> p/(p+q), (p+q)/q with an explicit queue."""
    out = []
    queue = deque([(1, 1)])
    while len(out) < count:
        p, q = queue.popleft()
        out.append(Fraction(p, q))
        queue.append((p, p + q))
        queue.append((p + q, q))
    return out


def index_by_parent_walk(x):
    """BFS index of x via repeated single-step parents (no run compression)."""
    p, q = x.numerator, x.denominator
    bits = []
    while p != q:
        if p < q:
            bits.append("0")
            q -= p
        else:
            bits.append("1")
            p -= q
    return int("1" + "".join(reversed(bits)), 2) - 1


def diophantine_search(p, q):
    """Every (a, b, c, d) >= 0 with a+b=p, c+d=q, ad-bc=1, by exhaustive grid."""
    a, c = np.meshgrid(np.arange(p + 1), np.arange(q + 1), indexing="ij")
    b, d = p - a, q - c
    hit = a * d - b * c == 1
    return [tuple(int(v) for v in t) for t in zip(a[hit], b[hit], c[hit], d[hit])]


def point_counts_brute(n):
    """counts[N] = #{x in P^1(Q): H(x) <= N} for N <= n from the full integer grid."""
    r = np.arange(-n, n + 1)
    x0, x1 = np.meshgrid(r, r, indexing="ij")
    x0, x1 = x0.ravel(), x1.ravel()
    canonical = (x1 > 0) | ((x1 == 0) & (x0 == 1))
    keep = canonical & (np.gcd(x0, x1) == 1)
    h = np.maximum(np.abs(x0[keep]), np.abs(x1[keep]))
    return np.cumsum(np.bincount(h, minlength=n + 1))


def matrix_product(word):
    a, b, c, d = 1, 0, 0, 1
    for ch in word:
        if ch == "L":
            a, b, c, d = a + b, b, c + d, d
        else:
            a, b, c, d = a, a + b, c, c + d
    return a, b, c, d


def proj_height(x0, x1):
    g = gcd(x0, x1)
    return max(abs(x0), abs(x1)) // g
