"""Brute-force reference implementations, written independently of the package.

Graphs are built as Python dicts straight from the +-e_k definition,
ranks come from Fraction Gaussian elimination, and the Fourier matrix from
the character formula.  Slow, but small enough to trust by reading.
"""

import itertools
from fractions import Fraction

import numpy as np


def signed(m, x):
    x %= m
    return x - m if x > m // 2 else x


def vertices(m, N):
    return [tuple(signed(m, c) for c in v) for v in itertools.product(range(m), repeat=N)]


def graph(m, N):
    adj = {}
    for v in vertices(m, N):
        nb = []
        for k in range(N):
            for s in (1, -1):
                w = list(v)
                w[k] = signed(m, w[k] + s)
                nb.append(tuple(w))
        adj[v] = nb
    return adj


def dist(v):
    return sum(abs(c) for c in v)


def apply(adj, f, kind="A"):
    """Apply A, A_+, A_- or A_0 to a dict vertex function."""
    out = {v: 0 for v in adj}
    for v, nbrs in adj.items():
        for w in nbrs:
            if kind == "A" or (kind == "+" and dist(w) == dist(v) - 1) \
                    or (kind == "-" and dist(w) == dist(v) + 1) or (kind == "0" and dist(w) == dist(v)):
                out[v] += f.get(w, 0)
    return out


def delta(v):
    return {v: 1}


def frac_rank(rows):
    M = [[Fraction(x) for x in r] for r in rows]
    if not M:
        return 0
    rk, cols = 0, len(M[0])
    for c in range(cols):
        piv = next((i for i in range(rk, len(M)) if M[i][c] != 0), None)
        if piv is None:
            continue
        M[rk], M[piv] = M[piv], M[rk]
        for i in range(len(M)):
            if i != rk and M[i][c] != 0:
                t = M[i][c] / M[rk][c]
                M[i] = [a - t * b for a, b in zip(M[i], M[rk])]
        rk += 1
    return rk


def dense(adj, order, kind="A"):
    idx = {v: i for i, v in enumerate(order)}
    n = len(order)
    M = np.zeros((n, n), dtype=np.int64)
    for v in order:
        g = {v: 1}
        out = apply(adj, g, kind)
        for w, x in out.items():
            if x:
                M[idx[w], idx[v]] += x
    return M


def fourier(order, m):
    n = len(order)
    F = np.empty((n, n), dtype=complex)
    for i, u in enumerate(order):
        for j, v in enumerate(order):
            F[i, j] = np.exp(-2j * np.pi * sum(a * b for a, b in zip(u, v)) / m)
    return F / np.sqrt(n)
