"""Independent reference implementations used by the tests.

None of these import the polyhedral kernel: they work on plain lists of
Fractions so that agreement with the library is meaningful.
"""
from __future__ import annotations

import itertools
from collections import deque
from fractions import Fraction


def naive_fm_feasible(rows) -> bool:
    """Feasibility of ``a.z + b >= 0`` rows by textbook Fourier-Motzkin."""
    rows = [[Fraction(x) for x in r] for r in rows]
    if not rows:
        return True
    dim = len(rows[0]) - 1
    for j in range(dim):
        pos = [r for r in rows if r[j] > 0]
        neg = [r for r in rows if r[j] < 0]
        out = [r for r in rows if r[j] == 0]
        for p in pos:
            for q in neg:
                out.append([p[i] * -q[j] + q[i] * p[j] for i in range(dim + 1)])
        # normalise and dedupe so the naive run stays small
        seen = set()
        rows = []
        for r in out:
            scale = max((abs(x) for x in r[:dim]), default=0) or 1
            key = tuple(x / scale for x in r)
            if key not in seen:
                seen.add(key)
                rows.append(list(key))
    return all(r[dim] >= 0 for r in rows)


def satisfies(rows, z) -> bool:
    return all(sum(Fraction(a) * Fraction(x) for a, x in zip(r, z)) + Fraction(r[-1]) >= 0
               for r in rows)


def grid_has_extension(rows, dim, pinned: dict, grid) -> bool:
    """Search ``grid`` for values of the unpinned variables satisfying every row."""
    free = [i for i in range(dim) if i not in pinned]
    for vals in itertools.product(grid, repeat=len(free)):
        z = [None] * dim
        for i, v in pinned.items():
            z[i] = v
        for i, v in zip(free, vals):
            z[i] = v
        if satisfies(rows, z):
            return True
    return False


def edmonds_karp(nodes, source, sink, edges):
    """Max flow by shortest augmenting paths on exact rationals; capacities
    ``None`` mean unbounded (reported as ``inf`` if a path of them exists)."""
    idx = {v: i for i, v in enumerate(nodes)}
    n = len(nodes)
    INF = None
    cap = [[Fraction(0)] * n for _ in range(n)]
    unbounded = [[False] * n for _ in range(n)]
    for a, b, c in edges:
        if c is INF:
            unbounded[idx[a]][idx[b]] = True
        else:
            cap[idx[a]][idx[b]] += Fraction(c)
    # an all-unbounded path makes the flow infinite
    reach = {idx[source]}
    queue = deque([idx[source]])
    while queue:
        u = queue.popleft()
        for v in range(n):
            if unbounded[u][v] and v not in reach:
                reach.add(v)
                queue.append(v)
    if idx[sink] in reach:
        return float("inf")
    big = sum((c for row in cap for c in row), Fraction(0)) + 1
    for u in range(n):
        for v in range(n):
            if unbounded[u][v]:
                cap[u][v] += big
    flow = Fraction(0)
    s, t = idx[source], idx[sink]
    while True:
        parent = [-1] * n
        parent[s] = s
        queue = deque([s])
        while queue and parent[t] == -1:
            u = queue.popleft()
            for v in range(n):
                if parent[v] == -1 and cap[u][v] > 0:
                    parent[v] = u
                    queue.append(v)
        if parent[t] == -1:
            return flow
        bottleneck = None
        v = t
        while v != s:
            u = parent[v]
            bottleneck = cap[u][v] if bottleneck is None else min(bottleneck, cap[u][v])
            v = u
        v = t
        while v != s:
            u = parent[v]
            cap[u][v] -= bottleneck
            cap[v][u] += bottleneck
            v = u
        flow += bottleneck


def naive_mat_mul(rows, x):
    return tuple(sum((Fraction(a) * Fraction(b) for a, b in zip(r, x)), Fraction(0)) for r in rows)
