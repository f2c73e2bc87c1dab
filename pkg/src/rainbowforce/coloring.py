"""Exact chromatic numbers for the small graphs this package works with.

Strategy: a maximum clique gives the lower bound, a saturation-greedy
coloring the upper bound, and a backtracking k-colorability test closes the
gap.  All loops work on the adjacency bitmasks directly.
"""

from __future__ import annotations

from .graphs import Graph


def max_clique_size(g: Graph) -> int:
    n = g.n
    adj = g.adj
    best = 0

    def extend(size: int, cand: int) -> None:
        nonlocal best
        if size > best:
            best = size
        # optimistic bound: current size plus everything still allowed
        if size + bin(cand).count("1") <= best:
            return
        while cand:
            low = cand & -cand
            v = low.bit_length() - 1
            cand ^= low
            if size + bin(cand).count("1") + 1 <= best:
                return
            extend(size + 1, cand & adj[v])

    extend(0, (1 << n) - 1)
    return best


def greedy_coloring(g: Graph) -> list[int]:
    """Saturation-first greedy; returns a proper coloring (upper bound witness)."""
    n = g.n
    adj = g.adj
    colors = [-1] * n
    neighbor_colors = [0] * n  # bitmask of colors seen next door
    for _ in range(n):
        pick = -1
        pick_key = (-1, -1, 0)
        for v in range(n):
            if colors[v] >= 0:
                continue
            key = (bin(neighbor_colors[v]).count("1"), g.degree(v), -v)
            if key > pick_key:
                pick_key = key
                pick = v
        c = 0
        while (neighbor_colors[pick] >> c) & 1:
            c += 1
        colors[pick] = c
        row = adj[pick]
        while row:
            low = row & -row
            row ^= low
            neighbor_colors[low.bit_length() - 1] |= 1 << c
    return colors


def _k_colorable(g: Graph, k: int) -> bool:
    n = g.n
    adj = g.adj
    colors = [-1] * n
    neighbor_colors = [0] * n

    def rec(done: int, used: int) -> bool:
        if done == n:
            return True
        # most saturated uncolored vertex, ties by degree then index
        pick = -1
        pick_key = (-1, -1, 0)
        for v in range(n):
            if colors[v] < 0:
                key = (bin(neighbor_colors[v]).count("1"), g.degree(v), -v)
                if key > pick_key:
                    pick_key = key
                    pick = v
        v = pick
        cap = min(used + 1, k)  # one fresh color at most: they are symmetric
        for c in range(cap):
            if (neighbor_colors[v] >> c) & 1:
                continue
            colors[v] = c
            touched = []
            row = adj[v]
            while row:
                low = row & -row
                row ^= low
                u = low.bit_length() - 1
                if not (neighbor_colors[u] >> c) & 1:
                    neighbor_colors[u] |= 1 << c
                    touched.append(u)
            if rec(done + 1, max(used, c + 1)):
                return True
            for u in touched:
                neighbor_colors[u] &= ~(1 << c)
            colors[v] = -1
        return False

    return rec(0, 0)


def chromatic_number(g: Graph) -> int:
    if g.edge_count() == 0:
        return 1
    low = max_clique_size(g)
    high = max(greedy_coloring(g)) + 1
    k = low
    while k < high and not _k_colorable(g, k):
        k += 1
    return k
