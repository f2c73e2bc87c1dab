"""Canonical labelings by lexicographic minimization.

The canonical form of a graph is the lexicographically smallest upper-triangle
adjacency encoding over all vertex orderings, read in the column order
x(0,1), x(0,2), x(1,2), x(0,3), ... (the graph6 bit order).  Two graphs are
isomorphic iff their canonical forms are equal, which makes the form usable as
a dictionary key during enumeration and as the witness tie-breaker.

Search is plain backtracking over orderings with two prunes that keep it exact:
branches whose partial encoding already exceeds the best known one are cut,
and among candidate vertices only one representative per twin class is tried
(twins are swappable by an automorphism, so they yield identical encodings).
Exact for any order; above 12 vertices the cost can still blow up, so callers
must opt in explicitly there.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graphs import Graph

_SAFE_ORDER = 12


@dataclass(frozen=True, order=True)
class CanonicalForm:
    """Order plus the minimized triangle bits (first bit = most significant)."""

    n: int
    bits: int

    def triangle_length(self) -> int:
        return self.n * (self.n - 1) // 2


def _min_order(adj, n: int) -> tuple[list[int], list[int]]:
    """(vertex ordering, column codes) realizing the lex-least encoding."""
    best: list[int] | None = None
    best_order: list[int] | None = None
    cols = [0] * n
    placed: list[int] = []

    def rec(i: int, used: int) -> None:
        nonlocal best, best_order
        if i == n:
            if best is None or cols < best:
                best = cols[:]
                best_order = placed[:]
            return
        cand = []
        seen_open: set[int] = set()
        seen_closed: set[int] = set()
        for v in range(n):
            if (used >> v) & 1:
                continue
            open_key = adj[v]
            closed_key = adj[v] | (1 << v)
            if open_key in seen_open or closed_key in seen_closed:
                continue  # a twin was already offered; same subtree value
            seen_open.add(open_key)
            seen_closed.add(closed_key)
            col = 0
            for u in placed:
                col = (col << 1) | ((adj[u] >> v) & 1)
            cand.append((col, v))
        cand.sort()
        for col, v in cand:
            if best is not None and cols[:i] == best[:i] and col > best[i]:
                break  # candidates are sorted; the rest only get worse
            cols[i] = col
            placed.append(v)
            rec(i + 1, used | (1 << v))
            placed.pop()
        cols[i] = 0

    rec(0, 0)
    assert best is not None and best_order is not None
    return best_order, best


def _cols_to_bits(cols: list[int], n: int) -> int:
    bits = 0
    for v in range(1, n):
        bits = (bits << v) | cols[v]
    return bits


def min_encoding_bits(adj, n: int) -> int:
    """Canonical triangle bits straight from an adjacency row list.

    Fast path for enumeration; equivalent to canonical_form(Graph(n, adj)).bits
    but skips Graph validation and relabeling.
    """
    _, cols = _min_order(adj, n)
    return _cols_to_bits(cols, n)


def _check_size(g: Graph, force: bool) -> None:
    if g.n > _SAFE_ORDER and not force:
        raise ValueError(
            f"canonical form above {_SAFE_ORDER} vertices can be very slow; "
            "pass force=True to run anyway"
        )


def canonical_order(g: Graph, force: bool = False) -> tuple[int, ...]:
    _check_size(g, force)
    order, _ = _min_order(g.adj, g.n)
    return tuple(order)


def canonical_graph(g: Graph, force: bool = False) -> Graph:
    """The canonically relabeled copy of g (vertex i = i-th vertex of the order)."""
    order = canonical_order(g, force)
    n = g.n
    pos = [0] * n
    for i, v in enumerate(order):
        pos[v] = i
    adj = [0] * n
    for i, v in enumerate(order):
        row = g.adj[v]
        while row:
            low = row & -row
            row ^= low
            adj[i] |= 1 << pos[low.bit_length() - 1]
    return Graph(n, adj)


def canonical_form(g: Graph, force: bool = False) -> CanonicalForm:
    _check_size(g, force)
    _, cols = _min_order(g.adj, g.n)
    return CanonicalForm(g.n, _cols_to_bits(cols, g.n))


def graph_from_form(form: CanonicalForm) -> Graph:
    """Rebuild the representative graph from its canonical form."""
    n = form.n
    length = form.triangle_length()
    adj = [0] * n
    idx = 0
    for v in range(1, n):
        for u in range(v):
            if (form.bits >> (length - 1 - idx)) & 1:
                adj[u] |= 1 << v
                adj[v] |= 1 << u
            idx += 1
    return Graph(n, adj)
