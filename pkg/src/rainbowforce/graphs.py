"""Small simple graphs as tuples of adjacency bitmasks.

A graph on n vertices (1 <= n <= 64) is stored as one Python int per vertex;
bit u of adj[v] is set iff uv is an edge.  Everything downstream (isomorphism,
coloring search, enumeration) works on these masks directly, so Graph objects
are immutable and hashable.

Also here: graph6 encoding/decoding, a plain edge-list text format, the family
builders (paths, cliques, stars, ...) and brute-force isomorphism / induced
containment tests.
"""

from __future__ import annotations

from itertools import combinations
from typing import Iterable, Iterator, Optional, Sequence

MAX_VERTICES = 64


class GraphError(ValueError):
    """Malformed graph input (bad mask, bad graph6, bad edge list)."""


class Graph:
    __slots__ = ("n", "adj")

    def __init__(self, n: int, adj: Sequence[int]):
        if not 1 <= n <= MAX_VERTICES:
            raise GraphError(f"order must be in 1..{MAX_VERTICES}, got {n}")
        if len(adj) != n:
            raise GraphError(f"adjacency has {len(adj)} rows for order {n}")
        full = (1 << n) - 1
        for v, row in enumerate(adj):
            if row & ~full:
                raise GraphError(f"row {v} has bits beyond vertex {n - 1}")
            if (row >> v) & 1:
                raise GraphError(f"loop at vertex {v}")
        for v in range(n):
            for u in range(v):
                if ((adj[v] >> u) & 1) != ((adj[u] >> v) & 1):
                    raise GraphError(f"asymmetric pair ({u}, {v})")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "adj", tuple(adj))

    def __setattr__(self, name, value):
        raise AttributeError("Graph is immutable")

    def __eq__(self, other):
        return isinstance(other, Graph) and self.n == other.n and self.adj == other.adj

    def __hash__(self):
        return hash((self.n, self.adj))

    def __repr__(self):
        return f"Graph({self.n}, {to_graph6(self)!r})"

    def has_edge(self, u: int, v: int) -> bool:
        return bool((self.adj[u] >> v) & 1)

    def degree(self, v: int) -> int:
        return bin(self.adj[v]).count("1")

    def degree_sequence(self) -> tuple[int, ...]:
        return tuple(sorted((self.degree(v) for v in range(self.n)), reverse=True))

    def edges(self) -> list[tuple[int, int]]:
        out = []
        for v in range(self.n):
            row = self.adj[v] >> (v + 1)
            u = v + 1
            while row:
                if row & 1:
                    out.append((v, u))
                row >>= 1
                u += 1
        return out

    def edge_count(self) -> int:
        return sum(self.degree(v) for v in range(self.n)) // 2


def from_edges(n: int, edges: Iterable[tuple[int, int]]) -> Graph:
    """Build a graph from 0-based endpoint pairs; rejects loops and bad ids."""
    adj = [0] * n
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"edge ({u}, {v}) outside 0..{n - 1}")
        if u == v:
            raise GraphError(f"loop at vertex {u}")
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    return Graph(n, adj)


# ---------------------------------------------------------------------------
# graph6

def _triangle_bits(g: Graph) -> list[int]:
    # column order: x(0,1), x(0,2), x(1,2), x(0,3), ... matches graph6
    bits = []
    for v in range(1, g.n):
        for u in range(v):
            bits.append((g.adj[u] >> v) & 1)
    return bits


def to_graph6(g: Graph) -> str:
    n = g.n
    if n <= 62:
        head = [63 + n]
    else:
        head = [126, 63 + (n >> 12), 63 + ((n >> 6) & 63), 63 + (n & 63)]
    bits = _triangle_bits(g)
    while len(bits) % 6:
        bits.append(0)
    body = []
    for i in range(0, len(bits), 6):
        word = 0
        for b in bits[i : i + 6]:
            word = (word << 1) | b
        body.append(63 + word)
    return "".join(chr(c) for c in head + body)


def parse_graph6(text: str) -> Graph:
    """Decode one graph6 string; errors name the offending byte offset."""
    s = text.strip()
    if not s:
        raise GraphError("empty graph6 string")
    data = []
    for i, ch in enumerate(s):
        c = ord(ch)
        if not 63 <= c <= 126:
            raise GraphError(f"byte {i} ({ch!r}) outside graph6 range 63..126")
        data.append(c - 63)
    if data[0] < 63:
        n = data[0]
        body = data[1:]
    else:
        if len(data) < 4:
            raise GraphError("truncated extended-order header at byte 0")
        n = (data[1] << 12) | (data[2] << 6) | data[3]
        body = data[4:]
    if n < 1:
        raise GraphError("graph6 order 0 not supported (need 1..64 vertices)")
    if n > MAX_VERTICES:
        raise GraphError(f"graph6 order {n} exceeds the {MAX_VERTICES}-vertex cap")
    nbits = n * (n - 1) // 2
    want = (nbits + 5) // 6
    if len(body) != want:
        raise GraphError(
            f"graph6 body has {len(body)} bytes, order {n} needs {want}"
        )
    adj = [0] * n
    idx = 0
    for v in range(1, n):
        for u in range(v):
            word = body[idx // 6]
            bit = (word >> (5 - idx % 6)) & 1
            if bit:
                adj[u] |= 1 << v
                adj[v] |= 1 << u
            idx += 1
    # padding bits must be zero
    while idx < 6 * len(body):
        if (body[idx // 6] >> (5 - idx % 6)) & 1:
            raise GraphError(f"nonzero padding bit {idx} in final byte")
        idx += 1
    return Graph(n, adj)


# ---------------------------------------------------------------------------
# edge-list text format: first line "n m", then m lines "u v" (0-based)

def parse_edge_list(text: str) -> Graph:
    lines = [ln for ln in (raw.strip() for raw in text.splitlines()) if ln]
    if not lines:
        raise GraphError("empty edge-list text")
    head = lines[0].split()
    if len(head) != 2:
        raise GraphError(f"header must be 'n m', got {lines[0]!r}")
    try:
        n, m = int(head[0]), int(head[1])
    except ValueError:
        raise GraphError(f"non-integer header {lines[0]!r}") from None
    if len(lines) - 1 != m:
        raise GraphError(f"header promises {m} edges, found {len(lines) - 1} lines")
    edges = []
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 2:
            raise GraphError(f"edge line must be 'u v', got {ln!r}")
        edges.append((int(parts[0]), int(parts[1])))
    return from_edges(n, edges)


def format_edge_list(g: Graph) -> str:
    edges = g.edges()
    lines = [f"{g.n} {len(edges)}"]
    lines.extend(f"{u} {v}" for u, v in edges)
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# families

def path(n: int) -> Graph:
    _check_order(n)
    return from_edges(n, [(i, i + 1) for i in range(n - 1)])


def clique(n: int) -> Graph:
    _check_order(n)
    return from_edges(n, combinations(range(n), 2))


def anticlique(n: int) -> Graph:
    _check_order(n)
    return Graph(n, [0] * n)


def star(n: int) -> Graph:
    """K_{1,n-1}: vertex 0 is the center."""
    _check_order(n)
    return from_edges(n, [(0, i) for i in range(1, n)])


def cycle(n: int) -> Graph:
    if n < 3:
        raise GraphError(f"cycle needs at least 3 vertices, got {n}")
    _check_order(n)
    return from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def complete_multipartite(sizes: Sequence[int]) -> Graph:
    """All edges between distinct classes, none inside a class."""
    sizes = tuple(sizes)
    if not sizes or any(s < 1 for s in sizes):
        raise GraphError(f"class sizes must be positive, got {sizes}")
    n = sum(sizes)
    _check_order(n)
    class_of = []
    for i, s in enumerate(sizes):
        class_of.extend([i] * s)
    edges = [
        (u, v)
        for u, v in combinations(range(n), 2)
        if class_of[u] != class_of[v]
    ]
    return from_edges(n, edges)


def turan(n: int, r: int) -> Graph:
    """Complete r-partite graph on n vertices with class sizes differing by <= 1."""
    _check_order(n)
    if not 1 <= r <= n:
        raise GraphError(f"need 1 <= r <= n, got r={r}, n={n}")
    q, s = divmod(n, r)
    sizes = [q + 1] * s + [q] * (r - s)
    return complete_multipartite(sizes)


def disjoint_union(*graphs: Graph) -> Graph:
    if not graphs:
        raise GraphError("disjoint_union of nothing")
    n = sum(g.n for g in graphs)
    _check_order(n)
    adj = []
    off = 0
    for g in graphs:
        adj.extend(row << off for row in g.adj)
        off += g.n
    return Graph(n, adj)


def join(g1: Graph, g2: Graph) -> Graph:
    """Disjoint union plus every edge between the two parts."""
    n = g1.n + g2.n
    _check_order(n)
    high = (((1 << g2.n) - 1) << g1.n)
    low = (1 << g1.n) - 1
    adj = [row | high for row in g1.adj]
    adj.extend((row << g1.n) | low for row in g2.adj)
    return Graph(n, adj)


def union_with_edges(
    g1: Graph, g2: Graph, cross_edges: Iterable[tuple[int, int]]
) -> Graph:
    """Disjoint union plus the given (g1-vertex, g2-vertex) edges."""
    n = g1.n + g2.n
    _check_order(n)
    adj = [row for row in g1.adj]
    adj.extend(row << g1.n for row in g2.adj)
    g = Graph(n, adj)
    extra = []
    for u, v in cross_edges:
        if not (0 <= u < g1.n and 0 <= v < g2.n):
            raise GraphError(f"cross edge ({u}, {v}) out of range")
        extra.append((u, g1.n + v))
    return from_edges(n, g.edges() + extra)


def _check_order(n: int) -> None:
    if not 1 <= n <= MAX_VERTICES:
        raise GraphError(f"order must be in 1..{MAX_VERTICES}, got {n}")


# ---------------------------------------------------------------------------
# complement and non-edges

def complement(g: Graph) -> Graph:
    full = (1 << g.n) - 1
    return Graph(g.n, [(~row & full) & ~(1 << v) for v, row in enumerate(g.adj)])


def count_non_edges(g: Graph) -> int:
    return g.n * (g.n - 1) // 2 - g.edge_count()


def connected_components(g: Graph) -> list[tuple[int, ...]]:
    """Vertex sets of the components, each sorted, ordered by smallest member."""
    seen = 0
    comps = []
    for v in range(g.n):
        if (seen >> v) & 1:
            continue
        comp = 1 << v
        frontier = 1 << v
        while frontier:
            nxt = 0
            while frontier:
                low = frontier & -frontier
                frontier ^= low
                nxt |= g.adj[low.bit_length() - 1]
            frontier = nxt & ~comp
            comp |= frontier
        seen |= comp
        members = []
        m = comp
        while m:
            low = m & -m
            m ^= low
            members.append(low.bit_length() - 1)
        comps.append(tuple(members))
    return comps


# ---------------------------------------------------------------------------
# isomorphism (plain backtracking, independent of canonical forms)

def is_isomorphic(g: Graph, h: Graph) -> bool:
    if g.n != h.n:
        return False
    if g.edge_count() != h.edge_count():
        return False
    if g.degree_sequence() != h.degree_sequence():
        return False
    n = g.n
    gdeg = [g.degree(v) for v in range(n)]
    hdeg = [h.degree(v) for v in range(n)]
    # map g-vertices in descending-degree order to cut the branching early
    order = sorted(range(n), key=lambda v: (-gdeg[v], v))
    image = [-1] * n
    used = 0

    def extend(i: int) -> bool:
        nonlocal used
        if i == n:
            return True
        v = order[i]
        for w in range(n):
            if (used >> w) & 1 or hdeg[w] != gdeg[v]:
                continue
            ok = True
            for j in range(i):
                u = order[j]
                if ((g.adj[v] >> u) & 1) != ((h.adj[w] >> image[u]) & 1):
                    ok = False
                    break
            if ok:
                image[v] = w
                used |= 1 << w
                if extend(i + 1):
                    return True
                used &= ~(1 << w)
                image[v] = -1
        return False

    return extend(0)


def contains_induced(g: Graph, h: Graph) -> bool:
    """True iff some vertex subset of g induces a graph isomorphic to h."""
    if h.n > g.n:
        raise GraphError(f"pattern order {h.n} exceeds host order {g.n}")
    n, k = g.n, h.n
    hdeg = [h.degree(v) for v in range(k)]
    # place pattern vertices by descending degree, ties by index
    order = sorted(range(k), key=lambda v: (-hdeg[v], v))
    # earlier-position adjacency of each placed vertex, as position masks
    back_adj = []
    for i, v in enumerate(order):
        mask = 0
        for j in range(i):
            if h.has_edge(v, order[j]):
                mask |= 1 << j
        back_adj.append(mask)
    full = (1 << n) - 1
    chosen = [0] * k

    def extend(i: int, avail: int) -> bool:
        if i == k:
            return True
        cand = avail
        while cand:
            low = cand & -cand
            cand ^= low
            w = low.bit_length() - 1
            row = g.adj[w]
            ok = True
            for j in range(i):
                if ((row >> chosen[j]) & 1) != ((back_adj[i] >> j) & 1):
                    ok = False
                    break
            if ok:
                chosen[i] = w
                if extend(i + 1, avail & ~low):
                    return True
        return False

    return extend(0, full)


def induced_subgraph(g: Graph, vertices: Sequence[int]) -> Graph:
    """Subgraph induced on the given vertices, relabeled 0..k-1 in list order."""
    verts = list(vertices)
    k = len(verts)
    if len(set(verts)) != k:
        raise GraphError("duplicate vertices in induced_subgraph")
    adj = [0] * k
    for i, v in enumerate(verts):
        for j, u in enumerate(verts):
            if i != j and g.has_edge(v, u):
                adj[i] |= 1 << j
    return Graph(k, adj)
