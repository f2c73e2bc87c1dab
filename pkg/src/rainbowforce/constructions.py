"""Replication graphs and the clique-padding witness constructions.

A replication graph replaces each vertex of a base graph by a clique (a
"block") and joins two blocks completely iff the base vertices are adjacent.
Both witness constructions below output graphs of this shape whose proper
colorings always contain a rainbow induced copy of the base:

* vertex_clique_witness: one block per base vertex, sized one plus the number
  of non-edges to earlier vertices (in a configurable vertex order).  Total
  order is n plus the number of non-edges of the base.
* block_clique_witness: same idea run on the quotient by twin classes
  (maximal cliques of mutually interchangeable vertices), which never does
  worse and often much better.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .graphs import Graph, GraphError, MAX_VERTICES, from_edges


@dataclass(frozen=True)
class ReplicationStructure:
    """A replication graph together with its block bookkeeping.

    base: the graph whose vertices were expanded.
    sizes: block size per base vertex.
    expanded: the replication graph itself; block i occupies a consecutive
        vertex range, in base-vertex order.
    clique_of: expanded vertex -> base vertex.
    base_members: base vertex -> tuple of vertices of the *original* graph it
        stands for.  Identity singletons for plain replications; the twin
        classes when the base is a quotient.
    """

    base: Graph
    sizes: tuple[int, ...]
    expanded: Graph
    clique_of: tuple[int, ...]
    base_members: tuple[tuple[int, ...], ...]

    def blocks(self) -> list[tuple[int, ...]]:
        """Expanded vertices of each block, in base-vertex order."""
        out: list[list[int]] = [[] for _ in range(self.base.n)]
        for v, b in enumerate(self.clique_of):
            out[b].append(v)
        return [tuple(b) for b in out]


def replication_graph(
    base: Graph,
    sizes: Sequence[int],
    base_members: Optional[Sequence[Sequence[int]]] = None,
) -> ReplicationStructure:
    sizes = tuple(sizes)
    if len(sizes) != base.n:
        raise GraphError(
            f"need one block size per base vertex: {len(sizes)} for order {base.n}"
        )
    if any(s < 1 for s in sizes):
        raise GraphError(f"block sizes must be positive, got {sizes}")
    total = sum(sizes)
    if total > MAX_VERTICES:
        raise GraphError(f"expanded order {total} exceeds the {MAX_VERTICES} cap")
    offsets = []
    off = 0
    for s in sizes:
        offsets.append(off)
        off += s
    clique_of = []
    for b, s in enumerate(sizes):
        clique_of.extend([b] * s)
    edges = []
    for b in range(base.n):
        ob, sb = offsets[b], sizes[b]
        for i in range(sb):
            for j in range(i + 1, sb):
                edges.append((ob + i, ob + j))
        for c in range(b + 1, base.n):
            if base.has_edge(b, c):
                oc, sc = offsets[c], sizes[c]
                for i in range(sb):
                    for j in range(sc):
                        edges.append((ob + i, oc + j))
    if base_members is None:
        members = tuple((v,) for v in range(base.n))
    else:
        members = tuple(tuple(m) for m in base_members)
        if len(members) != base.n:
            raise GraphError("base_members must name one tuple per base vertex")
    return ReplicationStructure(
        base=base,
        sizes=sizes,
        expanded=from_edges(total, edges),
        clique_of=tuple(clique_of),
        base_members=members,
    )


def replication_cliques(g: Graph) -> tuple[tuple[int, ...], ...]:
    """Partition into maximal twin cliques.

    Two adjacent vertices belong together iff they have the same neighbors
    elsewhere (equal closed neighborhoods); everything else is a singleton.
    Blocks are ordered by smallest member.
    """
    groups: dict[int, list[int]] = {}
    for v in range(g.n):
        groups.setdefault(g.adj[v] | (1 << v), []).append(v)
    blocks = sorted(groups.values(), key=lambda b: b[0])
    return tuple(tuple(b) for b in blocks)


def _validate_order(order: Sequence[int], n: int, what: str) -> tuple[int, ...]:
    order = tuple(order)
    if sorted(order) != list(range(n)):
        raise GraphError(f"{what} must be a permutation of 0..{n - 1}, got {order}")
    return order


def vertex_clique_witness(
    h: Graph, vertex_order: Optional[Sequence[int]] = None
) -> ReplicationStructure:
    """Blocks sized one plus the count of non-neighbors among earlier vertices.

    Every proper coloring of the expanded graph contains a rainbow induced
    copy of h.  The expanded order is h.n plus the number of non-edges of h,
    for any vertex order.
    """
    n = h.n
    if vertex_order is None:
        order = tuple(range(n))
    else:
        order = _validate_order(vertex_order, n, "vertex_order")
    sizes = [0] * n
    for i, v in enumerate(order):
        missing = 0
        for j in range(i):
            if not h.has_edge(v, order[j]):
                missing += 1
        sizes[v] = 1 + missing
    return replication_graph(h, sizes)


def quotient_graph(g: Graph) -> tuple[Graph, tuple[tuple[int, ...], ...]]:
    """Collapse each twin clique to one vertex; returns (quotient, classes)."""
    blocks = replication_cliques(g)
    reps = [b[0] for b in blocks]
    edges = [
        (i, j)
        for i in range(len(reps))
        for j in range(i + 1, len(reps))
        if g.has_edge(reps[i], reps[j])
    ]
    return from_edges(len(reps), edges), blocks


def block_clique_witness(
    h: Graph, block_order: Optional[Sequence[int]] = None
) -> ReplicationStructure:
    """Like vertex_clique_witness but on the twin-class quotient.

    Each quotient block starts at its class size and grows by one per
    non-neighbor vertex placed earlier in block_order (default: nondecreasing
    class size, ties by smallest member).  The expanded graph is a replication
    graph of h itself, and every proper coloring contains a rainbow copy of h
    meeting each block in exactly one vertex per quotient position.
    """
    quotient, blocks = quotient_graph(h)
    s = len(blocks)
    if block_order is None:
        order = tuple(sorted(range(s), key=lambda b: (len(blocks[b]), blocks[b][0])))
    else:
        order = _validate_order(block_order, s, "block_order")
    sizes = [0] * s
    for i, b in enumerate(order):
        extra = 0
        for j in range(i):
            c = order[j]
            if not quotient.has_edge(b, c):
                extra += len(blocks[c])
        sizes[b] = len(blocks[b]) + extra
    return replication_graph(quotient, sizes, base_members=blocks)
