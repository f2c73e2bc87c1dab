"""Exhaustive coloring search deciding whether a graph forces rainbow copies.

`arrows(g, h)` asks: does every proper vertex coloring of g contain an induced
subgraph isomorphic to h whose vertices all received distinct colors?  The
search walks proper colorings depth-first in a fixed vertex order, writing
colors in restricted-growth form (the i-th assigned vertex gets a color at
most one above the maximum so far), which visits exactly one representative
per color-renaming class.  A branch is cut as soon as its colored prefix
already contains a rainbow induced copy, because extending the coloring never
destroys one.  Reaching a total coloring therefore yields a counterexample
("bad coloring"); exhausting the tree proves forcing.

`arrows_replication` is the stricter block variant for replication graphs:
the rainbow copy must pick exactly one vertex from each block, which reduces
to a bipartite matching between blocks and colors.

`oracle_arrows` is a deliberately naive re-implementation (enumerate every
restricted-growth coloring, test properness edge by edge, look for rainbow
copies by subset enumeration) used to cross-check the optimized search on
small graphs.  It shares no search machinery with the fast path.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from itertools import combinations, product
from typing import Optional, Sequence

from .constructions import ReplicationStructure, replication_graph
from .graphs import (
    Graph,
    GraphError,
    induced_subgraph,
    is_isomorphic,
    parse_graph6,
    to_graph6,
)


class ImproperColoringError(ValueError):
    """A coloring handed to a rainbow check was partial or not proper."""


class PatternTooLargeError(ValueError):
    """The pattern has more vertices than the host graph."""


class BudgetExceededError(RuntimeError):
    """Node budget ran out before the search finished; carries partial stats."""

    def __init__(self, stats: "SearchStats"):
        super().__init__(f"node budget exhausted after {stats.nodes} expansions")
        self.stats = stats


@dataclass
class SearchStats:
    nodes: int = 0
    prunes: int = 0
    max_depth: int = 0
    wall_time: float = 0.0


@dataclass(frozen=True)
class ArrowCertificate:
    """Outcome of one forcing check.

    arrows: True if every proper coloring contains the rainbow target.
    bad_coloring: when arrows is False, the first counterexample in search
        order (the lexicographically least restricted-growth coloring along
        the assignment order), indexed by vertex.
    """

    arrows: bool
    mode: str  # "r" (induced copy) or "R" (one vertex per block)
    bad_coloring: Optional[tuple[int, ...]]
    vertex_order: tuple[int, ...]
    stats: SearchStats


def default_vertex_order(g: Graph) -> tuple[int, ...]:
    """Ascending degree, ties by index.

    Small cliques hanging off the dense part are exactly where rainbow copies
    complete, so coloring them early lets the prefix prune fire near the
    root; measured on the clique-padding witnesses this beats descending
    order by several orders of magnitude.
    """
    return tuple(sorted(range(g.n), key=lambda v: (g.degree(v), v)))


def check_proper(g: Graph, coloring: Sequence[int]) -> tuple[int, ...]:
    """Validate a total proper coloring; returns it as a tuple."""
    if len(coloring) != g.n:
        raise ImproperColoringError(
            f"coloring names {len(coloring)} vertices, graph has {g.n}"
        )
    cols = []
    for v, c in enumerate(coloring):
        if not isinstance(c, int) or isinstance(c, bool) or c < 0:
            raise ImproperColoringError(f"vertex {v} has no valid color: {c!r}")
        cols.append(c)
    for u, v in g.edges():
        if cols[u] == cols[v]:
            raise ImproperColoringError(
                f"edge ({u}, {v}) is monochromatic in color {cols[u]}"
            )
    return tuple(cols)


class ColoringState:
    """Partial proper coloring built along a fixed vertex order.

    Colors are restricted-growth: the next assignment may reuse any color not
    on a neighbor, or open max+1.  Used by tests and by callers replaying
    engine prefixes; the search itself keeps its state in raw arrays.
    """

    __slots__ = ("graph", "order", "colors", "depth", "distinct")

    def __init__(self, graph: Graph, order: Optional[Sequence[int]] = None):
        self.graph = graph
        self.order = default_vertex_order(graph) if order is None else tuple(order)
        if sorted(self.order) != list(range(graph.n)):
            raise GraphError(f"order must be a permutation, got {self.order}")
        self.colors = [-1] * graph.n
        self.depth = 0
        self.distinct = 0

    def next_vertex(self) -> int:
        return self.order[self.depth]

    def legal_colors(self) -> list[int]:
        v = self.next_vertex()
        out = []
        for c in range(min(self.distinct + 1, self.graph.n)):
            row = self.graph.adj[v]
            ok = True
            while row:
                low = row & -row
                row ^= low
                if self.colors[low.bit_length() - 1] == c:
                    ok = False
                    break
            if ok:
                out.append(c)
        return out

    def assign(self, color: int) -> None:
        if self.depth >= self.graph.n:
            raise ImproperColoringError("coloring already total")
        if color < 0 or color > self.distinct:
            raise ImproperColoringError(
                f"color {color} breaks restricted growth (next fresh color is "
                f"{self.distinct})"
            )
        v = self.next_vertex()
        if color not in self.legal_colors():
            raise ImproperColoringError(f"color {color} clashes at vertex {v}")
        self.colors[v] = color
        self.depth += 1
        if color == self.distinct:
            self.distinct += 1

    def retract(self) -> None:
        if self.depth == 0:
            raise ImproperColoringError("nothing assigned")
        self.depth -= 1
        v = self.order[self.depth]
        top = self.distinct - 1
        if self.colors[v] == top and self.colors.count(top) == 1:
            self.distinct -= 1
        self.colors[v] = -1

    def is_total(self) -> bool:
        return self.depth == self.graph.n

    def coloring(self) -> tuple[int, ...]:
        return tuple(self.colors)


# ---------------------------------------------------------------------------
# rainbow copy search (shared by the public finder and the engine prune)

def _pattern_order(h: Graph):
    """Placement order (descending degree, ties by index), backward adjacency
    masks per position and degrees per position."""
    order = tuple(sorted(range(h.n), key=lambda v: (-h.degree(v), v)))
    back = []
    for i, v in enumerate(order):
        m = 0
        for j in range(i):
            if h.has_edge(v, order[j]):
                m |= 1 << j
        back.append(m)
    degs = tuple(h.degree(v) for v in order)
    return order, tuple(back), degs


def _embed_run(gadj, colors, masks, back, k, chosen):
    """DFS over pattern positions; masks[i] holds the structurally allowed
    hosts for position i and is refined as vertices are placed."""

    def rec(i, used_verts, used_colors):
        cand = masks[i] & ~used_verts
        while cand:
            low = cand & -cand
            cand ^= low
            w = low.bit_length() - 1
            cbit = 1 << colors[w]
            if used_colors & cbit:
                continue
            chosen[i] = w
            if i + 1 == k:
                return True
            row = gadj[w]
            saved = masks[i + 1 :]
            ok = True
            for t in range(i + 1, k):
                nm = masks[t] & (row if (back[t] >> i) & 1 else ~row)
                if not nm & ~(used_verts | low):
                    ok = False
                    break
                masks[t] = nm
            if ok and rec(i + 1, used_verts | low, used_colors | cbit):
                return True
            masks[i + 1 :] = saved
        return False

    return rec(0, 0, 0)


def _find_copy(gadj, colors, colored, horder, hback, hdegs, pin):
    """Embedding of the pattern into the colored vertex set, or None.

    pin >= 0 restricts to embeddings through that host vertex; positions are
    tried one at a time with the pin fixed there.
    """
    k = len(horder)
    chosen = [-1] * k
    if pin < 0:
        masks = [colored] * k
        if _embed_run(gadj, colors, masks, hback, k, chosen):
            return chosen
        return None
    pin_deg = bin(gadj[pin] & colored).count("1")
    pbit = 1 << pin
    for p in range(k):
        if hdegs[p] > pin_deg:
            continue
        masks = [colored] * k
        masks[p] = pbit
        if _embed_run(gadj, colors, masks, hback, k, chosen):
            return chosen
    return None


def find_rainbow_copy(
    g: Graph,
    coloring: Sequence[int],
    h: Graph,
    must_include: Optional[int] = None,
) -> Optional[tuple[int, ...]]:
    """Rainbow induced copy of h in a totally, properly colored g.

    Returns a tuple mapping each vertex of h to its host vertex, or None.
    """
    cols = check_proper(g, coloring)
    if h.n > g.n:
        raise PatternTooLargeError(f"pattern order {h.n} > host order {g.n}")
    if must_include is not None and not 0 <= must_include < g.n:
        raise GraphError(f"must_include vertex {must_include} not in graph")
    horder, hback, hdegs = _pattern_order(h)
    colored = (1 << g.n) - 1
    pin = -1 if must_include is None else must_include
    chosen = _find_copy(g.adj, cols, colored, horder, hback, hdegs, pin)
    if chosen is None:
        return None
    emb = [-1] * h.n
    for i, v in enumerate(horder):
        emb[v] = chosen[i]
    return tuple(emb)


# ---------------------------------------------------------------------------
# block transversal check (matching blocks to colors)

def _color_matching(sets: Sequence[int], s: int) -> Optional[dict[int, int]]:
    """Match every block to a distinct color from its set (Hall/Kuhn).

    Returns {block: color} covering all s blocks, or None.
    """
    owner: dict[int, int] = {}

    def aug(b: int, visited: int) -> tuple[bool, int]:
        row = sets[b]
        while row:
            low = row & -row
            row ^= low
            c = low.bit_length() - 1
            if (visited >> c) & 1:
                continue
            visited |= low
            if c not in owner:
                owner[c] = b
                return True, visited
            ok, visited = aug(owner[c], visited)
            if ok:
                owner[c] = b
                return True, visited
        return False, visited

    for b in range(s):
        ok, _ = aug(b, 0)
        if not ok:
            return None
    return {b: c for c, b in owner.items()}


def find_rainbow_transversal(
    rs: ReplicationStructure, coloring: Sequence[int]
) -> Optional[tuple[int, ...]]:
    """One vertex per block, all colors distinct, or None.

    The picked vertices automatically induce a copy of the base graph.  The
    result is ordered by block; within a block the smallest vertex of the
    matched color is chosen.
    """
    g = rs.expanded
    cols = check_proper(g, coloring)
    s = rs.base.n
    blocks = rs.blocks()
    sets = [0] * s
    for b, members in enumerate(blocks):
        for v in members:
            sets[b] |= 1 << cols[v]
    match = _color_matching(sets, s)
    if match is None:
        return None
    return tuple(
        min(v for v in members if cols[v] == match[b])
        for b, members in enumerate(blocks)
    )


# ---------------------------------------------------------------------------
# the exhaustive search

class _BudgetHit(Exception):
    pass


def _arrow_search(
    g: Graph,
    pattern: Optional[Graph],
    structure: Optional[ReplicationStructure],
    order: tuple[int, ...],
    node_budget: Optional[int],
    prefix: Optional[Sequence[int]] = None,
):
    """Core DFS.  Returns (bad_coloring | None, nodes, prunes, max_depth,
    budget_hit).  Exactly one of pattern/structure is set.  prefix, when
    given, replays colors for order[:len(prefix)] and searches only below.
    """
    n = g.n
    gadj = g.adj
    colors = [-1] * n
    colmask = [0] * (n + 1)
    colored = 0
    mode_r = pattern is not None
    if mode_r:
        want = pattern.n
        horder, hback, hdegs = _pattern_order(pattern)
    else:
        s = structure.base.n
        want = s
        block_of = structure.clique_of
        counts = [[0] * (n + 1) for _ in range(s)]
        blockcolors = [0] * s
        empty_blocks = s
    nodes = 0
    prunes = 0
    max_depth = 0
    bad: Optional[list[int]] = None

    def rec(i: int, distinct: int) -> bool:
        nonlocal nodes, prunes, max_depth, colored, empty_blocks, bad
        if i == n:
            bad = colors[:]
            return True
        v = order[i]
        av = gadj[v]
        vbit = 1 << v
        if not mode_r:
            b = block_of[v]
            bcounts = counts[b]
        for c in range(distinct + 1):
            if colmask[c] & av:
                continue
            nodes += 1
            if node_budget is not None and nodes > node_budget:
                raise _BudgetHit
            colmask[c] |= vbit
            colors[v] = c
            colored |= vbit
            if i + 1 > max_depth:
                max_depth = i + 1
            nd = distinct + 1 if c == distinct else distinct
            if not mode_r:
                if bcounts[c] == 0:
                    if blockcolors[b] == 0:
                        empty_blocks -= 1
                    blockcolors[b] |= 1 << c
                bcounts[c] += 1
            hit = False
            if nd >= want and i + 1 >= want:
                if mode_r:
                    hit = (
                        _find_copy(gadj, colors, colored, horder, hback, hdegs, v)
                        is not None
                    )
                elif empty_blocks == 0:
                    hit = _color_matching(blockcolors, s) is not None
            if hit:
                prunes += 1
            elif rec(i + 1, nd):
                return True
            colmask[c] &= ~vbit
            colors[v] = -1
            colored &= ~vbit
            if not mode_r:
                bcounts[c] -= 1
                if bcounts[c] == 0:
                    blockcolors[b] &= ~(1 << c)
                    if blockcolors[b] == 0:
                        empty_blocks += 1
        return False

    depth = 0
    distinct = 0
    if prefix:
        for i, c in enumerate(prefix):
            v = order[i]
            if c > distinct or c < 0 or colmask[c] & gadj[v]:
                raise GraphError(f"prefix color {c} at position {i} is not legal")
            colmask[c] |= 1 << v
            colors[v] = c
            colored |= 1 << v
            if not mode_r:
                b = block_of[v]
                if counts[b][c] == 0:
                    if blockcolors[b] == 0:
                        empty_blocks -= 1
                    blockcolors[b] |= 1 << c
                counts[b][c] += 1
            if c == distinct:
                distinct += 1
        depth = len(prefix)
        max_depth = depth
    try:
        found = rec(depth, distinct)
    except _BudgetHit:
        return None, nodes, prunes, max_depth, True
    return (bad if found else None), nodes, prunes, max_depth, False


def _prefix_alive(g, pattern, structure, order, prefix) -> bool:
    """Proper, restricted-growth, and never pruned along the way."""
    n = g.n
    gadj = g.adj
    colors = [-1] * n
    colmask = [0] * (n + 1)
    colored = 0
    mode_r = pattern is not None
    if mode_r:
        want = pattern.n
        horder, hback, hdegs = _pattern_order(pattern)
    else:
        s = structure.base.n
        want = s
        block_of = structure.clique_of
        blockcolors = [0] * s
        covered: set[int] = set()
    distinct = 0
    for i, c in enumerate(prefix):
        v = order[i]
        if c > distinct or colmask[c] & gadj[v]:
            return False
        colmask[c] |= 1 << v
        colors[v] = c
        colored |= 1 << v
        if c == distinct:
            distinct += 1
        if not mode_r:
            blockcolors[block_of[v]] |= 1 << c
            covered.add(block_of[v])
        if distinct >= want and i + 1 >= want:
            if mode_r:
                if _find_copy(gadj, colors, colored, horder, hback, hdegs, v):
                    return False
            elif len(covered) == s and _color_matching(blockcolors, s) is not None:
                return False
    return True


def _viable_prefixes(g, pattern, structure, order, want_count):
    """Live prefixes at the shallowest depth that yields at least want_count
    of them (or the deepest level reached), in search order."""
    n = g.n
    frontier: list[tuple[int, ...]] = [()]
    depth = 0
    while depth < n - 1:
        nxt: list[tuple[int, ...]] = []
        for pre in frontier:
            distinct = (max(pre) + 1) if pre else 0
            for c in range(distinct + 1):
                cand = pre + (c,)
                if _prefix_alive(g, pattern, structure, order, cand):
                    nxt.append(cand)
        frontier = nxt
        depth += 1
        if not frontier or len(frontier) >= want_count:
            break
    return depth, frontier


_PAR_CTX: dict = {}


def _par_init(g6, pattern6, structure_parts, order):
    _PAR_CTX["g"] = parse_graph6(g6)
    _PAR_CTX["pattern"] = parse_graph6(pattern6) if pattern6 else None
    if structure_parts:
        base6, sizes, members = structure_parts
        _PAR_CTX["structure"] = replication_graph(
            parse_graph6(base6), sizes, base_members=members
        )
    else:
        _PAR_CTX["structure"] = None
    _PAR_CTX["order"] = order


def _par_task(prefix):
    return _arrow_search(
        _PAR_CTX["g"],
        _PAR_CTX["pattern"],
        _PAR_CTX["structure"],
        _PAR_CTX["order"],
        None,
        prefix,
    )


def _run_parallel(g, pattern, structure, order, workers, start, mode):
    """Split the search at a shallow depth and farm subtrees out.

    Results are reduced in prefix (search) order, so the verdict and the
    reported bad coloring match the sequential search exactly.  Returns None
    when the tree is too small to be worth splitting.
    """
    import multiprocessing as mp

    depth, prefixes = _viable_prefixes(g, pattern, structure, order, 4 * workers)
    if not prefixes:
        return ArrowCertificate(
            arrows=True,
            mode=mode,
            bad_coloring=None,
            vertex_order=order,
            stats=SearchStats(0, 0, depth, time.perf_counter() - start),
        )
    if len(prefixes) < 2 * workers:
        return None
    if structure is not None:
        struct_parts = (to_graph6(structure.base), structure.sizes, structure.base_members)
        pat6 = None
    else:
        struct_parts = None
        pat6 = to_graph6(pattern)
    ctx = mp.get_context("fork")
    nodes = prunes = 0
    max_depth = depth
    with ctx.Pool(
        workers, initializer=_par_init, initargs=(to_graph6(g), pat6, struct_parts, order)
    ) as pool:
        for bad, nd, pr, md, _hit in pool.imap(_par_task, prefixes, chunksize=1):
            nodes += nd
            prunes += pr
            max_depth = max(max_depth, md)
            if bad is not None:
                pool.terminate()
                return ArrowCertificate(
                    arrows=False,
                    mode=mode,
                    bad_coloring=tuple(bad),
                    vertex_order=order,
                    stats=SearchStats(
                        nodes, prunes, max_depth, time.perf_counter() - start
                    ),
                )
    return ArrowCertificate(
        arrows=True,
        mode=mode,
        bad_coloring=None,
        vertex_order=order,
        stats=SearchStats(nodes, prunes, max_depth, time.perf_counter() - start),
    )


def _run_arrows(g, pattern, structure, vertex_order, node_budget, workers):
    mode = "r" if pattern is not None else "R"
    if vertex_order is None:
        order = default_vertex_order(g)
    else:
        order = tuple(vertex_order)
        if sorted(order) != list(range(g.n)):
            raise GraphError(f"vertex_order must be a permutation, got {order}")
    start = time.perf_counter()
    # parallel mode does not combine with node budgets; budgets need the
    # sequential node ordering to stay machine- and schedule-independent
    if workers > 1 and node_budget is None and g.n > 2:
        cert = _run_parallel(g, pattern, structure, order, workers, start, mode)
        if cert is not None:
            return cert
    bad, nodes, prunes, max_depth, hit = _arrow_search(
        g, pattern, structure, order, node_budget, None
    )
    stats = SearchStats(nodes, prunes, max_depth, time.perf_counter() - start)
    if hit:
        raise BudgetExceededError(stats)
    return ArrowCertificate(
        arrows=bad is None,
        mode=mode,
        bad_coloring=tuple(bad) if bad is not None else None,
        vertex_order=order,
        stats=stats,
    )


def arrows(
    g: Graph,
    h: Graph,
    *,
    vertex_order: Optional[Sequence[int]] = None,
    node_budget: Optional[int] = None,
    workers: int = 1,
) -> ArrowCertificate:
    """Does every proper coloring of g contain a rainbow induced copy of h?"""
    if h.n > g.n:
        raise PatternTooLargeError(
            f"pattern order {h.n} exceeds host order {g.n}; the verdict would "
            "trivially be negative"
        )
    return _run_arrows(g, h, None, vertex_order, node_budget, workers)


def arrows_replication(
    rs: ReplicationStructure,
    *,
    vertex_order: Optional[Sequence[int]] = None,
    node_budget: Optional[int] = None,
    workers: int = 1,
) -> ArrowCertificate:
    """Does every proper coloring admit a rainbow one-vertex-per-block pick?"""
    return _run_arrows(rs.expanded, None, rs, vertex_order, node_budget, workers)


# ---------------------------------------------------------------------------
# independent oracle

_ORACLE_CAP = 8


def _rg_colorings(n: int):
    """All restricted-growth color strings over vertices 0..n-1."""
    colors = [0] * n

    def rec(i: int, mx: int):
        if i == n:
            yield tuple(colors)
            return
        for c in range(mx + 2):
            colors[i] = c
            yield from rec(i + 1, max(mx, c))

    yield from rec(0, -1)


def _proper(g: Graph, cols: tuple[int, ...]) -> bool:
    for u, v in g.edges():
        if cols[u] == cols[v]:
            return False
    return True


def _has_rainbow_copy_naive(g: Graph, cols, h: Graph) -> bool:
    for subset in combinations(range(g.n), h.n):
        if len({cols[v] for v in subset}) != h.n:
            continue
        if is_isomorphic(induced_subgraph(g, subset), h):
            return True
    return False


def _has_transversal_naive(rs: ReplicationStructure, cols) -> bool:
    for pick in product(*rs.blocks()):
        if len({cols[v] for v in pick}) == rs.base.n:
            return True
    return False


def oracle_arrows(
    g: Graph,
    h: Optional[Graph] = None,
    mode: str = "r",
    structure: Optional[ReplicationStructure] = None,
) -> bool:
    """Brute-force forcing check for graphs of at most 8 vertices."""
    if mode not in ("r", "R"):
        raise ValueError(f"mode must be 'r' or 'R', got {mode!r}")
    if mode == "R":
        if structure is None:
            raise ValueError("mode 'R' needs the replication structure")
        g = structure.expanded
    elif h is None:
        raise ValueError("mode 'r' needs the pattern graph h")
    if g.n > _ORACLE_CAP:
        raise ValueError(f"oracle is exponential; refusing order {g.n} > {_ORACLE_CAP}")
    for cols in _rg_colorings(g.n):
        if not _proper(g, cols):
            continue
        if mode == "r":
            if not _has_rainbow_copy_naive(g, cols, h):
                return False
        else:
            if not _has_transversal_naive(structure, cols):
                return False
    return True
