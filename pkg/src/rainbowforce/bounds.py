"""Bounds and closed formulas for the minimum forcing order of a pattern.

The forcing order of a pattern h is the least order of a graph g such that
every proper vertex coloring of g contains a rainbow induced copy of h.  It
is bracketed by:

* general_bounds: ceil(n/chi) * (n - chi*(k-1)/2) from below (k = ceil(n/chi),
  chi the chromatic number) and n + non_edges(h) from above; the upper bound
  is witnessed by constructions.vertex_clique_witness.
* independent_partition_bound: sum x_i*(x_i+1)/2 over any partition of the
  vertices into independent sets, from below; the optimizer maximizes it.
* replication_upper_bound: order of constructions.block_clique_witness, from
  above, minimized over block orders on request.

Both general bounds coincide exactly on the balanced complete multipartite
graphs, where the shared value (and several other families' values) is given
in closed form by exact_formula.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from typing import Iterable, Optional, Sequence

from .coloring import chromatic_number
from .constructions import replication_cliques
from .graphs import (
    Graph,
    GraphError,
    complement,
    connected_components,
    count_non_edges,
    is_isomorphic,
    path,
)

_EXHAUSTIVE_BLOCK_CAP = 8


def general_bounds(h: Graph) -> tuple[int, int]:
    """(lower, upper) valid for every pattern.

    lower = k*n - chi*k*(k-1)//2 with k = ceil(n/chi); always an integer
    because k*(k-1) is even.  upper = n + number of non-edges.
    """
    n = h.n
    chi = chromatic_number(h)
    k = -(-n // chi)
    lower = k * n - chi * (k * (k - 1) // 2)
    upper = n + count_non_edges(h)
    return lower, upper


def weak_lower_bound(h: Graph) -> Fraction:
    """(n/2)(n/chi + 1): a relaxation of the general lower bound.

    Matches it exactly iff the chromatic number divides the order.
    """
    n = h.n
    chi = chromatic_number(h)
    return Fraction(n, 2) * (Fraction(n, chi) + 1)


def _validate_partition(h: Graph, partition: Sequence[Sequence[int]]):
    blocks = [tuple(sorted(b)) for b in partition]
    seen: set[int] = set()
    for b in blocks:
        if not b:
            raise GraphError("empty block in partition")
        for v in b:
            if not 0 <= v < h.n:
                raise GraphError(f"vertex {v} outside 0..{h.n - 1}")
            if v in seen:
                raise GraphError(f"vertex {v} appears in two blocks")
            seen.add(v)
        for i, u in enumerate(b):
            for v in b[i + 1 :]:
                if h.has_edge(u, v):
                    raise GraphError(f"block {b} is not independent: edge ({u}, {v})")
    if len(seen) != h.n:
        raise GraphError("partition does not cover every vertex")
    return blocks


def _best_partition(h: Graph) -> list[list[int]]:
    """Partition into independent sets maximizing the sum of squared sizes."""
    n = h.n
    adj = h.adj
    best_score = -1
    best: list[list[int]] = []
    blocks: list[list[int]] = []
    block_masks: list[int] = []

    def rec(v: int, score: int, remaining: int) -> None:
        nonlocal best_score, best
        if v == n:
            if score > best_score:
                best_score = score
                best = [b[:] for b in blocks]
            return
        largest = max((len(b) for b in blocks), default=0)
        # optimistic: pour every remaining vertex into the largest block
        if score + 2 * largest * remaining + remaining * remaining <= best_score:
            return
        for i, b in enumerate(blocks):
            if not (block_masks[i] & adj[v]):
                gain = 2 * len(b) + 1  # (x+1)^2 - x^2
                b.append(v)
                block_masks[i] |= 1 << v
                rec(v + 1, score + gain, remaining - 1)
                b.pop()
                block_masks[i] &= ~(1 << v)
        blocks.append([v])
        block_masks.append(1 << v)
        rec(v + 1, score + 1, remaining - 1)
        blocks.pop()
        block_masks.pop()

    rec(0, 0, n)
    return best


def independent_partition_bound(
    h: Graph, partition: Optional[Sequence[Sequence[int]]] = None
) -> tuple[int, tuple[tuple[int, ...], ...]]:
    """Lower bound sum x_i*(x_i+1)/2 over a partition into independent sets.

    With partition=None the maximizing partition is found by branch and
    bound (ties broken deterministically by the vertex-order search).
    """
    if partition is not None:
        blocks = _validate_partition(h, partition)
    else:
        blocks = [tuple(b) for b in _best_partition(h)]
    value = sum(len(b) * (len(b) + 1) // 2 for b in blocks)
    return value, tuple(tuple(b) for b in blocks)


# ---------------------------------------------------------------------------
# replication (block) upper bound

def _order_value(blocks, quotient, order) -> int:
    total = 0
    for i, b in enumerate(order):
        extra = 0
        for j in range(i):
            c = order[j]
            if not quotient.has_edge(b, c):
                extra += len(blocks[c])
        total += len(blocks[b]) + extra
    return total


def replication_upper_bound(
    h: Graph, block_order: Optional[Sequence[int] | str] = None
) -> tuple[int, tuple[int, ...]]:
    """Order of the twin-quotient clique witness; (value, block order used).

    block_order=None uses nondecreasing class size (ties by smallest member);
    "exhaustive" minimizes over all block permutations, refusing more than 8
    blocks; an explicit permutation is used as given.
    """
    from .constructions import quotient_graph

    quotient, blocks = quotient_graph(h)
    s = len(blocks)
    if block_order is None:
        order = tuple(sorted(range(s), key=lambda b: (len(blocks[b]), blocks[b][0])))
        return _order_value(blocks, quotient, order), order
    if block_order == "exhaustive":
        if s > _EXHAUSTIVE_BLOCK_CAP:
            raise GraphError(
                f"exhaustive block ordering over {s} blocks refused "
                f"(cap {_EXHAUSTIVE_BLOCK_CAP})"
            )
        best_val = None
        best_order = None
        for perm in permutations(range(s)):
            val = _order_value(blocks, quotient, perm)
            if best_val is None or val < best_val:
                best_val = val
                best_order = perm
        return best_val, best_order
    order = tuple(block_order)
    if sorted(order) != list(range(s)):
        raise GraphError(f"block_order must be a permutation of 0..{s - 1}")
    return _order_value(blocks, quotient, order), order


# ---------------------------------------------------------------------------
# closed formulas

def _multipartite_sizes(h: Graph) -> Optional[list[int]]:
    """Class sizes if h is complete multipartite, else None."""
    comp = complement(h)
    sizes = []
    for members in connected_components(comp):
        mask = 0
        for v in members:
            mask |= 1 << v
        for v in members:
            if comp.adj[v] & mask != mask & ~(1 << v):
                return None  # component is not a clique in the complement
        sizes.append(len(members))
    return sorted(sizes)


def _clique_components(h: Graph) -> Optional[list[int]]:
    """Component sizes if every component of h is a clique, else None."""
    sizes = []
    for members in connected_components(h):
        mask = 0
        for v in members:
            mask |= 1 << v
        for v in members:
            if h.adj[v] & mask != mask & ~(1 << v):
                return None
        sizes.append(len(members))
    return sorted(sizes, reverse=True)


def is_turan(h: Graph) -> bool:
    """Complete multipartite with class sizes differing by at most one."""
    sizes = _multipartite_sizes(h)
    return sizes is not None and sizes[-1] - sizes[0] <= 1


def exact_formula(h: Graph) -> Optional[tuple[int, str]]:
    """Known exact forcing order, as (value, family tag), or None.

    Families: cliques (n), complete multipartite including anticliques,
    stars and balanced classes (sum x_i*(x_i+1)/2), and disjoint unions of
    cliques (sum i*y_i over sizes y_1 >= ... >= y_s).  Tags are resolved in
    that order when a graph lies in several families; the values agree.
    """
    n = h.n
    sizes = _multipartite_sizes(h)
    if sizes is not None:
        value = sum(x * (x + 1) // 2 for x in sizes)
        if sizes[-1] == 1:
            return n, "clique"
        if len(sizes) == 1:
            return value, "anticlique"
        if len(sizes) == 2 and sizes[0] == 1:
            return value, "star"
        if sizes[-1] - sizes[0] <= 1:
            return value, "turan"
        return value, "complete_multipartite"
    comp_sizes = _clique_components(h)
    if comp_sizes is not None:
        value = sum(i * y for i, y in enumerate(comp_sizes, start=1))
        return value, "disjoint_cliques"
    return None


def path_upper_bound(n: int) -> int:
    """Upper bound for the forcing order of the n-vertex path, n >= 2.

    1 + n(n-1)/2 - 3*floor(n/7), improved by 2 or 1 when n mod 7 is 6 or 5.
    """
    if n < 2:
        raise GraphError(f"path bound needs n >= 2, got {n}")
    value = 1 + n * (n - 1) // 2 - 3 * (n // 7)
    r = n % 7
    if r == 6:
        value -= 2
    elif r == 5:
        value -= 1
    return value


def composition_bounds(
    value1: int,
    value2: int,
    h1: Graph,
    h2: Graph,
    cross_edges: Iterable[tuple[int, int]],
) -> tuple[int, int]:
    """Bracket the replication order of a two-part composition.

    For h built from disjoint h1 and h2 plus the given cross edges, the
    replication order lies in [value1 + value2, value1 + value2 + m] where
    the value arguments are the parts' replication orders and m counts the
    non-edges between the parts.  For a join (no missing cross pairs) the
    two ends agree.
    """
    pairs = set()
    for u, v in cross_edges:
        if not (0 <= u < h1.n and 0 <= v < h2.n):
            raise GraphError(f"cross edge ({u}, {v}) out of range")
        pairs.add((u, v))
    m = h1.n * h2.n - len(pairs)
    return value1 + value2, value1 + value2 + m


# ---------------------------------------------------------------------------
# the full report

@dataclass(frozen=True)
class BoundsReport:
    n: int
    chromatic: int
    non_edges: int
    general_lower: int
    general_upper: int
    weak_lower: Fraction
    partition_lower: int
    partition_sets: tuple[tuple[int, ...], ...]
    replication_upper: int
    block_order_used: tuple[int, ...]
    exact: Optional[int]
    exact_family: Optional[str]
    path_upper: Optional[int]

    def best_lower(self) -> int:
        return max(self.general_lower, self.partition_lower)

    def best_upper(self) -> int:
        uppers = [self.general_upper, self.replication_upper]
        if self.path_upper is not None:
            uppers.append(self.path_upper)
        return min(uppers)

    def bounds_dict(self) -> dict:
        """The wire form used by the command line JSON output.

        The key names are part of the stable published schema and are kept
        as-is even where they differ from the field names.
        """
        weak = self.weak_lower
        return {
            "eq1_lower": self.general_lower,
            "eq1_upper": self.general_upper,
            "eq3": self.partition_lower,
            "eq4": self.replication_upper,
            "weak_lower": int(weak) if weak.denominator == 1 else float(weak),
            "exact": self.exact,
            "path_upper": self.path_upper,
        }


def bounds_report(h: Graph) -> BoundsReport:
    general_lower, general_upper = general_bounds(h)
    weak = weak_lower_bound(h)
    partition_lower, partition = independent_partition_bound(h)
    replication_upper, order = replication_upper_bound(h)
    exact = exact_formula(h)
    path_upper = (
        path_upper_bound(h.n) if h.n >= 2 and is_isomorphic(h, path(h.n)) else None
    )
    report = BoundsReport(
        n=h.n,
        chromatic=chromatic_number(h),
        non_edges=count_non_edges(h),
        general_lower=general_lower,
        general_upper=general_upper,
        weak_lower=weak,
        partition_lower=partition_lower,
        partition_sets=partition,
        replication_upper=replication_upper,
        block_order_used=order,
        exact=exact[0] if exact else None,
        exact_family=exact[1] if exact else None,
        path_upper=path_upper,
    )
    # internal consistency: lower bounds never exceed upper bounds, and a
    # closed-form value sits inside the bracket
    assert report.weak_lower <= report.general_lower
    assert report.best_lower() <= report.best_upper(), report
    if report.exact is not None:
        assert report.best_lower() <= report.exact <= report.best_upper(), report
    return report
