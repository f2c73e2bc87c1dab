"""Enumerate small graphs, one representative per isomorphism class.

Representatives at order n are produced by augmenting every representative at
order n-1 with one new vertex attached in all 2^(n-1) possible ways, then
deduplicating by canonical form.  Every class at order n has a member whose
last vertex can be deleted to give a class at order n-1, so the sweep is
exhaustive.  Per-order results are cached for the process lifetime and
streamed in canonical-key order, which downstream searches rely on for
deterministic "first witness" tie-breaking.

Counts grow fast (12346 classes at order 8, 274668 at order 9), so orders
above 9 require an explicit opt-in.
"""

from __future__ import annotations

from typing import Callable, Iterable, Iterator, Optional

from .canonical import CanonicalForm, graph_from_form, min_encoding_bits
from .graphs import Graph

_DEFAULT_CAP = 9
_HARD_CAP = 12

_CLASS_CACHE: dict[int, list[int]] = {1: [0]}


def _children_bits(parent_bits: int, order: int) -> set[int]:
    parent = graph_from_form(CanonicalForm(order - 1, parent_bits))
    padj = parent.adj
    m = order - 1
    out = set()
    for mask in range(1 << m):
        adj = [row | (((mask >> v) & 1) << m) for v, row in enumerate(padj)]
        adj.append(mask)
        out.add(min_encoding_bits(adj, order))
    return out


_WORK_ORDER = 0


def _children_worker(parent_bits: int) -> list[int]:
    return list(_children_bits(parent_bits, _WORK_ORDER))


def _worker_init(order: int) -> None:
    global _WORK_ORDER
    _WORK_ORDER = order


def _class_bits(order: int, allow_large: bool, workers: int) -> list[int]:
    if order in _CLASS_CACHE:
        return _CLASS_CACHE[order]
    if order < 1:
        raise ValueError(f"order must be positive, got {order}")
    if order > _HARD_CAP:
        raise ValueError(f"enumeration beyond order {_HARD_CAP} is not supported")
    if order > _DEFAULT_CAP and not allow_large:
        raise ValueError(
            f"enumerating order {order} > {_DEFAULT_CAP} classes is expensive; "
            "pass allow_large=True to proceed"
        )
    parents = _class_bits(order - 1, allow_large, workers)
    keys: set[int] = set()
    if workers > 1 and len(parents) >= 4 * workers:
        import multiprocessing as mp

        ctx = mp.get_context("fork")
        with ctx.Pool(workers, initializer=_worker_init, initargs=(order,)) as pool:
            for chunk in pool.imap_unordered(_children_worker, parents, chunksize=16):
                keys.update(chunk)
    else:
        for pbits in parents:
            keys.update(_children_bits(pbits, order))
    result = sorted(keys)
    _CLASS_CACHE[order] = result
    return result


def class_count(order: int, *, allow_large: bool = False, workers: int = 1) -> int:
    return len(_class_bits(order, allow_large, workers))


def graph_classes(
    order: int, *, allow_large: bool = False, workers: int = 1
) -> list[Graph]:
    """All isomorphism classes of the given order, canonical representatives,
    sorted by canonical key."""
    return [
        graph_from_form(CanonicalForm(order, bits))
        for bits in _class_bits(order, allow_large, workers)
    ]


def enumerate_graphs(
    order: int,
    *,
    filters: Iterable[Callable[[Graph], bool]] = (),
    allow_large: bool = False,
    workers: int = 1,
) -> Iterator[Graph]:
    """Stream class representatives in canonical order, dropping any graph
    rejected by one of the filter predicates."""
    filters = tuple(filters)
    for bits in _class_bits(order, allow_large, workers):
        g = graph_from_form(CanonicalForm(order, bits))
        if all(f(g) for f in filters):
            yield g
