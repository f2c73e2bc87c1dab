"""Exact minimum-order searches over all candidate graphs.

min_forcing_order(h) finds the least order t such that some graph of order t
forces a rainbow induced copy of h in every proper coloring, by walking
isomorphism classes order by order in canonical sequence and certifying each
candidate with the arrow engine.  min_replication_order(h) does the same over
replication graphs of h (block sizes summing to t, lexicographic), using the
stricter one-vertex-per-block forcing test.

Orders below the proven lower bounds are reported as exhausted without
search; pass search_from to force genuine engine exhaustion there as a
cross-check (a witness below a proven bound raises, since that would mean
the bounds or the engine are broken).

Long runs can checkpoint to a JSON file after every order and periodically
within one; resuming replays nothing and yields the same outcome as an
uninterrupted run.  A finished search writes its result into the checkpoint,
so re-running with the same file just returns it.  Node budgets cap the total
engine work deterministically: the cumulative cutoff is applied between
candidates, in enumeration order.  The budget is not part of the checkpoint
identity, so a run can be sliced across sessions with a fresh budget each
time.
"""

from __future__ import annotations

import json
import os
import time
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

from .bounds import general_bounds, independent_partition_bound, replication_upper_bound
from .canonical import canonical_graph, canonical_order
from .coloring import chromatic_number
from .constructions import (
    ReplicationStructure,
    replication_cliques,
    replication_graph,
    vertex_clique_witness,
)
from .engine import BudgetExceededError, arrows, arrows_replication
from .enumeration import graph_classes
from .graphs import Graph, contains_induced, parse_graph6, to_graph6
from .resultcache import ResultCache
from .version import ENGINE_VERSION

CHECKPOINT_VERSION = 1
_CHECKPOINT_EVERY = 200


class CheckpointError(ValueError):
    """Checkpoint file missing fields, stale, or for a different search."""


@dataclass(frozen=True)
class SearchOutcome:
    mode: str  # "rho" (any graph) | "rho_R" (replication graphs, strict)
    target: str  # canonical graph6 of the pattern
    status: str  # "exact" | "bounded" | "budget"
    value: Optional[int]
    witness: Optional[object]  # graph6 string, or block size tuple for rho_R
    lower: int
    upper: Optional[int]
    orders_exhausted: tuple[int, ...]
    stats: dict


def save_checkpoint(path, payload: dict) -> None:
    tmp = str(path) + ".tmp"
    with open(tmp, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, sort_keys=True)
    os.replace(tmp, path)


def load_checkpoint(path) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            payload = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise CheckpointError(f"cannot read checkpoint {path}: {exc}") from None
    if payload.get("format_version") != CHECKPOINT_VERSION:
        raise CheckpointError(
            f"checkpoint format {payload.get('format_version')!r} != "
            f"{CHECKPOINT_VERSION}"
        )
    return payload


def _target_key(h: Graph) -> str:
    return to_graph6(canonical_graph(h))


def _replication_g_key(h_key: str, h: Graph, sizes: Sequence[int]) -> str:
    order = canonical_order(h)
    mapped = ",".join(str(sizes[v]) for v in order)
    return f"{h_key}|{mapped}"


def replication_expansion_perm(h: Graph, sizes: Sequence[int]) -> tuple[int, ...]:
    """Vertex map from replication_graph(h, sizes).expanded onto the same
    expansion built over the canonical relabeling of h.

    Blocks map to blocks (j-th clique vertex to j-th clique vertex), so a
    proper coloring without a rainbow block transversal stays exactly that
    after renumbering.  Lets counterexample colorings be cached under the
    canonical key and replayed against any isomorphic labeling.
    """
    order = canonical_order(h)
    pos_of = {order[i]: i for i in range(h.n)}
    canon_sizes = [sizes[order[i]] for i in range(h.n)]
    canon_off = [0] * h.n
    for i in range(1, h.n):
        canon_off[i] = canon_off[i - 1] + canon_sizes[i - 1]
    perm = []
    for v in range(h.n):
        base = canon_off[pos_of[v]]
        perm.extend(base + j for j in range(sizes[v]))
    return tuple(perm)


def apply_vertex_perm(coloring: Sequence[int], perm: Sequence[int]) -> tuple[int, ...]:
    """Recoordinate a coloring: result[perm[u]] = coloring[u]."""
    out = [0] * len(coloring)
    for u, c in enumerate(coloring):
        out[perm[u]] = c
    return tuple(out)


def invert_perm(perm: Sequence[int]) -> tuple[int, ...]:
    out = [0] * len(perm)
    for i, p in enumerate(perm):
        out[p] = i
    return tuple(out)


def _validate_resume(payload: dict, wanted: dict) -> None:
    for key, val in wanted.items():
        got = payload.get(key)
        if got != val:
            raise CheckpointError(
                f"checkpoint mismatch on {key}: file has {got!r}, search wants {val!r}"
            )


def _stored_outcome(payload: dict, mode: str, target: str) -> "SearchOutcome":
    res = payload["result"]
    witness = res["witness"]
    if mode == "rho_R" and witness is not None:
        witness = tuple(witness)
    return SearchOutcome(
        mode=mode,
        target=target,
        status=res["status"],
        value=res["value"],
        witness=witness,
        lower=res["lower"],
        upper=res["upper"],
        orders_exhausted=tuple(res["orders_exhausted"]),
        stats=res["stats"],
    )


def _result_payload(out: "SearchOutcome") -> dict:
    witness = out.witness
    if isinstance(witness, tuple):
        witness = list(witness)
    return {
        "status": out.status,
        "value": out.value,
        "witness": witness,
        "lower": out.lower,
        "upper": out.upper,
        "orders_exhausted": list(out.orders_exhausted),
        "stats": out.stats,
    }


# ---------------------------------------------------------------------------
# shared candidate-verdict pump

class _Budget:
    """Cumulative node accounting with a deterministic between-candidate cutoff."""

    def __init__(self, limit: Optional[int], used: int = 0):
        self.limit = limit
        self.used = used

    def exhausted(self) -> bool:
        return self.limit is not None and self.used >= self.limit

    def spend(self, nodes: int) -> None:
        self.used += nodes


_POOL_CTX: dict = {}


def _pool_init(mode, h6, extra):
    _POOL_CTX["mode"] = mode
    _POOL_CTX["h"] = parse_graph6(h6)
    _POOL_CTX["extra"] = extra


def _pool_task(item):
    mode = _POOL_CTX["mode"]
    h = _POOL_CTX["h"]
    cap = _POOL_CTX["extra"]
    try:
        if mode == "rho":
            cert = arrows(parse_graph6(item), h, node_budget=cap)
        else:
            rs = replication_graph(h, item)
            cert = arrows_replication(rs, node_budget=cap)
    except BudgetExceededError as exc:
        return None, exc.stats.nodes, None
    return cert.arrows, cert.stats.nodes, cert.bad_coloring


def _verdict_stream(
    mode: str,
    h: Graph,
    items: list,
    cached: dict[int, bool],
    budget: _Budget,
    workers: int,
) -> Iterator[tuple[int, Optional[bool], int, Optional[tuple[int, ...]]]]:
    """Yield (index, verdict, nodes, bad coloring) in order; verdict None
    means the candidate alone blew the node cap."""
    todo = [i for i in range(len(items)) if i not in cached]
    if workers > 1 and len(todo) > 1:
        import multiprocessing as mp

        ctx = mp.get_context("fork")
        h6 = to_graph6(h)
        with ctx.Pool(
            workers, initializer=_pool_init, initargs=(mode, h6, budget.limit)
        ) as pool:
            payload = [
                items[i] if mode == "rho_R" else to_graph6(items[i]) for i in todo
            ]
            results = pool.imap(_pool_task, payload, chunksize=4)
            for i in range(len(items)):
                if i in cached:
                    yield i, cached[i], 0, None
                else:
                    verdict, nodes, bad = next(results)
                    yield i, verdict, nodes, bad
    else:
        for i in range(len(items)):
            if i in cached:
                yield i, cached[i], 0, None
                continue
            cap = budget.limit
            try:
                if mode == "rho":
                    cert = arrows(items[i], h, node_budget=cap)
                else:
                    cert = arrows_replication(
                        replication_graph(h, items[i]), node_budget=cap
                    )
                yield i, cert.arrows, cert.stats.nodes, cert.bad_coloring
            except BudgetExceededError as exc:
                yield i, None, exc.stats.nodes, None


# ---------------------------------------------------------------------------
# minimum forcing order over arbitrary graphs

def min_forcing_order(
    h: Graph,
    *,
    max_order: Optional[int] = None,
    node_budget: Optional[int] = None,
    search_from: Optional[int] = None,
    workers: int = 1,
    cache: Optional[ResultCache] = None,
    checkpoint_path=None,
    allow_large: bool = False,
) -> SearchOutcome:
    start_time = time.perf_counter()
    general_lower, general_upper = general_bounds(h)
    partition_lower, _ = independent_partition_bound(h)
    bound_floor = max(general_lower, partition_lower, h.n)
    if max_order is None:
        max_order = min(general_upper, 9)
    if max_order < h.n:
        raise ValueError(f"max_order {max_order} below pattern order {h.n}")
    first_search = bound_floor if search_from is None else max(h.n, min(search_from, bound_floor))
    target = _target_key(h)
    wanted = {
        "mode": "rho",
        "target": target,
        "max_order": max_order,
        "search_from": search_from,
        "engine_version": ENGINE_VERSION,
    }
    searched: list[int] = []
    budget = _Budget(node_budget)
    engine_calls = 0
    cache_hits = 0
    resume_order = first_search
    resume_cursor = 0
    if checkpoint_path is not None and os.path.exists(checkpoint_path):
        payload = load_checkpoint(checkpoint_path)
        _validate_resume(payload, wanted)
        if "result" in payload:
            return _stored_outcome(payload, "rho", target)
        searched = list(payload["orders_searched"])
        budget.used = payload["nodes_used"]
        engine_calls = payload["engine_calls"]
        cache_hits = payload["cache_hits"]
        resume_order = payload["order"]
        resume_cursor = payload["cursor"]

    def checkpoint(order: int, cursor: int, last: Optional[str], result=None) -> None:
        if checkpoint_path is None:
            return
        payload = dict(wanted)
        payload.update(
            format_version=CHECKPOINT_VERSION,
            order=order,
            cursor=cursor,
            cursor_last=last,
            orders_searched=searched,
            nodes_used=budget.used,
            engine_calls=engine_calls,
            cache_hits=cache_hits,
        )
        if result is not None:
            payload["result"] = _result_payload(result)
        save_checkpoint(checkpoint_path, payload)

    def outcome(status, value, witness, lower, upper, kind) -> SearchOutcome:
        if cache is not None:
            cache.flush()
        vacuous = tuple(range(1, h.n))
        by_bounds = tuple(
            t for t in range(h.n, lower) if t not in searched and (value is None or t < value)
        )
        exhausted = tuple(sorted(set(vacuous) | set(by_bounds) | set(searched)))
        stats = {
            "nodes": budget.used,
            "engine_calls": engine_calls,
            "cache_hits": cache_hits,
            "orders_searched": sorted(searched),
            "orders_by_bounds": sorted(by_bounds),
            "general_lower": general_lower,
            "partition_lower": partition_lower,
            "witness_kind": kind,
            "wall_time": time.perf_counter() - start_time,
            "workers": workers,
        }
        return SearchOutcome(
            mode="rho",
            target=target,
            status=status,
            value=value,
            witness=witness,
            lower=lower,
            upper=upper,
            orders_exhausted=exhausted,
            stats=stats,
        )

    h_key = target
    for t in range(resume_order, max_order + 1):
        if t < first_search or (t < bound_floor and search_from is None):
            continue
        candidates = [
            g
            for g in graph_classes(t, allow_large=allow_large, workers=workers)
            if chromatic_number(g) >= h.n and contains_induced(g, h)
        ]
        cached: dict[int, bool] = {}
        keys: list[str] = []
        for i, g in enumerate(candidates):
            key = to_graph6(g)  # representatives are already canonical
            keys.append(key)
            if cache is not None:
                hit = cache.lookup(key, h_key, "r")
                if hit is not None:
                    cached[i] = hit
        start_at = resume_cursor if t == resume_order else 0
        if start_at:
            candidates_slice = candidates[start_at:]
            cached = {i - start_at: v for i, v in cached.items() if i >= start_at}
        else:
            candidates_slice = candidates
        cache_hits += len(cached)
        for off, verdict, nodes, bad in _verdict_stream(
            "rho", h, candidates_slice, cached, budget, workers
        ):
            idx = start_at + off
            if budget.exhausted():
                checkpoint(t, idx, keys[idx - 1] if idx else None)
                return outcome("budget", None, None, t, general_upper, None)
            if nodes:
                engine_calls += 1
                budget.spend(nodes)
            if verdict is None:  # single candidate exceeded the whole budget
                checkpoint(t, idx, keys[idx - 1] if idx else None)
                return outcome("budget", None, None, t, general_upper, None)
            if cache is not None and off not in cached:
                # candidates come out of the enumerator in canonical labeling,
                # so the coloring already matches the cache key's coordinates
                cache.record(keys[idx], h_key, "r", verdict, bad_coloring=bad)
            if verdict:
                if t < bound_floor:
                    raise RuntimeError(
                        f"witness of order {t} contradicts proven lower bound "
                        f"{bound_floor}; engine or bounds are broken"
                    )
                out = outcome("exact", t, keys[idx], t, t, "search")
                checkpoint(t, idx + 1, keys[idx], result=out)
                return out
            if (idx + 1) % _CHECKPOINT_EVERY == 0:
                checkpoint(t, idx + 1, keys[idx])
                if cache is not None:
                    cache.flush()
        searched.append(t)
        checkpoint(t + 1, 0, None)
        if cache is not None:
            cache.flush()
    lower = max(bound_floor, max_order + 1 if max_order >= bound_floor else bound_floor)
    construction = to_graph6(canonical_graph(vertex_clique_witness(h).expanded))
    out = outcome("bounded", None, construction, lower, general_upper, "construction")
    checkpoint(max_order + 1, 0, None, result=out)
    return out


# ---------------------------------------------------------------------------
# minimum order over replication graphs (strict block transversal)

def _compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    if parts == 1:
        yield (total,)
        return
    for first in range(1, total - parts + 2):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def min_replication_order(
    h: Graph,
    *,
    max_order: Optional[int] = None,
    node_budget: Optional[int] = None,
    search_from: Optional[int] = None,
    workers: int = 1,
    cache: Optional[ResultCache] = None,
    checkpoint_path=None,
) -> SearchOutcome:
    start_time = time.perf_counter()
    n = h.n
    general_lower, general_upper = general_bounds(h)
    partition_lower, _ = independent_partition_bound(h)
    bound_floor = max(general_lower, partition_lower, n)
    # removing edges never lowers the replication order, so the edgeless
    # pattern's value n(n+1)/2 always suffices as a ceiling
    if max_order is None:
        max_order = n * (n + 1) // 2
    if max_order < n:
        raise ValueError(f"max_order {max_order} below pattern order {n}")
    trivial_blocks = all(len(b) == 1 for b in replication_cliques(h))
    known_upper = replication_upper_bound(h)[0] if trivial_blocks else None
    first_search = bound_floor if search_from is None else max(n, min(search_from, bound_floor))
    target = _target_key(h)
    wanted = {
        "mode": "rho_R",
        "target": target,
        "max_order": max_order,
        "search_from": search_from,
        "engine_version": ENGINE_VERSION,
    }
    searched: list[int] = []
    budget = _Budget(node_budget)
    engine_calls = 0
    cache_hits = 0
    resume_order = first_search
    resume_cursor = 0
    if checkpoint_path is not None and os.path.exists(checkpoint_path):
        payload = load_checkpoint(checkpoint_path)
        _validate_resume(payload, wanted)
        if "result" in payload:
            return _stored_outcome(payload, "rho_R", target)
        searched = list(payload["orders_searched"])
        budget.used = payload["nodes_used"]
        engine_calls = payload["engine_calls"]
        cache_hits = payload["cache_hits"]
        resume_order = payload["order"]
        resume_cursor = payload["cursor"]

    def checkpoint(order: int, cursor: int, last, result=None) -> None:
        if checkpoint_path is None:
            return
        payload = dict(wanted)
        payload.update(
            format_version=CHECKPOINT_VERSION,
            order=order,
            cursor=cursor,
            cursor_last=list(last) if last else None,
            orders_searched=searched,
            nodes_used=budget.used,
            engine_calls=engine_calls,
            cache_hits=cache_hits,
        )
        if result is not None:
            payload["result"] = _result_payload(result)
        save_checkpoint(checkpoint_path, payload)

    def outcome(status, value, witness, lower, upper, kind) -> SearchOutcome:
        if cache is not None:
            cache.flush()
        vacuous = tuple(range(1, n))
        by_bounds = tuple(
            t for t in range(n, lower) if t not in searched and (value is None or t < value)
        )
        exhausted = tuple(sorted(set(vacuous) | set(by_bounds) | set(searched)))
        stats = {
            "nodes": budget.used,
            "engine_calls": engine_calls,
            "cache_hits": cache_hits,
            "orders_searched": sorted(searched),
            "orders_by_bounds": sorted(by_bounds),
            "general_lower": general_lower,
            "partition_lower": partition_lower,
            "witness_kind": kind,
            "wall_time": time.perf_counter() - start_time,
            "workers": workers,
        }
        return SearchOutcome(
            mode="rho_R",
            target=target,
            status=status,
            value=value,
            witness=witness,
            lower=lower,
            upper=upper,
            orders_exhausted=exhausted,
            stats=stats,
        )

    for t in range(resume_order, max_order + 1):
        if t < first_search or (t < bound_floor and search_from is None):
            continue
        vectors = list(_compositions(t, n))
        cached: dict[int, bool] = {}
        keys: list[str] = []
        for i, vec in enumerate(vectors):
            key = _replication_g_key(target, h, vec)
            keys.append(key)
            if cache is not None:
                hit = cache.lookup(key, target, "R")
                if hit is not None:
                    cached[i] = hit
        start_at = resume_cursor if t == resume_order else 0
        if start_at:
            vec_slice = vectors[start_at:]
            cached = {i - start_at: v for i, v in cached.items() if i >= start_at}
        else:
            vec_slice = vectors
        cache_hits += len(cached)
        for off, verdict, nodes, bad in _verdict_stream(
            "rho_R", h, vec_slice, cached, budget, workers
        ):
            idx = start_at + off
            if budget.exhausted():
                checkpoint(t, idx, vectors[idx - 1] if idx else None)
                return outcome("budget", None, None, t, known_upper, None)
            if nodes:
                engine_calls += 1
                budget.spend(nodes)
            if verdict is None:
                checkpoint(t, idx, vectors[idx - 1] if idx else None)
                return outcome("budget", None, None, t, known_upper, None)
            if cache is not None and off not in cached:
                if bad is not None:
                    bad = apply_vertex_perm(
                        bad, replication_expansion_perm(h, vectors[idx])
                    )
                cache.record(keys[idx], target, "R", verdict, bad_coloring=bad)
            if verdict:
                if t < bound_floor:
                    raise RuntimeError(
                        f"replication witness of order {t} contradicts proven "
                        f"lower bound {bound_floor}"
                    )
                out = outcome("exact", t, vectors[idx], t, t, "search")
                checkpoint(t, idx + 1, vectors[idx], result=out)
                return out
            if (idx + 1) % _CHECKPOINT_EVERY == 0:
                checkpoint(t, idx + 1, vectors[idx])
                if cache is not None:
                    cache.flush()
        searched.append(t)
        checkpoint(t + 1, 0, None)
        if cache is not None:
            cache.flush()
    lower = max(bound_floor, max_order + 1 if max_order >= bound_floor else bound_floor)
    out = outcome("bounded", None, None, lower, known_upper, None)
    checkpoint(max_order + 1, 0, None, result=out)
    return out
