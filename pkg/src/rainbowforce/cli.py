"""Command line front end.

Verbs:
  bounds     print every bound and any closed-form value for a pattern
  verify     certify that one host graph forces a pattern, or show a
             counterexample coloring
  rho        exact minimum forcing order by exhaustive candidate search
  rho-r      exact minimum order over replication hosts of the pattern
  construct  emit a witness host built from the clique constructions
  cache      inspect or clear the persistent verdict cache

Graphs are given as tokens: a bare string is graph6 ("Bw"), "g6:..." forces
graph6, "file:PATH" reads graph6 or an edge list ("n m" header then "u v"
lines) from a file, and family tokens build standard graphs: path:5,
cycle:6, clique:4, anticlique:3, star:7, turan:7,3, kpartite:2,2,3.  Any
token may end with "@s1,s2,..." which replaces vertex i by a clique of size
s_i (blocks joined exactly when the originals were adjacent).

Exit codes: 0 success (forces / exact value found), 1 definitive negative
(does not force, or the searched range holds no witness), 2 usage or input
error, 3 node budget exhausted before an answer.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Optional

from .bounds import bounds_report
from .canonical import canonical_graph, canonical_order
from .constructions import (
    ReplicationStructure,
    block_clique_witness,
    quotient_graph,
    replication_graph,
    vertex_clique_witness,
)
from .engine import BudgetExceededError, arrows, arrows_replication, oracle_arrows
from .graphs import (
    Graph,
    GraphError,
    anticlique,
    clique,
    complete_multipartite,
    cycle,
    is_isomorphic,
    parse_edge_list,
    parse_graph6,
    path,
    star,
    to_graph6,
    turan,
)
from .resultcache import ResultCache, default_cache_path
from .search import (
    apply_vertex_perm,
    invert_perm,
    min_forcing_order,
    min_replication_order,
    replication_expansion_perm,
)
from .version import ENGINE_VERSION

_FAMILIES = {
    "path": (path, 1),
    "cycle": (cycle, 1),
    "clique": (clique, 1),
    "anticlique": (anticlique, 1),
    "star": (star, 1),
    "turan": (turan, 2),
    "kpartite": (complete_multipartite, None),
    "multipartite": (complete_multipartite, None),
}


class TokenError(ValueError):
    pass


def _parse_ints(text: str, what: str) -> list[int]:
    try:
        return [int(p) for p in text.split(",") if p != ""]
    except ValueError:
        raise TokenError(f"bad {what} {text!r}: expected comma separated integers")


def parse_graph_token(token: str) -> tuple[Graph, Optional[ReplicationStructure]]:
    """Turn a command line token into a graph.

    Returns the graph and, when the token had an @sizes suffix, the
    replication structure that produced it (base graph plus blocks).
    """
    sizes: Optional[list[int]] = None
    if "@" in token:
        token, _, tail = token.partition("@")
        sizes = _parse_ints(tail, "size list")
    scheme, sep, rest = token.partition(":")
    try:
        if not sep:
            base = parse_graph6(token)
        elif scheme == "g6":
            base = parse_graph6(rest)
        elif scheme == "file":
            base = _read_graph_file(rest)
        elif scheme in ("kpartite", "multipartite"):
            base = complete_multipartite(_parse_ints(rest, "part sizes"))
        elif scheme in _FAMILIES:
            builder, arity = _FAMILIES[scheme]
            args = _parse_ints(rest, f"{scheme} parameters")
            if arity is not None and len(args) != arity:
                raise TokenError(
                    f"family {scheme!r} takes {arity} parameter(s), got {len(args)}"
                )
            base = builder(*args)
        else:
            raise TokenError(
                f"unknown scheme {scheme!r}; use g6:, file:, or a family name"
            )
    except GraphError as exc:
        raise TokenError(f"bad graph token {token!r}: {exc}") from None
    if sizes is None:
        return base, None
    try:
        structure = replication_graph(base, sizes)
    except GraphError as exc:
        raise TokenError(f"bad size suffix on {token!r}: {exc}") from None
    return structure.expanded, structure


def _read_graph_file(pathname: str) -> Graph:
    try:
        with open(pathname, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise TokenError(f"cannot read {pathname!r}: {exc}") from None
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise TokenError(f"{pathname!r} is empty")
    head = lines[0].split()
    if len(head) == 2 and all(p.lstrip("-").isdigit() for p in head):
        return parse_edge_list(text)
    return parse_graph6(lines[0])


def _thread_count(value: Optional[int]) -> int:
    if value is not None:
        return max(1, value)
    env = os.environ.get("RHO_THREADS", "")
    if env.strip():
        try:
            return max(1, int(env))
        except ValueError:
            raise TokenError(f"RHO_THREADS={env!r} is not an integer")
    return os.cpu_count() or 1


def _open_cache(args) -> Optional[ResultCache]:
    if getattr(args, "no_cache", False):
        return None
    pathname = getattr(args, "cache", None) or default_cache_path()
    return ResultCache(pathname, ENGINE_VERSION)


def _payload(verb: str, args_dict: dict, h: Graph, g: Optional[Graph]) -> dict:
    report = bounds_report(h)
    return {
        "query": {"verb": verb, "args": args_dict},
        "graphs": {
            "g": to_graph6(g) if g is not None else None,
            "h": to_graph6(h),
        },
        "bounds": report.bounds_dict(),
        "verdict": None,
        "bad_coloring": None,
        "search": None,
        "stats": {},
        "engine_version": ENGINE_VERSION,
    }


def _emit(payload: dict, as_json: bool, human_lines: list[str]) -> None:
    if as_json:
        print(json.dumps(payload, sort_keys=True))
    else:
        for line in human_lines:
            print(line)


# ---------------------------------------------------------------------------
# verb handlers

def _cmd_bounds(args) -> int:
    h, _ = parse_graph_token(args.pattern)
    payload = _payload("bounds", {"pattern": args.pattern}, h, None)
    report = bounds_report(h)
    lines = [
        f"pattern: {to_graph6(h)}  order={report.n} chromatic={report.chromatic} "
        f"non_edges={report.non_edges}",
        f"general_lower={report.general_lower} general_upper={report.general_upper} "
        f"weak_lower={report.weak_lower}",
        f"partition_lower={report.partition_lower} partition={[list(b) for b in report.partition_sets]}",
        f"replication_upper={report.replication_upper} block_order={list(report.block_order_used)}",
    ]
    if report.path_upper is not None:
        lines.append(f"path_upper={report.path_upper}")
    if report.exact is not None:
        lines.append(f"exact={report.exact} family={report.exact_family}")
    lines.append(f"bracket: [{report.best_lower()}, {report.best_upper()}]")
    _emit(payload, args.json, lines)
    return 0


def _verify_replication(g: Graph, h: Graph, structure):
    """Resolve the block structure for a strict verify; returns the structure
    plus the map from its expansion's labels back to the host's labels."""
    if structure is None:
        quotient, classes = quotient_graph(g)
        if not is_isomorphic(quotient, h):
            raise TokenError(
                "host is not recognizably a replication of the pattern; "
                "pass the host as PATTERN@s1,s2,... or use --sizes"
            )
        structure = replication_graph(
            quotient, [len(c) for c in classes], base_members=classes
        )
        # replication_graph relays blocks contiguously, so expansion vertex
        # offset+j stands for the j-th member of the original twin class
        back = [0] * g.n
        for block, members in zip(structure.blocks(), structure.base_members):
            for u, orig in zip(block, members):
                back[u] = orig
    elif not is_isomorphic(structure.base, h):
        raise TokenError("host base graph is not isomorphic to the pattern")
    else:
        back = list(range(structure.expanded.n))
    return structure, back


def _cmd_verify(args) -> int:
    h, _ = parse_graph_token(args.h)
    g, structure = parse_graph_token(args.g)
    if args.sizes:
        if structure is not None:
            raise TokenError("give block sizes either via --sizes or @..., not both")
        structure = replication_graph(g, _parse_ints(args.sizes, "size list"))
        g = structure.expanded
    payload = _payload(
        "verify",
        {"g": args.g, "h": args.h, "mode": args.mode, "sizes": args.sizes},
        h,
        g,
    )
    threads = _thread_count(args.threads)

    if args.oracle:
        if args.mode == "R":
            structure, _ = _verify_replication(g, h, structure)
            verdict = oracle_arrows(structure.expanded, mode="R", structure=structure)
        else:
            verdict = oracle_arrows(g, h, mode="r")
        payload["verdict"] = verdict
        payload["stats"] = {"oracle": True}
        word = "forces" if verdict else "does not force"
        _emit(payload, args.json, [f"{to_graph6(g)} {word} {to_graph6(h)} "
                                   f"(mode {args.mode}, by oracle)"])
        return 0 if verdict else 1

    cache = _open_cache(args)
    if args.mode == "R":
        structure, back = _verify_replication(g, h, structure)
        target = to_graph6(canonical_graph(structure.base))
        order = canonical_order(structure.base)
        mapped = ",".join(str(structure.sizes[v]) for v in order)
        g_key, h_key, mode_key = f"{target}|{mapped}", target, "R"
        perm = replication_expansion_perm(structure.base, structure.sizes)
    else:
        g_key = to_graph6(canonical_graph(g))
        h_key = to_graph6(canonical_graph(h))
        mode_key = "r"
        perm = invert_perm(canonical_order(g))
        back = list(range(g.n))

    held = cache.lookup_record(g_key, h_key, mode_key) if cache is not None else None
    bad_host: Optional[tuple[int, ...]] = None
    if held is not None and (held[0] or held[1] is not None):
        verdict, stored = held
        if stored is not None:
            in_expansion = apply_vertex_perm(stored, invert_perm(perm))
            relabeled = [0] * len(in_expansion)
            for u, c in enumerate(in_expansion):
                relabeled[back[u]] = c
            bad_host = tuple(relabeled)
        payload["stats"] = {"cached": True}
    else:
        if args.mode == "R":
            cert = arrows_replication(
                structure, node_budget=args.budget, workers=threads
            )
        else:
            cert = arrows(g, h, node_budget=args.budget, workers=threads)
        raw = cert.bad_coloring
        if raw is not None:
            relabeled = [0] * len(raw)
            for u, c in enumerate(raw):
                relabeled[back[u]] = c
            bad_host = tuple(relabeled)
        verdict = cert.arrows
        payload["stats"] = {
            "nodes": cert.stats.nodes,
            "prunes": cert.stats.prunes,
            "max_depth": cert.stats.max_depth,
            "wall_time": cert.stats.wall_time,
            "cached": False,
        }
        if cache is not None:
            stored = apply_vertex_perm(raw, perm) if raw is not None else None
            cache.record(g_key, h_key, mode_key, verdict, bad_coloring=stored)
            cache.flush()

    payload["verdict"] = verdict
    payload["bad_coloring"] = list(bad_host) if bad_host is not None else None
    word = "forces" if verdict else "does not force"
    lines = [f"{to_graph6(g)} {word} {to_graph6(h)} (mode {args.mode})"]
    if bad_host is not None:
        lines.append(f"counterexample coloring: {list(bad_host)}")
    _emit(payload, args.json, lines)
    return 0 if verdict else 1


def _search_common(args, outcome, h: Graph, verb: str) -> int:
    payload = _payload(verb, {"h": args.h}, h, None)
    witness = outcome.witness
    if witness is not None and not isinstance(witness, str):
        witness = list(witness)
    payload["search"] = {
        "status": outcome.status,
        "value": outcome.value,
        "witness": witness,
        "lower": outcome.lower,
        "upper": outcome.upper,
        "orders_exhausted": list(outcome.orders_exhausted),
    }
    payload["stats"] = outcome.stats
    lines = []
    if outcome.status == "exact":
        lines.append(f"{verb}({to_graph6(h)}) = {outcome.value}")
        lines.append(f"witness: {witness}")
    elif outcome.status == "bounded":
        up = "?" if outcome.upper is None else outcome.upper
        lines.append(
            f"{verb}({to_graph6(h)}) in [{outcome.lower}, {up}] "
            f"(no witness up to the order cap)"
        )
        if witness is not None:
            lines.append(f"upper bound witness: {witness}")
    else:
        lines.append(
            f"node budget exhausted at order {outcome.lower}; "
            f"value >= {outcome.lower}"
        )
    lines.append(
        "orders exhausted: " + ",".join(str(t) for t in outcome.orders_exhausted)
    )
    lines.append(
        f"engine_calls={outcome.stats['engine_calls']} "
        f"nodes={outcome.stats['nodes']} cache_hits={outcome.stats['cache_hits']}"
    )
    _emit(payload, args.json, lines)
    if outcome.status == "exact":
        return 0
    return 3 if outcome.status == "budget" else 1


def _cmd_rho(args) -> int:
    h, _ = parse_graph_token(args.h)
    outcome = min_forcing_order(
        h,
        max_order=args.max_order,
        node_budget=args.budget,
        search_from=args.search_from,
        workers=_thread_count(args.threads),
        cache=_open_cache(args),
        checkpoint_path=args.checkpoint,
        allow_large=args.allow_large,
    )
    return _search_common(args, outcome, h, "rho")


def _cmd_rho_r(args) -> int:
    h, _ = parse_graph_token(args.h)
    outcome = min_replication_order(
        h,
        max_order=args.max_order,
        node_budget=args.budget,
        search_from=args.search_from,
        workers=_thread_count(args.threads),
        cache=_open_cache(args),
        checkpoint_path=args.checkpoint,
    )
    return _search_common(args, outcome, h, "rho-r")


def _cmd_construct(args) -> int:
    h, _ = parse_graph_token(args.pattern)
    if args.mode == "vertex":
        structure = vertex_clique_witness(h)
    else:
        structure = block_clique_witness(h)
    g = structure.expanded
    payload = _payload("construct", {"pattern": args.pattern, "mode": args.mode}, h, g)
    payload["stats"] = {
        "order": g.n,
        "sizes": list(structure.sizes),
        "blocks": [list(b) for b in structure.blocks()],
    }
    lines = [
        f"witness host: {to_graph6(g)} (order {g.n})",
        f"block sizes: {list(structure.sizes)}",
    ]
    _emit(payload, args.json, lines)
    return 0


def _cmd_cache(args) -> int:
    pathname = args.cache or default_cache_path()
    cache = ResultCache(pathname, ENGINE_VERSION)
    if args.action == "clear":
        cache.clear()
        print(f"cleared {pathname}")
        return 0
    cache.load()
    print(f"path: {pathname}")
    print(f"entries (engine {ENGINE_VERSION}): {len(cache)}")
    return 0


# ---------------------------------------------------------------------------

def _add_common(sub, budget=True, threads=True, with_cache=False) -> None:
    sub.add_argument("--json", action="store_true", help="emit one JSON object")
    if budget:
        sub.add_argument("--budget", type=int, default=None, metavar="NODES",
                         help="abort after this many search-tree nodes")
    if threads:
        sub.add_argument("--threads", type=int, default=None,
                         help="workers (default: RHO_THREADS, else all cores)")
    if with_cache:
        sub.add_argument("--cache", default=None, metavar="PATH",
                         help="verdict cache file (default: user cache dir)")
        sub.add_argument("--no-cache", action="store_true",
                         help="do not read or write the verdict cache")


def _add_search_opts(sub) -> None:
    sub.add_argument("--max-order", type=int, default=None,
                     help="largest host order to try")
    sub.add_argument("--search-from", type=int, default=None, metavar="ORDER",
                     help="search orders below the proven bounds too")
    sub.add_argument("--checkpoint", default=None, metavar="PATH",
                     help="write resumable progress to this JSON file")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rainbowforce",
        description="Minimum host orders that force rainbow induced patterns "
        "under every proper coloring.",
    )
    subs = parser.add_subparsers(dest="verb", required=True)

    p = subs.add_parser("bounds", help="bounds and closed formulas for a pattern")
    p.add_argument("pattern")
    _add_common(p, budget=False, threads=False)
    p.set_defaults(func=_cmd_bounds)

    p = subs.add_parser("verify", help="does this host force the pattern?")
    p.add_argument("--g", required=True, metavar="HOST", dest="g")
    p.add_argument("--h", required=True, metavar="PATTERN", dest="h")
    p.add_argument("--mode", choices=("r", "R"), default="r",
                   help="r: any induced copy; R: one vertex per block")
    p.add_argument("--sizes", default=None, metavar="S1,S2,...",
                   help="expand --g by these block sizes (same as @ suffix)")
    p.add_argument("--oracle", action="store_true",
                   help="use the brute-force oracle instead of the engine")
    _add_common(p, with_cache=True)
    p.set_defaults(func=_cmd_verify)

    p = subs.add_parser("rho", help="exact minimum forcing order")
    p.add_argument("--h", required=True, metavar="PATTERN", dest="h")
    p.add_argument("--allow-large", action="store_true",
                   help="permit candidate orders above 9")
    _add_common(p, with_cache=True)
    _add_search_opts(p)
    p.set_defaults(func=_cmd_rho)

    p = subs.add_parser("rho-r", help="exact minimum over replication hosts")
    p.add_argument("--h", required=True, metavar="PATTERN", dest="h")
    _add_common(p, with_cache=True)
    _add_search_opts(p)
    p.set_defaults(func=_cmd_rho_r)

    p = subs.add_parser("construct", help="build a witness host")
    p.add_argument("pattern")
    p.add_argument("--mode", choices=("vertex", "block"), default="block",
                   help="per-vertex cliques, or per twin-class blocks")
    _add_common(p, budget=False, threads=False)
    p.set_defaults(func=_cmd_construct)

    p = subs.add_parser("cache", help="inspect or clear the verdict cache")
    p.add_argument("action", choices=("show", "clear"))
    p.add_argument("--cache", default=None, metavar="PATH")
    p.set_defaults(func=_cmd_cache)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except BudgetExceededError as exc:
        print(
            f"error: node budget exhausted after {exc.stats.nodes} nodes",
            file=sys.stderr,
        )
        return 3
    except (TokenError, GraphError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except KeyboardInterrupt:
        print("interrupted", file=sys.stderr)
        return 130


if __name__ == "__main__":
    sys.exit(main())
