"""The coloring-search engine against its brute-force oracle."""

import random

import pytest

from rainbowforce import (
    BudgetExceededError,
    ImproperColoringError,
    PatternTooLargeError,
    anticlique,
    arrows,
    arrows_replication,
    check_proper,
    clique,
    cycle,
    default_vertex_order,
    disjoint_union,
    find_rainbow_copy,
    find_rainbow_transversal,
    from_edges,
    induced_subgraph,
    is_isomorphic,
    oracle_arrows,
    path,
    replication_graph,
    star,
    vertex_clique_witness,
)


def _random_graph(rng, n, p=0.5):
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    return from_edges(n, edges)


def _proper_colorings(g, rng, count):
    """A few random proper colorings, greedily repaired."""
    out = []
    for _ in range(count):
        order = list(range(g.n))
        rng.shuffle(order)
        cols = [0] * g.n
        for v in order:
            used = {cols[u] for u in range(g.n) if g.has_edge(u, v) and u in order[: order.index(v)]}
            c = 0
            while c in used:
                c += 1
            cols[v] = c
        out.append(tuple(cols))
    return out


# --- rainbow copy lookup ---

def test_find_rainbow_copy_on_clique():
    g = clique(3)
    emb = find_rainbow_copy(g, (0, 1, 2), clique(3))
    assert emb is not None and sorted(emb) == [0, 1, 2]


def test_find_rainbow_copy_absent():
    assert find_rainbow_copy(path(3), (0, 1, 0), path(3)) is None


def test_find_rainbow_copy_is_induced_and_rainbow():
    rng = random.Random(83)
    for _ in range(40):
        g = _random_graph(rng, rng.randint(2, 7))
        h = _random_graph(rng, rng.randint(1, min(4, g.n)))
        for cols in _proper_colorings(g, rng, 3):
            emb = find_rainbow_copy(g, cols, h)
            if emb is None:
                continue
            assert len(set(emb)) == h.n
            assert len({cols[v] for v in emb}) == h.n
            for u in range(h.n):
                for v in range(u + 1, h.n):
                    assert g.has_edge(emb[u], emb[v]) == h.has_edge(u, v)


def test_find_rainbow_copy_must_include():
    g = path(4)
    emb = find_rainbow_copy(g, (0, 1, 2, 3), path(2), must_include=3)
    assert emb is not None and 3 in emb
    # vertex 0 of P_4 colored same as nothing; forcing an endpoint works too
    emb = find_rainbow_copy(g, (0, 1, 0, 1), path(2), must_include=0)
    assert emb is not None and 0 in emb


def test_find_rainbow_copy_rejects_improper():
    with pytest.raises(ImproperColoringError):
        find_rainbow_copy(clique(2), (0, 0), clique(2))
    with pytest.raises(ImproperColoringError):
        check_proper(clique(2), (0,))


def test_pattern_too_large():
    with pytest.raises(PatternTooLargeError):
        find_rainbow_copy(path(2), (0, 1), path(3))
    with pytest.raises(PatternTooLargeError):
        arrows(path(2), path(3))


# --- transversals ---

def test_transversal_on_clique_blocks():
    rs = replication_graph(clique(3), (1, 1, 1))
    pick = find_rainbow_transversal(rs, (0, 1, 2))
    assert pick == (0, 1, 2)


def test_transversal_soundness():
    rng = random.Random(89)
    for _ in range(25):
        base = _random_graph(rng, rng.randint(1, 4))
        sizes = [rng.randint(1, 3) for _ in range(base.n)]
        rs = replication_graph(base, sizes)
        for cols in _proper_colorings(rs.expanded, rng, 3):
            pick = find_rainbow_transversal(rs, cols)
            if pick is None:
                continue
            assert len(pick) == base.n
            # one vertex per block, distinct colors, induces the base
            assert [rs.clique_of[v] for v in pick] == list(range(base.n))
            assert len({cols[v] for v in pick}) == base.n
            assert induced_subgraph(rs.expanded, pick).adj == base.adj


# --- arrows verdicts ---

def test_cliques_force_themselves():
    for n in range(1, 7):
        cert = arrows(clique(n), clique(n))
        assert cert.arrows and cert.bad_coloring is None


def test_two_cliques_force_two_disjoint_edges():
    g = disjoint_union(clique(2), clique(4))
    h = disjoint_union(clique(2), clique(2))
    assert arrows(g, h).arrows


def test_not_arrows_certificate_revalidates():
    cert = arrows(path(4), path(4))
    assert not cert.arrows
    bad = cert.bad_coloring
    assert bad is not None
    check_proper(path(4), bad)
    assert find_rainbow_copy(path(4), bad, path(4)) is None


def test_bad_coloring_is_stable():
    # depth-first in color order along the fixed assignment order, so the
    # counterexample is reproducible
    a = arrows(path(4), path(4)).bad_coloring
    b = arrows(path(4), path(4)).bad_coloring
    assert a == b == (0, 1, 2, 0)


def test_engine_matches_oracle_random():
    rng = random.Random(97)
    patterns = [path(2), path(3), clique(3), path(4)]
    checked = 0
    for _ in range(60):
        g = _random_graph(rng, rng.randint(2, 6), p=rng.choice([0.3, 0.5, 0.7]))
        h = rng.choice([p for p in patterns if p.n <= g.n])
        got = arrows(g, h)
        assert got.arrows == oracle_arrows(g, h, "r")
        if not got.arrows:
            check_proper(g, got.bad_coloring)
            assert find_rainbow_copy(g, got.bad_coloring, h) is None
        checked += 1
    assert checked == 60


def test_replication_engine_matches_oracle_random():
    rng = random.Random(101)
    for _ in range(40):
        base = _random_graph(rng, rng.randint(1, 4))
        sizes = [rng.randint(1, 2) for _ in range(base.n)]
        rs = replication_graph(base, sizes)
        if rs.expanded.n > 8:
            continue
        got = arrows_replication(rs)
        assert got.arrows == oracle_arrows(rs.expanded, mode="R", structure=rs)
        if not got.arrows:
            assert find_rainbow_transversal(rs, got.bad_coloring) is None


def test_replication_small_cases():
    assert arrows_replication(replication_graph(clique(3), (1, 1, 1))).arrows
    assert arrows_replication(replication_graph(path(3), (1, 1, 2))).arrows
    assert not arrows_replication(replication_graph(path(3), (1, 1, 1))).arrows


def test_oracle_guards():
    with pytest.raises(ValueError):
        oracle_arrows(clique(9), clique(2), "r")
    with pytest.raises(ValueError):
        oracle_arrows(clique(3), None, "r")
    with pytest.raises(ValueError):
        oracle_arrows(clique(3), mode="R")
    assert not oracle_arrows(path(4), path(4), "r")
    assert oracle_arrows(vertex_clique_witness(path(3)).expanded, path(3), "r")


def test_isolated_vertex_monotonicity():
    # anything forced stays forced after adding an isolated vertex
    winners = [
        (from_edges(4, [(0, 3), (1, 2), (1, 3), (2, 3)]), path(3)),
        (disjoint_union(clique(2), clique(4)), disjoint_union(clique(2), clique(2))),
        (clique(4), clique(4)),
    ]
    for g, h in winners:
        assert arrows(g, h).arrows
        bigger = disjoint_union(g, anticlique(1))
        assert arrows(bigger, h).arrows


def test_prefix_rainbow_persists_under_extension():
    # a rainbow copy inside an already-colored prefix survives any completion;
    # spot-check: whenever the prefix of a full proper coloring contains a
    # rainbow copy, the full coloring does too
    rng = random.Random(103)
    for _ in range(30):
        g = _random_graph(rng, rng.randint(3, 7))
        h = rng.choice([path(2), path(3), clique(3)])
        if h.n > g.n:
            continue
        order = default_vertex_order(g)
        for cols in _proper_colorings(g, rng, 2):
            for k in range(h.n, g.n):
                prefix = order[:k]
                sub = induced_subgraph(g, prefix)
                subcols = [cols[v] for v in prefix]
                if find_rainbow_copy(sub, subcols, h) is not None:
                    assert find_rainbow_copy(g, cols, h) is not None


def test_vertex_order_is_configurable_and_irrelevant_to_verdict():
    rng = random.Random(107)
    for _ in range(15):
        g = _random_graph(rng, rng.randint(2, 6))
        h = rng.choice([path(2), path(3)])
        base = arrows(g, h).arrows
        order = list(range(g.n))
        rng.shuffle(order)
        assert arrows(g, h, vertex_order=order).arrows == base


def test_default_vertex_order_shape():
    g = star(4)
    order = default_vertex_order(g)
    assert order[-1] == 0  # the hub has the highest degree, so it goes last
    assert sorted(order) == [0, 1, 2, 3]


def test_node_budget():
    with pytest.raises(BudgetExceededError) as err:
        arrows(cycle(6), path(4), node_budget=3)
    assert err.value.stats.nodes >= 3
    # a generous budget changes nothing
    a = arrows(cycle(6), path(4))
    b = arrows(cycle(6), path(4), node_budget=10 ** 9)
    assert a.arrows == b.arrows and a.bad_coloring == b.bad_coloring


def test_parallel_matches_sequential():
    cases = [
        (disjoint_union(clique(2), clique(4)), disjoint_union(clique(2), clique(2))),
        (cycle(7), path(4)),
        (vertex_clique_witness(path(4)).expanded, path(4)),
    ]
    for g, h in cases:
        seq = arrows(g, h, workers=1)
        par = arrows(g, h, workers=3)
        assert seq.arrows == par.arrows
        assert seq.bad_coloring == par.bad_coloring


def test_parallel_replication_matches_sequential():
    rs = replication_graph(path(5), (1, 2, 2, 2, 3))
    assert arrows_replication(rs, workers=3).arrows
    rs = replication_graph(path(5), (1, 1, 2, 2, 3))
    seq = arrows_replication(rs, workers=1)
    par = arrows_replication(rs, workers=3)
    assert seq.arrows == par.arrows
    assert seq.bad_coloring == par.bad_coloring


def test_certificate_metadata():
    cert = arrows(cycle(5), path(3))
    assert cert.mode == "r"
    assert cert.vertex_order == default_vertex_order(cycle(5))
    assert cert.stats.nodes > 0
    assert cert.stats.wall_time >= 0.0
