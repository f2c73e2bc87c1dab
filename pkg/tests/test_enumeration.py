"""Exhaustive small-graph class enumeration."""

import pytest

from rainbowforce import (
    canonical_form,
    canonical_graph,
    class_count,
    clique,
    contains_induced,
    enumerate_graphs,
    from_edges,
    graph_classes,
    is_isomorphic,
)

import rainbowforce.enumeration as enum_mod


# Unlabeled graph counts for orders 1..7, confirmed by the independent
# labeled-graph collapse oracle below at order 4 and matching the standard
# unlabeled graph counting sequence.
_COUNTS = {1: 1, 2: 2, 3: 4, 4: 11, 5: 34, 6: 156, 7: 1044}


def test_class_counts_small():
    for order, want in _COUNTS.items():
        assert class_count(order) == want


@pytest.mark.slow
def test_class_count_order_eight():
    assert class_count(8) == 12346


def test_representatives_are_canonical_and_distinct():
    for order in range(1, 6):
        reps = graph_classes(order)
        bits = [canonical_form(g).bits for g in reps]
        assert len(set(bits)) == len(reps)
        for g in reps:
            # a representative is a fixed point of canonicalization
            assert canonical_graph(g) == g
        # pairwise non-isomorphic
        for i in range(len(reps)):
            for j in range(i + 1, len(reps)):
                assert not is_isomorphic(reps[i], reps[j])


def test_covers_every_labeled_graph_order_four():
    # Independent oracle: collapse all 2^6 labeled graphs on 4 vertices by
    # isomorphism and count the classes directly.
    pairs = [(i, j) for i in range(4) for j in range(i + 1, 4)]
    seen = []
    for mask in range(1 << 6):
        edges = [pairs[b] for b in range(6) if (mask >> b) & 1]
        g = from_edges(4, edges)
        if not any(is_isomorphic(g, h) for h in seen):
            seen.append(g)
    assert len(seen) == 11
    reps = graph_classes(4)
    assert len(reps) == 11
    for g in seen:
        assert sum(1 for h in reps if is_isomorphic(g, h)) == 1


def test_stream_is_sorted_by_canonical_bits():
    for order in (4, 5, 6):
        bits = [canonical_form(g).bits for g in enumerate_graphs(order)]
        assert bits == sorted(bits)


def test_filters_drop_rejected_graphs():
    k5 = clique(5)
    out = list(enumerate_graphs(5, filters=[lambda g: contains_induced(g, k5)]))
    assert len(out) == 1
    assert is_isomorphic(out[0], k5)

    # two stacked filters behave like their conjunction
    both = list(
        enumerate_graphs(
            4,
            filters=[lambda g: g.edge_count() >= 3, lambda g: g.degree(0) <= 1],
        )
    )
    for g in both:
        assert g.edge_count() >= 3 and g.degree(0) <= 1
    single = [g for g in enumerate_graphs(4) if g.edge_count() >= 3 and g.degree(0) <= 1]
    assert both == single


def test_large_order_guard():
    with pytest.raises(ValueError):
        class_count(10)
    with pytest.raises(ValueError):
        list(enumerate_graphs(10))
    with pytest.raises(ValueError):
        class_count(13, allow_large=True)
    with pytest.raises(ValueError):
        class_count(0)


def test_worker_count_does_not_change_results():
    seq = [canonical_form(g).bits for g in graph_classes(6)]
    saved = dict(enum_mod._CLASS_CACHE)
    try:
        # drop the memo so the parallel sweep actually runs
        enum_mod._CLASS_CACHE.clear()
        enum_mod._CLASS_CACHE[1] = [0]
        par = [canonical_form(g).bits for g in graph_classes(6, workers=3)]
    finally:
        enum_mod._CLASS_CACHE.clear()
        enum_mod._CLASS_CACHE.update(saved)
    assert seq == par
