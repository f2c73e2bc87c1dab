"""Lower/upper bounds, closed-form family values, and their cross-checks."""

import random
from fractions import Fraction

import pytest

from rainbowforce import (
    GraphError,
    anticlique,
    bounds_report,
    chromatic_number,
    clique,
    complete_multipartite,
    composition_bounds,
    cycle,
    disjoint_union,
    exact_formula,
    from_edges,
    general_bounds,
    independent_partition_bound,
    is_turan,
    path,
    path_upper_bound,
    replication_upper_bound,
    star,
    turan,
    weak_lower_bound,
)


def _random_graph(rng, n, p=0.5):
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    return from_edges(n, edges)


def _partitions_of_set(items):
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for smaller in _partitions_of_set(rest):
        for i in range(len(smaller)):
            yield smaller[:i] + [[first] + smaller[i]] + smaller[i + 1:]
        yield [[first]] + smaller


def _best_partition_brute(h):
    """Exhaustive maximum of sum x*(x+1)/2 over independent-set partitions."""
    best = 0
    for parts in _partitions_of_set(list(range(h.n))):
        if all(
            not h.has_edge(u, v)
            for block in parts
            for i, u in enumerate(block)
            for v in block[i + 1:]
        ):
            best = max(best, sum(len(b) * (len(b) + 1) // 2 for b in parts))
    return best


# --- the general two-sided bound ---

def test_path_bound_table():
    assert general_bounds(path(4)) == (6, 7)
    assert general_bounds(path(5)) == (9, 11)
    assert general_bounds(path(6)) == (12, 16)
    assert general_bounds(path(7)) == (16, 22)


def test_general_bounds_extremes():
    assert general_bounds(clique(6)) == (6, 6)
    assert general_bounds(anticlique(4)) == (10, 10)


def test_weak_lower_bound_form():
    # (n/2) * (n/chi + 1), exact as a fraction
    assert weak_lower_bound(path(4)) == Fraction(4, 2) * (Fraction(4, 2) + 1)
    assert weak_lower_bound(cycle(5)) == Fraction(5, 2) * (Fraction(5, 3) + 1)


def test_weak_lower_never_exceeds_integral_lower():
    rng = random.Random(53)
    for _ in range(40):
        h = _random_graph(rng, rng.randint(1, 8))
        lower, upper = general_bounds(h)
        weak = weak_lower_bound(h)
        assert weak <= lower <= upper
        # the two lower bounds agree exactly when the chromatic number
        # divides the order
        if h.n % chromatic_number(h) == 0:
            assert weak == lower


# --- the independent-partition lower bound ---

def test_partition_bound_examples():
    value, parts = independent_partition_bound(disjoint_union(clique(2), clique(2)))
    assert value == 6
    assert sorted(len(b) for b in parts) == [2, 2]
    value, _ = independent_partition_bound(cycle(5))
    assert value == 7


def test_partition_bound_explicit_partition():
    h = path(4)
    value, parts = independent_partition_bound(h, partition=[(0, 2), (1, 3)])
    assert value == 6 and len(parts) == 2
    with pytest.raises(GraphError):
        independent_partition_bound(h, partition=[(0, 1), (2, 3)])  # not independent
    with pytest.raises(GraphError):
        independent_partition_bound(h, partition=[(0, 2), (1,)])  # misses vertex 3


def test_partition_bound_matches_brute_force():
    rng = random.Random(59)
    for _ in range(25):
        h = _random_graph(rng, rng.randint(1, 6))
        value, parts = independent_partition_bound(h)
        assert value == _best_partition_brute(h)
        assert sorted(v for b in parts for v in b) == list(range(h.n))


# --- the block-construction upper bound ---

def test_replication_upper_known_values():
    for n in range(1, 7):
        two = disjoint_union(clique(n), clique(n))
        assert replication_upper_bound(two)[0] == 3 * n
    assert replication_upper_bound(clique(5))[0] == 5
    assert replication_upper_bound(anticlique(4))[0] == 10


def test_replication_upper_exhaustive_no_worse():
    rng = random.Random(61)
    for _ in range(20):
        h = _random_graph(rng, rng.randint(1, 6))
        default, _ = replication_upper_bound(h)
        best, _ = replication_upper_bound(h, "exhaustive")
        assert best <= default
        assert best >= independent_partition_bound(h)[0]


def test_bounds_nest():
    rng = random.Random(67)
    for _ in range(30):
        h = _random_graph(rng, rng.randint(1, 7))
        report = bounds_report(h)
        assert report.weak_lower <= report.general_lower
        assert report.best_lower() <= report.best_upper()
        assert report.replication_upper <= report.general_upper


# --- closed formulas ---

def test_exact_formula_values():
    assert exact_formula(clique(7)) == (7, "clique")
    assert exact_formula(anticlique(4)) == (10, "anticlique")
    assert exact_formula(star(6)) == (16, "star")
    # balanced part sizes fall under the (equal-valued) Turan tag instead
    assert exact_formula(complete_multipartite([2, 2, 3])) == (12, "turan")
    assert exact_formula(complete_multipartite([2, 4])) == (13, "complete_multipartite")
    got = exact_formula(disjoint_union(clique(3), clique(2), clique(2)))
    assert got == (3 + 4 + 6, "disjoint_cliques")
    assert exact_formula(path(4)) is None
    assert exact_formula(cycle(5)) is None


def test_exact_formula_turan():
    # order n = kr + s with 0 < s <= r: value is ceil(n/r) * (n+s) / 2
    value, family = exact_formula(turan(7, 3))
    assert family in ("turan", "complete_multipartite")
    assert value == 3 * (7 + 1) // 2
    assert is_turan(turan(7, 3))
    assert is_turan(clique(4))
    assert not is_turan(path(4))
    assert not is_turan(disjoint_union(clique(2), clique(2)))


def test_disjoint_cliques_three_ways():
    # the optimized partition bound, the block construction in nondecreasing
    # order, and the weighted-sum formula must agree on clique unions
    rng = random.Random(71)
    for _ in range(15):
        parts = [rng.randint(1, 4) for _ in range(rng.randint(1, 4))]
        if sum(parts) > 12:
            continue
        h = disjoint_union(*[clique(p) for p in parts])
        desc = sorted(parts, reverse=True)
        formula = sum((i + 1) * y for i, y in enumerate(desc))
        assert exact_formula(h) == (formula, "disjoint_cliques") or len(parts) == 1
        assert independent_partition_bound(h)[0] == formula
        assert replication_upper_bound(h)[0] == formula


def test_multipartite_formula_matches_partition_bound():
    rng = random.Random(73)
    for _ in range(15):
        parts = [rng.randint(1, 4) for _ in range(rng.randint(2, 4))]
        h = complete_multipartite(parts)
        expected = sum(x * (x + 1) // 2 for x in parts)
        value, _ = exact_formula(h)
        assert value == expected
        assert independent_partition_bound(h)[0] == expected


# --- path upper bound ---

def test_path_upper_bound_values():
    assert path_upper_bound(5) == 10
    assert path_upper_bound(7) == 19
    assert path_upper_bound(12) == 63
    assert path_upper_bound(14) == 86
    assert path_upper_bound(6) == 14
    # tiny cases line up with the known exact values
    assert path_upper_bound(2) == 2
    assert path_upper_bound(3) == 4
    assert path_upper_bound(4) == 7


def test_path_upper_bound_dominates_general_lower():
    for n in range(2, 30):
        h_lower = general_bounds(path(n))[0] if n <= 20 else None
        if h_lower is not None:
            assert path_upper_bound(n) >= h_lower


# --- composing two patterns ---

def test_composition_bounds_window():
    h1, h2 = clique(2), clique(3)
    lo, hi = composition_bounds(2, 3, h1, h2, cross_edges=[])
    assert lo == 5 and hi == 5 + 6  # all six cross pairs missing
    lo, hi = composition_bounds(
        2, 3, h1, h2, cross_edges=[(u, v) for u in range(2) for v in range(3)]
    )
    assert lo == hi == 5  # full join adds nothing
