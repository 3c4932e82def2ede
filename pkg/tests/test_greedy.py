import random

from hypothesis import given, settings
from hypothesis import strategies as st

from dynmis.engine import greedy_induced_mis
from dynmis.verify import enumerate_maximal_independent_sets


def forest_union(n, alpha, rng, density=1.0):
    """Random graph that is a union of ``alpha`` forests (the certificate)."""
    edges = set()
    if n < 2:
        return []
    for _ in range(alpha):
        parent = list(range(n))

        def find(x):
            while parent[x] != x:
                x = parent[x]
            return x

        for _ in range(int(density * n)):
            u, v = rng.sample(range(n), 2)
            ru, rv = find(u), find(v)
            if ru != rv and (min(u, v), max(u, v)) not in edges:
                parent[ru] = rv
                edges.add((min(u, v), max(u, v)))
    return sorted(edges)


def test_empty_input():
    assert greedy_induced_mis([], [], 1) == set()


def test_star_takes_the_leaves():
    assert greedy_induced_mis([0, 1, 2, 3], [(0, 1), (0, 2), (0, 3)], 1) == {1, 2, 3}


def test_triangle_takes_lowest_id():
    assert greedy_induced_mis([0, 1, 2], [(0, 1), (1, 2), (0, 2)], 2) == {0}


def test_low_id_middle_of_a_path_is_not_picked_first():
    # with a degree cut-off of 2*alpha the middle vertex 0 would be taken,
    # leaving a single vertex out of three
    assert greedy_induced_mis([0, 1, 2], [(1, 0), (0, 2)], 1) == {1, 2}


def test_star_has_a_unique_largest_answer():
    sets = enumerate_maximal_independent_sets(4, [(0, 1), (0, 2), (0, 3)])
    assert sorted(map(sorted, sets)) == [[0], [1, 2, 3]]


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 12), st.integers(1, 3), st.integers(0, 2**32))
def test_result_is_a_maximal_set_and_large(n, alpha, seed):
    rng = random.Random(seed)
    edges = forest_union(n, alpha, rng)
    chosen = greedy_induced_mis(range(n), edges, alpha)
    assert frozenset(chosen) in enumerate_maximal_independent_sets(n, edges)
    assert len(chosen) >= -(-n // (2 * alpha))


def test_sparse_subset_of_vertices():
    # vertex ids need not be contiguous
    assert greedy_induced_mis([10, 20, 30], [(10, 30)], 1) == {10, 20}
