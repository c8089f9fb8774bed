import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from torsdiam.errors import ConfigError, InvariantViolation, RejectionCapExceeded, ScaleExceeded
from torsdiam.schreier import (
    DiameterStatistics,
    SchreierGraph,
    canonical_arrays,
    diameter_lower_bound,
    diameter_statistics,
    enumerate_subgroup_tables,
    enumerate_subgroups,
    graph_canonical_form,
    graph_diameter,
    sample_schreier,
    sample_with_seed_for_trial,
)
from torsdiam.subgroups import count_subgroups


def _bfs_diameter(g):
    # plain-python reference
    n = g.n_vertices
    adj = [set() for _ in range(n)]
    for v in range(n):
        for w in (g.sigma_a[v], g.sigma_b[v]):
            adj[v].add(w)
            adj[w].add(v)
    best = 0
    for s in range(n):
        dist = {s: 0}
        frontier = [s]
        while frontier:
            nxt = []
            for v in frontier:
                for w in adj[v]:
                    if w not in dist:
                        dist[w] = dist[v] + 1
                        nxt.append(w)
            frontier = nxt
        best = max(best, max(dist.values()))
    return best


def test_validation():
    with pytest.raises(ConfigError):
        SchreierGraph(2, (0, 0), (1, 0))
    with pytest.raises(ConfigError):
        SchreierGraph(2, (0, 1), (1, 0), base_vertex=2)


def test_json_round_trip():
    g = sample_schreier(20, 3)
    assert SchreierGraph.from_json(g.to_json()) == g
    assert g.is_transitive()
    assert all(g.degree(v) == 4 for v in range(g.n_vertices))
    assert len(g.edges()) == 2 * g.n_vertices


def test_six_cycle_diameter():
    # sigma_a rotates, sigma_b fixes everything: a 6-cycle with loops
    g = SchreierGraph.from_arrays([1, 2, 3, 4, 5, 0], range(6))
    assert graph_diameter(g) == 3


def test_intransitive_rejected():
    g = SchreierGraph.from_arrays([1, 0, 2], [1, 0, 2])
    assert not g.is_transitive()
    with pytest.raises(ConfigError):
        graph_diameter(g)


@pytest.mark.parametrize("n", range(1, 8))
def test_enumeration_counts(n):
    sa, sb = enumerate_subgroup_tables(n)
    assert len(sa) == count_subgroups(n).a(n)


@pytest.mark.parametrize("n", range(1, 6))
def test_enumeration_is_canonical_and_distinct(n):
    graphs = enumerate_subgroups(n)
    keys = {graph_canonical_form(g) for g in graphs}
    assert len(keys) == len(graphs)
    for g in graphs:
        ca, cb = canonical_arrays(g.sigma_a, g.sigma_b)
        assert list(ca) == list(g.sigma_a) and list(cb) == list(g.sigma_b)


def test_enumeration_matches_brute_force_n4():
    # every transitive pair with base 0, deduplicated by canonical form
    import itertools
    n = 4
    perms = list(itertools.permutations(range(n)))
    keys = set()
    for a in perms:
        for b in perms:
            g = SchreierGraph.from_arrays(a, b)
            if g.is_transitive():
                keys.add(graph_canonical_form(g))
    assert keys == {graph_canonical_form(g) for g in enumerate_subgroups(n)}


def test_enumeration_ceiling():
    with pytest.raises(ScaleExceeded, match="enumeration scale exceeded"):
        enumerate_subgroups(8)


@given(st.integers(2, 40), st.integers(0, 2**32), st.randoms(use_true_random=False))
def test_canonical_form_relabel_invariant(n, seed, rnd):
    g = sample_schreier(n, seed)
    perm = list(range(n))
    rnd.shuffle(perm)
    inv = np.argsort(perm)
    # conjugate: vertex v becomes perm[v]
    sa = [perm[g.sigma_a[inv[v]]] for v in range(n)]
    sb = [perm[g.sigma_b[inv[v]]] for v in range(n)]
    h = SchreierGraph.from_arrays(sa, sb, perm[g.base_vertex])
    assert graph_canonical_form(h) == graph_canonical_form(g)
    assert graph_diameter(h) == graph_diameter(g)


@given(st.integers(2, 30), st.integers(0, 2**32))
def test_canonical_form_sees_base_vertex(n, seed):
    # moving the base gives the conjugate subgroup; equal keys only if the map fixes it
    g = sample_schreier(n, seed)
    g2 = SchreierGraph.from_arrays(g.sigma_a, g.sigma_b, 1)
    same = graph_canonical_form(g2) == graph_canonical_form(g)
    ca, cb = canonical_arrays(g.sigma_a, g.sigma_b, 0)
    da, db = canonical_arrays(g.sigma_a, g.sigma_b, 1)
    assert same == (np.array_equal(ca, da) and np.array_equal(cb, db))


@given(st.integers(1, 60), st.integers(0, 2**32))
def test_diameter_matches_reference(n, seed):
    g = sample_schreier(n, seed)
    assert graph_diameter(g) == _bfs_diameter(g)
    assert graph_diameter(g) >= diameter_lower_bound(n)


def test_lower_bound_values():
    assert [diameter_lower_bound(n) for n in (1, 2, 5, 6, 17, 18, 243, 729, 2187)] == \
        [0, 1, 1, 2, 2, 3, 5, 6, 7]
    for n in range(1, 3000, 37):
        assert diameter_lower_bound(n) == math.ceil(math.log((n + 1) / 2, 3) - 1e-12)


def test_sampler_determinism():
    assert sample_schreier(50, 11) == sample_schreier(50, 11)
    assert sample_schreier(50, 11) != sample_schreier(50, 12)


def test_sampler_uniform_n3():
    # all 13 index-3 subgroups equally likely (chi-square, fixed seeds)
    keys = {graph_canonical_form(g): 0 for g in enumerate_subgroups(3)}
    draws = 2600
    for s in range(draws):
        keys[graph_canonical_form(sample_schreier(3, s))] += 1
    exp = draws / 13
    chi2 = sum((c - exp) ** 2 / exp for c in keys.values())
    assert chi2 < 32.9  # 99.9% quantile, 12 dof


def test_rejection_cap():
    with pytest.raises(RejectionCapExceeded):
        for s in range(50):
            sample_schreier(40, s, rejection_cap=1)


def test_statistics_reproducible_and_thread_independent():
    a = diameter_statistics(81, 40, 7)
    b = diameter_statistics(81, 40, 7, threads=2)
    assert a.diameters == b.diameters
    assert a.to_csv() == b.to_csv()
    assert a.to_csv().splitlines()[0] == "trial,diameter"
    g = sample_with_seed_for_trial(81, 7, 5)
    assert graph_diameter(g) == a.diameters[5]


def test_statistics_floor_guard():
    with pytest.raises(InvariantViolation):
        DiameterStatistics(243, 1, (4,), 0)


def test_statistics_config_errors():
    with pytest.raises(ConfigError):
        diameter_statistics(2, 10, 0)
    with pytest.raises(ConfigError):
        diameter_statistics(10, 0, 0)
