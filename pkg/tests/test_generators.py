import random

import pytest

from purplepack.generators import (
    FAMILIES,
    GenSpec,
    _ArrayAdjacency,
    bec_pair,
    generate,
    generate_with_status,
    girth_pair,
    petersen,
    sauer_spencer_pair,
    small_pair,
    standard_family,
)
from purplepack.graph import Graph, GraphError, find_even_short_cycle, has_odd_path


def test_genspec_validation():
    with pytest.raises(GraphError):
        GenSpec(0, 2)
    with pytest.raises(GraphError):
        GenSpec(3, -1)
    with pytest.raises(GraphError):
        GenSpec(3, 1, edge_budget=-2)


def test_budget_example_with_girth():
    res = generate_with_status(GenSpec(10, 2, True, seed=4, edge_budget=10))
    g = res.graph
    assert g.m <= 10 and g.max_degree <= 2
    assert find_even_short_cycle(g) is None
    assert res.shortfall == (g.m < 10)


def test_small_examples():
    g = generate(GenSpec(4, 1, seed=9))
    assert g.max_degree <= 1
    assert generate(GenSpec(1, 5, True, seed=1)) == Graph(1)
    assert generate(GenSpec(12, 0, seed=3)).m == 0


def test_budget_reached_without_shortfall():
    res = generate_with_status(GenSpec(30, 3, seed=2, edge_budget=5))
    assert res.graph.m == 5 and not res.shortfall


@pytest.mark.parametrize("seed", range(6))
def test_seed_determinism(seed):
    spec = GenSpec(80, 4, True, seed)
    assert generate(spec).edges == generate(spec).edges


def test_different_seeds_differ():
    assert generate(GenSpec(40, 3, seed=1)) != generate(GenSpec(40, 3, seed=2))


def test_generated_corpus_respects_cap_and_girth():
    rng = random.Random(21)
    for _ in range(40):
        n = rng.randint(1, 200)
        cap = rng.randint(0, 8)
        forbid = rng.random() < 0.6
        g = generate(GenSpec(n, cap, forbid, rng.getrandbits(64)))
        assert all(len(a) <= cap for a in g.adj)
        if forbid:
            assert find_even_short_cycle(g) is None


def test_sampled_mode_for_large_n():
    g = generate(GenSpec(700, 5, True, seed=1))
    assert g.max_degree <= 5
    assert g.m > 700
    assert find_even_short_cycle(g) is None


def test_kernel_agrees_with_reference_search():
    rng = random.Random(8)
    for _ in range(60):
        n = rng.randint(2, 25)
        cap = rng.randint(1, 5)
        arrays = _ArrayAdjacency(n, cap)
        adj = [set() for _ in range(n)]
        pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
        rng.shuffle(pairs)
        for u, v in pairs:
            if len(adj[u]) < cap and len(adj[v]) < cap and rng.random() < 0.5:
                arrays.add(u, v)
                adj[u].add(v)
                adj[v].add(u)
        for u, v in rng.sample(pairs, min(40, len(pairs))):
            assert arrays.closes_short_even_cycle(u, v) == has_odd_path(adj, u, v, (3, 5, 7))


def test_standard_families():
    assert standard_family("matching", 4).sorted_edges() == [(0, 1), (2, 3)]
    c10 = standard_family("cycle", 10)
    assert c10.m == 10 and find_even_short_cycle(c10) is None
    star = standard_family("star", 4)
    assert star.adj[0] == {1, 2, 3} and star.m == 3
    assert standard_family("complete", 5).m == 10
    assert standard_family("edgeless", 3).m == 0
    assert standard_family("path", 1).m == 0
    assert set(FAMILIES) == {"matching", "cycle", "path", "star", "complete", "edgeless"}


@pytest.mark.parametrize("name,n", [("matching", 3), ("cycle", 2), ("nope", 4), ("path", 0)])
def test_standard_family_errors(name, n):
    with pytest.raises(GraphError):
        standard_family(name, n)


def test_petersen_shape():
    p = petersen()
    assert p.n == 10 and p.m == 15
    assert all(len(a) == 3 for a in p.adj)


def test_instance_pair_regimes():
    for seed in range(30):
        b, r = sauer_spencer_pair(seed)
        assert 2 * b.max_degree * r.max_degree < b.n == r.n
        b, r = bec_pair(seed)
        assert (b.max_degree + 1) * (r.max_degree + 1) <= b.n + 1
        b, r = small_pair(seed)
        assert 2 <= b.n == r.n <= 7
    b, r = girth_pair(1, 40, 80, 4)
    assert find_even_short_cycle(b) is None and find_even_short_cycle(r) is None
    assert b.max_degree <= 4
