import random
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from canontree.decomposition import (
    DecompositionError,
    classify_parts,
    consistent_orientations,
    decomposition_from_nested,
    inhabited_node,
    iter_consistent_orientations,
    orients_toward_node,
    validate_decomposition,
)
from canontree.fixtures import load_fixture
from canontree.graph import Graph
from canontree.profiles import block_profile, enumerate_profiles, inconsistent_pair, k_blocks
from canontree.separations import (
    LimitExceeded,
    Separation,
    enumerate_separations,
    inversion_closure,
    nested,
    unordered_pairs,
)
from canontree.strategies import run_iterated

from .conftest import graphs


def random_nested_system(seps, seed):
    rng = random.Random(seed)
    pool = unordered_pairs(seps)
    rng.shuffle(pool)
    chosen = []
    for s in pool:
        if all(nested(s, t) for t in chosen):
            chosen.append(s)
    return inversion_closure(chosen)


def brute_consistent(N):
    reps = unordered_pairs(N)
    out = set()
    for bits in product((False, True), repeat=len(reps)):
        O = frozenset(r.inverse() if b else r for r, b in zip(reps, bits))
        if inconsistent_pair(O) is None:
            out.add(O)
    return out


class TestConstruction:
    def test_empty_system_gives_one_part(self):
        G = Graph.cycle(5)
        td = decomposition_from_nested(G, [])
        assert td.size == 1 and td.part(0) == list(range(5)) and td.edges == []

    def test_path(self):
        G = Graph.path(4)
        td = decomposition_from_nested(G, enumerate_separations(G, 2))
        assert sorted(map(tuple, (td.part(t) for t in range(td.size)))) == [(0, 1), (1, 2), (2, 3)]
        assert len(td.edges) == 2
        assert sorted(td.degree(t) for t in range(3)) == [1, 1, 2]
        assert td.adhesion() == 1

    def test_example4_is_a_star(self):
        k, c = load_fixture("example4")
        G = c.graph
        seps = enumerate_separations(G, k, max_n=G.n)
        profiles = [block_profile(X, seps) for X in k_blocks(G, k)]
        run = run_iterated(G, k, "ext", profiles, system=seps)
        td = decomposition_from_nested(G, run.chosen)
        assert td.size == 4
        centre = [t for t in range(td.size) if td.degree(t) == 3]
        assert len(centre) == 1
        assert set(c.sets["K"]) <= set(td.part(centre[0]))
        assert all(label == ["essential"] for label in classify_parts(td, profiles).values())

    def test_rejects_crossing_system(self):
        G = Graph.cycle(4)
        s = Separation.of([0, 1, 3], [1, 2, 3])
        t = Separation.of([0, 1, 2], [0, 2, 3])
        with pytest.raises(DecompositionError, match="not nested"):
            decomposition_from_nested(G, inversion_closure([s, t]))

    def test_rejects_missing_inverse(self):
        G = Graph.path(3)
        with pytest.raises(DecompositionError, match="inversion-closed"):
            decomposition_from_nested(G, [Separation.of([0, 1], [1, 2])])

    def test_hub_in_glued_k5(self):
        k, c = load_fixture("glued_k5_3")
        G = c.graph
        seps = enumerate_separations(G, k)
        profiles = [block_profile(X, seps) for X in k_blocks(G, k)]
        td = decomposition_from_nested(G, seps)
        labels = classify_parts(td, profiles)
        hubs = [t for t in range(td.size) if "hub" in labels[t]]
        assert [td.part(t) for t in hubs] == [[0]]
        assert labels[hubs[0]] == ["inessential", "hub"]
        assert td.degree(hubs[0]) == 3

    def test_serialisation(self):
        G = Graph.path(3)
        td = decomposition_from_nested(G, enumerate_separations(G, 2))
        data = td.to_json()
        assert [n["part"] for n in data["nodes"]] == [td.part(t) for t in range(td.size)]
        dot = td.to_dot()
        assert dot.startswith("graph decomposition {") and dot.count("--") == 1

    @settings(max_examples=80, deadline=None)
    @given(graphs(min_n=2, max_n=7), st.integers(1, 4), st.integers(0, 10**6))
    def test_random_nested_systems_decompose(self, G, k, seed):
        N = random_nested_system(enumerate_separations(G, k), seed)
        td = decomposition_from_nested(G, N)
        assert validate_decomposition(td) == []
        assert td.size == len(N) // 2 + 1
        assert td.adhesion() < k or not N


class TestOrientations:
    @settings(max_examples=60, deadline=None)
    @given(graphs(min_n=2, max_n=6), st.integers(1, 3), st.integers(0, 10**6))
    def test_matches_brute_force(self, G, k, seed):
        N = random_nested_system(enumerate_separations(G, k), seed)
        assert set(consistent_orientations(N)) == brute_consistent(N)

    @settings(max_examples=30, deadline=None)
    @given(graphs(min_n=2, max_n=6), st.integers(1, 3), st.integers(0, 10**6))
    def test_random_order_yields_the_same_set(self, G, k, seed):
        N = random_nested_system(enumerate_separations(G, k), seed)
        shuffled = list(iter_consistent_orientations(N, rng=random.Random(seed)))
        assert len(shuffled) == len(set(shuffled))
        assert set(shuffled) == set(consistent_orientations(N))

    def test_limit(self):
        G = Graph.cycle(6)
        seps = enumerate_separations(G, 3)
        with pytest.raises(LimitExceeded):
            consistent_orientations(seps, limit=3)


class TestTargets:
    def test_inhabited_node(self):
        G = Graph.path(4)
        seps = enumerate_separations(G, 2)
        td = decomposition_from_nested(G, seps)
        for X in k_blocks(G, 2):
            t = inhabited_node(td, block_profile(X, seps))
            assert set(X) == set(td.part(t))

    def test_inconsistent_orientation_gets_witness(self):
        G = Graph.path(4)
        seps = enumerate_separations(G, 2)
        td = decomposition_from_nested(G, seps)
        away = frozenset(s for s in seps if s.big in (0b0001, 0b1000))
        result = orients_toward_node(td, away, 2)
        assert result.node is None
        assert result.witness_decomposition.node_of(away) is None

    def test_adhesion_too_large(self):
        G = Graph.path(4)
        td = decomposition_from_nested(G, [Separation.of([0, 1, 2], [1, 2, 3]), Separation.of([1, 2, 3], [0, 1, 2])])
        assert td.adhesion() == 2
        with pytest.raises(ValueError):
            orients_toward_node(td, [], 2)

    @settings(max_examples=30, deadline=None)
    @given(graphs(min_n=2, max_n=6), st.integers(1, 3))
    def test_profiles_point_to_nodes(self, G, k):
        seps = enumerate_separations(G, k)
        profiles = enumerate_profiles(G, k, seps)
        if not profiles:
            return
        try:
            run = run_iterated(G, k, "ext", profiles, system=seps)
        except RuntimeError:
            return
        td = decomposition_from_nested(G, run.chosen)
        nodes = [orients_toward_node(td, P, k).node for P in profiles]
        assert None not in nodes
        assert len(set(nodes)) == len(nodes)
