import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from canontree.decomposition import classify_parts, decomposition_from_nested
from canontree.fixtures import load_fixture
from canontree.graph import Graph, automorphisms
from canontree.profiles import block_profile, enumerate_profiles, k_blocks
from canontree.separations import enumerate_separations, is_nested_system
from canontree.strategies import (
    InfeasibleTask,
    Task,
    bound_report,
    distinguishes,
    extremal_separations,
    is_canonical,
    locally_maximal_separations,
    reduce_task,
    run_iterated,
    run_single,
)

from .conftest import graphs


def block_run(G, k, kind, max_n=16):
    seps = enumerate_separations(G, k, max_n=max_n)
    profiles = [block_profile(X, seps) for X in k_blocks(G, k)]
    return run_iterated(G, k, kind, profiles, system=seps), profiles


def labels_of(G, run, profiles):
    td = decomposition_from_nested(G, run.chosen)
    return td, classify_parts(td, profiles)


def inessential_count(labels):
    return sum(1 for tags in labels.values() if "inessential" in tags)


class TestSmallCases:
    @pytest.mark.parametrize("kind", ["ext", "loc"])
    def test_path(self, kind):
        G = Graph.path(4)
        run, _ = block_run(G, 2, kind)
        assert run.size == 4
        assert run.chosen == frozenset(enumerate_separations(G, 2))

    @pytest.mark.parametrize("kind", ["ext", "loc"])
    def test_single_profile_needs_nothing(self, kind):
        run, _ = block_run(Graph.complete(4), 3, kind)
        assert run.p == 1 and run.chosen == frozenset()

    def test_needs_a_profile(self):
        with pytest.raises(ValueError):
            run_iterated(Graph.path(3), 2, "ext", [])

    def test_unknown_strategy(self):
        with pytest.raises(ValueError):
            run_single(Task.make([], [frozenset(), frozenset()]), "all")

    @pytest.mark.parametrize("kind", ["ext", "loc"])
    def test_three_cliques_on_one_vertex(self, kind):
        k, c = load_fixture("glued_k5_3")
        run, profiles = block_run(c.graph, k, kind)
        td, labels = labels_of(c.graph, run, profiles)
        assert run.size == 6
        assert inessential_count(labels) == 1
        assert sorted(td.part(t) for t in range(td.size) if "hub" in labels[t]) == [[0]]

    def test_path_of_cliques(self):
        k, c = load_fixture("path_cliques_4_5")
        ext, profiles = block_run(c.graph, k, "ext", max_n=c.graph.n)
        loc, _ = block_run(c.graph, k, "loc", max_n=c.graph.n)
        assert (ext.size, loc.size) == (8, 12)
        _, labels = labels_of(c.graph, loc, profiles)
        assert inessential_count(labels) == 3
        _, labels = labels_of(c.graph, ext, profiles)
        assert inessential_count(labels) == 1

    @pytest.mark.parametrize("kind", ["ext", "loc"])
    def test_cycle_of_cliques(self, kind):
        k, c = load_fixture("cycle_cliques_5_5")
        run, profiles = block_run(c.graph, k, kind, max_n=c.graph.n)
        td, labels = labels_of(c.graph, run, profiles)
        assert run.size == 10
        inessential = [td.part(t) for t in range(td.size) if "inessential" in labels[t]]
        assert inessential == [c.sets["C"]]
        assert is_canonical(run.chosen, automorphisms(c.graph))

    def test_loc_beats_ext_fixture(self):
        k, c = load_fixture("loc_beats_ext")
        ext, _ = block_run(c.graph, k, "ext")
        loc, _ = block_run(c.graph, k, "loc")
        assert (ext.size, loc.size) == (8, 6)


class TestInfeasible:
    def test_nothing_distinguishes(self):
        G = Graph(3, frozenset())
        seps = enumerate_separations(G, 2)
        with pytest.raises(InfeasibleTask, match="does not distinguish"):
            run_iterated(G, 2, "ext", enumerate_profiles(G, 2, seps), system=seps)

    def test_extremal_separations_cross(self):
        G = Graph(3, frozenset({(1, 2)}))
        seps = enumerate_separations(G, 2)
        profiles = enumerate_profiles(G, 2, seps)
        with pytest.raises(InfeasibleTask) as exc:
            run_iterated(G, 2, "ext", profiles, system=seps)
        assert exc.value.reason == "extremal separations cross"
        assert exc.value.crossing is not None
        with pytest.raises(InfeasibleTask, match="well separated"):
            run_iterated(G, 2, "loc", profiles, system=seps)

    def test_no_extremal_separation(self):
        G = Graph.cycle(4)
        seps = enumerate_separations(G, 3)
        with pytest.raises(InfeasibleTask, match="no extremal"):
            run_iterated(G, 3, "ext", enumerate_profiles(G, 3, seps), system=seps)


def feasible_block_run(G, k, kind):
    seps = enumerate_separations(G, k)
    profiles = [block_profile(X, seps) for X in k_blocks(G, k)]
    if not profiles:
        return None, profiles, seps
    try:
        return run_iterated(G, k, kind, profiles, system=seps), profiles, seps
    except InfeasibleTask:
        return None, profiles, seps


class TestInvariants:
    @settings(max_examples=80, deadline=None)
    @given(graphs(max_n=7), st.integers(1, 4), st.sampled_from(["ext", "loc"]))
    def test_output_is_nested_and_distinguishing(self, G, k, kind):
        run, profiles, _ = feasible_block_run(G, k, kind)
        if run is None:
            return
        assert is_nested_system(run.chosen) is None
        for i, P in enumerate(run.profiles):
            for Q in run.profiles[i + 1:]:
                assert any(s in P and s.inverse() in Q for s in run.chosen)
        assert all(s.order < k for s in run.chosen)

    @settings(max_examples=80, deadline=None)
    @given(graphs(max_n=7), st.integers(1, 4), st.sampled_from(["ext", "loc"]))
    def test_bounds(self, G, k, kind):
        run, _, _ = feasible_block_run(G, k, kind)
        if run is None:
            return
        report = bound_report(run)
        assert report["ok"], report

    @settings(max_examples=60, deadline=None)
    @given(graphs(max_n=7), st.integers(1, 4), st.sampled_from(["ext", "loc"]))
    def test_canonical(self, G, k, kind):
        run, _, _ = feasible_block_run(G, k, kind)
        if run is None:
            return
        assert is_canonical(run.chosen, automorphisms(G))

    @settings(max_examples=60, deadline=None)
    @given(graphs(max_n=7), st.integers(1, 4))
    def test_loc_leaves_are_essential(self, G, k):
        run, profiles, _ = feasible_block_run(G, k, "loc")
        if run is None:
            return
        td, labels = labels_of(G, run, profiles)
        for t in td.leaves():
            assert "essential" in labels[t]

    @settings(max_examples=80, deadline=None)
    @given(graphs(max_n=6), st.integers(1, 4))
    def test_reduced_task_ext_within_loc(self, G, k):
        seps = enumerate_separations(G, k)
        profiles = enumerate_profiles(G, k, seps)
        if len(profiles) < 2:
            return
        t = reduce_task(Task.make(seps, profiles))
        for s in t.S:
            assert distinguishes(s, t.profiles)
        try:
            ext, owners = extremal_separations(t)
            loc = locally_maximal_separations(t)
        except InfeasibleTask:
            return
        assert ext <= loc
        assert len(ext) <= 2 * len(set(owners.values()))

    @settings(max_examples=80, deadline=None)
    @given(graphs(max_n=7), st.integers(1, 4), st.sampled_from(["ext", "loc"]))
    def test_single_task_has_no_edge_between_inessential_parts(self, G, k, kind):
        run, profiles, _ = feasible_block_run(G, k, kind)
        if run is None or len(run.tasks) > 1:
            return
        td, labels = labels_of(G, run, profiles)
        for u, v, _ in td.edges:
            assert "essential" in labels[u] or "essential" in labels[v]

    def test_iterated_runs_can_join_inessential_parts(self):
        # Isolated vertex 0 plus a star at 5; the hub {5} and the part {0}
        # come from different levels and end up adjacent.
        G = Graph(6, frozenset({(1, 5), (2, 5), (3, 4)}))
        run, profiles, _ = feasible_block_run(G, 2, "loc")
        td, labels = labels_of(G, run, profiles)
        assert len(run.tasks) > 1
        pairs = [(td.part(u), td.part(v)) for u, v, _ in td.edges if "inessential" in labels[u] and "inessential" in labels[v]]
        assert pairs
