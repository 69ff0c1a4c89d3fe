from itertools import combinations, permutations

import pytest
from hypothesis import given, settings

from canontree.graph import (
    NEVER_SEPARABLE,
    Graph,
    GraphFormatError,
    automorphisms,
    components,
    independent_paths_excl_edge,
    is_l_connected,
    local_connectivity,
    parse_graph,
)

from .conftest import graphs


def triangle_with_pendant() -> Graph:
    return Graph(4, frozenset({(0, 1), (0, 2), (1, 2), (0, 3)}))


def brute_local_connectivity(G: Graph, x: int, y: int) -> int:
    others = [v for v in range(G.n) if v not in (x, y)]
    for size in range(len(others) + 1):
        for T in combinations(others, size):
            comps = components(G, T)
            if not any(x in c and y in c for c in comps):
                return size
    raise AssertionError("non-adjacent pair must be separable")


def brute_automorphisms(G: Graph) -> list[tuple[int, ...]]:
    return sorted(p for p in permutations(range(G.n)) if {tuple(sorted((p[u], p[v]))) for u, v in G.edges} == G.edges)


class TestParse:
    def test_triangle(self):
        assert parse_graph("3 3\n0 1\n1 2\n0 2") == Graph.complete(3)

    def test_path(self):
        assert parse_graph("4 3\n0 1\n1 2\n2 3") == Graph.path(4)

    def test_duplicates_merged_or_rejected(self):
        assert parse_graph("3 2\n0 1\n0 1").m == 1
        with pytest.raises(GraphFormatError) as exc:
            parse_graph("3 2\n0 1\n0 1", strict=True)
        assert exc.value.line == 3

    def test_comments_and_blank_lines(self):
        assert parse_graph("# a path\n3 2\n\n0 1  # first\n1 2\n") == Graph.path(3)

    @pytest.mark.parametrize(
        "text, line",
        [
            ("3 1\n0 3", 2),
            ("3 1\n1 1", 2),
            ("3 1\n0 x", 2),
            ("3\n0 1", 1),
            ("3 2\n0 1", 2),
            ("3 1\n0 1 2", 2),
            ("", 1),
        ],
    )
    def test_errors_carry_line(self, text, line):
        with pytest.raises(GraphFormatError) as exc:
            parse_graph(text)
        assert exc.value.line == line

    def test_round_trip(self):
        G = Graph(5, frozenset({(0, 4), (1, 2), (2, 3)}))
        assert parse_graph(G.to_edge_list(), strict=True) == G

    def test_graph_rejects_loops_and_range(self):
        with pytest.raises(ValueError):
            Graph(2, frozenset({(0, 0)}))
        with pytest.raises(ValueError):
            Graph(2, frozenset({(0, 2)}))


class TestComponents:
    def test_cut_vertex(self):
        assert components(Graph.path(4), {1}) == [[0], [2, 3]]

    def test_connected(self):
        assert components(Graph.complete(3), set()) == [[0, 1, 2]]

    def test_empty_remainder(self):
        assert components(Graph.complete(3), {0, 1, 2}) == []


class TestAutomorphisms:
    def test_path(self):
        assert automorphisms(Graph.path(3)) == [(0, 1, 2), (2, 1, 0)]

    def test_triangle(self):
        assert len(automorphisms(Graph.complete(3))) == 6

    def test_triangle_with_pendant(self):
        autos = automorphisms(triangle_with_pendant())
        assert autos == brute_automorphisms(triangle_with_pendant())
        assert autos == [(0, 1, 2, 3), (0, 2, 1, 3)]

    @settings(max_examples=60, deadline=None)
    @given(graphs(max_n=6))
    def test_matches_brute_force(self, G):
        assert automorphisms(G) == brute_automorphisms(G)

    @settings(max_examples=40, deadline=None)
    @given(graphs(max_n=6))
    def test_group(self, G):
        autos = set(automorphisms(G))
        identity = tuple(range(G.n))
        assert identity in autos
        for p in autos:
            inverse = tuple(sorted(range(G.n), key=lambda v: p[v]))
            assert inverse in autos
            for q in autos:
                assert tuple(p[q[v]] for v in range(G.n)) in autos


class TestConnectivity:
    def test_path_cut_vertex(self):
        assert local_connectivity(Graph.path(3), 0, 2) == 1

    def test_adjacent_marker(self):
        kappa = local_connectivity(Graph.complete(4), 0, 1)
        assert kappa is NEVER_SEPARABLE
        assert kappa > 10**9 and not kappa < 3
        with pytest.raises(TypeError):
            kappa + 1

    def test_c4(self):
        assert local_connectivity(Graph.cycle(4), 0, 2) == 2 == brute_local_connectivity(Graph.cycle(4), 0, 2)

    def test_same_vertex(self):
        with pytest.raises(ValueError):
            local_connectivity(Graph.path(3), 1, 1)

    @settings(max_examples=80, deadline=None)
    @given(graphs(max_n=8))
    def test_menger_against_subsets(self, G):
        for x, y in combinations(range(G.n), 2):
            if not G.has_edge(x, y):
                assert local_connectivity(G, x, y) == brute_local_connectivity(G, x, y)

    @pytest.mark.parametrize("n, expected", [(3, 1), (4, 2), (5, 3)])
    def test_independent_paths_in_complete(self, n, expected):
        assert independent_paths_excl_edge(Graph.complete(n), 0, 1) == expected

    def test_independent_paths_needs_edge(self):
        with pytest.raises(ValueError):
            independent_paths_excl_edge(Graph.path(3), 0, 2)

    @settings(max_examples=60, deadline=None)
    @given(graphs(max_n=7))
    def test_independent_paths_is_connectivity_without_edge(self, G):
        for x, y in G.sorted_edges():
            H = G.without_edge(x, y)
            assert independent_paths_excl_edge(G, x, y) == brute_local_connectivity(H, x, y)

    def test_is_l_connected(self):
        assert is_l_connected(Graph.complete(5), 4)
        assert not is_l_connected(Graph.path(3), 2)
        assert is_l_connected(Graph.cycle(5), 2)
        assert not is_l_connected(Graph.complete(4), 4)
