"""Parameterised example graphs and seeded random graphs.

Each constructor returns the graph together with the vertex sets that the
example is about, so callers can check the structure they expect.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations

from ._bits import mask_of
from .graph import Graph, is_l_connected
from .profiles import block_profile, k_blocks
from .separations import Separation, enumerate_separations, nested
from .strategies import InfeasibleTask, run_iterated


@dataclass
class Construction:
    graph: Graph
    sets: dict[str, list[int]] = field(default_factory=dict)
    params: dict = field(default_factory=dict)


def _clique(vertices) -> set[tuple[int, int]]:
    return {(min(u, v), max(u, v)) for u, v in combinations(vertices, 2)}


def gen_cycle_cliques(n: int, m: int = 5) -> Construction:
    """An n-cycle C with a K^m on every cycle edge, otherwise disjoint."""
    if n < 3 or m < 4:
        raise ValueError("need n >= 3 and clique size m >= 4")
    edges = {(min(i, (i + 1) % n), max(i, (i + 1) % n)) for i in range(n)}
    sets = {"C": list(range(n))}
    nxt = n
    for i in range(n):
        members = [i, (i + 1) % n] + list(range(nxt, nxt + m - 2))
        nxt += m - 2
        edges |= _clique(members)
        sets[f"K{i + 1}"] = sorted(members)
    return Construction(Graph(nxt, frozenset(edges)), sets, {"n": n, "m": m})


def gen_path_cliques(n: int, m: int = 5, path_length: int = 2) -> Construction:
    """n disjoint K^m strung along paths of ``path_length`` edges.

    Clique i is entered at its first vertex and left at its second, so
    internal cliques have two distinct attachment vertices.
    """
    if n < 2 or m < 4 or path_length < 2:
        raise ValueError("need n >= 2, m >= 4 and path_length >= 2")
    edges: set[tuple[int, int]] = set()
    sets: dict[str, list[int]] = {}
    nxt = 0
    cliques = []
    for i in range(n):
        members = list(range(nxt, nxt + m))
        nxt += m
        edges |= _clique(members)
        cliques.append(members)
        sets[f"K{i + 1}"] = members
    for i in range(n - 1):
        start, end = cliques[i][1], cliques[i + 1][0]
        inner = list(range(nxt, nxt + path_length - 1))
        nxt += path_length - 1
        walk = [start] + inner + [end]
        edges |= {(min(a, b), max(a, b)) for a, b in zip(walk, walk[1:])}
        sets[f"P{i + 1}"] = sorted(walk)
    return Construction(Graph(nxt, frozenset(edges)), sets,
                        {"n": n, "m": m, "path_length": path_length})


def gen_example4(k: int = 4, core: int = 6, attach: tuple[int, int, int] = (3, 3, 3)) -> Construction:
    """A complete graph K with K_1, K_2 attached along (k-1)-sets S_1 != S_2
    and K_12 attached along their intersection."""
    s1 = list(range(k - 1))
    s2 = list(range(1, k))
    s12 = sorted(set(s1) & set(s2))
    edges = _clique(range(core))
    nxt = core
    sets = {"K": list(range(core)), "S1": s1, "S2": s2, "S12": s12}
    for name, sep, extra in (("K1", s1, attach[0]), ("K2", s2, attach[1]), ("K12", s12, attach[2])):
        members = sep + list(range(nxt, nxt + extra))
        if len(members) < k + 1:
            raise ValueError(f"{name} must have at least k+1 vertices")
        nxt += extra
        edges |= _clique(members)
        sets[name] = members
    if len(sets["K"]) < k + 1:
        raise ValueError("K must have at least k+1 vertices")
    return Construction(Graph(nxt, frozenset(edges)), sets, {"k": k, "core": core, "attach": list(attach)})


def gen_glued_k5(t: int = 3, size: int = 5) -> Construction:
    """t copies of K^size sharing the single vertex 0."""
    if t < 3:
        raise ValueError("need at least three copies")
    edges: set[tuple[int, int]] = set()
    sets = {}
    nxt = 1
    for i in range(t):
        members = [0] + list(range(nxt, nxt + size - 1))
        nxt += size - 1
        edges |= _clique(members)
        sets[f"K{i + 1}"] = members
    sets["v"] = [0]
    return Construction(Graph(nxt, frozenset(edges)), sets, {"t": t, "size": size})


# First attachment pattern accepted by verify_example3 in the order of
# search_example3_pattern; frozen so the fixture does not depend on a search.
EXAMPLE3_X_ATTACH = (0, 1, 2)
EXAMPLE3_Y_ATTACH = (0, 3, 4)


def gen_example3_like(pairs: int = 1,
                      x_attach: tuple[int, ...] = EXAMPLE3_X_ATTACH,
                      y_attach: tuple[int, ...] = EXAMPLE3_Y_ATTACH) -> Construction:
    """A K^5 with ``pairs`` adjacent vertex pairs hung on it."""
    if pairs < 0:
        raise ValueError("pairs must be non-negative")
    edges = _clique(range(5))
    sets = {"K": list(range(5))}
    nxt = 5
    for i in range(pairs):
        x, y = nxt, nxt + 1
        nxt += 2
        edges.add((x, y))
        edges |= {(c, x) for c in x_attach}
        edges |= {(c, y) for c in y_attach}
        sets[f"pair{i + 1}"] = [x, y]
    return Construction(Graph(nxt, frozenset(edges)), sets,
                        {"pairs": pairs, "x_attach": list(x_attach), "y_attach": list(y_attach)})


def gen_random(n: int, density: float, seed: int = 0) -> Graph:
    """Seeded G(n, p) random graph."""
    if not 0.0 <= density <= 1.0:
        raise ValueError("density must lie in [0, 1]")
    rng = random.Random(seed)
    edges = [(u, v) for u, v in combinations(range(n), 2) if rng.random() < density]
    return Graph(n, frozenset(edges))


def _closed_neighbourhood_separation(G: Graph, v: int) -> Separation:
    return Separation(G.adj[v] | 1 << v, G.full & ~(1 << v))


def verify_example3(c: Construction) -> list[str]:
    """Problems with a K^5-with-hung-pairs construction; empty when it is sound.

    Checks 4-connectivity, that the K^5 is the only 5-block, that the two
    4-separations cutting off x and y cross, and that no nested pair of
    proper (<5)-separations with K on the big side cuts off both x and y.
    The last check covers every decomposition of adhesion at most 4, since
    the part containing K is cut out by nested separations of that kind.
    """
    G = c.graph
    K = tuple(c.sets["K"])
    problems = []
    if not is_l_connected(G, 4):
        problems.append("graph is not 4-connected")
    blocks = k_blocks(G, 5)
    if blocks != [K]:
        problems.append(f"5-blocks are {blocks}, expected only {list(K)}")
    kmask = mask_of(K)
    seps = [s for s in enumerate_separations(G, 5, max_n=G.n) if kmask & ~s.b == 0]
    for name, (x, y) in sorted((n, v) for n, v in c.sets.items() if n.startswith("pair")):
        sx = _closed_neighbourhood_separation(G, x)
        sy = _closed_neighbourhood_separation(G, y)
        if sx.order != 4 or sy.order != 4:
            problems.append(f"{name}: isolating separations have orders {sx.order}, {sy.order}")
        elif nested(sx, sy):
            problems.append(f"{name}: isolating separations are nested")
        cut_x = [s for s in seps if s.a >> x & 1 and not s.b >> x & 1]
        cut_y = [s for s in seps if s.a >> y & 1 and not s.b >> y & 1]
        both = [s for s in cut_x if s in set(cut_y)]
        if both:
            problems.append(f"{name}: {both[0]!r} cuts off both x and y")
        pair = next(((s, t) for s in cut_x for t in cut_y if nested(s, t)), None)
        if pair is not None:
            problems.append(f"{name}: nested {pair[0]!r}, {pair[1]!r} cut off x and y")
    return problems


def search_example3_pattern(max_size: int = 4) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """First pair of K^5 attachment sets, in lexicographic order of (sizes, sets),
    for which a single hung pair passes :func:`verify_example3`."""
    for sx in range(3, max_size + 1):
        for sy in range(sx, max_size + 1):
            for xa in combinations(range(5), sx):
                for ya in combinations(range(5), sy):
                    if not verify_example3(gen_example3_like(1, xa, ya)):
                        return xa, ya
    raise LookupError("no attachment pattern passes the hung-pair checks")


# Candidate model for the Loc-beats-Ext search: four cliques of size 4 or 5
# placed on random vertex subsets of an n-vertex ground set (10 <= n <= 14),
# plus up to three random extra edges, drawn from random.Random(seed).
LOC_SEARCH_SEED = 2
LOC_SEARCH_LIMIT = 20000


def _loc_search_candidate(rng: random.Random) -> Graph:
    n = rng.randrange(10, 15)
    edges: set[tuple[int, int]] = set()
    for _ in range(4):
        edges |= _clique(rng.sample(range(n), rng.choice((4, 5))))
    for _ in range(rng.randrange(0, 4)):
        a, b = rng.sample(range(n), 2)
        edges.add((min(a, b), max(a, b)))
    return Graph(n, frozenset(edges))


def strategy_sizes(G: Graph, k: int) -> dict[str, int | None]:
    """|N| for Ext^k and Loc^k on the k-block profiles; ``None`` if infeasible."""
    seps = enumerate_separations(G, k, max_n=max(G.n, 16))
    profiles = [block_profile(X, seps) for X in k_blocks(G, k)]
    sizes: dict[str, int | None] = {}
    for kind in ("ext", "loc"):
        try:
            sizes[kind] = run_iterated(G, k, kind, profiles, system=seps).size if profiles else 0
        except InfeasibleTask:
            sizes[kind] = None
    return sizes


def is_loc_beats_ext(G: Graph) -> bool:
    """3-connected, four 4-blocks and strictly fewer Loc^4 than Ext^4 separations."""
    if not is_l_connected(G, 3) or len(k_blocks(G, 4)) != 4:
        return False
    sizes = strategy_sizes(G, 4)
    return None not in sizes.values() and sizes["loc"] < sizes["ext"]


def search_loc_beats_ext(seed: int = LOC_SEARCH_SEED, limit: int = LOC_SEARCH_LIMIT) -> tuple[int, Graph] | None:
    """First candidate index and graph satisfying :func:`is_loc_beats_ext`.

    Returns ``None`` once ``limit`` candidates are exhausted.
    """
    rng = random.Random(seed)
    for i in range(limit):
        G = _loc_search_candidate(rng)
        if is_loc_beats_ext(G):
            return i, G
    return None
