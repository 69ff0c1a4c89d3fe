"""Finite simple graphs on vertices ``0..n-1`` and connectivity primitives.

Vertex sets are handled internally as int bitmasks; every public function
that returns vertex sets returns ascending lists so outputs serialize
uniquely.
"""

from __future__ import annotations

import functools
from collections import deque
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

from ._bits import iter_bits, lowest, mask_of, to_list


class GraphFormatError(ValueError):
    """Raised for malformed edge-list input; carries the 1-based line number."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


@functools.total_ordering
class _NeverSeparable:
    """Marker for a vertex pair that no vertex set can separate (an edge).

    Orders above every int so ``kappa >= k`` tests read naturally, but
    supports no arithmetic.
    """

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __eq__(self, other):
        return other is self

    def __lt__(self, other):
        return False

    def __gt__(self, other):
        return other is not self

    def __hash__(self):
        return hash("never-separable")

    def __repr__(self):
        return "NEVER_SEPARABLE"


NEVER_SEPARABLE = _NeverSeparable()


@dataclass(frozen=True)
class Graph:
    """Immutable undirected simple graph with vertex set ``{0, ..., n-1}``."""

    n: int
    edges: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("vertex count must be non-negative")
        norm = set()
        for u, v in self.edges:
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge {u}-{v} out of range for n={self.n}")
            norm.add((u, v) if u < v else (v, u))
        object.__setattr__(self, "edges", frozenset(norm))
        adj = [0] * self.n
        for u, v in norm:
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        object.__setattr__(self, "_adj", tuple(adj))

    @property
    def adj(self) -> tuple[int, ...]:
        """Neighbourhood bitmask of every vertex."""
        return self._adj  # type: ignore[attr-defined]

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    @property
    def m(self) -> int:
        return len(self.edges)

    def neighbours(self, v: int) -> list[int]:
        return to_list(self.adj[v])

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def neighbourhood_mask(self, mask: int) -> int:
        """Vertices outside ``mask`` adjacent to some vertex of ``mask``."""
        out = 0
        for v in iter_bits(mask):
            out |= self.adj[v]
        return out & ~mask

    def induced_edge_count(self, mask: int) -> int:
        return sum((self.adj[v] & mask).bit_count() for v in iter_bits(mask)) // 2

    def relabel(self, perm: Sequence[int]) -> "Graph":
        return Graph(self.n, frozenset((perm[u], perm[v]) for u, v in self.edges))

    def without_edge(self, u: int, v: int) -> "Graph":
        e = (u, v) if u < v else (v, u)
        return Graph(self.n, self.edges - {e})

    def to_edge_list(self) -> str:
        lines = [f"{self.n} {self.m}"]
        lines.extend(f"{u} {v}" for u, v in self.sorted_edges())
        return "\n".join(lines) + "\n"

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        return cls(n, frozenset(edges))

    @classmethod
    def complete(cls, n: int) -> "Graph":
        return cls(n, frozenset(combinations(range(n), 2)))

    @classmethod
    def path(cls, n: int) -> "Graph":
        return cls(n, frozenset((i, i + 1) for i in range(n - 1)))

    @classmethod
    def cycle(cls, n: int) -> "Graph":
        return cls(n, frozenset((i, (i + 1) % n) for i in range(n)))


def parse_graph(text: str, strict: bool = False) -> Graph:
    """Parse the ``n m`` + ``u v`` edge-list format.

    Blank lines and ``#`` comments are ignored. Duplicate edges are merged
    unless ``strict`` is set, in which case they are rejected.
    """
    rows = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            rows.append((lineno, line))
    if not rows:
        raise GraphFormatError(1, "empty input, expected header 'n m'")

    lineno, header = rows[0]
    parts = header.split()
    if len(parts) != 2 or not all(p.isdigit() for p in parts):
        raise GraphFormatError(lineno, f"expected header 'n m', got {header!r}")
    n, m = int(parts[0]), int(parts[1])
    if len(rows) - 1 != m:
        last = rows[-1][0]
        raise GraphFormatError(last, f"header announces {m} edges, found {len(rows) - 1}")

    edges = set()
    for lineno, line in rows[1:]:
        parts = line.split()
        if len(parts) != 2:
            raise GraphFormatError(lineno, f"expected 'u v', got {line!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphFormatError(lineno, f"non-integer vertex in {line!r}") from None
        if not (0 <= u < n and 0 <= v < n):
            raise GraphFormatError(lineno, f"vertex out of range 0..{n - 1}: {line!r}")
        if u == v:
            raise GraphFormatError(lineno, f"loop edge at vertex {u}")
        e = (min(u, v), max(u, v))
        if e in edges and strict:
            raise GraphFormatError(lineno, f"duplicate edge {u}-{v}")
        edges.add(e)
    return Graph(n, frozenset(edges))


def component_masks(G: Graph, allowed: int) -> list[int]:
    """Components of ``G[allowed]`` as bitmasks, ordered by minimum vertex."""
    comps = []
    rest = allowed
    adj = G.adj
    while rest:
        seed = rest & -rest
        comp = seed
        frontier = seed
        while frontier:
            v = lowest(frontier)
            frontier &= frontier - 1
            new = adj[v] & rest & ~comp
            comp |= new
            frontier |= new
        comps.append(comp)
        rest &= ~comp
    return comps


def components(G: Graph, removed: Iterable[int] = ()) -> list[list[int]]:
    """Connected components of ``G - removed``, each sorted, by minimum vertex."""
    return [to_list(c) for c in component_masks(G, G.full & ~mask_of(removed))]


def is_connected(G: Graph) -> bool:
    return len(component_masks(G, G.full)) <= 1


def _max_flow_vertex_disjoint(G: Graph, x: int, y: int, limit: int | None = None) -> int:
    # Vertex splitting: v_in = 2v, v_out = 2v + 1; unit capacity inside every
    # vertex except the terminals, unit capacity on every arc.
    cap: dict[int, dict[int, int]] = {}

    def arc(a, b, c):
        cap.setdefault(a, {})
        cap.setdefault(b, {})
        cap[a][b] = cap[a].get(b, 0) + c
        cap[b].setdefault(a, 0)

    big = G.n + 1
    for v in range(G.n):
        arc(2 * v, 2 * v + 1, big if v in (x, y) else 1)
    for u, v in G.edges:
        arc(2 * u + 1, 2 * v, 1)
        arc(2 * v + 1, 2 * u, 1)

    source, sink = 2 * x + 1, 2 * y
    flow = 0
    while limit is None or flow < limit:
        parent = {source: None}
        queue = deque([source])
        while queue and sink not in parent:
            a = queue.popleft()
            for b, c in cap.get(a, {}).items():
                if c > 0 and b not in parent:
                    parent[b] = a
                    queue.append(b)
        if sink not in parent:
            break
        b = sink
        while parent[b] is not None:
            a = parent[b]
            cap[a][b] -= 1
            cap[b][a] += 1
            b = a
        flow += 1
    return flow


def local_connectivity(G: Graph, x: int, y: int):
    """Minimum number of vertices other than x, y separating x from y.

    Returns :data:`NEVER_SEPARABLE` when ``x`` and ``y`` are adjacent.
    """
    if x == y:
        raise ValueError("local connectivity needs two distinct vertices")
    if G.has_edge(x, y):
        return NEVER_SEPARABLE
    return _max_flow_vertex_disjoint(G, x, y)


def independent_paths_excl_edge(G: Graph, x: int, y: int) -> int:
    """Maximum number of internally disjoint x-y paths avoiding the edge xy."""
    if not G.has_edge(x, y):
        raise ValueError(f"{x}-{y} is not an edge")
    return _max_flow_vertex_disjoint(G.without_edge(x, y), x, y)


def inseparable(G: Graph, x: int, y: int, k: int) -> bool:
    """True if fewer than ``k`` other vertices cannot separate x from y."""
    if G.has_edge(x, y):
        return True
    return _max_flow_vertex_disjoint(G, x, y, limit=k) >= k


def is_l_connected(G: Graph, l: int) -> bool:
    """True iff ``|V| > l`` and no set of fewer than ``l`` vertices disconnects G."""
    if l < 0:
        raise ValueError("connectivity threshold must be non-negative")
    if G.n <= l:
        return False
    full = G.full
    for size in range(l):
        for T in combinations(range(G.n), size):
            if len(component_masks(G, full & ~mask_of(T))) > 1:
                return False
    return True


def _refined_colours(G: Graph) -> list[int]:
    colours = [G.degree(v) for v in range(G.n)]
    while True:
        sigs = [(colours[v], tuple(sorted(colours[u] for u in iter_bits(G.adj[v]))))
                for v in range(G.n)]
        palette = {s: i for i, s in enumerate(sorted(set(sigs)))}
        new = [palette[s] for s in sigs]
        if len(set(new)) == len(set(colours)):
            return new
        colours = new


def automorphisms(G: Graph) -> list[tuple[int, ...]]:
    """All automorphisms of G as image tuples ``perm[v]``, sorted.

    Plain backtracking over vertices in order, restricted to targets of the
    same refined degree colour and checked against already-mapped neighbours.
    """
    n = G.n
    colours = _refined_colours(G)
    adj = G.adj
    # Map vertices of rare colour classes first.
    order = sorted(range(n), key=lambda v: (colours.count(colours[v]), v))
    result = []
    image = [-1] * n

    def extend(i: int, used: int):
        if i == n:
            result.append(tuple(image))
            return
        v = order[i]
        for w in range(n):
            if used >> w & 1 or colours[w] != colours[v]:
                continue
            ok = True
            for j in range(i):
                u = order[j]
                if (adj[v] >> u & 1) != (adj[w] >> image[u] & 1):
                    ok = False
                    break
            if ok:
                image[v] = w
                extend(i + 1, used | 1 << w)
        image[v] = -1

    extend(0, 0)
    result.sort()
    return result


def permute_mask(mask: int, perm: Sequence[int]) -> int:
    out = 0
    for v in iter_bits(mask):
        out |= 1 << perm[v]
    return out
