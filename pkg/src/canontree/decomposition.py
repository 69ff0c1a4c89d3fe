"""Tree-decompositions induced by nested separation systems.

The nodes of the decomposition tree are the consistent orientations of the
nested system N; two nodes are adjacent when their orientations differ on a
single separation pair, and the part of a node is the intersection of the
big sides ``B`` of the separations oriented towards it.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from ._bits import iter_bits, to_list
from .graph import Graph
from .profiles import inconsistent_pair, orientation_key
from .separations import (
    LimitExceeded,
    Separation,
    is_nested_system,
    leq,
    sorted_system,
    unordered_pairs,
)

MAX_ORIENTATIONS = 1 << 20


class DecompositionError(RuntimeError):
    """The construction produced something that is not a tree-decomposition."""


def iter_consistent_orientations(N: Iterable[Separation], rng: random.Random | None = None) -> Iterator[frozenset]:
    """Generate the consistent orientations of N one at a time.

    Oriented separation ``2i`` is the i-th pair representative and ``2i+1``
    its inverse; ``conflict[i]`` marks the separations that cannot join i.
    With ``rng`` the pairs are visited in a shuffled order and with random
    preferred sides, so the first few results form a random sample.
    """
    reps = unordered_pairs(N)
    if rng is not None:
        rng.shuffle(reps)
        reps = [r.inverse() if rng.random() < 0.5 else r for r in reps]
    oriented: list[Separation] = []
    for r in reps:
        oriented += [r, r.inverse()]
    m = len(oriented)
    conflict = [0] * m
    for i in range(m):
        inv = oriented[i ^ 1]
        for j in range(m):
            if j != i and leq(inv, oriented[j]):
                conflict[i] |= 1 << j
    even = sum(1 << (2 * i) for i in range(len(reps)))

    def search(pos: int, chosen: list[int], banned: int) -> Iterator[frozenset]:
        if pos == len(reps):
            yield frozenset(oriented[i] for i in chosen)
            return
        for i in (2 * pos, 2 * pos + 1):
            if banned >> i & 1:
                continue
            nb = banned | conflict[i]
            # some later pair would have both orientations excluded
            if nb & (nb >> 1) & even & ~((1 << (2 * pos + 2)) - 1):
                continue
            chosen.append(i)
            yield from search(pos + 1, chosen, nb)
            chosen.pop()

    yield from search(0, [], 0)


def consistent_orientations(N: Iterable[Separation], limit: int = MAX_ORIENTATIONS) -> list[frozenset]:
    """All consistent orientations of the (inversion-closed) system N."""
    results: list[frozenset] = []
    for O in iter_consistent_orientations(N):
        results.append(O)
        if len(results) > limit:
            raise LimitExceeded(f"more than {limit} consistent orientations")
    results.sort(key=orientation_key)
    return results


@dataclass
class TreeDecomposition:
    """Decomposition tree over consistent orientations of a nested system.

    ``edges`` holds triples ``(u, v, s)`` where ``s`` is oriented towards
    ``v``: ``s`` belongs to the orientation of ``v`` and its inverse to that
    of ``u``.
    """

    graph: Graph
    system: list[Separation]
    orientations: list[frozenset]
    parts: list[int]
    edges: list[tuple[int, int, Separation]]

    @property
    def size(self) -> int:
        return len(self.parts)

    def part(self, t: int) -> list[int]:
        return to_list(self.parts[t])

    def neighbours(self, t: int) -> list[int]:
        out = []
        for u, v, _ in self.edges:
            if u == t:
                out.append(v)
            elif v == t:
                out.append(u)
        return sorted(out)

    def degree(self, t: int) -> int:
        return len(self.neighbours(t))

    def leaves(self) -> list[int]:
        return [t for t in range(self.size) if self.degree(t) <= 1]

    def adhesion(self) -> int:
        return max((s.order for _, _, s in self.edges), default=0)

    def node_of(self, orientation: Iterable[Separation]) -> int | None:
        key = frozenset(orientation)
        for t, o in enumerate(self.orientations):
            if o == key:
                return t
        return None

    def side(self, u: int, v: int) -> list[int]:
        """Nodes of the component of ``T - uv`` containing ``v``."""
        seen = {v}
        stack = [v]
        while stack:
            x = stack.pop()
            for y in self.neighbours(x):
                if y not in seen and not (x == v and y == u):
                    seen.add(y)
                    stack.append(y)
        return sorted(seen)

    def to_json(self, labels: dict[int, list[str]] | None = None) -> dict:
        nodes = []
        for t in range(self.size):
            nodes.append({"id": t, "part": self.part(t), "labels": (labels or {}).get(t, [])})
        edges = [{"u": u, "v": v, "separation": s.to_json()} for u, v, s in self.edges]
        return {"nodes": nodes, "edges": edges}

    def to_dot(self, labels: dict[int, list[str]] | None = None) -> str:
        lines = ["graph decomposition {"]
        for t in range(self.size):
            tag = ",".join((labels or {}).get(t, []))
            text = "{" + ",".join(map(str, self.part(t))) + "}"
            if tag:
                text += f"\\n{tag}"
            lines.append(f'  n{t} [label="{text}"];')
        for u, v, s in self.edges:
            lines.append(f'  n{u} -- n{v} [label="{s.order}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def part_of(orientation: Iterable[Separation], full: int) -> int:
    part = full
    for s in orientation:
        part &= s.b
    return part


def decomposition_from_nested(G: Graph, N: Iterable[Separation], validate: bool = True) -> TreeDecomposition:
    N = sorted_system(N)
    crossing = is_nested_system(N)
    if crossing is not None:
        raise DecompositionError(f"system is not nested: {crossing[0]!r} crosses {crossing[1]!r}")
    members = set(N)
    for s in N:
        if s.inverse() not in members:
            raise DecompositionError(f"system is not inversion-closed at {s!r}")
    orientations = consistent_orientations(N)
    index = {o: t for t, o in enumerate(orientations)}
    edges = []
    for t, o in enumerate(orientations):
        for s in sorted(o, key=Separation.key):
            flipped = (o - {s}) | {s.inverse()}
            u = index.get(flipped)
            if u is not None and u < t:
                # s is in o(t), so s points towards t.
                edges.append((u, t, s))
    edges.sort(key=lambda e: (e[0], e[1]))
    parts = [part_of(o, G.full) for o in orientations]
    td = TreeDecomposition(G, N, orientations, parts, edges)
    if validate:
        problems = validate_decomposition(td)
        if problems:
            raise DecompositionError("; ".join(problems))
    return td


def validate_decomposition(td: TreeDecomposition) -> list[str]:
    """Check tree shape, decomposition axioms and that the tree induces N."""
    problems = []
    G = td.graph
    nodes = td.size
    pairs = len(td.system) // 2
    if nodes != pairs + 1:
        problems.append(f"{nodes} nodes for {pairs} separation pairs")
    if len(td.edges) != nodes - 1:
        problems.append(f"{len(td.edges)} tree edges for {nodes} nodes")
    if nodes and len(td.side(-1, 0)) != nodes:
        problems.append("decomposition tree is disconnected")

    covered = 0
    for p in td.parts:
        covered |= p
    if covered != G.full:
        problems.append(f"vertices {to_list(G.full & ~covered)} lie in no part")
    for u, v in G.sorted_edges():
        if not any(p >> u & 1 and p >> v & 1 for p in td.parts):
            problems.append(f"edge {u}-{v} lies in no part")
    for v in range(G.n):
        holders = {t for t, p in enumerate(td.parts) if p >> v & 1}
        if holders:
            inside = sum(1 for a, b, _ in td.edges if a in holders and b in holders)
            if inside != len(holders) - 1:
                problems.append(f"parts containing vertex {v} do not form a subtree")

    represented = set()
    for u, v, s in td.edges:
        a_side = 0
        for t in td.side(v, u):
            a_side |= td.parts[t]
        b_side = 0
        for t in td.side(u, v):
            b_side |= td.parts[t]
        if Separation(a_side, b_side) != s:
            problems.append(f"edge {u}-{v} induces ({to_list(a_side)}, {to_list(b_side)}), not {s!r}")
        represented.add(s)
        represented.add(s.inverse())
    if represented != set(td.system):
        problems.append("tree edges do not represent every separation of N exactly once")
    return problems


def inhabited_node(td: TreeDecomposition, P: Iterable[Separation]) -> int:
    """The node whose orientation of N is the restriction of profile P to N."""
    P = frozenset(P)
    restricted = set()
    for s in td.system:
        if s in P:
            restricted.add(s)
        elif s.inverse() not in P:
            raise ValueError(f"profile does not orient {s!r}")
    t = td.node_of(restricted)
    if t is None:
        raise ValueError("restriction of the profile to N is inconsistent")
    return t


def classify_parts(td: TreeDecomposition, profiles: Sequence[Iterable[Separation]]) -> dict[int, list[str]]:
    inhabitants: dict[int, int] = {}
    for P in profiles:
        t = inhabited_node(td, P)
        inhabitants[t] = inhabitants.get(t, 0) + 1
    labels = {}
    for t in range(td.size):
        tags = ["essential" if t in inhabitants else "inessential"]
        if any(td.parts[t] & ~s.separator == 0 for s in td.system):
            tags.append("hub")
        labels[t] = tags
    return labels


@dataclass
class NodeTarget:
    """Outcome of orienting a decomposition by an orientation of S_k."""

    node: int | None
    witness: tuple[Separation, Separation] | None = None
    witness_decomposition: TreeDecomposition | None = None


def orients_toward_node(td: TreeDecomposition, O: Iterable[Separation], k: int) -> NodeTarget:
    """Locate the node an orientation of S_k points to.

    For an inconsistent orientation, returns the witness pair and the
    decomposition of the four-element system they span, which the
    orientation does not point to any node of.
    """
    if td.adhesion() >= k:
        raise ValueError(f"decomposition has adhesion {td.adhesion()} >= k={k}")
    O = frozenset(O)
    witness = inconsistent_pair(O)
    if witness is None:
        return NodeTarget(inhabited_node(td, O))
    s, t = witness
    small = [s, s.inverse(), t, t.inverse()]
    wtd = decomposition_from_nested(td.graph, small)
    if wtd.node_of(O & set(small)) is not None:
        raise DecompositionError("inconsistent orientation unexpectedly points to a node")
    return NodeTarget(None, witness, wtd)


def dumps(td: TreeDecomposition, labels: dict[int, list[str]] | None = None) -> str:
    return json.dumps(td.to_json(labels), sort_keys=True)
