"""k-blocks, orientations, consistency, the profile axiom and tangles.

Orientations and profiles are plain ``frozenset`` objects of
:class:`~canontree.separations.Separation`; a profile of order ``k`` is an
orientation of every proper separation of order < k.
"""

from __future__ import annotations

from itertools import combinations
from typing import Iterable, Sequence

from ._bits import iter_bits, mask_of
from .graph import Graph, inseparable
from .separations import (
    LimitExceeded,
    Separation,
    enumerate_separations,
    leq,
    unordered_pairs,
)

Orientation = frozenset  # of Separation

MAX_PROFILE_PAIRS = 4096


def _bron_kerbosch(adj: list[int], r: int, p: int, x: int, out: list[int]) -> None:
    if not p and not x:
        out.append(r)
        return
    while p:
        v = (p & -p).bit_length() - 1
        bit = 1 << v
        _bron_kerbosch(adj, r | bit, p & adj[v], x & adj[v], out)
        p &= ~bit
        x |= bit


def maximal_cliques(n: int, adj: Sequence[int]) -> list[int]:
    out: list[int] = []
    _bron_kerbosch(list(adj), 0, (1 << n) - 1, 0, out)
    return out


def inseparability_adjacency(G: Graph, k: int) -> list[int]:
    rel = [0] * G.n
    for x, y in combinations(range(G.n), 2):
        if inseparable(G, x, y, k):
            rel[x] |= 1 << y
            rel[y] |= 1 << x
    return rel


def k_blocks(G: Graph, k: int) -> list[tuple[int, ...]]:
    """All k-blocks of G as sorted vertex tuples, in lexicographic order."""
    if k < 1:
        raise ValueError("k must be at least 1")
    rel = inseparability_adjacency(G, k)
    blocks = [tuple(iter_bits(c)) for c in maximal_cliques(G.n, rel) if c.bit_count() >= k]
    return sorted(blocks)


def block_profile(X: Iterable[int], seps: Iterable[Separation]) -> Orientation:
    """Orient every separation of ``seps`` towards the side containing X."""
    x = mask_of(X)
    chosen = set()
    for s in seps:
        if x & ~s.b == 0:
            chosen.add(s)
        elif x & ~s.a != 0:
            raise ValueError(f"block {list(iter_bits(x))} lies in neither side of {s!r}")
    return frozenset(chosen)


def inconsistent_pair(O: Iterable[Separation]) -> tuple[Separation, Separation] | None:
    """A pair ``(A,B), (C,D)`` of O with ``(D,C) <= (A,B)``, or ``None``."""
    items = sorted(O, key=Separation.key)
    for s in items:
        for t in items:
            if t is s:
                continue
            if leq(t.inverse(), s):
                return (s, t)
    return None


def is_consistent(O: Iterable[Separation]) -> tuple[bool, tuple[Separation, Separation] | None]:
    witness = inconsistent_pair(O)
    return witness is None, witness


def profile_violation(O: Iterable[Separation]) -> tuple[Separation, Separation] | None:
    """Two members whose corner ``(B∩D, A∪C)`` is also in O, if any."""
    members = set(O)
    items = sorted(members, key=Separation.key)
    for i, s in enumerate(items):
        for t in items[i:]:
            if Separation(s.b & t.b, s.a | t.a) in members:
                return (s, t)
    return None


def is_profile(O: Iterable[Separation]) -> bool:
    O = frozenset(O)
    return inconsistent_pair(O) is None and profile_violation(O) is None


def join_closure_violation(O: Iterable[Separation], k: int) -> tuple[Separation, Separation] | None:
    """Check the derived corner-closure rule.

    For members ``(A,B), (C,D)`` whose join ``(A∪C, B∩D)`` is proper with
    order < k, the join must belong to O. Returns a failing pair or ``None``.
    """
    members = set(O)
    items = sorted(members, key=Separation.key)
    for i, s in enumerate(items):
        for t in items[i + 1:]:
            j = Separation(s.a | t.a, s.b & t.b)
            if j.is_proper() and j.order < k and j not in members:
                return (s, t)
    return None


def restrict(P: Iterable[Separation], l: int) -> Orientation:
    """The members of P of order < l."""
    return frozenset(s for s in P if s.order < l)


def orientation_key(O: Iterable[Separation]) -> tuple:
    return tuple(sorted(s.key() for s in O))


def enumerate_profiles(
    G: Graph,
    k: int,
    seps: Sequence[Separation] | None = None,
    max_pairs: int = MAX_PROFILE_PAIRS,
) -> list[Orientation]:
    """All k-profiles of G in canonical order.

    Backtracks over the unordered separation pairs in ascending order,
    pruning branches that violate consistency or the profile axiom.
    """
    if seps is None:
        seps = enumerate_separations(G, k)
    reps = unordered_pairs(seps)
    if len(reps) > max_pairs:
        raise LimitExceeded(f"{len(reps)} separation pairs exceed the profile limit {max_pairs}")
    # Orientation 2i is reps[i], 2i + 1 its inverse.
    oriented: list[Separation] = []
    for r in reps:
        oriented.append(r)
        oriented.append(r.inverse())
    index = {s: i for i, s in enumerate(oriented)}
    m = len(oriented)

    conflict = [0] * m
    for i in range(m):
        si = oriented[i]
        inv_i = oriented[i ^ 1]
        row = 0
        for j in range(m):
            if j == i or j == i ^ 1:
                continue
            if leq(inv_i, oriented[j]):
                row |= 1 << j
        conflict[i] = row

    def corner(i: int, j: int) -> int:
        s, t = oriented[i], oriented[j]
        return index.get(Separation(s.b & t.b, s.a | t.a), -1)

    even = sum(1 << (2 * i) for i in range(len(reps)))
    results: list[Orientation] = []

    def search(pos: int, chosen: list[int], cmask: int, banned: int) -> None:
        if pos == len(reps):
            results.append(frozenset(oriented[i] for i in chosen))
            return
        for i in (2 * pos, 2 * pos + 1):
            if banned >> i & 1:
                continue
            nb = banned | conflict[i]
            ok = True
            for j in chosen:
                c = corner(i, j)
                if c >= 0:
                    if cmask >> c & 1:
                        ok = False
                        break
                    nb |= 1 << c
            if not ok or (nb >> i & 1):
                continue
            if nb & (nb >> 1) & even:
                continue
            chosen.append(i)
            search(pos + 1, chosen, cmask | 1 << i, nb)
            chosen.pop()

    search(0, [], 0, 0)
    results.sort(key=orientation_key)
    return results


def _edge_masks(G: Graph) -> list[tuple[int, int]]:
    return [(u, v) for u, v in G.sorted_edges()]


def is_tangle(O: Iterable[Separation], G: Graph) -> bool:
    """No three small sides (with repetition) together cover every vertex and edge."""
    edges = _edge_masks(G)
    all_edges = (1 << len(edges)) - 1
    sides = set()
    for s in O:
        emask = 0
        for i, (u, v) in enumerate(edges):
            if s.a >> u & 1 and s.a >> v & 1:
                emask |= 1 << i
        sides.add((s.a, emask))
    sides_l = sorted(sides)
    full = G.full
    for i, (v1, e1) in enumerate(sides_l):
        for j in range(i, len(sides_l)):
            v2, e2 = sides_l[j]
            v12, e12 = v1 | v2, e1 | e2
            for l in range(j, len(sides_l)):
                v3, e3 = sides_l[l]
                if v12 | v3 == full and e12 | e3 == all_edges:
                    return False
    return True
