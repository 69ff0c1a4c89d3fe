"""Slow reference implementations written straight from the definitions.

Nothing here reuses the bitmask machinery of the main modules: vertex sets
are frozensets, separations are ``(A, B)`` tuples of frozensets, and every
test is the textbook one. Only the edge list is taken from ``Graph``.
Intended for graphs with at most about seven vertices.
"""

from __future__ import annotations

from itertools import combinations, product

from .graph import Graph

Pair = tuple  # (frozenset A, frozenset B)


def _adjacency(G: Graph) -> dict[int, set[int]]:
    adj: dict[int, set[int]] = {v: set() for v in range(G.n)}
    for u, v in G.edges:
        adj[u].add(v)
        adj[v].add(u)
    return adj


def separations(G: Graph, k: int) -> set[Pair]:
    """All proper separations of order < k, by trying every 3-colouring of V."""
    V = range(G.n)
    out = set()
    for labels in product((0, 1, 2), repeat=G.n):
        only_a = {v for v in V if labels[v] == 0}
        only_b = {v for v in V if labels[v] == 1}
        both = {v for v in V if labels[v] == 2}
        if not only_a or not only_b or len(both) >= k:
            continue
        if any((u in only_a and v in only_b) or (u in only_b and v in only_a) for u, v in G.edges):
            continue
        out.add((frozenset(only_a | both), frozenset(only_b | both)))
    return out


def _connected_avoiding(adj, x: int, y: int, removed: set[int]) -> bool:
    seen = {x}
    stack = [x]
    while stack:
        u = stack.pop()
        if u == y:
            return True
        for w in adj[u]:
            if w not in seen and w not in removed:
                seen.add(w)
                stack.append(w)
    return False


def inseparable(G: Graph, x: int, y: int, k: int) -> bool:
    """No set of fewer than k other vertices separates x from y."""
    adj = _adjacency(G)
    if y in adj[x]:
        return True
    others = [v for v in range(G.n) if v not in (x, y)]
    for size in range(k):
        for Z in combinations(others, size):
            if not _connected_avoiding(adj, x, y, set(Z)):
                return False
    return True


def blocks(G: Graph, k: int) -> set[frozenset]:
    """Maximal vertex sets of size >= k whose members are pairwise inseparable."""
    rel = {(x, y) for x, y in combinations(range(G.n), 2) if inseparable(G, x, y, k)}
    good = []
    for size in range(max(k, 1), G.n + 1):
        for X in combinations(range(G.n), size):
            if all(pair in rel for pair in combinations(X, 2)):
                good.append(frozenset(X))
    return {X for X in good if not any(X < Y for Y in good)}


def leq(s: Pair, t: Pair) -> bool:
    return s[0] <= t[0] and s[1] >= t[1]


def inverse(s: Pair) -> Pair:
    return (s[1], s[0])


def is_consistent(O: set[Pair]) -> bool:
    return not any(s != t and leq(inverse(t), s) for s in O for t in O)


def satisfies_profile_axiom(O: set[Pair]) -> bool:
    return not any((s[1] & t[1], s[0] | t[0]) in O for s in O for t in O)


def profiles(G: Graph, k: int) -> set[frozenset]:
    """All k-profiles: orientations of the proper (<k)-separations that are
    consistent and contain no corner (B∩D, A∪C) of two of their members.

    Depth-first over the separation pairs; a branch is cut as soon as the
    members chosen so far break one of the two rules, which they would then
    break in every completion as well.
    """
    seps = separations(G, k)
    reps = sorted({min(s, inverse(s), key=_key) for s in seps}, key=_key)
    found: set[frozenset] = set()
    chosen: list[Pair] = []
    forbidden: list[set[Pair]] = [set()]

    def fits(s: Pair) -> bool:
        if s in forbidden[-1]:
            return False
        for t in chosen:
            if leq(inverse(t), s) or leq(inverse(s), t):
                return False
            if (s[1] & t[1], s[0] | t[0]) in chosen or (t[1] & s[1], t[0] | s[0]) in chosen:
                return False
        return True

    def search(i: int) -> None:
        if i == len(reps):
            O = set(chosen)
            if is_consistent(O) and satisfies_profile_axiom(O):
                found.add(frozenset(O))
            return
        for s in (reps[i], inverse(reps[i])):
            if not fits(s):
                continue
            corners = {(s[1] & t[1], s[0] | t[0]) for t in chosen}
            corners.add((s[1], s[0]))
            chosen.append(s)
            forbidden.append(forbidden[-1] | corners)
            search(i + 1)
            forbidden.pop()
            chosen.pop()

    search(0)
    return found


def _key(s: Pair) -> tuple:
    return (len(s[0] & s[1]), sorted(s[0]), sorted(s[1]))
