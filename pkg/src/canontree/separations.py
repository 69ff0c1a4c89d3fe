"""Oriented separations of a graph and the partial order between them."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, NamedTuple, Sequence

from ._bits import iter_bits, mask_of, to_list
from .graph import Graph, component_masks, permute_mask

MAX_N = 16
MAX_K = 5


class LimitExceeded(ValueError):
    """Input is larger than the desk-scale limits this package accepts."""


class InvalidSeparation(ValueError):
    pass


@dataclass(frozen=True, slots=True)
class Separation:
    """An oriented separation ``(A, B)``, pointing towards ``B``.

    ``a`` and ``b`` are vertex bitmasks.
    """

    a: int
    b: int

    @classmethod
    def of(cls, A: Iterable[int], B: Iterable[int]) -> "Separation":
        return cls(mask_of(A), mask_of(B))

    @property
    def A(self) -> list[int]:
        return to_list(self.a)

    @property
    def B(self) -> list[int]:
        return to_list(self.b)

    @property
    def separator(self) -> int:
        return self.a & self.b

    @property
    def order(self) -> int:
        return (self.a & self.b).bit_count()

    @property
    def small(self) -> int:
        """``A \\ B``."""
        return self.a & ~self.b

    @property
    def big(self) -> int:
        """``B \\ A``."""
        return self.b & ~self.a

    def is_proper(self) -> bool:
        return bool(self.a & ~self.b) and bool(self.b & ~self.a)

    def inverse(self) -> "Separation":
        return Separation(self.b, self.a)

    def __le__(self, other: "Separation") -> bool:
        return leq(self, other)

    def key(self) -> tuple:
        return (self.order, to_list(self.a), to_list(self.b))

    def permuted(self, perm: Sequence[int]) -> "Separation":
        return Separation(permute_mask(self.a, perm), permute_mask(self.b, perm))

    def to_json(self) -> dict:
        return {"A": self.A, "B": self.B}

    @classmethod
    def from_json(cls, data: dict) -> "Separation":
        return cls.of(data["A"], data["B"])

    def __repr__(self) -> str:
        return f"Sep({self.A}, {self.B})"


class SeparationInfo(NamedTuple):
    order: int
    proper: bool
    tight: bool


def is_separation(G: Graph, s: Separation) -> bool:
    if s.a | s.b != G.full:
        return False
    small, big = s.small, s.big
    return not any(G.adj[v] & big for v in iter_bits(small))


def is_tight(G: Graph, s: Separation) -> bool:
    small, big = s.small, s.big
    return all(G.adj[v] & small and G.adj[v] & big for v in iter_bits(s.separator))


def classify(G: Graph, s: Separation) -> SeparationInfo:
    if s.a | s.b != G.full:
        missing = to_list(G.full & ~(s.a | s.b))
        raise InvalidSeparation(f"{s!r} does not cover vertices {missing}")
    big = s.big
    for v in iter_bits(s.small):
        if G.adj[v] & big:
            u = next(iter_bits(G.adj[v] & big))
            raise InvalidSeparation(f"edge {min(u, v)}-{max(u, v)} crosses {s!r}")
    return SeparationInfo(s.order, s.is_proper(), is_tight(G, s))


def leq(s1: Separation, s2: Separation) -> bool:
    """``(A, B) <= (C, D)`` iff ``A`` is in ``C`` and ``B`` contains ``D``."""
    return (s1.a & ~s2.a) == 0 and (s2.b & ~s1.b) == 0


def nested(s1: Separation, s2: Separation) -> bool:
    a, b, c, d = s1.a, s1.b, s2.a, s2.b
    # The four comparisons of s1 with s2 and with inverse(s2).
    return (
        (a & ~c == 0 and d & ~b == 0)
        or (a & ~d == 0 and c & ~b == 0)
        or (c & ~a == 0 and b & ~d == 0)
        or (d & ~a == 0 and b & ~c == 0)
    )


def corners(s1: Separation, s2: Separation) -> tuple[Separation, Separation, Separation, Separation]:
    """``(A∩C, B∪D), (A∪C, B∩D), (A∩D, B∪C), (A∪D, B∩C)``."""
    a, b, c, d = s1.a, s1.b, s2.a, s2.b
    return (
        Separation(a & c, b | d),
        Separation(a | c, b & d),
        Separation(a & d, b | c),
        Separation(a | d, b & c),
    )


def check_limits(G: Graph, k: int, max_n: int = MAX_N, max_k: int = MAX_K) -> None:
    if G.n > max_n:
        raise LimitExceeded(f"graph has {G.n} vertices, limit is {max_n}")
    if k > max_k:
        raise LimitExceeded(f"order bound k={k} exceeds limit {max_k}")


def enumerate_separations(
    G: Graph,
    k: int,
    tight: bool = False,
    max_n: int = MAX_N,
    max_k: int = MAX_K,
) -> list[Separation]:
    """All proper separations of order < k, inversion-closed and sorted.

    Every separator ``T`` with ``|T| < k`` is combined with every split of
    the components of ``G - T`` into two non-empty groups.
    """
    if k < 1:
        raise ValueError("order bound k must be at least 1")
    check_limits(G, k, max_n, max_k)
    found = set()
    full = G.full
    for size in range(min(k, G.n + 1)):
        for T in combinations(range(G.n), size):
            t = mask_of(T)
            comps = component_masks(G, full & ~t)
            c = len(comps)
            if c < 2:
                continue
            for pick in range(1, (1 << c) - 1):
                side = 0
                for i in range(c):
                    if pick >> i & 1:
                        side |= comps[i]
                found.add(Separation(side | t, (full & ~side)))
    seps = sorted(found, key=Separation.key)
    if tight:
        seps = [s for s in seps if is_tight(G, s)]
    return seps


def by_order(seps: Iterable[Separation], order: int) -> list[Separation]:
    return [s for s in seps if s.order == order]


def unordered_pairs(seps: Iterable[Separation]) -> list[Separation]:
    """One canonical representative (the smaller key) of each ``{s, s^-1}``."""
    seen = set(seps)
    reps = []
    for s in seen:
        inv = s.inverse()
        if inv not in seen or s.key() <= inv.key():
            reps.append(s)
    return sorted(reps, key=Separation.key)


def inversion_closure(seps: Iterable[Separation]) -> frozenset[Separation]:
    out = set()
    for s in seps:
        out.add(s)
        out.add(s.inverse())
    return frozenset(out)


def is_nested_system(seps: Iterable[Separation]) -> tuple[Separation, Separation] | None:
    """Return a crossing pair if one exists, else ``None``."""
    items = sorted(set(seps), key=Separation.key)
    for i, s in enumerate(items):
        for t in items[i + 1:]:
            if not nested(s, t):
                return (s, t)
    return None


def sorted_system(seps: Iterable[Separation]) -> list[Separation]:
    return sorted(set(seps), key=Separation.key)
