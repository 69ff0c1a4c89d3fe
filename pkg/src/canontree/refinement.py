"""Making the parts that contain a k-block as small as possible.

Covers well separated blocks, the refinement that adds the maximal
separations of well separated block profiles to a block-distinguishing
system, the fan S(X) of component-peeling tight separations of a block,
the condition that every member of S(X) has order below k, "good" decompositions and the sufficient conditions on edges
under which every block-containing part is a block.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

from ._bits import mask_of, to_list
from .decomposition import (
    DecompositionError,
    TreeDecomposition,
    decomposition_from_nested,
    inhabited_node,
)
from .graph import (
    Graph,
    component_masks,
    independent_paths_excl_edge,
    is_l_connected,
)
from .profiles import block_profile, k_blocks
from .separations import (
    Separation,
    enumerate_separations,
    inversion_closure,
    is_nested_system,
    is_tight,
)
from .strategies import (
    InfeasibleTask,
    Kind,
    distinguishes,
    maximal_elements,
    run_iterated,
)


def tight_separations(G: Graph, k: int, max_n: int | None = None) -> list[Separation]:
    limits = {} if max_n is None else {"max_n": max_n}
    return [s for s in enumerate_separations(G, k, **limits) if is_tight(G, s)]


def block_side_maxima(X: Iterable[int], S: Iterable[Separation]) -> list[Separation]:
    """Maximal separations ``(A, B)`` of S with X inside B."""
    x = mask_of(X)
    return maximal_elements(s for s in S if x & ~s.b == 0)


def is_well_separated(
    G: Graph,
    k: int,
    X: Iterable[int],
    S: Sequence[Separation] | None = None,
) -> tuple[bool, tuple[Separation, Separation] | None]:
    """Whether the maxima of the block's profile within S are pairwise nested.

    S defaults to the tight separations of order < k. The second value is a
    crossing pair of maxima when the block is not well separated.
    """
    if S is None:
        S = tight_separations(G, k, max_n=max(G.n, 16))
    crossing = is_nested_system(block_side_maxima(X, S))
    return crossing is None, crossing


@dataclass(frozen=True)
class BlockSeparationFan:
    block: tuple
    members: tuple

    def orders(self) -> list[int]:
        return [s.order for s in self.members]


def separations_SX(G: Graph, X: Iterable[int]) -> BlockSeparationFan:
    """Tight separations ``(C ∪ N(C), V \\ C)`` for the components C of G - X."""
    x = mask_of(X)
    fan = []
    for comp in component_masks(G, G.full & ~x):
        s = Separation(comp | G.neighbourhood_mask(comp), G.full & ~comp)
        if is_tight(G, s):
            fan.append(s)
    crossing = is_nested_system(fan)
    if crossing is not None:
        raise AssertionError(f"S(X) is not nested: {crossing}")
    return BlockSeparationFan(tuple(to_list(x)), tuple(sorted(fan, key=Separation.key)))


def condition7(G: Graph, k: int, X: Iterable[int]) -> bool:
    """Every member of S(X) has order below k."""
    return all(s.order < k for s in separations_SX(G, X).members)


class NoDistinguisher(ValueError):
    pass


def min_distinguisher_order(
    G: Graph,
    k: int,
    X: Iterable[int],
    Y: Iterable[int],
    S: Iterable[Separation] | None = None,
) -> int:
    """Least order of a proper (<k)-separation with X in A and Y in B."""
    if S is None:
        S = enumerate_separations(G, k, max_n=max(G.n, 16))
    x, y = mask_of(X), mask_of(Y)
    orders = [s.order for s in S if x & ~s.a == 0 and y & ~s.b == 0]
    if not orders:
        raise NoDistinguisher(f"no separation separates {to_list(x)} from {to_list(y)}")
    return min(orders)


@dataclass
class RefinementReport:
    decomposition: TreeDecomposition
    base: frozenset
    refined: frozenset
    blocks: list
    well_separated: dict
    block_node: dict
    reduced: bool
    verdicts: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "blocks": [
                {
                    "block": list(X),
                    "well_separated": self.well_separated[X],
                    "part": self.decomposition.part(self.block_node[X]),
                    "part_equals_block": self.decomposition.part(self.block_node[X]) == list(X),
                }
                for X in self.blocks
            ],
            "reduced": self.reduced,
            "verdicts": self.verdicts,
        }


def refine_theorem31(
    G: Graph,
    k: int,
    S: Sequence[Separation] | None = None,
    kind: Kind = "ext",
    max_n: int | None = None,
) -> RefinementReport:
    """Block-distinguishing decomposition refined by well separated block maxima.

    ``S`` defaults to the tight separations of order < k. Raises
    :class:`InfeasibleTask` when the base strategy fails and
    :class:`DecompositionError` when the refined system is not nested.
    """
    limits = {} if max_n is None else {"max_n": max_n}
    full = enumerate_separations(G, k, **limits)
    if S is None:
        S = [s for s in full if is_tight(G, s)]
    else:
        S = list(S)
    blocks = k_blocks(G, k)
    profiles = [block_profile(X, full) for X in blocks]
    universe = frozenset(S)

    if len(profiles) >= 1:
        base = run_iterated(G, k, kind, profiles, system=S).chosen
    else:
        base = frozenset()
    outside = [s for s in base if s not in universe]
    if outside:
        raise InfeasibleTask(f"chosen separation {outside[0]!r} is not in S")

    well = {}
    added: set[Separation] = set()
    for X in blocks:
        maxima = block_side_maxima(X, S)
        ok = is_nested_system(maxima) is None
        well[X] = ok
        if ok:
            added.update(maxima)
    refined = frozenset(base | inversion_closure(added))
    crossing = is_nested_system(refined)
    if crossing is not None:
        raise DecompositionError(f"refined system is not nested: {crossing[0]!r} crosses {crossing[1]!r}")
    td = decomposition_from_nested(G, refined)

    block_node = {X: inhabited_node(td, P) for X, P in zip(blocks, profiles)}
    restricted = [P & universe for P in profiles]
    reduced = all(distinguishes(s, restricted) for s in S)
    report = RefinementReport(td, base, refined, blocks, well, block_node, reduced)
    report.verdicts = theorem31_verdicts(report)
    return report


def theorem31_verdicts(r: RefinementReport) -> dict:
    td = r.decomposition
    masks = {X: mask_of(X) for X in r.blocks}
    verdicts = {}

    crowded = [t for t in range(td.size) if sum(1 for m in masks.values() if m & ~td.parts[t] == 0) > 1]
    verdicts["(i) distinct blocks in different parts"] = not crowded

    bad = [X for X in r.blocks if r.well_separated[X] and td.parts[r.block_node[X]] != masks[X]]
    verdicts["(ii) well separated blocks are parts"] = not bad

    # Without k-blocks there is no task to be reduced and the one part is V.
    if r.reduced and r.blocks:
        block_parts = set(masks.values())
        verdicts["(iii) leaf parts are blocks"] = all(td.parts[t] in block_parts for t in td.leaves())
    else:
        verdicts["(iii) leaf parts are blocks"] = None
    return verdicts


def block_parts_are_blocks(r: RefinementReport) -> bool:
    """Every part containing a block equals a block, and blocks sit in distinct parts."""
    td = r.decomposition
    block_masks = {mask_of(X) for X in r.blocks}
    for t in range(td.size):
        inside = [m for m in block_masks if m & ~td.parts[t] == 0]
        if len(inside) > 1:
            return False
        if inside and td.parts[t] not in block_masks:
            return False
    return True


def is_good(
    td: TreeDecomposition,
    G: Graph,
    k: int,
    autos: Iterable[Sequence[int]],
    S: Sequence[Separation] | None = None,
) -> tuple[bool, list[str]]:
    """Canonical, adhesion < k, and every two blocks split at minimum order."""
    N = frozenset(td.system)
    reasons = []
    for perm in autos:
        if frozenset(s.permuted(perm) for s in N) != N:
            reasons.append(f"(a) not invariant under automorphism {list(perm)}")
            break
    if td.adhesion() >= k:
        reasons.append("(b) adhesion is not below k")
    if S is None:
        S = enumerate_separations(G, k, max_n=max(G.n, 16))
    edge_seps = [s for _, _, s in td.edges]
    edge_seps += [s.inverse() for s in edge_seps]
    for X, Y in combinations(k_blocks(G, k), 2):
        best = min_distinguisher_order(G, k, X, Y, S)
        x, y = mask_of(X), mask_of(Y)
        if not any(x & ~s.a == 0 and y & ~s.b == 0 and s.order == best for s in edge_seps):
            reasons.append(f"(c) blocks {list(X)} and {list(Y)} not split at order {best}")
    return not reasons, reasons


def theorem34_hypotheses(G: Graph, k: int) -> tuple[bool, dict]:
    """Check (k-1)-connectivity and the three alternative edge conditions.

    The verdict maps each edge to the first clause it satisfies, or ``None``.
    """
    if k < 2:
        raise ValueError("k must be at least 2")
    connected = is_l_connected(G, k - 1)
    blocks = [mask_of(X) for X in k_blocks(G, k)]
    threshold = (3 * (k - 2)) // 2
    verdict = {}
    for u, v in G.sorted_edges():
        if (G.adj[u] & G.adj[v]).bit_count() >= k - 3:
            verdict[(u, v)] = "i"
        elif independent_paths_excl_edge(G, u, v) >= threshold:
            verdict[(u, v)] = "ii"
        elif any(b >> u & 1 and b >> v & 1 for b in blocks):
            verdict[(u, v)] = "iii"
        else:
            verdict[(u, v)] = None
    return connected and all(verdict.values()), verdict
