"""Corpus-wide verification of the decomposition pipeline.

The corpus is every graph on at most ``max_n`` vertices (from the networkx
graph atlas, which lists them up to isomorphism) together with the frozen
fixtures. Each numbered check below runs one acceptance property over that
corpus and returns a :class:`CheckResult`; ``run_suite`` groups them.
"""

from __future__ import annotations

import random
from collections import defaultdict
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Callable

import networkx as nx

from ._bits import iter_bits, mask_of
from .decomposition import (
    DecompositionError,
    TreeDecomposition,
    decomposition_from_nested,
    inhabited_node,
    iter_consistent_orientations,
    orients_toward_node,
)
from .fixtures import fixture_names, load_fixture
from .generators import is_loc_beats_ext, search_loc_beats_ext, strategy_sizes, verify_example3
from .graph import Graph, automorphisms, is_l_connected
from .profiles import block_profile, enumerate_profiles, inconsistent_pair, k_blocks
from .refinement import (
    block_parts_are_blocks,
    condition7,
    is_well_separated,
    refine_theorem31,
    separations_SX,
    tight_separations,
)
from .separations import Separation, enumerate_separations, nested, unordered_pairs
from .strategies import InfeasibleTask, StrategyRun, bound_report, is_canonical, run_iterated
from . import oracles

ORIENTATION_CAP = 5000
EXHAUSTIVE_PAIRS = 10
SAMPLES = 200
KINDS = ("ext", "loc")


@dataclass
class CheckResult:
    number: int
    title: str
    status: str = "pass"
    checked: int = 0
    skipped: int = 0
    failures: list[str] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    def fail(self, message: str) -> None:
        self.status = "fail"
        if len(self.failures) < 20:
            self.failures.append(message)

    def line(self) -> str:
        text = f"[{self.status.upper()}] criterion {self.number:>2}: {self.title} (checked {self.checked}"
        if self.skipped:
            text += f", skipped {self.skipped}"
        text += ")"
        if self.notes:
            text += " " + "; ".join(self.notes)
        return text

    def to_json(self) -> dict:
        return {
            "criterion": self.number,
            "title": self.title,
            "status": self.status,
            "checked": self.checked,
            "skipped": self.skipped,
            "failures": self.failures,
            "notes": self.notes,
        }


# corpus

def from_networkx(g) -> Graph:
    index = {v: i for i, v in enumerate(sorted(g.nodes()))}
    return Graph(len(index), frozenset((min(index[u], index[v]), max(index[u], index[v])) for u, v in g.edges()))


@lru_cache(maxsize=None)
def atlas_graphs(max_n: int = 6) -> tuple[tuple[str, Graph], ...]:
    """All graphs on at most ``max_n`` <= 7 vertices, one per isomorphism class."""
    if max_n > 7:
        raise ValueError("the graph atlas stops at 7 vertices")
    return tuple((f"atlas{i}", from_networkx(g)) for i, g in enumerate(nx.graph_atlas_g()) if g.number_of_nodes() <= max_n)


@lru_cache(maxsize=None)
def biconnected_graphs(n: int) -> tuple[Graph, ...]:
    """All 2-connected graphs on n <= 8 vertices up to isomorphism.

    For n = 8 each graph is obtained from a connected 7-vertex graph by adding
    a vertex of minimum degree; deleting such a vertex from a 2-connected
    graph leaves it connected, so nothing is missed. Duplicates are removed
    with a Weisfeiler-Lehman hash followed by an isomorphism test.
    """
    if n <= 7:
        return tuple(from_networkx(g) for g in nx.graph_atlas_g()
                     if g.number_of_nodes() == n and n >= 3 and nx.is_biconnected(g))
    if n != 8:
        raise ValueError("only n <= 8 is supported")
    buckets: dict[tuple, list] = {}
    found = []
    for h in nx.graph_atlas_g():
        if h.number_of_nodes() != 7 or not nx.is_connected(h):
            continue
        low = min(d for _, d in h.degree())
        for d in range(2, min(low + 1, 7) + 1):
            for nbrs in combinations(range(7), d):
                g = h.copy()
                g.add_edges_from((7, v) for v in nbrs)
                if min(x for _, x in g.degree()) != d or not nx.is_biconnected(g):
                    continue
                key = (tuple(sorted(x for _, x in g.degree())), nx.weisfeiler_lehman_graph_hash(g, iterations=3))
                seen = buckets.setdefault(key, [])
                if not any(nx.is_isomorphic(g, other) for other in seen):
                    seen.append(g)
                    found.append(from_networkx(g))
    return tuple(found)


@lru_cache(maxsize=None)
def fixture_items() -> tuple:
    return tuple((name, *load_fixture(name)) for name in fixture_names())


def corpus_instances(max_n: int = 6, max_k: int = 4) -> list[tuple[str, Graph, int]]:
    """(name, graph, k) for atlas graphs with 1 <= k <= max_k and the fixtures at their own k."""
    items = [(name, G, k) for name, G in atlas_graphs(max_n) for k in range(1, max_k + 1)]
    items += [(name, c.graph, k) for name, k, c in fixture_items() if k <= max_k]
    return items


@lru_cache(maxsize=None)
def separations_of(G: Graph, k: int) -> tuple[Separation, ...]:
    return tuple(enumerate_separations(G, k, max_n=max(G.n, 16)))


@lru_cache(maxsize=None)
def blocks_of(G: Graph, k: int) -> tuple:
    return tuple(k_blocks(G, k))


def profile_set(G: Graph, k: int, mode: str) -> list[frozenset]:
    seps = separations_of(G, k)
    if mode == "blocks":
        return [block_profile(X, seps) for X in blocks_of(G, k)]
    if mode == "all":
        return enumerate_profiles(G, k, list(seps))
    raise ValueError(f"unknown profile mode {mode!r}")


@dataclass
class Produced:
    name: str
    graph: Graph
    k: int
    kind: str
    mode: str
    profiles: list
    run: StrategyRun | None
    td: TreeDecomposition | None
    error: str | None = None

    @property
    def chosen(self) -> frozenset:
        return self.run.chosen if self.run is not None else frozenset()


def produce(name: str, G: Graph, k: int, kind: str, mode: str) -> Produced:
    profiles = profile_set(G, k, mode)
    seps = list(separations_of(G, k))
    try:
        run = run_iterated(G, k, kind, profiles, system=seps) if profiles else None
    except InfeasibleTask as exc:
        return Produced(name, G, k, kind, mode, profiles, None, None, f"infeasible: {exc}")
    chosen = run.chosen if run is not None else frozenset()
    try:
        td = decomposition_from_nested(G, chosen)
    except DecompositionError as exc:
        return Produced(name, G, k, kind, mode, profiles, run, None, f"decomposition: {exc}")
    return Produced(name, G, k, kind, mode, profiles, run, td)


@lru_cache(maxsize=None)
def strategy_outputs(max_n: int = 6, max_k: int = 4) -> tuple[Produced, ...]:
    out = []
    for name, G, k in corpus_instances(max_n, max_k):
        modes = ("blocks", "all") if name.startswith("atlas") else ("blocks",)
        for mode in modes:
            for kind in KINDS:
                out.append(produce(name, G, k, kind, mode))
    return tuple(out)


def _label(p: Produced) -> str:
    return f"{p.name} k={p.k} {p.kind}/{p.mode}"


# criteria

def check_bijection(max_n: int = 6) -> CheckResult:
    r = CheckResult(1, "consistent orientations of N are the nodes; parts form a decomposition inducing N")
    for p in strategy_outputs(max_n):
        if p.error is not None:
            if p.error.startswith("infeasible"):
                r.skipped += 1
            else:
                r.fail(f"{_label(p)}: {p.error}")
            continue
        r.checked += 1
        td = p.td
        if td.size != len(p.chosen) // 2 + 1:
            r.fail(f"{_label(p)}: {td.size} nodes for |N| = {len(p.chosen)}")
        if len(set(td.orientations)) != td.size:
            r.fail(f"{_label(p)}: repeated orientation")
    return r


def _sample_orientations(seps: list[Separation], rng: random.Random, count: int) -> list[frozenset]:
    reps = unordered_pairs(seps)
    return [frozenset(s if rng.random() < 0.5 else s.inverse() for s in reps) for _ in range(count)]


def check_orientation_targets(max_n: int = 6, max_k: int = 3, seed: int = 0) -> CheckResult:
    r = CheckResult(2, "consistent orientations of S_k point to one node; inconsistent ones get a verified witness")
    rng = random.Random(seed)
    groups: dict[tuple, list[Produced]] = defaultdict(list)
    for p in strategy_outputs(max_n):
        if p.name.startswith("atlas") and p.k <= max_k and p.td is not None:
            groups[(p.name, p.k)].append(p)
    sampled = 0
    for (name, k), items in sorted(groups.items(), key=lambda kv: (int(kv[0][0][5:]), kv[0][1])):
        G = items[0].graph
        seps = list(separations_of(G, k))
        nodes = [[o for o in p.td.orientations] for p in items]

        def targets(O: frozenset) -> None:
            for p, orients in zip(items, nodes):
                hits = sum(1 for o in orients if o <= O)
                if hits != 1:
                    r.fail(f"{_label(p)}: consistent orientation points to {hits} nodes")

        consistent = []
        exhaustive = True
        for O in iter_consistent_orientations(seps):
            consistent.append(O)
            if len(consistent) > ORIENTATION_CAP:
                exhaustive = False
                break
        if not exhaustive:
            sampled += 1
            gen = random.Random(rng.random())
            for _ in range(SAMPLES):
                consistent.append(next(iter_consistent_orientations(seps, gen)))
        for O in consistent:
            targets(O)
            r.checked += 1

        pairs = len(unordered_pairs(seps))
        if pairs <= EXHAUSTIVE_PAIRS:
            reps = unordered_pairs(seps)
            candidates = [
                frozenset(s.inverse() if bits >> i & 1 else s for i, s in enumerate(reps))
                for bits in range(1 << pairs)
            ]
        else:
            candidates = _sample_orientations(seps, rng, SAMPLES)
            for O in consistent[:SAMPLES]:
                s = rng.choice(sorted(O, key=Separation.key))
                candidates.append((O - {s}) | {s.inverse()})
        verified: dict[tuple, bool] = {}
        for O in candidates:
            witness = inconsistent_pair(O)
            if witness is None:
                targets(O)
                continue
            r.checked += 1
            if witness in verified:
                continue
            try:
                target = orients_toward_node(items[0].td, O, k)
                verified[witness] = target.node is None and target.witness_decomposition is not None
            except (DecompositionError, ValueError) as exc:
                verified[witness] = False
                r.fail(f"{name} k={k}: witness check raised {exc}")
            if not verified[witness]:
                r.fail(f"{name} k={k}: inconsistent orientation without verified witness")
    r.notes.append(f"{sampled} graph/k instances above {ORIENTATION_CAP} consistent orientations were sampled")
    return r


def check_single_task_bounds(max_n: int = 6) -> CheckResult:
    r = CheckResult(3, "single-task bounds on (k-1)-connected graphs")
    for p in strategy_outputs(max_n):
        if p.error is not None or not is_l_connected(p.graph, p.k - 1):
            r.skipped += p.error is not None
            continue
        r.checked += 1
        n, size = len(p.profiles), len(p.chosen)
        if n == 0:
            continue
        upper = 2 * n if p.kind == "ext" else 4 * (n - 1)
        if not 2 * (n - 1) <= size <= upper:
            r.fail(f"{_label(p)}: p={n}, |N|={size}")
    return r


def check_iterated_bounds(max_n: int = 6) -> CheckResult:
    r = CheckResult(4, "iterated strategy bounds on the full corpus")
    for p in strategy_outputs(max_n):
        if p.error is not None:
            r.skipped += 1
            continue
        r.checked += 1
        n, size = len(p.profiles), len(p.chosen)
        if n == 0:
            continue
        if not 2 * (n - 1) <= size <= 4 * (n - 1):
            r.fail(f"{_label(p)}: p={n}, |N|={size} outside [2(p-1), 4(p-1)]")
        if p.kind == "ext" and is_l_connected(p.graph, p.k - 1) and size > 2 * n:
            r.fail(f"{_label(p)}: p={n}, |N|={size} > 2p on a (k-1)-connected graph")
        if p.run is not None and not bound_report(p.run)["ok"]:
            r.fail(f"{_label(p)}: bound report {bound_report(p.run)['checks']}")
    return r


def _fixture(name: str):
    for fname, k, c in fixture_items():
        if fname == name:
            return k, c
    raise KeyError(name)


def _part_sets(td: TreeDecomposition) -> set[frozenset]:
    return {frozenset(td.part(t)) for t in range(td.size)}


def check_tightness_witnesses() -> CheckResult:
    r = CheckResult(5, "tightness witnesses: path of cliques and cycle of cliques")
    k, c = _fixture("path_cliques_4_5")
    p = produce("path_cliques_4_5", c.graph, k, "loc", "blocks")
    r.checked += 1
    if p.error is not None or len(p.chosen) != 4 * (len(p.profiles) - 1) or len(p.profiles) != 4:
        r.fail(f"path of 4 cliques: p={len(p.profiles)}, |N_Loc|={len(p.chosen)}, error={p.error}")
    k, c = _fixture("cycle_cliques_5_5")
    expected = {frozenset(c.sets[name]) for name in ("C", "K1", "K2", "K3", "K4", "K5")}
    for kind in KINDS:
        p = produce("cycle_cliques_5_5", c.graph, k, kind, "blocks")
        r.checked += 1
        if p.td is None or _part_sets(p.td) != expected or p.td.size != 6:
            r.fail(f"cycle of 5 cliques, {kind}: parts differ from C, K1..K5 ({p.error})")
    return r


def check_loc_beats_ext() -> CheckResult:
    r = CheckResult(6, "search finds a 3-connected graph with four 4-blocks where Loc uses fewer separations than Ext")
    hit = search_loc_beats_ext()
    r.checked += 1
    if hit is None:
        r.status = "inconclusive"
        r.notes.append("bounded search exhausted without a hit")
        return r
    index, G = hit
    k, c = _fixture("loc_beats_ext")
    if c.graph != G:
        r.fail("frozen fixture differs from the first search hit")
    if not is_loc_beats_ext(c.graph):
        r.fail("frozen fixture does not show the phenomenon")
    sizes = strategy_sizes(c.graph, 4)
    r.notes.append(f"candidate {index}: |N_Ext|={sizes['ext']}, |N_Loc|={sizes['loc']}")
    return r


def refine_outputs(max_n: int = 6, max_k: int = 4) -> list:
    return _refine_outputs(max_n, max_k, "tight")


@lru_cache(maxsize=None)
def _refine_outputs(max_n: int, max_k: int, which: str) -> tuple:
    out = []
    for name, G, k in corpus_instances(max_n, max_k):
        S = tight_separations(G, k, max_n=max(G.n, 16)) if which == "tight" else list(separations_of(G, k))
        for kind in KINDS:
            try:
                out.append((name, G, k, kind, refine_theorem31(G, k, S, kind, max_n=max(G.n, 16)), None))
            except InfeasibleTask as exc:
                out.append((name, G, k, kind, None, f"infeasible: {exc}"))
            except DecompositionError as exc:
                out.append((name, G, k, kind, None, f"not nested: {exc}"))
    return tuple(out)


def check_refinement(max_n: int = 6) -> CheckResult:
    r = CheckResult(7, "refinement with tight S: blocks apart, well separated blocks are parts, leaves are blocks")
    reduced = 0
    for name, G, k, kind, rep, err in refine_outputs(max_n):
        if rep is None:
            if err.startswith("infeasible"):
                r.skipped += 1
            else:
                r.fail(f"{name} k={k} {kind}: {err}")
            continue
        r.checked += 1
        for verdict, ok in rep.verdicts.items():
            if ok is False:
                r.fail(f"{name} k={k} {kind}: {verdict} fails")
        reduced += rep.verdicts["(iii) leaf parts are blocks"] is not None
    r.notes.append(f"leaf check applied to {reduced} reduced runs")
    return r


def check_example4() -> CheckResult:
    r = CheckResult(8, "clique with three attached cliques: star around K, K not well separated, its attachment separations cross")
    k, c = _fixture("example4")
    G = c.graph
    K = frozenset(c.sets["K"])
    for kind in KINDS:
        p = produce("example4", G, k, kind, "blocks")
        r.checked += 1
        td = p.td
        if td is None:
            r.fail(f"{kind}: {p.error}")
            continue
        centre = [t for t in range(td.size) if td.degree(t) == td.size - 1]
        if td.size != 4 or not centre or frozenset(td.part(centre[0])) != K:
            r.fail(f"{kind}: not a star with centre V(K)")
    ok, witness = is_well_separated(G, k, c.sets["K"])
    r.checked += 1
    k12 = mask_of(c.sets["K12"]) & ~mask_of(c.sets["S12"])
    if ok or witness is None or any(s.a & k12 != k12 for s in witness):
        r.fail(f"V(K) well separated={ok}, witness={witness}")
    fan1 = separations_SX(G, c.sets["K1"]).members
    fan2 = separations_SX(G, c.sets["K2"]).members
    r.checked += 1
    if all(nested(s, t) for s in fan1 for t in fan2):
        r.fail("S(K1) and S(K2) are nested")
    return r


def check_example3() -> CheckResult:
    r = CheckResult(9, "K5 with hung adjacent pairs: one 5-block whose part always carries extra vertices")
    for name, extra in (("example3_pairs1", 1), ("example3_pairs3", 3)):
        k, c = _fixture(name)
        G = c.graph
        K = mask_of(c.sets["K"])
        problems = verify_example3(c)
        r.checked += 1
        for prob in problems:
            r.fail(f"{name}: {prob}")
        tds = []
        for kind in KINDS:
            p = produce(name, G, k, kind, "blocks")
            if p.td is None:
                r.fail(f"{name} {kind}: {p.error}")
            else:
                tds.append(p.td)
            rep = refine_theorem31(G, k, kind=kind, max_n=max(G.n, 16))
            tds.append(rep.decomposition)
        for td in tds:
            r.checked += 1
            if td.adhesion() > 4:
                continue
            holders = [td.parts[t] for t in range(td.size) if K & ~td.parts[t] == 0]
            if len(holders) != 1 or holders[0] == K or (holders[0] & ~K).bit_count() < extra:
                r.fail(f"{name}: part containing K has {[(h & ~K).bit_count() for h in holders]} extra vertices")
    return r


def check_condition7(max_n: int = 6) -> CheckResult:
    r = CheckResult(10, "well separated implies the component-separator condition; blocks that are parts satisfy it")
    for name, G, k in corpus_instances(max_n):
        S = tight_separations(G, k, max_n=max(G.n, 16))
        for X in blocks_of(G, k):
            r.checked += 1
            if is_well_separated(G, k, X, S)[0] and not condition7(G, k, X):
                r.fail(f"{name} k={k}: {list(X)} well separated but some S(X) member has order >= k")
    tds = [(p.name, p.graph, p.k, p.td) for p in strategy_outputs(max_n) if p.td is not None]
    tds += [(name, G, k, rep.decomposition) for name, G, k, _, rep, _ in refine_outputs(max_n) if rep is not None]
    for name, G, k, td in tds:
        if td.adhesion() >= k:
            continue
        parts = set(td.parts)
        for X in blocks_of(G, k):
            if mask_of(X) in parts:
                r.checked += 1
                if not condition7(G, k, X):
                    r.fail(f"{name} k={k}: block {list(X)} is a part but some S(X) member has order >= k")
    return r


def check_theorem34(max_n: int = 6, tutte_n: int = 8) -> CheckResult:
    from .refinement import theorem34_hypotheses

    r = CheckResult(11, "edge conditions give block parts; k=3 on all 2-connected graphs")
    passing = 0
    for name, G, k, kind, rep, err in _refine_outputs(max_n, 4, "proper"):
        if k < 2 or not theorem34_hypotheses(G, k)[0]:
            continue
        passing += 1
        r.checked += 1
        if rep is None:
            r.fail(f"{name} k={k} {kind}: {err}")
        elif not block_parts_are_blocks(rep):
            r.fail(f"{name} k={k} {kind}: a part containing a block is not a block")
    tutte = 0
    for n in range(3, tutte_n + 1):
        for G in biconnected_graphs(n):
            tutte += 1
            r.checked += 1
            ok, _ = theorem34_hypotheses(G, 3)
            if not ok:
                r.fail(f"2-connected graph {G.sorted_edges()} fails the k=3 hypotheses")
                continue
            try:
                rep = refine_theorem31(G, 3, list(separations_of(G, 3)), "ext")
            except (InfeasibleTask, DecompositionError) as exc:
                r.fail(f"2-connected graph {G.sorted_edges()}: {exc}")
                continue
            if not block_parts_are_blocks(rep):
                r.fail(f"2-connected graph {G.sorted_edges()}: a part containing a 3-block is not a 3-block")
    r.notes.append(f"{passing} corpus runs met the hypotheses; {tutte} 2-connected graphs with n <= {tutte_n}")
    return r


@lru_cache(maxsize=None)
def _automorphisms(G: Graph) -> tuple:
    return tuple(automorphisms(G))


def check_canonical(max_n: int = 6) -> CheckResult:
    r = CheckResult(12, "strategy outputs are invariant under every automorphism")
    for p in strategy_outputs(max_n):
        if p.error is not None:
            r.skipped += 1
            continue
        r.checked += 1
        if not is_canonical(p.chosen, _automorphisms(p.graph)):
            r.fail(f"{_label(p)}: N is not invariant")
    return r


def _as_pairs(seps) -> set:
    return {(frozenset(iter_bits(s.a)), frozenset(iter_bits(s.b))) for s in seps}


def check_oracles(max_n: int = 6, max_k: int = 4) -> CheckResult:
    r = CheckResult(13, "separations, blocks and profiles agree with brute-force oracles")
    for name, G in atlas_graphs(max_n):
        for k in range(1, max_k + 1):
            r.checked += 1
            seps = separations_of(G, k)
            if _as_pairs(seps) != oracles.separations(G, k):
                r.fail(f"{name} k={k}: separations differ")
            if {frozenset(X) for X in blocks_of(G, k)} != oracles.blocks(G, k):
                r.fail(f"{name} k={k}: blocks differ")
            mine = {frozenset(_as_pairs(P)) for P in enumerate_profiles(G, k, list(seps))}
            if mine != oracles.profiles(G, k):
                r.fail(f"{name} k={k}: profiles differ")
    return r


CHECKS: dict[int, Callable[..., CheckResult]] = {
    1: check_bijection,
    2: check_orientation_targets,
    3: check_single_task_bounds,
    4: check_iterated_bounds,
    5: check_tightness_witnesses,
    6: check_loc_beats_ext,
    7: check_refinement,
    8: check_example4,
    9: check_example3,
    10: check_condition7,
    11: check_theorem34,
    12: check_canonical,
    13: check_oracles,
}

SUITES = {
    "thm11": (1, 2),
    "bounds": (3, 4, 5, 6),
    "thm31": (7, 8, 9, 10),
    "thm34": (11,),
    "canonical": (12,),
    "oracles": (13,),
    "all": tuple(CHECKS),
}

_CORPUS_CHECKS = {1, 3, 4, 7, 10, 12, 13}


def run_check(number: int, max_n: int = 6, seed: int = 0) -> CheckResult:
    fn = CHECKS[number]
    if number == 2:
        return fn(max_n=max_n, seed=seed)
    if number == 11:
        return fn(max_n=max_n)
    if number in _CORPUS_CHECKS:
        return fn(max_n=max_n)
    return fn()


def run_suite(suite: str, max_n: int = 6, seed: int = 0) -> list[CheckResult]:
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}")
    return [run_check(n, max_n, seed) for n in SUITES[suite]]
