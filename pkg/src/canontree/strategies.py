"""The Ext and Loc strategies and their iterated versions.

A task is a separation system together with a set of profiles orienting
it. Solving a task means choosing a nested subsystem that distinguishes
all its profiles; Ext and Loc do so recursively, choosing at each step the
extremal or the locally maximal separations of the reduced task.

Part of the original algorithm's correctness rests on a feasibility
property of tasks that is only guaranteed in favourable situations. Here it
is enforced at runtime: whenever a step would produce crossing separations
or cannot make progress, :class:`InfeasibleTask` is raised.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterable, Literal, Sequence

from .graph import Graph, is_l_connected
from .profiles import orientation_key
from .separations import (
    Separation,
    enumerate_separations,
    inversion_closure,
    is_nested_system,
    leq,
    nested,
    sorted_system,
)

Kind = Literal["ext", "loc"]


class InfeasibleTask(RuntimeError):
    """A task fell outside the feasibility guarantee of the strategies."""

    def __init__(self, reason: str, crossing: tuple[Separation, Separation] | None = None, path: tuple = ()):
        detail = reason
        if crossing is not None:
            detail += f": {crossing[0]!r} crosses {crossing[1]!r}"
        if path:
            detail += f" (at {'/'.join(map(str, path))})"
        super().__init__(detail)
        self.reason = reason
        self.crossing = crossing
        self.path = path


@dataclass(frozen=True)
class Task:
    S: frozenset
    profiles: tuple
    context: frozenset = frozenset()

    @classmethod
    def make(cls, S: Iterable[Separation], profiles: Iterable[Iterable[Separation]], context=()) -> "Task":
        S = frozenset(S)
        profs = sorted({frozenset(P) & S for P in profiles}, key=orientation_key)
        return cls(S, tuple(profs), frozenset(context))


def distinguishes(s: Separation, profiles: Sequence[frozenset]) -> bool:
    inv = s.inverse()
    return any(s in P for P in profiles) and any(inv in P for P in profiles)


def reduce_task(t: Task) -> Task:
    """Drop every separation that does not distinguish two of the task's profiles."""
    kept = frozenset(s for s in t.S if distinguishes(s, t.profiles))
    return Task(kept, t.profiles, t.context)


def maximal_elements(S: Iterable[Separation]) -> list[Separation]:
    items = sorted_system(S)
    return [s for s in items if not any(t != s and leq(s, t) for t in items)]


def _crossing(seps: Iterable[Separation]) -> tuple[Separation, Separation] | None:
    return is_nested_system(seps)


def extremal_separations(t: Task) -> tuple[frozenset, dict[Separation, frozenset]]:
    """Maximal separations of a reduced task that lie in exactly one profile.

    Returns the inversion closure of these separations and, for each, the
    unique profile containing it.
    """
    owners: dict[Separation, frozenset] = {}
    for s in maximal_elements(t.S):
        holders = [P for P in t.profiles if s in P]
        if len(holders) == 1:
            owners[s] = holders[0]
    crossing = _crossing(owners)
    if crossing is not None:
        raise InfeasibleTask("extremal separations cross", crossing)
    if not owners and len(t.profiles) > 1 and t.S:
        raise InfeasibleTask("reduced task has no extremal separation")
    return inversion_closure(owners), owners


def profile_maxima(P: frozenset, S: Iterable[Separation]) -> list[Separation]:
    return maximal_elements(s for s in S if s in P)


def locally_maximal_separations(t: Task) -> frozenset:
    """Maxima of ``P ∩ S`` for every profile P of the task whose maxima are nested."""
    chosen: set[Separation] = set()
    for P in t.profiles:
        maxima = profile_maxima(P, t.S)
        if _crossing(maxima) is None:
            chosen.update(maxima)
    crossing = _crossing(chosen)
    if crossing is not None:
        raise InfeasibleTask("locally maximal separations cross", crossing)
    if not chosen and len(t.profiles) > 1 and t.S:
        raise InfeasibleTask("no profile of the reduced task is well separated")
    return inversion_closure(chosen)


def splits(O: Iterable[Separation], s: Separation) -> bool:
    """Both ``O + s`` and ``O + s^-1`` are consistent."""
    for t in O:
        if leq(t.inverse(), s) or leq(s, t):
            return False
    return True


@dataclass
class TaskTrace:
    path: tuple
    profiles: int
    chosen: int


def run_single(t: Task, kind: Kind, path: tuple = (), trace: list | None = None) -> frozenset:
    """Solve one task by recursing into the classes of the chosen separations."""
    if kind not in ("ext", "loc"):
        raise ValueError(f"unknown strategy {kind!r}")
    result = _solve(t, kind, path, trace if trace is not None else [])
    crossing = _crossing(result)
    if crossing is not None:
        raise InfeasibleTask("chosen separations cross", crossing, path)
    return result


def _solve(t: Task, kind: Kind, path: tuple, trace: list) -> frozenset:
    if len(t.profiles) <= 1:
        return frozenset()
    r = reduce_task(t)
    if not r.S:
        raise InfeasibleTask("separation system does not distinguish the profiles", path=path)
    try:
        if kind == "ext":
            chosen, _ = extremal_separations(r)
        else:
            chosen = locally_maximal_separations(r)
    except InfeasibleTask as exc:
        raise InfeasibleTask(exc.reason, exc.crossing, path) from None
    trace.append(TaskTrace(path, len(t.profiles), len(chosen)))

    classes: dict[frozenset, list] = defaultdict(list)
    for P in r.profiles:
        classes[P & chosen].append(P)
    result = set(chosen)
    rest = [s for s in r.S if s not in chosen and all(nested(s, c) for c in chosen)]
    for i, O in enumerate(sorted(classes, key=orientation_key)):
        members = classes[O]
        if len(members) < 2:
            continue
        sub = Task(frozenset(s for s in rest if splits(O, s)), tuple(members), t.context | chosen)
        result |= _solve(sub, kind, path + (i,), trace)
    return frozenset(result)


@dataclass
class StrategyRun:
    kind: str
    k: int
    graph: Graph
    chosen: frozenset
    profiles: list
    per_level: list = field(default_factory=list)
    child_counts: list = field(default_factory=list)
    tasks: list = field(default_factory=list)

    @property
    def p(self) -> int:
        return len(self.profiles)

    @property
    def size(self) -> int:
        return len(self.chosen)

    def system(self) -> list[Separation]:
        return sorted_system(self.chosen)

    def to_json(self) -> dict:
        return {
            "strategy": self.kind,
            "k": self.k,
            "p": self.p,
            "chosen": [s.to_json() for s in self.system()],
            "levels": self.per_level,
        }


def run_iterated(
    G: Graph,
    k: int,
    kind: Kind,
    profiles: Sequence[Iterable[Separation]],
    system: Sequence[Separation] | None = None,
) -> StrategyRun:
    """Run Ext^k or Loc^k: one task per profile of order l - 1 with several extensions.

    ``system`` defaults to all proper separations of order < k; profiles are
    restricted to it.
    """
    if not profiles:
        raise ValueError("need at least one profile")
    seps = list(system) if system is not None else enumerate_separations(G, k)
    universe = frozenset(seps)
    profs = sorted({frozenset(P) & universe for P in profiles}, key=orientation_key)

    def level(P: frozenset, l: int) -> frozenset:
        return frozenset(s for s in P if s.order < l)

    N: set[Separation] = set()
    run = StrategyRun(kind, k, G, frozenset(), profs)
    for l in range(1, k + 1):
        before = frozenset(N)
        families: dict[frozenset, set] = defaultdict(set)
        for P in profs:
            families[level(P, l - 1)].add(level(P, l))
        solved = 0
        added = 0
        for parent in sorted(families, key=orientation_key):
            children = sorted(families[parent], key=orientation_key)
            run.child_counts.append(len(children))
            if len(children) < 2:
                continue
            O = parent & before
            S_l = frozenset(
                s for s in seps
                if s.order == l - 1 and all(nested(s, c) for c in before) and splits(O, s)
            )
            trace: list = []
            chosen = run_single(Task(S_l, tuple(children), before), kind, (f"l{l}",), trace)
            run.tasks.append({"level": l, "profiles": len(children), "chosen": len(chosen)})
            solved += 1
            added += len(chosen - N)
            N |= chosen
        run.per_level.append({"level": l, "tasks": solved, "added": added})
    crossing = _crossing(N)
    if crossing is not None:
        raise InfeasibleTask("separations chosen at different levels cross", crossing)
    run.chosen = frozenset(N)
    for i, P in enumerate(profs):
        for Q in profs[i + 1:]:
            if not any(s in P and s.inverse() in Q for s in N):
                raise InfeasibleTask("chosen system fails to distinguish two profiles")
    return run


def bound_report(run: StrategyRun) -> dict:
    """Part counts and the applicable size bounds for a finished run."""
    p, size = run.p, run.size
    nodes = size // 2 + 1
    connected = is_l_connected(run.graph, run.k - 1)
    internal = sum(1 for c in run.child_counts if c >= 2)
    report = {
        "strategy": run.kind,
        "k": run.k,
        "p": p,
        "N": size,
        "nodes": nodes,
        "inessential": nodes - p,
        "internal_branchings": internal,
        "k_minus_1_connected": connected,
        "single_task": len(run.tasks) <= 1,
        "checks": {},
    }
    checks = report["checks"]
    checks["lower 2(p-1) <= |N|"] = 2 * (p - 1) <= size
    checks["upper |N| <= 4(p-1)"] = size <= 4 * (p - 1) if p >= 1 else size == 0
    if run.kind == "ext":
        checks["tree bound |N| <= 2(p+i-1)"] = size <= 2 * (p + internal - 1) if p >= 1 else True
        if connected:
            checks["(k-1)-connected |N| <= 2p"] = size <= 2 * p
    if connected and report["single_task"]:
        if run.kind == "ext":
            checks["single task |N_Ext| <= 2p"] = size <= 2 * p
        else:
            checks["single task |N_Loc| <= 4(p-1)"] = size <= 4 * (p - 1)
    report["ok"] = all(checks.values())
    return report


def is_canonical(chosen: Iterable[Separation], autos: Iterable[Sequence[int]]) -> bool:
    chosen = frozenset(chosen)
    return all(frozenset(s.permuted(perm) for s in chosen) == chosen for perm in autos)
