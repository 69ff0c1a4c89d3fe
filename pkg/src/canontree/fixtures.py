"""Frozen example graphs shipped with the package.

Each fixture is an edge-list file plus an entry in ``manifest.json`` holding
the parameter k it is meant for, its named vertex sets and how it was made.
``build_fixtures`` regenerates everything from the generators and searches;
the tests check that the stored files still match.
"""

from __future__ import annotations

import json
from importlib import resources
from pathlib import Path

from .generators import (
    LOC_SEARCH_LIMIT,
    LOC_SEARCH_SEED,
    Construction,
    gen_cycle_cliques,
    gen_example3_like,
    gen_example4,
    gen_glued_k5,
    gen_path_cliques,
    search_loc_beats_ext,
)
from .graph import parse_graph
from .profiles import k_blocks

MANIFEST = "manifest.json"


def _loc_beats_ext() -> tuple[Construction, dict]:
    hit = search_loc_beats_ext()
    if hit is None:
        raise LookupError("Loc-beats-Ext search found nothing")
    index, G = hit
    sets = {f"B{i + 1}": list(X) for i, X in enumerate(k_blocks(G, 4))}
    params = {"seed": LOC_SEARCH_SEED, "limit": LOC_SEARCH_LIMIT, "candidate": index}
    return Construction(G, sets, params), {"source": "search_loc_beats_ext"}


def fixture_specs() -> dict[str, tuple[int, Construction, dict]]:
    """name -> (k, construction, provenance)."""
    specs = {
        "cycle_cliques_5_5": (3, gen_cycle_cliques(5, 5), {"source": "gen_cycle_cliques"}),
        "cycle_cliques_3_4": (3, gen_cycle_cliques(3, 4), {"source": "gen_cycle_cliques"}),
        "path_cliques_4_5": (3, gen_path_cliques(4, 5), {"source": "gen_path_cliques"}),
        "path_cliques_2_5": (3, gen_path_cliques(2, 5), {"source": "gen_path_cliques"}),
        "example4": (4, gen_example4(), {"source": "gen_example4"}),
        "glued_k5_3": (2, gen_glued_k5(3), {"source": "gen_glued_k5"}),
        "example3_pairs1": (5, gen_example3_like(1), {"source": "gen_example3_like"}),
        "example3_pairs3": (5, gen_example3_like(3), {"source": "gen_example3_like"}),
    }
    c, prov = _loc_beats_ext()
    specs["loc_beats_ext"] = (4, c, prov)
    return specs


def build_fixtures(directory: str | Path) -> dict:
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    manifest = {}
    for name, (k, c, prov) in sorted(fixture_specs().items()):
        filename = f"{name}.txt"
        (directory / filename).write_text(c.graph.to_edge_list())
        manifest[name] = {"file": filename, "k": k, "sets": c.sets, "params": c.params, **prov}
    (directory / MANIFEST).write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n")
    return manifest


def _root():
    return resources.files("canontree") / "fixtures"


def manifest() -> dict:
    return json.loads((_root() / MANIFEST).read_text())


def fixture_names() -> list[str]:
    return sorted(manifest())


def load_fixture(name: str) -> tuple[int, Construction]:
    entry = manifest()[name]
    G = parse_graph((_root() / entry["file"]).read_text(), strict=True)
    return entry["k"], Construction(G, entry["sets"], entry["params"])


if __name__ == "__main__":
    import sys

    build_fixtures(sys.argv[1] if len(sys.argv) > 1 else Path(__file__).parent / "fixtures")
