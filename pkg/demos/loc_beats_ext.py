"""Search for a 3-connected graph with four 4-blocks where Loc beats Ext.

Replays the seeded search behind the stored fixture and shows the two
decompositions side by side.
"""

from canontree import classify_parts, decomposition_from_nested, k_blocks
from canontree.generators import LOC_SEARCH_LIMIT, LOC_SEARCH_SEED, search_loc_beats_ext
from canontree.profiles import block_profile
from canontree.separations import enumerate_separations
from canontree.strategies import run_iterated

hit = search_loc_beats_ext(LOC_SEARCH_SEED, LOC_SEARCH_LIMIT)
if hit is None:
    raise SystemExit("search space exhausted without a hit")
index, G = hit
print(f"candidate {index}: {G.n} vertices, {G.m} edges")

k = 4
seps = enumerate_separations(G, k)
profiles = [block_profile(X, seps) for X in k_blocks(G, k)]
print("blocks:", k_blocks(G, k))

for kind in ("ext", "loc"):
    run = run_iterated(G, k, kind, profiles, system=seps)
    td = decomposition_from_nested(G, run.chosen)
    labels = classify_parts(td, profiles)
    print(f"\n{kind}: |N| = {run.size}")
    for t in range(td.size):
        print(f"  {td.part(t)}  {', '.join(labels[t])}")
