"""Ext versus Loc on four cliques threaded on a path.

Loc cuts every clique off separately and leaves the short connecting paths
as inessential parts; Ext is allowed to lump a path in with a clique.
"""

from canontree import (
    block_profile,
    bound_report,
    classify_parts,
    decomposition_from_nested,
    enumerate_separations,
    gen_path_cliques,
    k_blocks,
    run_iterated,
)

k = 3
c = gen_path_cliques(4, 5)
G = c.graph
print(f"{G.n} vertices, {G.m} edges")

seps = enumerate_separations(G, k, max_n=G.n)
blocks = k_blocks(G, k)
profiles = [block_profile(X, seps) for X in blocks]
print(f"{len(seps) // 2} separation pairs of order < {k}, {len(blocks)} blocks")

for kind in ("ext", "loc"):
    run = run_iterated(G, k, kind, profiles, system=seps)
    td = decomposition_from_nested(G, run.chosen)
    labels = classify_parts(td, profiles)
    report = bound_report(run)
    print(f"\n{kind}: |N| = {run.size}, {td.size} parts, {report['inessential']} inessential")
    for t in range(td.size):
        print(f"  {td.part(t)}  {', '.join(labels[t])}")

# Loc reaches the upper bound 4(p-1) = 12 here.
