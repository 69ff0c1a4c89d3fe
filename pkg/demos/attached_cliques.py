"""A clique K with three cliques attached along overlapping separators.

K is a part of the canonical decomposition, but it is not well separated:
the maximal separations in its profile cross. The refinement still makes
every block-containing part a block.
"""

from canontree import gen_example4, is_well_separated, refine_theorem31
from canontree.refinement import condition7, separations_SX

k = 4
c = gen_example4(k)
G = c.graph
for name in ("K", "K1", "K2", "K12"):
    print(f"{name:>3}: {c.sets[name]}")

ok, crossing = is_well_separated(G, k, c.sets["K"])
print(f"\nK well separated: {ok}")
if crossing:
    for s in crossing:
        print(f"  crossing maximal separation {s}")
print(f"every member of S(K) has order < k: {condition7(G, k, c.sets['K'])}")
print(f"S(K) = {list(separations_SX(G, c.sets['K']).members)}")

r = refine_theorem31(G, k, max_n=G.n)
td = r.decomposition
print(f"\nrefined decomposition, {td.size} parts:")
for t in range(td.size):
    print(f"  {td.part(t)}  degree {td.degree(t)}")
for claim, verdict in r.verdicts.items():
    print(f"  {claim}: {verdict}")
