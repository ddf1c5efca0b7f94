"""Walk-number spectra: how a graph's walks become frequencies.

Every vertex l of an n-vertex graph gets the number n^l. A walk visiting n
vertices gets the sum of its visit numbers; walks sharing a visit multiset
share that sum, and base-n positional uniqueness keeps different multisets
apart. The n-vertex paths all share one special value: the sum of all
vertex-numbers. Counting them is then reading one multiplicity off the
spectrum.
"""

from hamspec.graph import Graph, hamiltonian_frequency, vertex_numbers
from hamspec.walk_oracle import (
    check_visit_pair_uniqueness,
    count_hamiltonian_paths,
    enumerate_n_walks,
    walk_spectrum,
)

FOUR_CLUSTER = Graph(4, [(1, 2), (1, 3), (2, 3), (1, 4), (4, 3)])

print("vertex numbers for n=4:", vertex_numbers(4))
print("shared path frequency a_h =", hamiltonian_frequency(FOUR_CLUSTER))
print()

walks = list(enumerate_n_walks(FOUR_CLUSTER))
print(f"the 4-vertex cluster has {len(walks)} four-visit walks; the first few:")
for w in walks[:6]:
    nums = vertex_numbers(4)
    print("  ", w, "-> walk number", sum(nums[v - 1] for v in w))
print()

spectrum = walk_spectrum(FOUR_CLUSTER)
print("spectrum (walk number -> multiplicity):")
for wn in sorted(spectrum):
    marker = "   <-- the path frequency" if wn == 340 else ""
    print(f"  {wn:5d}: {spectrum[wn]:3d}{marker}")
print()

directed = count_hamiltonian_paths(FOUR_CLUSTER)
print("directed path count by permutation scan:", directed)
print("spectrum multiplicity at a_h:           ", spectrum[340])
print("undirected paths:", directed // 2)
print()

ok, _ = check_visit_pair_uniqueness(FOUR_CLUSTER)
print("no two distinct visit multisets collide on a walk number:", ok)
