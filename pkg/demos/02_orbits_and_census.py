"""LC orbits, entanglement classes and the exhaustive census up to seven qubits.

    python demos/02_orbits_and_census.py
"""

import itertools
import time

from gsx.graph import line, path, star, to_graph6
from gsx.lc import census, lc_orbit, partition_orbits, unlabeled_orbit

# GHZ states: the star orbit has n + 1 members (every star plus the complete graph).
for n in (4, 7):
    print(f"star_{n}: labeled LC orbit of size {len(lc_orbit(star(n)))}")

# The 12 labeled four-node lines fall into three LC orbits of 11 graphs each.
lines = [line(p) for p in itertools.permutations(range(1, 5)) if p[0] < p[-1]]
family = set().union(*(lc_orbit(g) for g in lines))
parts = partition_orbits(sorted(family, key=lambda g: g.adj))
print(f"{len(lines)} lines -> {len(family)} graphs in {parts.orbit_count} labeled orbits")
print(f"up to relabeling the path has {len(unlabeled_orbit(path(4)))} graphs in its orbit")

# Census of all connected labeled graphs.
for n in range(2, 8):
    t0 = time.time()
    c = census(n)
    sizes = c.orbit_sizes()
    print(f"n={n}: {len(c.codes)} graphs, {c.num_orbits} LC orbits, {c.num_classes} classes, "
          f"largest orbit {sizes.max()} ({time.time() - t0:.1f}s)")

c = census(7)
print("n=7 class representatives:", " ".join(to_graph6(g) for g in c.class_representatives()))
