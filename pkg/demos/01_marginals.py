"""Marginal dimensions and reduced stabilizers of a small graph state.

    python demos/01_marginals.py
"""

from gsx import Graph, marginal_dimension, reduced_stabilizer
from gsx.graph import cycle, mask_of, star
from gsx.stabilizer import ell_value, entanglement_entropy, generator, stab_element

# Six-qubit ring. Node labels are 0-based here; printed sets are 1-based.
g = cycle(6)
print(g)
for i in range(g.n):
    print(f"  g_{i + 1} = {generator(g, i)}")

# Product of two generators: the phase is tracked exactly.
print("g_2 g_6 =", stab_element(g, mask_of([1, 5])))

# d_M is |M| minus the rank of the cut block of the adjacency matrix.
for nodes in ([0], [0, 1], [0, 2], [0, 1, 2], [0, 2, 4]):
    m = mask_of(nodes)
    rs = reduced_stabilizer(g, m)
    label = "{" + ",".join(str(v + 1) for v in nodes) + "}"
    print(f"M={label:9} d_M={marginal_dimension(g, m)} E_M={entanglement_entropy(g, m)} "
          f"S_M has {len(rs)} elements: {', '.join(str(p) for p in rs)}")

# A marginal with ell = 2: stabilizer elements not generated from smaller marginals.
fixture = Graph(8, (118, 45, 27, 6, 165, 83, 33, 16))
m = 43
print("ell({1,2,4,6}) on the 8-node fixture:", ell_value(fixture, m))

# The complement identity d_{V-M} = d_M + n - 2|M|.
ghz = star(5)
m = mask_of([1, 2])
print("star_5:", marginal_dimension(ghz, m), marginal_dimension(ghz, ghz.full_mask & ~m))
