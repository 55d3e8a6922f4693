"""Metagraphs and node condensation.

    python demos/04_condensation.py
"""

import random

from gsx import Graph
from gsx.graph import mask_of, path, to_graph6
from gsx.lc import lc_equivalent, lc_walk
from gsx.metagraph import (build_metagraph, condensable, condense, condensed_move, metagraph_stabilizer,
                           metagraph_to_dot, neighborsets)

# Metagraph of the 8-node fixture for M = {1,2,4,6}: outside nodes are grouped by
# their neighbourhood inside M.
g = Graph(8, (118, 45, 27, 6, 165, 83, 33, 16))
mg = build_metagraph(g, 43)
print("connected type-2 labels:", mg.connected_labels)
print("stabilizer from the metagraph:", ", ".join(str(p) for p in metagraph_stabilizer(mg)))
print(metagraph_to_dot(mg))

# Condensing a set with d_C = |C| - 1 commutes with local complementation.
h = path(6)
c = mask_of([0, 1])
print("rule for {1,2} on path_6:", condensable(h, c).tag)
print("neighborsets:", {bin(b): bin(v) for b, v in neighborsets(h, c).entries.items() if v})
small = condense(h, c).graph
print("condensed:", small, to_graph6(small))

rng = random.Random(4)
moves = [rng.randrange(h.n) for _ in range(15)]
moved = lc_walk(h, moves)
print("condensed graphs still LC-equivalent after a walk:", lc_equivalent(small, condense(moved, c).graph))
# Node j of the original graph maps to this node of the condensed graph (1-based; None = no move).
moves = {j + 1: condensed_move(h, c, j) for j in range(h.n)}
print("matching LC moves:", {j: None if k is None else k + 1 for j, k in moves.items()})
