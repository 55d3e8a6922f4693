"""Metagraphs, neighborsets and graph condensation.

A metagraph of ``M`` keeps the induced graph on ``M`` and records, for every
non-empty ``M' <= M``, whether some outside node sees exactly ``M'`` inside
``M``. That record is all the reduced stabilizer depends on.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import NamedTuple, Sequence

from .gf2 import Gf2Matrix, kernel_basis, span
from .graph import Graph, bits, popcount
from .stabilizer import PauliString, ReducedStabilizer, _dim_unchecked

METAGRAPH_LIMIT = 12


@dataclass(frozen=True)
class Metagraph:
    n: int
    m: int
    type2: tuple  # (label mask, connected) for every non-empty label, ascending
    inner_edges: tuple  # (i, j) with i < j, both in m

    @property
    def connected_labels(self) -> tuple:
        return tuple(label for label, conn in self.type2 if conn)

    def inner_adj(self, i: int) -> int:
        out = 0
        for a, b in self.inner_edges:
            if a == i:
                out |= 1 << b
            elif b == i:
                out |= 1 << a
        return out


def build_metagraph(g: Graph, m: int, limit: int = METAGRAPH_LIMIT) -> Metagraph:
    if m == 0 or m & ~g.full_mask or m == g.full_mask:
        raise ValueError("need a non-empty proper subset of the nodes")
    if popcount(m) > limit:
        raise ValueError(f"|M|={popcount(m)} exceeds the metagraph limit {limit}")
    seen = {g.adj[v] & m for v in bits(g.full_mask & ~m)}
    seen.discard(0)
    labels = [sum(1 << v for v in combo) for k in range(1, popcount(m) + 1) for combo in itertools.combinations(bits(m), k)]
    type2 = tuple((lab, lab in seen) for lab in labels)
    inner = tuple((i, j) for i in bits(m) for j in bits(g.adj[i] & m) if i < j)
    return Metagraph(g.n, m, type2, inner)


def metagraph_stabilizer(mg: Metagraph, limit: int = 20) -> ReducedStabilizer:
    """Reduced stabilizer read off the metagraph: ``g_L`` survives iff ``L`` meets every connected label evenly."""
    if popcount(mg.m) > limit:
        raise ValueError(f"|M|={popcount(mg.m)} exceeds limit {limit}")
    cols = list(bits(mg.m))
    pos = {v: k for k, v in enumerate(cols)}

    def compress(mask):
        return sum(1 << pos[v] for v in bits(mask))

    rows = tuple(compress(lab) for lab in mg.connected_labels)
    basis = kernel_basis(Gf2Matrix(rows, len(cols)))
    adj = {v: mg.inner_adj(v) for v in cols}
    elements, gens = [], []
    for x in sorted(span(basis)):
        L = sum(1 << cols[k] for k in bits(x))
        z = 0
        inner = 0
        for i in bits(L):
            z ^= adj[i]
            inner += popcount(adj[i] & L)
        elements.append(PauliString(mg.n, L, z, inner - popcount(z & L)))
        gens.append(L)
    return ReducedStabilizer(mg.m, tuple(elements), len(basis), tuple(gens))


def metagraph_dimension(g: Graph, m: int) -> int:
    """``d_M`` as the number of independent even-parity constraints left by the connected labels."""
    if m == g.full_mask:
        return g.n
    mg = build_metagraph(g, m, limit=20)
    pos = {v: k for k, v in enumerate(bits(m))}
    rows = tuple(sum(1 << pos[v] for v in bits(lab)) for lab in mg.connected_labels)
    return len(kernel_basis(Gf2Matrix(rows, popcount(m))))


# -- neighborsets and condensation -------------------------------------------


@dataclass(frozen=True)
class NeighborsetMap:
    c: int
    entries: dict  # non-empty B <= c -> outside nodes whose neighbourhood in c is exactly B

    @property
    def nonempty(self) -> int:
        return sum(1 for v in self.entries.values() if v)

    def __getitem__(self, b: int) -> int:
        return self.entries.get(b, 0)


def neighborsets(g: Graph, c: int) -> NeighborsetMap:
    if c == 0 or c & ~g.full_mask or c == g.full_mask:
        raise ValueError("need a non-empty proper subset of the nodes")
    entries: dict = {}
    for v in bits(g.full_mask & ~c):
        b = g.adj[v] & c
        if b:
            entries[b] = entries.get(b, 0) | (1 << v)
    return NeighborsetMap(c, entries)


class Condensed(NamedTuple):
    graph: Graph
    index_map: tuple  # original node -> node of the condensed graph


def condense(g: Graph, c: int) -> Condensed:
    """Merge ``c`` into one node placed last; the remaining nodes keep their order."""
    if c == 0 or c & ~g.full_mask or c == g.full_mask:
        raise ValueError("need a non-empty proper subset of the nodes")
    keep = [v for v in range(g.n) if not c >> v & 1]
    new = len(keep)
    index = [new] * g.n
    for k, v in enumerate(keep):
        index[v] = k
    edges = [(index[i], index[j]) for i, j in g.edges() if not (c >> i & 1 or c >> j & 1)]
    edges += [(index[v], new) for v in keep if g.adj[v] & c]
    return Condensed(Graph.from_edges(new + 1, edges), tuple(index))


def condense_many(g: Graph, sets: Sequence[int]) -> Condensed:
    """Condense disjoint sets one after another, lowest minimum node first."""
    sets = [s for s in sets]
    union = 0
    for s in sets:
        if s == 0 or s & union:
            raise ValueError("condensation sets must be non-empty and disjoint")
        union |= s
    index = list(range(g.n))
    cur = g
    for s in sorted(sets, key=lambda s: (s & -s).bit_length()):
        image = 0
        for v in bits(s):
            image |= 1 << index[v]
        cur, step = condense(cur, image)
        index = [step[i] for i in index]
    return Condensed(cur, tuple(index))


@dataclass(frozen=True)
class CondensationRule:
    tag: str | None  # "DimCMinus1", "SingleExternalNeighbor" or None
    experimental: bool = False

    def __bool__(self) -> bool:
        return self.tag is not None


TWO_NODE_DIM1 = "TwoNodeDim1"
DIM_C_MINUS_1 = "DimCMinus1"
SINGLE_EXTERNAL = "SingleExternalNeighbor"


def condensable(g: Graph, c: int) -> CondensationRule:
    """Which LC-preserving condensation rule, if any, applies to ``c``.

    ``DimCMinus1`` (which covers the two-node, dimension-one case) is proven.
    ``SingleExternalNeighbor`` is conjectural and always marked experimental.
    """
    if c == 0 or c & ~g.full_mask or c == g.full_mask:
        raise ValueError("need a non-empty proper subset of the nodes")
    if _dim_unchecked(g.adj, c) == popcount(c) - 1:
        return CondensationRule(DIM_C_MINUS_1)
    outside = g.full_mask & ~c
    if all(popcount(g.adj[v] & outside) <= 1 for v in bits(c)):
        return CondensationRule(SINGLE_EXTERNAL, experimental=True)
    return CondensationRule(None)


def condensed_move(g: Graph, c: int, j: int) -> int | None:
    """The move on ``condense(g, c)`` matching ``LC_j`` on ``g`` when ``c`` has a single neighborset.

    Returns a node of the condensed graph, or ``None`` when ``LC_j`` leaves
    the condensed graph unchanged (``j`` inside ``c`` without outside
    neighbours).
    """
    ns = neighborsets(g, c)
    if ns.nonempty != 1:
        raise ValueError("condensation set does not have exactly one non-empty neighborset")
    (b,) = [b for b, v in ns.entries.items() if v]
    _, index = condense(g, c)
    if c >> j & 1:
        return index[j] if b >> j & 1 else None
    return index[j]


def marginal_orbit_signature(g: Graph, m: int) -> tuple:
    """Dimensions of ``m`` and of all its non-empty subsets, grouped by size from largest down.

    Each group is sorted in decreasing order so relabelings inside ``m`` do not matter.
    """
    size = popcount(m)
    if not 1 <= size <= 3:
        raise ValueError("marginal orbit signatures are only supported for 1 <= |m| <= 3")
    if m & ~g.full_mask:
        raise ValueError("marginal set has nodes outside the graph")
    out = []
    for k in range(size, 0, -1):
        ds = [_dim_unchecked(g.adj, sum(1 << v for v in combo)) if sum(1 << v for v in combo) != g.full_mask else g.n
              for combo in itertools.combinations(bits(m), k)]
        out.append(tuple(sorted(ds, reverse=True)))
    return tuple(out)


# -- DOT export --------------------------------------------------------------


def _label(mask: int) -> str:
    return ",".join(str(v + 1) for v in bits(mask))


def metagraph_to_dot(mg: Metagraph) -> str:
    lines = ["graph metagraph {"]
    for v in bits(mg.m):
        lines.append(f'  n{v + 1} [label="{v + 1}"];')
    for label, conn in mg.type2:
        style = "" if conn else ", style=dashed"
        lines.append(f'  t{label} [label="[{_label(label)}]", shape=box{style}];')
    for a, b in mg.inner_edges:
        lines.append(f"  n{a + 1} -- n{b + 1};")
    for label, conn in mg.type2:
        if conn:
            for v in bits(label):
                lines.append(f"  t{label} -- n{v + 1};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def graph_to_dot(g: Graph, labels: Sequence[str] | None = None, name: str = "G") -> str:
    labels = list(labels) if labels is not None else [str(v + 1) for v in range(g.n)]
    lines = [f"graph {name} {{"]
    lines += [f'  v{v} [label="{labels[v]}"];' for v in range(g.n)]
    lines += [f"  v{i} -- v{j};" for i, j in g.edges()]
    lines.append("}")
    return "\n".join(lines) + "\n"
