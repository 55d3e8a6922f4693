"""Labeled simple graphs on at most 32 nodes.

A graph is stored as one neighborhood bitmask per node; node sets are plain
``int`` bitmasks throughout the package. Nodes are 0-based here, the CLI
translates to and from 1-based labels.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

MAX_NODES = 32


class Graph6Error(ValueError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (byte offset {offset})")
        self.offset = offset


def bits(mask: int) -> Iterator[int]:
    """Indices of the set bits of ``mask``, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(nodes: Iterable[int]) -> int:
    m = 0
    for v in nodes:
        m |= 1 << v
    return m


def popcount(mask: int) -> int:
    return bin(mask).count("1")


@dataclass(frozen=True)
class Graph:
    n: int
    adj: tuple

    def __post_init__(self):
        if not 1 <= self.n <= MAX_NODES:
            raise ValueError(f"node count must be in 1..{MAX_NODES}, got {self.n}")
        adj = tuple(int(a) for a in self.adj)
        if len(adj) != self.n:
            raise ValueError("adjacency length does not match n")
        full = (1 << self.n) - 1
        for i, a in enumerate(adj):
            if a & ~full:
                raise ValueError(f"node {i} has a neighbor outside the graph")
            if (a >> i) & 1:
                raise ValueError(f"self-loop at node {i}")
            for j in bits(a):
                if not (adj[j] >> i) & 1:
                    raise ValueError(f"asymmetric edge ({i}, {j})")
        object.__setattr__(self, "adj", adj)

    # -- construction -------------------------------------------------------

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple]) -> "Graph":
        adj = [0] * n
        for i, j in edges:
            if i == j:
                raise ValueError(f"self-loop at node {i}")
            if not (0 <= i < n and 0 <= j < n):
                raise ValueError(f"edge ({i}, {j}) out of range for n={n}")
            adj[i] |= 1 << j
            adj[j] |= 1 << i
        return cls(n, tuple(adj))

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls(n, (0,) * n)

    @classmethod
    def _trusted(cls, n: int, adj: tuple) -> "Graph":
        # skips validation; only for adjacency produced by our own operations
        g = object.__new__(cls)
        object.__setattr__(g, "n", n)
        object.__setattr__(g, "adj", adj)
        return g

    @classmethod
    def from_edge_code(cls, n: int, code: int) -> "Graph":
        """Inverse of :meth:`edge_code`."""
        adj = [0] * n
        k = 0
        for j in range(1, n):
            for i in range(j):
                if (code >> k) & 1:
                    adj[i] |= 1 << j
                    adj[j] |= 1 << i
                k += 1
        return cls._trusted(n, tuple(adj))

    # -- views --------------------------------------------------------------

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def edges(self) -> list:
        return [(i, j) for i in range(self.n) for j in bits(self.adj[i]) if i < j]

    def num_edges(self) -> int:
        return sum(popcount(a) for a in self.adj) // 2

    def degrees(self) -> list:
        return [popcount(a) for a in self.adj]

    def has_edge(self, i: int, j: int) -> bool:
        return bool((self.adj[i] >> j) & 1)

    def edge_code(self) -> int:
        """Edge bits packed in graph6 order: pair (i, j), i < j, at bit j(j-1)/2 + i."""
        code = 0
        for j in range(1, self.n):
            row = self.adj[j] & ((1 << j) - 1)
            code |= row << (j * (j - 1) // 2)
        return code

    def to_lists(self) -> list:
        return [[(a >> j) & 1 for j in range(self.n)] for a in self.adj]

    def permute(self, perm: Sequence[int]) -> "Graph":
        """Relabel node ``v`` as ``perm[v]``."""
        adj = [0] * self.n
        for v in range(self.n):
            m = 0
            for u in bits(self.adj[v]):
                m |= 1 << perm[u]
            adj[perm[v]] = m
        return Graph._trusted(self.n, tuple(adj))

    def induced(self, nodes: Sequence[int]) -> "Graph":
        pos = {v: k for k, v in enumerate(nodes)}
        adj = []
        for v in nodes:
            adj.append(mask_of(pos[u] for u in bits(self.adj[v]) if u in pos))
        return Graph._trusted(len(nodes), tuple(adj))

    def __str__(self) -> str:
        return f"Graph(n={self.n}, edges={[(i + 1, j + 1) for i, j in self.edges()]})"


# -- neighborhoods and connectivity ------------------------------------------


def neighborhood(g: Graph, i: int) -> int:
    if not 0 <= i < g.n:
        raise IndexError(f"node {i} out of range for n={g.n}")
    return g.adj[i]


def set_neighborhood(g: Graph, m: int) -> int:
    """Nodes outside ``m`` adjacent to at least one node of ``m``."""
    out = 0
    for v in bits(m):
        out |= g.adj[v]
    return out & ~m


def component_of(g: Graph, start: int) -> int:
    seen = 1 << start
    frontier = 1 << start
    while frontier:
        nxt = 0
        for v in bits(frontier):
            nxt |= g.adj[v]
        frontier = nxt & ~seen
        seen |= frontier
    return seen


def is_connected(g: Graph) -> bool:
    return component_of(g, 0) == g.full_mask


def components(g: Graph) -> list:
    left = g.full_mask
    out = []
    while left:
        c = component_of(g, (left & -left).bit_length() - 1)
        out.append(c)
        left &= ~c
    return out


# -- graph6 -------------------------------------------------------------------


def to_graph6(g: Graph) -> str:
    if g.n > 62:
        raise ValueError("graph6 short header only covers n <= 62")
    out = [chr(g.n + 63)]
    acc = 0
    nbits = 0
    for j in range(1, g.n):
        for i in range(j):
            acc = (acc << 1) | ((g.adj[i] >> j) & 1)
            nbits += 1
            if nbits == 6:
                out.append(chr(acc + 63))
                acc = nbits = 0
    if nbits:
        out.append(chr((acc << (6 - nbits)) + 63))
    return "".join(out)


def parse_graph6(text: str) -> Graph:
    line = text.strip("\r\n")
    if line.startswith(">>graph6<<"):
        line = line[len(">>graph6<<"):]
    if not line:
        raise Graph6Error("empty input", 0)
    data = line.encode("ascii", errors="replace")
    head = data[0]
    if head == 126:
        raise Graph6Error(f"node counts above {MAX_NODES} are not supported", 0)
    if not 63 <= head < 126:
        raise Graph6Error(f"bad header byte {head!r}", 0)
    n = head - 63
    if n == 0:
        raise Graph6Error("graph with zero nodes", 0)
    if n > MAX_NODES:
        raise Graph6Error(f"node counts above {MAX_NODES} are not supported", 0)
    npairs = n * (n - 1) // 2
    nbytes = (npairs + 5) // 6
    body = data[1:]
    for k, b in enumerate(body[:nbytes]):
        if not 63 <= b <= 126:
            raise Graph6Error(f"bad data byte {b!r}", k + 1)
    if len(body) < nbytes:
        raise Graph6Error(f"truncated: need {nbytes} data bytes, got {len(body)}", len(data))
    if len(body) > nbytes:
        raise Graph6Error("trailing bytes after graph", nbytes + 1)
    adj = [0] * n
    k = 0
    for j in range(1, n):
        for i in range(j):
            byte = body[k // 6] - 63
            if (byte >> (5 - k % 6)) & 1:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
            k += 1
    if nbytes:
        pad = 6 * nbytes - npairs
        if (body[-1] - 63) & ((1 << pad) - 1):
            raise Graph6Error("nonzero padding bits", nbytes)
    return Graph(n, tuple(adj))


# -- edge lists ---------------------------------------------------------------


def parse_edge_list(text: str, n: int | None = None) -> Graph:
    """Parse 1-based ``i j`` lines; ``#`` starts a comment."""
    edges = []
    top = 0
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ValueError(f"line {lineno}: expected two node labels, got {raw!r}")
        try:
            i, j = int(parts[0]), int(parts[1])
        except ValueError:
            raise ValueError(f"line {lineno}: non-integer label in {raw!r}") from None
        if i < 1 or j < 1:
            raise ValueError(f"line {lineno}: labels are 1-based")
        edges.append((i - 1, j - 1))
        top = max(top, i, j)
    if n is None:
        n = top
    if n == 0:
        raise ValueError("edge list is empty and no node count was given")
    return Graph.from_edges(n, edges)


def to_edge_list(g: Graph) -> str:
    return "".join(f"{i + 1} {j + 1}\n" for i, j in g.edges())


# -- named fixtures -----------------------------------------------------------


def star(n: int, center: int = 0) -> Graph:
    return Graph.from_edges(n, [(center, v) for v in range(n) if v != center])


def path(n: int) -> Graph:
    return Graph.from_edges(n, [(v, v + 1) for v in range(n - 1)])


def cycle(n: int) -> Graph:
    if n < 3:
        raise ValueError("a cycle needs at least 3 nodes")
    return Graph.from_edges(n, [(v, (v + 1) % n) for v in range(n)])


def complete(n: int) -> Graph:
    return Graph.from_edges(n, [(i, j) for j in range(n) for i in range(j)])


def line(order: Sequence[int]) -> Graph:
    """Path visiting 1-based ``order``, e.g. ``line([1, 2, 4, 3])``."""
    return Graph.from_edges(len(order), [(a - 1, b - 1) for a, b in zip(order, order[1:])])


_FIXTURE = re.compile(r"^(star|path|cycle|complete)_(\d+)$")


def fixture(name: str) -> Graph:
    m = _FIXTURE.match(name)
    if not m:
        raise ValueError(f"unknown fixture {name!r}")
    kind, n = m.group(1), int(m.group(2))
    return {"star": star, "path": path, "cycle": cycle, "complete": complete}[kind](n)


# -- canonical labeling -------------------------------------------------------


@dataclass(frozen=True)
class CanonicalForm:
    graph: Graph
    perm: tuple  # input node -> canonical node


def _refine(nbrs: list, colors: list) -> list:
    # equitable refinement; cell order is decided by label-invariant keys only
    ncol = len(set(colors))
    while True:
        keys = [(colors[v], tuple(sorted(colors[u] for u in nbrs[v]))) for v in range(len(nbrs))]
        order = {k: r for r, k in enumerate(sorted(set(keys)))}
        new = [order[k] for k in keys]
        if len(order) == ncol:
            return new
        colors, ncol = new, len(order)


def _individualize(colors: list, v: int) -> list:
    raw = [2 * c + (0 if u == v else 1) for u, c in enumerate(colors)]
    order = {c: r for r, c in enumerate(sorted(set(raw)))}
    return [order[c] for c in raw]


def _orbit_reps(n: int, gens: list) -> list:
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a in gens:
        for v in range(n):
            ra, rb = find(v), find(a[v])
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
    return [find(v) for v in range(n)]


def canonical_form(g: Graph, limit: int = 12) -> CanonicalForm:
    """Canonical relabeling by refinement and automorphism-pruned backtracking.

    Two graphs are isomorphic exactly when their canonical graphs are equal.
    """
    n = g.n
    if n > limit:
        raise ValueError(f"canonical form limited to n <= {limit}, got n={n}")
    nbrs = [list(bits(a)) for a in g.adj]
    best: list = [None, None]
    autos: list = []

    def leaf(colors):
        cadj = [0] * n
        for v in range(n):
            m = 0
            for u in nbrs[v]:
                m |= 1 << colors[u]
            cadj[colors[v]] = m
        code = tuple(cadj)
        if best[0] is None or code > best[0]:
            best[0], best[1] = code, colors
        elif code == best[0]:
            inv = [0] * n
            for v, c in enumerate(best[1]):
                inv[c] = v
            autos.append(tuple(inv[colors[v]] for v in range(n)))

    def search(colors, prefix):
        if len(set(colors)) == n:
            leaf(colors)
            return
        sizes = {}
        for c in colors:
            sizes[c] = sizes.get(c, 0) + 1
        target = min(c for c, s in sizes.items() if s > 1)
        cell = [v for v in range(n) if colors[v] == target]
        done = []
        for v in cell:
            if done:
                stab = [a for a in autos if all(a[p] == p for p in prefix)]
                if stab:
                    rep = _orbit_reps(n, stab)
                    if any(rep[v] == rep[w] for w in done):
                        continue
            search(_refine(nbrs, _individualize(colors, v)), prefix + (v,))
            done.append(v)

    search(_refine(nbrs, [0] * n), ())
    return CanonicalForm(Graph._trusted(n, best[0]), tuple(best[1]))


def canonical_key(g: Graph) -> tuple:
    return canonical_form(g).graph.adj


def is_isomorphic(g1: Graph, g2: Graph) -> bool:
    return g1.n == g2.n and canonical_key(g1) == canonical_key(g2)
