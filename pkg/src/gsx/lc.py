"""Local complementation, LC orbits and orbit/class partitions."""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

import numpy as np

from .graph import Graph, bits, canonical_form, is_connected

DEFAULT_CAP = 10**7


class OrbitOverflow(RuntimeError):
    """An orbit grew past the configured cap."""


def local_complement(g: Graph, i: int) -> Graph:
    """Toggle every edge between two distinct neighbors of ``i``."""
    if not 0 <= i < g.n:
        raise IndexError(f"node {i} out of range for n={g.n}")
    nb = g.adj[i]
    adj = list(g.adj)
    for j in bits(nb):
        adj[j] ^= nb & ~(1 << j)
    return Graph._trusted(g.n, tuple(adj))


def _lc_adj(adj: tuple, i: int) -> tuple:
    nb = adj[i]
    if not nb & (nb - 1):
        return adj  # fewer than two neighbors: nothing to toggle
    out = list(adj)
    for j in bits(nb):
        out[j] ^= nb & ~(1 << j)
    return tuple(out)


def lc_walk(g: Graph, moves: Iterable[int]) -> Graph:
    adj = g.adj
    for i in moves:
        adj = _lc_adj(adj, i)
    return Graph._trusted(g.n, adj)


def lc_orbit(g: Graph, cap: int = DEFAULT_CAP) -> set:
    """All labeled graphs reachable from ``g`` by local complementations."""
    n = g.n
    seen = {g.adj}
    queue = deque([g.adj])
    while queue:
        adj = queue.popleft()
        for i in range(n):
            nxt = _lc_adj(adj, i)
            if nxt not in seen:
                seen.add(nxt)
                if len(seen) > cap:
                    raise OrbitOverflow(f"orbit exceeds cap of {cap} graphs")
                queue.append(nxt)
    return {Graph._trusted(n, a) for a in seen}


def lc_equivalent(g1: Graph, g2: Graph, cap: int = DEFAULT_CAP) -> bool:
    """Labeled LC-equivalence by bidirectional breadth-first search."""
    if g1.n != g2.n:
        raise ValueError("graphs have different node counts")
    if g1.adj == g2.adj:
        return True
    n = g1.n
    sides = [{g1.adj}, {g2.adj}]
    fronts = [[g1.adj], [g2.adj]]
    while fronts[0] and fronts[1]:
        s = 0 if len(fronts[0]) <= len(fronts[1]) else 1
        mine, other = sides[s], sides[1 - s]
        nxt = []
        for adj in fronts[s]:
            for i in range(n):
                a = _lc_adj(adj, i)
                if a in other:
                    return True
                if a not in mine:
                    mine.add(a)
                    nxt.append(a)
        if len(sides[0]) + len(sides[1]) > cap:
            raise OrbitOverflow(f"search exceeds cap of {cap} graphs")
        fronts[s] = nxt
    return False


def unlabeled_orbit(g: Graph, cap: int = DEFAULT_CAP) -> set:
    """Canonical forms of every graph in the entanglement class of ``g``."""
    n = g.n
    start = canonical_form(g).graph.adj
    seen = {start}
    queue = deque([start])
    while queue:
        adj = queue.popleft()
        for i in range(n):
            nxt = _lc_adj(adj, i)
            if nxt is adj:
                continue
            key = canonical_form(Graph._trusted(n, nxt)).graph.adj
            if key not in seen:
                seen.add(key)
                if len(seen) > cap:
                    raise OrbitOverflow(f"orbit exceeds cap of {cap} graphs")
                queue.append(key)
    return {Graph._trusted(n, a) for a in seen}


def class_equivalent(g1: Graph, g2: Graph, cap: int = DEFAULT_CAP) -> bool:
    """True iff some relabeling of ``g1`` is LC-equivalent to ``g2``."""
    if g1.n != g2.n:
        raise ValueError("graphs have different node counts")
    target = canonical_form(g2).graph.adj
    n = g1.n
    start = canonical_form(g1).graph.adj
    if start == target:
        return True
    seen = {start}
    queue = deque([start])
    while queue:
        adj = queue.popleft()
        for i in range(n):
            key = canonical_form(Graph._trusted(n, _lc_adj(adj, i))).graph.adj
            if key == target:
                return True
            if key not in seen:
                seen.add(key)
                if len(seen) > cap:
                    raise OrbitOverflow(f"orbit exceeds cap of {cap} graphs")
                queue.append(key)
    return False


# -- partitions ---------------------------------------------------------------


class UnionFind:
    def __init__(self, size: int = 0):
        self.parent = list(range(size))
        self.rank = [0] * size

    def add(self) -> int:
        self.parent.append(len(self.parent))
        self.rank.append(0)
        return len(self.parent) - 1

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x: int, y: int) -> bool:
        x, y = self.find(x), self.find(y)
        if x == y:
            return False
        if self.rank[x] < self.rank[y]:
            x, y = y, x
        elif self.rank[x] == self.rank[y]:
            self.rank[x] += 1
        self.parent[y] = x
        return True

    def roots(self) -> set:
        return {self.find(x) for x in range(len(self.parent))}


@dataclass
class OrbitPartition:
    universe: list
    uf: UnionFind
    mode: str
    input_count: int = 0
    _groups: dict = field(default=None, repr=False)

    @property
    def orbit_count(self) -> int:
        return len(self.uf.roots())

    def find(self, idx: int) -> int:
        return self.uf.find(idx)

    def same(self, i: int, j: int) -> bool:
        return self.uf.find(i) == self.uf.find(j)

    def groups(self) -> list:
        """Universe indices grouped by orbit, ordered by smallest member."""
        out: dict = {}
        for idx in range(len(self.universe)):
            out.setdefault(self.uf.find(idx), []).append(idx)
        return sorted(out.values())

    def representatives(self) -> list:
        return [self.universe[grp[0]] for grp in self.groups()]


def partition_orbits(graphs: Sequence[Graph], mode: str = "labeled", cap: int = DEFAULT_CAP) -> OrbitPartition:
    """Union-find partition of ``graphs`` into LC orbits (labeled) or classes (unlabeled).

    LC neighbours missing from the list are appended to the universe so the
    partition is exact even for lists that are not closed under LC moves. In
    unlabeled mode graphs are identified by canonical form.
    """
    if mode not in ("labeled", "unlabeled"):
        raise ValueError(f"unknown mode {mode!r}")
    if not graphs:
        return OrbitPartition([], UnionFind(), mode)
    n = graphs[0].n
    if any(g.n != n for g in graphs):
        raise ValueError("all graphs must share the node count")

    if mode == "labeled":
        key = lambda adj: adj
    else:
        key = lambda adj: canonical_form(Graph._trusted(n, adj)).graph.adj

    uf = UnionFind()
    index: dict = {}
    universe: list = []
    queue = deque()

    def intern(adj):
        k = key(adj)
        idx = index.get(k)
        if idx is None:
            idx = uf.add()
            index[k] = idx
            universe.append(Graph._trusted(n, k))
            queue.append(idx)
            if len(universe) > cap:
                raise OrbitOverflow(f"partition universe exceeds cap of {cap} graphs")
        return idx

    for g in graphs:
        intern(g.adj)
    ninput = len(universe)
    while queue:
        idx = queue.popleft()
        adj = universe[idx].adj
        for i in range(n):
            uf.union(idx, intern(_lc_adj(adj, i)))
    return OrbitPartition(universe, uf, mode, ninput)


def enumerate_connected_graphs(n: int, limit: int = 7) -> Iterator[Graph]:
    """Every connected labeled graph on ``n`` nodes, ordered by edge code."""
    if n > limit:
        raise ValueError(f"exhaustive labeled enumeration is limited to n <= {limit}; supply a graph6 file")
    if n == 1:
        yield Graph.empty(1)
        return
    for code in range(1 << (n * (n - 1) // 2)):
        g = Graph.from_edge_code(n, code)
        if is_connected(g):
            yield g


def enumerate_unlabeled_connected(n: int) -> list:
    """Canonical representatives of connected graphs up to isomorphism.

    Built by attaching a new node to every smaller representative; a
    connected graph always has a node whose removal keeps it connected.
    """
    reps = [Graph.empty(1)]
    for m in range(2, n + 1):
        seen = {}
        for h in reps:
            for nb in range(1, 1 << (m - 1)):
                adj = list(h.adj) + [nb]
                for j in bits(nb):
                    adj[j] |= 1 << (m - 1)
                cf = canonical_form(Graph._trusted(m, tuple(adj))).graph
                seen.setdefault(cf.adj, cf)
        reps = [seen[k] for k in sorted(seen)]
    return reps


# -- exhaustive census (vectorized) -------------------------------------------


def _pair_index(i: int, j: int) -> int:
    if i > j:
        i, j = j, i
    return j * (j - 1) // 2 + i


def _lc_codes(codes: np.ndarray, n: int, i: int) -> np.ndarray:
    out = codes.copy()
    others = [v for v in range(n) if v != i]
    has = {v: (codes >> _pair_index(i, v)) & 1 for v in others}
    for j, k in itertools.combinations(others, 2):
        out ^= (has[j] & has[k]) << _pair_index(j, k)
    return out


def _swap_codes(codes: np.ndarray, n: int, a: int, b: int) -> np.ndarray:
    perm = list(range(n))
    perm[a], perm[b] = b, a
    out = np.zeros_like(codes)
    for j in range(1, n):
        for i in range(j):
            out |= ((codes >> _pair_index(i, j)) & 1) << _pair_index(perm[i], perm[j])
    return out


def _connected_codes(n: int) -> np.ndarray:
    npairs = n * (n - 1) // 2
    codes = np.arange(1 << npairs, dtype=np.int64)
    adj = []
    for v in range(n):
        m = np.zeros_like(codes)
        for u in range(n):
            if u != v:
                m |= ((codes >> _pair_index(u, v)) & 1) << u
        adj.append(m)
    reach = np.ones_like(codes)
    for _ in range(n - 1):
        nxt = reach.copy()
        for v in range(n):
            nxt |= np.where((reach >> v) & 1, adj[v], 0)
        reach = nxt
    return codes[reach == (1 << n) - 1]


def _components(neighbors: list) -> np.ndarray:
    """Connected components of an implicit graph given as neighbor index arrays."""
    size = len(neighbors[0]) if neighbors else 0
    labels = np.arange(size, dtype=np.int64)
    while True:
        old = labels
        for nb in neighbors:
            labels = np.minimum(labels, labels[nb])
            labels = np.minimum(labels, _scatter_min(labels, nb))
        while True:
            jumped = labels[labels]
            if np.array_equal(jumped, labels):
                break
            labels = jumped
        if np.array_equal(labels, old):
            return labels


def _scatter_min(labels: np.ndarray, nb: np.ndarray) -> np.ndarray:
    out = labels.copy()
    np.minimum.at(out, nb, labels)
    return out


@dataclass
class Census:
    """All connected labeled graphs on ``n`` nodes with orbit and class labels.

    ``orbit[k]`` and ``klass[k]`` are dense ids for the graph with edge code
    ``codes[k]``; ids are ordered by the smallest member code.
    """

    n: int
    codes: np.ndarray
    orbit: np.ndarray
    klass: np.ndarray

    @property
    def num_orbits(self) -> int:
        return int(self.orbit.max()) + 1

    @property
    def num_classes(self) -> int:
        return int(self.klass.max()) + 1

    def orbit_sizes(self) -> np.ndarray:
        return np.bincount(self.orbit)

    def class_sizes(self) -> np.ndarray:
        return np.bincount(self.klass)

    def graph(self, idx: int) -> Graph:
        return Graph.from_edge_code(self.n, int(self.codes[idx]))

    def orbit_representatives(self) -> list:
        first = _first_index(self.orbit)
        return [self.graph(k) for k in first]

    def class_representatives(self) -> list:
        first = _first_index(self.klass)
        return [self.graph(k) for k in first]

    def orbit_class(self) -> np.ndarray:
        """Class id of each orbit."""
        out = np.empty(self.num_orbits, dtype=np.int64)
        out[self.orbit] = self.klass
        return out

    def index_of(self, g: Graph) -> int:
        code = g.edge_code()
        k = int(np.searchsorted(self.codes, code))
        if k >= len(self.codes) or self.codes[k] != code:
            raise KeyError("graph is not a connected graph of this census")
        return k


def _first_index(labels: np.ndarray) -> np.ndarray:
    _, first = np.unique(labels, return_index=True)
    return first


def _dense(labels: np.ndarray) -> np.ndarray:
    _, inv = np.unique(labels, return_inverse=True)
    return inv.astype(np.int64)


def census(n: int, limit: int = 7) -> Census:
    """Exhaustive orbit/class census of connected labeled graphs (``n <= 7``)."""
    if n > limit:
        raise ValueError(f"exhaustive census is limited to n <= {limit}")
    codes = _connected_codes(n)
    if n == 1:
        zero = np.zeros(1, dtype=np.int64)
        return Census(1, codes, zero, zero.copy())
    lc_nb = [np.searchsorted(codes, _lc_codes(codes, n, i)) for i in range(n)]
    orbit = _dense(_components(lc_nb))
    sw_nb = [np.searchsorted(codes, _swap_codes(codes, n, a, a + 1)) for a in range(n - 1)]
    klass = _dense(_components(lc_nb + sw_nb))
    return Census(n, codes, orbit, klass)
