"""Representative databases: one graph per LC orbit or entanglement class.

On disk a database is a plain graph6 file (one representative per line)
plus a JSON sidecar ``<file>.json`` holding the node count, mode, checksum
and provenance.
"""

from __future__ import annotations

import hashlib
import json
import logging
import time
from collections import deque
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Sequence

from .graph import Graph, bits, canonical_form, is_connected, parse_graph6, to_graph6
from .invariants import default_krange, signature
from .lc import _lc_adj, census, class_equivalent, lc_equivalent

log = logging.getLogger(__name__)

MODES = ("labeled", "unlabeled")


class IntegrityError(ValueError):
    """A database file is corrupt or lists two equivalent representatives."""


@dataclass
class RepresentativeDb:
    n: int
    mode: str
    reps: list  # graph6 lines
    provenance: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"unknown mode {self.mode!r}")

    def __len__(self) -> int:
        return len(self.reps)

    def graphs(self) -> list:
        return [parse_graph6(line) for line in self.reps]

    def text(self) -> str:
        return "".join(line + "\n" for line in self.reps)

    def checksum(self) -> str:
        return hashlib.sha256(self.text().encode()).hexdigest()

    def save(self, path: str | Path) -> Path:
        path = Path(path)
        path.write_text(self.text())
        meta = {"n": self.n, "mode": self.mode, "count": len(self.reps), "sha256": self.checksum(),
                "provenance": self.provenance}
        sidecar = sidecar_path(path)
        sidecar.write_text(json.dumps(meta, indent=2, sort_keys=True) + "\n")
        return sidecar


def sidecar_path(path: str | Path) -> Path:
    path = Path(path)
    return path.with_name(path.name + ".json")


def load_db(path: str | Path, mode: str | None = None, check: bool = True) -> RepresentativeDb:
    """Read a graph6 representative file, verifying the sidecar checksum when present.

    With ``check`` the representatives are also verified to be connected,
    of one size, and pairwise inequivalent in the database's mode.
    """
    path = Path(path)
    raw = path.read_text()
    lines = [ln.strip() for ln in raw.splitlines() if ln.strip()]
    digest = hashlib.sha256("".join(ln + "\n" for ln in lines).encode()).hexdigest()
    sidecar = sidecar_path(path)
    meta = json.loads(sidecar.read_text()) if sidecar.exists() else {}
    if meta.get("sha256") and meta["sha256"] != digest:
        raise IntegrityError(f"checksum mismatch for {path}: sidecar {meta['sha256'][:12]}..., file {digest[:12]}...")
    if not lines:
        raise IntegrityError(f"{path} holds no graphs")
    graphs = [parse_graph6(ln) for ln in lines]
    n = graphs[0].n
    if meta.get("n", n) != n:
        raise IntegrityError(f"sidecar says n={meta['n']} but graphs have n={n}")
    mode = mode or meta.get("mode", "unlabeled")
    db = RepresentativeDb(n, mode, lines, {"kind": "ingested", "path": str(path), "sha256": digest,
                                           "source": meta.get("provenance", {})})
    if check:
        check_integrity(db, graphs)
    return db


def check_integrity(db: RepresentativeDb, graphs: Sequence[Graph] | None = None) -> None:
    """Raise :class:`IntegrityError` naming the first pair of equivalent representatives.

    Representatives are bucketed by invariant signature first; only pairs in
    a shared bucket need an orbit search.
    """
    graphs = list(graphs) if graphs is not None else db.graphs()
    for idx, g in enumerate(graphs, 1):
        if g.n != db.n:
            raise IntegrityError(f"line {idx}: graph has n={g.n}, expected {db.n}")
        if not is_connected(g):
            raise IntegrityError(f"line {idx}: graph {db.reps[idx - 1]} is not connected")
    buckets: dict = {}
    for idx, g in enumerate(graphs):
        buckets.setdefault(_bucket_key(g, db.mode), []).append(idx)
    same = class_equivalent if db.mode == "unlabeled" else lc_equivalent
    for members in buckets.values():
        for a_pos, a in enumerate(members):
            for b in members[a_pos + 1:]:
                if same(graphs[a], graphs[b]):
                    raise IntegrityError(
                        f"representatives {a + 1} ({db.reps[a]}) and {b + 1} ({db.reps[b]}) are {db.mode}-equivalent")


def _bucket_key(g: Graph, mode: str):
    ks = default_krange(g.n) if g.n >= 4 else ()
    if not ks:
        return canonical_form(g).graph.adj if mode == "unlabeled" else g.adj
    sig = signature(g, ks)
    return sig.unlabeled() if mode == "unlabeled" else sig.tensor_digests


# -- computing databases -----------------------------------------------------


def census_db(n: int, mode: str = "unlabeled") -> RepresentativeDb:
    """Representatives from the exhaustive census (``n <= 7``)."""
    if n < 2:
        raise ValueError("need n >= 2")
    c = census(n)
    reps = c.class_representatives() if mode == "unlabeled" else c.orbit_representatives()
    if mode == "unlabeled":
        reps = [canonical_form(g).graph for g in reps]
    return RepresentativeDb(n, mode, [to_graph6(g) for g in reps], {"kind": "computed", "method": "census"})


def extend_classes(prev: Sequence[Graph], progress: Callable | None = None) -> list:
    """Class representatives on ``n + 1`` nodes from a complete list on ``n`` nodes.

    Every connected graph has a node whose removal leaves it connected, and
    local complementations away from that node act on the rest as they
    would on the smaller graph. So each class on ``n + 1`` nodes contains a
    graph made by attaching a node to a listed representative. New
    candidates are assigned to classes by walking their whole class in
    canonical form.
    """
    n = prev[0].n + 1
    owner: dict = {}
    reps = []
    t0 = time.time()
    for pos, h in enumerate(prev):
        for nb in range(1, 1 << (n - 1)):
            adj = list(h.adj) + [nb]
            for j in bits(nb):
                adj[j] |= 1 << (n - 1)
            key = canonical_form(Graph._trusted(n, tuple(adj))).graph.adj
            if key in owner:
                continue
            cid = len(reps)
            reps.append(Graph._trusted(n, key))
            _flood(n, key, cid, owner)
        if progress is not None:
            progress(pos + 1, len(prev), len(reps), len(owner), time.time() - t0)
    return reps


def _flood(n: int, start: tuple, cid: int, owner: dict) -> None:
    owner[start] = cid
    queue = deque([start])
    while queue:
        adj = queue.popleft()
        for i in range(n):
            nxt = _lc_adj(adj, i)
            if nxt is adj:
                continue
            key = canonical_form(Graph._trusted(n, nxt)).graph.adj
            if key not in owner:
                owner[key] = cid
                queue.append(key)


def extended_db(prev: RepresentativeDb, progress: Callable | None = None) -> RepresentativeDb:
    if prev.mode != "unlabeled":
        raise ValueError("extension works on unlabeled class databases")
    reps = extend_classes(prev.graphs(), progress)
    return RepresentativeDb(prev.n + 1, "unlabeled", [to_graph6(g) for g in reps],
                            {"kind": "computed", "method": "extension", "from_n": prev.n, "from_sha256": prev.checksum()})
