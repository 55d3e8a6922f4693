"""Figures of merit for the invariant battery, exact or sampled.

``r`` is the fraction of orbits (labeled) or classes (unlabeled) with a
distinct invariant value. ``p`` is the chance that two independently drawn
labeled connected graphs share the invariant value while lying in different
orbits or classes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .db import RepresentativeDb
from .graph import Graph, is_connected
from .invariants import INVARIANTS, default_krange, merit_from_groups, select, signature
from .lc import census, class_equivalent

DEFAULT_MODE = {"T": "labeled", "l": "unlabeled", "t": "unlabeled", "tprod": "unlabeled"}


@dataclass(frozen=True)
class TableRow:
    n: int
    k: object  # an int, or "all" for the tuple over every k
    invariant: str
    mode: str
    r: float
    p: float
    orbits: int | None
    classes: int | None
    distinct: int
    stderr: float | None = None
    seed: int | None = None

    def to_json(self) -> dict:
        out = {"n": self.n, "k": self.k, "invariant": self.invariant, "mode": self.mode, "r": self.r, "p": self.p,
               "counts": {"orbits": self.orbits, "classes": self.classes, "distinct_values": self.distinct}}
        if self.stderr is not None:
            out["stderr"] = self.stderr
        if self.seed is not None:
            out["seed"] = self.seed
        return out


def _check(invariant: str, mode: str, ks: Sequence[int], n: int) -> None:
    if invariant not in INVARIANTS:
        raise ValueError(f"unknown invariant {invariant!r}; choose from {INVARIANTS}")
    if mode not in ("labeled", "unlabeled"):
        raise ValueError(f"unknown mode {mode!r}")
    if invariant == "T" and mode == "unlabeled":
        raise ValueError("the rank tensor depends on node labels; use mode 'labeled'")
    if not ks or min(ks) < 2 or max(ks) >= n:
        raise ValueError(f"k range {tuple(ks)} invalid for n={n}")


def census_rows(n: int, invariant: str, ks: Sequence[int] | None = None, mode: str | None = None,
                p_variant: str = "joint", cen=None) -> list:
    """Exact rows from the full census of connected labeled graphs (``n <= 7``)."""
    ks = tuple(ks) if ks is not None else default_krange(n)
    mode = mode or DEFAULT_MODE.get(invariant, "unlabeled")
    _check(invariant, mode, ks, n)
    c = cen if cen is not None else census(n)
    if mode == "labeled":
        reps, weights = c.orbit_representatives(), c.orbit_sizes()
    else:
        reps, weights = c.class_representatives(), c.class_sizes()
    weights = [int(w) for w in weights]
    values = [select(signature(g, ks), invariant) for g in reps]
    rows = []
    for j, k in enumerate(ks):
        m = merit_from_groups([v[j] for v in values], weights, p_variant)
        rows.append(TableRow(n, k, invariant, mode, m.r, m.p, c.num_orbits, c.num_classes, m.distinct))
    if len(ks) > 1:
        m = merit_from_groups(values, weights, p_variant)
        rows.append(TableRow(n, "all", invariant, mode, m.r, m.p, c.num_orbits, c.num_classes, m.distinct))
    return rows


class ClassIndex:
    """Assigns graphs to the classes of an unlabeled representative database.

    A graph is matched by its full invariant signature; only when several
    classes share a signature is an orbit search run.
    """

    def __init__(self, db: RepresentativeDb, ks: Sequence[int] | None = None):
        if db.mode != "unlabeled":
            raise ValueError("class index needs an unlabeled database")
        self.db = db
        self.reps = db.graphs()
        self.ks = tuple(ks) if ks is not None else default_krange(db.n)
        self.sigs = [signature(g, self.ks) for g in self.reps]
        self.buckets: dict = {}
        for idx, s in enumerate(self.sigs):
            self.buckets.setdefault(self._key(s), []).append(idx)

    @staticmethod
    def _key(sig) -> tuple:
        return sig.rank_lists, sig.spectra

    def classify(self, g: Graph, sig=None) -> int:
        sig = sig if sig is not None else signature(g, self.ks)
        cands = self.buckets.get(self._key(sig), [])
        if len(cands) == 1:
            return cands[0]
        for idx in cands:
            if class_equivalent(g, self.reps[idx]):
                return idx
        raise LookupError("graph matches no class of the database; is it complete?")

    def collisions(self) -> list:
        """Groups of classes that the full signature cannot tell apart."""
        return [tuple(v) for v in self.buckets.values() if len(v) > 1]


def random_connected_graph(n: int, rng: np.random.Generator) -> Graph:
    """Uniform over connected labeled graphs (rejection from uniform labeled graphs)."""
    npairs = n * (n - 1) // 2
    while True:
        code = int.from_bytes(rng.bytes((npairs + 7) // 8), "little") & ((1 << npairs) - 1)
        g = Graph.from_edge_code(n, code)
        if is_connected(g):
            return g


def sampled_rows(db: RepresentativeDb, invariant: str, ks: Sequence[int] | None = None, samples: int = 2000,
                 seed: int = 0, index: ClassIndex | None = None) -> list:
    """Unlabeled rows from a class database: exact ``r``, Monte Carlo ``p``.

    ``p`` is estimated from all ordered pairs of ``samples`` uniform labeled
    connected graphs; the reported standard error is a jackknife estimate.
    The generator is a counter-based Philox stream, so results depend only
    on ``seed``.
    """
    n = db.n
    ks = tuple(ks) if ks is not None else default_krange(n)
    _check(invariant, "unlabeled", ks, n)
    if samples < 3:
        raise ValueError("need at least 3 samples")
    index = index or ClassIndex(db, ks)
    rng = np.random.Generator(np.random.Philox(seed))
    rep_values = [select(s, invariant) for s in index.sigs] if index.ks == ks else \
        [select(signature(g, ks), invariant) for g in index.reps]
    drawn_values, drawn_class = [], []
    for _ in range(samples):
        g = random_connected_graph(n, rng)
        sig = signature(g, index.ks)
        drawn_class.append(index.classify(g, sig))
        drawn_values.append(select(sig if index.ks == ks else signature(g, ks), invariant))
    rows = []
    cols = [(k, [v[j] for v in rep_values], [v[j] for v in drawn_values]) for j, k in enumerate(ks)]
    if len(ks) > 1:
        cols.append(("all", rep_values, drawn_values))
    for k, reps_k, draws_k in cols:
        distinct = len(set(reps_k))
        p, se = _pair_estimate(draws_k, drawn_class)
        rows.append(TableRow(n, k, invariant, "unlabeled", distinct / len(reps_k), p, None, len(reps_k), distinct, se, seed))
    return rows


def _pair_estimate(values: Sequence, classes: Sequence[int]) -> tuple:
    # U-statistic over ordered pairs i != j of [same value] - [same class]
    n = len(values)
    vid = {v: i for i, v in enumerate(dict.fromkeys(values))}
    v = np.array([vid[x] for x in values])
    c = np.asarray(classes)
    cv = np.bincount(v)
    cc = np.bincount(c)
    # per draw, how many others share its value or its class (same class implies same value)
    contrib = (cv[v] - 1) - (cc[c] - 1)
    total = contrib.sum()
    p = total / (n * (n - 1))
    loo = (total - 2 * contrib) / ((n - 1) * (n - 2))
    se = math.sqrt((n - 1) / n * ((loo - loo.mean()) ** 2).sum())
    return float(p), float(se)
