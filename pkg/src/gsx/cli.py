"""``gsx``: command-line access to marginal dimensions, orbit search and LU tests.

Node labels on the command line and in printed output are 1-based.
Exit codes: 0 ran, 10 LC-equivalent, 11 LU-inequivalent, 12 inconclusive,
2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path

from . import analysis
from .db import IntegrityError, census_db, load_db
from .graph import Graph, Graph6Error, bits, fixture, parse_edge_list, parse_graph6, popcount, to_graph6
from .invariants import compare, default_krange
from .lc import DEFAULT_CAP, OrbitOverflow, class_equivalent, lc_equivalent, lc_orbit, unlabeled_orbit
from .metagraph import (build_metagraph, condensable, condense_many, graph_to_dot, metagraph_stabilizer,
                        metagraph_to_dot)
from .stabilizer import (class_inequivalence_scan, entanglement_entropy, lu_inequivalence_scan, marginal_dimension,
                         reduced_stabilizer)

EXIT_OK, EXIT_USAGE = 0, 2
EXIT_LC_EQUIVALENT, EXIT_LU_INEQUIVALENT, EXIT_INCONCLUSIVE = 10, 11, 12

LC_EQUIVALENT = "LCEquivalent"
LU_INEQUIVALENT = "LUInequivalent"
INCONCLUSIVE = "Inconclusive"

STAGE_NUMBERS = {"invariants": 1, "lc-search": 2, "scan": 3}


class UsageError(Exception):
    pass


# -- input parsing -----------------------------------------------------------

_FIXTURE = re.compile(r"^(star|path|cycle|complete)_\d+$")


def load_graph(spec: str) -> Graph:
    """A graph from a graph6 string, ``@file`` (graph6 or edge list) or a fixture name like ``path_4``."""
    spec = spec.strip()
    try:
        if spec.startswith("@"):
            path = Path(spec[1:])
            if not path.exists():
                raise UsageError(f"no such file: {path}")
            text = path.read_text()
            body = [ln for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
            if body and len(body[0].split()) == 1 and not body[0].strip().isdigit():
                return parse_graph6(body[0])
            return parse_edge_list(text)
        if _FIXTURE.match(spec):
            return fixture(spec)
        return parse_graph6(spec)
    except (Graph6Error, ValueError) as exc:
        raise UsageError(f"cannot read graph {spec!r}: {exc}") from exc


def parse_set(text: str, n: int) -> int:
    """Mask of a 1-based comma-separated node list."""
    items = [t for t in re.split(r"[,\s]+", text.strip()) if t]
    if not items:
        raise UsageError("empty node set")
    mask = 0
    for t in items:
        if not t.isdigit():
            raise UsageError(f"bad node label {t!r}")
        v = int(t)
        if not 1 <= v <= n:
            raise UsageError(f"node {v} out of range 1..{n}")
        mask |= 1 << (v - 1)
    return mask


def parse_ks(text: str | None, n: int) -> tuple:
    if text is None:
        return default_krange(n)
    if "-" in text or ".." in text:
        lo, hi = re.split(r"-|\.\.", text, maxsplit=1)
        ks = tuple(range(int(lo), int(hi) + 1))
    elif "," in text:
        ks = tuple(int(t) for t in text.split(","))
    else:
        ks = tuple(range(2, int(text) + 1))
    if not ks or min(ks) < 2 or max(ks) >= n:
        raise UsageError(f"k range {ks} invalid for n={n}")
    return ks


def fmt_set(mask: int) -> str:
    return "{" + ",".join(str(v + 1) for v in bits(mask)) + "}"


def emit(args, payload: dict, text: str) -> None:
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        print(text)


# -- dm ------------------------------------------------------------------------


def cmd_dm(args) -> int:
    g = load_graph(args.graph)
    m = parse_set(args.set, g.n)
    d = marginal_dimension(g, m)
    size = popcount(m)
    payload = {"set": fmt_set(m), "d": d, "rank": 2 ** (size - d)}
    lines = [f"M = {fmt_set(m)}", f"d_M = {d}", f"rank(rho_M) = {2 ** (size - d)}"]
    if m != g.full_mask:
        e = entanglement_entropy(g, m)
        payload["entropy"] = e
        lines.append(f"E_M = {e}")
    if args.elements:
        elems = [str(p) for p in reduced_stabilizer(g, m)]
        payload["elements"] = elems
        lines.append("S_M = {" + ", ".join(elems) + "}")
    emit(args, payload, "\n".join(lines))
    return EXIT_OK


# -- compare -------------------------------------------------------------------


@dataclass
class Verdict:
    status: str
    stage: str | None = None
    witness: dict | None = None
    stages: list = field(default_factory=list)

    def __post_init__(self):
        if (self.status == LU_INEQUIVALENT) != (self.witness is not None):
            raise ValueError("a witness is present exactly for LU-inequivalent verdicts")

    @property
    def exit_code(self) -> int:
        return {LC_EQUIVALENT: EXIT_LC_EQUIVALENT, LU_INEQUIVALENT: EXIT_LU_INEQUIVALENT}.get(self.status, EXIT_INCONCLUSIVE)

    def to_json(self, timings: bool = False) -> dict:
        # timings are left out by default so the JSON is byte-stable across runs
        stages = [s if timings else {k: v for k, v in s.items() if k != "seconds"} for s in self.stages]
        return {"status": self.status, "stage": self.stage,
                "stage_number": STAGE_NUMBERS.get(self.stage) if self.stage else None,
                "witness": self.witness, "stages": stages}


def decide(g1: Graph, g2: Graph, mode: str = "labeled", kmax: int = 4, budget: int = DEFAULT_CAP,
           batch: bool = False) -> Verdict:
    """Staged LU/LC decision for a pair of graphs.

    Pairs run the orbit search first since it alone can prove equivalence;
    ``batch`` puts the cheap invariant test first.
    """
    if g1.n != g2.n:
        raise UsageError("graphs have different node counts")
    n = g1.n
    ks = tuple(k for k in range(2, min(kmax, n - 1) + 1))
    log = []

    def invariants_stage():
        if not ks:
            log.append({"stage": "invariants", "result": "skipped (n too small)"})
            return None
        res = compare(g1, g2, mode, ks)
        log.append({"stage": "invariants", "result": res.detail or "all equal", "ks": list(ks)})
        if res.inequivalent:
            w = {"k": res.k, "detail": res.detail}
            if res.witness is not None:
                w["marginal"] = fmt_set(res.witness)
            return Verdict(LU_INEQUIVALENT, "invariants", w)
        return None

    def lc_stage():
        try:
            same = (lc_equivalent if mode == "labeled" else class_equivalent)(g1, g2, cap=budget)
        except OrbitOverflow as exc:
            log.append({"stage": "lc-search", "result": f"budget exhausted: {exc}"})
            return None
        log.append({"stage": "lc-search", "result": "equivalent" if same else "not LC-equivalent"})
        return Verdict(LC_EQUIVALENT, "lc-search") if same else None

    def scan_stage():
        if mode == "labeled":
            res = lu_inequivalence_scan(g1, g2, max(1, min(kmax, 8)))
            log.append({"stage": "scan", "result": res.describe()})
            if res.inequivalent:
                w = {"detail": res.describe(), "marginals": [fmt_set(m) for m in res.marginals]}
                if res.qubit is not None:
                    w["qubit"] = res.qubit + 1
                return Verdict(LU_INEQUIVALENT, "scan", w)
            return None
        res = class_inequivalence_scan(g1, g2, max(1, min(kmax, 8)))
        log.append({"stage": "scan", "result": f"{res.maps_checked} dimension-preserving relabelings checked"})
        if res.inequivalent:
            return Verdict(LU_INEQUIVALENT, "scan", {"relabelings_refuted": res.maps_checked,
                                                      "detail": "every relabeling hits a letter contradiction"})
        return None

    order = (invariants_stage, lc_stage, scan_stage) if batch else (lc_stage, invariants_stage, scan_stage)
    for stage in order:
        t0 = time.perf_counter()
        v = stage()
        log[-1]["seconds"] = round(time.perf_counter() - t0, 6)
        if v is not None:
            v.stages = log
            return v
    return Verdict(INCONCLUSIVE, None, None, log)


def cmd_compare(args) -> int:
    g1, g2 = load_graph(args.graph), load_graph(args.graph2)
    v = decide(g1, g2, args.mode, args.k or 4, args.budget, args.batch)
    lines = [f"verdict: {v.status}" + (f" (stage {STAGE_NUMBERS[v.stage]}: {v.stage})" if v.stage else "")]
    if v.witness:
        lines += [f"  witness {key}: {val}" for key, val in v.witness.items()]
    for s in v.stages:
        lines.append(f"  [{s['stage']}] {s['result']} ({s.get('seconds', 0):.3f}s)")
    emit(args, v.to_json(args.timings), "\n".join(lines))
    return v.exit_code


# -- classes -------------------------------------------------------------------


def cmd_classes(args) -> int:
    if args.source:
        try:
            db = load_db(args.source, mode=args.mode)
        except IntegrityError as exc:
            raise UsageError(f"integrity check failed: {exc}") from exc
        if args.n is not None and db.n != args.n:
            raise UsageError(f"{args.source} holds n={db.n} graphs, expected {args.n}")
    else:
        if args.n is None:
            raise UsageError("give --n or --source")
        if args.n > 7:
            raise UsageError("self-computation covers n <= 7; pass --source for larger n")
        db = census_db(args.n, args.mode)
    if args.out:
        db.save(args.out)
    unit = "classes" if db.mode == "unlabeled" else "orbits"
    payload = {"n": db.n, "mode": db.mode, unit: len(db), "provenance": db.provenance}
    lines = [f"n={db.n} {db.mode}: {len(db)} {unit}"]
    if db.mode == "labeled" and not args.source:
        from .lc import census
        c = census(db.n)
        payload["graphs"] = len(c.codes)
        lines.append(f"connected labeled graphs: {len(c.codes)}")
    if args.list:
        payload["reps"] = db.reps
        lines += db.reps
    emit(args, payload, "\n".join(lines))
    return EXIT_OK


# -- tables --------------------------------------------------------------------


def cmd_tables(args) -> int:
    n = args.n
    ks = parse_ks(args.k, n)
    mode = args.mode or analysis.DEFAULT_MODE[args.invariant]
    if args.source or n > 7:
        if mode != "unlabeled":
            raise UsageError("labeled tables need the exhaustive census (n <= 7)")
        if not args.source:
            raise UsageError(f"n={n} needs a class database via --source")
        db = load_db(args.source, mode="unlabeled", check=False)
        if db.n != n:
            raise UsageError(f"{args.source} holds n={db.n} graphs, expected {n}")
        rows = analysis.sampled_rows(db, args.invariant, ks, args.samples, args.seed)
    else:
        rows = analysis.census_rows(n, args.invariant, ks, mode, args.p_variant)
    if args.json:
        print(json.dumps([r.to_json() for r in rows], sort_keys=True))
    else:
        print(f"{'n':>3} {'k':>4} {'inv':>5} {'r':>7} {'p':>8}  stderr")
        for r in rows:
            se = f"{r.stderr:.4f}" if r.stderr is not None else "exact"
            print(f"{r.n:>3} {str(r.k):>4} {r.invariant:>5} {r.r:>7.3f} {r.p:>8.4f}  {se}")
    return EXIT_OK


# -- condense ------------------------------------------------------------------


def cmd_condense(args) -> int:
    g = load_graph(args.graph)
    sets = [parse_set(s, g.n) for s in args.set]
    seen = 0
    for s in sets:
        if s & seen:
            raise UsageError("condensation sets overlap")
        seen |= s
    rules = []
    for s in sets:
        if s == g.full_mask:
            raise UsageError("cannot condense the whole graph")
        rule = condensable(g, s)
        rules.append({"set": fmt_set(s), "rule": rule.tag, "experimental": rule.experimental})
    if args.strict:
        refused = [r for r in rules if r["rule"] is None or r["experimental"]]
        if refused:
            emit(args, {"refused": refused, "rules": rules},
                 "\n".join(f"refused {r['set']}: no proven condensation rule applies" for r in refused))
            return EXIT_USAGE
    out, index = condense_many(g, sets)
    payload = {"rules": rules, "graph6": to_graph6(out), "index_map": [i + 1 for i in index], "n": out.n}
    lines = [f"{r['set']}: {r['rule'] or 'no rule'}" + (" (experimental)" if r["experimental"] else "") for r in rules]
    lines.append(f"condensed graph: {to_graph6(out)}  {out}")
    lines.append("index map: " + " ".join(f"{v + 1}->{i + 1}" for v, i in enumerate(index)))
    if args.dot:
        Path(args.dot).write_text(graph_to_dot(out))
    emit(args, payload, "\n".join(lines))
    return EXIT_OK


# -- orbit ---------------------------------------------------------------------


def cmd_orbit(args) -> int:
    g = load_graph(args.graph)
    try:
        orbit = lc_orbit(g, args.budget) if args.mode == "labeled" else unlabeled_orbit(g, args.budget)
    except OrbitOverflow as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    lines = sorted(to_graph6(h) for h in orbit)
    if args.json:
        print(json.dumps({"mode": args.mode, "size": len(lines), "graphs": lines}, sort_keys=True))
    else:
        if not args.count_only:
            print("\n".join(lines))
        print(f"orbit size: {len(lines)}", file=sys.stderr if not args.count_only else sys.stdout)
    return EXIT_OK


# -- metagraph -----------------------------------------------------------------


def cmd_metagraph(args) -> int:
    g = load_graph(args.graph)
    m = parse_set(args.set, g.n)
    try:
        mg = build_metagraph(g, m)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    st = metagraph_stabilizer(mg)
    connected = [fmt_set(lab) for lab in mg.connected_labels]
    payload = {"set": fmt_set(m), "inner_edges": [[a + 1, b + 1] for a, b in mg.inner_edges],
               "connected_type2": connected, "d": st.dim, "elements": [str(p) for p in st]}
    lines = [f"M = {fmt_set(m)}",
             "inner edges: " + (" ".join(f"{a + 1}-{b + 1}" for a, b in mg.inner_edges) or "none"),
             "connected type-2 nodes: " + (" ".join("[" + c[1:-1] + "]" for c in connected) or "none"),
             f"d_M = {st.dim}",
             "S_M = {" + ", ".join(str(p) for p in st) + "}"]
    if args.dot:
        Path(args.dot).write_text(metagraph_to_dot(mg))
    emit(args, payload, "\n".join(lines))
    return EXIT_OK


# -- driver --------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="gsx", description="Graph-state LU/LC equivalence tools")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, graph=True):
        if graph:
            p.add_argument("--graph", required=True, help="graph6 string, @file or fixture (star_n, path_n, ...)")
        p.add_argument("--json", action="store_true", help="machine-readable output")
        return p

    p = common(sub.add_parser("dm", help="marginal dimension of a node set"))
    p.add_argument("--set", required=True, help="1-based nodes, e.g. 1,3")
    p.add_argument("--elements", action="store_true", help="list the reduced stabilizer")
    p.set_defaults(func=cmd_dm)

    p = common(sub.add_parser("compare", help="staged LU/LC decision for two graphs"))
    p.add_argument("--graph2", required=True)
    p.add_argument("--mode", choices=("labeled", "unlabeled"), default="labeled")
    p.add_argument("--k", type=int, default=4, help="largest marginal size used")
    p.add_argument("--budget", type=int, default=DEFAULT_CAP, help="orbit search cap")
    p.add_argument("--batch", action="store_true", help="run the invariant stage before the orbit search")
    p.add_argument("--timings", action="store_true", help="include stage timings in JSON output")
    p.set_defaults(func=cmd_compare)

    p = common(sub.add_parser("classes", help="orbit or class representatives"), graph=False)
    p.add_argument("--n", type=int)
    p.add_argument("--mode", choices=("labeled", "unlabeled"), default="unlabeled")
    p.add_argument("--source", help="ingest a graph6 representative file")
    p.add_argument("--out", help="write the database (graph6 plus JSON sidecar)")
    p.add_argument("--list", action="store_true", help="print the representatives")
    p.set_defaults(func=cmd_classes)

    p = common(sub.add_parser("tables", help="figures of merit r and p"), graph=False)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--invariant", choices=analysis.INVARIANTS, default="T")
    p.add_argument("--k", help="k range: '3' for 2..3, '2-4' or '2,3'")
    p.add_argument("--mode", choices=("labeled", "unlabeled"))
    p.add_argument("--source", help="class database for sampled rows")
    p.add_argument("--samples", type=int, default=2000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--p-variant", choices=("joint", "conditional"), default="joint")
    p.set_defaults(func=cmd_tables)

    p = common(sub.add_parser("condense", help="condense disjoint node sets"))
    p.add_argument("--set", action="append", required=True, help="repeat for several sets")
    p.add_argument("--strict", action="store_true", help="refuse sets without a proven rule")
    p.add_argument("--dot", help="write the condensed graph as DOT")
    p.set_defaults(func=cmd_condense)

    p = common(sub.add_parser("orbit", help="enumerate an LC orbit"))
    p.add_argument("--mode", choices=("labeled", "unlabeled"), default="labeled")
    p.add_argument("--budget", type=int, default=DEFAULT_CAP, help="orbit size cap")
    p.add_argument("--count-only", action="store_true")
    p.set_defaults(func=cmd_orbit)

    p = common(sub.add_parser("metagraph", help="metagraph of a marginal and its stabilizer"))
    p.add_argument("--set", required=True)
    p.add_argument("--dot", help="write the metagraph as DOT")
    p.set_defaults(func=cmd_metagraph)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, IntegrityError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
