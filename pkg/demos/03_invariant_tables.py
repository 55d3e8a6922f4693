"""Figures of merit of the rank-based invariants.

    python demos/03_invariant_tables.py

r is the fraction of orbits (or classes) with a distinct invariant value.
p is the chance that two random labeled graphs agree on the invariant but
are not equivalent. Exact numbers come from the full census.
"""

from gsx.analysis import census_rows, sampled_rows
from gsx.db import load_db
from pathlib import Path

DATA = Path(__file__).resolve().parent.parent / "data"

print(f"{'n':>2} {'k':>4} {'inv':>5} {'mode':>10} {'r':>7} {'p':>8}")
for n in range(3, 8):
    for inv in ("T", "l", "t", "tprod"):
        for row in census_rows(n, inv):
            print(f"{row.n:>2} {row.k!s:>4} {inv:>5} {row.mode:>10} {row.r:7.3f} {row.p:8.4f}")

# Larger n: exact r from the class database, sampled p with a standard error.
db = load_db(DATA / "classes_n8.g6")
for row in sampled_rows(db, "l", samples=3000, seed=1):
    print(f"n=8 k={row.k} l: r={row.r:.3f} p={row.p:.4f} +- {row.stderr:.4f}")
