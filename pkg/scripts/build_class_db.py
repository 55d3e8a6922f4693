"""Build unlabeled class databases up to a target size and store them under data/.

    python scripts/build_class_db.py 9

Sizes up to 7 come from the exhaustive census; larger sizes extend the
previous size node by node. n=9 takes several minutes.
"""

import argparse
import logging
from pathlib import Path

from gsx.db import census_db, extended_db, load_db

DATA = Path(__file__).resolve().parent.parent / "data"


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("n", type=int)
    ap.add_argument("--out", type=Path, default=DATA)
    args = ap.parse_args()
    logging.basicConfig(level=logging.INFO, format="%(asctime)s %(message)s")
    args.out.mkdir(parents=True, exist_ok=True)
    db = census_db(min(args.n, 7))
    db.save(args.out / f"classes_n{db.n}.g6")
    while db.n < args.n:
        target = args.out / f"classes_n{db.n + 1}.g6"
        if target.exists():
            db = load_db(target, check=False)
            logging.info("reused %s (%d classes)", target.name, len(db))
            continue

        def progress(done, total, classes, forms, secs):
            if done % 10 == 0 or done == total:
                logging.info("n=%d: %d/%d seeds, %d classes, %d forms, %.0fs", db.n + 1, done, total, classes, forms, secs)

        db = extended_db(db, progress)
        db.save(target)
        logging.info("wrote %s with %d classes", target.name, len(db))


if __name__ == "__main__":
    main()
