import os
import random
import sys
from functools import lru_cache
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from gsx.graph import Graph  # noqa: E402
from gsx.lc import enumerate_unlabeled_connected  # noqa: E402

SLOW = os.environ.get("GSX_SLOW") == "1"
DATA = Path(__file__).resolve().parent.parent / "data"


def pytest_collection_modifyitems(config, items):
    if SLOW:
        return
    skip = pytest.mark.skip(reason="runtime-gated; set GSX_SLOW=1")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)


@lru_cache(maxsize=None)
def unlabeled(n: int) -> tuple:
    return tuple(enumerate_unlabeled_connected(n))


def random_connected(rng: random.Random, n: int, density: float = 0.4) -> Graph:
    """A random spanning tree plus independent extra edges."""
    order = list(range(n))
    rng.shuffle(order)
    edges = {tuple(sorted((order[i], order[rng.randrange(i)]))) for i in range(1, n)}
    edges |= {(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < density}
    return Graph.from_edges(n, edges)


def random_walk(rng: random.Random, g: Graph, steps: int):
    from gsx.lc import local_complement

    out = [g]
    for _ in range(steps):
        out.append(local_complement(out[-1], rng.randrange(g.n)))
    return out


@pytest.fixture
def rng():
    return random.Random(20240611)
