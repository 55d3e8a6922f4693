"""Cross-route oracle checks for marginal dimensions and the structure they carry.

The acceptance module repeats these at full scale; here they run at sizes
that keep the suite quick.
"""

import itertools
import random

import pytest

from gsx.graph import popcount
from gsx.lc import lc_equivalent
from gsx.metagraph import build_metagraph, condensable, condense, metagraph_dimension, metagraph_stabilizer
from gsx.stabilizer import ell_value, marginal_dimension, new_structure, reduced_stabilizer
from conftest import random_connected, random_walk, unlabeled
from oracles import brute_dimension


def _subsets(n, kmax):
    for k in range(1, kmax + 1):
        for combo in itertools.combinations(range(n), k):
            yield sum(1 << v for v in combo)


@pytest.mark.parametrize("n", range(2, 7))
def test_three_routes_exhaustive(n):
    for g in unlabeled(n):
        for m in _subsets(n, min(4, n - 1)):
            d = marginal_dimension(g, m)
            assert reduced_stabilizer(g, m).dim == d
            assert metagraph_dimension(g, m) == d
            assert brute_dimension(g.adj, n, m) == d


@pytest.mark.parametrize("n", range(2, 8))
def test_complement_identity_exhaustive(n):
    for g in unlabeled(n):
        full = g.full_mask
        for m in range(1, full):
            d, dc = marginal_dimension(g, m), marginal_dimension(g, full & ~m)
            assert dc == d + (n - popcount(m)) - popcount(m)
            assert 0 <= d < popcount(m)


def test_new_structure_at_three(rng):
    for _ in range(2000):
        g = random_connected(rng, rng.randint(4, 10))
        m = sum(1 << v for v in rng.sample(range(g.n), 3))
        pairs = sum(marginal_dimension(g, m & ~(1 << v)) for v in range(g.n) if m >> v & 1)
        assert new_structure(g, m) == (marginal_dimension(g, m) > pairs)


def _generated_by_all_proper_subsets(g, m):
    elems = {0}
    for sub in range(1, m):
        if sub & ~m or sub == m:
            continue
        for L in reduced_stabilizer(g, sub).generator_sets:
            elems |= {e ^ L for e in elems}
    return elems


def test_ell_against_full_subset_closure(rng):
    for _ in range(300):
        g = random_connected(rng, rng.randint(4, 8))
        m = sum(1 << v for v in rng.sample(range(g.n), rng.randint(2, min(5, g.n - 1))))
        full = len(reduced_stabilizer(g, m))
        sub = len(_generated_by_all_proper_subsets(g, m))
        assert ell_value(g, m) == (full // sub).bit_length() - 1


def test_routes_randomized_large(rng):
    for _ in range(500):
        g = random_connected(rng, rng.randint(8, 10))
        m = rng.randint(1, g.full_mask - 1)
        if popcount(m) > 12:
            continue
        d = marginal_dimension(g, m)
        assert reduced_stabilizer(g, m).dim == d == metagraph_dimension(g, m)
        assert metagraph_stabilizer(build_metagraph(g, m)).elements == reduced_stabilizer(g, m).elements


def test_condensation_preserved_under_walks(rng):
    done = 0
    while done < 150:
        g = random_connected(rng, rng.randint(3, 9))
        c = rng.randint(1, g.full_mask - 1)
        if condensable(g, c).tag != "DimCMinus1":
            continue
        done += 1
        h = random_walk(rng, g, 20)[-1]
        assert lc_equivalent(condense(g, c).graph, condense(h, c).graph)


def test_new_structure_is_not_a_condensation_rule():
    rng = random.Random(1)
    for _ in range(20000):
        g = random_connected(rng, rng.randint(4, 7))
        c = rng.randint(1, g.full_mask - 1)
        if popcount(c) < 2 or not new_structure(g, c):
            continue
        h = random_walk(rng, g, 10)[-1]
        if not lc_equivalent(condense(g, c).graph, condense(h, c).graph):
            assert lc_equivalent(g, h)
            return
    pytest.fail("no counterexample found")
