import itertools

import numpy as np
import pytest

from gsx.graph import Graph, complete, cycle, mask_of, path, star
from gsx.invariants import (charpoly, compare, default_krange, dense_rank_tensor, fixed_dimension_sets,
                            merit_from_groups, nonzero_eigen_product_exact, nonzero_eigen_product_float, rank_list,
                            rank_tensor, signature, spectrum_values, summed_matrix, tensor_eigen_product,
                            tensor_spectrum)
from conftest import random_connected, random_walk

AME6 = Graph.from_edges(6, [(0, 1), (0, 2), (0, 3), (0, 4), (0, 5), (1, 4), (1, 5), (2, 3), (2, 5), (3, 4)])


def test_rank_list_examples():
    assert rank_list(cycle(7), 2) == (21, 0, 0)
    assert rank_list(path(7), 2) == (19, 2, 0)
    assert rank_list(star(4), 2) == (0, 6, 0)
    d = fixed_dimension_sets(path(7), 2)
    assert sorted(d[1]) == sorted([mask_of([0, 1]), mask_of([5, 6])])
    with pytest.raises(ValueError):
        fixed_dimension_sets(path(4), 4)


def test_rank_tensor_examples(rng):
    g = random_connected(rng, 6)
    assert not rank_tensor(g, 1).dense().any()
    t = rank_tensor(star(4), 2).dense()
    assert (t == 1 - np.eye(4, dtype=int)).all()
    assert rank_tensor(complete(4), 2) == rank_tensor(star(4), 2)
    assert rank_tensor(star(4), 2)[(2, 1)] == 1


def test_eigen_product_examples():
    assert tensor_eigen_product(star(4), 2) == -3
    assert tensor_eigen_product(complete(4), 2) == -3
    assert tensor_eigen_product(star(4), 2, exact=False) == pytest.approx(-3)
    assert np.allclose(spectrum_values(tensor_spectrum(star(4), 2)), [-1, -1, -1, 3])


def test_charpoly_matches_numpy(rng):
    for _ in range(50):
        a = np.array([[rng.randint(-5, 5) for _ in range(6)] for _ in range(6)])
        a = a + a.T
        assert np.allclose(charpoly(a), np.poly(a), atol=1e-6 * np.abs(np.poly(a)).max())
        exact = nonzero_eigen_product_exact(a)
        assert nonzero_eigen_product_float(a) == pytest.approx(exact, rel=1e-6)


def test_float_and_exact_products_agree(rng):
    for _ in range(100):
        g = random_connected(rng, rng.randint(4, 8))
        for k in (2, 3):
            assert tensor_eigen_product(g, k, exact=False) == pytest.approx(tensor_eigen_product(g, k), rel=1e-6)


def test_axis_choice_irrelevant(rng):
    for _ in range(20):
        g = random_connected(rng, rng.randint(4, 7))
        t = dense_rank_tensor(g, 4)
        ref = summed_matrix(g, 4)
        for axes in itertools.combinations(range(4), 2):
            assert (t.sum(axis=axes) == ref).all()


def test_permutation_invariance():
    import random
    rnd = random.Random(3)
    for g in (path(6), cycle(7), AME6, random_connected(rnd, 7)):
        sig = signature(g, (2, 3))
        for _ in range(100):
            perm = list(range(g.n))
            rnd.shuffle(perm)
            h = g.permute(perm)
            s = signature(h, (2, 3))
            assert s.eigen_products == sig.eigen_products
            assert s.spectra == sig.spectra
            assert s.rank_lists == sig.rank_lists


def test_diagonal_embedding(rng):
    for _ in range(30):
        g = random_connected(rng, rng.randint(3, 7))
        for k in range(2, min(4, g.n) + 1):
            hi, lo = dense_rank_tensor(g, k), dense_rank_tensor(g, k - 1)
            idx = (slice(None),) * (k - 2)
            # repeating the last index reduces the order by one
            diag = np.stack([hi[idx + (i, i)] for i in range(g.n)], axis=-1)
            assert (diag == lo).all()


def test_rank_list_recovered_from_tensor(rng):
    for _ in range(30):
        g = random_connected(rng, rng.randint(4, 8))
        for k in (2, 3):
            t = rank_tensor(g, k)
            counts = [0] * (k + 1)
            for idx, d in t.values.items():
                if len(set(idx)) == k:
                    counts[d] += 1
            assert tuple(counts) == rank_list(g, k)
            assert counts[k] == 0


def test_signature_examples():
    assert signature(cycle(7)).rank_lists[0] != signature(path(7)).rank_lists[0]
    assert signature(path(6)) == signature(path(6))
    assert default_krange(7) == (2, 3)
    with pytest.raises(ValueError):
        signature(path(4), (5,))


def test_signature_constant_on_walks(rng):
    for _ in range(30):
        g = random_connected(rng, rng.randint(4, 8))
        ref = signature(g, (2, 3))
        for h in random_walk(rng, g, 20):
            assert signature(h, (2, 3)) == ref


def test_compare_examples():
    res = compare(cycle(6), AME6, "labeled", (2, 3))
    assert res.inequivalent and res.k == 3 and res.witness == 0b111
    from gsx.graph import line
    res = compare(line([1, 2, 3, 4]), line([1, 4, 3, 2]), "labeled", (2,))
    assert res.inequivalent and res.k == 2 and res.witness == 0b11
    g = path(6)
    assert not compare(g, g.permute([3, 1, 5, 0, 2, 4]), "unlabeled").inequivalent
    assert compare(cycle(7), path(7), "unlabeled").inequivalent
    with pytest.raises(ValueError):
        compare(g, g, "sideways")


def test_merit_small():
    m = merit_from_groups(["a", "a", "b"], [1, 1, 2])
    assert m.r == pytest.approx(2 / 3)
    # P(same value) = (2/4)^2 + (2/4)^2, P(same unit) = 6/16
    assert m.p == pytest.approx(0.5 - 6 / 16)
    cond = merit_from_groups(["a", "a", "b"], [1, 1, 2], "conditional")
    assert cond.p == pytest.approx((0.5 - 6 / 16) / (1 - 6 / 16))
    assert merit_from_groups(["a", "b"], [3, 5]).p == 0
    with pytest.raises(ValueError):
        merit_from_groups([], [])
