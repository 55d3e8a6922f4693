"""Marginal-dimension invariants: rank lists, rank tensors and their spectra."""

from __future__ import annotations

import hashlib
import itertools
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np

from .graph import Graph, bits, popcount
from .stabilizer import _dim_unchecked


def dimension_table(g: Graph, kmax: int) -> np.ndarray:
    """``d_M`` for every mask ``M`` with ``1 <= |M| <= kmax``; other entries are -1."""
    n = g.n
    table = np.full(1 << n, -1, dtype=np.int64)
    for k in range(1, min(kmax, n) + 1):
        for combo in itertools.combinations(range(n), k):
            m = sum(1 << v for v in combo)
            table[m] = _dim_unchecked(g.adj, m) if m != g.full_mask else n
    return table


def fixed_dimension_sets(g: Graph, k: int) -> list:
    """``out[i]`` lists the size-``k`` marginals (as masks) with ``d_M = i``."""
    if not 1 <= k < g.n:
        raise ValueError(f"need 1 <= k < n, got k={k}, n={g.n}")
    out = [[] for _ in range(k + 1)]
    for combo in itertools.combinations(range(g.n), k):
        m = sum(1 << v for v in combo)
        out[_dim_unchecked(g.adj, m)].append(m)
    return out


def rank_list(g: Graph, k: int) -> tuple:
    return tuple(len(s) for s in fixed_dimension_sets(g, k))


@lru_cache(maxsize=64)
def _index_masks(n: int, k: int) -> np.ndarray:
    # mask of {i1..ik} for every index tuple, shape (n,)*k
    grid = np.zeros((n,) * k, dtype=np.int64)
    for axis in range(k):
        shape = [1] * k
        shape[axis] = n
        grid = grid | (np.int64(1) << np.arange(n, dtype=np.int64)).reshape(shape)
    return grid


@dataclass(frozen=True)
class RankTensor:
    """Order-``k`` supersymmetric tensor of marginal dimensions."""

    k: int
    n: int
    values: dict  # sorted index tuple -> d

    def __getitem__(self, idx: Sequence[int]) -> int:
        return self.values[tuple(sorted(idx))]

    def dense(self) -> np.ndarray:
        out = np.empty((self.n,) * self.k, dtype=np.int64)
        for idx in itertools.product(range(self.n), repeat=self.k):
            out[idx] = self.values[tuple(sorted(idx))]
        return out

    def digest(self) -> str:
        payload = ";".join(f"{','.join(map(str, key))}:{v}" for key, v in sorted(self.values.items()))
        return hashlib.blake2b(f"{self.n}|{self.k}|{payload}".encode(), digest_size=16).hexdigest()


def rank_tensor(g: Graph, k: int) -> RankTensor:
    if not 1 <= k <= g.n:
        raise ValueError(f"need 1 <= k <= n, got k={k}, n={g.n}")
    table = dimension_table(g, k)
    values = {}
    for idx in itertools.combinations_with_replacement(range(g.n), k):
        m = 0
        for v in idx:
            m |= 1 << v
        values[idx] = int(table[m])
    return RankTensor(k, g.n, values)


def dense_rank_tensor(g: Graph, k: int, table: np.ndarray | None = None) -> np.ndarray:
    if table is None:
        table = dimension_table(g, k)
    return table[_index_masks(g.n, k)]


def summed_matrix(g: Graph, k: int, table: np.ndarray | None = None) -> np.ndarray:
    """The order-``k`` tensor summed over its last ``k - 2`` axes."""
    if k < 2:
        raise ValueError("need k >= 2")
    t = dense_rank_tensor(g, k, table)
    return t.sum(axis=tuple(range(2, k))) if k > 2 else t


def charpoly(a: np.ndarray) -> list:
    """Exact coefficients ``c_0..c_n`` of ``det(xI - A)`` for an integer matrix (Faddeev-LeVerrier).

    Arithmetic runs on Python integers (object arrays), so large
    coefficients never overflow.
    """
    n = a.shape[0]
    A = np.array([[int(v) for v in row] for row in a], dtype=object).reshape(n, n)
    eye = np.eye(n, dtype=int).astype(object)
    coeffs = [1]
    M = np.zeros((n, n), dtype=object)
    for k in range(1, n + 1):
        M = A.dot(M) + coeffs[-1] * eye
        tr = int((A * M.T).sum()) if n else 0
        if tr % k:
            raise ArithmeticError("non-integral Faddeev-LeVerrier step")
        coeffs.append(-tr // k)
    return coeffs


def nonzero_eigen_product_exact(a: np.ndarray) -> int:
    coeffs = charpoly(a)
    r = max((j for j, c in enumerate(coeffs) if c), default=0)
    return (-1) ** r * coeffs[r]


def nonzero_eigen_product_float(a: np.ndarray, rtol: float = 1e-6) -> float:
    a = np.asarray(a, dtype=float)
    lam = np.linalg.eigvalsh(a)
    scale = np.abs(a).max() if a.size else 0.0
    keep = lam[np.abs(lam) > rtol * max(scale, 1.0)]
    return float(np.prod(keep)) if keep.size else 1.0


def tensor_eigen_product(g: Graph, k: int, exact: bool = True, table: np.ndarray | None = None):
    """Product of the non-zero eigenvalues of the summed rank tensor.

    The exact route reads it off the characteristic polynomial; the float
    route uses a symmetric eigensolver with a relative zero threshold.
    """
    if not 2 <= k <= g.n:
        raise ValueError(f"need 2 <= k <= n, got k={k}, n={g.n}")
    a = summed_matrix(g, k, table)
    return nonzero_eigen_product_exact(a) if exact else nonzero_eigen_product_float(a)


def tensor_spectrum(g: Graph, k: int, table: np.ndarray | None = None) -> tuple:
    """Spectrum of the summed rank tensor, encoded exactly as its characteristic polynomial.

    Two integer symmetric matrices share a spectrum iff their characteristic
    polynomials agree, so the coefficient tuple is a hashable stand-in for
    the sorted eigenvalues.
    """
    if not 2 <= k <= g.n:
        raise ValueError(f"need 2 <= k <= n, got k={k}, n={g.n}")
    return tuple(charpoly(summed_matrix(g, k, table)))


def spectrum_values(coeffs: Sequence[int]) -> np.ndarray:
    """Sorted real eigenvalues recovered from characteristic polynomial coefficients."""
    return np.sort(np.roots(np.asarray(coeffs, dtype=float)).real)


# -- signatures and comparison ----------------------------------------------


@dataclass(frozen=True)
class InvariantSignature:
    ks: tuple
    rank_lists: tuple
    eigen_products: tuple
    spectra: tuple
    tensor_digests: tuple

    def unlabeled(self) -> tuple:
        return self.rank_lists, self.eigen_products, self.spectra


def default_krange(n: int) -> tuple:
    return tuple(range(2, max(2, n // 2) + 1))


def signature(g: Graph, krange: Sequence[int] | None = None) -> InvariantSignature:
    ks = tuple(krange) if krange is not None else default_krange(g.n)
    if not ks:
        raise ValueError("empty k range")
    top = max(ks)
    if top > g.n or min(ks) < 2:
        raise ValueError(f"k range {ks} invalid for n={g.n}")
    table = dimension_table(g, top)
    rls, ts, specs, digs = [], [], [], []
    for k in ks:
        counts = [0] * (k + 1)
        for combo in itertools.combinations(range(g.n), k):
            m = sum(1 << v for v in combo)
            counts[int(table[m])] += 1
        rls.append(tuple(counts))
        dense = dense_rank_tensor(g, k, table)
        poly = charpoly(dense.sum(axis=tuple(range(2, k))) if k > 2 else dense)
        r = max((j for j, c in enumerate(poly) if c), default=0)
        ts.append((-1) ** r * poly[r])
        specs.append(tuple(poly))
        digs.append(_digest_dense(g.n, k, dense))
    return InvariantSignature(ks, tuple(rls), tuple(ts), tuple(specs), tuple(digs))


def _digest_dense(n: int, k: int, dense: np.ndarray) -> str:
    h = hashlib.blake2b(digest_size=16)
    h.update(f"{n}|{k}|".encode())
    h.update(np.ascontiguousarray(dense, dtype=np.int8).tobytes())
    return h.hexdigest()


@dataclass(frozen=True)
class CompareResult:
    inequivalent: bool
    mode: str
    k: int | None = None
    witness: int | None = None  # marginal mask (labeled mode)
    detail: str = ""


def compare(g1: Graph, g2: Graph, mode: str = "labeled", krange: Sequence[int] | None = None) -> CompareResult:
    """One-sided LU test: ``inequivalent=True`` certifies inequivalence."""
    if g1.n != g2.n:
        raise ValueError("graphs have different node counts")
    ks = tuple(krange) if krange is not None else default_krange(g1.n)
    if mode == "labeled":
        top = max(ks)
        t1, t2 = dimension_table(g1, top), dimension_table(g2, top)
        for size in range(1, top + 1):
            for combo in itertools.combinations(range(g1.n), size):
                m = sum(1 << v for v in combo)
                if t1[m] != t2[m]:
                    k = next(k for k in ks if k >= size)
                    return CompareResult(True, mode, k, m, f"d differs: {t1[m]} vs {t2[m]}")
        return CompareResult(False, mode)
    if mode == "unlabeled":
        s1, s2 = signature(g1, ks), signature(g2, ks)
        for j, k in enumerate(ks):
            if s1.rank_lists[j] != s2.rank_lists[j]:
                return CompareResult(True, mode, k, None, f"rank lists differ: {s1.rank_lists[j]} vs {s2.rank_lists[j]}")
            if s1.eigen_products[j] != s2.eigen_products[j]:
                return CompareResult(True, mode, k, None, f"eigenvalue products differ: {s1.eigen_products[j]} vs {s2.eigen_products[j]}")
            if s1.spectra[j] != s2.spectra[j]:
                return CompareResult(True, mode, k, None, "summed rank tensor spectra differ")
        return CompareResult(False, mode)
    raise ValueError(f"unknown mode {mode!r}")


# -- figures of merit -------------------------------------------------------


INVARIANTS = ("T", "l", "t", "tprod")


def invariant_value(g: Graph, invariant: str, ks: Sequence[int]):
    """Hashable invariant value, one entry per k in ``ks``.

    ``T`` is the rank tensor digest, ``l`` the rank list, ``t`` the spectrum
    of the summed tensor and ``tprod`` the bare product of its non-zero
    eigenvalues (a coarser summary of the same spectrum).
    """
    sig = signature(g, ks)
    return select(sig, invariant)


def select(sig: InvariantSignature, invariant: str) -> tuple:
    if invariant == "T":
        return sig.tensor_digests
    if invariant == "l":
        return sig.rank_lists
    if invariant == "t":
        return sig.spectra
    if invariant == "tprod":
        return sig.eigen_products
    raise ValueError(f"unknown invariant {invariant!r}")


@dataclass(frozen=True)
class Merit:
    r: float
    p: float
    units: int
    distinct: int
    stderr: float | None = None


def merit_from_groups(values: Sequence, weights: Sequence[float], p_variant: str = "joint") -> Merit:
    """Figures of merit from one invariant value and one weight per orbit or class.

    ``r`` is distinct values over units. ``p`` is the probability that two
    independent draws (unit chosen with probability proportional to weight)
    share a value while lying in different units; the conditional variant
    divides by the probability of different units.
    """
    if not len(values):
        raise ValueError("empty universe")
    if len(values) != len(weights):
        raise ValueError("values and weights differ in length")
    # integer weights (labeled copy counts) keep p exact; floats also work
    ws = [int(x) if float(x).is_integer() else float(x) for x in weights]
    mass: dict = {}
    for v, x in zip(values, ws):
        mass[v] = mass.get(v, 0) + x
    total = sum(ws)
    same_value = sum(x * x for x in mass.values())
    same_unit = sum(x * x for x in ws)
    joint = (same_value - same_unit) / (total * total)
    if p_variant == "joint":
        p = joint
    elif p_variant == "conditional":
        diff = total * total - same_unit
        p = (same_value - same_unit) / diff if diff else 0.0
    else:
        raise ValueError(f"unknown p variant {p_variant!r}")
    return Merit(len(mass) / len(values), float(p), len(values), len(mass))
