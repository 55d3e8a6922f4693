"""Pauli strings, graph-state stabilizers and marginal dimensions.

Elements of a graph-state stabilizer are kept symbolically as sign plus X/Z
bitmasks; no state vectors are ever built.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from .gf2 import rank_of_rows, span
from .graph import Graph, bits, popcount

_LETTERS = "IXZY"  # index = x + 2z


@dataclass(frozen=True)
class PauliString:
    """``i**phase`` times a tensor product of single-qubit Paulis.

    Qubit ``q`` carries X, Z or Y when bit ``q`` is set in ``xmask`` only,
    ``zmask`` only, or both.
    """

    n: int
    xmask: int = 0
    zmask: int = 0
    phase: int = 0

    def __post_init__(self):
        object.__setattr__(self, "phase", self.phase % 4)

    @classmethod
    def identity(cls, n: int) -> "PauliString":
        return cls(n)

    @classmethod
    def from_string(cls, text: str) -> "PauliString":
        """Parse ``'-ZYIIIY'`` style strings (qubit 1 first)."""
        s = text.strip()
        phase = 0
        for prefix, p in (("+i", 1), ("-i", 3), ("+", 0), ("-", 2)):
            if s.startswith(prefix):
                phase, s = p, s[len(prefix):]
                break
        x = z = 0
        for q, ch in enumerate(s):
            k = _LETTERS.find(ch.upper())
            if k < 0:
                raise ValueError(f"bad Pauli letter {ch!r} in {text!r}")
            x |= (k & 1) << q
            z |= (k >> 1) << q
        return cls(len(s), x, z, phase)

    @property
    def support(self) -> int:
        return self.xmask | self.zmask

    @property
    def sign(self) -> int:
        if self.phase & 1:
            raise ValueError(f"{self} has an imaginary phase")
        return -1 if self.phase == 2 else 1

    def letter(self, q: int) -> str:
        return _LETTERS[((self.xmask >> q) & 1) | (((self.zmask >> q) & 1) << 1)]

    def letters(self) -> str:
        return "".join(self.letter(q) for q in range(self.n))

    def __mul__(self, other: "PauliString") -> "PauliString":
        if self.n != other.n:
            raise ValueError("qubit counts differ")
        x1, z1, x2, z2 = self.xmask, self.zmask, other.xmask, other.zmask
        X1, Y1, Z1 = x1 & ~z1, x1 & z1, z1 & ~x1
        X2, Y2, Z2 = x2 & ~z2, x2 & z2, z2 & ~x2
        # XY = iZ, YZ = iX, ZX = iY and the reversed orders give -i
        plus = (X1 & Y2) | (Y1 & Z2) | (Z1 & X2)
        minus = (X1 & Z2) | (Y1 & X2) | (Z1 & Y2)
        phase = self.phase + other.phase + popcount(plus) - popcount(minus)
        return PauliString(self.n, x1 ^ x2, z1 ^ z2, phase)

    def __str__(self) -> str:
        return ("+", "+i", "-", "-i")[self.phase] + self.letters()

    def __repr__(self) -> str:
        return f"PauliString({self})"


@dataclass(frozen=True)
class ReducedStabilizer:
    marginal: int
    elements: tuple
    dim: int
    generator_sets: tuple = field(default=(), compare=False)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)


def generator(g: Graph, i: int) -> PauliString:
    if not 0 <= i < g.n:
        raise IndexError(f"node {i} out of range for n={g.n}")
    return PauliString(g.n, 1 << i, g.adj[i], 0)


def stab_element(g: Graph, gens: int) -> PauliString:
    """Product of the generators indexed by mask ``gens``, in ascending index order."""
    out = PauliString.identity(g.n)
    for i in bits(gens):
        out = out * generator(g, i)
    if out.phase & 1:
        raise AssertionError("graph-state stabilizer element with imaginary phase")
    return out


def _element_fast(g: Graph, gens: int) -> PauliString:
    # closed form: moving X factors left costs (-1)^(edges inside gens),
    # and every qubit where X meets Z becomes XZ = -iY
    z = 0
    inner = 0
    for i in bits(gens):
        z ^= g.adj[i]
        inner += popcount(g.adj[i] & gens)
    c = popcount(z & gens)
    return PauliString(g.n, gens, z, inner - c)  # inner counts each edge twice


def _check_marginal(g: Graph, m: int) -> None:
    if m == 0:
        raise ValueError("marginal set must be non-empty")
    if m & ~g.full_mask:
        raise ValueError("marginal set has nodes outside the graph")


def marginal_dimension(g: Graph, m: int) -> int:
    """``|M| - rank(Gamma[M, V \\ M])`` over GF(2); ``n`` for ``M = V``."""
    _check_marginal(g, m)
    outside = ~m
    return popcount(m) - rank_of_rows(g.adj[i] & outside for i in bits(m))


def _dim_unchecked(adj: tuple, m: int) -> int:
    outside = ~m
    return popcount(m) - rank_of_rows(adj[i] & outside for i in bits(m))


def reduced_stabilizer(g: Graph, m: int, limit: int = 24) -> ReducedStabilizer:
    """All stabilizer elements supported inside ``m``, by brute force over generator subsets."""
    _check_marginal(g, m)
    size = popcount(m)
    if size > limit:
        raise ValueError(f"marginal of size {size} exceeds brute-force limit {limit}")
    members = list(bits(m))
    outside = ~m
    found = []
    # walk subsets in Gray-code order so each step toggles one generator
    z = 0
    gens = 0
    for step in range(1 << size):
        if step:
            flip = (step & -step).bit_length() - 1
            v = members[flip]
            gens ^= 1 << v
            z ^= g.adj[v]
        if not z & outside:
            found.append(gens)
    found.sort()
    elements = tuple(stab_element(g, L) for L in found)
    dim = len(found).bit_length() - 1
    return ReducedStabilizer(m, elements, dim, tuple(found))


def marginal_rank(g: Graph, m: int) -> int:
    """Rank of the reduced density matrix, ``2**(|M| - d_M)``."""
    return 1 << (popcount(m) - marginal_dimension(g, m))


def entanglement_entropy(g: Graph, m: int) -> int:
    """Entropy in bits of the cut ``M | V \\ M``."""
    _check_marginal(g, m)
    if m == g.full_mask:
        raise ValueError("entropy needs a proper subset")
    return popcount(m) - marginal_dimension(g, m)


def _gen_sets(g: Graph, m: int) -> list:
    outside = ~m
    members = list(bits(m))
    out = []
    z = gens = 0
    for step in range(1 << len(members)):
        if step:
            v = members[(step & -step).bit_length() - 1]
            gens ^= 1 << v
            z ^= g.adj[v]
        if not z & outside:
            out.append(gens)
    return out


def _sub_generated(g: Graph, m: int) -> set:
    # S_N grows with N, so the maximal proper subsets generate everything
    elems = set()
    for v in bits(m):
        sub = m & ~(1 << v)
        if sub:
            elems.update(_gen_sets(g, sub))
    return span(sorted(elems))


def _check_small(m: int, limit: int) -> None:
    if popcount(m) > limit:
        raise ValueError(f"marginal of size {popcount(m)} exceeds limit {limit}")


def new_structure(g: Graph, m: int, limit: int = 24) -> bool:
    """True iff ``S_M`` is strictly larger than the group its proper sub-marginals generate."""
    _check_marginal(g, m)
    _check_small(m, limit)
    if popcount(m) < 2:
        raise ValueError("new-structure test needs |M| >= 2")
    return len(_gen_sets(g, m)) > len(_sub_generated(g, m))


def ell_value(g: Graph, m: int, limit: int = 24) -> int:
    """log2 of ``|S_M|`` over the order of the subgroup generated by proper sub-marginals."""
    _check_marginal(g, m)
    _check_small(m, limit)
    full = len(_gen_sets(g, m))
    sub = _sub_generated(g, m)
    ell = (full // len(sub)).bit_length() - 1
    assert full == len(sub) << ell, "subgroup order does not divide |S_M|"
    assert ell <= 2, f"ell={ell} on marginal {m:#b}"
    if ell == 2:
        assert popcount(m) % 2 == 0, "ell=2 on an odd marginal"
        assert sub == {0}, "ell=2 with a non-trivial sub-generated group"
        assert full == 4, "ell=2 with |S_M| != 4"
    return ell


# -- LU-inequivalence by Pauli letter constraints ----------------------------


@dataclass(frozen=True)
class ScanResult:
    """Outcome of a letter-constraint scan.

    ``inequivalent`` is a proof of LU-inequivalence; ``False`` only means the
    scan found nothing.
    """

    inequivalent: bool
    reason: str = ""
    qubit: int | None = None
    marginals: tuple = ()
    letters: tuple = ()
    pairs_checked: int = 0

    def describe(self) -> str:
        if not self.inequivalent:
            return f"inconclusive after {self.pairs_checked} constraint pairs"
        if self.reason == "letters":
            (a, b), (c, d) = self.letters
            ms = " and ".join("{" + ",".join(str(v + 1) for v in bits(m)) + "}" for m in self.marginals)
            return f"qubit {self.qubit + 1}: {a}->{b} vs {c}->{d} from marginals {ms}"
        return self.reason


def letter_constraint_scan(pairs: Iterable[tuple]) -> ScanResult:
    """Look for a qubit whose Pauli letters cannot be related by one unitary.

    ``pairs`` yields ``(marginal, s, t)`` where the only non-trivial elements
    of the two reduced stabilizers on ``marginal`` are ``s`` and ``t``. A local
    unitary must send the letter of ``s`` at each qubit to the letter of ``t``
    there, up to phase, and distinct letters to distinct letters.
    """
    forward: dict = {}
    backward: dict = {}
    count = 0
    for marginal, s, t in pairs:
        count += 1
        for q in range(s.n):
            a, b = s.letter(q), t.letter(q)
            if (a == "I") != (b == "I"):
                return ScanResult(True, "letters", q, (marginal, marginal), ((a, b), ("I", "I")), count)
            if a == "I":
                continue
            fw = forward.setdefault(q, {})
            bw = backward.setdefault(q, {})
            if a in fw and fw[a][0] != b:
                prev_b, prev_m = fw[a]
                return ScanResult(True, "letters", q, (prev_m, marginal), ((a, prev_b), (a, b)), count)
            if b in bw and bw[b][0] != a:
                prev_a, prev_m = bw[b]
                return ScanResult(True, "letters", q, (prev_m, marginal), ((prev_a, b), (a, b)), count)
            fw[a] = (b, marginal)
            bw[b] = (a, marginal)
    return ScanResult(False, pairs_checked=count)


def _subsets_upto(n: int, kmax: int) -> Iterator[int]:
    for k in range(1, kmax + 1):
        for combo in itertools.combinations(range(n), k):
            yield sum(1 << v for v in combo)


def lu_inequivalence_scan(g1: Graph, g2: Graph, kmax: int = 4) -> ScanResult:
    """Labeled LU-inequivalence test from marginal dimensions and one-element reduced stabilizers."""
    if g1.n != g2.n:
        raise ValueError("graphs have different node counts")
    if not 1 <= kmax <= 8:
        raise ValueError("kmax must be in 1..8")
    kmax = min(kmax, g1.n - 1) if g1.n > 1 else 1
    subsets = list(_subsets_upto(g1.n, kmax))
    for m in subsets:
        d1, d2 = _dim_unchecked(g1.adj, m), _dim_unchecked(g2.adj, m)
        if d1 != d2:
            return ScanResult(True, f"marginal dimensions differ on {_fmt(m)}: {d1} vs {d2}", marginals=(m,))

    def pairs():
        for m in subsets:
            if _dim_unchecked(g1.adj, m) != 1:
                continue
            (l1,) = [L for L in _gen_sets(g1, m) if L]
            (l2,) = [L for L in _gen_sets(g2, m) if L]
            yield m, _element_fast(g1, l1), _element_fast(g2, l2)

    return letter_constraint_scan(pairs())


def _fmt(m: int) -> str:
    return "{" + ",".join(str(v + 1) for v in bits(m)) + "}"


def dimension_preserving_maps(g1: Graph, g2: Graph, kmax: int) -> Iterator[tuple]:
    """Node bijections ``p`` with ``d_M(g1) = d_{p(M)}(g2)`` for every ``|M| <= kmax``."""
    n = g1.n
    if g2.n != n:
        raise ValueError("graphs have different node counts")
    kmax = max(1, min(kmax, n - 1))
    d1 = {m: _dim_unchecked(g1.adj, m) for m in _subsets_upto(n, kmax)}
    d2 = {m: _dim_unchecked(g2.adj, m) for m in _subsets_upto(n, kmax)}
    perm = [-1] * n

    def consistent(v):
        # every marginal whose largest node is v, over already placed nodes
        placed = list(range(v))
        for k in range(0, kmax):
            for combo in itertools.combinations(placed, k):
                m1 = (1 << v) | sum(1 << u for u in combo)
                m2 = (1 << perm[v]) | sum(1 << perm[u] for u in combo)
                if d1[m1] != d2[m2]:
                    return False
        return True

    def extend(v, used):
        if v == n:
            yield tuple(perm)
            return
        for w in range(n):
            if used >> w & 1:
                continue
            perm[v] = w
            if consistent(v):
                yield from extend(v + 1, used | (1 << w))
        perm[v] = -1

    yield from extend(0, 0)


@dataclass(frozen=True)
class ClassScanResult:
    inequivalent: bool
    maps_checked: int
    open_map: tuple | None = None
    results: tuple = ()


def class_inequivalence_scan(g1: Graph, g2: Graph, kmax: int = 4, max_maps: int = 10**6) -> ClassScanResult:
    """Permutation-aware scan: refutes every relabeling of ``g1`` that matches ``g2`` dimension-wise."""
    results = []
    for count, perm in enumerate(dimension_preserving_maps(g1, g2, kmax), 1):
        if count > max_maps:
            return ClassScanResult(False, count - 1, perm, tuple(results))
        res = lu_inequivalence_scan(g1.permute(perm), g2, kmax)
        if not res.inequivalent:
            return ClassScanResult(False, count, perm, tuple(results))
        results.append((perm, res))
    return ClassScanResult(True, len(results), None, tuple(results))
