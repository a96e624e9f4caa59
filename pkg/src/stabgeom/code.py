"""Stabilizer codes and the exact correctability / distance oracles.

A code is held as its generator list; rank and logical count come from
GF(2) elimination on the (m x 2n) symplectic generator matrix.

Correctability of an erasure set E uses the standard stabilizer criterion:
E is correctable iff every Pauli supported inside E that commutes with all
generators already lies in the stabilizer group.  That is a rank condition,

    dim {Paulis on E commuting with all generators}
        == dim {stabilizer elements supported inside E}

and both dimensions reduce to matrix ranks.  An independent brute-force
oracle (`correctable_by_enumeration`) enumerates all 4^|E| Paulis on E and
is used in tests to guard the rank criterion.
"""

from __future__ import annotations

import itertools
from typing import Iterable, Optional

import numpy as np

from . import gf2
from .pauli import Pauli


class InvalidCodeError(ValueError):
    """Generator list does not define a stabilizer group."""


class NoLogicalQubitsError(ValueError):
    """Distance is undefined for a code with k = 0."""


class StabilizerCode:
    """An n-qubit stabilizer code given by an ordered generator list.

    Generators are validated for pairwise commutation at construction;
    a violation is a hard error naming the offending pair.  Instances are
    immutable and safe to share across threads.
    """

    def __init__(self, n: int, generators: Iterable[Pauli]):
        gens = tuple(generators)
        if n < 1:
            raise ValueError("n must be at least 1")
        for i, g in enumerate(gens):
            if g.n != n:
                raise InvalidCodeError(f"generator {i} acts on {g.n} qubits, expected {n}")
            if g.weight == 0:
                raise InvalidCodeError(f"generator {i} is the identity")
        mat = (
            np.array([g.symplectic() for g in gens], dtype=np.uint8)
            if gens
            else np.zeros((0, 2 * n), dtype=np.uint8)
        )
        # pairwise symplectic products in one shot: G (swapped halves) G^T
        if len(gens) > 1:
            swapped = np.concatenate([mat[:, n:], mat[:, :n]], axis=1)
            comm = (mat @ swapped.T) % 2
            bad = np.argwhere(np.triu(comm, k=1))
            if bad.size:
                i, j = int(bad[0][0]), int(bad[0][1])
                raise InvalidCodeError(
                    f"generators {i} and {j} anticommute: "
                    f"{gens[i].to_string()} vs {gens[j].to_string()}"
                )
        self._n = n
        self._generators = gens
        self._matrix = mat
        self._matrix.setflags(write=False)
        self._rref, self._pivots = gf2.row_reduce(mat) if gens else (mat, [])
        self._rref.setflags(write=False)

    @property
    def n(self) -> int:
        return self._n

    @property
    def generators(self) -> tuple[Pauli, ...]:
        return self._generators

    @property
    def matrix(self) -> np.ndarray:
        """Generator matrix, one (x part | z part) row per generator."""
        return self._matrix

    @property
    def rank(self) -> int:
        return len(self._pivots)

    @property
    def k(self) -> int:
        """Logical qubit count n - rank."""
        return self._n - self.rank

    def contains(self, p: Pauli) -> bool:
        """Membership in the stabilizer group (phases ignored), by rank augmentation."""
        if p.n != self._n:
            raise ValueError("qubit count mismatch")
        return gf2.in_row_space(self._rref, self._pivots, p.symplectic())

    def __repr__(self) -> str:
        return f"StabilizerCode(n={self._n}, m={len(self._generators)}, k={self.k})"


def logical_count(code: StabilizerCode) -> int:
    """k = n - rank of the generator matrix over GF(2)."""
    return code.k


def _check_erasure(code: StabilizerCode, qubits: Iterable[int]) -> list[int]:
    e = sorted(set(int(q) for q in qubits))
    if e and (e[0] < 0 or e[-1] >= code.n):
        raise ValueError(f"erasure set contains out-of-range qubit (n={code.n}): {e}")
    return e


def is_correctable(code: StabilizerCode, qubits: Iterable[int]) -> bool:
    """True iff erasing the given qubits is recoverable.

    Rank criterion: the space of Paulis on E commuting with every generator
    has dimension 2|E| - rank(B) where row g of B is (z_g|E, x_g|E); the
    stabilizer elements inside E number rank(G) - rank(G restricted to the
    complement columns).  E is correctable iff the dimensions agree.
    """
    e = _check_erasure(code, qubits)
    if not e:
        return True
    n = code.n
    t = len(e)
    mat = code.matrix
    e_arr = np.array(e, dtype=int)
    b = np.concatenate([mat[:, n + e_arr], mat[:, e_arr]], axis=1)
    dim_commutant = 2 * t - gf2.rank(b)
    out = np.array(sorted(set(range(n)) - set(e)), dtype=int)
    cols = np.concatenate([out, n + out]) if out.size else np.array([], dtype=int)
    dim_inside = code.rank - (gf2.rank(mat[:, cols]) if cols.size else 0)
    return dim_commutant == dim_inside


def correctable_by_enumeration(code: StabilizerCode, qubits: Iterable[int]) -> bool:
    """Brute-force oracle: enumerate all 4^|E| Paulis supported on E.

    A non-identity Pauli on E that commutes with every generator but is not
    in the stabilizer group witnesses non-correctability.  Independent of
    the rank criterion; intended for cross-checks at small |E|.
    """
    e = _check_erasure(code, qubits)
    if not e:
        return True
    n = code.n
    t = len(e)
    mat = code.matrix
    count = 4**t
    paulis = np.zeros((count, 2 * n), dtype=np.uint8)
    idx = np.arange(count)
    for pos, q in enumerate(e):
        digit = (idx >> (2 * pos)) & 3
        paulis[:, q] = digit & 1
        paulis[:, n + q] = (digit >> 1) & 1
    if len(code.generators):
        swapped = np.concatenate([mat[:, n:], mat[:, :n]], axis=1)
        comm = (paulis @ swapped.T) % 2
        commuting = np.flatnonzero(~comm.any(axis=1))
    else:
        commuting = idx
    for i in commuting:
        if i == 0:
            continue
        if not gf2.in_row_space(code._rref, code._pivots, paulis[i]):
            return False
    return True


def noncorrectable_witness(code: StabilizerCode, qubits: Iterable[int]) -> Optional[Pauli]:
    """A logical operator supported inside the erasure set, or None if correctable.

    The commutant basis is computed from the nullspace of B; since the
    stabilizer part is a subspace, some basis vector must fall outside it
    whenever the dimensions differ.
    """
    e = _check_erasure(code, qubits)
    if not e:
        return None
    n = code.n
    mat = code.matrix
    e_arr = np.array(e, dtype=int)
    b = np.concatenate([mat[:, n + e_arr], mat[:, e_arr]], axis=1)
    for local in gf2.null_space(b):
        vec = np.zeros(2 * n, dtype=np.uint8)
        vec[e_arr] = local[: len(e)]
        vec[n + e_arr] = local[len(e) :]
        if vec.any() and not gf2.in_row_space(code._rref, code._pivots, vec):
            return Pauli.from_symplectic(vec)
    return None


def min_distance(code: StabilizerCode, weight_cap: Optional[int] = None) -> Optional[int]:
    """Size of the smallest non-correctable erasure set, or None past the cap.

    Erasure sets are scanned in increasing cardinality, lexicographically
    within each size.  weight_cap defaults to n (full search).
    """
    result = distance_search(code, weight_cap)
    return result.distance


class DistanceResult:
    """Brute-force distance outcome with the first non-correctable witness."""

    __slots__ = ("distance", "erasure", "logical", "cap")

    def __init__(self, distance, erasure, logical, cap):
        self.distance = distance
        self.erasure = erasure
        self.logical = logical
        self.cap = cap

    @property
    def exceeded_cap(self) -> bool:
        return self.distance is None


def distance_search(code: StabilizerCode, weight_cap: Optional[int] = None) -> DistanceResult:
    """min_distance plus the witness erasure set and a logical operator on it."""
    if code.k == 0:
        raise NoLogicalQubitsError("distance undefined: code encodes no logical qubits")
    cap = code.n if weight_cap is None else int(weight_cap)
    if cap < 1:
        raise ValueError("weight_cap must be at least 1")
    cap = min(cap, code.n)
    for size in range(1, cap + 1):
        for combo in itertools.combinations(range(code.n), size):
            if not is_correctable(code, combo):
                witness = noncorrectable_witness(code, combo)
                return DistanceResult(size, tuple(combo), witness, cap)
    return DistanceResult(None, None, None, cap)
