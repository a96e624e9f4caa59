"""n-qubit Pauli operators as GF(2) symplectic bit vectors, phases dropped.

A Pauli is stored as two length-n bit vectors: x_bits marks X components,
z_bits marks Z components, and a qubit with both bits set carries Y.
Everything downstream (correctability, distance) is insensitive to phases,
so they are not tracked at all.
"""

from __future__ import annotations

import numpy as np

_CHAR_TO_BITS = {"I": (0, 0), "X": (1, 0), "Y": (1, 1), "Z": (0, 1)}
_BITS_TO_CHAR = {(0, 0): "I", (1, 0): "X", (1, 1): "Y", (0, 1): "Z"}


class DimensionMismatchError(ValueError):
    """Two Paulis of different qubit counts were combined."""


class Pauli:
    """Immutable n-qubit Pauli (up to phase)."""

    __slots__ = ("n", "x_bits", "z_bits")

    def __init__(self, x_bits, z_bits):
        x = np.asarray(x_bits, dtype=np.uint8) % 2
        z = np.asarray(z_bits, dtype=np.uint8) % 2
        if x.ndim != 1 or z.ndim != 1 or x.shape != z.shape:
            raise ValueError("x_bits and z_bits must be 1D vectors of equal length")
        x = x.copy()
        z = z.copy()
        x.setflags(write=False)
        z.setflags(write=False)
        object.__setattr__(self, "n", int(x.shape[0]))
        object.__setattr__(self, "x_bits", x)
        object.__setattr__(self, "z_bits", z)

    def __setattr__(self, name, value):
        raise AttributeError("Pauli is immutable")

    @classmethod
    def identity(cls, n: int) -> "Pauli":
        return cls(np.zeros(n, dtype=np.uint8), np.zeros(n, dtype=np.uint8))

    @classmethod
    def from_string(cls, s: str) -> "Pauli":
        """Parse a string over {I, X, Y, Z}, one character per qubit."""
        s = s.strip().upper()
        n = len(s)
        x = np.zeros(n, dtype=np.uint8)
        z = np.zeros(n, dtype=np.uint8)
        for i, ch in enumerate(s):
            if ch not in _CHAR_TO_BITS:
                raise ValueError(f"illegal Pauli character {ch!r} at position {i}")
            x[i], z[i] = _CHAR_TO_BITS[ch]
        return cls(x, z)

    @classmethod
    def from_symplectic(cls, vec) -> "Pauli":
        """Build from a length-2n vector (x part | z part)."""
        v = np.asarray(vec, dtype=np.uint8) % 2
        if v.ndim != 1 or v.shape[0] % 2:
            raise ValueError("symplectic vector must have even length")
        n = v.shape[0] // 2
        return cls(v[:n], v[n:])

    def to_string(self) -> str:
        return "".join(
            _BITS_TO_CHAR[(int(self.x_bits[i]), int(self.z_bits[i]))] for i in range(self.n)
        )

    def symplectic(self) -> np.ndarray:
        """Length-2n row (x part | z part)."""
        return np.concatenate([self.x_bits, self.z_bits])

    @property
    def support(self) -> frozenset[int]:
        return frozenset(np.flatnonzero(self.x_bits | self.z_bits).tolist())

    @property
    def weight(self) -> int:
        return int(np.count_nonzero(self.x_bits | self.z_bits))

    def commutes_with(self, other: "Pauli") -> bool:
        return symplectic_product(self, other) == 0

    def __mul__(self, other: "Pauli") -> "Pauli":
        if self.n != other.n:
            raise DimensionMismatchError(f"qubit counts differ: {self.n} vs {other.n}")
        return Pauli(self.x_bits ^ other.x_bits, self.z_bits ^ other.z_bits)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Pauli):
            return NotImplemented
        return (
            self.n == other.n
            and np.array_equal(self.x_bits, other.x_bits)
            and np.array_equal(self.z_bits, other.z_bits)
        )

    def __hash__(self) -> int:
        return hash((self.n, self.x_bits.tobytes(), self.z_bits.tobytes()))

    def __repr__(self) -> str:
        return f"Pauli({self.to_string()!r})"


def symplectic_product(p: Pauli, q: Pauli) -> int:
    """0 iff p and q commute; computed as sum_i p.x[i] q.z[i] + p.z[i] q.x[i] mod 2."""
    if p.n != q.n:
        raise DimensionMismatchError(f"qubit counts differ: {p.n} vs {q.n}")
    return int((np.dot(p.x_bits, q.z_bits) + np.dot(p.z_bits, q.x_bits)) % 2)
