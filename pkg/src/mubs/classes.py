"""
Bases, basis vectors, MUB sets and the exceptions of this library.

Amplitudes are stored in exponent form: a phase vector of dimension d over conductor n
has entries zeta_n**e / sqrt(d). Computational vectors are unit vectors and carry only
their index.
"""

from __future__ import annotations

import dataclasses
from collections.abc import Iterator, Sequence
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Literal

import numpy as np

type Kind = Literal["phase", "computational"]


class MubError(ValueError):
    """Extra Exception so that user code can filter exceptions specific to this lib."""

    pass


class ContextMismatch(MubError):
    """Operands live in different rings, fields or dimensions."""


class ReducibleModulus(MubError):
    pass


class PreconditionError(MubError):
    pass


class ZeroDivision(MubError, ZeroDivisionError):
    pass


class FormatError(MubError):
    """Input that does not follow the export schema."""


@dataclass(frozen=True, slots=True)
class BasisVector:
    """
    One vector of a basis.

    >>> v = BasisVector.phase([0, 1], 4)
    >>> v.amplitudes().round(6).tolist()
    [(0.707107+0j), 0.707107j]
    >>> BasisVector.unit(1, 3).amplitudes().tolist()
    [0j, (1+0j), 0j]
    """

    dimension: int
    conductor: int
    exponents: tuple[int, ...] | None = None
    index: int | None = None

    def __post_init__(self):
        if (self.exponents is None) == (self.index is None):
            raise PreconditionError("a vector is either a phase vector or a unit vector")
        if self.exponents is not None:
            if len(self.exponents) != self.dimension:
                raise PreconditionError(f"{len(self.exponents)} exponents for dimension {self.dimension}")
            if any(not 0 <= e < self.conductor for e in self.exponents):
                raise PreconditionError(f"exponents must lie in [0, {self.conductor})")
        elif not 0 <= self.index < self.dimension:
            raise PreconditionError(f"unit index {self.index} out of range")

    @classmethod
    def phase(cls, exponents: Sequence[int], conductor: int) -> BasisVector:
        return cls(len(exponents), conductor, tuple(int(e) % conductor for e in exponents))

    @classmethod
    def unit(cls, index: int, dimension: int) -> BasisVector:
        return cls(dimension, 1, index=index)

    @property
    def is_computational(self) -> bool:
        return self.index is not None

    def amplitudes(self) -> np.ndarray:
        if self.index is not None:
            out = np.zeros(self.dimension, dtype=complex)
            out[self.index] = 1
            return out
        e = np.asarray(self.exponents)
        return np.exp(2j * np.pi * e / self.conductor) / np.sqrt(self.dimension)

    def lifted(self, conductor: int) -> BasisVector:
        """The same vector written over a multiple of its conductor."""
        if self.index is not None:
            return self
        assert conductor % self.conductor == 0
        k = conductor // self.conductor
        return BasisVector(self.dimension, conductor, tuple(e * k for e in self.exponents))


@dataclass(frozen=True, slots=True)
class Basis:
    """An orthonormal basis given by d vectors of one kind."""

    label: str
    kind: Kind
    vectors: tuple[BasisVector, ...]
    conductor: int = 1

    @classmethod
    def phase(cls, label: str, exponents, conductor: int) -> Basis:
        """Rows of `exponents` are the vectors."""
        rows = np.asarray(exponents, dtype=np.int64) % conductor
        return cls(label, "phase", tuple(BasisVector.phase(r.tolist(), conductor) for r in rows), conductor)

    @classmethod
    def computational(cls, label: str, dimension: int) -> Basis:
        return cls(label, "computational", tuple(BasisVector.unit(k, dimension) for k in range(dimension)))

    @property
    def dimension(self) -> int:
        return self.vectors[0].dimension

    def __len__(self):
        return len(self.vectors)

    def __iter__(self) -> Iterator[BasisVector]:
        return iter(self.vectors)

    def __getitem__(self, k: int) -> BasisVector:
        return self.vectors[k]

    def exponent_matrix(self, conductor: int | None = None) -> np.ndarray:
        """Exponents as a (d, d) array, one row per vector, optionally lifted."""
        assert self.kind == "phase"
        n = conductor or self.conductor
        assert n % self.conductor == 0
        return np.array([v.exponents for v in self.vectors], dtype=np.int64) * (n // self.conductor)

    def to_complex(self) -> np.ndarray:
        """Rows are the vectors."""
        return np.array([v.amplitudes() for v in self.vectors])

    def as_matrix(self):
        """Exact matrix with the vectors as columns."""
        from .cyclo import CycloMatrix

        d = self.dimension
        if self.kind == "computational":
            return CycloMatrix.identity(d)
        return CycloMatrix.monomial(self.exponent_matrix().T, self.conductor, Fraction(1, d))

    def __str__(self):
        return f"{self.label} ({self.kind}, {len(self)} vectors)"


@dataclass(frozen=True, slots=True)
class MubSet:
    """
    A labelled collection of bases from one construction.

    `claimed` lists the indices of bases advertised to be pairwise unbiased;
    it covers every basis when `completeness_claimed` is set.
    """

    dimension: int
    conductor: int
    method: str
    bases: tuple[Basis, ...]
    completeness_claimed: bool
    claimed: tuple[int, ...]
    field: dict | None = None
    ring: dict | None = None
    params: dict = dataclasses.field(default_factory=dict)

    def __post_init__(self):
        assert all(b.dimension == self.dimension for b in self.bases)
        assert all(self.conductor % b.conductor == 0 for b in self.bases)
        assert all(0 <= i < len(self.bases) for i in self.claimed)

    def __len__(self):
        return len(self.bases)

    def __iter__(self) -> Iterator[Basis]:
        return iter(self.bases)

    def __getitem__(self, key: int | str) -> Basis:
        if isinstance(key, str):
            for b in self.bases:
                if b.label == key:
                    return b
            raise KeyError(key)
        return self.bases[key]

    @property
    def labels(self) -> list[str]:
        return [b.label for b in self.bases]

    def same_bases(self, other: MubSet) -> bool:
        """Vector-for-vector equality, labels and metadata ignored."""
        if len(self) != len(other):
            return False
        n = lcm(self.conductor, other.conductor)
        return all(
            a.kind == b.kind and [v.lifted(n) for v in a] == [v.lifted(n) for v in b]
            for a, b in zip(self.bases, other.bases)
        )

    def __str__(self):
        return f"MubSet({self.method}, d={self.dimension}, {len(self)} bases, conductor {self.conductor})"
