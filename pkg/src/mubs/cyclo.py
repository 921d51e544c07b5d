"""
Exact arithmetic in cyclotomic integer rings Z[zeta_n].

CycloInt is a single element, reduced modulo the n-th cyclotomic polynomial so that
equality is coefficient comparison. CycloMatrix is an exact matrix whose entries are
integer combinations of n-th roots of unity times one common real scale sqrt(norm2);
that scale is how the 1/sqrt(d) of every basis vector is carried without irrationals.
"""

from __future__ import annotations

import logging
from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt, lcm
from typing import Literal

import numpy as np

from . import polynomials as poly
from .classes import ContextMismatch, PreconditionError

log = logging.getLogger(__name__)

type Op = Literal["add", "sub", "mul", "neg", "conj", "root_power"]

# above this, tensor products switch from int64 to python ints
_INT64_SAFE = 2**62


class CycloContext:
    """Conductor n together with the reduction data for Z[zeta_n]."""

    __slots__ = ["conductor", "reduction_polynomial", "degree", "_fold"]

    def __init__(self, n: int):
        if n < 1:
            raise PreconditionError(f"conductor must be positive, got {n}")
        self.conductor = n
        self.reduction_polynomial = _cyclotomic_polynomial(n)
        self.degree = len(self.reduction_polynomial) - 1
        # row k holds zeta^k written in the canonical basis 1, zeta, ..., zeta^(deg-1)
        fold = np.zeros((n, self.degree), dtype=np.int64)
        phi = np.array(self.reduction_polynomial[:-1], dtype=np.int64)
        row = np.zeros(self.degree, dtype=np.int64)
        row[0] = 1
        for k in range(n):
            fold[k] = row
            # multiply by zeta: shift up, then replace zeta^deg by -(lower terms of Phi_n)
            top = row[-1]
            row = np.concatenate(([0], row[:-1])) - top * phi
        self._fold = fold

    def __repr__(self):
        return f"CycloContext({self.conductor})"

    def __eq__(self, other):
        return isinstance(other, CycloContext) and other.conductor == self.conductor

    def __hash__(self):
        return hash(("cyclo", self.conductor))

    def reduce(self, counts) -> np.ndarray:
        """Canonical coefficients of sum_k counts[..., k] zeta^k; the last axis is folded mod n first."""
        counts = np.asarray(counts)
        n = self.conductor
        if counts.shape[-1] != n:
            folded = np.zeros(counts.shape[:-1] + (n,), dtype=counts.dtype)
            for k in range(counts.shape[-1]):
                folded[..., k % n] += counts[..., k]
            counts = folded
        if counts.dtype == object:
            return counts.dot(self._fold.astype(object))
        return counts @ self._fold

    def zero(self) -> CycloInt:
        return CycloInt(self, (0,) * self.degree)

    def integer(self, c: int) -> CycloInt:
        return CycloInt(self, (c,) + (0,) * (self.degree - 1))

    def root(self, k: int) -> CycloInt:
        """zeta_n ** k in canonical form."""
        return CycloInt(self, tuple(int(c) for c in self._fold[k % self.conductor]))

    def from_counts(self, counts) -> CycloInt:
        """Element from group-ring coefficients over zeta^0 .. zeta^(n-1)."""
        return CycloInt(self, tuple(int(c) for c in self.reduce(np.asarray(counts, dtype=object))))

    def from_exponents(self, exponents) -> CycloInt:
        """sum_j zeta^(exponents[j])."""
        counts = np.bincount(np.asarray(exponents, dtype=np.int64) % self.conductor, minlength=self.conductor)
        return self.from_counts(counts)


def _cyclotomic_polynomial(n: int) -> poly.Poly:
    # x^n - 1 divided exactly by Phi_m for every proper divisor m
    f: poly.Poly = (-1,) + (0,) * (n - 1) + (1,)
    for m in range(1, n):
        if n % m == 0:
            f = poly.exact_div(f, cyclo_context(m).reduction_polynomial)
    return f


@lru_cache(maxsize=None)
def cyclo_context(n: int) -> CycloContext:
    """
    Shared context for conductor n.

    >>> cyclo_context(4).reduction_polynomial
    (1, 0, 1)
    >>> cyclo_context(1).reduction_polynomial
    (-1, 1)
    """
    return CycloContext(n)


class CycloInt:
    """
    An element of Z[zeta_n] in canonical form.

    >>> z4 = cyclo_context(4)
    >>> z4.root(2)
    CycloInt(4, (-1, 0))
    """

    __slots__ = ["context", "coeffs"]

    def __init__(self, context: CycloContext, coeffs: tuple[int, ...]):
        assert len(coeffs) == context.degree, "coefficients must be reduced"
        self.context = context
        self.coeffs = coeffs

    @property
    def conductor(self) -> int:
        return self.context.conductor

    def _coerce(self, other) -> CycloInt:
        if isinstance(other, int):
            return self.context.integer(other)
        if not isinstance(other, CycloInt):
            return NotImplemented
        if other.context != self.context:
            raise ContextMismatch(f"Z[zeta_{self.conductor}] vs Z[zeta_{other.conductor}]")
        return other

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return CycloInt(self.context, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return CycloInt(self.context, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        product = poly.mul(self.coeffs, other.coeffs)
        counts = np.zeros(self.conductor, dtype=object)
        for k, c in enumerate(product):
            counts[k % self.conductor] += c
        return self.context.from_counts(counts)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        assert e >= 0
        result = self.context.integer(1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def conj(self) -> CycloInt:
        """Complex conjugate: zeta^k maps to zeta^(n-k), applied before reduction."""
        n = self.conductor
        counts = np.zeros(n, dtype=object)
        for k, c in enumerate(self.coeffs):
            counts[-k % n] += c
        return self.context.from_counts(counts)

    def lift(self, m: int) -> CycloInt:
        """The same number inside Z[zeta_m], m a multiple of the conductor."""
        n = self.conductor
        if m % n:
            raise ContextMismatch(f"{m} is not a multiple of {n}")
        counts = np.zeros(m, dtype=object)
        for k, c in enumerate(self.coeffs):
            counts[k * (m // n)] += c
        return cyclo_context(m).from_counts(counts)

    def rational(self) -> int | None:
        """The integer value if the element lies in Z, else None."""
        if any(self.coeffs[1:]):
            return None
        return self.coeffs[0]

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __complex__(self):
        n = self.conductor
        roots = np.exp(2j * np.pi * np.arange(self.context.degree) / n)
        return complex(np.dot(np.array(self.coeffs, dtype=float), roots))

    def __abs__(self):
        return abs(complex(self))

    def __eq__(self, other):
        if isinstance(other, int):
            return self.coeffs == self.context.integer(other).coeffs
        if isinstance(other, CycloInt):
            return self.context == other.context and self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash((self.conductor, self.coeffs))

    def __repr__(self):
        return f"CycloInt({self.conductor}, {self.coeffs})"


def cyclo_arith(op: Op, *args, k: int | None = None) -> CycloInt:
    """
    Dispatch one ring operation by name.

    >>> z3 = cyclo_context(3)
    >>> cyclo_arith("add", cyclo_arith("add", z3.root(0), z3.root(1)), z3.root(2)).is_zero()
    True
    """
    match op:
        case "add":
            a, b = args
            return a + b
        case "sub":
            a, b = args
            return a - b
        case "mul":
            a, b = args
            return a * b
        case "neg":
            (a,) = args
            return -a
        case "conj":
            (a,) = args
            return a.conj()
        case "root_power":
            (ctx,) = args
            assert k is not None, "root_power needs k"
            return ctx.root(k)
        case _:
            raise PreconditionError(f"unknown operation {op!r}")


def cyclo_to_complex(z: CycloInt) -> complex:
    return complex(z)


def rational_sqrt(q: Fraction) -> Fraction | None:
    """sqrt(q) if it is rational.

    >>> rational_sqrt(Fraction(9, 4))
    Fraction(3, 2)
    >>> rational_sqrt(Fraction(2)) is None
    True
    """
    if q < 0:
        return None
    a, b = isqrt(q.numerator), isqrt(q.denominator)
    if a * a == q.numerator and b * b == q.denominator:
        return Fraction(a, b)
    return None


class CycloMatrix:
    """
    Exact matrix raw * sqrt(norm2) with raw over the group ring of zeta_n.

    `raw` has shape (rows, cols, n); raw[i, j, k] counts zeta^k in entry (i, j).
    The group-ring form is not canonical, comparisons reduce first.
    """

    __slots__ = ["raw", "conductor", "norm2"]

    def __init__(self, raw: np.ndarray, conductor: int, norm2: Fraction | int = 1):
        assert raw.ndim == 3 and raw.shape[2] == conductor
        self.raw = raw
        self.conductor = conductor
        self.norm2 = Fraction(norm2)

    @classmethod
    def monomial(cls, exponents, conductor: int, norm2: Fraction | int = 1, mask=None) -> CycloMatrix:
        """Entries zeta^exponents where mask is true, zero elsewhere."""
        exponents = np.asarray(exponents, dtype=np.int64) % conductor
        rows, cols = exponents.shape
        raw = np.zeros((rows, cols, conductor), dtype=np.int64)
        i, j = np.indices((rows, cols))
        if mask is None:
            mask = np.ones((rows, cols), dtype=bool)
        raw[i[mask], j[mask], exponents[mask]] = 1
        return cls(raw, conductor, norm2)

    @classmethod
    def identity(cls, d: int, conductor: int = 1) -> CycloMatrix:
        return cls.monomial(np.zeros((d, d), dtype=np.int64), conductor, 1, mask=np.eye(d, dtype=bool))

    @classmethod
    def diagonal(cls, exponents, conductor: int, norm2: Fraction | int = 1) -> CycloMatrix:
        d = len(exponents)
        exps = np.zeros((d, d), dtype=np.int64)
        exps[np.arange(d), np.arange(d)] = exponents
        return cls.monomial(exps, conductor, norm2, mask=np.eye(d, dtype=bool))

    @classmethod
    def permutation(cls, targets, conductor: int = 1) -> CycloMatrix:
        """Matrix with a 1 at (targets[j], j) for each column j."""
        d = len(targets)
        mask = np.zeros((d, d), dtype=bool)
        mask[np.asarray(targets), np.arange(d)] = True
        return cls.monomial(np.zeros((d, d), dtype=np.int64), conductor, 1, mask=mask)

    @property
    def shape(self) -> tuple[int, int]:
        return self.raw.shape[0], self.raw.shape[1]

    def lift(self, m: int) -> CycloMatrix:
        n = self.conductor
        if m == n:
            return self
        if m % n:
            raise ContextMismatch(f"{m} is not a multiple of {n}")
        raw = np.zeros(self.shape + (m,), dtype=self.raw.dtype)
        raw[:, :, :: m // n] = self.raw
        return CycloMatrix(raw, m, self.norm2)

    def _common(self, other: CycloMatrix) -> tuple[CycloMatrix, CycloMatrix]:
        m = lcm(self.conductor, other.conductor)
        return self.lift(m), other.lift(m)

    def __matmul__(self, other: CycloMatrix) -> CycloMatrix:
        if not isinstance(other, CycloMatrix):
            return NotImplemented
        if self.shape[1] != other.shape[0]:
            raise PreconditionError(f"shape mismatch {self.shape} @ {other.shape}")
        a, b = self._common(other)
        n = a.conductor
        # circulant view: b_circ[l, j, k, s] = b[l, j, (k - s) mod n]
        idx = (np.arange(n)[:, None] - np.arange(n)[None, :]) % n
        bound = int(np.abs(a.raw).max(initial=0)) * int(np.abs(b.raw).max(initial=0)) * a.shape[1] * n
        dtype = np.int64 if bound < _INT64_SAFE else object
        b_circ = b.raw.astype(dtype)[:, :, idx]
        raw = np.tensordot(a.raw.astype(dtype), b_circ, axes=([1, 2], [0, 3]))
        return CycloMatrix(raw, n, a.norm2 * b.norm2)

    def __pow__(self, e: int) -> CycloMatrix:
        assert e >= 0 and self.shape[0] == self.shape[1]
        result = CycloMatrix.identity(self.shape[0], self.conductor)
        base = self
        while e:
            if e & 1:
                result = result @ base
            base = base @ base
            e >>= 1
        return result

    def _same_scale(self, other: CycloMatrix) -> tuple[CycloMatrix, CycloMatrix]:
        a, b = self._common(other)
        if a.norm2 != b.norm2:
            raise PreconditionError("matrices with different scales cannot be added exactly")
        return a, b

    def __add__(self, other: CycloMatrix) -> CycloMatrix:
        a, b = self._same_scale(other)
        return CycloMatrix(a.raw + b.raw, a.conductor, a.norm2)

    def __sub__(self, other: CycloMatrix) -> CycloMatrix:
        a, b = self._same_scale(other)
        return CycloMatrix(a.raw - b.raw, a.conductor, a.norm2)

    def __neg__(self) -> CycloMatrix:
        return CycloMatrix(-self.raw, self.conductor, self.norm2)

    def times_root(self, k: int) -> CycloMatrix:
        """Multiply every entry by zeta_n^k."""
        return CycloMatrix(np.roll(self.raw, k, axis=2), self.conductor, self.norm2)

    def scaled(self, factor: Fraction | int) -> CycloMatrix:
        """Multiply by sqrt(factor)."""
        return CycloMatrix(self.raw, self.conductor, self.norm2 * factor)

    def dagger(self) -> CycloMatrix:
        n = self.conductor
        raw = self.raw.transpose(1, 0, 2)[:, :, (-np.arange(n)) % n]
        return CycloMatrix(np.ascontiguousarray(raw), n, self.norm2)

    @property
    def H(self) -> CycloMatrix:
        return self.dagger()

    def reduced(self) -> np.ndarray:
        """Canonical coefficients, shape (rows, cols, phi(n))."""
        return cyclo_context(self.conductor).reduce(self.raw)

    def entry(self, i: int, j: int) -> CycloInt:
        """Raw entry (i, j); the actual value is this times sqrt(norm2)."""
        return cyclo_context(self.conductor).from_counts(self.raw[i, j])

    def entry_abs2(self, i: int, j: int) -> Fraction | None:
        """|entry|^2 when it is rational."""
        z = self.entry(i, j)
        r = (z * z.conj()).rational()
        return None if r is None else r * self.norm2

    def trace(self) -> CycloInt:
        """Raw trace; multiply by sqrt(norm2) for the value."""
        d = min(self.shape)
        return cyclo_context(self.conductor).from_counts(self.raw[np.arange(d), np.arange(d)].sum(axis=0))

    def is_zero(self) -> bool:
        return not np.any(self.reduced())

    def __eq__(self, other):
        if not isinstance(other, CycloMatrix):
            return NotImplemented
        if self.shape != other.shape:
            return False
        a, b = self._common(other)
        ra, rb = a.reduced(), b.reduced()
        if a.norm2 == b.norm2:
            return bool(np.array_equal(ra, rb))
        # raw_a * sqrt(a) == raw_b * sqrt(b)  <=>  raw_a * s == raw_b with s = sqrt(a / b)
        s = rational_sqrt(a.norm2 / b.norm2)
        if s is None:
            return not np.any(ra) and not np.any(rb)
        return bool(np.array_equal(ra.astype(object) * s.numerator, rb.astype(object) * s.denominator))

    __hash__ = None

    def to_complex(self) -> np.ndarray:
        n = self.conductor
        roots = np.exp(2j * np.pi * np.arange(n) / n)
        return (self.raw.astype(float) @ roots) * float(self.norm2) ** 0.5

    def __repr__(self):
        return f"CycloMatrix({self.shape[0]}x{self.shape[1]}, n={self.conductor}, norm2={self.norm2})"


def common_conductor(*conductors: int, cap: int | None = None) -> int:
    n = lcm(*conductors)
    if cap is not None and n > cap:
        raise PreconditionError(f"common conductor {n} exceeds the cap {cap}")
    return n


def reduce_exponents(exponents, conductor: int) -> tuple[np.ndarray, int]:
    """Shrink the conductor by the gcd of all exponents.

    >>> e, n = reduce_exponents([4, 2, 0], 6)
    >>> e.tolist(), n
    ([2, 1, 0], 3)
    """
    exponents = np.asarray(exponents, dtype=np.int64) % conductor
    g = gcd(conductor, *(int(e) for e in exponents.ravel()))
    return exponents // g, conductor // g
