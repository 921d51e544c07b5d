"""
Finite fields GF(p^m).

Elements are indexed 0 .. p^m - 1 in lexicographic order of their coefficient vectors
[x_0 x_1 ... x_{m-1}] (x_k the coefficient of xi^k, x_0 most significant), which is the
order used to label computational basis vectors. Multiplication goes through log/exp
tables built from a primitive element, addition through the coefficient digits.
"""

from __future__ import annotations

import logging
from collections.abc import Callable, Sequence
from functools import lru_cache
from typing import Literal

import numpy as np
from sympy import isprime, primefactors

from . import polynomials as poly
from .classes import ContextMismatch, PreconditionError, ReducibleModulus, ZeroDivision
from .cyclo import CycloMatrix

log = logging.getLogger(__name__)

type Order = Literal["lex_polynomial", "monomial"]

MAX_ORDER = 2**20


def default_modulus(p: int, m: int) -> poly.Poly:
    """Lexicographically smallest monic irreducible of degree m over F_p.

    >>> default_modulus(3, 2)
    (1, 0, 1)
    >>> default_modulus(2, 3)
    (1, 0, 1, 1)
    """
    if m == 1:
        return (0, 1)
    for f in poly.monic(p, m):
        if poly.is_irreducible(f, p):
            return f
    raise AssertionError(f"no irreducible polynomial of degree {m} over F_{p}")


class GFField:
    """
    The field F_p[xi]/(modulus).

    >>> F = GFField(3, 2)
    >>> F.order, F.modulus
    (9, (1, 0, 1))
    >>> str(F.primitive_element)
    '11'
    """

    __slots__ = [
        "p",
        "m",
        "order",
        "modulus",
        "digits",
        "_weights",
        "exp_table",
        "log_table",
        "trace_table",
        "primitive_element",
    ]

    def __init__(self, p: int, m: int = 1, modulus: Sequence[int] | None = None):
        if not isprime(p):
            raise PreconditionError(f"{p} is not prime")
        if m < 1:
            raise PreconditionError(f"extension degree must be at least 1, got {m}")
        if p**m > MAX_ORDER:
            raise PreconditionError(f"GF({p}^{m}) is larger than {MAX_ORDER} elements")
        self.p, self.m, self.order = p, m, p**m
        if modulus is None:
            modulus = default_modulus(p, m)
        f = poly.trim(modulus, p)
        if poly.degree(f) != m or f[-1] != 1:
            raise PreconditionError(f"modulus {tuple(modulus)} is not monic of degree {m}")
        if not poly.is_irreducible(f, p):
            raise ReducibleModulus(f"{tuple(modulus)} is reducible over F_{p}")
        self.modulus = f

        q = self.order
        self._weights = p ** np.arange(m - 1, -1, -1, dtype=np.int64)
        self.digits = (np.arange(q, dtype=np.int64)[:, None] // self._weights) % p

        self.primitive_element = self._find_primitive()
        self.exp_table = np.zeros(q - 1, dtype=np.int64)
        self.log_table = np.full(q, -1, dtype=np.int64)
        g = self._poly(self.primitive_element.index)
        power: poly.Poly = (1,)
        for k in range(q - 1):
            i = self._index(power)
            self.exp_table[k] = i
            self.log_table[i] = k
            power = poly.mod(poly.mul(power, g, p), f, p)
        assert power == (1,), "primitive element must have order p^m - 1"
        self.trace_table = self._traces()
        log.debug("GF(%d^%d) modulus=%s primitive=%s", p, m, f, self.primitive_element)

    def _poly(self, index: int) -> poly.Poly:
        return poly.trim(self.digits[index].tolist())

    def _index(self, f: Sequence[int]) -> int:
        coeffs = list(f) + [0] * (self.m - len(f))
        return int(np.dot(coeffs, self._weights))

    def _find_primitive(self) -> GFElement:
        q, p, f = self.order, self.p, self.modulus
        factors = primefactors(q - 1)
        for i in range(1, q):
            g = self._poly(i)
            if all(poly.powmod(g, (q - 1) // r, f, p) != (1,) for r in factors):
                return GFElement(self, i)
        raise AssertionError("multiplicative group is cyclic")

    def _traces(self) -> np.ndarray:
        q, p = self.order, self.p
        out = np.zeros(q, dtype=np.int64)
        logs = self.log_table[1:]
        acc = np.zeros((q - 1, self.m), dtype=np.int64)
        for k in range(self.m):
            acc += self.digits[self.exp_table[(logs * p**k) % (q - 1)]]
        acc %= p
        assert not acc[:, 1:].any(), "trace must land in the prime field"
        # constant term is x_0, the most significant digit
        out[1:] = acc[:, 0]
        return out

    def __call__(self, value: int | Sequence[int]) -> GFElement:
        """An element from a residue (m = 1), or from coefficients c_0, c_1, ... of xi^k."""
        if isinstance(value, (int, np.integer)):
            if self.m == 1:
                return GFElement(self, int(value) % self.p)
            value = [value]
        r = poly.mod(poly.trim(list(value), self.p), self.modulus, self.p)
        return GFElement(self, self._index(r))

    def element(self, index: int) -> GFElement:
        """The element with lexicographic index `index`."""
        if not 0 <= index < self.order:
            raise PreconditionError(f"index {index} outside GF({self.order})")
        return GFElement(self, index)

    @property
    def zero(self) -> GFElement:
        return GFElement(self, 0)

    @property
    def one(self) -> GFElement:
        return self((1,))

    @property
    def x(self) -> GFElement:
        """Class of the indeterminate xi."""
        return self((0, 1))

    def elements(self) -> list[GFElement]:
        return [GFElement(self, i) for i in range(self.order)]

    # vectorized index arithmetic

    def add_idx(self, i, j) -> np.ndarray:
        return ((self.digits[i] + self.digits[j]) % self.p) @ self._weights

    def neg_idx(self, i) -> np.ndarray:
        return ((-self.digits[i]) % self.p) @ self._weights

    def mul_idx(self, i, j) -> np.ndarray:
        i, j = np.broadcast_arrays(np.asarray(i), np.asarray(j))
        out = np.zeros(i.shape, dtype=np.int64)
        nz = (i != 0) & (j != 0)
        out[nz] = self.exp_table[(self.log_table[i[nz]] + self.log_table[j[nz]]) % (self.order - 1)]
        return out

    def trace_idx(self, i) -> np.ndarray:
        return self.trace_table[i]

    def __eq__(self, other):
        return isinstance(other, GFField) and (self.p, self.modulus) == (other.p, other.modulus)

    def __hash__(self):
        return hash(("GF", self.p, self.modulus))

    def __repr__(self):
        return f"GFField({self.p}, {self.m}, modulus={self.modulus})"

    def metadata(self) -> dict:
        return {"p": self.p, "m": self.m, "modulus": list(self.modulus)}


class GFElement:
    """
    An element of a GFField.

    >>> F = GFField(3, 2, (1, 0, 1))
    >>> (F.x * F.x).coeffs
    (2, 0)
    >>> F.x ** 8 == F.one
    True
    """

    __slots__ = ["field", "index"]

    def __init__(self, field: GFField, index: int):
        self.field = field
        self.index = index

    @property
    def coeffs(self) -> tuple[int, ...]:
        return tuple(int(c) for c in self.field.digits[self.index])

    def _check(self, other) -> GFElement:
        if isinstance(other, int):
            return self.field(other) if self.field.m == 1 else self.field((other,))
        if not isinstance(other, GFElement):
            return NotImplemented
        if other.field != self.field:
            raise ContextMismatch(f"{self.field!r} vs {other.field!r}")
        return other

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return GFElement(self.field, int(self.field.add_idx(self.index, other.index)))

    __radd__ = __add__

    def __neg__(self):
        return GFElement(self.field, int(self.field.neg_idx(self.index)))

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __mul__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return GFElement(self.field, int(self.field.mul_idx(self.index, other.index)))

    __rmul__ = __mul__

    def inverse(self) -> GFElement:
        if self.index == 0:
            raise ZeroDivision("zero has no inverse")
        F = self.field
        return GFElement(F, int(F.exp_table[(-F.log_table[self.index]) % (F.order - 1)]))

    def __truediv__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __pow__(self, e: int):
        F = self.field
        if self.index == 0:
            if e < 0:
                raise ZeroDivision("zero has no inverse")
            return F.one if e == 0 else self
        return GFElement(F, int(F.exp_table[(F.log_table[self.index] * e) % (F.order - 1)]))

    def trace(self) -> int:
        return int(self.field.trace_table[self.index])

    def __eq__(self, other):
        if not isinstance(other, GFElement):
            return NotImplemented
        return self.field == other.field and self.index == other.index

    def __hash__(self):
        return hash((self.field, self.index))

    def __str__(self):
        sep = "" if self.field.p < 10 else "."
        return sep.join(str(c) for c in self.coeffs)

    def __repr__(self):
        return f"GF({self.field.order})[{' '.join(str(c) for c in self.coeffs)}]"


@lru_cache(maxsize=64)
def _cached_field(p: int, m: int, modulus: tuple[int, ...] | None) -> GFField:
    return GFField(p, m, modulus)


def gf_create(p: int, m: int = 1, modulus: Sequence[int] | None = None) -> GFField:
    """
    Field with a verified irreducible modulus.

    >>> gf_create(3).primitive_element.index
    2
    """
    return _cached_field(p, m, None if modulus is None else tuple(modulus))


def gf_arith(op: str, *args) -> GFElement:
    match op, args:
        case "add", (a, b):
            return a + b
        case "sub", (a, b):
            return a - b
        case "mul", (a, b):
            return a * b
        case "inv", (a,):
            return a.inverse()
        case "pow", (a, e):
            return a**e
        case _:
            raise PreconditionError(f"unknown operation {op!r} with {len(args)} arguments")


def gf_trace(x: GFElement) -> int:
    return x.trace()


def gf_enumerate(field: GFField, order: Order = "lex_polynomial") -> list[GFElement]:
    """
    All elements in basis-labelling order.

    >>> [str(x) for x in gf_enumerate(gf_create(3, 2))]
    ['00', '01', '02', '10', '11', '12', '20', '21', '22']
    """
    match order:
        case "lex_polynomial":
            return field.elements()
        case "monomial":
            q = field.order
            return [field.zero] + [GFElement(field, int(field.exp_table[k])) for k in range(q - 1)]
        case _:
            raise PreconditionError(f"unknown order {order!r}")


def additive_character(field: GFField) -> Callable[[GFElement], int]:
    """chi(x) = zeta_p ** Tr(x); the closure returns the exponent Tr(x)."""
    table = field.trace_table

    def chi(x: GFElement) -> int:
        return int(table[x.index])

    return chi


def gf_shift_phase(field: GFField, x: GFElement) -> tuple[CycloMatrix, CycloMatrix]:
    """
    Shift and phase operators: X_x phi_y = phi_(y - x), Z_x phi_y = chi(x y) phi_y.

    Rows and columns follow lexicographic element order; entries live in Z[zeta_p].
    """
    if x.field != field:
        raise ContextMismatch(f"{x!r} is not in {field!r}")
    q, p = field.order, field.p
    y = np.arange(q)
    targets = field.add_idx(y, field.neg_idx(np.full(q, x.index)))
    shift = CycloMatrix.permutation(targets, p)
    phase = CycloMatrix.diagonal(field.trace_idx(field.mul_idx(x.index, y)), p)
    return shift, phase
