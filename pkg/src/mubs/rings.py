"""
Galois rings GR(4, m) = Z_4[xi]/(h(xi)).

h is the Graeffe lift of a binary primitive polynomial, so xi itself is the Teichmueller
generator beta with beta^(2^m - 1) = 1. Every element splits uniquely as a + 2b with a, b
in the Teichmueller set, which is how the Frobenius map and the trace are evaluated.
"""

from __future__ import annotations

import logging
from functools import lru_cache
from itertools import product

from sympy import primefactors

from . import polynomials as poly
from .classes import ContextMismatch, PreconditionError

log = logging.getLogger(__name__)


def graeffe_lift(f: poly.Poly) -> poly.Poly:
    """
    Lift a binary polynomial to Z_4 via h(x^2) = (-1)^m (e(x)^2 - o(x)^2).

    e and o are the even and odd parts of f.

    >>> graeffe_lift((1, 1))
    (3, 1)
    >>> graeffe_lift((1, 1, 1))
    (1, 1, 1)
    """
    m = poly.degree(f)
    even = tuple(c if k % 2 == 0 else 0 for k, c in enumerate(f))
    odd = tuple(c if k % 2 == 1 else 0 for k, c in enumerate(f))
    g = poly.sub(poly.mul(even, even), poly.mul(odd, odd))
    if m % 2:
        g = tuple(-c for c in g)
    g = poly.trim(g, 4)
    assert not any(g[1::2]), "squares only carry even powers"
    return g[::2]


class GaloisRing:
    """
    GR(4, m) with its Teichmueller set ordered 0, beta, beta^2, ..., beta^(2^m - 1) = 1.

    >>> R = GaloisRing(2)
    >>> R.basic_irreducible
    (1, 1, 1)
    >>> [str(t) for t in R.teichmuller]
    ['0', 'ξ', '3+3ξ', '1']
    """

    __slots__ = ["m", "basic_irreducible", "seed", "teichmuller", "_residues", "_traces"]

    def __init__(self, m: int):
        if m < 1:
            raise PreconditionError(f"degree must be at least 1, got {m}")
        self.m = m
        n = 2**m - 1
        for f in poly.monic(2, m):
            if not poly.is_irreducible(f, 2):
                continue
            h = graeffe_lift(f)
            self.basic_irreducible = h
            beta = GRElement(self, self._reduce((0, 1)))
            if beta**n == self.one and all(beta ** (n // r) != self.one for r in primefactors(n)):
                self.seed = f
                break
        else:
            raise AssertionError(f"no primitive binary polynomial of degree {m}")
        self.teichmuller = [self.zero] + [beta**j for j in range(1, n + 1)]
        self._residues = {tuple(c % 2 for c in t.coeffs): t for t in self.teichmuller}
        assert len(self._residues) == 2**m, "Teichmueller elements have distinct residues"
        self._traces: dict[tuple[int, ...], int] = {}
        log.debug("GR(4,%d) seed=%s basic irreducible=%s", m, f, h)

    def _reduce(self, f) -> tuple[int, ...]:
        r = poly.mod(poly.trim(f, 4), self.basic_irreducible, 4)
        return tuple(r) + (0,) * (self.m - len(r))

    def __call__(self, coeffs) -> GRElement:
        if isinstance(coeffs, int):
            coeffs = (coeffs,)
        return GRElement(self, self._reduce(coeffs))

    @property
    def zero(self) -> GRElement:
        return GRElement(self, (0,) * self.m)

    @property
    def one(self) -> GRElement:
        return GRElement(self, (1,) + (0,) * (self.m - 1))

    @property
    def beta(self) -> GRElement:
        return self.teichmuller[1]

    @property
    def size(self) -> int:
        return 4**self.m

    def elements(self) -> list[GRElement]:
        """All 4^m elements, coefficient c_0 most significant."""
        return [GRElement(self, c) for c in product(range(4), repeat=self.m)]

    def teichmuller_index(self, t: GRElement) -> int:
        for k, u in enumerate(self.teichmuller):
            if u == t:
                return k
        raise PreconditionError(f"{t} is not in the Teichmueller set")

    def two_adic(self, x: GRElement) -> tuple[GRElement, GRElement]:
        a = self._residues[tuple(c % 2 for c in x.coeffs)]
        half = tuple(((c - e) // 2) % 2 for c, e in zip(x.coeffs, a.coeffs))
        return a, self._residues[half]

    def frobenius(self, x: GRElement) -> GRElement:
        a, b = self.two_adic(x)
        return a * a + 2 * (b * b)

    def trace(self, x: GRElement) -> int:
        if x.coeffs not in self._traces:
            acc, y = self.zero, x
            for _ in range(self.m):
                acc = acc + y
                y = self.frobenius(y)
            assert not any(acc.coeffs[1:]), "trace must land in Z_4"
            self._traces[x.coeffs] = acc.coeffs[0]
        return self._traces[x.coeffs]

    def __eq__(self, other):
        return isinstance(other, GaloisRing) and other.basic_irreducible == self.basic_irreducible

    def __hash__(self):
        return hash(("GR", self.basic_irreducible))

    def __repr__(self):
        return f"GaloisRing({self.m}, basic_irreducible={self.basic_irreducible})"

    def metadata(self) -> dict:
        return {"m": self.m, "seed": list(self.seed), "basic_irreducible": list(self.basic_irreducible)}


class GRElement:
    __slots__ = ["ring", "coeffs"]

    def __init__(self, ring: GaloisRing, coeffs: tuple[int, ...]):
        self.ring = ring
        self.coeffs = coeffs

    def _check(self, other) -> GRElement:
        if isinstance(other, int):
            return self.ring(other)
        if not isinstance(other, GRElement):
            return NotImplemented
        if other.ring != self.ring:
            raise ContextMismatch(f"{self.ring!r} vs {other.ring!r}")
        return other

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return GRElement(self.ring, tuple((a + b) % 4 for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return GRElement(self.ring, tuple(-a % 4 for a in self.coeffs))

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __mul__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return GRElement(self.ring, self.ring._reduce(poly.mul(self.coeffs, other.coeffs, 4)))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        assert e >= 0, "units only through explicit inversion"
        result, base = self.ring.one, self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.ring(other)
        if not isinstance(other, GRElement):
            return NotImplemented
        return self.ring == other.ring and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.ring, self.coeffs))

    def __str__(self):
        terms = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mono = "" if k == 0 else ("ξ" if k == 1 else f"ξ^{k}")
            terms.append(str(c) if not mono else (mono if c == 1 else f"{c}{mono}"))
        return "+".join(terms) or "0"

    def __repr__(self):
        return f"GR(4,{self.ring.m})[{self}]"


@lru_cache(maxsize=None)
def gr_create(m: int) -> GaloisRing:
    """
    >>> [str(t) for t in gr_create(1).teichmuller]
    ['0', '1']
    """
    return GaloisRing(m)


def gr_arith(op: str, *args) -> GRElement:
    match op, args:
        case "add", (a, b):
            return a + b
        case "sub", (a, b):
            return a - b
        case "mul", (a, b):
            return a * b
        case "pow", (a, e):
            return a**e
        case _:
            raise PreconditionError(f"unknown operation {op!r} with {len(args)} arguments")


def gr_frobenius(x: GRElement) -> GRElement:
    return x.ring.frobenius(x)


def gr_trace(x: GRElement) -> int:
    return x.ring.trace(x)


def gr_two_adic(x: GRElement) -> tuple[GRElement, GRElement]:
    return x.ring.two_adic(x)
