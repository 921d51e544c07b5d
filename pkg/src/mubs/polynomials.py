"""
Polynomial helpers over the integers, over F_p and over Z/4.

Polynomials are tuples of coefficients, lowest degree first, without trailing zeros.
The zero polynomial is the empty tuple. Everything here is pure and works on plain ints,
so intermediate values never overflow.
"""

from collections.abc import Iterator, Sequence
from itertools import product

import sympy

_x = sympy.symbols("x")

type Poly = tuple[int, ...]


def trim(f: Sequence[int], modulus: int | None = None) -> Poly:
    """Reduce coefficients (optionally mod `modulus`) and strip trailing zeros.

    >>> trim([1, 0, 3, 0], 3)
    (1,)
    >>> trim([0, 0])
    ()
    """
    coeffs = [c % modulus for c in f] if modulus else list(f)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


def degree(f: Poly) -> int:
    """Degree of a trimmed polynomial, -1 for zero."""
    return len(f) - 1


def add(f: Poly, g: Poly, modulus: int | None = None) -> Poly:
    n = max(len(f), len(g))
    return trim([(f[k] if k < len(f) else 0) + (g[k] if k < len(g) else 0) for k in range(n)], modulus)


def sub(f: Poly, g: Poly, modulus: int | None = None) -> Poly:
    return add(f, tuple(-c for c in g), modulus)


def mul(f: Poly, g: Poly, modulus: int | None = None) -> Poly:
    """Schoolbook product.

    >>> mul((1, 1), (1, 1))
    (1, 2, 1)
    >>> mul((1, 1), (1, 1), 2)
    (1, 0, 1)
    """
    if not f or not g:
        return ()
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] += a * b
    return trim(out, modulus)


def divmod_poly(f: Poly, g: Poly, modulus: int | None = None) -> tuple[Poly, Poly]:
    """Long division f = q*g + r.

    Over the integers g must be monic; mod a prime any nonzero g works. Mod 4 the
    divisor must be monic as well.

    >>> divmod_poly((-1, 0, 0, 1), (-1, 1))
    ((1, 1, 1), ())
    """
    g = trim(g, modulus)
    assert g, "division by the zero polynomial"
    lead = g[-1]
    if lead != 1:
        assert modulus is not None, "integer division needs a monic divisor"
        inv_lead = pow(lead, -1, modulus)
    else:
        inv_lead = 1
    r = list(trim(f, modulus))
    q = [0] * max(len(r) - len(g) + 1, 0)
    while len(r) >= len(g):
        c = r[-1] * inv_lead
        if modulus:
            c %= modulus
        shift = len(r) - len(g)
        q[shift] = c
        for k, b in enumerate(g):
            r[shift + k] -= c * b
        r = list(trim(r, modulus))
    return trim(q, modulus), tuple(r)


def mod(f: Poly, g: Poly, modulus: int | None = None) -> Poly:
    return divmod_poly(f, g, modulus)[1]


def exact_div(f: Poly, g: Poly) -> Poly:
    """Integer division that must leave no remainder."""
    q, r = divmod_poly(f, g)
    assert not r, f"{g} does not divide {f}"
    return q


def powmod(base: Poly, e: int, f: Poly, modulus: int) -> Poly:
    """base**e reduced mod (f, modulus) by square and multiply."""
    result: Poly = (1,)
    base = mod(base, f, modulus)
    while e:
        if e & 1:
            result = mod(mul(result, base, modulus), f, modulus)
        base = mod(mul(base, base, modulus), f, modulus)
        e >>= 1
    return result


def monic(p: int, deg: int) -> Iterator[Poly]:
    """All monic polynomials of degree `deg` over F_p.

    Ordered lexicographically by (c_0, ..., c_{deg-1}), c_0 most significant.

    >>> [f for f in monic(2, 2)]
    [(0, 0, 1), (0, 1, 1), (1, 0, 1), (1, 1, 1)]
    """
    for coeffs in product(range(p), repeat=deg):
        yield (*coeffs, 1)


def is_irreducible(f: Sequence[int], p: int) -> bool:
    """Irreducibility over F_p, decided by sympy.

    >>> is_irreducible((1, 0, 1), 3)
    True
    >>> is_irreducible((1, 2, 1), 3)
    False
    """
    f = trim(f, p)
    if degree(f) < 1:
        return False
    return bool(sympy.Poly(list(reversed(f)), _x, modulus=p).is_irreducible)


def evaluate(f: Poly, x: complex) -> complex:
    """Horner evaluation, used for float sanity checks."""
    acc: complex = 0
    for c in reversed(f):
        acc = acc * x + c
    return acc
