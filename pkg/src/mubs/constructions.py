"""
MUB constructions.

Each construction returns a MubSet whose phase bases are exponent matrices:

    master       |a alpha>  over zeta_2d, exponent (n+1)(d-n-1)a - 2(n+1)alpha
    alternative  |a alpha>' over zeta_p,  exponent a n^2 + alpha n
    gf           over zeta_p,  exponent Tr(a x^2 + alpha x), x running through GF(p^m)
    gr           over zeta_4,  exponent Tr(a x + 2 alpha x), x running through T_m
    w4           d = 4 tensor and entangled re-arrangements of the d = 2 bases

The formulas work in two steps like closures elsewhere in this package: prime them with
the dimension and basis index, then call them with the vector index.
"""

from __future__ import annotations

import logging
from collections.abc import Callable, Sequence
from fractions import Fraction

import numpy as np
from sympy import isprime

from .classes import Basis, MubSet, PreconditionError
from .cyclo import CycloMatrix
from .fields import gf_create
from .rings import gr_create

log = logging.getLogger(__name__)

type Formula = Callable[[int], np.ndarray]

# Printed vector order of the d = 4 bases: position k shows the vector with index
# PRINTED_ORDER[b][k] (Teichmueller index for GR(4,2), (alpha, beta) lex index for W).
PRINTED_ORDER: dict[int, tuple[int, ...]] = {
    0: (0, 1, 2, 3),
    1: (2, 1, 3, 0),
    2: (1, 2, 0, 3),
    3: (3, 2, 1, 0),
}
# W basis corresponding to each GR(4,2) basis
W_PAIRING: dict[int, str] = {0: "W_00", 1: "W_10", 2: "W_01", 3: "W_11"}


def _require_dimension(d: int):
    if d < 2:
        raise PreconditionError(f"dimension must be at least 2, got {d}")


def _require_prime(p: int):
    if not isprime(p):
        raise PreconditionError(f"{p} is not prime")


def master_formula(d: int, a: int) -> Formula:
    """Exponents over zeta_2d of |a alpha>, primed with (d, a)."""
    n = np.arange(d, dtype=np.int64)
    fixed = (n + 1) * (d - n - 1) * a

    def f(alpha: int) -> np.ndarray:
        return (fixed - 2 * (n + 1) * alpha) % (2 * d)

    return f


def alternative_formula(p: int, a: int) -> Formula:
    """Exponents over zeta_p of |a alpha>'."""
    n = np.arange(p, dtype=np.int64)

    def f(alpha: int) -> np.ndarray:
        return (a * n * n + alpha * n) % p

    return f


def _phase_basis(label: str, formula: Formula, d: int, conductor: int) -> Basis:
    return Basis.phase(label, np.array([formula(alpha) for alpha in range(d)]), conductor)


def mub_master(d: int) -> MubSet:
    """
    d + 1 bases B_0 .. B_{d-1} and the computational B_d.

    Complete for d prime. For composite d only B_0, B_1 and B_d are claimed.

    >>> S = mub_master(2)
    >>> S.conductor, S.labels
    (4, ['B_0', 'B_1', 'B_2'])
    >>> [v.exponents for v in S[1]]
    [(1, 0), (3, 0)]
    """
    _require_dimension(d)
    complete = bool(isprime(d))
    bases = [_phase_basis(f"B_{a}", master_formula(d, a), d, 2 * d) for a in range(d)]
    bases.append(Basis.computational(f"B_{d}", d))
    if not complete:
        log.warning("d=%d is composite: only B_0, B_1 and B_%d are mutually unbiased", d, d)
    claimed = tuple(range(d + 1)) if complete else (0, 1, d)
    return MubSet(d, 2 * d, "master", tuple(bases), complete, claimed, params={"d": d})


def mub_alternative(p: int) -> MubSet:
    """
    p + 1 bases from the alternative formula.

    For p = 2 the two phase bases coincide as sets, so the set is not complete.

    >>> [v.exponents for v in mub_alternative(3)[1]][0]
    (0, 1, 1)
    """
    _require_prime(p)
    complete = p % 2 == 1
    bases = [_phase_basis(f"B_{a}", alternative_formula(p, a), p, p) for a in range(p)]
    bases.append(Basis.computational(f"B_{p}", p))
    if not complete:
        log.warning("the alternative formula does not give unbiased bases for p=2")
    return MubSet(p, p, "alternative", tuple(bases), complete, tuple(range(p + 1)), params={"p": p})


def mub_gf(p: int, m: int = 1, modulus: Sequence[int] | None = None) -> MubSet:
    """
    p^m + 1 bases labelled by a in GF(p^m), lexicographic order, plus the computational basis.

    >>> S = mub_gf(3, 2)
    >>> len(S), S.conductor, S.field["modulus"]
    (10, 3, [1, 0, 1])
    """
    _require_prime(p)
    if p == 2:
        raise PreconditionError("the Galois-field construction needs an odd prime; use mub_gr for p = 2")
    field = gf_create(p, m, modulus)
    q = field.order
    x = np.arange(q)
    squares = field.mul_idx(x, x)
    # linear part Tr(alpha x) for every alpha (rows) and x (columns)
    linear = field.trace_idx(field.mul_idx(x[:, None], x[None, :]))
    bases = []
    for a in range(q):
        quadratic = field.trace_idx(field.mul_idx(a, squares))
        bases.append(Basis.phase(f"B_{a}", (quadratic[None, :] + linear) % p, p))
    bases.append(Basis.computational(f"B_{q}", q))
    meta = field.metadata() | {"elements": [str(e) for e in field.elements()]}
    return MubSet(q, p, "gf", tuple(bases), True, tuple(range(q + 1)), field=meta, params={"p": p, "m": m})


def mub_gr(m: int) -> MubSet:
    """
    2^m + 1 bases labelled by a in the Teichmueller set, plus the computational basis.

    >>> [v.exponents for v in mub_gr(1)[1]]
    [(0, 1), (0, 3)]
    """
    ring = gr_create(m)
    T = ring.teichmuller
    d = len(T)
    traces = np.array([[ring.trace(u * x) for x in T] for u in T], dtype=np.int64)
    bases = []
    for a in range(d):
        bases.append(Basis.phase(f"B_{a}", (traces[a][None, :] + 2 * traces) % 4, 4))
    bases.append(Basis.computational(f"B_{d}", d))
    meta = ring.metadata() | {"teichmuller": [str(t) for t in T]}
    return MubSet(d, 4, "gr", tuple(bases), True, tuple(range(d + 1)), ring=meta, params={"m": m})


def _sqrt2_root(x: int, y: int) -> int:
    """e with zeta_8^x + zeta_8^y = sqrt(2) zeta_8^e."""
    x, y = x % 8, y % 8
    if (y - x) % 8 == 2:
        return x + 1
    if (x - y) % 8 == 2:
        return y + 1
    raise AssertionError(f"zeta_8^{x} + zeta_8^{y} is not sqrt(2) times a root of unity")


def _w_vector(first: np.ndarray, second: np.ndarray, other_first=None, other_second=None) -> np.ndarray:
    """Exponents over zeta_4 (scale 1/2) of a product or of lambda(u x v) + mu(u' x v')."""
    plain = (first[:, None] + second[None, :]).ravel() % 4
    if other_first is None:
        return plain
    partner = (other_first[:, None] + other_second[None, :]).ravel() % 4
    # lambda = zeta_8^-1 / sqrt(2), mu = zeta_8 / sqrt(2)
    exps = [_sqrt2_root(2 * s - 1, 2 * t + 1) for s, t in zip(plain, partner)]
    assert all(e % 2 == 0 for e in exps)
    return np.array(exps, dtype=np.int64) // 2 % 4


def mub_w4() -> MubSet:
    """
    The d = 4 bases W_00, W_11 (products) and W_01, W_10 (entangled), plus the computational one.

    Every vector is phase-normalised so that its |00> amplitude is +1/2; vectors are in
    lexicographic (alpha, beta) order.

    >>> mub_w4()["W_00"][0].exponents
    (0, 0, 0, 0)
    """
    B = [mub_master(2)[a].exponent_matrix() for a in (0, 1)]
    bases = []
    for a, b in ((0, 0), (1, 1), (0, 1), (1, 0)):
        rows = []
        for alpha in (0, 1):
            for beta in (0, 1):
                if a == b:
                    v = _w_vector(B[a][alpha], B[b][beta])
                else:
                    v = _w_vector(B[a][alpha], B[b][beta], B[a][alpha ^ 1], B[b][beta ^ 1])
                rows.append((v - v[0]) % 4)
        bases.append(Basis.phase(f"W_{a}{b}", rows, 4))
    bases.append(Basis.computational("B_4", 4))
    return MubSet(4, 4, "w4", tuple(bases), True, tuple(range(5)), params={"internal_conductor": 8})


def printed(basis: Basis, index: int) -> list:
    """Vectors of a d = 4 basis in printed order."""
    return [basis[k] for k in PRINTED_ORDER[index]]


def matrix_Va(d: int, a: int) -> CycloMatrix:
    """
    Shift-with-phase V_a: entry (k, k+1 mod d) is omega^((k+1) a).

    >>> matrix_Va(2, 1).to_complex().real.round().tolist()
    [[0.0, -1.0], [1.0, 0.0]]
    """
    _require_dimension(d)
    if not 0 <= a < d:
        raise PreconditionError(f"a={a} outside 0..{d - 1}")
    k = np.arange(d)
    exps = np.zeros((d, d), dtype=np.int64)
    mask = np.zeros((d, d), dtype=bool)
    exps[k, (k + 1) % d] = (k + 1) * a
    mask[k, (k + 1) % d] = True
    return CycloMatrix.monomial(exps, d, 1, mask=mask)


def matrix_Ha(d: int, a: int) -> CycloMatrix:
    """Columns are the vectors |a alpha> of the master formula."""
    _require_dimension(d)
    if not 0 <= a < d:
        raise PreconditionError(f"a={a} outside 0..{d - 1}")
    f = master_formula(d, a)
    return CycloMatrix.monomial(np.array([f(alpha) for alpha in range(d)]).T, 2 * d, Fraction(1, d))


def perm_P(d: int) -> CycloMatrix:
    """P with P[0, 0] = 1 and P[i, d - i] = 1."""
    _require_dimension(d)
    return CycloMatrix.permutation([(-j) % d for j in range(d)])


def eigenvalue_exponent(d: int, a: int, alpha: int) -> int:
    """V_a |a alpha> = zeta_2d ** e |a alpha>."""
    return ((d - 1) * a - 2 * alpha) % (2 * d)


def diagonalization_holds(d: int, a: int) -> bool:
    """(H_a P)^dagger V_a (H_a P) == zeta_2d^((d-1)a) diag(zeta_2d^(2j))."""
    M = matrix_Ha(d, a) @ perm_P(d)
    lhs = M.dagger() @ matrix_Va(d, a) @ M
    rhs = CycloMatrix.diagonal([(d - 1) * a + 2 * j for j in range(d)], 2 * d)
    return lhs == rhs


def construct(method: str, *params: int, modulus: Sequence[int] | None = None) -> MubSet:
    """Dispatch by method name with positional parameters, as the command line passes them."""
    match method, params:
        case "master", (d,):
            return mub_master(d)
        case "alternative", (p,):
            return mub_alternative(p)
        case "gf", (p, m):
            return mub_gf(p, m, modulus)
        case "gf", (p,):
            return mub_gf(p, 1, modulus)
        case "gr", (m,):
            return mub_gr(m)
        case "w4", ():
            return mub_w4()
        case _:
            raise PreconditionError(f"bad parameters {params} for method {method!r}")
