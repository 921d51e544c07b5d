"""
Weyl pairs, generalized Pauli matrices and the Pauli group P_d.

Group elements are label triples (a, b, c) standing for omega^a X^b Z^c; matrices are
only built when a label has to be compared with its realization. In the "ab" shorthand
used for the commuting classes, ab means X^a Z^b.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from itertools import product
from typing import Literal

import numpy as np
from sympy import isprime

from .classes import Basis, ContextMismatch, MubSet, PreconditionError
from .constructions import mub_master
from .cyclo import CycloMatrix, cyclo_context

log = logging.getLogger(__name__)


@dataclass(frozen=True, slots=True)
class PauliLabel:
    """
    omega^a X^b Z^c in dimension d.

    >>> u = PauliLabel(0, 1, 1, 2)
    >>> u * PauliLabel(0, 0, 1, 2)
    PauliLabel(a=0, b=1, c=0, d=2)
    """

    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        if self.d < 2:
            raise PreconditionError(f"dimension must be at least 2, got {self.d}")
        if not all(0 <= v < self.d for v in (self.a, self.b, self.c)):
            raise PreconditionError(f"label residues must lie in [0, {self.d})")

    def __mul__(self, other: PauliLabel) -> PauliLabel:
        return pauli_mul(self, other)

    def inverse(self) -> PauliLabel:
        # (X^b Z^c)^-1 = Z^-c X^-b = omega^(-bc) X^-b Z^-c
        d = self.d
        return PauliLabel((-self.a - self.b * self.c) % d, -self.b % d, -self.c % d, d)

    def matrix(self) -> CycloMatrix:
        return gen_pauli(self.d, self.b, self.c).times_root(self.a)

    @property
    def shorthand(self) -> str:
        return f"{self.b}{self.c}"

    def __str__(self):
        return f"ω^{self.a} X^{self.b} Z^{self.c}"


@dataclass(frozen=True, slots=True)
class CommutingClass:
    index: int
    members: tuple[PauliLabel, ...]

    def __str__(self):
        return f"𝒱_{self.index} = {{{', '.join(m.shorthand for m in self.members)}}}"


@dataclass(frozen=True, slots=True)
class StructureConstant:
    """Coefficient zeta_d^first -/+ zeta_d^second in front of U_(i, j)."""

    i: int
    j: int
    first: int
    second: int
    sign: Literal["-", "+"]


@dataclass(frozen=True, slots=True)
class ClassMatch:
    class_index: int
    basis_label: str
    eigenvalues: tuple[int, ...]  # exponents over the common conductor
    conductor: int


@dataclass(frozen=True, slots=True)
class ClassBasisReport:
    p: int
    matches: tuple[ClassMatch, ...]

    @property
    def bijective(self) -> bool:
        labels = [m.basis_label for m in self.matches]
        return len(self.matches) == self.p + 1 and len(set(labels)) == len(labels)

    def mapping(self) -> dict[int, str]:
        return {m.class_index: m.basis_label for m in self.matches}


@dataclass(frozen=True, slots=True)
class GroupCheck:
    d: int
    order: int
    closure: bool
    associative: bool
    identity: bool
    inverses: bool
    series_lengths: tuple[int, ...]
    commutator_central: bool

    @property
    def ok(self) -> bool:
        return (
            self.order == self.d**3
            and self.closure
            and self.associative
            and self.identity
            and self.inverses
            and self.commutator_central
        )


def _require_dimension(d: int):
    if d < 2:
        raise PreconditionError(f"dimension must be at least 2, got {d}")


def weyl_pair(d: int) -> tuple[CycloMatrix, CycloMatrix]:
    """
    X = V_0 (cyclic shift) and Z = diag(omega^k) over Z[zeta_d].

    >>> X, Z = weyl_pair(2)
    >>> Z.to_complex().real.round().tolist()
    [[1.0, 0.0], [0.0, -1.0]]
    """
    _require_dimension(d)
    return gen_pauli(d, 1, 0), gen_pauli(d, 0, 1)


def gen_pauli(d: int, a: int, b: int) -> CycloMatrix:
    """U_ab = X^a Z^b; entry (k, k + a) is omega^(b (k + a))."""
    _require_dimension(d)
    a, b = a % d, b % d
    k = np.arange(d)
    exps = np.zeros((d, d), dtype=np.int64)
    mask = np.zeros((d, d), dtype=bool)
    exps[k, (k + a) % d] = b * ((k + a) % d)
    mask[k, (k + a) % d] = True
    return CycloMatrix.monomial(exps, d, 1, mask=mask)


def pauli_mul(u: PauliLabel, v: PauliLabel) -> PauliLabel:
    """(a, b, c)(a', b', c') = (a + a' - c b', b + b', c + c') mod d."""
    if u.d != v.d:
        raise ContextMismatch(f"P_{u.d} vs P_{v.d}")
    d = u.d
    return PauliLabel((u.a + v.a - u.c * v.b) % d, (u.b + v.b) % d, (u.c + v.c) % d, d)


def pauli_group(d: int) -> list[PauliLabel]:
    _require_dimension(d)
    return [PauliLabel(a, b, c, d) for a, b, c in product(range(d), repeat=3)]


def structure_constants(
    d: int, ab: tuple[int, int], ef: tuple[int, int], sign: Literal["-", "+"] = "-"
) -> list[StructureConstant]:
    """
    [U_ab, U_ef]_-/+ = (omega^(-be) -/+ omega^(-af)) U_(a+e, b+f).

    Empty when the (anti)commutator vanishes.

    >>> structure_constants(2, (1, 0), (0, 1), "+")
    []
    >>> structure_constants(3, (1, 1), (2, 2))
    []
    """
    _require_dimension(d)
    (a, b), (e, f) = ab, ef
    first, second = (-b * e) % d, (-a * f) % d
    vanishes = first == second if sign == "-" else d % 2 == 0 and (first - second) % d == d // 2
    if vanishes:
        return []
    return [StructureConstant((a + e) % d, (b + f) % d, first, second, sign)]


def structure_identity_holds(d: int, ab: tuple[int, int], ef: tuple[int, int], sign: Literal["-", "+"]) -> bool:
    """Check the structure constants against exact matrix products."""
    U, V = gen_pauli(d, *ab), gen_pauli(d, *ef)
    left = U @ V
    right = V @ U
    lhs = left - right if sign == "-" else left + right
    constants = structure_constants(d, ab, ef, sign)
    if not constants:
        return lhs.is_zero()
    (s,) = constants
    W = gen_pauli(d, s.i, s.j)
    if sign == "-":
        rhs = W.times_root(s.first) - W.times_root(s.second)
    else:
        rhs = W.times_root(s.first) + W.times_root(s.second)
    return lhs == rhs


def commuting_classes(p: int) -> list[CommutingClass]:
    """
    The p + 1 classes of p - 1 commuting operators.

    V_0 = {Z^a}, V_(k+1) = {X^a Z^(ka)} for k = 0 .. p - 1.

    >>> str(commuting_classes(5)[3])
    '𝒱_3 = {12, 24, 31, 43}'
    """
    if not isprime(p):
        raise PreconditionError(f"commuting classes need a prime dimension, got {p}")
    classes = [CommutingClass(0, tuple(PauliLabel(0, 0, a, p) for a in range(1, p)))]
    for k in range(p):
        classes.append(CommutingClass(k + 1, tuple(PauliLabel(0, a, (k * a) % p, p) for a in range(1, p))))
    return classes


def class_operator(p: int, j: int) -> CycloMatrix:
    """Representative of class V_j: Z for j = 0, X Z^(j-1) = V_(j-1) otherwise."""
    return gen_pauli(p, 0, 1) if j == 0 else gen_pauli(p, 1, j - 1)


def eigen_certificate(op: CycloMatrix, basis: Basis) -> tuple[tuple[int, ...], int] | None:
    """
    Eigenvalue exponents and their conductor if every vector of `basis` is an eigenvector of `op`.

    Exact: with v_i = zeta^e the first entry of v and w = op v, the eigenvalue is
    lambda = w_i * conj(v_i), and w == lambda v must hold entrywise.
    """
    vectors = basis.as_matrix()
    W = op @ vectors
    V = vectors.lift(W.conductor)
    n = W.conductor
    ctx = cyclo_context(n)
    eigenvalues = []
    for col in range(basis.dimension):
        lead = next(i for i in range(basis.dimension) if V.raw[i, col].any())
        e = int(np.flatnonzero(V.raw[lead, col])[0])
        lam = ctx.from_counts(np.roll(W.raw[lead, col], -e))
        exponent = next((k for k in range(n) if ctx.root(k) == lam), None)
        if exponent is None:
            return None
        expected = np.roll(V.raw[:, col], exponent, axis=1)
        if not np.array_equal(ctx.reduce(W.raw[:, col]), ctx.reduce(expected)):
            return None
        eigenvalues.append(exponent)
    return tuple(eigenvalues), n


def class_basis_match(p: int, mubs: MubSet | None = None) -> ClassBasisReport:
    """
    Pair every commuting class with the basis of mub_master(p) diagonalising its representative.
    """
    if not isprime(p):
        raise PreconditionError(f"{p} is not prime")
    if mubs is None:
        mubs = mub_master(p)
    matches = []
    for j in range(p + 1):
        op = class_operator(p, j)
        for basis in mubs:
            certificate = eigen_certificate(op, basis)
            if certificate is not None:
                matches.append(ClassMatch(j, basis.label, *certificate))
                log.debug("class V_%d <-> %s", j, basis.label)
                break
    return ClassBasisReport(p, tuple(matches))


def commutator(g: PauliLabel, h: PauliLabel) -> PauliLabel:
    return g * h * g.inverse() * h.inverse()


def _generated(elements: set[PauliLabel], d: int) -> frozenset[PauliLabel]:
    group = {PauliLabel(0, 0, 0, d)} | elements
    frontier = set(group)
    while frontier:
        new = {g * h for g in frontier for h in elements} - group
        group |= new
        frontier = new
    return frozenset(group)


def lower_central_series(d: int) -> list[frozenset[PauliLabel]]:
    """
    G = G_0, G_(k+1) = [G, G_k], down to the trivial group.

    >>> [len(g) for g in lower_central_series(2)]
    [8, 2, 1]
    """
    G = frozenset(pauli_group(d))
    series = [G]
    while len(series[-1]) > 1:
        nxt = _generated({commutator(g, h) for g in G for h in series[-1]}, d)
        if nxt == series[-1]:
            break
        series.append(nxt)
    return series


def commutator_subgroup(d: int) -> frozenset[PauliLabel]:
    return lower_central_series(d)[1]


def group_check(d: int) -> GroupCheck:
    """Group axioms of P_d on labels, vectorised over all triples."""
    labels = np.array([(u.a, u.b, u.c) for u in pauli_group(d)])
    N = len(labels)

    def mul(x, y):
        a = (x[..., 0] + y[..., 0] - x[..., 2] * y[..., 1]) % d
        return np.stack([a, (x[..., 1] + y[..., 1]) % d, (x[..., 2] + y[..., 2]) % d], axis=-1)

    def encode(x):
        return (x[..., 0] * d + x[..., 1]) * d + x[..., 2]

    pairs = mul(labels[:, None], labels[None, :])
    codes = encode(pairs)
    closure = bool(codes.min() >= 0 and codes.max() < N)
    # table[i, j] = index of labels[i] * labels[j]; label index equals its code
    # row i: (x_i x_j) x_k against x_i (x_j x_k)
    associative = all(np.array_equal(codes[codes[i]], codes[i][codes]) for i in range(N))
    identity = bool(np.array_equal(codes[0], np.arange(N)) and np.array_equal(codes[:, 0], np.arange(N)))
    inverses = bool(np.all((codes == 0).any(axis=1)))
    series = lower_central_series(d)
    scalars = {PauliLabel(a, 0, 0, d) for a in range(d)}
    return GroupCheck(
        d,
        N,
        closure,
        associative,
        identity,
        inverses,
        tuple(len(g) for g in series),
        series[1] <= scalars,
    )


def pauli_table(d: int) -> list[tuple[str, CycloMatrix]]:
    """All U_ab in "ab" shorthand, a outer."""
    return [(f"{a}{b}", gen_pauli(d, a, b)) for a in range(d) for b in range(d)]
