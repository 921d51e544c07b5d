"""
Verification of orthonormality, unbiasedness and the number theory behind them.

Exact mode never leaves Z[zeta_n]. Two phase vectors with amplitudes zeta^e / sqrt(d) have
inner product s / d, where s = sum_k zeta^(f_k - e_k) is read off a histogram of exponent
differences. Unbiasedness is |s|^2 = d and orthonormality is s = d delta, both decided on
canonical forms. Float mode computes the same moduli with complex numpy and a tolerance.
"""

from __future__ import annotations

import logging
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from math import gcd
from typing import Literal

import numpy as np
import pandas as pd
from sympy import factorint

from .classes import Basis, MubSet, PreconditionError
from .cyclo import CycloInt, CycloMatrix, common_conductor, cyclo_context
from .fields import GFElement, GFField
from .rings import GaloisRing, GRElement

log = logging.getLogger(__name__)

type Mode = Literal["exact", "float"]
type Status = Literal["unbiased", "orthonormal", "violation"]


@dataclass(frozen=True, slots=True)
class VerifyOptions:
    mode: Mode = "exact"
    tol: float = 1e-10
    conductor_cap: int = 4096
    workers: int = 1

    def __post_init__(self):
        if self.mode not in ("exact", "float"):
            raise PreconditionError(f"unknown mode {self.mode!r}")
        if self.tol <= 0 or self.workers < 1:
            raise PreconditionError("tolerance must be positive and workers at least 1")


@dataclass(frozen=True, slots=True)
class Witness:
    """Vector indices of a violating pair and the measured |<a|b>|."""

    alpha: int
    beta: int
    modulus: float


@dataclass(frozen=True, slots=True)
class PairStatus:
    first: str
    second: str
    status: Status
    witness: Witness | None = None

    @property
    def ok(self) -> bool:
        return self.status != "violation"


@dataclass(frozen=True)
class VerificationReport:
    dimension: int
    method: str
    mode: Mode
    tol: float | None
    labels: tuple[str, ...]
    pairs: tuple[PairStatus, ...]
    orthonormal: tuple[PairStatus, ...]
    claimed: tuple[int, ...]
    completeness_claimed: bool
    elapsed: float = 0.0
    _index: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        for s in self.pairs + self.orthonormal:
            self._index[(s.first, s.second)] = s
            self._index[(s.second, s.first)] = s

    def status(self, first: str | int, second: str | int) -> PairStatus:
        if isinstance(first, int):
            first = self.labels[first]
        if isinstance(second, int):
            second = self.labels[second]
        return self._index[(first, second)]

    @property
    def all_orthonormal(self) -> bool:
        return all(s.ok for s in self.orthonormal)

    @property
    def unbiased_count(self) -> int:
        return sum(s.status == "unbiased" for s in self.pairs)

    @property
    def pair_count(self) -> int:
        return len(self.pairs)

    @property
    def violations(self) -> list[PairStatus]:
        return [s for s in self.pairs + self.orthonormal if not s.ok]

    @property
    def complete(self) -> bool:
        """d + 1 orthonormal bases, pairwise unbiased."""
        return (
            len(self.labels) == self.dimension + 1
            and self.all_orthonormal
            and self.unbiased_count == self.pair_count
        )

    @property
    def claims_verified(self) -> bool:
        claimed = [self.labels[i] for i in self.claimed]
        pairwise = all(
            self.status(a, b).status == "unbiased" for k, a in enumerate(claimed) for b in claimed[k + 1 :]
        )
        return self.all_orthonormal and pairwise and (self.complete or not self.completeness_claimed)

    def to_frame(self) -> pd.DataFrame:
        """Pair matrix: U unbiased, O orthonormal, X violation."""
        marks = {"unbiased": "U", "orthonormal": "O", "violation": "X"}
        grid = [[marks[self.status(a, b).status] for b in self.labels] for a in self.labels]
        return pd.DataFrame(grid, index=list(self.labels), columns=list(self.labels))

    def to_dict(self) -> dict:
        return {
            "dimension": self.dimension,
            "method": self.method,
            "mode": self.mode,
            "tol": self.tol,
            "bases": len(self.labels),
            "pairs_unbiased": self.unbiased_count,
            "pairs_total": self.pair_count,
            "all_orthonormal": self.all_orthonormal,
            "complete": self.complete,
            "completeness_claimed": self.completeness_claimed,
            "claimed": [self.labels[i] for i in self.claimed],
            "claims_verified": self.claims_verified,
            "violations": [asdict(s) for s in self.violations],
            "elapsed": round(self.elapsed, 6),
        }


def _cyclic_autocorrelation(counts: np.ndarray, n: int) -> np.ndarray:
    """Group-ring coefficients of z * conj(z) along the last axis."""
    idx = (np.arange(n)[None, :] - np.arange(n)[:, None]) % n  # [t, e] -> e - t
    return np.einsum("...e,...te->...t", counts, counts[..., idx])


def _difference_histogram(EA: np.ndarray, EB: np.ndarray, n: int) -> np.ndarray:
    """counts[alpha, beta, e] = #{k : EB[beta, k] - EA[alpha, k] = e mod n}."""
    d = EA.shape[0]
    diff = (EB[None, :, :] - EA[:, None, :]) % n
    flat = (np.arange(d)[:, None, None] * d + np.arange(d)[None, :, None]) * n + diff
    return np.bincount(flat.ravel(), minlength=d * d * n).reshape(d, d, n)


def _witness(moduli: np.ndarray, bad: np.ndarray) -> Witness:
    # largest violating modulus, first in lexicographic order on ties
    scores = np.where(bad, np.round(moduli, 12), -1.0)
    alpha, beta = np.unravel_index(int(np.argmax(scores)), scores.shape)
    return Witness(int(alpha), int(beta), float(moduli[alpha, beta]))


def _exact_status(A: Basis, B: Basis, same: bool, options: VerifyOptions) -> PairStatus:
    d = A.dimension
    if A.kind == "computational" or B.kind == "computational":
        if A.kind == B.kind:
            if same:
                return PairStatus(A.label, B.label, "orthonormal")
            return PairStatus(A.label, B.label, "violation", Witness(0, 0, 1.0))
        if same:
            raise AssertionError("a basis has one kind")
        return PairStatus(A.label, B.label, "unbiased")
    n = common_conductor(A.conductor, B.conductor, cap=options.conductor_cap)
    ctx = cyclo_context(n)
    counts = _difference_histogram(A.exponent_matrix(n), B.exponent_matrix(n), n)
    moduli = np.abs(counts @ np.exp(2j * np.pi * np.arange(n) / n)) / d
    if same:
        target = np.zeros((d, d, ctx.degree), dtype=np.int64)
        target[np.arange(d), np.arange(d), 0] = d
        bad = (ctx.reduce(counts) != target).any(axis=-1)
        status: Status = "orthonormal"
    else:
        square = ctx.reduce(_cyclic_autocorrelation(counts, n))
        target = np.zeros(ctx.degree, dtype=np.int64)
        target[0] = d
        bad = (square != target).any(axis=-1)
        status = "unbiased"
    if bad.any():
        return PairStatus(A.label, B.label, "violation", _witness(moduli, bad))
    return PairStatus(A.label, B.label, status)


def _float_status(A: Basis, B: Basis, same: bool, tol: float, rotation: np.ndarray | None = None) -> PairStatus:
    d = A.dimension
    MA, MB = A.to_complex(), B.to_complex()
    if rotation is not None:
        MA, MB = MA @ rotation.T, MB @ rotation.T
    moduli = np.abs(MA.conj() @ MB.T)
    if same:
        bad = np.abs(moduli - np.eye(d)) > tol
        status: Status = "orthonormal"
    else:
        bad = np.abs(moduli - 1 / np.sqrt(d)) > tol
        status = "unbiased"
    if bad.any():
        return PairStatus(A.label, B.label, "violation", _witness(moduli, bad))
    return PairStatus(A.label, B.label, status)


def check_unbiased(A: Basis, B: Basis, mode: Mode = "exact", options: VerifyOptions | None = None) -> PairStatus:
    """
    Status of a pair of bases. A basis against itself is checked for orthonormality.

    >>> from mubs.constructions import mub_master
    >>> S = mub_master(2)
    >>> check_unbiased(S[0], S[1]).status
    'unbiased'
    >>> check_unbiased(S[0], S[0]).status
    'orthonormal'
    """
    options = options or VerifyOptions(mode=mode)
    if A.dimension != B.dimension:
        raise PreconditionError(f"dimension {A.dimension} vs {B.dimension}")
    same = A is B or A == B
    if mode == "float":
        return _float_status(A, B, same, options.tol)
    return _exact_status(A, B, same, options)


def check_mub_set(S: MubSet, options: VerifyOptions | None = None) -> VerificationReport:
    options = options or VerifyOptions()
    start = time.perf_counter()
    bases = S.bases
    pairs = [(i, j) for i in range(len(bases)) for j in range(i + 1, len(bases))]

    def run(ij: tuple[int, int]) -> PairStatus:
        i, j = ij
        status = check_unbiased(bases[i], bases[j], options.mode, options)
        log.debug("%s/%s: %s", bases[i].label, bases[j].label, status.status)
        return status

    selves = [(i, i) for i in range(len(bases))]
    if options.workers > 1:
        with ThreadPoolExecutor(max_workers=options.workers) as pool:
            results = list(pool.map(run, pairs + selves))
    else:
        results = [run(ij) for ij in pairs + selves]
    report = VerificationReport(
        S.dimension,
        S.method,
        options.mode,
        options.tol if options.mode == "float" else None,
        tuple(S.labels),
        tuple(results[: len(pairs)]),
        tuple(results[len(pairs) :]),
        S.claimed,
        S.completeness_claimed,
        time.perf_counter() - start,
    )
    log.info(
        "%s d=%d: %d/%d pairs unbiased, complete=%s (%.3fs)",
        S.method,
        S.dimension,
        report.unbiased_count,
        report.pair_count,
        report.complete,
        report.elapsed,
    )
    return report


def unitary_invariance(S: MubSet, unitary: np.ndarray, tol: float = 1e-10) -> bool:
    """Float check that one common unitary applied to every basis keeps every pair verdict."""
    unitary = np.asarray(unitary)
    if unitary.shape != (S.dimension, S.dimension):
        raise PreconditionError(f"unitary of shape {unitary.shape} for dimension {S.dimension}")
    bases = S.bases
    for i, A in enumerate(bases):
        for j in range(i, len(bases)):
            B = bases[j]
            before = _float_status(A, B, i == j, tol)
            after = _float_status(A, B, i == j, tol, rotation=unitary)
            if before.status != after.status:
                return False
    return True


@dataclass(frozen=True, slots=True)
class GaussSum:
    value: complex
    exact: CycloInt
    abs2: int | None

    @property
    def certified(self) -> bool:
        return self.abs2 is not None


def gauss_sum(u: int, v: int, w: int) -> GaussSum:
    """
    S(u, v, w) = sum_(k < |w|) exp(i pi (u k^2 + v k) / w), also computed in Z[zeta_2|w|].

    Requires gcd(u, w) = 1, u w != 0 and u w + v even; then |S|^2 = |w|.

    >>> gauss_sum(1, 1, 1).abs2
    1
    >>> gauss_sum(1, -3, 3).abs2
    3
    """
    if u * w == 0:
        raise PreconditionError("u w must be nonzero")
    if gcd(u, w) != 1:
        raise PreconditionError(f"u={u} and w={w} are not coprime")
    if (u * w + v) % 2:
        raise PreconditionError(f"u w + v = {u * w + v} is odd")
    k = np.arange(abs(w))
    phase = u * k * k + v * k
    value = complex(np.exp(1j * np.pi * phase / w).sum())
    n = 2 * abs(w)
    sign = 1 if w > 0 else -1
    z = cyclo_context(n).from_exponents(sign * phase)
    return GaussSum(value, z, (z * z.conj()).rational())


def mub_gauss_parameters(p: int, a: int, b: int, alpha: int, beta: int) -> tuple[int, int, int]:
    """(u, v, w) of the Gauss sum behind <a alpha | b beta> in the master formula."""
    return a - b, -(a - b) * p + 2 * (alpha - beta), p


def _abs2_matrix(M: CycloMatrix) -> np.ndarray:
    ctx = cyclo_context(M.conductor)
    return ctx.reduce(_cyclic_autocorrelation(M.raw.astype(np.int64), M.conductor))


def hadamard_check(M: CycloMatrix, d: int) -> bool:
    """
    Unitary with every entry of modulus 1/sqrt(d), decided exactly.

    >>> from mubs.constructions import matrix_Ha
    >>> hadamard_check(matrix_Ha(3, 0), 3)
    True
    >>> hadamard_check(CycloMatrix.identity(3), 3)
    False
    """
    if M.shape != (d, d):
        return False
    if not (M.dagger() @ M) == CycloMatrix.identity(d):
        return False
    # |entry|^2 = c * norm2 must equal 1/d, so c = 1 / (d norm2) for every entry
    c = 1 / (d * M.norm2)
    if c.denominator != 1:
        return False
    target = np.zeros(cyclo_context(M.conductor).degree, dtype=np.int64)
    target[0] = c.numerator
    return bool((_abs2_matrix(M) == target).all())


@dataclass(frozen=True, slots=True)
class Equivalence:
    """B_k = zeta_conductor^phases[k] * A_permutation[k]."""

    permutation: tuple[int, ...]
    phases: tuple[int, ...]
    conductor: int


def bases_equivalent(A: Basis, B: Basis) -> Equivalence | None:
    """
    First match of B onto A up to per-vector phases and a rearrangement.

    >>> from mubs.constructions import mub_master
    >>> B0 = mub_master(2)[0]
    >>> bases_equivalent(B0, B0)
    Equivalence(permutation=(0, 1), phases=(0, 0), conductor=4)
    """
    if A.dimension != B.dimension:
        raise PreconditionError(f"dimension {A.dimension} vs {B.dimension}")
    d = A.dimension
    if A.kind != B.kind:
        return None
    if A.kind == "computational":
        return Equivalence(tuple(range(d)), (0,) * d, 1)
    n = common_conductor(A.conductor, B.conductor)
    EA, EB = A.exponent_matrix(n), B.exponent_matrix(n)
    permutation, phases = [], []
    for k in range(d):
        for j in range(d):
            if j in permutation:
                continue
            diff = (EB[k] - EA[j]) % n
            if (diff == diff[0]).all():
                permutation.append(j)
                phases.append(int(diff[0]))
                break
        else:
            return None
    return Equivalence(tuple(permutation), tuple(phases), n)


def mub_bounds(d: int) -> tuple[int, int]:
    """
    min(p_i^m_i) + 1 <= N(d) <= d + 1.

    >>> mub_bounds(6), mub_bounds(676), mub_bounds(9)
    ((3, 7), (5, 677), (10, 10))
    """
    if d < 2:
        raise PreconditionError(f"dimension must be at least 2, got {d}")
    return min(p**e for p, e in factorint(d).items()) + 1, d + 1


def is_prime_power(d: int) -> bool:
    return d >= 2 and len(factorint(d)) == 1


def weil_sum(field: GFField, u: GFElement, v: GFElement) -> CycloInt:
    """sum_x zeta_p^Tr(u x^2 + v x) over the whole field, exactly."""
    x = np.arange(field.order)
    quadratic = field.trace_idx(field.mul_idx(u.index, field.mul_idx(x, x)))
    exps = quadratic + field.trace_idx(field.mul_idx(v.index, x))
    return cyclo_context(field.p).from_exponents(exps)


@dataclass(frozen=True, slots=True)
class CharacterSum:
    value: CycloInt
    abs2: int | None
    case: Literal["zero", "even", "unit"]
    m: int

    @property
    def consistent(self) -> bool:
        """Matches the value predicted for its case."""
        match self.case:
            case "zero":
                return self.value == 2**self.m
            case "even":
                return self.value.is_zero()
            case _:
                return self.abs2 == 2**self.m


def ring_character_sum(ring: GaloisRing, u: GRElement) -> CharacterSum:
    """
    sum over x in T_m of i^Tr(u x).

    The value is 2^m for u = 0, zero for u in 2 T_m \\ {0}, and of modulus sqrt(2^m) otherwise.
    """
    exps = [ring.trace(u * x) for x in ring.teichmuller]
    z = cyclo_context(4).from_exponents(exps)
    if u == ring.zero:
        case = "zero"
    elif all(c % 2 == 0 for c in u.coeffs):
        case = "even"
    else:
        case = "unit"
    return CharacterSum(z, (z * z.conj()).rational(), case, ring.m)
