"""
A small pure-state simulator for qubits and qudits.

States are complex amplitude vectors over a tensor product of subsystems, the first
subsystem being the most significant digit of the flat index. Gates are unitary matrices
applied to chosen subsystems. Global phases never matter here, so states are compared by
fidelity |<a|b>| and never componentwise.
"""

from __future__ import annotations

import logging
from collections.abc import Sequence
from dataclasses import dataclass, field
from itertools import product
from math import prod

import numpy as np

from .classes import Basis, PreconditionError

log = logging.getLogger(__name__)

ATOL = 1e-12
# branches below this probability are not reported
_NEGLIGIBLE = 1e-20


class StateVector:
    """
    Amplitudes over subsystems of dimensions `dims`.

    >>> StateVector.ket([0, 1]).amplitudes.real.tolist()
    [0.0, 1.0, 0.0, 0.0]
    """

    __slots__ = ["dims", "amplitudes"]

    def __init__(self, amplitudes, dims: Sequence[int] | None = None):
        amplitudes = np.asarray(amplitudes, dtype=complex).ravel()
        if dims is None:
            dims = (len(amplitudes),)
        dims = tuple(int(x) for x in dims)
        if prod(dims) != len(amplitudes):
            raise PreconditionError(f"{len(amplitudes)} amplitudes do not fit dims {dims}")
        self.dims = dims
        self.amplitudes = amplitudes

    @classmethod
    def ket(cls, digits: Sequence[int], dims: Sequence[int] | None = None) -> StateVector:
        """Computational basis state |digits>, qubits unless dims are given."""
        dims = tuple(dims) if dims is not None else (2,) * len(digits)
        amplitudes = np.zeros(prod(dims), dtype=complex)
        amplitudes[np.ravel_multi_index(tuple(digits), dims)] = 1
        return cls(amplitudes, dims)

    @classmethod
    def qubit(cls, a: complex, b: complex) -> StateVector:
        return cls([a, b]).normalized()

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def normalized(self) -> StateVector:
        n = self.norm
        if n == 0:
            raise PreconditionError("the zero vector is not a state")
        return StateVector(self.amplitudes / n, self.dims)

    def tensor(self, other: StateVector) -> StateVector:
        return StateVector(np.kron(self.amplitudes, other.amplitudes), self.dims + other.dims)

    def fidelity(self, other: StateVector) -> float:
        return float(abs(np.vdot(self.amplitudes, other.amplitudes)))

    def as_tensor(self) -> np.ndarray:
        return self.amplitudes.reshape(self.dims)

    def __len__(self):
        return len(self.amplitudes)

    def __repr__(self):
        return f"StateVector(dims={self.dims}, amplitudes={np.round(self.amplitudes, 6).tolist()})"


@dataclass(frozen=True)
class Gate:
    name: str
    matrix: np.ndarray
    dims: tuple[int, ...] = field(default=(2,))

    def __post_init__(self):
        if self.matrix.shape != (prod(self.dims),) * 2:
            raise PreconditionError(f"{self.name}: matrix {self.matrix.shape} does not act on dims {self.dims}")

    @property
    def arity(self) -> int:
        return len(self.dims)

    def is_unitary(self, atol: float = ATOL) -> bool:
        m = self.matrix
        return bool(np.allclose(m.conj().T @ m, np.eye(len(m)), rtol=0, atol=atol))

    def __matmul__(self, other: Gate) -> Gate:
        """Composition: (self @ other) applies `other` first."""
        if self.dims != other.dims:
            raise PreconditionError(f"cannot compose {self.name} and {other.name}")
        return Gate(f"{self.name}·{other.name}", self.matrix @ other.matrix, self.dims)

    def tensor(self, other: Gate) -> Gate:
        return Gate(f"{self.name}⊗{other.name}", np.kron(self.matrix, other.matrix), self.dims + other.dims)


def make_gate(name: str, theta: float | None = None, table: Sequence[int] | None = None) -> Gate:
    """
    Gates by name: I, X, Y, Z, S (theta), H, CNOT, CP (theta), U_f (truth table).

    >>> make_gate("H").matrix.round(6).real.tolist()
    [[0.707107, 0.707107], [0.707107, -0.707107]]
    """
    match name:
        case "I":
            return Gate("I", np.eye(2, dtype=complex))
        case "X" | "NOT":
            return Gate("X", np.array([[0, 1], [1, 0]], dtype=complex))
        case "Y":
            return Gate("Y", np.array([[0, -1j], [1j, 0]], dtype=complex))
        case "Z":
            return Gate("Z", np.array([[1, 0], [0, -1]], dtype=complex))
        case "S":
            if theta is None:
                raise PreconditionError("S needs an angle")
            return Gate(f"S({theta:g})", np.diag([1, np.exp(1j * theta)]))
        case "H":
            return Gate("H", np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2))
        case "CNOT":
            return Gate("CNOT", _permutation([0, 1, 3, 2]), (2, 2))
        case "CP":
            if theta is None:
                raise PreconditionError("CP needs an angle")
            return Gate(f"CP({theta:g})", np.diag([1, 1, 1, np.exp(1j * theta)]), (2, 2))
        case "U_f":
            return _oracle(table)
        case _:
            raise PreconditionError(f"unknown gate {name!r}")


def _permutation(images: Sequence[int]) -> np.ndarray:
    """Matrix sending |j> to |images[j]>."""
    m = np.zeros((len(images), len(images)), dtype=complex)
    m[list(images), range(len(images))] = 1
    return m


def _check_table(table: Sequence[int] | None) -> int:
    """Number of input bits of a boolean truth table."""
    if table is None or len(table) < 2 or len(table) & (len(table) - 1):
        raise PreconditionError("a truth table needs 2^n entries, n >= 1")
    if any(v not in (0, 1) for v in table):
        raise PreconditionError(f"truth table {list(table)} is not boolean")
    return len(table).bit_length() - 1


def _oracle(table: Sequence[int] | None) -> Gate:
    """U_f |x>|y> = |x>|y xor f(x)>."""
    n = _check_table(table)
    images = [2 * x + (y ^ table[x]) for x in range(2**n) for y in (0, 1)]
    return Gate(f"U_f{tuple(table)}", _permutation(images), (2,) * (n + 1))


def apply(gate: Gate, state: StateVector, targets: int | Sequence[int] = 0) -> StateVector:
    """Apply `gate` to the listed subsystems, in gate order."""
    targets = (targets,) if isinstance(targets, int) else tuple(targets)
    if len(set(targets)) != len(targets) or any(not 0 <= t < len(state.dims) for t in targets):
        raise PreconditionError(f"bad targets {targets} for {len(state.dims)} subsystems")
    if tuple(state.dims[t] for t in targets) != gate.dims:
        found = [state.dims[t] for t in targets]
        raise PreconditionError(f"{gate.name} acts on dims {gate.dims}, targets have {found}")
    k = len(targets)
    psi = np.moveaxis(state.as_tensor(), targets, list(range(k)))
    front = psi.shape
    psi = (gate.matrix @ psi.reshape(prod(gate.dims), -1)).reshape(front)
    psi = np.moveaxis(psi, list(range(k)), targets)
    return StateVector(psi.ravel(), state.dims)


def bell(x: int, y: int) -> StateVector:
    """(|0, y> + (-1)^x |1, y xor 1>) / sqrt(2)."""
    if x not in (0, 1) or y not in (0, 1):
        raise PreconditionError("Bell states are labelled by two bits")
    amplitudes = np.zeros(4, dtype=complex)
    amplitudes[y] = 1
    amplitudes[2 + (y ^ 1)] = (-1) ** x
    return StateVector(amplitudes / np.sqrt(2), (2, 2))


def concurrence(state: StateVector) -> float:
    """
    |det| of the d x d amplitude matrix of a two-qudit state.

    >>> round(concurrence(bell(0, 0)), 12)
    0.5
    """
    if len(state.dims) != 2:
        raise PreconditionError(f"concurrence needs two subsystems, got {len(state.dims)}")
    d1, d2 = state.dims
    if d1 != d2:
        raise PreconditionError(f"subsystems of unequal dimension {state.dims}")
    return float(abs(np.linalg.det(state.amplitudes.reshape(d1, d2))))


@dataclass(frozen=True)
class MeasurementRecord:
    outcome: tuple[int, ...]
    probability: float
    state: StateVector


def _branches(state: StateVector, subsystems: tuple[int, ...]) -> list[MeasurementRecord]:
    psi = state.as_tensor()
    records = []
    for outcome in product(*(range(state.dims[s]) for s in subsystems)):
        index = [slice(None)] * len(state.dims)
        for s, o in zip(subsystems, outcome):
            index[s] = o
        projected = np.zeros_like(psi)
        projected[tuple(index)] = psi[tuple(index)]
        p = float(np.sum(np.abs(projected) ** 2))
        if p > _NEGLIGIBLE:
            collapsed = StateVector(projected.ravel() / np.sqrt(p), state.dims)
            records.append(MeasurementRecord(outcome, p, collapsed))
    return records


def measure(
    state: StateVector,
    subsystems: int | Sequence[int] = 0,
    mode: str = "enumerate",
    seed: int | None = None,
) -> list[MeasurementRecord] | MeasurementRecord:
    """
    Projective measurement of some subsystems in the computational basis.

    "enumerate" returns every branch of nonzero probability; "sampled" draws one of them
    with numpy's default generator seeded by `seed`.
    """
    subsystems = (subsystems,) if isinstance(subsystems, int) else tuple(subsystems)
    if any(not 0 <= s < len(state.dims) for s in subsystems):
        raise PreconditionError(f"bad subsystems {subsystems}")
    records = _branches(state, subsystems)
    match mode:
        case "enumerate":
            return records
        case "sampled":
            rng = np.random.default_rng(seed)
            p = np.array([r.probability for r in records])
            return records[int(rng.choice(len(records), p=p / p.sum()))]
        case _:
            raise PreconditionError(f"unknown mode {mode!r}")


def _as_qubit(psi: StateVector | Sequence[complex]) -> StateVector:
    if not isinstance(psi, StateVector):
        psi = StateVector(psi)
    if psi.dims != (2,):
        raise PreconditionError(f"expected a single qubit, got dims {psi.dims}")
    if abs(psi.norm - 1) > 1e-9:
        raise PreconditionError("the qubit is not normalized")
    return psi


def cloning_defect(psi: StateVector | Sequence[complex]) -> float:
    """
    ||CNOT(psi x |0>) - psi x psi||, zero exactly on |0> and |1>.

    >>> cloning_defect([1, 0])
    0.0
    """
    psi = _as_qubit(psi)
    copied = apply(make_gate("CNOT"), psi.tensor(StateVector.ket([0])), (0, 1))
    return float(np.linalg.norm(copied.amplitudes - psi.tensor(psi).amplitudes))


@dataclass(frozen=True)
class TeleportBranch:
    bits: tuple[int, int]
    probability: float
    received: StateVector  # before the correction
    corrected: StateVector
    fidelity: float


_CORRECTIONS = {(0, 0): (), (0, 1): ("X",), (1, 0): ("Z",), (1, 1): ("X", "Z")}


def teleport(
    psi: StateVector | Sequence[complex], mode: str = "enumerate", seed: int | None = None
) -> list[TeleportBranch] | TeleportBranch:
    """
    Teleport a qubit through |beta_00>: CNOT(1, 2), H(1), measure 1 and 2, correct qubit 3.

    Corrections per outcome are I, X, Z and ZX (X applied first).
    """
    psi = _as_qubit(psi)
    state = psi.tensor(bell(0, 0))
    state = apply(make_gate("CNOT"), state, (0, 1))
    state = apply(make_gate("H"), state, 0)
    branches = []
    for record in _branches(state, (0, 1)):
        bits = record.outcome
        received = StateVector(record.state.as_tensor()[bits], (2,)).normalized()
        corrected = received
        for name in _CORRECTIONS[bits]:
            corrected = apply(make_gate(name), corrected)
        branches.append(TeleportBranch(bits, record.probability, received, corrected, psi.fidelity(corrected)))
    match mode:
        case "enumerate":
            return branches
        case "sampled":
            rng = np.random.default_rng(seed)
            p = np.array([b.probability for b in branches])
            return branches[int(rng.choice(len(branches), p=p / p.sum()))]
        case _:
            raise PreconditionError(f"unknown mode {mode!r}")


def deutsch_jozsa(table: Sequence[int]) -> str:
    """
    Decide constant against balanced with one run of H..H, U_f, H on the inputs.

    >>> deutsch_jozsa([0, 1]), deutsch_jozsa([1, 1])
    ('balanced', 'constant')
    """
    n = _check_table(table)
    ones = sum(table)
    if ones not in (0, len(table), len(table) // 2):
        raise PreconditionError(f"f = {list(table)} is neither constant nor balanced")
    state = StateVector.ket([0] * n + [1])
    hadamard = make_gate("H")
    for q in range(n + 1):
        state = apply(hadamard, state, q)
    state = apply(_oracle(table), state, range(n + 1))
    for q in range(n):
        state = apply(hadamard, state, q)
    zero = [r for r in measure(state, range(n)) if not any(r.outcome)]
    verdict = "constant" if zero and zero[0].probability > 0.5 else "balanced"
    log.debug("f=%s -> %s", list(table), verdict)
    return verdict


def bloch_coords(psi: StateVector | Sequence[complex]) -> tuple[float, float, float]:
    """
    (xi, eta, zeta) = (sin t cos f, sin t sin f, cos t) of cos(t/2)|0> + e^(i f) sin(t/2)|1>.

    >>> bloch_coords([1, 0])
    (0.0, 0.0, 1.0)
    """
    a, b = _as_qubit(psi).amplitudes
    ab = np.conj(a) * b
    return float(2 * ab.real), float(2 * ab.imag), float(abs(a) ** 2 - abs(b) ** 2)


def bloch_angles(psi: StateVector | Sequence[complex]) -> tuple[float, float]:
    """(theta, phi) with the |0> amplitude made real and nonnegative."""
    a, b = _as_qubit(psi).amplitudes
    theta = 2 * float(np.arccos(np.clip(abs(a), 0, 1)))
    if abs(a) < ATOL or abs(b) < ATOL:
        return theta, 0.0
    return theta, float(np.angle(b / a) % (2 * np.pi))


def general_qubit(theta: float, phi: float) -> StateVector:
    """S(pi/2 + phi) H S(2 theta) H |0> = e^(i theta)(cos theta |0> + e^(i phi) sin theta |1>)."""
    state = StateVector.ket([0])
    for gate in (make_gate("H"), make_gate("S", 2 * theta), make_gate("H"), make_gate("S", np.pi / 2 + phi)):
        state = apply(gate, state)
    return state


def basis_probabilities(state: StateVector, basis: Basis) -> np.ndarray:
    """Outcome distribution when measuring `state` in `basis`."""
    if len(state) != basis.dimension:
        raise PreconditionError(f"state of size {len(state)} against a basis of dimension {basis.dimension}")
    return np.abs(basis.to_complex().conj() @ state.amplitudes) ** 2


def basis_concurrences(basis: Basis) -> list[float]:
    """Concurrence of every vector of a d = 4 basis read as a two-qubit state."""
    if basis.dimension != 4:
        raise PreconditionError("two-qubit concurrence needs d = 4")
    return [concurrence(StateVector(v.amplitudes(), (2, 2))) for v in basis]
