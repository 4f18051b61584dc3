"""Dense statevector simulator: gates, Fourier transform, adder, search.

Conventions: qubit 0 is the least-significant bit of the basis-state
index, so |a> for an integer a has amplitude 1 at index a. Gate matrices
are written in the printed ket order, with the first target as the
leftmost ket slot. All randomness comes from explicit generators passed
by the caller.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Iterable, Sequence

import numpy as np

from .errors import BadTargets, NoMarkedItem, NonUnitaryU, OutOfRange

MAX_QUBITS = 20
GROVER_MAX_QUBITS = 12
_NORM_TOL = 1e-10
_UNITARY_TOL = 1e-12


@dataclass
class OpCounter:
    """Running tally of work done: oracle queries, gate and row operations."""

    oracle_calls: int = 0
    gate_applications: int = 0
    row_operations: int = 0


@dataclass(frozen=True, eq=False)
class StateVector:
    """A register of ``n_qubits`` qubits held as 2^n unit-norm amplitudes."""

    n_qubits: int
    amplitudes: np.ndarray

    def __post_init__(self) -> None:
        if not 1 <= self.n_qubits <= MAX_QUBITS:
            raise ValueError(f"n_qubits must be in [1, {MAX_QUBITS}], got {self.n_qubits}")
        amps = np.asarray(self.amplitudes, dtype=complex).reshape(-1)
        if amps.size != 2**self.n_qubits:
            raise ValueError(
                f"expected {2**self.n_qubits} amplitudes, got {amps.size}"
            )
        if abs(float(np.vdot(amps, amps).real) - 1.0) > _NORM_TOL:
            raise ValueError("amplitudes are not unit norm")
        object.__setattr__(self, "amplitudes", amps.copy())

    @classmethod
    def basis(cls, n_qubits: int, index: int = 0) -> "StateVector":
        amps = np.zeros(2**n_qubits, dtype=complex)
        amps[index] = 1.0
        return cls(n_qubits, amps)

    @classmethod
    def uniform(cls, n_qubits: int) -> "StateVector":
        dim = 2**n_qubits
        return cls(n_qubits, np.full(dim, 1 / math.sqrt(dim), dtype=complex))

    @property
    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2


@dataclass(frozen=True, eq=False)
class Gate:
    """A k-qubit unitary; construction rejects non-unitary matrices."""

    arity: int
    matrix: np.ndarray

    def __post_init__(self) -> None:
        mat = np.asarray(self.matrix, dtype=complex)
        dim = 2**self.arity
        if mat.shape != (dim, dim):
            raise ValueError(f"arity-{self.arity} gate needs a {dim}x{dim} matrix")
        defect = np.max(np.abs(mat.conj().T @ mat - np.eye(dim)))
        if defect > _UNITARY_TOL:
            raise NonUnitaryU(f"matrix is not unitary (defect {defect:.3e})")
        object.__setattr__(self, "matrix", mat.copy())


def hadamard() -> Gate:
    return Gate(1, np.array([[1, 1], [1, -1]], dtype=complex) / math.sqrt(2))


def phase(phi: float) -> Gate:
    """diag(1, e^{i phi}); phase(0) is the identity."""
    return Gate(1, np.array([[1, 0], [0, np.exp(1j * phi)]], dtype=complex))


def cnot() -> Gate:
    """Control is the first target; flips the second when the control is 1."""
    return Gate(
        2,
        np.array(
            [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex
        ),
    )


def controlled_u(u: np.ndarray) -> Gate:
    """Block diag(I, U) for a 2x2 unitary U; control is the first target."""
    u = np.asarray(u, dtype=complex)
    if u.shape != (2, 2):
        raise NonUnitaryU("controlled unitary must be 2x2")
    defect = np.max(np.abs(u.conj().T @ u - np.eye(2)))
    if defect > _UNITARY_TOL:
        raise NonUnitaryU(f"U is not unitary (defect {defect:.3e})")
    mat = np.eye(4, dtype=complex)
    mat[2:, 2:] = u
    return Gate(2, mat)


def _check_targets(n_qubits: int, targets: Sequence[int]) -> tuple[int, ...]:
    targets = tuple(int(t) for t in targets)
    if len(set(targets)) != len(targets):
        raise BadTargets(f"targets must be distinct, got {targets}")
    for t in targets:
        if not 0 <= t < n_qubits:
            raise BadTargets(f"target {t} out of range for {n_qubits} qubits")
    return targets


def _apply_unitary(
    amps: np.ndarray, matrix: np.ndarray, targets: Sequence[int], n_qubits: int
) -> np.ndarray:
    """Apply a 2^k unitary to the given qubits; targets[0] is the label MSB."""
    k = len(targets)
    psi = amps.reshape([2] * n_qubits)
    src = [n_qubits - 1 - t for t in targets]
    psi = np.moveaxis(psi, src, range(k))
    tail = psi.shape[k:]
    psi = matrix @ psi.reshape(2**k, -1)
    psi = np.moveaxis(psi.reshape([2] * k + list(tail)), range(k), src)
    return np.ascontiguousarray(psi).reshape(-1)


def apply_gate(
    state: StateVector,
    gate: Gate,
    targets: Sequence[int],
    counter: OpCounter | None = None,
) -> StateVector:
    """Apply a gate to the listed qubits and return the new state."""
    targets = _check_targets(state.n_qubits, targets)
    if len(targets) != gate.arity:
        raise BadTargets(
            f"gate of arity {gate.arity} applied to {len(targets)} targets"
        )
    amps = _apply_unitary(state.amplitudes, gate.matrix, targets, state.n_qubits)
    if counter is not None:
        counter.gate_applications += 1
    return StateVector(state.n_qubits, amps)


def measure(
    state: StateVector, qubits: Iterable[int], rng: np.random.Generator
) -> tuple[tuple[int, ...], StateVector]:
    """Measure the listed qubits.

    Returns the outcome bits (aligned with the qubit list) and the
    renormalized post-measurement state.
    """
    qubits = _check_targets(state.n_qubits, tuple(qubits))
    probs = state.probabilities
    index = np.arange(probs.size)
    code = np.zeros(probs.size, dtype=np.int64)
    for j, q in enumerate(qubits):
        code |= ((index >> q) & 1) << j
    marginal = np.bincount(code, weights=probs, minlength=2 ** len(qubits))
    marginal /= marginal.sum()
    outcome = int(rng.choice(marginal.size, p=marginal))
    keep = code == outcome
    amps = np.where(keep, state.amplitudes, 0.0)
    amps /= math.sqrt(float(np.sum(np.abs(amps) ** 2)))
    bits = tuple((outcome >> j) & 1 for j in range(len(qubits)))
    return bits, StateVector(state.n_qubits, amps)


def bits_to_int(bits: Sequence[int]) -> int:
    return sum(bit << j for j, bit in enumerate(bits))


# -- Fourier transform and arithmetic -----------------------------------------


def _fourier_matrix(m: int, inverse: bool) -> np.ndarray:
    dim = 2**m
    k = np.arange(dim)
    exponents = np.outer(k, k) % dim
    sign = -1.0 if inverse else 1.0
    return np.exp(sign * 2j * np.pi * exponents / dim) / math.sqrt(dim)


def qft(
    state: StateVector,
    qubits: Sequence[int],
    inverse: bool = False,
    counter: OpCounter | None = None,
) -> StateVector:
    """Fourier transform on the subregister; qubits[0] is its least bit.

    Normalization is 1/sqrt(2^m), which keeps the map unitary. With one
    qubit this is exactly the Hadamard gate.
    """
    qubits = _check_targets(state.n_qubits, tuple(qubits))
    matrix = _fourier_matrix(len(qubits), inverse)
    amps = _apply_unitary(
        state.amplitudes, matrix, tuple(reversed(qubits)), state.n_qubits
    )
    if counter is not None:
        counter.gate_applications += 1
    return StateVector(state.n_qubits, amps)


def character_eval(
    a: Sequence[int], x: Sequence[int], n: int
) -> complex:
    """exp((2 pi i / 2^n) * sum_i a_i x_i) for bit vectors a and x."""
    for v in (*a, *x):
        if v not in (0, 1):
            raise ValueError("components must be 0 or 1")
    total = sum(ai * xi for ai, xi in zip(a, x))
    return complex(np.exp(2j * np.pi * total / 2**n))


def quantum_add(a: int, b: int, n: int, counter: OpCounter | None = None) -> int:
    """(a + b) mod 2^n via phase rotations between a transform pair.

    Encodes ``a``, moves to the Fourier basis, applies one phase rotation
    per set bit of ``b`` and per register qubit (rotations that would be
    full turns are the wraparound and are skipped), transforms back, and
    reads the register out. The result is deterministic.
    """
    if n < 1 or n > 10:
        raise OutOfRange(f"register width must be in [1, 10], got {n}")
    if not 0 <= a < 2**n or not 0 <= b < 2**n:
        raise OutOfRange(f"operands must lie in [0, 2^{n}), got {a}, {b}")
    register = tuple(range(n))
    state = StateVector.basis(n, a)
    state = qft(state, register, counter=counter)
    for j in range(n):
        if not (b >> j) & 1:
            continue
        for ell in range(n - j):
            angle = 2 * np.pi * 2 ** (j + ell) / 2**n
            state = apply_gate(state, phase(angle), (ell,), counter)
    state = qft(state, register, inverse=True, counter=counter)
    outcome = int(np.argmax(state.probabilities))
    return outcome


# -- oracle problems -----------------------------------------------------------


@dataclass(frozen=True)
class BoolOracle:
    """A total Boolean function on n-bit inputs, queried by integer index."""

    n: int
    f: Callable[[int], int]

    @classmethod
    def from_marked(cls, n: int, marked: Iterable[int]) -> "BoolOracle":
        marked_set = frozenset(int(m) for m in marked)
        for m in marked_set:
            if not 0 <= m < 2**n:
                raise OutOfRange(f"marked index {m} out of range for n={n}")
        return cls(n, lambda x: int(x in marked_set))


class DeutschVerdict(Enum):
    CONSTANT = "constant"
    BALANCED = "balanced"


def _xor_oracle_gate(f: Callable[[int], int]) -> np.ndarray:
    """|x>|y> -> |x>|y xor f(x)> on (input, ancilla), input as label MSB."""
    mat = np.zeros((4, 4), dtype=complex)
    for x in (0, 1):
        for y in (0, 1):
            mat[x * 2 + (y ^ int(bool(f(x)))), x * 2 + y] = 1.0
    return mat


def deutsch(f: BoolOracle, counter: OpCounter | None = None) -> DeutschVerdict:
    """Classify a 1-bit function as constant or balanced with one query.

    Runs the sandwich of Hadamards around the function oracle against the
    (|0> - |1>) ancilla and reads the first qubit.
    """
    if f.n != 1:
        raise BadTargets(f"deutsch needs a 1-bit function, got n={f.n}")
    counter = counter if counter is not None else OpCounter()
    h = hadamard()
    state = StateVector.basis(2, 0)
    # Ancilla (qubit 1) to (|0> - |1>)/sqrt(2): phase(pi) after H flips |1>.
    state = apply_gate(state, h, (1,), counter)
    state = apply_gate(state, phase(np.pi), (1,), counter)
    state = apply_gate(state, h, (0,), counter)
    oracle = Gate(2, _xor_oracle_gate(f.f))
    state = apply_gate(state, oracle, (0, 1))
    counter.oracle_calls += 1
    state = apply_gate(state, h, (0,), counter)
    prob_one = float(np.sum(state.probabilities[1::2]))
    return DeutschVerdict.BALANCED if prob_one > 0.5 else DeutschVerdict.CONSTANT


def grover_success_probability(n: int, marked_count: int, iterations: int) -> float:
    """sin^2((2r+1) theta) with theta = arcsin(sqrt(M / 2^n))."""
    theta = math.asin(math.sqrt(marked_count / 2**n))
    return math.sin((2 * iterations + 1) * theta) ** 2


def grover_iterations(n: int, marked_count: int) -> int:
    """floor((pi/4) sqrt(2^n / M)), the fixed schedule for known M."""
    return int(math.floor(math.pi / 4 * math.sqrt(2**n / marked_count)))


def _grover_run(
    mask: np.ndarray,
    n: int,
    iterations: int,
    rng: np.random.Generator,
    counter: OpCounter,
) -> int:
    """One prepared register, ``iterations`` sign-flip/reflect rounds, one readout."""
    h = hadamard()
    state = StateVector.basis(n, 0)
    for q in range(n):
        state = apply_gate(state, h, (q,), counter)
    for _ in range(iterations):
        amps = state.amplitudes.copy()
        amps[mask] *= -1.0
        counter.oracle_calls += 1
        state = StateVector(n, amps)
        for q in range(n):
            state = apply_gate(state, h, (q,), counter)
        amps = state.amplitudes.copy()
        amps[0] *= -1.0
        counter.gate_applications += 1
        state = StateVector(n, amps)
        for q in range(n):
            state = apply_gate(state, h, (q,), counter)
    bits, _ = measure(state, range(n), rng)
    return bits_to_int(bits)


def grover_search(
    oracle: BoolOracle,
    n: int,
    marked_count_hint: int | None = None,
    *,
    rng: np.random.Generator,
    counter: OpCounter | None = None,
) -> int:
    """Find an input the oracle marks; the returned index is always verified.

    With a marked-count hint the iteration count is fixed from the hint;
    otherwise iteration counts are drawn from an exponentially growing
    window (unknown marked count). Every candidate is checked with one
    classical oracle call before being returned. Raises NoMarkedItem once
    ceil(9 sqrt(2^n)) oracle calls have been spent without a verified hit.
    """
    if not 1 <= n <= GROVER_MAX_QUBITS:
        raise OutOfRange(f"n must be in [1, {GROVER_MAX_QUBITS}], got {n}")
    if oracle.n != n:
        raise BadTargets(f"oracle is on {oracle.n} bits, search asked for {n}")
    if marked_count_hint is not None and not 1 <= marked_count_hint <= 2**n:
        raise OutOfRange(f"marked count hint {marked_count_hint} out of range")
    counter = counter if counter is not None else OpCounter()
    dim = 2**n
    mask = np.fromiter((bool(oracle.f(i)) for i in range(dim)), dtype=bool, count=dim)
    cutoff = math.ceil(9 * math.sqrt(dim))
    spent = 0
    window = 1.0
    while spent <= cutoff:
        if marked_count_hint is not None:
            r = grover_iterations(n, marked_count_hint)
        else:
            r = int(rng.integers(0, max(1, math.ceil(window))))
            window = min(math.ceil(1.2 * window), math.sqrt(dim))
        candidate = _grover_run(mask, n, r, rng, counter)
        spent += r
        counter.oracle_calls += 1
        spent += 1
        if oracle.f(candidate):
            return candidate
    raise NoMarkedItem(f"no verified hit within {cutoff} oracle calls")
