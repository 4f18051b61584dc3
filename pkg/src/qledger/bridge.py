"""Account operations replayed at the gate level.

Each routine here realizes one bookkeeping move on a small register and
is checked against its classical counterpart: balance decomposition via
a controlled flip, adjustments via a side twist, transfers via scalar
mobility across tensor factors, and the Hadamard split into a flip and
a quarter-turn rotation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .accounting import (
    BalanceDecomposition,
    Money,
    Side,
    StochasticTAccount,
    TAccount,
)
from .errors import NonNormalizedAmplitudes, SplitTooLarge
from .quantum import StateVector, apply_gate, cnot, hadamard, measure

_DET_RNG = np.random.default_rng(0)  # measurements below are deterministic


@dataclass(frozen=True)
class AccountEncoding:
    """A one-qubit state carrying an account's side distribution.

    The monetary amounts stay classical side data; only the side
    probabilities live in the amplitudes.
    """

    debit_amount: Money
    credit_amount: Money
    state: StateVector

    @classmethod
    def from_taccount(cls, account: TAccount) -> "AccountEncoding":
        """Basis encoding for a one-sided account: debit |0>, credit |1>."""
        if account.credit == 0:
            return cls(account.debit, account.credit, StateVector.basis(1, 0))
        if account.debit == 0:
            return cls(account.debit, account.credit, StateVector.basis(1, 1))
        raise ValueError(
            f"account {account.name!r} has both sides set; "
            "deterministic encoding needs a one-sided account"
        )


def encode_account(s: StochasticTAccount) -> AccountEncoding:
    """Encode amplitudes (alpha, beta) on one qubit, amounts alongside."""
    norm = abs(s.alpha) ** 2 + abs(s.beta) ** 2
    if abs(norm - 1.0) > 1e-9:
        raise NonNormalizedAmplitudes(f"|alpha|^2 + |beta|^2 = {norm!r}")
    amps = np.array([s.alpha, s.beta], dtype=complex) / math.sqrt(norm)
    return AccountEncoding(s.account.debit, s.account.credit, StateVector(1, amps))


def balance_via_cnot(account: TAccount) -> BalanceDecomposition:
    """Decompose an account with the side selector run through a CNOT.

    The register carries (selector, ancilla): the selector qubit encodes
    which side the surplus sits on, and the CNOT copies it onto the
    ancilla that labels the decomposition branch. Agrees exactly with
    ``accounting.normal_balance``.
    """
    a, b = account.debit, account.credit
    selector = 1 if b > a else 0
    state = StateVector.basis(2, selector)  # qubit 0 = selector, qubit 1 = ancilla
    state = apply_gate(state, cnot(), (0, 1))
    bits, _ = measure(state, (0, 1), _DET_RNG)
    side: Side | None
    if a == b:
        side = None
    else:
        side = Side.DEBIT if bits[0] == 0 else Side.CREDIT
    return BalanceDecomposition(side, abs(a - b), min(a, b))


def adjustment_via_cnot(
    account: TAccount, split: Money, side: Side
) -> tuple[TAccount, TAccount]:
    """Split off part of one side and twist it to the opposite side.

    Returns (kept, twisted): the kept account holds the remainder on the
    original side, the twisted account holds the split amount on the side
    flipped by a CNOT whose control is set.
    """
    available = account.side_amount(side)
    if split < 0 or split > available:
        raise SplitTooLarge(
            f"split {split} outside [0, {available}] on {side.value} "
            f"of {account.name!r}"
        )
    side_bit = 0 if side is Side.DEBIT else 1
    # Qubit 0 is the twist control (set), qubit 1 carries the side bit.
    state = StateVector.basis(2, 1 + 2 * side_bit)
    state = apply_gate(state, cnot(), (0, 1))
    bits, _ = measure(state, (1,), _DET_RNG)
    flipped = Side.DEBIT if bits[0] == 0 else Side.CREDIT

    kept = account.sub(side, split)
    twisted = TAccount(f"{account.name}:twist", account.klass).add(flipped, split)
    return kept, twisted


def transfer_via_tensor(
    amount_scalar: float, left_state: StateVector, right_state: StateVector
) -> float:
    """Max-norm gap between scaling the left or the right tensor factor.

    Scalars move freely across tensor factors, which is what justifies
    moving an amount between accounts; the witness is ~0 always.
    """
    left = np.kron(amount_scalar * left_state.amplitudes, right_state.amplitudes)
    right = np.kron(left_state.amplitudes, amount_scalar * right_state.amplitudes)
    return float(np.max(np.abs(left - right)))


@dataclass(frozen=True, eq=False)
class HadamardFactorization:
    """H written as a quarter-turn rotation times a side flip."""

    rotation: np.ndarray
    flip: np.ndarray


def hadamard_factorization() -> HadamardFactorization:
    """The pair (rotation, flip) with rotation @ flip == H, checked on build."""
    rotation = np.array([[1.0, 1.0], [-1.0, 1.0]]) / math.sqrt(2)
    flip = np.array([[0.0, 1.0], [1.0, 0.0]])
    gap = np.max(np.abs(rotation @ flip - hadamard().matrix.real))
    if gap > 1e-15:
        raise AssertionError(f"factorization broke: max entry gap {gap:.3e}")
    return HadamardFactorization(rotation, flip)
