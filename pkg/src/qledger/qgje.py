"""Gauss-Jordan elimination with pivot search delegated to Grover search.

Pivot hunting over each column slice runs as an amplitude-amplification
search on the simulator with an unknown marked count; every candidate is
verified before it is used, and an exhausted search falls back to a
classical confirmation scan so a false "all zero" verdict can never
corrupt the reduction. Row work (scales and eliminations) and oracle
queries are tallied and compared against the operation-count bound.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import NoMarkedItem
from .leontief import RrefResult, classify_rref
from .quantum import BoolOracle, OpCounter, grover_search


class CountMode(Enum):
    ORACLE_CALLS = "oracle_calls"
    GATE_APPLICATIONS = "gate_applications"


@dataclass(frozen=True)
class QgjeConfig:
    pivot_tol: float = 1e-10
    seed: int = 0
    count_mode: CountMode = CountMode.ORACLE_CALLS

    def __post_init__(self) -> None:
        if self.pivot_tol <= 0:
            raise ValueError("pivot_tol must be positive")


@dataclass(frozen=True, eq=False)
class QgjeReport:
    """Elimination outcome plus the operation accounting.

    ``counted_operations`` is row_operations plus the count selected by
    the config's count mode; ``within_bound`` compares it against
    ceil(op_bound(N)) with N the number of equations.
    """

    result: RrefResult
    counter: OpCounter
    bound: float
    counted_operations: int
    within_bound: bool
    seed: int

    def as_dict(self) -> dict:
        x = self.result.x
        return {
            "kind": self.result.kind.value,
            "x": None if x is None else [float(v) for v in x],
            "row_operations": self.counter.row_operations,
            "oracle_calls": self.counter.oracle_calls,
            "bound": self.bound,
            "within_bound": self.within_bound,
            "seed": self.seed,
        }


def op_bound(n: int) -> float:
    """N(N-1)(2N+1)/3 plus the floored sqrt(2)-geometric search term."""
    if n < 1:
        raise ValueError(f"n must be at least 1, got {n}")
    row_term = n * (n - 1) * (2 * n + 1) / 3
    root = math.sqrt(2.0)
    search_term = math.floor(root * (root**n - 1) / (root - 1))
    return row_term + search_term


def grover_pivot(
    column: np.ndarray,
    tol: float,
    rng: np.random.Generator,
    counter: OpCounter,
) -> int | None:
    """Index of a verified above-tolerance entry in the slice, or None.

    The slice is zero-padded to the next power of two to form the search
    domain. When the search budget runs out, a classical scan (charged to
    the counter) confirms the all-zero verdict or rescues a missed entry.
    """
    column = np.asarray(column, dtype=float).reshape(-1)
    length = column.size
    if length == 0:
        raise ValueError("empty column slice")
    if length == 1:
        counter.oracle_calls += 1
        return 0 if abs(column[0]) > tol else None

    n = max(1, math.ceil(math.log2(length)))

    def marked(j: int) -> int:
        return int(j < length and abs(column[j]) > tol)

    try:
        return grover_search(BoolOracle(n, marked), n, rng=rng, counter=counter)
    except NoMarkedItem:
        for j in range(length):
            counter.oracle_calls += 1
            if abs(column[j]) > tol:
                return j
        return None


def quantum_gje(m: np.ndarray, config: QgjeConfig = QgjeConfig()) -> QgjeReport:
    """Reduce an augmented matrix to RREF with searched pivots.

    Column by column: search the active slice for a pivot, swap it up,
    scale it to a leading 1, eliminate every other row's entry, then move
    on; a final backward sweep clears anything left above the pivots.
    The result classification matches ``leontief.classical_gje``.
    """
    r = np.array(m, dtype=float)
    if r.ndim != 2 or r.size == 0:
        raise ValueError("expected a non-empty 2-d augmented matrix")
    n_rows, n_cols = r.shape
    rng = np.random.default_rng(config.seed)
    counter = OpCounter()
    tol = config.pivot_tol

    pivot_columns: list[int] = []
    row = 0
    for col in range(n_cols):
        if row == n_rows:
            break
        offset = grover_pivot(r[row:, col], tol, rng, counter)
        if offset is None:
            continue
        pivot = row + offset
        if pivot != row:
            r[[row, pivot]] = r[[pivot, row]]
        r[row] = r[row] / r[row, col]
        counter.row_operations += 1
        for i in range(n_rows):
            if i != row and abs(r[i, col]) > tol:
                r[i] = r[i] - r[i, col] * r[row]
                counter.row_operations += 1
        pivot_columns.append(col)
        row += 1

    # Backward sweep over the pivots; entries above are already cleared by
    # the full-column eliminations, so this only pays for residual noise.
    for k in reversed(range(len(pivot_columns))):
        col = pivot_columns[k]
        for i in range(k):
            if abs(r[i, col]) > tol:
                r[i] = r[i] - r[i, col] * r[k]
                counter.row_operations += 1

    result = classify_rref(r, tuple(pivot_columns), tol)
    bound = op_bound(n_rows)
    if config.count_mode is CountMode.ORACLE_CALLS:
        counted = counter.row_operations + counter.oracle_calls
    else:
        counted = counter.row_operations + counter.gate_applications
    within = counted <= math.ceil(bound)
    return QgjeReport(result, counter, bound, counted, within, config.seed)
