"""Input-output economics reduced to linear systems.

Closed model: consumption equals production, A x = x, solved as the
one-dimensional kernel of (I - A). Open model: external demand d,
(I - A) x = d, solved as a unique system. Both go through the same
reduced row-echelon routine, which also serves as the reference
implementation for the search-driven eliminator in ``qgje``.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from pathlib import Path

import numpy as np

from .errors import DegenerateKernel, PreconditionViolated, SingularSystem

DEFAULT_PIVOT_TOL = 1e-10
CLOSED_RESIDUAL_TOL = 1e-10
OPEN_RESIDUAL_TOL = 1e-8


class SolutionKind(Enum):
    UNIQUE = "unique"
    ONE_PARAMETER_RAY = "one_parameter_ray"
    INCONSISTENT = "inconsistent"
    HIGHER_DIM_KERNEL = "higher_dim_kernel"


@dataclass(frozen=True, eq=False)
class RrefResult:
    """Reduced row-echelon form of an augmented matrix, classified.

    ``x`` is the particular solution with free variables at zero (None
    when inconsistent). ``kernel_basis`` has one row per free variable.
    """

    rref: np.ndarray
    pivot_columns: tuple[int, ...]
    kind: SolutionKind
    x: np.ndarray | None
    kernel_basis: np.ndarray | None
    kernel_dim: int


def classify_rref(rref: np.ndarray, pivot_columns: tuple[int, ...], tol: float) -> RrefResult:
    """Build an RrefResult from a finished reduction."""
    n_vars = rref.shape[1] - 1
    coeff_pivots = tuple(c for c in pivot_columns if c < n_vars)
    inconsistent = any(c == n_vars for c in pivot_columns)
    free_columns = [c for c in range(n_vars) if c not in coeff_pivots]
    kernel_dim = len(free_columns)

    kernel_basis = None
    if kernel_dim:
        kernel_basis = np.zeros((kernel_dim, n_vars))
        for i, free in enumerate(free_columns):
            kernel_basis[i, free] = 1.0
            for row, col in enumerate(coeff_pivots):
                kernel_basis[i, col] = -rref[row, free]

    x = None
    if not inconsistent:
        x = np.zeros(n_vars)
        for row, col in enumerate(coeff_pivots):
            x[col] = rref[row, -1]

    if inconsistent:
        kind = SolutionKind.INCONSISTENT
    elif kernel_dim == 0:
        kind = SolutionKind.UNIQUE
    elif kernel_dim == 1:
        kind = SolutionKind.ONE_PARAMETER_RAY
    else:
        kind = SolutionKind.HIGHER_DIM_KERNEL
    return RrefResult(rref, pivot_columns, kind, x, kernel_basis, kernel_dim)


def classical_gje(m: np.ndarray, tol: float = DEFAULT_PIVOT_TOL) -> RrefResult:
    """Reduce an augmented matrix to RREF and classify its solution set.

    Pivoting takes the first entry in the column whose magnitude exceeds
    ``tol``. The last column is the right-hand side; a pivot landing there
    means the system is inconsistent.
    """
    r = np.array(m, dtype=float)
    if r.ndim != 2 or r.size == 0:
        raise ValueError("expected a non-empty 2-d augmented matrix")
    if tol <= 0:
        raise ValueError("tol must be positive")
    n_rows, n_cols = r.shape
    pivot_columns: list[int] = []
    row = 0
    for col in range(n_cols):
        if row == n_rows:
            break
        pivot = next((i for i in range(row, n_rows) if abs(r[i, col]) > tol), None)
        if pivot is None:
            continue
        if pivot != row:
            r[[row, pivot]] = r[[pivot, row]]
        r[row] = r[row] / r[row, col]
        for i in range(n_rows):
            if i != row and abs(r[i, col]) > tol:
                r[i] = r[i] - r[i, col] * r[row]
        pivot_columns.append(col)
        row += 1
    return classify_rref(r, tuple(pivot_columns), tol)


# -- model solvers -------------------------------------------------------------


def _check_matrix(a: np.ndarray) -> np.ndarray:
    a = np.asarray(a, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.size == 0:
        raise PreconditionViolated("consumption matrix must be square and non-empty")
    if np.any(a < 0):
        raise PreconditionViolated("consumption coefficients must be non-negative")
    return a


def solve_closed(a: np.ndarray, tol: float = DEFAULT_PIVOT_TOL) -> np.ndarray:
    """Production shares x with A x = x, normalized to sum to 1.

    Requires every column of A to sum to 1 (within 1e-9). The kernel of
    (I - A) must be exactly one-dimensional, otherwise DegenerateKernel
    is raised rather than picking a ray arbitrarily.
    """
    a = _check_matrix(a)
    n = a.shape[0]
    col_sums = a.sum(axis=0)
    if np.any(np.abs(col_sums - 1.0) > 1e-9):
        raise PreconditionViolated(
            f"closed model needs unit column sums, got {col_sums.tolist()}"
        )
    system = np.hstack([np.eye(n) - a, np.zeros((n, 1))])
    result = classical_gje(system, tol)
    if result.kind is not SolutionKind.ONE_PARAMETER_RAY:
        raise DegenerateKernel(
            f"kernel dimension {result.kernel_dim}, expected exactly 1"
        )
    ray = result.kernel_basis[0]
    total = ray.sum()
    if abs(total) < tol:
        raise DegenerateKernel("kernel ray has zero component sum")
    x = ray / total
    x[np.abs(x) < 1e-12] = 0.0
    residual = float(np.max(np.abs((np.eye(n) - a) @ x)))
    if residual > CLOSED_RESIDUAL_TOL:
        raise DegenerateKernel(f"kernel residual {residual:.3e} too large")
    return x


def solve_open(
    a: np.ndarray, d: np.ndarray, tol: float = DEFAULT_PIVOT_TOL
) -> np.ndarray:
    """Production X with (I - A) X = d for non-negative demand d.

    Requires every column sum of A to be strictly below 1, which makes
    (I - A) invertible. Solved by elimination, never by forming an
    explicit inverse.
    """
    a = _check_matrix(a)
    n = a.shape[0]
    d = np.asarray(d, dtype=float).reshape(-1)
    if d.size != n:
        raise PreconditionViolated(f"demand has size {d.size}, matrix is {n}x{n}")
    if np.any(d < 0):
        raise PreconditionViolated("demand must be non-negative")
    col_sums = a.sum(axis=0)
    if np.any(col_sums >= 1.0 - 1e-12):
        raise PreconditionViolated(
            f"open model needs column sums below 1, got {col_sums.tolist()}"
        )
    system = np.hstack([np.eye(n) - a, d.reshape(-1, 1)])
    result = classical_gje(system, tol)
    if result.kind is not SolutionKind.UNIQUE:
        raise SingularSystem(f"expected a unique solution, got {result.kind.value}")
    x = result.x
    residual = float(np.max(np.abs((np.eye(n) - a) @ x - d)))
    if residual > OPEN_RESIDUAL_TOL:
        raise SingularSystem(f"solution residual {residual:.3e} too large")
    return x


# -- file formats ----------------------------------------------------------------


def load_matrix_csv(path: str | Path) -> np.ndarray:
    """Dense matrix, one CSV row per line."""
    rows = []
    with open(path, "r", encoding="utf-8") as fh:
        for raw in fh:
            raw = raw.strip()
            if not raw:
                continue
            rows.append([float(cell) for cell in raw.split(",")])
    if not rows:
        raise ValueError(f"{path}: empty matrix file")
    widths = {len(row) for row in rows}
    if len(widths) != 1:
        raise ValueError(f"{path}: ragged rows, widths {sorted(widths)}")
    return np.array(rows, dtype=float)


def load_vector_csv(path: str | Path) -> np.ndarray:
    """Vector as a single comma-separated line."""
    matrix = load_matrix_csv(path)
    if matrix.shape[0] != 1:
        raise ValueError(f"{path}: expected a single line, got {matrix.shape[0]}")
    return matrix[0]


def result_to_dict(result: RrefResult, residual_inf: float | None) -> dict:
    """JSON-ready summary: {"kind", "x", "residual_inf"}."""
    return {
        "kind": result.kind.value,
        "x": None if result.x is None else [float(v) for v in result.x],
        "residual_inf": residual_inf,
    }
