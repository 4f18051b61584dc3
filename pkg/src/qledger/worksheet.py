"""The five-pair worksheet and linear business actions on it.

A worksheet row holds one account's cells for the five column pairs:
trial balance, adjustments, adjusted trial balance, income statement,
balance sheet, each pair as (debit, credit). The whole sheet flattens to
one real vector in a fixed order (accounts in chart order, pairs in the
order above, debit before credit), so a business action is just a square
matrix acting on that vector.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .accounting import (
    AccountClass,
    Journal,
    Ledger,
    Money,
    Side,
    post_journal,
    trial_balance,
)
from .errors import DimensionMismatch

PAIR_LABELS = (
    "trial_balance",
    "adjustments",
    "adjusted_trial_balance",
    "income_statement",
    "balance_sheet",
)
CELLS_PER_ROW = 2 * len(PAIR_LABELS)

Cell = tuple  # (debit, credit); integers from build, reals after an action


@dataclass(frozen=True)
class WorksheetRow:
    account: str
    klass: AccountClass
    tb: Cell
    adj: Cell
    atb: Cell
    inc: Cell
    bal: Cell

    @property
    def cells(self) -> tuple:
        return (*self.tb, *self.adj, *self.atb, *self.inc, *self.bal)


@dataclass(frozen=True)
class Worksheet:
    rows: tuple[WorksheetRow, ...]

    def flatten(self) -> np.ndarray:
        """Row-major cell vector; the basis every action matrix acts in."""
        return np.array(
            [value for row in self.rows for value in row.cells], dtype=float
        )

    def with_vector(self, vector: np.ndarray) -> "Worksheet":
        """Same accounts, cells replaced from a flattened vector."""
        vector = np.asarray(vector, dtype=float).reshape(-1)
        if vector.size != CELLS_PER_ROW * len(self.rows):
            raise DimensionMismatch(
                f"vector of size {vector.size} does not fit "
                f"{len(self.rows)} rows of {CELLS_PER_ROW} cells"
            )
        rows = []
        for i, row in enumerate(self.rows):
            c = vector[i * CELLS_PER_ROW : (i + 1) * CELLS_PER_ROW]
            rows.append(
                WorksheetRow(
                    row.account,
                    row.klass,
                    (c[0], c[1]),
                    (c[2], c[3]),
                    (c[4], c[5]),
                    (c[6], c[7]),
                    (c[8], c[9]),
                )
            )
        return Worksheet(tuple(rows))


@dataclass(frozen=True, eq=False)
class BusinessAction:
    """A linear map on the flattened worksheet vector."""

    matrix: np.ndarray

    def __post_init__(self) -> None:
        matrix = np.asarray(self.matrix, dtype=float)
        if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
            raise DimensionMismatch(f"action matrix must be square, got {matrix.shape}")
        object.__setattr__(self, "matrix", matrix)

    @classmethod
    def from_csv(cls, path: str | Path) -> "BusinessAction":
        from .leontief import load_matrix_csv

        return cls(load_matrix_csv(path))


def _net_cell(debit: Money, credit: Money) -> Cell:
    net = debit - credit
    return (net, 0) if net >= 0 else (0, -net)


def build_worksheet(ledger: Ledger, adjustments: Journal | None = None) -> Worksheet:
    """Extend a ledger through adjustments into the five-pair worksheet.

    The trial-balance pair holds each account's normal balance, the
    adjustment pair the raw adjustment postings, the adjusted pair their
    side-netted sum. Revenue and expense rows continue into the income
    statement columns, everything else into the balance sheet columns.
    """
    adjustments = adjustments if adjustments is not None else Journal()
    tb = {row.account: (row.side, row.amount) for row in trial_balance(ledger).rows}
    scratch = post_journal(adjustments, Ledger.empty(ledger.chart))

    rows = []
    for name, klass in ledger.chart.items():
        side, amount = tb[name]
        tb_cell = (
            (amount, 0) if side is Side.DEBIT else (0, amount) if side is Side.CREDIT else (0, 0)
        )
        adj_account = scratch.accounts[name]
        adj_cell = (adj_account.debit, adj_account.credit)
        atb_cell = _net_cell(tb_cell[0] + adj_cell[0], tb_cell[1] + adj_cell[1])
        if klass in (AccountClass.REVENUE, AccountClass.EXPENSE):
            inc_cell, bal_cell = atb_cell, (0, 0)
        else:
            inc_cell, bal_cell = (0, 0), atb_cell
        rows.append(WorksheetRow(name, klass, tb_cell, adj_cell, atb_cell, inc_cell, bal_cell))
    return Worksheet(tuple(rows))


def net_income(w: Worksheet) -> Money:
    """Income-statement credits minus debits, before the carry plug."""
    total = sum(row.inc[1] - row.inc[0] for row in w.rows)
    return int(total) if float(total).is_integer() else total


def apply_business_action(action: BusinessAction, w: Worksheet) -> Worksheet:
    """Apply the action matrix to the flattened sheet.

    The result's cells are reals and are not re-validated here; callers
    that need the balance invariants should run ``validate_worksheet``.
    """
    x = w.flatten()
    if action.matrix.shape != (x.size, x.size):
        raise DimensionMismatch(
            f"action is {action.matrix.shape}, worksheet vector has size {x.size}"
        )
    return w.with_vector(action.matrix @ x)


def validate_worksheet(w: Worksheet) -> None:
    """Check the pair-balance invariants; raises ValueError when broken."""
    tb_d = sum(row.tb[0] for row in w.rows)
    tb_c = sum(row.tb[1] for row in w.rows)
    if tb_d != tb_c:
        raise ValueError(f"trial balance columns differ: {tb_d} != {tb_c}")
    atb_d = sum(row.atb[0] for row in w.rows)
    atb_c = sum(row.atb[1] for row in w.rows)
    if atb_d != atb_c:
        raise ValueError(f"adjusted trial balance columns differ: {atb_d} != {atb_c}")
    carry = net_income(w)
    bal_gap = sum(row.bal[0] - row.bal[1] for row in w.rows)
    if bal_gap != carry:
        raise ValueError(
            f"balance-sheet gap {bal_gap} does not match net income {carry}"
        )


def _carry_cells(carry) -> tuple:
    """The net-income line: a debit plug on income, credit plug on balance."""
    if carry >= 0:
        return (carry, 0, 0, carry)
    return (0, -carry, -carry, 0)


def write_worksheet_csv(w: Worksheet, path: str | Path) -> None:
    """Account rows, the net-income carry line, then a totals row."""
    carry = net_income(w)
    inc_d, inc_c, bal_d, bal_c = _carry_cells(carry)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(
            ["account", "tb_d", "tb_c", "adj_d", "adj_c", "atb_d", "atb_c",
             "is_d", "is_c", "bs_d", "bs_c"]
        )
        for row in w.rows:
            writer.writerow([row.account, *row.cells])
        writer.writerow(["net income", 0, 0, 0, 0, 0, 0, inc_d, inc_c, bal_d, bal_c])
        totals = [sum(row.cells[i] for row in w.rows) for i in range(CELLS_PER_ROW)]
        totals[6] += inc_d
        totals[7] += inc_c
        totals[8] += bal_d
        totals[9] += bal_c
        writer.writerow(["totals", *totals])
