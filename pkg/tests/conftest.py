import datetime as dt

import numpy as np
import pytest

from qledger.accounting import (
    AccountClass,
    EntryLine,
    Journal,
    JournalEntry,
    Ledger,
    Side,
)

STANDARD_CHART = {
    "Cash": AccountClass.ASSET,
    "Receivables": AccountClass.ASSET,
    "Supplies": AccountClass.ASSET,
    "Payables": AccountClass.LIABILITY,
    "Loans": AccountClass.LIABILITY,
    "Capital": AccountClass.CAPITAL,
    "Revenue": AccountClass.REVENUE,
    "Fees": AccountClass.REVENUE,
    "Rent": AccountClass.EXPENSE,
    "Wages": AccountClass.EXPENSE,
    "Drawing": AccountClass.DRAWING,
}


@pytest.fixture
def chart():
    return dict(STANDARD_CHART)


@pytest.fixture
def empty_ledger(chart):
    return Ledger.empty(chart)


def entry(entry_id, lines, day=1):
    """Shorthand: lines as (account, 'd'|'c', amount) triples."""
    side = {"d": Side.DEBIT, "c": Side.CREDIT}
    return JournalEntry(
        id=entry_id,
        date=dt.date(2026, 1, day),
        memo="",
        lines=tuple(EntryLine(a, side[s], amount) for a, s, amount in lines),
    )


def _split(rng, total, parts):
    """Composition of `total` into `parts` positive integers."""
    if parts == 1:
        return [total]
    cuts = sorted(rng.choice(np.arange(1, total), size=parts - 1, replace=False))
    return [int(b - a) for a, b in zip([0, *cuts], [*cuts, total])]


def random_entry(rng, entry_id, accounts, max_lines=6):
    """A balanced entry with 2..max_lines lines and positive amounts."""
    n_lines = int(rng.integers(2, max_lines + 1))
    n_debits = int(rng.integers(1, n_lines))
    n_credits = n_lines - n_debits
    debit_amounts = [int(rng.integers(10, 10_000)) for _ in range(n_debits)]
    credit_amounts = _split(rng, sum(debit_amounts), n_credits)
    lines = [
        (str(rng.choice(accounts)), "d", amount) for amount in debit_amounts
    ] + [(str(rng.choice(accounts)), "c", amount) for amount in credit_amounts]
    return entry(entry_id, lines)


def random_journal(rng, accounts, n_entries, prefix="e"):
    return Journal(
        tuple(
            random_entry(rng, f"{prefix}{i}", accounts) for i in range(n_entries)
        )
    )


@pytest.fixture
def rng():
    return np.random.default_rng(20260809)
