"""Double-entry bookkeeping over two-sided accounts.

An account is an immutable pair of non-negative integer amounts, one per
side (debit, credit), in minor currency units. All arithmetic is exact:
no floats, no rounding. Operations never mutate; they return new values,
and any sequence of balanced postings keeps the ledger's total debits
equal to its total credits.

Also defined here are the flat-file formats: journals as JSON lines,
the chart of accounts as a JSON object, ledger snapshots as a JSON
object, and the trial balance as CSV.
"""

from __future__ import annotations

import csv
import datetime as dt
import json
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Mapping

from .errors import (
    DuplicateEntryId,
    InsufficientAmount,
    MissingCapitalAccount,
    NonNormalizedAmplitudes,
    NonPositiveAmount,
    UnbalancedEntry,
    UnclassifiedAccount,
    UnknownAccount,
)

Money = int
"""Exact count of minor currency units (cents). Never a float."""

INCOME_SUMMARY_ACCOUNT = "Income Summary"


class Side(Enum):
    """The two sides of an account. Debit maps to |0>, credit to |1>."""

    DEBIT = "debit"
    CREDIT = "credit"

    @property
    def opposite(self) -> "Side":
        return Side.CREDIT if self is Side.DEBIT else Side.DEBIT


class AccountClass(Enum):
    ASSET = "asset"
    LIABILITY = "liability"
    CAPITAL = "capital"
    REVENUE = "revenue"
    EXPENSE = "expense"
    DRAWING = "drawing"

    @property
    def is_temporary(self) -> bool:
        """Temporary classes are emptied into capital at period end."""
        return self in _TEMPORARY

    @property
    def normal_side(self) -> Side:
        """The side on which an increase of this class is recorded."""
        return Side.DEBIT if self in _DEBIT_NORMAL else Side.CREDIT


_TEMPORARY = frozenset(
    {AccountClass.REVENUE, AccountClass.EXPENSE, AccountClass.DRAWING}
)
_DEBIT_NORMAL = frozenset(
    {AccountClass.ASSET, AccountClass.EXPENSE, AccountClass.DRAWING}
)


@dataclass(frozen=True)
class TAccount:
    """A named account holding a non-negative amount on each side.

    Negative positions are expressed by the opposite side, never by a
    negative amount.
    """

    name: str
    klass: AccountClass
    debit: Money = 0
    credit: Money = 0

    def __post_init__(self) -> None:
        if self.debit < 0 or self.credit < 0:
            raise ValueError(
                f"account {self.name!r}: side amounts must be non-negative, "
                f"got ({self.debit}, {self.credit})"
            )

    def side_amount(self, side: Side) -> Money:
        return self.debit if side is Side.DEBIT else self.credit

    def add(self, side: Side, amount: Money) -> "TAccount":
        if side is Side.DEBIT:
            return TAccount(self.name, self.klass, self.debit + amount, self.credit)
        return TAccount(self.name, self.klass, self.debit, self.credit + amount)

    def sub(self, side: Side, amount: Money) -> "TAccount":
        return self.add(side, -amount)


@dataclass(frozen=True)
class StochasticTAccount:
    """An account whose side is uncertain: amplitude alpha on debit, beta on credit.

    ``|alpha|^2 + |beta|^2`` must be 1; deviations beyond 1e-9 are rejected.
    """

    account: TAccount
    alpha: complex
    beta: complex

    def __post_init__(self) -> None:
        norm = abs(self.alpha) ** 2 + abs(self.beta) ** 2
        if abs(norm - 1.0) > 1e-9:
            raise NonNormalizedAmplitudes(
                f"|alpha|^2 + |beta|^2 = {norm!r}, expected 1"
            )


@dataclass(frozen=True)
class EntryLine:
    account: str
    side: Side
    amount: Money


@dataclass(frozen=True)
class JournalEntry:
    """One balanced transaction: at least two lines, debits equal credits."""

    id: str
    date: dt.date
    memo: str
    lines: tuple[EntryLine, ...]

    def validate(self) -> None:
        if len(self.lines) < 2:
            raise UnbalancedEntry(f"entry {self.id!r}: needs at least two lines")
        for line in self.lines:
            if line.amount <= 0:
                raise NonPositiveAmount(
                    f"entry {self.id!r}: line amount for {line.account!r} "
                    f"must be positive, got {line.amount}"
                )
        debits = sum(l.amount for l in self.lines if l.side is Side.DEBIT)
        credits = sum(l.amount for l in self.lines if l.side is Side.CREDIT)
        if debits != credits:
            raise UnbalancedEntry(
                f"entry {self.id!r}: debits {debits} != credits {credits}"
            )


@dataclass(frozen=True)
class Journal:
    """An ordered collection of entries. Posting order is entry order."""

    entries: tuple[JournalEntry, ...] = ()

    def validate(self) -> None:
        seen: set[str] = set()
        for entry in self.entries:
            if entry.id in seen:
                raise DuplicateEntryId(f"duplicate entry id {entry.id!r}")
            seen.add(entry.id)


@dataclass(frozen=True)
class Ledger:
    """All accounts of one book, plus the chart classifying them.

    Treated as immutable: posting and closing return new ledgers.
    """

    accounts: Mapping[str, TAccount]
    chart: Mapping[str, AccountClass]

    @classmethod
    def empty(cls, chart: Mapping[str, AccountClass]) -> "Ledger":
        chart = dict(chart)
        accounts = {name: TAccount(name, klass) for name, klass in chart.items()}
        return cls(accounts, chart)

    def account(self, name: str) -> TAccount:
        try:
            return self.accounts[name]
        except KeyError:
            raise UnknownAccount(f"no account named {name!r}") from None

    @property
    def total_debit(self) -> Money:
        return sum(a.debit for a in self.accounts.values())

    @property
    def total_credit(self) -> Money:
        return sum(a.credit for a in self.accounts.values())


@dataclass(frozen=True)
class BalanceDecomposition:
    """An account split into its one-sided surplus and the part that cancels.

    Reconstruction is exact: with a debit-normal side, the account equals
    (normal + balanced, balanced); symmetrically for credit. ``normal_side``
    is None exactly when both sides are equal.
    """

    normal_side: Side | None
    normal_amount: Money
    balanced_amount: Money


# -- posting ----------------------------------------------------------------


def post_entry(entry: JournalEntry, ledger: Ledger) -> Ledger:
    """Post one balanced entry, adding each line to its account's side."""
    entry.validate()
    for line in entry.lines:
        if line.account not in ledger.chart:
            raise UnknownAccount(
                f"entry {entry.id!r}: account {line.account!r} not in chart"
            )
    accounts = dict(ledger.accounts)
    for line in entry.lines:
        accounts[line.account] = accounts[line.account].add(line.side, line.amount)
    return Ledger(accounts, ledger.chart)


def post_journal(journal: Journal, ledger: Ledger) -> Ledger:
    journal.validate()
    for entry in journal.entries:
        ledger = post_entry(entry, ledger)
    return ledger


# -- balances ----------------------------------------------------------------


def normal_balance(account: TAccount) -> BalanceDecomposition:
    """Split (debit, credit) into the excess on one side plus equal rests."""
    a, b = account.debit, account.credit
    if a > b:
        return BalanceDecomposition(Side.DEBIT, a - b, b)
    if b > a:
        return BalanceDecomposition(Side.CREDIT, b - a, a)
    return BalanceDecomposition(None, 0, a)


@dataclass(frozen=True)
class TrialBalanceRow:
    account: str
    side: Side | None
    amount: Money


@dataclass(frozen=True)
class TrialBalance:
    rows: tuple[TrialBalanceRow, ...]
    total_debit: Money
    total_credit: Money


def trial_balance(ledger: Ledger) -> TrialBalance:
    """List every account's normal balance; totals must agree side to side."""
    rows = []
    total_debit = total_credit = 0
    for name, account in ledger.accounts.items():
        dec = normal_balance(account)
        rows.append(TrialBalanceRow(name, dec.normal_side, dec.normal_amount))
        if dec.normal_side is Side.DEBIT:
            total_debit += dec.normal_amount
        elif dec.normal_side is Side.CREDIT:
            total_credit += dec.normal_amount
    return TrialBalance(tuple(rows), total_debit, total_credit)


def verify_accounting_equation(ledger: Ledger, extended: bool = False) -> Money:
    """Residual of assets = liabilities + owner's equity; 0 means it holds.

    The extended form itemizes owner's equity into capital, revenue,
    expense and drawing. Class nets are signed by the class's normal side:
    debit-normal classes count debit minus credit, credit-normal classes
    the reverse.
    """
    nets = {klass: 0 for klass in AccountClass}
    for name, account in ledger.accounts.items():
        klass = ledger.chart.get(name)
        if klass is None:
            raise UnclassifiedAccount(f"account {name!r} has no class")
        signed = account.debit - account.credit
        nets[klass] += signed if klass.normal_side is Side.DEBIT else -signed
    assets = nets[AccountClass.ASSET]
    liabilities = nets[AccountClass.LIABILITY]
    capital = nets[AccountClass.CAPITAL]
    revenue = nets[AccountClass.REVENUE]
    expense = nets[AccountClass.EXPENSE]
    drawing = nets[AccountClass.DRAWING]
    if extended:
        return assets - (liabilities + revenue - expense + capital - drawing)
    owner_equity = capital + revenue - expense - drawing
    return assets - liabilities - owner_equity


# -- movements ----------------------------------------------------------------


def transfer(
    ledger: Ledger,
    from_account: str,
    to_account: str,
    side: Side,
    amount: Money,
) -> Ledger:
    """Move an amount between two accounts on the same side.

    Per-side ledger totals are invariant under this operation.
    """
    src = ledger.account(from_account)
    dst = ledger.account(to_account)
    if amount < 0:
        raise NonPositiveAmount(f"transfer amount must be non-negative, got {amount}")
    if src.side_amount(side) < amount:
        raise InsufficientAmount(
            f"{from_account!r} holds {src.side_amount(side)} on {side.value}, "
            f"cannot transfer {amount}"
        )
    if amount == 0 or from_account == to_account:
        return ledger
    accounts = dict(ledger.accounts)
    accounts[from_account] = src.sub(side, amount)
    accounts[to_account] = dst.add(side, amount)
    return Ledger(accounts, ledger.chart)


def _cancel_balanced(ledger: Ledger, name: str) -> Ledger:
    """Drop the equal part of both sides, keeping only the normal balance."""
    account = ledger.account(name)
    balanced = min(account.debit, account.credit)
    if balanced == 0:
        return ledger
    accounts = dict(ledger.accounts)
    accounts[name] = TAccount(
        name, account.klass, account.debit - balanced, account.credit - balanced
    )
    return Ledger(accounts, ledger.chart)


def close_cycle(ledger: Ledger, capital_account: str) -> tuple[Ledger, Money]:
    """Empty all temporary accounts into capital and report net income.

    Revenue and expense accounts are swept into an income-summary account
    (created on demand), the summary is netted to one side and moved to
    capital, and drawing accounts move straight to capital. A net loss
    lands on capital's debit side.
    """
    klass = ledger.chart.get(capital_account)
    if klass is not AccountClass.CAPITAL:
        raise MissingCapitalAccount(
            f"{capital_account!r} is not a capital-class account"
        )

    net_income = 0
    for name, account in ledger.accounts.items():
        k = ledger.chart[name]
        if name == INCOME_SUMMARY_ACCOUNT:
            continue
        if k is AccountClass.REVENUE:
            net_income += account.credit - account.debit
        elif k is AccountClass.EXPENSE:
            net_income -= account.debit - account.credit

    if INCOME_SUMMARY_ACCOUNT not in ledger.chart:
        chart = dict(ledger.chart)
        chart[INCOME_SUMMARY_ACCOUNT] = AccountClass.CAPITAL
        accounts = dict(ledger.accounts)
        accounts[INCOME_SUMMARY_ACCOUNT] = TAccount(
            INCOME_SUMMARY_ACCOUNT, AccountClass.CAPITAL
        )
        ledger = Ledger(accounts, chart)

    temporaries = [
        name
        for name, k in ledger.chart.items()
        if k.is_temporary and name != INCOME_SUMMARY_ACCOUNT
    ]
    for name in temporaries:
        if ledger.chart[name] is AccountClass.DRAWING:
            continue
        account = ledger.account(name)
        ledger = transfer(ledger, name, INCOME_SUMMARY_ACCOUNT, Side.DEBIT, account.debit)
        ledger = transfer(ledger, name, INCOME_SUMMARY_ACCOUNT, Side.CREDIT, account.credit)

    # Net the summary to a single side before carrying it to capital, so
    # capital receives exactly net income (credit) or net loss (debit).
    ledger = _cancel_balanced(ledger, INCOME_SUMMARY_ACCOUNT)
    summary = ledger.account(INCOME_SUMMARY_ACCOUNT)
    ledger = transfer(ledger, INCOME_SUMMARY_ACCOUNT, capital_account, Side.DEBIT, summary.debit)
    ledger = transfer(ledger, INCOME_SUMMARY_ACCOUNT, capital_account, Side.CREDIT, summary.credit)

    for name in temporaries:
        if ledger.chart[name] is not AccountClass.DRAWING:
            continue
        account = ledger.account(name)
        ledger = transfer(ledger, name, capital_account, Side.DEBIT, account.debit)
        ledger = transfer(ledger, name, capital_account, Side.CREDIT, account.credit)

    return ledger, net_income


# -- stochastic accounts ------------------------------------------------------


def expected_sides(s: StochasticTAccount) -> tuple[float, float]:
    """Expected amount per side: (|alpha|^2 * debit, |beta|^2 * credit)."""
    norm = abs(s.alpha) ** 2 + abs(s.beta) ** 2
    if abs(norm - 1.0) > 1e-9:
        raise NonNormalizedAmplitudes(f"|alpha|^2 + |beta|^2 = {norm!r}, expected 1")
    return (
        abs(s.alpha) ** 2 * s.account.debit,
        abs(s.beta) ** 2 * s.account.credit,
    )


# -- file formats --------------------------------------------------------------


def _require_int(value: object, context: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ValueError(f"{context}: expected an integer, got {value!r}")
    return value


def entry_from_dict(obj: dict) -> JournalEntry:
    lines = tuple(
        EntryLine(
            account=str(line["account"]),
            side=Side(line["side"]),
            amount=_require_int(line["amount_minor"], "amount_minor"),
        )
        for line in obj["lines"]
    )
    return JournalEntry(
        id=str(obj["id"]),
        date=dt.date.fromisoformat(obj["date"]),
        memo=str(obj.get("memo", "")),
        lines=lines,
    )


def entry_to_dict(entry: JournalEntry) -> dict:
    return {
        "id": entry.id,
        "date": entry.date.isoformat(),
        "memo": entry.memo,
        "lines": [
            {"account": l.account, "side": l.side.value, "amount_minor": l.amount}
            for l in entry.lines
        ],
    }


def load_journal(path: str | Path) -> Journal:
    """Read a JSON-lines journal: one entry object per non-blank line."""
    entries = []
    with open(path, "r", encoding="utf-8") as fh:
        for raw in fh:
            raw = raw.strip()
            if not raw:
                continue
            entries.append(entry_from_dict(json.loads(raw)))
    return Journal(tuple(entries))


def dump_journal(journal: Journal, path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for entry in journal.entries:
            fh.write(json.dumps(entry_to_dict(entry), sort_keys=True) + "\n")


def load_chart(path: str | Path) -> dict[str, AccountClass]:
    """Read a chart of accounts: JSON object mapping name to class."""
    with open(path, "r", encoding="utf-8") as fh:
        raw = json.load(fh)
    if not isinstance(raw, dict):
        raise ValueError("chart file must contain a JSON object")
    return {str(name): AccountClass(value) for name, value in raw.items()}


def snapshot_dict(ledger: Ledger) -> dict:
    return {
        name: {
            "class": ledger.chart[name].value,
            "debit_minor": account.debit,
            "credit_minor": account.credit,
        }
        for name, account in ledger.accounts.items()
    }


def write_snapshot(ledger: Ledger, path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(snapshot_dict(ledger), fh, indent=2, sort_keys=True)
        fh.write("\n")


def load_snapshot(path: str | Path) -> Ledger:
    with open(path, "r", encoding="utf-8") as fh:
        raw = json.load(fh)
    chart = {name: AccountClass(rec["class"]) for name, rec in raw.items()}
    accounts = {
        name: TAccount(
            name,
            chart[name],
            _require_int(rec["debit_minor"], "debit_minor"),
            _require_int(rec["credit_minor"], "credit_minor"),
        )
        for name, rec in raw.items()
    }
    return Ledger(accounts, chart)


def write_trial_balance_csv(tb: TrialBalance, path: str | Path) -> None:
    """One row per account with the amount in its normal-side column."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["account", "debit_minor", "credit_minor"])
        for row in tb.rows:
            debit = row.amount if row.side is Side.DEBIT else 0
            credit = row.amount if row.side is Side.CREDIT else 0
            writer.writerow([row.account, debit, credit])
        writer.writerow(["totals", tb.total_debit, tb.total_credit])
