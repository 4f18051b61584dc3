import datetime as dt
import json

import numpy as np
import pytest

from qledger.accounting import (
    INCOME_SUMMARY_ACCOUNT,
    AccountClass,
    BalanceDecomposition,
    Journal,
    JournalEntry,
    Ledger,
    Side,
    StochasticTAccount,
    TAccount,
    close_cycle,
    dump_journal,
    expected_sides,
    load_chart,
    load_journal,
    load_snapshot,
    normal_balance,
    post_entry,
    post_journal,
    transfer,
    trial_balance,
    verify_accounting_equation,
    write_snapshot,
    write_trial_balance_csv,
)
from qledger.errors import (
    DuplicateEntryId,
    InsufficientAmount,
    MissingCapitalAccount,
    NonNormalizedAmplitudes,
    NonPositiveAmount,
    UnbalancedEntry,
    UnclassifiedAccount,
    UnknownAccount,
)

from conftest import entry, random_journal


def raw_totals(ledger):
    return (
        sum(a.debit for a in ledger.accounts.values()),
        sum(a.credit for a in ledger.accounts.values()),
    )


class TestTAccount:
    def test_negative_side_rejected(self):
        with pytest.raises(ValueError):
            TAccount("Cash", AccountClass.ASSET, -1, 0)

    def test_add_sub(self):
        acct = TAccount("Cash", AccountClass.ASSET).add(Side.DEBIT, 100)
        assert (acct.debit, acct.credit) == (100, 0)
        acct = acct.sub(Side.DEBIT, 40)
        assert (acct.debit, acct.credit) == (60, 0)


class TestPostEntry:
    def test_single_balanced_entry(self, empty_ledger):
        led = post_entry(
            entry("e1", [("Cash", "d", 1000), ("Capital", "c", 1000)]), empty_ledger
        )
        assert (led.account("Cash").debit, led.account("Cash").credit) == (1000, 0)
        assert (led.account("Capital").debit, led.account("Capital").credit) == (0, 1000)

    def test_three_line_entry(self, empty_ledger):
        led = post_entry(
            entry(
                "e1",
                [("Cash", "d", 700), ("Revenue", "c", 500), ("Payables", "c", 200)],
            ),
            empty_ledger,
        )
        assert led.account("Cash").debit == 700
        assert led.account("Revenue").credit == 500
        assert led.account("Payables").credit == 200
        assert raw_totals(led)[0] == raw_totals(led)[1]

    def test_unbalanced_entry(self, empty_ledger):
        with pytest.raises(UnbalancedEntry):
            post_entry(
                entry("bad", [("Cash", "d", 100), ("Revenue", "c", 90)]), empty_ledger
            )

    def test_single_line_entry(self, empty_ledger):
        with pytest.raises(UnbalancedEntry):
            post_entry(entry("bad", [("Cash", "d", 100)]), empty_ledger)

    def test_unknown_account(self, empty_ledger):
        with pytest.raises(UnknownAccount):
            post_entry(
                entry("bad", [("Gold", "d", 5), ("Capital", "c", 5)]), empty_ledger
            )

    def test_non_positive_amount(self, empty_ledger):
        with pytest.raises(NonPositiveAmount):
            post_entry(
                entry("bad", [("Cash", "d", 0), ("Capital", "c", 0)]), empty_ledger
            )

    def test_conservation_over_random_posts(self, empty_ledger, rng):
        accounts = list(empty_ledger.chart)
        led = post_journal(random_journal(rng, accounts, 60), empty_ledger)
        d, c = raw_totals(led)
        assert d == c

    def test_duplicate_ids_rejected(self, empty_ledger):
        journal = Journal(
            (
                entry("e1", [("Cash", "d", 5), ("Capital", "c", 5)]),
                entry("e1", [("Cash", "d", 7), ("Capital", "c", 7)]),
            )
        )
        with pytest.raises(DuplicateEntryId):
            post_journal(journal, empty_ledger)


class TestNormalBalance:
    @pytest.mark.parametrize(
        "debit,credit,expected",
        [
            (5, 3, BalanceDecomposition(Side.DEBIT, 2, 3)),
            (0, 7, BalanceDecomposition(Side.CREDIT, 7, 0)),
            (4, 4, BalanceDecomposition(None, 0, 4)),
        ],
    )
    def test_examples(self, debit, credit, expected):
        acct = TAccount("X", AccountClass.ASSET, debit, credit)
        assert normal_balance(acct) == expected

    def test_reconstruction_random(self, rng):
        for _ in range(500):
            d, c = int(rng.integers(0, 10**9)), int(rng.integers(0, 10**9))
            dec = normal_balance(TAccount("X", AccountClass.ASSET, d, c))
            if dec.normal_side is Side.DEBIT:
                rebuilt = (dec.normal_amount + dec.balanced_amount, dec.balanced_amount)
            elif dec.normal_side is Side.CREDIT:
                rebuilt = (dec.balanced_amount, dec.normal_amount + dec.balanced_amount)
            else:
                assert dec.normal_amount == 0
                rebuilt = (dec.balanced_amount, dec.balanced_amount)
            assert rebuilt == (d, c)


class TestTrialBalance:
    def test_two_accounts(self, empty_ledger):
        led = post_entry(
            entry("e1", [("Cash", "d", 1000), ("Capital", "c", 1000)]), empty_ledger
        )
        tb = trial_balance(led)
        by_name = {row.account: row for row in tb.rows}
        assert by_name["Cash"].side is Side.DEBIT and by_name["Cash"].amount == 1000
        assert by_name["Capital"].side is Side.CREDIT
        assert (tb.total_debit, tb.total_credit) == (1000, 1000)

    def test_empty_ledger(self, chart):
        tb = trial_balance(Ledger.empty(chart))
        assert all(row.side is None for row in tb.rows)
        assert (tb.total_debit, tb.total_credit) == (0, 0)

    def test_totals_equal_after_random_entries(self, empty_ledger, rng):
        accounts = list(empty_ledger.chart)
        led = post_journal(random_journal(rng, accounts, 3), empty_ledger)
        tb = trial_balance(led)
        # independent oracle: totals from raw sides, not from normal_balance
        d, c = raw_totals(led)
        assert d == c
        assert tb.total_debit == tb.total_credit

    def test_csv_layout(self, empty_ledger, tmp_path):
        led = post_entry(
            entry("e1", [("Cash", "d", 10), ("Capital", "c", 10)]), empty_ledger
        )
        out = tmp_path / "tb.csv"
        write_trial_balance_csv(trial_balance(led), out)
        lines = out.read_text().strip().splitlines()
        assert lines[0] == "account,debit_minor,credit_minor"
        assert lines[-1] == "totals,10,10"


class TestAccountingEquation:
    def test_assets_equal_capital(self, empty_ledger):
        led = post_entry(
            entry("e1", [("Cash", "d", 1000), ("Capital", "c", 1000)]), empty_ledger
        )
        assert verify_accounting_equation(led) == 0
        assert verify_accounting_equation(led, extended=True) == 0

    def test_three_way_split(self, empty_ledger):
        led = post_entry(
            entry(
                "e1",
                [("Cash", "d", 1000), ("Payables", "c", 400), ("Capital", "c", 600)],
            ),
            empty_ledger,
        )
        assert verify_accounting_equation(led) == 0

    def test_zero_residual_property(self, empty_ledger, rng):
        accounts = list(empty_ledger.chart)
        led = empty_ledger
        for i in range(40):
            led = post_journal(random_journal(rng, accounts, 5, prefix=f"j{i}-"), led)
            assert verify_accounting_equation(led) == 0
            assert verify_accounting_equation(led, extended=True) == 0

    def test_unclassified_account(self, chart):
        led = Ledger.empty(chart)
        accounts = dict(led.accounts)
        accounts["Mystery"] = TAccount("Mystery", AccountClass.ASSET, 5, 0)
        broken = Ledger(accounts, led.chart)
        with pytest.raises(UnclassifiedAccount):
            verify_accounting_equation(broken)


class TestTransfer:
    def test_move_credit(self, empty_ledger):
        led = post_entry(
            entry("e1", [("Cash", "d", 500), ("Revenue", "c", 500)]), empty_ledger
        )
        led = transfer(led, "Revenue", "Capital", Side.CREDIT, 500)
        assert led.account("Revenue").credit == 0
        assert led.account("Capital").credit == 500

    def test_zero_transfer_is_identity(self, empty_ledger):
        led = transfer(empty_ledger, "Cash", "Capital", Side.DEBIT, 0)
        assert led.accounts == empty_ledger.accounts

    def test_insufficient(self, empty_ledger):
        led = post_entry(
            entry("e1", [("Cash", "d", 500), ("Revenue", "c", 500)]), empty_ledger
        )
        with pytest.raises(InsufficientAmount):
            transfer(led, "Revenue", "Capital", Side.CREDIT, 600)

    def test_unknown_account(self, empty_ledger):
        with pytest.raises(UnknownAccount):
            transfer(empty_ledger, "Gold", "Cash", Side.DEBIT, 1)

    def test_per_side_totals_invariant(self, empty_ledger, rng):
        accounts = list(empty_ledger.chart)
        led = post_journal(random_journal(rng, accounts, 10), empty_ledger)
        before = raw_totals(led)
        led = transfer(led, "Cash", "Supplies", Side.DEBIT, led.account("Cash").debit)
        assert raw_totals(led) == before


class TestCloseCycle:
    def test_profit_with_drawing(self, empty_ledger):
        led = post_entry(
            entry(
                "e1",
                [
                    ("Cash", "d", 150),
                    ("Rent", "d", 300),
                    ("Drawing", "d", 50),
                    ("Revenue", "c", 500),
                ],
            ),
            empty_ledger,
        )
        closed, net = close_cycle(led, "Capital")
        assert net == 200
        capital = closed.account("Capital")
        assert capital.credit == 200 and capital.debit == 50
        for name in ("Revenue", "Rent", "Drawing"):
            acct = closed.account(name)
            assert (acct.debit, acct.credit) == (0, 0)
        summary = closed.account(INCOME_SUMMARY_ACCOUNT)
        assert (summary.debit, summary.credit) == (0, 0)
        assert verify_accounting_equation(closed) == 0

    def test_nothing_to_close(self, empty_ledger):
        led = post_entry(
            entry("e1", [("Cash", "d", 100), ("Capital", "c", 100)]), empty_ledger
        )
        closed, net = close_cycle(led, "Capital")
        assert net == 0
        assert closed.account("Capital").credit == 100
        assert closed.account("Cash").debit == 100

    def test_net_loss_hits_capital_debit(self, empty_ledger):
        led = post_entry(
            entry(
                "e1",
                [("Rent", "d", 400), ("Revenue", "c", 300), ("Payables", "c", 100)],
            ),
            empty_ledger,
        )
        closed, net = close_cycle(led, "Capital")
        assert net == -100
        assert closed.account("Capital").debit == 100

    def test_idempotent(self, empty_ledger, rng):
        accounts = list(empty_ledger.chart)
        led = post_journal(random_journal(rng, accounts, 15), empty_ledger)
        once, net1 = close_cycle(led, "Capital")
        twice, net2 = close_cycle(once, "Capital")
        assert net2 == 0
        assert twice.accounts == once.accounts

    def test_missing_capital(self, empty_ledger):
        with pytest.raises(MissingCapitalAccount):
            close_cycle(empty_ledger, "Cash")


class TestStochastic:
    def test_pure_debit(self):
        s = StochasticTAccount(TAccount("X", AccountClass.ASSET, 100, 0), 1.0, 0.0)
        assert expected_sides(s) == (100.0, 0.0)

    def test_even_split(self):
        amp = 1 / np.sqrt(2)
        s = StochasticTAccount(TAccount("X", AccountClass.ASSET, 100, 60), amp, amp)
        d, c = expected_sides(s)
        assert d == pytest.approx(50.0) and c == pytest.approx(30.0)

    def test_complex_amplitudes(self):
        s = StochasticTAccount(TAccount("X", AccountClass.ASSET, 10, 10), 0.6, 0.8j)
        d, c = expected_sides(s)
        assert d == pytest.approx(3.6) and c == pytest.approx(6.4)

    def test_norm_property(self, rng):
        for _ in range(200):
            theta = rng.uniform(0, np.pi / 2)
            phi = rng.uniform(0, 2 * np.pi)
            x, y = int(rng.integers(1, 10**6)), int(rng.integers(1, 10**6))
            s = StochasticTAccount(
                TAccount("X", AccountClass.ASSET, x, y),
                np.cos(theta),
                np.sin(theta) * np.exp(1j * phi),
            )
            d, c = expected_sides(s)
            assert abs(d / x + c / y - 1.0) < 1e-12

    def test_non_normalized_rejected(self):
        with pytest.raises(NonNormalizedAmplitudes):
            StochasticTAccount(TAccount("X", AccountClass.ASSET, 1, 1), 0.9, 0.6)


class TestFileFormats:
    def test_journal_roundtrip(self, tmp_path, rng, chart):
        journal = random_journal(rng, list(chart), 8)
        path = tmp_path / "journal.jsonl"
        dump_journal(journal, path)
        assert load_journal(path) == journal

    def test_chart_roundtrip(self, tmp_path, chart):
        path = tmp_path / "chart.json"
        path.write_text(json.dumps({k: v.value for k, v in chart.items()}))
        assert load_chart(path) == chart

    def test_snapshot_roundtrip(self, tmp_path, empty_ledger, rng):
        led = post_journal(random_journal(rng, list(empty_ledger.chart), 6), empty_ledger)
        path = tmp_path / "ledger.json"
        write_snapshot(led, path)
        loaded = load_snapshot(path)
        assert loaded.accounts == led.accounts
        assert loaded.chart == led.chart

    def test_float_amount_rejected(self, tmp_path):
        path = tmp_path / "journal.jsonl"
        path.write_text(
            json.dumps(
                {
                    "id": "e1",
                    "date": "2026-01-01",
                    "memo": "",
                    "lines": [
                        {"account": "Cash", "side": "debit", "amount_minor": 10.5},
                        {"account": "Capital", "side": "credit", "amount_minor": 10.5},
                    ],
                }
            )
        )
        with pytest.raises(ValueError):
            load_journal(path)

    def test_entry_date_parsed(self, tmp_path):
        path = tmp_path / "journal.jsonl"
        path.write_text(
            '{"id":"e1","date":"2026-02-03","memo":"m","lines":['
            '{"account":"Cash","side":"debit","amount_minor":5},'
            '{"account":"Capital","side":"credit","amount_minor":5}]}\n'
        )
        journal = load_journal(path)
        assert journal.entries[0].date == dt.date(2026, 2, 3)
