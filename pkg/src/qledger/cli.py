"""Command-line front end.

Subcommands: ``post`` (journal to ledger snapshot and trial balance),
``worksheet`` (five-pair worksheet CSV), ``leontief`` (closed or open
input-output solve), ``solve`` (generic A x = b with a classical or
search-driven engine), and ``demo`` (search, adder, function
classification, account-circuit checks).

Exit codes: 0 success, 1 I/O or parse failure, 2 domain validation
failure. Output is JSON (sorted keys) or CSV, byte-stable for a fixed
seed.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import accounting, bridge, leontief, qgje, quantum
from .accounting import Journal, Ledger, Side, StochasticTAccount, TAccount
from .errors import DomainError
from .worksheet import build_worksheet, write_worksheet_csv

EXIT_OK = 0
EXIT_IO = 1
EXIT_DOMAIN = 2


def _write_json(payload: dict, path: str | None) -> None:
    text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if path is None:
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def _load_books(journal_path: str, chart_path: str) -> Ledger:
    chart = accounting.load_chart(chart_path)
    journal = accounting.load_journal(journal_path)
    return accounting.post_journal(journal, Ledger.empty(chart))


def cmd_post(args: argparse.Namespace) -> int:
    ledger = _load_books(args.journal, args.chart)
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    accounting.write_snapshot(ledger, out_dir / "ledger.json")
    accounting.write_trial_balance_csv(
        accounting.trial_balance(ledger), out_dir / "trial_balance.csv"
    )
    return EXIT_OK


def cmd_worksheet(args: argparse.Namespace) -> int:
    ledger = _load_books(args.journal, args.chart)
    adjustments = (
        accounting.load_journal(args.adjustments) if args.adjustments else Journal()
    )
    sheet = build_worksheet(ledger, adjustments)
    write_worksheet_csv(sheet, args.out)
    return EXIT_OK


def _leontief_quantum(system: np.ndarray, args: argparse.Namespace) -> qgje.QgjeReport:
    config = qgje.QgjeConfig(pivot_tol=args.tol, seed=args.seed)
    return qgje.quantum_gje(system, config)


def cmd_leontief(args: argparse.Namespace) -> int:
    a = leontief.load_matrix_csv(args.matrix)
    n = a.shape[0]
    report = None
    if args.mode == "closed":
        if args.engine == "quantum":
            system = np.hstack([np.eye(n) - a, np.zeros((n, 1))])
            report = _leontief_quantum(system, args)
        x = leontief.solve_closed(a, args.tol)
        residual = float(np.max(np.abs((np.eye(n) - a) @ x)))
        kind = leontief.SolutionKind.ONE_PARAMETER_RAY
    else:
        if not args.demand:
            raise DomainError("open mode requires --demand")
        d = leontief.load_vector_csv(args.demand)
        if args.engine == "quantum":
            system = np.hstack([np.eye(n) - a, d.reshape(-1, 1)])
            report = _leontief_quantum(system, args)
        x = leontief.solve_open(a, d, args.tol)
        residual = float(np.max(np.abs((np.eye(n) - a) @ x - d)))
        kind = leontief.SolutionKind.UNIQUE
    payload = {
        "kind": kind.value,
        "x": [float(v) for v in x],
        "residual_inf": residual,
    }
    if report is not None:
        payload.update(
            {
                "row_operations": report.counter.row_operations,
                "oracle_calls": report.counter.oracle_calls,
                "bound": report.bound,
                "within_bound": report.within_bound,
                "seed": report.seed,
            }
        )
    _write_json(payload, args.out)
    return EXIT_OK


def cmd_solve(args: argparse.Namespace) -> int:
    a = leontief.load_matrix_csv(args.matrix)
    b = leontief.load_vector_csv(args.rhs)
    if b.size != a.shape[0]:
        raise ValueError(f"rhs has size {b.size}, matrix has {a.shape[0]} rows")
    system = np.hstack([a, b.reshape(-1, 1)])
    if args.engine == "quantum":
        report = qgje.quantum_gje(system, qgje.QgjeConfig(pivot_tol=args.tol, seed=args.seed))
        result = report.result
        payload = report.as_dict()
    else:
        result = leontief.classical_gje(system, args.tol)
        payload = leontief.result_to_dict(result, None)
    residual = None
    if result.x is not None:
        residual = float(np.max(np.abs(a @ result.x - b)))
    payload["residual_inf"] = residual
    _write_json(payload, args.out)
    return EXIT_OK


def _demo_grover(args: argparse.Namespace) -> dict:
    marked = [int(v) for v in args.marked.split(",")]
    oracle = quantum.BoolOracle.from_marked(args.n, marked)
    hint = None if args.unknown_count else len(marked)
    counter = quantum.OpCounter()
    rng = np.random.default_rng(args.seed)
    outcome = quantum.grover_search(
        oracle, args.n, hint, rng=rng, counter=counter
    )
    iterations = quantum.grover_iterations(args.n, len(marked))
    return {
        "outcome": outcome,
        "oracle_calls": counter.oracle_calls,
        "gate_applications": counter.gate_applications,
        "success_prob_theoretical": quantum.grover_success_probability(
            args.n, len(marked), iterations
        ),
    }


_DEUTSCH_FUNCTIONS = {
    "const0": lambda x: 0,
    "const1": lambda x: 1,
    "identity": lambda x: x,
    "negation": lambda x: 1 - x,
}


def _demo_deutsch(args: argparse.Namespace) -> dict:
    counter = quantum.OpCounter()
    verdict = quantum.deutsch(
        quantum.BoolOracle(1, _DEUTSCH_FUNCTIONS[args.f]), counter
    )
    return {
        "class": verdict.value,
        "f": args.f,
        "oracle_calls": counter.oracle_calls,
        "gate_applications": counter.gate_applications,
    }


def _demo_qadd(args: argparse.Namespace) -> dict:
    counter = quantum.OpCounter()
    total = quantum.quantum_add(args.a, args.b, args.n, counter)
    return {
        "a": args.a,
        "b": args.b,
        "n": args.n,
        "sum": total,
        "gate_applications": counter.gate_applications,
    }


def _demo_bridge(args: argparse.Namespace) -> dict:
    account = TAccount("Demo", accounting.AccountClass.ASSET, args.debit, args.credit)
    decomposition = bridge.balance_via_cnot(account)
    factors = bridge.hadamard_factorization()
    identity_gap = float(
        np.max(np.abs(factors.rotation @ factors.flip - quantum.hadamard().matrix.real))
    )
    amp = 1 / np.sqrt(2)
    stochastic = StochasticTAccount(account, amp, amp)
    expected = accounting.expected_sides(stochastic)
    witness = bridge.transfer_via_tensor(
        3.0, quantum.StateVector.basis(1, 0), quantum.StateVector.basis(1, 1)
    )
    return {
        "balance": {
            "normal_side": None
            if decomposition.normal_side is None
            else decomposition.normal_side.value,
            "normal_amount": decomposition.normal_amount,
            "balanced_amount": decomposition.balanced_amount,
        },
        "hadamard_identity_gap": identity_gap,
        "expected_sides": list(expected),
        "tensor_transfer_witness": witness,
    }


def cmd_demo(args: argparse.Namespace) -> int:
    if args.kind == "grover":
        payload = _demo_grover(args)
    elif args.kind == "deutsch":
        payload = _demo_deutsch(args)
    elif args.kind == "qadd":
        payload = _demo_qadd(args)
    else:
        payload = _demo_bridge(args)
    _write_json(payload, args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qledger",
        description="Bookkeeping as linear algebra with a quantum-search solver",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_post = sub.add_parser("post", help="post a journal and report the trial balance")
    p_post.add_argument("--journal", required=True)
    p_post.add_argument("--chart", required=True)
    p_post.add_argument("--out", required=True, help="output directory")
    p_post.set_defaults(func=cmd_post)

    p_ws = sub.add_parser("worksheet", help="build the five-pair worksheet CSV")
    p_ws.add_argument("--journal", required=True)
    p_ws.add_argument("--chart", required=True)
    p_ws.add_argument("--adjustments", default=None)
    p_ws.add_argument("--out", required=True)
    p_ws.set_defaults(func=cmd_worksheet)

    p_leo = sub.add_parser("leontief", help="solve a closed or open input-output model")
    p_leo.add_argument("--matrix", required=True)
    p_leo.add_argument("--mode", choices=("closed", "open"), required=True)
    p_leo.add_argument("--demand", default=None)
    p_leo.add_argument("--engine", choices=("classical", "quantum"), default="classical")
    p_leo.add_argument("--seed", type=int, default=0)
    p_leo.add_argument("--tol", type=float, default=leontief.DEFAULT_PIVOT_TOL)
    p_leo.add_argument("--out", default=None)
    p_leo.set_defaults(func=cmd_leontief)

    p_solve = sub.add_parser("solve", help="solve A x = b")
    p_solve.add_argument("--matrix", required=True)
    p_solve.add_argument("--rhs", required=True)
    p_solve.add_argument("--engine", choices=("classical", "quantum"), default="classical")
    p_solve.add_argument("--seed", type=int, default=0)
    p_solve.add_argument("--tol", type=float, default=leontief.DEFAULT_PIVOT_TOL)
    p_solve.add_argument("--out", default=None)
    p_solve.set_defaults(func=cmd_solve)

    p_demo = sub.add_parser("demo", help="run a small deterministic demo")
    demo_sub = p_demo.add_subparsers(dest="kind", required=True)

    d_grover = demo_sub.add_parser("grover")
    d_grover.add_argument("--n", type=int, required=True)
    d_grover.add_argument("--marked", required=True, help="comma-separated indices")
    d_grover.add_argument("--unknown-count", action="store_true")
    d_grover.add_argument("--seed", type=int, default=0)
    d_grover.add_argument("--out", default=None)
    d_grover.set_defaults(func=cmd_demo)

    d_deutsch = demo_sub.add_parser("deutsch")
    d_deutsch.add_argument("--f", choices=sorted(_DEUTSCH_FUNCTIONS), required=True)
    d_deutsch.add_argument("--seed", type=int, default=0)
    d_deutsch.add_argument("--out", default=None)
    d_deutsch.set_defaults(func=cmd_demo)

    d_qadd = demo_sub.add_parser("qadd")
    d_qadd.add_argument("--a", type=int, required=True)
    d_qadd.add_argument("--b", type=int, required=True)
    d_qadd.add_argument("--n", type=int, required=True)
    d_qadd.add_argument("--seed", type=int, default=0)
    d_qadd.add_argument("--out", default=None)
    d_qadd.set_defaults(func=cmd_demo)

    d_bridge = demo_sub.add_parser("bridge")
    d_bridge.add_argument("--debit", type=int, default=5)
    d_bridge.add_argument("--credit", type=int, default=3)
    d_bridge.add_argument("--seed", type=int, default=0)
    d_bridge.add_argument("--out", default=None)
    d_bridge.set_defaults(func=cmd_demo)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except (OSError, ValueError, KeyError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


def entry_point() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry_point()
