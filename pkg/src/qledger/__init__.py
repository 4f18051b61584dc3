"""Bookkeeping as linear algebra, input-output models, and a quantum
statevector simulator whose search routine drives Gauss-Jordan
elimination with an operation-count bound."""

from .accounting import (
    AccountClass,
    BalanceDecomposition,
    EntryLine,
    Journal,
    JournalEntry,
    Ledger,
    Money,
    Side,
    StochasticTAccount,
    TAccount,
    TrialBalance,
    close_cycle,
    expected_sides,
    normal_balance,
    post_entry,
    post_journal,
    transfer,
    trial_balance,
    verify_accounting_equation,
)
from .bridge import (
    AccountEncoding,
    HadamardFactorization,
    adjustment_via_cnot,
    balance_via_cnot,
    encode_account,
    hadamard_factorization,
    transfer_via_tensor,
)
from .leontief import (
    RrefResult,
    SolutionKind,
    classical_gje,
    solve_closed,
    solve_open,
)
from .qgje import CountMode, QgjeConfig, QgjeReport, grover_pivot, op_bound, quantum_gje
from .quantum import (
    BoolOracle,
    DeutschVerdict,
    Gate,
    OpCounter,
    StateVector,
    apply_gate,
    character_eval,
    cnot,
    controlled_u,
    deutsch,
    grover_search,
    hadamard,
    measure,
    phase,
    qft,
    quantum_add,
)
from .worksheet import (
    BusinessAction,
    Worksheet,
    apply_business_action,
    build_worksheet,
    net_income,
)

__version__ = "0.1.0"
