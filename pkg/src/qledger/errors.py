"""Exception types shared across the package.

``DomainError`` marks violations of domain rules (unbalanced entries,
bad amplitudes, precondition failures on model inputs). The CLI maps
``DomainError`` to exit code 2, while I/O and parse failures map to
exit code 1.
"""


class DomainError(Exception):
    """Base class for domain-rule violations."""


# -- accounting ------------------------------------------------------------

class UnbalancedEntry(DomainError):
    """Entry debits and credits differ, or the entry has fewer than two lines."""


class UnknownAccount(DomainError):
    """An operation names an account absent from the chart."""


class NonPositiveAmount(DomainError):
    """An amount that must be positive (or non-negative) is not."""


class UnclassifiedAccount(DomainError):
    """A ledger account has no class in the chart."""


class InsufficientAmount(DomainError):
    """A transfer asks for more than the source side holds."""


class MissingCapitalAccount(DomainError):
    """Closing requires a capital-class account that is not present."""


class DuplicateEntryId(DomainError):
    """Two journal entries share an id."""


class NonNormalizedAmplitudes(DomainError):
    """Stochastic-account amplitudes do not have unit norm."""


# -- worksheets ------------------------------------------------------------

class DimensionMismatch(DomainError):
    """A matrix does not match the dimension of the vector it acts on."""


# -- input-output models ---------------------------------------------------

class PreconditionViolated(DomainError):
    """Model input breaks a stated hypothesis (signs, column sums)."""


class DegenerateKernel(DomainError):
    """The homogeneous system's kernel is not one-dimensional."""


class SingularSystem(DomainError):
    """Pivoting failed on input that the preconditions suggest is regular."""


# -- quantum simulator -----------------------------------------------------

class NonUnitaryU(DomainError):
    """A supplied gate matrix is not unitary."""


class BadTargets(DomainError):
    """Gate or measurement targets are out of range, repeated, or miscounted."""


class OutOfRange(DomainError):
    """An integer argument is outside its supported range."""


class NoMarkedItem(DomainError):
    """Search exhausted its query budget without a verified hit."""


class SplitTooLarge(DomainError):
    """An adjustment split exceeds the amount available on that side."""
