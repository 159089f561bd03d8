"""Exception types shared across the package."""

from __future__ import annotations


class InvalidArgument(ValueError):
    """An argument is outside the domain of the operation."""


class OutOfRange(IndexError):
    """A prime table is too small for the request; rebuild it with a larger limit."""


class CoverInvalid(ValueError):
    """Some element > 1 has no divisor among the proposed cover primes."""


class PreconditionViolated(ValueError):
    """Hypotheses of a construction do not hold; the message names the failed one."""


class InfeasibleForced(ValueError):
    """The forced elements already contain k+1 pairwise coprime integers."""


class SearchBudgetExceeded(RuntimeError):
    """An exact search ran out of node budget.

    ``lower`` and ``upper`` bracket the optimum that was being sought.
    """

    def __init__(self, message: str, lower: int, upper: int, nodes: int = 0):
        super().__init__(f"{message} (lower={lower}, upper={upper}, nodes={nodes})")
        self.lower = lower
        self.upper = upper
        self.nodes = nodes
