"""Shared error types and resource budgets."""

from __future__ import annotations

from dataclasses import dataclass, field


class ReglabError(Exception):
    pass


class BudgetError(ReglabError):
    """A degree or step budget was exceeded; carries partial diagnostics."""

    def __init__(self, message: str, diagnostics: dict | None = None):
        super().__init__(message)
        self.diagnostics = diagnostics or {}


class ThresholdError(ReglabError):
    """Generator-count threshold exceeded; caller should use reg_bracket_splitting."""


@dataclass
class Budget:
    """Mutable step/degree budget threaded through reductions.

    ``max_degree`` of None means "derive from input": callers set it to
    4 * (max input degree) + 64 before heavy runs.
    """

    max_steps: int = 10**7
    max_degree: int | None = None
    steps: int = field(default=0, compare=False)

    def charge(self, n: int = 1):
        self.steps += n
        if self.steps > self.max_steps:
            raise BudgetError(
                f"reduction step budget exceeded ({self.max_steps})",
                {"steps": self.steps},
            )

    def check_degree(self, d: int):
        if self.max_degree is not None and d > self.max_degree:
            raise BudgetError(
                f"degree budget exceeded ({d} > {self.max_degree})",
                {"degree": d},
            )

    def derived(self, input_max_degree: int) -> "Budget":
        if self.max_degree is None:
            return Budget(self.max_steps, 4 * input_max_degree + 64, self.steps)
        return self
