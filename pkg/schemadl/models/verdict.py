# File: schemadl/models/verdict.py
"""
Reasoning results: search budgets, verdicts of the finite-model finder and
facts derived by the cardinality analyzer.
"""
import dataclasses
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Optional, Tuple

from schemadl.exceptions import InvalidBudgetError
from schemadl.models.interpretation import Interpretation
from schemadl.models.knowledge_base import InclusionAssertion


@dataclass(frozen=True)
class SearchBudget:
    """
    Bounds for the finite-model search.

    Attributes:
        min_size: Smallest domain size tried (>= 1)
        max_size: Largest domain size tried (<= the configured limit)
        time_limit: Wall-clock seconds for the whole search
    """
    min_size: int = 1
    max_size: int = 6
    time_limit: float = 60.0

    def validate(self, limit=64):
        """
        Validation rules:
        1. min_size must be at least 1
        2. min_size must not exceed max_size
        3. max_size must not exceed the domain limit
        4. time_limit must be positive

        Raises:
            InvalidBudgetError: If any rule is violated
        """
        if self.min_size < 1:
            raise InvalidBudgetError(
                "Minimum size must be at least 1",
                self.min_size, self.max_size, self.time_limit
            )
        if self.min_size > self.max_size:
            raise InvalidBudgetError(
                f"Minimum size {self.min_size} exceeds maximum size {self.max_size}",
                self.min_size, self.max_size, self.time_limit
            )
        if self.max_size > limit:
            raise InvalidBudgetError(
                f"Maximum size {self.max_size} exceeds the limit of {limit}",
                self.min_size, self.max_size, self.time_limit
            )
        if self.time_limit <= 0:
            raise InvalidBudgetError(
                "Time limit must be positive",
                self.min_size, self.max_size, self.time_limit
            )
        return self

    @classmethod
    def from_config(cls, app_config, min_size=None, max_size=None, time_limit=None):
        """Budget from configuration defaults, with optional overrides"""
        budget = cls(
            min_size if min_size is not None else app_config.SEARCH_MIN_SIZE,
            max_size if max_size is not None else app_config.SEARCH_MAX_SIZE,
            time_limit if time_limit is not None else app_config.SEARCH_TIME_LIMIT
        )
        return budget.validate(app_config.MAX_DOMAIN_SIZE)


class Outcome(str, Enum):
    """
    Search outcomes:
    - WITNESS_FOUND: a finite model with nonempty goal extension exists
    - NO_MODEL_UP_TO: no such model of any size up to the bound
    - TIMED_OUT: budget exhausted; bound is the last completed size
    """
    WITNESS_FOUND = "WitnessFound"
    NO_MODEL_UP_TO = "NoModelUpTo"
    TIMED_OUT = "TimedOut"


class FactKind(str, Enum):
    """Kinds of facts proved by the cardinality analyzer"""
    SUBSET = "Subset"
    INEQUALITY = "Inequality"
    FINITE_SUBSUMPTION = "FiniteSubsumption"
    FINITE_INCONSISTENT = "FiniteInconsistent"


_FACT_ORDER = {kind: rank for rank, kind in enumerate(FactKind)}


@dataclass(frozen=True)
class CardinalityFact:
    """
    A fact holding in every finite model of a knowledge base.

    Attributes:
        kind: Fact kind
        subject: A in Subset(A, B), Inequality(m, A, n, B),
            FiniteSubsumption(A, B) and FiniteInconsistent(A)
        object: B, or None for FiniteInconsistent
        m: Left coefficient of m·#A ≤ n·#B (1 for other kinds)
        n: Right coefficient
        derivation: Assertions the fact was derived from
    """
    kind: FactKind
    subject: str
    object: Optional[str] = None
    m: int = 1
    n: int = 1
    derivation: Tuple[InclusionAssertion, ...] = field(default=(), compare=False)

    def sort_key(self):
        return (_FACT_ORDER[self.kind], self.subject, self.object or '', self.m, self.n)

    def to_dict(self):
        rv = {
            'kind': self.kind.value,
            'subject': self.subject,
            'object': self.object,
            'derivation': [str(a) for a in self.derivation]
        }
        if self.kind == FactKind.INEQUALITY:
            rv['m'] = self.m
            rv['n'] = self.n
        return rv

    def __str__(self):
        if self.kind == FactKind.INEQUALITY:
            return f"Inequality({self.m}, {self.subject}, {self.n}, {self.object})"
        if self.kind == FactKind.FINITE_INCONSISTENT:
            return f"FiniteInconsistent({self.subject})"
        return f"{self.kind.value}({self.subject}, {self.object})"


@dataclass(frozen=True)
class ReasoningVerdict:
    """
    Result of a bounded finite-model search.

    Attributes:
        outcome: WitnessFound / NoModelUpTo / TimedOut
        bound: Witness size, maximum size searched, or last completed size
        witness: Model with nonempty goal extension (WitnessFound only)
        facts: Analyzer facts attached by front-end services
        caveat: Plain-language reading of the bound
        certificate: Legal database state or instance built from the witness
    """
    outcome: Outcome
    bound: int
    witness: Optional[Interpretation] = None
    facts: Tuple[CardinalityFact, ...] = ()
    caveat: str = ''
    certificate: Any = None

    @property
    def found(self):
        return self.outcome == Outcome.WITNESS_FOUND

    def replace(self, **changes):
        return dataclasses.replace(self, **changes)

    def __str__(self):
        return f"{self.outcome.value}({self.bound})"
