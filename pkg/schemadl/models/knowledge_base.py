# File: schemadl/models/knowledge_base.py
"""
Knowledge base model: a signature of atomic concepts and roles plus a set
of inclusion assertions A ⊑ C with an atomic left hand side.
"""
from collections import OrderedDict
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, Tuple

from schemadl.exceptions import SchemaValidationError, UnknownSymbolError
from schemadl.models.concept import ConceptExpr, conjunction


@dataclass(frozen=True)
class InclusionAssertion:
    """
    Necessary condition lhs ⊑ rhs. Cyclic assertions are allowed.

    Attributes:
        lhs: Atomic concept name
        rhs: Concept expression
    """
    lhs: str
    rhs: ConceptExpr

    def sort_key(self):
        return (self.lhs, self.rhs.to_text())

    def to_text(self):
        return f"{self.lhs} <= {self.rhs.to_text()};"

    def __str__(self):
        return f"{self.lhs} <= {self.rhs.to_text()}"


@dataclass(frozen=True)
class KnowledgeBase:
    """
    A knowledge base (concepts, roles, assertions).

    Assertions are stored deduplicated in canonical order; several may
    share the same left hand side and are read as their conjunction.

    Attributes:
        concepts: Atomic concept names
        roles: Atomic role names
        assertions: Inclusion assertions
    """
    concepts: FrozenSet[str] = frozenset()
    roles: FrozenSet[str] = frozenset()
    assertions: Tuple[InclusionAssertion, ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, 'concepts', frozenset(self.concepts))
        object.__setattr__(self, 'roles', frozenset(self.roles))
        ordered = sorted(set(self.assertions), key=InclusionAssertion.sort_key)
        object.__setattr__(self, 'assertions', tuple(ordered))

        # Every symbol of every assertion must be in the signature
        for assertion in self.assertions:
            if assertion.rhs.contains_goal_only():
                raise SchemaValidationError(
                    f"Assertion '{assertion}' uses a construct allowed only in goals",
                    {'assertion': str(assertion)}
                )
            for name in {assertion.lhs} | assertion.rhs.concept_names():
                if name not in self.concepts:
                    raise UnknownSymbolError(name, 'concept')
            for name in assertion.rhs.role_names():
                if name not in self.roles:
                    raise UnknownSymbolError(name, 'role')

    @classmethod
    def build(cls, assertions: Iterable[InclusionAssertion], concepts=(), roles=()):
        """Build a KB whose signature also covers every symbol in the assertions"""
        assertions = tuple(assertions)
        concepts = set(concepts)
        roles = set(roles)
        for assertion in assertions:
            concepts.add(assertion.lhs)
            concepts |= assertion.rhs.concept_names()
            roles |= assertion.rhs.role_names()
        return cls(frozenset(concepts), frozenset(roles), assertions)

    def merged(self) -> Dict[str, ConceptExpr]:
        """Map each left hand side to the conjunction of its right hand sides"""
        grouped = OrderedDict()
        for assertion in self.assertions:
            grouped.setdefault(assertion.lhs, []).append(assertion.rhs)
        return OrderedDict(
            (lhs, conjunction(*rhss)) for lhs, rhss in grouped.items()
        )

    def collapsed(self):
        """Equivalent KB with one assertion per left hand side"""
        return KnowledgeBase(
            self.concepts,
            self.roles,
            tuple(InclusionAssertion(lhs, rhs) for lhs, rhs in self.merged().items())
        )

    def assertions_for(self, lhs):
        return tuple(a for a in self.assertions if a.lhs == lhs)

    def with_assertions(self, extra: Iterable[InclusionAssertion]):
        """Copy of this KB with additional assertions over the same signature"""
        return KnowledgeBase(self.concepts, self.roles, self.assertions + tuple(extra))

    def check_concept(self, expr: ConceptExpr):
        """
        Check that an expression only mentions symbols of this signature.

        Raises:
            UnknownSymbolError: For the first unknown symbol
        """
        for name in sorted(expr.concept_names()):
            if name not in self.concepts:
                raise UnknownSymbolError(name, 'concept')
        for name in sorted(expr.role_names()):
            if name not in self.roles:
                raise UnknownSymbolError(name, 'role')

    def to_dict(self):
        return {
            'concepts': sorted(self.concepts),
            'roles': sorted(self.roles),
            'assertions': [str(a) for a in self.assertions]
        }

    def __repr__(self):
        return (
            f"<KnowledgeBase concepts={len(self.concepts)} roles={len(self.roles)} "
            f"assertions={len(self.assertions)}>"
        )
