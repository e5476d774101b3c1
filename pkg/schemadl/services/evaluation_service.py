# File: schemadl/services/evaluation_service.py
"""
Set-theoretic semantics of concepts over finite interpretations.
Evaluates concept extensions, checks models and forms disjoint unions.
"""
import logging

from schemadl.exceptions import SignatureMismatchError, UnknownSymbolError
from schemadl.models.concept import (
    And, AtLeast, AtMost, Atomic, Bottom, Exists, Forall, NegAtomic, Or, Top
)
from schemadl.models.interpretation import Interpretation
from schemadl.models.report import CheckReport, Violation

logger = logging.getLogger(__name__)


class EvaluationService:
    """Service for evaluating concepts and checking models"""

    @staticmethod
    def evaluate_concept(expr, interpretation):
        """
        Compute the extension of a concept.

        Args:
            expr: ConceptExpr
            interpretation: Interpretation covering the symbols of expr

        Returns:
            frozenset of individuals

        Raises:
            UnknownSymbolError: If expr mentions a symbol the interpretation lacks
        """
        for name in sorted(expr.concept_names()):
            if name not in interpretation.concepts:
                raise UnknownSymbolError(name, 'concept')
        for name in sorted(expr.role_names()):
            if not interpretation.has_role(name):
                raise UnknownSymbolError(name, 'role')
        return _evaluate(expr, interpretation, {})

    @staticmethod
    def is_model(kb, interpretation):
        """
        Check every assertion A ⊑ C, i.e. A^I ⊆ C^I.

        Args:
            kb: KnowledgeBase
            interpretation: Interpretation covering kb's signature

        Returns:
            CheckReport with one violation (and the least witness) per
            violated assertion

        Raises:
            SignatureMismatchError: If the interpretation does not cover kb
        """
        missing = {name for name in kb.concepts if name not in interpretation.concepts}
        missing |= {name for name in kb.roles if not interpretation.has_role(name)}
        if missing:
            raise SignatureMismatchError(missing=missing)

        cache = {}
        violations = []
        for assertion in kb.assertions:
            outside = interpretation.concept(assertion.lhs) - _evaluate(assertion.rhs, interpretation, cache)
            if outside:
                witness = min(outside)
                violations.append(Violation(
                    str(assertion),
                    f"individual {interpretation.label(witness)} is in {assertion.lhs} "
                    f"but not in the right hand side",
                    witness
                ))
        return CheckReport(tuple(violations))

    @staticmethod
    def disjoint_union(first, second):
        """
        Disjoint union of two interpretations over the same signature.
        Individuals of the second are shifted past those of the first.

        Raises:
            SignatureMismatchError: If the signatures differ
        """
        _same_signature(first, second)
        shift = first.size
        concepts = {
            name: first.concept(name) | {d + shift for d in second.concept(name)}
            for name in first.concepts
        }
        roles = {
            name: first.role(name) | {(a + shift, b + shift) for a, b in second.role(name)}
            for name in first.roles
        }
        labels = None
        if first.labels is not None or second.labels is not None:
            labels = tuple(first.label(d) for d in first.domain) + tuple(
                f"{second.label(d)}'" for d in second.domain
            )
        return Interpretation(first.size + second.size, concepts, roles, labels)


def _same_signature(first, second):
    concepts_a, concepts_b = set(first.concepts), set(second.concepts)
    roles_a, roles_b = set(first.roles), set(second.roles)
    if concepts_a != concepts_b or roles_a != roles_b:
        raise SignatureMismatchError(
            missing=(concepts_a - concepts_b) | (roles_a - roles_b),
            extra=(concepts_b - concepts_a) | (roles_b - roles_a)
        )


def _evaluate(expr, interp, cache):
    cached = cache.get(expr)
    if cached is not None:
        return cached

    domain = frozenset(interp.domain)
    if isinstance(expr, Top):
        result = domain
    elif isinstance(expr, Bottom):
        result = frozenset()
    elif isinstance(expr, Atomic):
        result = interp.concept(expr.name)
    elif isinstance(expr, NegAtomic):
        result = domain - interp.concept(expr.name)
    elif isinstance(expr, And):
        result = domain
        for op in expr.operands:
            result = result & _evaluate(op, interp, cache)
    elif isinstance(expr, Or):
        result = frozenset()
        for op in expr.operands:
            result = result | _evaluate(op, interp, cache)
    elif isinstance(expr, Forall):
        filler = _evaluate(expr.filler, interp, cache)
        result = frozenset(d for d in interp.domain if interp.successors(expr.role, d) <= filler)
    elif isinstance(expr, Exists):
        filler = _evaluate(expr.filler, interp, cache)
        result = frozenset(d for d in interp.domain if interp.successors(expr.role, d) & filler)
    elif isinstance(expr, AtLeast):
        result = frozenset(d for d in interp.domain if len(interp.successors(expr.role, d)) >= expr.n)
    elif isinstance(expr, AtMost):
        result = frozenset(d for d in interp.domain if len(interp.successors(expr.role, d)) <= expr.n)
    else:
        raise TypeError(f"unsupported concept expression {expr!r}")

    cache[expr] = result
    return result
