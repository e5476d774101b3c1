# File: schemadl/services/frame_service.py
"""
Service layer for frame knowledge bases.
Translates frames to concept inclusions and answers consistency and
generality questions through the finite-model finder.
"""
import logging

from schemadl.config import Config
from schemadl.exceptions import UnknownSymbolError
from schemadl.models.concept import (
    Atomic, Forall, NegAtomic, RoleExpr, at_least, at_most, conjunction, disjunction
)
from schemadl.models.frame import FrameRef, Intersection, Not, Union
from schemadl.models.knowledge_base import InclusionAssertion, KnowledgeBase
from schemadl.models.verdict import Outcome
from schemadl.services.search_engine import ModelSearchEngine

logger = logging.getLogger(__name__)


class FrameService:
    """Service for translating and reasoning about frame knowledge bases"""

    @staticmethod
    def constraint_concept(constraint):
        """
        Map a value class to a concept.

        (UNION H1 H2) ↦ θ(H1) ⊔ θ(H2), (INTERSECTION H1 H2) ↦ θ(H1) ⊓ θ(H2).
        NOT is pushed inward onto frame names so the result stays in
        negation normal form.
        """
        return _constraint(constraint, negated=False)

    @staticmethod
    def body_concept(definition):
        """
        Concept for a frame body: super frames, then per slot
        ∀S.θ(H) and the stated cardinality bounds.
        """
        conjuncts = [Atomic(parent) for parent in definition.supers]
        for slot in definition.slots:
            role = RoleExpr(slot.slot)
            conjuncts.append(Forall(role, FrameService.constraint_concept(slot.value_class)))
            if slot.min_card is not None:
                conjuncts.append(at_least(slot.min_card, role))
            if slot.max_card is not None:
                conjuncts.append(at_most(slot.max_card, role))
        return conjunction(*conjuncts)

    @staticmethod
    def translate_theta(frame_kb):
        """
        Translate a frame knowledge base.

        One atomic concept per frame name, one atomic role per slot name and
        one assertion per frame with a nonempty body.

        Args:
            frame_kb: FrameKB

        Returns:
            KnowledgeBase
        """
        assertions = [
            InclusionAssertion(frame.name, FrameService.body_concept(frame))
            for frame in frame_kb.frames if not frame.is_empty
        ]
        kb = KnowledgeBase(frame_kb.frame_names, frame_kb.slot_names, tuple(assertions))
        logger.info("Translated frame KB %s: %r", frame_kb.kb_name, kb)
        return kb

    @staticmethod
    def frame_consistent(frame_kb, frame, budget, app_config=Config):
        """
        Check whether a frame can have instances.

        The translation has no inverse roles, so the translated KB has the
        finite model property: a witness certifies consistency outright,
        while NoModelUpTo stays a bounded negative.

        Raises:
            UnknownSymbolError: If the frame is not declared
        """
        _require_frame(frame_kb, frame)
        kb = FrameService.translate_theta(frame_kb)
        verdict = ModelSearchEngine.find_model(kb, Atomic(frame), budget, app_config)
        if verdict.outcome == Outcome.WITNESS_FOUND:
            caveat = f"Frame {frame} is consistent (witness of size {verdict.bound})."
        elif verdict.outcome == Outcome.NO_MODEL_UP_TO:
            caveat = (
                f"No instance of {frame} in models up to size {verdict.bound}; the "
                f"translated KB has the finite model property, but a larger model may exist."
            )
        else:
            caveat = verdict.caveat
        return verdict.replace(caveat=caveat)

    @staticmethod
    def frame_more_general(frame_kb, frame, expression, budget, app_config=Config):
        """
        Check whether a frame expression is more general than a frame.

        Args:
            frame_kb: FrameKB
            frame: Frame name
            expression: FrameDefinition without a name (see parse_frame_expression)
            budget: SearchBudget

        Returns:
            ReasoningVerdict; NoModelUpTo is evidence for "more general"
            up to the bound, WitnessFound refutes it

        Raises:
            UnknownSymbolError: If the frame or a name in the expression is unknown
        """
        _require_frame(frame_kb, frame)
        for name in sorted(expression.referenced_frames()):
            if name not in frame_kb.frame_names:
                raise UnknownSymbolError(name, 'frame')
        for slot in expression.slots:
            if slot.slot not in frame_kb.slot_names:
                raise UnknownSymbolError(slot.slot, 'slot')

        kb = FrameService.translate_theta(frame_kb)
        return ModelSearchEngine.subsumption_counterexample(
            kb, Atomic(frame), FrameService.body_concept(expression), budget, app_config
        )


def _require_frame(frame_kb, frame):
    if frame not in frame_kb.frame_names:
        raise UnknownSymbolError(frame, 'frame')


def _constraint(constraint, negated):
    if isinstance(constraint, FrameRef):
        return NegAtomic(constraint.name) if negated else Atomic(constraint.name)
    if isinstance(constraint, Not):
        return _constraint(constraint.operand, not negated)
    left = _constraint(constraint.left, negated)
    right = _constraint(constraint.right, negated)
    if isinstance(constraint, Union) != negated:
        return disjunction(left, right)
    if isinstance(constraint, Intersection) != negated:
        return conjunction(left, right)
    raise TypeError(f"unsupported value class {constraint!r}")
