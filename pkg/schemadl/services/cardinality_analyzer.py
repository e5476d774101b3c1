# File: schemadl/services/cardinality_analyzer.py
"""
Sound cardinality reasoning for finite models.

Derives subset facts and linear inequalities m·#A ≤ n·#B between atomic
concepts that hold in every finite model, and from them finite-only
subsumptions and finite inconsistencies. Absence of a fact proves nothing.
"""
import logging
from fractions import Fraction

from schemadl.models.concept import And, AtLeast, AtMost, Atomic, Forall
from schemadl.models.verdict import CardinalityFact, FactKind

logger = logging.getLogger(__name__)


class CardinalityAnalyzer:
    """
    Rule-based analyzer.

    Rules:
    1. A ⊑ … ⊓ B ⊓ … gives Subset(A, B) (closed transitively)
    2. A has ∃≥m R and ∀R.B, B has ∃≤n R⁻: m·#A ≤ n·#B
    3. Subset(A, B) gives 1·#A ≤ 1·#B
    4. Inequalities chain, coefficients kept as exact ratios
    5. Subset(A, B) and #B ≤ ratio·#A with ratio ≤ 1: FiniteSubsumption(B, A)
    6. #A ≤ ratio·#A with ratio < 1: FiniteInconsistent(A)
    """

    @staticmethod
    def analyze_cardinalities(kb):
        """
        Args:
            kb: KnowledgeBase

        Returns:
            Tuple of CardinalityFact in a stable order
        """
        conjuncts, sources = _top_level_conjuncts(kb)
        facts = []

        # Rule 1 with transitive closure; derivations are the assertions along the path
        subsets = {}
        for lhs, items in conjuncts.items():
            for item in items:
                if isinstance(item, Atomic) and item.name != lhs:
                    key = (lhs, item.name)
                    subsets.setdefault(key, sources[lhs])
        changed = True
        while changed:
            changed = False
            for (a, b), first in list(subsets.items()):
                for (b2, c), second in list(subsets.items()):
                    if b2 == b and a != c and (a, c) not in subsets:
                        subsets[(a, c)] = _merge(first, second)
                        changed = True
        for (a, b), derivation in subsets.items():
            facts.append(CardinalityFact(FactKind.SUBSET, a, b, derivation=derivation))

        # Ratios: ratio[(A, B)] = r means #A ≤ r·#B; smaller is tighter
        ratios = {}

        def tighten(a, b, ratio, derivation):
            current = ratios.get((a, b))
            if current is None or ratio < current[0]:
                ratios[(a, b)] = (ratio, derivation)
                return True
            return False

        # Rule 3
        for (a, b), derivation in subsets.items():
            tighten(a, b, Fraction(1), derivation)

        # Rule 2
        for a, items in conjuncts.items():
            for lower in items:
                if not isinstance(lower, AtLeast) or lower.n < 1:
                    continue
                for universal in items:
                    if not isinstance(universal, Forall) or universal.role != lower.role:
                        continue
                    for b in _filler_atoms(universal.filler):
                        for upper in conjuncts.get(b, ()):
                            if isinstance(upper, AtMost) and upper.role == lower.role.inverse():
                                derivation = _merge(sources[a], sources[b])
                                if upper.n == 0:
                                    # No B has an R⁻-successor, yet every A needs one in B
                                    facts.append(CardinalityFact(
                                        FactKind.FINITE_INCONSISTENT, a, derivation=derivation
                                    ))
                                    continue
                                tighten(a, b, Fraction(upper.n, lower.n), derivation)

        # Rule 4: relax along paths of length at most |concepts|
        for round_number in range(len(kb.concepts)):
            updated = False
            for (a, b), (first, d1) in list(ratios.items()):
                for (b2, c), (second, d2) in list(ratios.items()):
                    if b2 == b and tighten(a, c, first * second, _merge(d1, d2)):
                        updated = True
            logger.debug("Chaining round %d: %d inequalities", round_number + 1, len(ratios))
            if not updated:
                break

        for (a, b), (ratio, derivation) in ratios.items():
            facts.append(CardinalityFact(
                FactKind.INEQUALITY, a, b,
                m=ratio.denominator, n=ratio.numerator, derivation=derivation
            ))

        # Rule 5: A ⊆ B and #B ≤ #A force A = B in finite models
        for (a, b), subset_derivation in subsets.items():
            reverse = ratios.get((b, a))
            if reverse is not None and reverse[0] <= 1:
                facts.append(CardinalityFact(
                    FactKind.FINITE_SUBSUMPTION, b, a,
                    derivation=_merge(subset_derivation, reverse[1])
                ))

        # Rule 6
        for (a, b), (ratio, derivation) in ratios.items():
            if a == b and ratio < 1:
                facts.append(CardinalityFact(FactKind.FINITE_INCONSISTENT, a, derivation=derivation))

        result = tuple(sorted(set(facts), key=CardinalityFact.sort_key))
        logger.info("Analyzer derived %d facts", len(result))
        return result


def _top_level_conjuncts(kb):
    """Top-level conjuncts of each merged assertion, and the assertions behind them"""
    conjuncts = {}
    sources = {}
    for lhs, rhs in kb.merged().items():
        conjuncts[lhs] = rhs.operands if isinstance(rhs, And) else (rhs,)
        sources[lhs] = kb.assertions_for(lhs)
    return conjuncts, sources


def _filler_atoms(filler):
    """∀R.(B ⊓ C) is ∀R.B ⊓ ∀R.C, so every atomic conjunct of the filler counts"""
    items = filler.operands if isinstance(filler, And) else (filler,)
    return [item.name for item in items if isinstance(item, Atomic)]


def _merge(*derivations):
    merged = []
    for derivation in derivations:
        for assertion in derivation:
            if assertion not in merged:
                merged.append(assertion)
    return tuple(merged)
