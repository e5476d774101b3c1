# File: schemadl/models/__init__.py
"""Domain models"""
from .concept import (
    BOTTOM, TOP, And, AtLeast, AtMost, Atomic, Bottom, ConceptExpr, Exists, Forall,
    NegAtomic, Or, RoleExpr, Top, canonical, complement, conjunction, eliminate_constants,
    disjunction, exactly
)
from .knowledge_base import InclusionAssertion, KnowledgeBase
from .interpretation import Interpretation
from .verdict import CardinalityFact, FactKind, Outcome, ReasoningVerdict, SearchBudget
from .report import CheckReport, Violation
from .frame import FrameDefinition, FrameKB, FrameRef, Intersection, Not, SlotSpec, Union
from .er_schema import Cardinality, ConflictSet, DatabaseState, ERSchema, LabeledTuple
from .oo_schema import (
    BadCycle, ClassDecl, ClassRef, OOInstance, OOSchema, Oid, RecVal, Record, SetOf,
    SetVal, TypeExpr, UnionType, Value
)

__all__ = [
    'BOTTOM', 'TOP', 'And', 'AtLeast', 'AtMost', 'Atomic', 'Bottom', 'ConceptExpr',
    'Exists', 'Forall', 'NegAtomic', 'Or', 'RoleExpr', 'Top', 'canonical', 'complement',
    'conjunction', 'eliminate_constants', 'disjunction', 'exactly',
    'InclusionAssertion', 'KnowledgeBase',
    'Interpretation',
    'CardinalityFact', 'FactKind', 'Outcome', 'ReasoningVerdict', 'SearchBudget',
    'CheckReport', 'Violation',
    'FrameDefinition', 'FrameKB', 'FrameRef', 'Intersection', 'Not', 'SlotSpec', 'Union',
    'Cardinality', 'ConflictSet', 'DatabaseState', 'ERSchema', 'LabeledTuple',
    'BadCycle', 'ClassDecl', 'ClassRef', 'OOInstance', 'OOSchema', 'Oid', 'RecVal',
    'Record', 'SetOf', 'SetVal', 'TypeExpr', 'UnionType', 'Value'
]
