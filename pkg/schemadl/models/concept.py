# File: schemadl/models/concept.py
"""
Abstract syntax of the concept language.

Concepts are built from atomic concepts, atomic negation, conjunction,
disjunction, universal quantification and unqualified number restrictions
over atomic roles and their inverses. TOP and BOTTOM are first-class leaves.
All nodes are immutable and hashable, so they can be used as keys when
compiling to SAT variables.
"""
import re
from dataclasses import dataclass
from typing import FrozenSet, Iterator, Tuple

from schemadl.exceptions import InexpressibleNegationError

IDENTIFIER = re.compile(r'[A-Za-z][A-Za-z0-9_]*\Z')

# Rendering precedence
PREC_OR = 1
PREC_AND = 2
PREC_ATOM = 3


@dataclass(frozen=True, order=True)
class RoleExpr:
    """
    An atomic role P or its inverse P⁻.

    Attributes:
        base: Atomic role name
        inverted: True for the inverse role
    """
    base: str
    inverted: bool = False

    def inverse(self):
        """P ↦ P⁻ and P⁻ ↦ P (inverse of an inverse is never represented)"""
        return RoleExpr(self.base, not self.inverted)

    def __str__(self):
        return f"INV {self.base}" if self.inverted else self.base


class ConceptExpr:
    """Base class of all concept expressions"""

    # Constructs accepted as search goals but never inside a knowledge base
    goal_only = False

    def children(self) -> Tuple['ConceptExpr', ...]:
        return ()

    def walk(self) -> Iterator['ConceptExpr']:
        """Yield this node and every sub-expression, depth first"""
        yield self
        for child in self.children():
            yield from child.walk()

    def concept_names(self) -> FrozenSet[str]:
        return frozenset(
            node.name for node in self.walk() if isinstance(node, (Atomic, NegAtomic))
        )

    def role_exprs(self) -> FrozenSet[RoleExpr]:
        return frozenset(
            node.role for node in self.walk() if hasattr(node, 'role')
        )

    def role_names(self) -> FrozenSet[str]:
        return frozenset(role.base for role in self.role_exprs())

    def contains_goal_only(self):
        return any(node.goal_only for node in self.walk())

    def to_text(self, context=PREC_OR):
        raise NotImplementedError

    def __str__(self):
        return self.to_text()


@dataclass(frozen=True)
class Top(ConceptExpr):
    def to_text(self, context=PREC_OR):
        return 'TOP'


@dataclass(frozen=True)
class Bottom(ConceptExpr):
    def to_text(self, context=PREC_OR):
        return 'BOTTOM'


@dataclass(frozen=True)
class Atomic(ConceptExpr):
    name: str

    def to_text(self, context=PREC_OR):
        return self.name


@dataclass(frozen=True)
class NegAtomic(ConceptExpr):
    name: str

    def to_text(self, context=PREC_OR):
        return f"NOT {self.name}"


@dataclass(frozen=True)
class And(ConceptExpr):
    operands: Tuple[ConceptExpr, ...]

    def __post_init__(self):
        if len(self.operands) < 2:
            raise ValueError("conjunction needs at least two operands")

    def children(self):
        return self.operands

    def to_text(self, context=PREC_OR):
        text = ' AND '.join(_conjunct_texts(self.operands))
        return f"({text})" if context > PREC_AND else text


@dataclass(frozen=True)
class Or(ConceptExpr):
    operands: Tuple[ConceptExpr, ...]

    def __post_init__(self):
        if len(self.operands) < 2:
            raise ValueError("disjunction needs at least two operands")

    def children(self):
        return self.operands

    def to_text(self, context=PREC_OR):
        text = ' OR '.join(sorted(op.to_text(PREC_AND) for op in self.operands))
        return f"({text})" if context > PREC_OR else text


@dataclass(frozen=True)
class Forall(ConceptExpr):
    role: RoleExpr
    filler: ConceptExpr

    def children(self):
        return (self.filler,)

    def to_text(self, context=PREC_OR):
        return f"ALL {self.role} . {self.filler.to_text(PREC_ATOM)}"


@dataclass(frozen=True)
class AtLeast(ConceptExpr):
    n: int
    role: RoleExpr

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("number restrictions take nonnegative integers")

    def to_text(self, context=PREC_OR):
        return f"ATLEAST {self.n} {self.role}"


@dataclass(frozen=True)
class AtMost(ConceptExpr):
    n: int
    role: RoleExpr

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("number restrictions take nonnegative integers")

    def to_text(self, context=PREC_OR):
        return f"ATMOST {self.n} {self.role}"


@dataclass(frozen=True)
class Exists(ConceptExpr):
    """
    Qualified existential ∃R.C.

    Only produced by complement() for ¬∀R.C; the search engine and the
    evaluator accept it in goals, knowledge bases never contain it.
    """
    role: RoleExpr
    filler: ConceptExpr

    goal_only = True

    def children(self):
        return (self.filler,)

    def to_text(self, context=PREC_OR):
        return f"SOME {self.role} . {self.filler.to_text(PREC_ATOM)}"


TOP = Top()
BOTTOM = Bottom()


def _conjunct_texts(operands):
    """Render conjuncts sorted, pairing ATLEAST n R with ATMOST n R as EXACTLY n R"""
    exact = {
        (op.n, op.role) for op in operands
        if isinstance(op, AtLeast) and AtMost(op.n, op.role) in operands
    }
    texts = [f"EXACTLY {n} {role}" for n, role in exact]
    for op in operands:
        if isinstance(op, (AtLeast, AtMost)) and (op.n, op.role) in exact:
            continue
        texts.append(op.to_text(PREC_ATOM))
    return sorted(texts)


def _sort_key(expr):
    return expr.to_text()


# ==================== SMART CONSTRUCTORS ====================

def conjunction(*operands):
    """
    Build a canonical conjunction: nested conjunctions are flattened,
    TOP and duplicates dropped, operands sorted by rendering.
    """
    flat = []
    for op in operands:
        if isinstance(op, And):
            flat.extend(op.operands)
        elif not isinstance(op, Top):
            flat.append(op)
    unique = sorted(set(flat), key=_sort_key)
    if not unique:
        return TOP
    if len(unique) == 1:
        return unique[0]
    return And(tuple(unique))


def disjunction(*operands):
    """Build a canonical disjunction (flattened, deduplicated, sorted)"""
    flat = []
    for op in operands:
        if isinstance(op, Or):
            flat.extend(op.operands)
        else:
            flat.append(op)
    unique = sorted(set(flat), key=_sort_key)
    if not unique:
        return BOTTOM
    if len(unique) == 1:
        return unique[0]
    return Or(tuple(unique))


def at_least(n, role):
    """∃≥n R, with ∃≥0 R normalized to TOP"""
    return TOP if n == 0 else AtLeast(n, role)


def at_most(n, role):
    return AtMost(n, role)


def exactly(n, role):
    """∃=n R as ∃≥n R ⊓ ∃≤n R"""
    return conjunction(at_least(n, role), AtMost(n, role))


def some(role):
    """Unqualified ∃R, i.e. ∃≥1 R"""
    return AtLeast(1, role)


def forall(role, filler):
    return Forall(role, filler)


# ==================== TRANSFORMATIONS ====================

def canonical(expr):
    """Recursively rebuild an expression in canonical form"""
    if isinstance(expr, And):
        return conjunction(*(canonical(op) for op in expr.operands))
    if isinstance(expr, Or):
        return disjunction(*(canonical(op) for op in expr.operands))
    if isinstance(expr, Forall):
        return Forall(expr.role, canonical(expr.filler))
    if isinstance(expr, Exists):
        return Exists(expr.role, canonical(expr.filler))
    if isinstance(expr, AtLeast):
        return at_least(expr.n, expr.role)
    return expr


def complement(expr):
    """
    Negation normal form of ¬expr.

    Stays inside the concept language except for ¬∀R.C, which becomes the
    goal-only qualified existential ∃R.¬C (or ∃≥1 R when C is ⊥).

    Raises:
        InexpressibleNegationError: If expr already contains a goal-only construct
    """
    if expr.contains_goal_only():
        raise InexpressibleNegationError(expr)
    return _complement(expr)


def _complement(expr):
    if isinstance(expr, Top):
        return BOTTOM
    if isinstance(expr, Bottom):
        return TOP
    if isinstance(expr, Atomic):
        return NegAtomic(expr.name)
    if isinstance(expr, NegAtomic):
        return Atomic(expr.name)
    if isinstance(expr, And):
        return disjunction(*(_complement(op) for op in expr.operands))
    if isinstance(expr, Or):
        return conjunction(*(_complement(op) for op in expr.operands))
    if isinstance(expr, AtLeast):
        return BOTTOM if expr.n == 0 else AtMost(expr.n - 1, expr.role)
    if isinstance(expr, AtMost):
        return AtLeast(expr.n + 1, expr.role)
    if isinstance(expr, Forall):
        negated = _complement(expr.filler)
        if isinstance(negated, Top):
            return some(expr.role)
        if isinstance(negated, Bottom):
            return BOTTOM
        return Exists(expr.role, negated)
    raise InexpressibleNegationError(expr)


def eliminate_constants(expr, atom):
    """
    Replace TOP/BOTTOM by A ⊔ ¬A / A ⊓ ¬A for a designated atomic concept,
    giving an expression built only from the basic constructors.
    """
    if isinstance(expr, Top):
        return Or((Atomic(atom), NegAtomic(atom)))
    if isinstance(expr, Bottom):
        return And((Atomic(atom), NegAtomic(atom)))
    if isinstance(expr, And):
        return And(tuple(eliminate_constants(op, atom) for op in expr.operands))
    if isinstance(expr, Or):
        return Or(tuple(eliminate_constants(op, atom) for op in expr.operands))
    if isinstance(expr, Forall):
        return Forall(expr.role, eliminate_constants(expr.filler, atom))
    if isinstance(expr, Exists):
        return Exists(expr.role, eliminate_constants(expr.filler, atom))
    return expr


def is_identifier(name):
    return bool(IDENTIFIER.match(name))
