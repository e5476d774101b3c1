# File: schemadl/services/oo_service.py
"""
Service layer for object-oriented schemas.

Evaluates types over instances, checks instance legality, translates
schemas to knowledge bases, unfolds bad cycles of finite models and maps
instances to interpretations and back.
"""
import logging
from collections import defaultdict

from schemadl.config import Config
from schemadl.exceptions import UnknownSymbolError
from schemadl.models.concept import (
    BOTTOM, Atomic, Forall, NegAtomic, RoleExpr, conjunction, disjunction, exactly
)
from schemadl.models.interpretation import Interpretation
from schemadl.models.knowledge_base import InclusionAssertion, KnowledgeBase
from schemadl.models.oo_schema import (
    ABSTRACT_CLASS, MEMBER_ROLE, REC_TYPE, SET_TYPE, VALUE_ROLE,
    BadCycle, ClassRef, OOInstance, Oid, RecVal, Record, SetOf, SetVal, TypeExpr, UnionType
)
from schemadl.models.report import CheckReport, Violation
from schemadl.models.verdict import Outcome
from schemadl.parsers.oo_parser import parse_type_expression
from schemadl.services.search_engine import ModelSearchEngine

logger = logging.getLogger(__name__)


class OOService:
    """Service for object-oriented schemas, instances and reasoning"""

    # ==================== VALUE SEMANTICS ====================

    @staticmethod
    def type_member(type_expr, value, instance):
        """
        Check v ∈ T^J.

        A class denotes its object identifiers, Union the union of its
        members, Set-of T every finite set (the empty one included) of
        T-values, and a Record every record value having at least the
        listed attributes with values of the listed types.
        """
        if isinstance(type_expr, ClassRef):
            return isinstance(value, Oid) and value.name in instance.extension(type_expr.name)
        if isinstance(type_expr, UnionType):
            return any(OOService.type_member(m, value, instance) for m in type_expr.members)
        if isinstance(type_expr, SetOf):
            return isinstance(value, SetVal) and all(
                OOService.type_member(type_expr.element, item, instance) for item in value.items
            )
        if isinstance(type_expr, Record):
            if not isinstance(value, RecVal):
                return False
            for attribute, field_type in type_expr.fields:
                component = value.get(attribute)
                if component is None or not OOService.type_member(field_type, component, instance):
                    return False
            return True
        raise TypeError(f"unsupported type expression {type_expr!r}")

    @staticmethod
    def check_legal_instance(schema, instance):
        """
        Check an instance against its schema.

        Conditions:
        1. π only uses object identifiers of the instance and ρ is defined
           on every object identifier
        2. C ⊆ Ci for every declaration "Class C is-a ..., Ci, ..."
        3. ρ(o) ∈ T for every o in C, where T is the declared type of C

        Returns:
            CheckReport

        Raises:
            UnknownSymbolError: If π names a class the schema lacks
        """
        for name in sorted(instance.pi):
            if name not in schema.class_names:
                raise UnknownSymbolError(name, 'class')

        violations = []
        for name, extension in sorted(instance.pi.items()):
            for oid in sorted(extension - instance.oids):
                violations.append(Violation(
                    f"pi {name}", f"{oid} is in {name} but is not an object identifier", oid
                ))
        for oid in sorted(instance.oids - set(instance.rho)):
            violations.append(Violation('rho', f"{oid} has no value", oid))

        for decl in schema.decls:
            for parent in decl.supers:
                for oid in sorted(instance.extension(decl.name) - instance.extension(parent)):
                    violations.append(Violation(
                        f"is-a {decl.name} {parent}", f"{oid} is a {decl.name} but not a {parent}", oid
                    ))
            for oid in sorted(instance.extension(decl.name)):
                value = instance.rho.get(oid)
                if value is not None and not OOService.type_member(decl.type, value, instance):
                    violations.append(Violation(
                        f"type-is {decl.name}",
                        f"value {value} of {oid} is not of type {decl.type}",
                        oid
                    ))

        report = CheckReport(tuple(violations))
        logger.debug("Instance check: %d violations", len(report.violations))
        return report

    # ==================== TRANSLATION ====================

    @staticmethod
    def type_concept(type_expr):
        """ψ(T)"""
        if isinstance(type_expr, ClassRef):
            return Atomic(type_expr.name)
        if isinstance(type_expr, UnionType):
            return disjunction(*(OOService.type_concept(m) for m in type_expr.members))
        if isinstance(type_expr, SetOf):
            return conjunction(
                Atomic(SET_TYPE),
                Forall(RoleExpr(MEMBER_ROLE), OOService.type_concept(type_expr.element))
            )
        if isinstance(type_expr, Record):
            parts = [Atomic(REC_TYPE)]
            for attribute, field_type in type_expr.fields:
                role = RoleExpr(attribute)
                parts.append(Forall(role, OOService.type_concept(field_type)))
                parts.append(exactly(1, role))
            return conjunction(*parts)
        raise TypeError(f"unsupported type expression {type_expr!r}")

    @staticmethod
    def translate_psi(schema, close_opaque=False):
        """
        Translate an object-oriented schema into a knowledge base.

        Fixed assertions:
            AbstractClass ⊑ ∃=1 value
            RecType ⊑ ∀value.⊥
            SetType ⊑ ∀value.⊥ ⊓ ¬RecType
        and per declaration
            C ⊑ AbstractClass ⊓ C1 ⊓ ... ⊓ Cn ⊓ ∀value.ψ(T)

        Args:
            schema: OOSchema
            close_opaque: Also add C ⊑ AbstractClass for each opaque class,
                so that every class instance is an object

        Returns:
            KnowledgeBase
        """
        value = RoleExpr(VALUE_ROLE)
        assertions = [
            InclusionAssertion(ABSTRACT_CLASS, exactly(1, value)),
            InclusionAssertion(REC_TYPE, Forall(value, BOTTOM)),
            InclusionAssertion(SET_TYPE, conjunction(Forall(value, BOTTOM), NegAtomic(REC_TYPE))),
        ]
        for decl in schema.decls:
            assertions.append(InclusionAssertion(decl.name, conjunction(
                Atomic(ABSTRACT_CLASS),
                *(Atomic(parent) for parent in decl.supers),
                Forall(value, OOService.type_concept(decl.type))
            )))
        if close_opaque:
            for name in sorted(schema.opaque_classes):
                assertions.append(InclusionAssertion(name, Atomic(ABSTRACT_CLASS)))

        kb = KnowledgeBase(
            frozenset([ABSTRACT_CLASS, REC_TYPE, SET_TYPE]) | schema.class_names,
            frozenset([VALUE_ROLE, MEMBER_ROLE]) | schema.attribute_names,
            tuple(assertions)
        )
        logger.info("Translated OO schema: %r", kb)
        return kb

    # ==================== DEPTH, CYCLES AND UNFOLDING ====================

    @staticmethod
    def type_depth(type_expr):
        """Nesting depth: 0 for a class, max for Union, one more per Set-of or Record"""
        if isinstance(type_expr, ClassRef):
            return 0
        if isinstance(type_expr, UnionType):
            return max(OOService.type_depth(m) for m in type_expr.members)
        if isinstance(type_expr, SetOf):
            return 1 + OOService.type_depth(type_expr.element)
        return 1 + max(OOService.type_depth(t) for _, t in type_expr.fields)

    @staticmethod
    def class_depths(schema):
        return {decl.name: OOService.type_depth(decl.type) for decl in schema.decls}

    @staticmethod
    def schema_depth(schema):
        """Largest depth of a declared type (0 for an empty schema)"""
        return max(OOService.class_depths(schema).values(), default=0)

    @staticmethod
    def find_bad_cycles(schema, interp):
        """
        Enumerate the elementary cycles through record and set individuals
        that are not objects and whose edges are not `value` edges.

        Returns:
            List of BadCycle, each starting from its least individual
        """
        nodes, edges = _structure_graph(interp)
        cycles = []
        for start in sorted(nodes):
            # Cycles whose least individual is start
            stack = [(start, (start,), ())]
            while stack:
                current, path, labelled = stack.pop()
                for role, target in reversed(edges[current]):
                    if target == start:
                        cycles.append(BadCycle(path, labelled + ((current, role, target),)))
                    elif target > start and target not in path:
                        stack.append((target, path + (target,), labelled + ((current, role, target),)))
        cycles.sort(key=lambda c: (c.individuals, c.edges))
        logger.debug("Found %d bad cycles", len(cycles))
        return cycles

    @staticmethod
    def unfold(schema, interp, m):
        """
        Unfold every bad cycle into trees of depth m.

        Individuals on a bad cycle stay in place as depth-0 roots. An edge
        from a tree node at depth k < m to a bad-cycle individual t goes to
        a fresh copy of t at depth k + 1 instead; at depth m such edges are
        dropped. Copies keep the concept memberships of their originals and
        their edges to all other individuals. Objects are never copied.

        Returns:
            Interpretation without bad cycles (interp itself if it has none)
        """
        if m < 0:
            raise ValueError("unfolding depth must be nonnegative")
        nodes, edges = _structure_graph(interp)
        cyclic = _cyclic_nodes(nodes, edges)
        if not cyclic:
            return interp

        memberships = defaultdict(set)
        for name, extension in interp.concepts.items():
            for d in extension:
                memberships[d].add(name)
        outgoing = defaultdict(list)
        for name, pairs in interp.roles.items():
            for source, target in pairs:
                outgoing[source].append((name, target))
        for source in outgoing:
            outgoing[source].sort()

        labels = [interp.label(d) for d in interp.domain]
        concepts = {name: set(ext) for name, ext in interp.concepts.items()}
        roles = {name: set() for name in interp.roles}
        for name, pairs in interp.roles.items():
            roles[name] = {(a, b) for a, b in pairs if a not in cyclic or b not in cyclic}

        # Breadth-first expansion: (individual in the result, original, depth)
        queue = [(root, root, 0) for root in sorted(cyclic)]
        while queue:
            next_queue = []
            for node, original, depth in queue:
                for role, target in outgoing[original]:
                    if target not in cyclic:
                        roles[role].add((node, target))
                        continue
                    if depth == m:
                        continue
                    copy = len(labels)
                    labels.append(f"{labels[node]}/{role}/{interp.label(target)}")
                    for name in memberships[target]:
                        concepts[name].add(copy)
                    roles[role].add((node, copy))
                    next_queue.append((copy, target, depth + 1))
            queue = next_queue

        unfolded = Interpretation(len(labels), concepts, roles, tuple(labels))
        logger.info(
            "Unfolded %d cyclic individuals at depth %d: %d -> %d individuals",
            len(cyclic), m, interp.size, unfolded.size
        )
        return unfolded

    # ==================== INSTANCE MAPPINGS ====================

    @staticmethod
    def alpha_oo(schema, instance):
        """
        Map an instance to an interpretation with one individual per
        active value.

        Object identifiers come first (sorted), then set and record values
        sorted by their text. Objects are AbstractClass instances, record
        values RecType instances and set values SetType instances; value
        links each object to its ρ image, member each set to its elements
        and every attribute each record to its component.
        """
        active = instance.active_values()
        objects = sorted((v for v in active if isinstance(v, Oid)), key=lambda v: v.name)
        others = sorted((v for v in active if not isinstance(v, Oid)), key=lambda v: v.to_text())
        values = objects + others
        index = {value: d for d, value in enumerate(values)}

        attributes = set(schema.attribute_names)
        for value in others:
            if isinstance(value, RecVal):
                attributes |= {a for a, _ in value.fields}

        concepts = {name: set() for name in schema.class_names}
        concepts[ABSTRACT_CLASS] = {index[v] for v in objects}
        concepts[REC_TYPE] = {index[v] for v in others if isinstance(v, RecVal)}
        concepts[SET_TYPE] = {index[v] for v in others if isinstance(v, SetVal)}
        for name, extension in instance.pi.items():
            concepts.setdefault(name, set()).update(index[Oid(o)] for o in extension if Oid(o) in index)

        roles = {name: set() for name in attributes | {VALUE_ROLE, MEMBER_ROLE}}
        for oid, value in instance.rho.items():
            if Oid(oid) in index:
                roles[VALUE_ROLE].add((index[Oid(oid)], index[value]))
        for value in others:
            if isinstance(value, SetVal):
                roles[MEMBER_ROLE] |= {(index[value], index[item]) for item in value.items}
            else:
                for attribute, component in value.fields:
                    roles[attribute].add((index[value], index[component]))

        interp = Interpretation(len(values), concepts, roles, tuple(v.to_text() for v in values))
        logger.debug("alpha_oo: %r", interp)
        return interp

    @staticmethod
    def beta_oo(schema, interp):
        """
        Map a finite interpretation to an instance.

        The interpretation is first unfolded at the schema depth.
        Objects are exactly the AbstractClass instances of the unfolded
        interpretation; every other individual folds bottom-up into a record
        or set value where some object reaches it, and is dropped otherwise.
        An individual in neither RecType nor SetType is a leaf and folds to
        the empty record. π comes from the class concepts, ρ from value
        edges.

        On interpretations that are not models, an object with several
        value successors uses the least one, and an object with none gets
        the empty record.
        """
        unfolded = OOService.unfold(schema, interp, OOService.schema_depth(schema))
        abstract = unfolded.concepts.get(ABSTRACT_CLASS, frozenset())
        records = unfolded.concepts.get(REC_TYPE, frozenset())
        sets = unfolded.concepts.get(SET_TYPE, frozenset())
        objects = [d for d in unfolded.domain if d in abstract]
        loose = {d for d in unfolded.domain if d not in abstract and d not in records and d not in sets}
        if loose:
            logger.warning(
                "%d individuals outside AbstractClass, RecType and SetType are not objects",
                len(loose)
            )
        names = _unique_names(unfolded, objects)
        attributes = sorted(name for name in unfolded.roles if name not in (VALUE_ROLE, MEMBER_ROLE))
        folded = {}

        def fold(d):
            if d in names:
                return Oid(names[d])
            if d in folded:
                return folded[d]
            if d in loose:
                result = RecVal()
            elif d in sets and d not in records:
                members = unfolded.successors(RoleExpr(MEMBER_ROLE), d) if unfolded.has_role(MEMBER_ROLE) else ()
                result = SetVal(frozenset(fold(e) for e in members))
            else:
                components = {}
                for attribute in attributes:
                    fillers = unfolded.successors(RoleExpr(attribute), d)
                    if len(fillers) > 1:
                        logger.warning(
                            "Record individual %s has %d %s components, using the least",
                            unfolded.label(d), len(fillers), attribute
                        )
                    if fillers:
                        components[attribute] = fold(min(fillers))
                result = RecVal.of(components)
            folded[d] = result
            return result

        rho = {}
        for d in objects:
            successors = (
                unfolded.successors(RoleExpr(VALUE_ROLE), d) if unfolded.has_role(VALUE_ROLE) else frozenset()
            )
            if len(successors) > 1:
                logger.warning("Object %s has %d values, using the least", names[d], len(successors))
            if successors:
                rho[names[d]] = fold(min(successors))
            else:
                logger.warning("Object %s has no value, using the empty record", names[d])
                rho[names[d]] = RecVal()

        pi = {
            name: {names[d] for d in unfolded.concepts.get(name, ()) if d in names}
            for name in sorted(schema.class_names)
        }
        instance = OOInstance(frozenset(names.values()), pi, rho)
        logger.debug("beta_oo: %r", instance)
        return instance

    # ==================== REASONING ====================

    @staticmethod
    def oo_type_consistent(schema, type_expr, budget, app_config=Config):
        """
        Check whether some legal instance has a value of the given type.

        Args:
            schema: OOSchema
            type_expr: TypeExpr, or type text such as "Set-of Student"
            budget: SearchBudget

        Returns:
            ReasoningVerdict; a witness comes with a legal OOInstance as
            its certificate

        Raises:
            UnknownSymbolError: If the type names an unknown class or attribute
        """
        type_expr = _resolve_type(schema, type_expr)
        kb = OOService.translate_psi(schema, close_opaque=True)
        verdict = ModelSearchEngine.find_model(kb, OOService.type_concept(type_expr), budget, app_config)
        if verdict.found:
            return verdict.replace(
                certificate=OOService.beta_oo(schema, verdict.witness),
                caveat=(
                    f"Type {type_expr} is consistent: a model of size {verdict.bound} "
                    f"yields a legal instance with a value of this type."
                )
            )
        if verdict.outcome == Outcome.NO_MODEL_UP_TO:
            return verdict.replace(caveat=(
                f"No legal instance with a value of type {type_expr} comes from models up "
                f"to size {verdict.bound}; the translation has no inverse roles, so a "
                f"consistent type has some finite model, but it may be larger."
            ))
        return verdict

    @staticmethod
    def oo_subtype(schema, sub, sup, budget, app_config=Config):
        """
        Check whether every value of type sub is a value of type sup in
        every legal instance.

        Returns:
            ReasoningVerdict; a witness refutes the subtype relation and comes
            with a legal instance as certificate

        Raises:
            UnknownSymbolError: If a type names an unknown class or attribute
        """
        sub = _resolve_type(schema, sub)
        sup = _resolve_type(schema, sup)
        kb = OOService.translate_psi(schema, close_opaque=True)
        verdict = ModelSearchEngine.subsumption_counterexample(
            kb, OOService.type_concept(sub), OOService.type_concept(sup), budget, app_config
        )
        if verdict.found:
            return verdict.replace(certificate=OOService.beta_oo(schema, verdict.witness))
        return verdict


def _resolve_type(schema, type_expr):
    if not isinstance(type_expr, TypeExpr):
        type_expr = parse_type_expression(type_expr)
    for name in sorted(type_expr.class_names()):
        if name not in schema.class_names:
            raise UnknownSymbolError(name, 'class')
    for name in sorted(type_expr.attribute_names()):
        if name not in schema.attribute_names:
            raise UnknownSymbolError(name, 'attribute')
    return type_expr


def _structure_graph(interp):
    """Record and set individuals that are not objects, with their non-value edges"""
    structural = (
        interp.concepts.get(REC_TYPE, frozenset()) | interp.concepts.get(SET_TYPE, frozenset())
    ) - interp.concepts.get(ABSTRACT_CLASS, frozenset())
    edges = defaultdict(list)
    for name, pairs in interp.roles.items():
        if name == VALUE_ROLE:
            continue
        for source, target in pairs:
            if source in structural and target in structural:
                edges[source].append((name, target))
    for source in edges:
        edges[source].sort()
    return structural, edges


def _cyclic_nodes(nodes, edges):
    """Nodes lying on some cycle: members of strongly connected components of
    size above one, or carrying a self-loop"""
    index = {}
    low = {}
    on_stack = set()
    stack = []
    cyclic = set()
    counter = [0]

    def connect(v):
        # Iterative Tarjan
        work = [(v, iter(edges[v]))]
        index[v] = low[v] = counter[0]
        counter[0] += 1
        stack.append(v)
        on_stack.add(v)
        while work:
            node, successors = work[-1]
            advanced = False
            for _, w in successors:
                if w not in index:
                    index[w] = low[w] = counter[0]
                    counter[0] += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(edges[w])))
                    advanced = True
                    break
                if w in on_stack:
                    low[node] = min(low[node], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[node])
            if low[node] == index[node]:
                component = []
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    component.append(w)
                    if w == node:
                        break
                if len(component) > 1 or any(t == node for _, t in edges[node]):
                    cyclic.update(component)

    for v in sorted(nodes):
        if v not in index:
            connect(v)
    return frozenset(cyclic)


def _unique_names(interp, individuals):
    seen = defaultdict(int)
    for d in individuals:
        seen[interp.label(d)] += 1
    return {
        d: interp.label(d) if seen[interp.label(d)] == 1 else f"{interp.label(d)}@{d}"
        for d in individuals
    }
