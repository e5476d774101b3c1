# File: schemadl/services/er_service.py
"""
Service layer for Entity-Relationship schemas.

Translates schemas to knowledge bases, checks database states, maps states
to interpretations and back, and answers satisfiability and inheritance
questions through the finite-model finder and the cardinality analyzer.
"""
import logging
from collections import defaultdict

from schemadl.config import Config
from schemadl.exceptions import (
    ConflictEliminationError,
    PreconditionError,
    RepairLimitExceededError,
    SignatureMismatchError,
    UnknownSymbolError
)
from schemadl.models.concept import (
    Atomic, Forall, NegAtomic, RoleExpr, at_least, at_most, conjunction, exactly
)
from schemadl.models.er_schema import (
    ConflictSet, DatabaseState, LabeledTuple, basic_value, value_domain
)
from schemadl.models.interpretation import Interpretation
from schemadl.models.knowledge_base import InclusionAssertion, KnowledgeBase
from schemadl.models.report import CheckReport, Violation
from schemadl.models.verdict import FactKind, Outcome
from schemadl.services.cardinality_analyzer import CardinalityAnalyzer
from schemadl.services.evaluation_service import EvaluationService
from schemadl.services.search_engine import ModelSearchEngine

logger = logging.getLogger(__name__)


class ERService:
    """Service for ER schema translation, database states and reasoning"""

    # ==================== TRANSLATION ====================

    @staticmethod
    def translate_phi(schema, elide_disjointness=False):
        """
        Translate an ER schema into a knowledge base.

        Every entity, relationship and domain becomes an atomic concept;
        every attribute and role becomes an atomic role. Assertions:
        1. E1 ⊑ E2 per is-a pair
        2. E ⊑ ∀A.D ⊓ ∃=1 A per attribute of E
        3. R ⊑ ∀U.E ⊓ ∃=1 U per role of R
        4. E ⊑ ∀U⁻.R per role U of R with primary entity E
        5. E ⊑ ∃≥m U⁻ for a stated minimum m > 0
        6. E ⊑ ∃≤n U⁻ for a stated finite maximum n
        7. X1 ⊑ ¬X2 for relationships and domains X1 and any other X2

        Args:
            schema: ERSchema
            elide_disjointness: Leave out group 7 (display form only; the
                result is not equivalent to the schema)

        Returns:
            KnowledgeBase
        """
        assertions = []
        for sub, sup in sorted(schema.isa):
            assertions.append(InclusionAssertion(sub, Atomic(sup)))

        for entity in schema.entities:
            parts = []
            for attribute, domain in schema.attributes_of(entity):
                role = RoleExpr(attribute)
                parts.append(Forall(role, Atomic(domain)))
                parts.append(exactly(1, role))
            if parts:
                assertions.append(InclusionAssertion(entity, conjunction(*parts)))

        for relationship, pairs in schema.rel.items():
            parts = []
            for role_name, entity in pairs:
                role = RoleExpr(role_name)
                parts.append(Forall(role, Atomic(entity)))
                parts.append(exactly(1, role))
            assertions.append(InclusionAssertion(relationship, conjunction(*parts)))
            for role_name, entity in pairs:
                assertions.append(InclusionAssertion(
                    entity, Forall(RoleExpr(role_name, True), Atomic(relationship))
                ))

        for (entity, _, role_name), bounds in sorted(schema.card.items()):
            inverse = RoleExpr(role_name, True)
            if bounds.min > 0:
                assertions.append(InclusionAssertion(entity, at_least(bounds.min, inverse)))
            if bounds.max is not None:
                assertions.append(InclusionAssertion(entity, at_most(bounds.max, inverse)))

        if not elide_disjointness:
            everything = sorted(set(schema.entities) | set(schema.rel) | schema.domains)
            for first in sorted(set(schema.rel) | schema.domains):
                for second in everything:
                    if second != first:
                        assertions.append(InclusionAssertion(first, NegAtomic(second)))

        kb = KnowledgeBase(
            frozenset(schema.entities) | frozenset(schema.rel) | schema.domains,
            schema.attributes | schema.roles,
            tuple(assertions)
        )
        logger.info("Translated ER schema: %r", kb)
        return kb

    # ==================== DATABASE STATES ====================

    @staticmethod
    def check_legal(schema, state):
        """
        Check a database state against its schema.

        Conditions:
        0. The state has at least one individual, and every individual
           mentioned belongs to its domain
        1. E1 ⊑ E2 holds extensionally for every is-a pair
        2. Every instance of E has exactly one value for each attribute of E,
           drawn from the attribute's domain
        3. Every relationship tuple maps each role to an instance of the
           role's primary entity
        4. Every instance of E participates in R via U within card(E, R, U)

        Returns:
            CheckReport

        Raises:
            UnknownSymbolError: If the state names an entity, attribute or
                relationship the schema lacks
            SignatureMismatchError: If a tuple's roles differ from its
                relationship's roles
        """
        _check_state_symbols(schema, state)
        violations = []

        if not state.domain:
            violations.append(Violation('domain', "the state has no individuals"))
        mentioned = set()
        for extension in state.entities.values():
            mentioned |= extension
        for pairs in state.attrs.values():
            mentioned |= {individual for individual, _ in pairs}
        for tuples in state.rels.values():
            for labeled in tuples:
                mentioned |= {filler for _, filler in labeled.assignments}
        for individual in sorted(mentioned - state.domain):
            violations.append(Violation(
                'domain', f"individual {individual} is used but not in the domain", individual
            ))

        for sub, sup in sorted(schema.isa):
            for individual in sorted(state.entity(sub) - state.entity(sup)):
                violations.append(Violation(
                    f"isa {sub} {sup}",
                    f"{individual} is a {sub} but not a {sup}",
                    individual
                ))

        for entity in schema.entities:
            for attribute, domain in schema.attributes_of(entity):
                values = defaultdict(list)
                for individual, value in state.attribute(attribute):
                    values[individual].append(value)
                for individual in sorted(state.entity(entity)):
                    found = values.get(individual, [])
                    if len(found) != 1:
                        violations.append(Violation(
                            f"attribute {entity}.{attribute}",
                            f"{individual} has {len(found)} values for {attribute}, expected exactly one",
                            individual
                        ))
                    elif value_domain(found[0]) != domain:
                        violations.append(Violation(
                            f"attribute {entity}.{attribute}",
                            f"{individual} has {attribute} value {found[0]} outside domain {domain}",
                            individual
                        ))

        for relationship, pairs in schema.rel.items():
            for labeled in sorted(state.relationship(relationship), key=lambda t: t.assignments):
                for role, entity in pairs:
                    filler = labeled[role]
                    if filler not in state.entity(entity):
                        violations.append(Violation(
                            f"relationship {relationship}.{role}",
                            f"tuple {labeled.to_text()} has {role} filler {filler} outside {entity}",
                            labeled.as_dict()
                        ))

        for (entity, relationship, role), bounds in sorted(schema.card.items()):
            counts = defaultdict(int)
            for labeled in state.relationship(relationship):
                counts[labeled[role]] += 1
            for individual in sorted(state.entity(entity)):
                count = counts[individual]
                if not bounds.admits(count):
                    violations.append(Violation(
                        f"card {entity} {relationship}.{role}",
                        f"{individual} participates {count} times, allowed {bounds.to_text()}",
                        individual
                    ))

        report = CheckReport(tuple(violations))
        logger.debug("State check: %d violations", len(report.violations))
        return report

    @staticmethod
    def alpha_er(schema, state):
        """
        Map a database state to an interpretation of the translated schema.

        The domain lists the state's individuals, then the active basic
        values, then one individual per relationship tuple. Extensions copy
        the state's extensions and every tuple individual gets one edge per
        role to its filler.

        Returns:
            Interpretation labelled with individual names, basic values and
            tuple texts
        """
        _check_state_symbols(schema, state)
        labels = sorted(state.domain) + sorted(state.active_domain())
        tuples = []
        for relationship in schema.rel:
            for labeled in sorted(state.relationship(relationship), key=lambda t: t.assignments):
                tuples.append((relationship, labeled))
                labels.append(f"{relationship}{labeled.to_text()}")
        index = {label: d for d, label in enumerate(labels[:len(labels) - len(tuples)])}

        concepts = {
            entity: {index[i] for i in state.entity(entity) if i in index}
            for entity in schema.entities
        }
        for domain in schema.domains:
            concepts[domain] = {
                index[value] for value in state.active_domain() if value_domain(value) == domain
            }
        roles = {
            attribute: {
                (index[i], index[value]) for i, value in state.attribute(attribute) if i in index
            }
            for attribute in schema.attributes
        }
        for relationship in schema.rel:
            concepts[relationship] = set()
        for role in schema.roles:
            roles[role] = set()

        offset = len(labels) - len(tuples)
        for position, (relationship, labeled) in enumerate(tuples):
            individual = offset + position
            concepts[relationship].add(individual)
            for role, filler in labeled.assignments:
                if filler in index:
                    roles[role].add((individual, index[filler]))

        interp = Interpretation(len(labels), concepts, roles, tuple(labels))
        logger.debug("alpha_er: %r", interp)
        return interp

    @staticmethod
    def is_relation_descriptive(schema, interp):
        """
        Check that no two instances of a relationship have the same fillers
        for every role.

        Returns:
            (bool, tuple of ConflictSet)
        """
        conflicts = []
        for relationship in schema.rel:
            conflicts.extend(_conflict_sets(schema, interp, relationship))
        return not conflicts, tuple(conflicts)

    @staticmethod
    def make_relation_descriptive(schema, interp, witness, app_config=Config):
        """
        Turn a finite model into a relation-descriptive one.

        Conf collects, over all relationships, every member of a conflict set
        except its least individual. The result is the disjoint union of
        2^|Conf| copies in which the j-th member of Conf, in copy b, points
        with its relationship's last role to the filler's copy in b xor 2^j.
        Concept extensions and all other edges are copied unchanged.

        Args:
            schema: ERSchema
            interp: Finite model of translate_phi(schema)
            witness: ConceptExpr with a nonempty extension in interp

        Returns:
            Interpretation (interp itself when there is nothing to repair)

        Raises:
            PreconditionError: If interp is not a model or witness is empty
            RepairLimitExceededError: If the copies exceed REPAIR_MAX_DOMAIN
            ConflictEliminationError: If conflicts survive (possible for
                relationships with a single role)
        """
        kb = ERService.translate_phi(schema)
        report = EvaluationService.is_model(kb, interp)
        if not report.ok:
            raise PreconditionError(
                "interpretation is not a model of the translated schema",
                {'violations': report.rules()}
            )
        if not EvaluationService.evaluate_concept(witness, interp):
            raise PreconditionError(
                f"witness {witness} has an empty extension", {'witness': str(witness)}
            )

        _, conflicts = ERService.is_relation_descriptive(schema, interp)
        exchanged = []
        for conflict in conflicts:
            last_role = schema.roles_of(conflict.relationship)[-1]
            exchanged.extend((member, last_role) for member in conflict.members[1:])
        if not exchanged:
            return interp

        copies = 2 ** len(exchanged)
        size = interp.size * copies
        involved = sorted({conflict.relationship for conflict in conflicts})
        if size > app_config.REPAIR_MAX_DOMAIN:
            raise RepairLimitExceededError(
                ', '.join(involved), len(exchanged), size, app_config.REPAIR_MAX_DOMAIN
            )

        n = interp.size
        flips = {}
        for j, (member, role) in enumerate(exchanged):
            flips[(member, role)] = 1 << j

        concepts = {
            name: {b * n + d for b in range(copies) for d in ext}
            for name, ext in interp.concepts.items()
        }
        roles = {}
        for name, ext in interp.roles.items():
            pairs = set()
            for source, target in ext:
                flip = flips.get((source, name), 0)
                for b in range(copies):
                    pairs.add((b * n + source, (b ^ flip) * n + target))
            roles[name] = pairs
        labels = [interp.label(d) for d in range(n)]
        labels += [f"{label}~{b}" for b in range(1, copies) for label in labels[:n]]

        repaired = Interpretation(size, concepts, roles, tuple(labels))
        for relationship in involved:
            remaining = _conflict_sets(schema, repaired, relationship)
            if remaining:
                raise ConflictEliminationError(relationship, len(remaining))
        logger.info(
            "Eliminated %d conflicts in %s with %d copies (%d individuals)",
            len(exchanged), ', '.join(involved), copies, size
        )
        return repaired

    @staticmethod
    def beta_er(schema, interp, strict=False):
        """
        Map a finite relation-descriptive interpretation to a database state.

        Individuals outside every relationship and domain concept become the
        state's individuals, named by their labels. Instances of a domain D
        become D#0, D#1, ... in index order. Each relationship instance
        becomes the tuple of its role fillers.

        On interpretations that are not models a relationship instance may
        have several fillers for a role (the least one is used) or none (the
        tuple is skipped, or PreconditionError raised when strict).

        Returns:
            DatabaseState
        """
        relationship_individuals = set()
        for relationship in schema.rel:
            relationship_individuals |= _extension(interp, relationship)
        values = {}
        for domain in sorted(schema.domains):
            for rank, d in enumerate(sorted(_extension(interp, domain))):
                if d in values:
                    logger.warning("Individual %s is in two domains, kept %s", d, values[d])
                    continue
                values[d] = basic_value(domain, rank)
        individuals = [
            d for d in interp.domain
            if d not in relationship_individuals and d not in values
        ]
        names = _unique_names(interp, individuals)

        def image(d):
            if d in names:
                return names[d]
            if d in values:
                return values[d]
            return interp.label(d)

        entities = {
            entity: {names[d] for d in _extension(interp, entity) if d in names}
            for entity in schema.entities
        }
        attrs = {}
        for attribute in sorted(schema.attributes):
            pairs = interp.roles.get(attribute, frozenset())
            attrs[attribute] = {(names[a], image(b)) for a, b in pairs if a in names}

        rels = {}
        for relationship in schema.rel:
            tuples = set()
            for r in sorted(_extension(interp, relationship)):
                mapping = {}
                for role in schema.roles_of(relationship):
                    fillers = interp.successors(RoleExpr(role), r) if interp.has_role(role) else frozenset()
                    if not fillers:
                        message = f"{relationship} individual {interp.label(r)} has no {role} filler"
                        if strict:
                            raise PreconditionError(message, {'relationship': relationship, 'role': role})
                        logger.warning("%s, tuple skipped", message)
                        mapping = None
                        break
                    if len(fillers) > 1:
                        logger.warning(
                            "%s individual %s has %d %s fillers, using the least",
                            relationship, interp.label(r), len(fillers), role
                        )
                    mapping[role] = image(min(fillers))
                if mapping is not None:
                    tuples.add(LabeledTuple.of(mapping))
            rels[relationship] = tuples

        descriptive, conflicts = ERService.is_relation_descriptive(schema, interp)
        if not descriptive:
            logger.warning("beta_er input has %d conflict sets; tuples were merged", len(conflicts))

        state = DatabaseState(frozenset(names.values()), entities, attrs, rels)
        logger.debug("beta_er: %r", state)
        return state

    # ==================== REASONING ====================

    @staticmethod
    def er_entity_satisfiable(schema, entity, budget, app_config=Config):
        """
        Check whether some legal database state populates an entity.

        Returns:
            ReasoningVerdict; a witness comes with a legal DatabaseState as
            its certificate

        Raises:
            UnknownSymbolError: If the entity is not declared
        """
        if entity not in schema.entities:
            raise UnknownSymbolError(entity, 'entity')
        return _satisfiable(schema, entity, 'Entity', budget, app_config)

    @staticmethod
    def er_relationship_satisfiable(schema, relationship, budget, app_config=Config):
        """
        Check whether some legal database state has a tuple in a relationship.

        Raises:
            UnknownSymbolError: If the relationship is not declared
        """
        if relationship not in schema.rel:
            raise UnknownSymbolError(relationship, 'relationship')
        return _satisfiable(schema, relationship, 'Relationship', budget, app_config)

    @staticmethod
    def er_inherits(schema, sub, sup, budget, app_config=Config):
        """
        Check whether every instance of sub is an instance of sup in every
        legal database state.

        The analyzer gives sound positive answers (attached as facts); the
        search looks for a counterexample, which refutes inheritance and
        comes with a legal state as certificate.

        Raises:
            UnknownSymbolError: If either entity is not declared
        """
        for entity in (sub, sup):
            if entity not in schema.entities:
                raise UnknownSymbolError(entity, 'entity')

        kb = ERService.translate_phi(schema)
        facts = tuple(
            fact for fact in CardinalityAnalyzer.analyze_cardinalities(kb)
            if (fact.kind in (FactKind.SUBSET, FactKind.FINITE_SUBSUMPTION)
                and fact.subject == sub and fact.object == sup)
            or (fact.kind == FactKind.FINITE_INCONSISTENT and fact.subject == sub)
        )
        verdict = ModelSearchEngine.subsumption_counterexample(
            kb, Atomic(sub), Atomic(sup), budget, app_config
        )

        certificate = None
        if verdict.found:
            certificate = _certificate(schema, verdict.witness, Atomic(sub), app_config)
            caveat = (
                f"Refuted: a legal state of size {verdict.bound} has a {sub} that is "
                f"not a {sup}."
            )
        elif facts:
            caveat = (
                f"Proved: {sub} inherits from {sup} in every legal database state "
                f"({facts[0]})."
            )
        elif verdict.outcome == Outcome.NO_MODEL_UP_TO:
            caveat = (
                f"Not refuted in states up to size {verdict.bound}, and not proved: "
                f"a larger legal state may still separate {sub} from {sup}."
            )
        else:
            caveat = verdict.caveat
        return verdict.replace(facts=facts, caveat=caveat, certificate=certificate)


def _satisfiable(schema, name, kind, budget, app_config):
    kb = ERService.translate_phi(schema)
    goal = Atomic(name)
    verdict = ModelSearchEngine.find_model(kb, goal, budget, app_config)
    if verdict.found:
        return verdict.replace(
            certificate=_certificate(schema, verdict.witness, goal, app_config),
            caveat=f"{kind} {name} is populated in a legal database state built from a model of size {verdict.bound}."
        )
    if verdict.outcome == Outcome.NO_MODEL_UP_TO:
        return verdict.replace(caveat=(
            f"No legal database state populates {name} within models up to size "
            f"{verdict.bound}; database states are finite, so a larger state may still exist."
        ))
    return verdict


def _certificate(schema, witness, goal, app_config):
    try:
        repaired = ERService.make_relation_descriptive(schema, witness, goal, app_config)
    except (RepairLimitExceededError, ConflictEliminationError) as e:
        logger.warning("No certificate: %s", e.message)
        return None
    return ERService.beta_er(schema, repaired)


def _extension(interp, name):
    return interp.concepts.get(name, frozenset())


def _conflict_sets(schema, interp, relationship):
    roles = [RoleExpr(role) for role in schema.roles_of(relationship)]
    groups = defaultdict(list)
    for r in sorted(_extension(interp, relationship)):
        profile = tuple(
            interp.successors(role, r) if interp.has_role(role.base) else frozenset()
            for role in roles
        )
        groups[profile].append(r)
    conflicts = [
        ConflictSet(relationship, profile, tuple(members))
        for profile, members in groups.items() if len(members) > 1
    ]
    return sorted(conflicts, key=lambda c: c.members)


def _unique_names(interp, individuals):
    seen = defaultdict(int)
    for d in individuals:
        seen[interp.label(d)] += 1
    return {
        d: interp.label(d) if seen[interp.label(d)] == 1 else f"{interp.label(d)}@{d}"
        for d in individuals
    }


def _check_state_symbols(schema, state):
    for name in sorted(state.entities):
        if name not in schema.entities:
            raise UnknownSymbolError(name, 'entity')
    for name in sorted(state.attrs):
        if name not in schema.attributes:
            raise UnknownSymbolError(name, 'attribute')
    for name in sorted(state.rels):
        if name not in schema.rel:
            raise UnknownSymbolError(name, 'relationship')
        expected = set(schema.roles_of(name))
        for labeled in state.rels[name]:
            if labeled.roles() != expected:
                raise SignatureMismatchError(
                    missing=expected - labeled.roles(), extra=labeled.roles() - expected
                )
