# File: schemadl/models/er_schema.py
"""
Entity-Relationship schema and database state models.
"""
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Mapping, Optional, Tuple

# Basic domain values are written "<domain>#<index>"
VALUE_SEPARATOR = '#'


def basic_value(domain, index):
    return f"{domain}{VALUE_SEPARATOR}{index}"


def value_domain(value):
    """Domain tag of a basic value, or None if the string is not one"""
    domain, sep, index = value.rpartition(VALUE_SEPARATOR)
    if not sep or not domain or not index.isdigit():
        return None
    return domain


@dataclass(frozen=True)
class Cardinality:
    """
    Participation bounds of an entity in a relationship via a role.

    Attributes:
        min: Minimum number of participations (0 when unstated)
        max: Maximum, or None for no upper bound
    """
    min: int = 0
    max: Optional[int] = None

    def admits(self, count):
        return count >= self.min and (self.max is None or count <= self.max)

    def to_text(self):
        upper = '*' if self.max is None else str(self.max)
        return f"{self.min}..{upper}"


UNBOUNDED = Cardinality()


@dataclass(frozen=True)
class ERSchema:
    """
    An ER schema.

    Attributes:
        entities: Entity names, in declaration order
        domains: Basic domain names
        isa: Pairs (E1, E2) meaning E1 is-a E2
        att: Entity -> ((attribute, domain), ...)
        rel: Relationship -> ((role, primary entity), ...), in declaration order
        card: (entity, relationship, role) -> Cardinality, for stated constraints
    """
    entities: Tuple[str, ...] = ()
    domains: FrozenSet[str] = frozenset()
    isa: FrozenSet[Tuple[str, str]] = frozenset()
    att: Mapping[str, Tuple[Tuple[str, str], ...]] = field(default_factory=dict)
    rel: Mapping[str, Tuple[Tuple[str, str], ...]] = field(default_factory=dict)
    card: Mapping[Tuple[str, str, str], Cardinality] = field(default_factory=dict)

    @property
    def relationships(self):
        return tuple(self.rel)

    @property
    def attributes(self) -> FrozenSet[str]:
        return frozenset(a for pairs in self.att.values() for a, _ in pairs)

    @property
    def roles(self) -> FrozenSet[str]:
        return frozenset(u for pairs in self.rel.values() for u, _ in pairs)

    def roles_of(self, relationship):
        return tuple(u for u, _ in self.rel[relationship])

    def role_owner(self, role):
        for relationship, pairs in self.rel.items():
            if any(u == role for u, _ in pairs):
                return relationship
        return None

    def primary_entity(self, relationship, role):
        return dict(self.rel[relationship])[role]

    def ancestors(self, entity) -> FrozenSet[str]:
        """Entities E' with entity ≼* E' (reflexive and transitive)"""
        seen = {entity}
        frontier = [entity]
        while frontier:
            current = frontier.pop()
            for sub, sup in self.isa:
                if sub == current and sup not in seen:
                    seen.add(sup)
                    frontier.append(sup)
        return frozenset(seen)

    def is_sub_entity(self, entity, ancestor):
        return ancestor in self.ancestors(entity)

    def cardinality(self, entity, relationship, role):
        return self.card.get((entity, relationship, role), UNBOUNDED)

    def attributes_of(self, entity):
        return self.att.get(entity, ())

    def __repr__(self):
        return f"<ERSchema entities={len(self.entities)} relationships={len(self.rel)}>"


@dataclass(frozen=True)
class LabeledTuple:
    """
    A relationship tuple: a total map from the relationship's roles to
    individuals, stored as sorted (role, individual) pairs.
    """
    assignments: Tuple[Tuple[str, str], ...]

    @classmethod
    def of(cls, mapping: Mapping[str, str]):
        return cls(tuple(sorted(mapping.items())))

    def __getitem__(self, role):
        for key, value in self.assignments:
            if key == role:
                return value
        raise KeyError(role)

    def roles(self):
        return frozenset(key for key, _ in self.assignments)

    def as_dict(self) -> Dict[str, str]:
        return dict(self.assignments)

    def to_text(self):
        inner = ', '.join(f"{role}:{ind}" for role, ind in self.assignments)
        return f"[{inner}]"


@dataclass(frozen=True)
class DatabaseState:
    """
    A finite database state.

    Attributes:
        domain: Individuals (disjoint from basic domain values)
        entities: Entity -> individuals
        attrs: Attribute -> (individual, basic value) pairs
        rels: Relationship -> labeled tuples
    """
    domain: FrozenSet[str] = frozenset()
    entities: Mapping[str, FrozenSet[str]] = field(default_factory=dict)
    attrs: Mapping[str, FrozenSet[Tuple[str, str]]] = field(default_factory=dict)
    rels: Mapping[str, FrozenSet[LabeledTuple]] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, 'domain', frozenset(self.domain))
        object.__setattr__(self, 'entities', {k: frozenset(v) for k, v in self.entities.items()})
        object.__setattr__(self, 'attrs', {k: frozenset(tuple(p) for p in v) for k, v in self.attrs.items()})
        object.__setattr__(self, 'rels', {k: frozenset(v) for k, v in self.rels.items()})

    def entity(self, name):
        return self.entities.get(name, frozenset())

    def attribute(self, name):
        return self.attrs.get(name, frozenset())

    def relationship(self, name):
        return self.rels.get(name, frozenset())

    def active_domain(self) -> FrozenSet[str]:
        """Basic values used by some attribute"""
        return frozenset(value for pairs in self.attrs.values() for _, value in pairs)

    def to_dict(self):
        return {
            'domain': sorted(self.domain),
            'entities': {name: sorted(ext) for name, ext in sorted(self.entities.items())},
            'attrs': {
                name: sorted([ind, value] for ind, value in pairs)
                for name, pairs in sorted(self.attrs.items())
            },
            'rels': {
                name: [t.as_dict() for t in sorted(tuples, key=lambda t: t.assignments)]
                for name, tuples in sorted(self.rels.items())
            }
        }

    def __repr__(self):
        return f"<DatabaseState individuals={len(self.domain)}>"


@dataclass(frozen=True)
class ConflictSet:
    """
    Relationship individuals that agree on every role filler.

    Attributes:
        relationship: Relationship name
        profile: Filler set per role, in the relationship's role order
        members: Conflicting individuals, ascending
    """
    relationship: str
    profile: Tuple[FrozenSet[int], ...]
    members: Tuple[int, ...]

    def to_dict(self):
        return {
            'relationship': self.relationship,
            'profile': [sorted(fillers) for fillers in self.profile],
            'members': list(self.members)
        }
