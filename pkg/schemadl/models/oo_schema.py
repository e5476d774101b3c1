# File: schemadl/models/oo_schema.py
"""
Object-oriented schema model: class declarations with type expressions,
values built from object identifiers, sets and records, and instances
assigning classes and values to object identifiers.
"""
from dataclasses import dataclass, field
from typing import FrozenSet, Mapping, Optional, Tuple

# Names used by the translation; not available as class or attribute names
ABSTRACT_CLASS = 'AbstractClass'
REC_TYPE = 'RecType'
SET_TYPE = 'SetType'
VALUE_ROLE = 'value'
MEMBER_ROLE = 'member'
RESERVED_NAMES = frozenset([ABSTRACT_CLASS, REC_TYPE, SET_TYPE, VALUE_ROLE, MEMBER_ROLE])


# ==================== TYPE EXPRESSIONS ====================

class TypeExpr:
    """Base class of type expressions"""

    def children(self) -> Tuple['TypeExpr', ...]:
        return ()

    def class_names(self) -> FrozenSet[str]:
        names = frozenset()
        for child in self.children():
            names |= child.class_names()
        return names

    def attribute_names(self) -> FrozenSet[str]:
        names = frozenset()
        for child in self.children():
            names |= child.attribute_names()
        return names

    def __str__(self):
        return self.to_text()


@dataclass(frozen=True)
class ClassRef(TypeExpr):
    name: str

    def class_names(self):
        return frozenset([self.name])

    def to_text(self):
        return self.name


@dataclass(frozen=True)
class UnionType(TypeExpr):
    members: Tuple[TypeExpr, ...]

    def __post_init__(self):
        if len(self.members) < 2:
            raise ValueError("Union needs at least two members")

    def children(self):
        return self.members

    def to_text(self):
        return f"Union {', '.join(m.to_text() for m in self.members)} End"


@dataclass(frozen=True)
class SetOf(TypeExpr):
    element: TypeExpr

    def children(self):
        return (self.element,)

    def to_text(self):
        return f"Set-of {self.element.to_text()}"


@dataclass(frozen=True)
class Record(TypeExpr):
    """Record type; fields are (attribute, type) pairs with distinct attributes"""
    fields: Tuple[Tuple[str, TypeExpr], ...]

    def __post_init__(self):
        if not self.fields:
            raise ValueError("Record needs at least one field")
        labels = [a for a, _ in self.fields]
        if len(set(labels)) != len(labels):
            raise ValueError("Record attributes must be distinct")

    def children(self):
        return tuple(t for _, t in self.fields)

    def attribute_names(self):
        return super().attribute_names() | frozenset(a for a, _ in self.fields)

    def to_text(self):
        inner = ', '.join(f"{a}: {t.to_text()}" for a, t in self.fields)
        return f"Record {inner} End"


# ==================== VALUES ====================

class Value:
    """Base class of values: object identifiers, set values and record values"""

    def sub_values(self) -> Tuple['Value', ...]:
        return ()

    def sort_key(self):
        return self.to_text()

    def __str__(self):
        return self.to_text()


@dataclass(frozen=True)
class Oid(Value):
    name: str

    def to_text(self):
        return self.name

    def to_json(self):
        return {'oid': self.name}


@dataclass(frozen=True)
class SetVal(Value):
    items: FrozenSet[Value] = frozenset()

    def __post_init__(self):
        object.__setattr__(self, 'items', frozenset(self.items))

    def sub_values(self):
        return tuple(sorted(self.items, key=Value.sort_key))

    def to_text(self):
        return '{' + ', '.join(v.to_text() for v in self.sub_values()) + '}'

    def to_json(self):
        return {'set': [v.to_json() for v in self.sub_values()]}


@dataclass(frozen=True)
class RecVal(Value):
    """Record value stored as (attribute, value) pairs sorted by attribute"""
    fields: Tuple[Tuple[str, Value], ...] = ()

    @classmethod
    def of(cls, mapping: Mapping[str, Value]):
        return cls(tuple(sorted(mapping.items(), key=lambda item: item[0])))

    def get(self, attribute) -> Optional[Value]:
        for label, value in self.fields:
            if label == attribute:
                return value
        return None

    def sub_values(self):
        return tuple(v for _, v in self.fields)

    def to_text(self):
        return '[' + ', '.join(f"{a}: {v.to_text()}" for a, v in self.fields) + ']'

    def to_json(self):
        return {'rec': {a: v.to_json() for a, v in self.fields}}


# ==================== SCHEMAS AND INSTANCES ====================

@dataclass(frozen=True)
class ClassDecl:
    """
    Class C is-a C1, ..., Ck type-is T

    Attributes:
        name: Declared class
        supers: Direct super classes
        type: Type of the values of C's instances
    """
    name: str
    supers: Tuple[str, ...]
    type: TypeExpr

    def to_text(self):
        parts = [f"Class {self.name}"]
        if self.supers:
            parts.append(f"is-a {', '.join(self.supers)}")
        parts.append(f"type-is {self.type.to_text()}")
        return ' '.join(parts)


@dataclass(frozen=True)
class OOSchema:
    """
    An object-oriented schema.

    Attributes:
        decls: Declarations in file order, at most one per class
        class_names: Declared classes plus classes only referenced
        attribute_names: Every record attribute used
    """
    decls: Tuple[ClassDecl, ...] = ()
    class_names: FrozenSet[str] = frozenset()
    attribute_names: FrozenSet[str] = frozenset()

    @property
    def declared(self) -> FrozenSet[str]:
        return frozenset(d.name for d in self.decls)

    @property
    def opaque_classes(self) -> FrozenSet[str]:
        """Referenced classes without a declaration"""
        return self.class_names - self.declared

    def declaration(self, name) -> Optional[ClassDecl]:
        for decl in self.decls:
            if decl.name == name:
                return decl
        return None

    def __repr__(self):
        return f"<OOSchema declarations={len(self.decls)} opaque={len(self.opaque_classes)}>"


@dataclass(frozen=True)
class OOInstance:
    """
    An instance of an object-oriented schema.

    Attributes:
        oids: Object identifiers
        pi: Class -> object identifiers
        rho: Object identifier -> value
    """
    oids: FrozenSet[str] = frozenset()
    pi: Mapping[str, FrozenSet[str]] = field(default_factory=dict)
    rho: Mapping[str, Value] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, 'oids', frozenset(self.oids))
        object.__setattr__(self, 'pi', {k: frozenset(v) for k, v in self.pi.items()})
        object.__setattr__(self, 'rho', dict(self.rho))

    def extension(self, class_name) -> FrozenSet[str]:
        return self.pi.get(class_name, frozenset())

    def active_values(self) -> FrozenSet[Value]:
        """Object identifiers plus every value reachable inside a ρ image"""
        seen = {Oid(o) for o in self.oids}
        frontier = list(self.rho.values())
        while frontier:
            value = frontier.pop()
            if value in seen:
                continue
            seen.add(value)
            frontier.extend(value.sub_values())
        return frozenset(seen)

    def to_dict(self):
        return {
            'oids': sorted(self.oids),
            'pi': {name: sorted(ext) for name, ext in sorted(self.pi.items())},
            'rho': {oid: value.to_json() for oid, value in sorted(self.rho.items())}
        }

    def __repr__(self):
        return f"<OOInstance oids={len(self.oids)}>"


@dataclass(frozen=True)
class BadCycle:
    """
    A cycle through record and set individuals whose edges avoid `value`.

    Attributes:
        individuals: Individuals on the cycle, starting from the least
        edges: (source, role, target) triples in cycle order
    """
    individuals: Tuple[int, ...]
    edges: Tuple[Tuple[int, str, int], ...]

    def to_dict(self):
        return {
            'individuals': list(self.individuals),
            'edges': [list(edge) for edge in self.edges]
        }
