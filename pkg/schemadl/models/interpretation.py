# File: schemadl/models/interpretation.py
"""
Finite interpretations: a domain 0..n-1 with an extension for every atomic
concept and atomic role of a signature.
"""
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, Mapping, Optional, Tuple

from schemadl.models.concept import RoleExpr


@dataclass(frozen=True)
class Interpretation:
    """
    A finite interpretation.

    Attributes:
        size: Number of individuals; the domain is range(size)
        concepts: Atomic concept name -> set of individuals
        roles: Atomic role name -> set of (individual, individual) pairs
        labels: Optional readable name per individual (used by the
            ER/OO mappings to keep track of where individuals came from)
    """
    size: int
    concepts: Mapping[str, FrozenSet[int]] = field(default_factory=dict)
    roles: Mapping[str, FrozenSet[Tuple[int, int]]] = field(default_factory=dict)
    labels: Optional[Tuple[str, ...]] = None

    def __post_init__(self):
        if self.size < 0:
            raise ValueError("domain size must be nonnegative")
        concepts = {name: frozenset(ext) for name, ext in self.concepts.items()}
        roles = {name: frozenset((a, b) for a, b in ext) for name, ext in self.roles.items()}
        for name, ext in concepts.items():
            if any(not 0 <= d < self.size for d in ext):
                raise ValueError(f"extension of concept '{name}' leaves the domain")
        for name, ext in roles.items():
            if any(not (0 <= a < self.size and 0 <= b < self.size) for a, b in ext):
                raise ValueError(f"extension of role '{name}' leaves the domain")
        if self.labels is not None and len(self.labels) != self.size:
            raise ValueError("one label per individual is required")
        object.__setattr__(self, 'concepts', concepts)
        object.__setattr__(self, 'roles', roles)
        if self.labels is not None:
            object.__setattr__(self, 'labels', tuple(self.labels))

    @classmethod
    def over(cls, size, concept_names: Iterable[str], role_names: Iterable[str],
             concepts=None, roles=None, labels=None):
        """Build an interpretation with an entry (possibly empty) for every symbol"""
        concepts = dict(concepts or {})
        roles = dict(roles or {})
        for name in concept_names:
            concepts.setdefault(name, frozenset())
        for name in role_names:
            roles.setdefault(name, frozenset())
        return cls(size, concepts, roles, labels)

    @property
    def domain(self):
        return range(self.size)

    def label(self, individual):
        if self.labels is None:
            return str(individual)
        return self.labels[individual]

    def concept(self, name) -> FrozenSet[int]:
        return self.concepts[name]

    def role(self, name) -> FrozenSet[Tuple[int, int]]:
        return self.roles[name]

    @cached_property
    def _adjacency(self) -> Dict[RoleExpr, Tuple[FrozenSet[int], ...]]:
        table = {}
        for name, pairs in self.roles.items():
            forward = [set() for _ in range(self.size)]
            backward = [set() for _ in range(self.size)]
            for a, b in pairs:
                forward[a].add(b)
                backward[b].add(a)
            table[RoleExpr(name)] = tuple(frozenset(s) for s in forward)
            table[RoleExpr(name, True)] = tuple(frozenset(s) for s in backward)
        return table

    def successors(self, role: RoleExpr, individual) -> FrozenSet[int]:
        """R-successors of an individual; for P⁻ these are the P-predecessors"""
        return self._adjacency[role][individual]

    def has_role(self, name):
        return name in self.roles

    def with_labels(self, labels):
        return Interpretation(self.size, self.concepts, self.roles, tuple(labels))

    def to_dict(self):
        rv = {
            'domain': self.size,
            'concepts': {name: sorted(ext) for name, ext in sorted(self.concepts.items())},
            'roles': {name: sorted([a, b] for a, b in ext) for name, ext in sorted(self.roles.items())}
        }
        if self.labels is not None:
            rv['labels'] = list(self.labels)
        return rv

    def __repr__(self):
        return (
            f"<Interpretation size={self.size} concepts={len(self.concepts)} "
            f"roles={len(self.roles)}>"
        )
