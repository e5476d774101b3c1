# File: schemadl/parsers/er_parser.py
"""
Parser and renderer for .ers Entity-Relationship schemas.

    domain D{, D};
    entity E [isa E1{, Ek}] [attrs A1:D1{, Ak:Dk}];
    relationship R (U1:E1{, Uk:Ek});
    card E in R.U min..max;        # max may be * (unbounded)
"""
import logging

from schemadl.exceptions import SchemaValidationError
from schemadl.models.er_schema import Cardinality, ERSchema
from schemadl.parsers.lexer import BaseParser, KEYWORD, Lexer, PUNCT

logger = logging.getLogger(__name__)

ER_KEYWORDS = ('domain', 'entity', 'isa', 'attrs', 'relationship', 'card', 'in')
ER_PUNCTUATION = (';', ',', ':', '(', ')', '..', '.', '*')

_LEXER = Lexer(ER_KEYWORDS, ER_PUNCTUATION, source='ers')


class ERParser(BaseParser):
    """Recursive-descent parser for .ers text"""

    source = 'ers'

    def __init__(self, text):
        super().__init__(_LEXER.tokenize(text))
        self.domains = []
        self.entities = []
        self.isa = []
        self.att = {}
        self.rel = {}
        self.card = {}

    def parse(self):
        while not self.at_eof():
            token = self.peek()
            if self.match(KEYWORD, 'domain'):
                self.domains.append(self.expect_name('a domain name').value)
                while self.match(PUNCT, ','):
                    self.domains.append(self.expect_name('a domain name').value)
            elif self.match(KEYWORD, 'entity'):
                self._entity()
            elif self.match(KEYWORD, 'relationship'):
                self._relationship()
            elif self.match(KEYWORD, 'card'):
                self._card(token)
            else:
                self.error(f"expected domain, entity, relationship or card, found {token.describe()}")
            self.expect_punct(';')
        return self

    def _entity(self):
        name = self.expect_name('an entity name')
        if name.value in self.entities:
            self.error(f"entity '{name.value}' declared twice", name)
        self.entities.append(name.value)
        if self.match(KEYWORD, 'isa'):
            self.isa.append((name.value, self.expect_name('an entity name').value))
            while self.match(PUNCT, ','):
                self.isa.append((name.value, self.expect_name('an entity name').value))
        if self.match(KEYWORD, 'attrs'):
            pairs = [self._typed_pair('an attribute')]
            while self.match(PUNCT, ','):
                pairs.append(self._typed_pair('an attribute'))
            attributes = [a for a, _ in pairs]
            if len(set(attributes)) != len(attributes):
                self.error(f"entity '{name.value}' lists an attribute twice", name)
            self.att[name.value] = tuple(pairs)

    def _relationship(self):
        name = self.expect_name('a relationship name')
        if name.value in self.rel:
            self.error(f"relationship '{name.value}' declared twice", name)
        self.expect_punct('(')
        pairs = [self._typed_pair('a role')]
        while self.match(PUNCT, ','):
            pairs.append(self._typed_pair('a role'))
        self.expect_punct(')')
        roles = [u for u, _ in pairs]
        if len(set(roles)) != len(roles):
            self.error(f"relationship '{name.value}' lists a role twice", name)
        self.rel[name.value] = tuple(pairs)

    def _card(self, start):
        entity = self.expect_name('an entity name').value
        self.expect_keyword('in')
        relationship = self.expect_name('a relationship name').value
        self.expect_punct('.')
        role = self.expect_name('a role name').value
        low = self.expect_int('a minimum cardinality')
        self.expect_punct('..')
        if self.match(PUNCT, '*'):
            high = None
        else:
            high = self.expect_int('a maximum cardinality or *')
        if high is not None and low > high:
            self.error(f"minimum {low} exceeds maximum {high}", start)
        key = (entity, relationship, role)
        if key in self.card:
            self.error(f"cardinality for {entity} in {relationship}.{role} given twice", start)
        self.card[key] = (Cardinality(low, high), start)

    def _typed_pair(self, what):
        label = self.expect_name(what).value
        self.expect_punct(':')
        target = self.expect_name('a type name').value
        return label, target


def parse_er(text):
    """
    Parse and validate an ER schema.

    Validation rules:
    1. Entity, domain, attribute, role and relationship names are disjoint
    2. Every isa target and primary entity is a declared entity
    3. Each role belongs to exactly one relationship
    4. card(E, R, U) requires U to be a role of R and E ≼* primary entity of U

    Raises:
        KBSyntaxError: On grammar errors
        SchemaValidationError: When a rule is violated
    """
    parser = ERParser(text).parse()
    entities = tuple(parser.entities)
    declared = set(entities)

    for sub, sup in parser.isa:
        if sup not in declared:
            raise SchemaValidationError(
                f"Entity '{sub}' is-a undeclared entity '{sup}'",
                {'entity': sub, 'reference': sup}
            )

    domains = set(parser.domains)
    for pairs in parser.att.values():
        domains |= {d for _, d in pairs}

    owner = {}
    for relationship, pairs in parser.rel.items():
        for role, entity in pairs:
            if role in owner:
                raise SchemaValidationError(
                    f"Role '{role}' is used by both '{owner[role]}' and '{relationship}'",
                    {'role': role, 'relationships': [owner[role], relationship]}
                )
            owner[role] = relationship
            if entity not in declared:
                raise SchemaValidationError(
                    f"Role '{role}' of '{relationship}' refers to undeclared entity '{entity}'",
                    {'relationship': relationship, 'role': role, 'entity': entity}
                )

    _check_partition({
        'entity': declared,
        'domain': domains,
        'attribute': {a for pairs in parser.att.values() for a, _ in pairs},
        'role': set(owner),
        'relationship': set(parser.rel)
    })

    schema = ERSchema(
        entities=entities,
        domains=frozenset(domains),
        isa=frozenset(parser.isa),
        att=dict(parser.att),
        rel=dict(parser.rel)
    )

    card = {}
    for (entity, relationship, role), (bounds, token) in parser.card.items():
        if entity not in declared:
            raise SchemaValidationError(
                f"line {token.line}: cardinality for undeclared entity '{entity}'",
                {'entity': entity}
            )
        if relationship not in schema.rel or role not in schema.roles_of(relationship):
            raise SchemaValidationError(
                f"line {token.line}: '{role}' is not a role of relationship '{relationship}'",
                {'relationship': relationship, 'role': role}
            )
        primary = schema.primary_entity(relationship, role)
        if not schema.is_sub_entity(entity, primary):
            raise SchemaValidationError(
                f"line {token.line}: cardinality for '{entity}' in {relationship}.{role}, "
                f"but '{entity}' is not a sub-entity of the primary entity '{primary}'",
                {'entity': entity, 'relationship': relationship, 'role': role, 'primary': primary}
            )
        card[(entity, relationship, role)] = bounds

    schema = ERSchema(schema.entities, schema.domains, schema.isa, schema.att, schema.rel, card)
    logger.debug("Parsed ER schema: %r", schema)
    return schema


def _check_partition(groups):
    kinds = sorted(groups)
    for i, first in enumerate(kinds):
        for second in kinds[i + 1:]:
            clash = groups[first] & groups[second]
            if clash:
                name = sorted(clash)[0]
                raise SchemaValidationError(
                    f"Name '{name}' is used both as {first} and as {second}",
                    {'name': name, 'kinds': [first, second]}
                )


def render_er(schema):
    """Write an ER schema back to .ers text"""
    lines = []
    if schema.domains:
        lines.append(f"domain {', '.join(sorted(schema.domains))};")
    for entity in schema.entities:
        parts = [f"entity {entity}"]
        parents = sorted(sup for sub, sup in schema.isa if sub == entity)
        if parents:
            parts.append(f"isa {', '.join(parents)}")
        attributes = schema.attributes_of(entity)
        if attributes:
            parts.append("attrs " + ', '.join(f"{a}:{d}" for a, d in attributes))
        lines.append(' '.join(parts) + ';')
    for relationship, pairs in schema.rel.items():
        roles = ', '.join(f"{u}:{e}" for u, e in pairs)
        lines.append(f"relationship {relationship} ({roles});")
    for (entity, relationship, role), bounds in sorted(schema.card.items()):
        lines.append(f"card {entity} in {relationship}.{role} {bounds.to_text()};")
    return '\n'.join(lines) + '\n'


__all__ = ['parse_er', 'render_er', 'ERParser']
