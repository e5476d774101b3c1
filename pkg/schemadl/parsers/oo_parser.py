# File: schemadl/parsers/oo_parser.py
"""
Parser and renderer for .oos object-oriented schemas.

    Class C [is-a C1{, Ck}] type-is T

    T ::= NAME
        | Union T{, T} End
        | Set-of T
        | Record A: T{, A: T} End

Keywords are case-sensitive; a declaration runs until the next `Class`.
"""
import logging

from schemadl.exceptions import SchemaValidationError
from schemadl.models.oo_schema import (
    RESERVED_NAMES, ClassDecl, ClassRef, OOSchema, Record, SetOf, UnionType
)
from schemadl.parsers.lexer import BaseParser, KEYWORD, Lexer, NAME, PUNCT

logger = logging.getLogger(__name__)

OO_KEYWORDS = ('Class', 'is-a', 'type-is', 'Union', 'Set-of', 'Record', 'End')
OO_WORD = r'[A-Za-z][A-Za-z0-9_]*(?:-[A-Za-z][A-Za-z0-9_]*)?'

_LEXER = Lexer(OO_KEYWORDS, (',', ':'), word=OO_WORD, source='oos')


class OOParser(BaseParser):
    """Recursive-descent parser for .oos text"""

    source = 'oos'

    def __init__(self, text):
        super().__init__(_LEXER.tokenize(text))

    def parse_file(self):
        """
        Returns:
            List of (ClassDecl, name token) in file order
        """
        decls = []
        while not self.at_eof():
            self.expect_keyword('Class')
            name = self._class_name()
            supers = []
            if self.match(KEYWORD, 'is-a'):
                supers.append(self._class_name().value)
                while self.match(PUNCT, ','):
                    supers.append(self._class_name().value)
            self.expect_keyword('type-is')
            decls.append((ClassDecl(name.value, tuple(supers), self.type_expr()), name))
        return decls

    def type_expr(self):
        if self.at(NAME):
            return ClassRef(self._class_name().value)
        start = self.peek()
        if self.match(KEYWORD, 'Set-of'):
            return SetOf(self.type_expr())
        if self.match(KEYWORD, 'Union'):
            members = [self.type_expr()]
            while self.match(PUNCT, ','):
                members.append(self.type_expr())
            self.expect_keyword('End')
            if len(members) == 1:
                return members[0]
            return UnionType(tuple(members))
        if self.match(KEYWORD, 'Record'):
            if self.at(KEYWORD, 'End'):
                self.error("a Record needs at least one attribute", start)
            fields = [self._field()]
            while self.match(PUNCT, ','):
                fields.append(self._field())
            self.expect_keyword('End')
            labels = [a for a, _ in fields]
            duplicates = sorted({a for a in labels if labels.count(a) > 1})
            if duplicates:
                self.error(f"attribute '{duplicates[0]}' appears twice in one Record", start)
            return Record(tuple(fields))
        self.error(f"expected a type, found {start.describe()}")

    def _field(self):
        label = self.expect_name('an attribute name')
        self._not_reserved(label)
        self.expect_punct(':')
        return label.value, self.type_expr()

    def _class_name(self):
        token = self.expect_name('a class name')
        self._not_reserved(token)
        return token

    def _not_reserved(self, token):
        if token.value in RESERVED_NAMES:
            self.error(f"'{token.value}' is reserved", token)


def parse_oo(text):
    """
    Parse an object-oriented schema.

    Classes referenced but never declared (String in a typical schema)
    become opaque classes.

    Raises:
        KBSyntaxError: On grammar errors, empty records, reserved names
        SchemaValidationError: On duplicate declarations or a name used
            both as class and as attribute
    """
    entries = OOParser(text).parse_file()
    decls = []
    declared = set()
    for decl, token in entries:
        if decl.name in declared:
            raise SchemaValidationError(
                f"Class '{decl.name}' is declared twice (line {token.line})",
                {'class': decl.name, 'line': token.line}
            )
        declared.add(decl.name)
        decls.append(decl)

    class_names = set(declared)
    attribute_names = set()
    for decl in decls:
        class_names |= set(decl.supers)
        class_names |= decl.type.class_names()
        attribute_names |= decl.type.attribute_names()

    clash = class_names & attribute_names
    if clash:
        name = sorted(clash)[0]
        raise SchemaValidationError(
            f"Name '{name}' is used both as class and as attribute", {'name': name}
        )

    schema = OOSchema(tuple(decls), frozenset(class_names), frozenset(attribute_names))
    if schema.opaque_classes:
        logger.debug("Opaque classes: %s", sorted(schema.opaque_classes))
    return schema


def parse_type_expression(text):
    """Parse a single type expression, e.g. "Union Professor, GradStudent End" """
    parser = OOParser(text)
    result = parser.type_expr()
    if not parser.at_eof():
        parser.error(f"unexpected {parser.peek().describe()} after the type")
    return result


def render_oo(schema):
    """Write an object-oriented schema back to .oos text"""
    return '\n'.join(decl.to_text() for decl in schema.decls) + '\n'


__all__ = ['parse_oo', 'parse_type_expression', 'render_oo', 'OOParser']
