# File: schemadl/parsers/kb_parser.py
"""
Parser and canonical renderer for the .kb knowledge base format.

    concept NAME{, NAME};   role NAME{, NAME};
    NAME <= EXPR;

AND binds tighter than OR; ALL R . X takes a primary expression as filler,
so `ALL P . A AND B` reads as `(ALL P . A) AND B`.
"""
import logging

from schemadl.config import Config
from schemadl.exceptions import UndeclaredSymbolError
from schemadl.models.concept import (
    BOTTOM, TOP, Atomic, Exists, Forall, NegAtomic, RoleExpr,
    at_least, at_most, conjunction, disjunction, exactly, some
)
from schemadl.models.knowledge_base import InclusionAssertion, KnowledgeBase
from schemadl.parsers.lexer import BaseParser, EOF, KEYWORD, Lexer, NAME, PUNCT

logger = logging.getLogger(__name__)

KB_KEYWORDS = (
    'concept', 'role', 'AND', 'OR', 'NOT', 'ALL', 'ATLEAST', 'ATMOST',
    'EXACTLY', 'SOME', 'INV', 'TOP', 'BOTTOM'
)
KB_PUNCTUATION = ('<=', ';', '(', ')', '.', ',')

_LEXER = Lexer(KB_KEYWORDS, KB_PUNCTUATION, source='kb')


class KBParser(BaseParser):
    """Recursive-descent parser for .kb text"""

    def __init__(self, text, allow_goal_only=False):
        super().__init__(_LEXER.tokenize(text))
        self.allow_goal_only = allow_goal_only
        # name -> first token using it, for undeclared-symbol reports
        self.used_concepts = {}
        self.used_roles = {}

    # ==================== FILE LEVEL ====================

    def parse_file(self):
        declared_concepts = set()
        declared_roles = set()
        assertions = []
        while not self.at_eof():
            if self.match(KEYWORD, 'concept'):
                declared_concepts |= self._name_list()
            elif self.match(KEYWORD, 'role'):
                declared_roles |= self._name_list()
            else:
                lhs = self.expect_name('a declaration or an assertion')
                self._use_concept(lhs)
                self.expect_punct('<=')
                rhs = self.parse_expression()
                self.expect_punct(';')
                assertions.append(InclusionAssertion(lhs.value, rhs))
        return declared_concepts, declared_roles, assertions

    def _name_list(self):
        names = {self.expect_name().value}
        while self.match(PUNCT, ','):
            names.add(self.expect_name().value)
        self.expect_punct(';')
        return names

    # ==================== EXPRESSIONS ====================

    def parse_expression(self):
        operands = [self._conjunction()]
        while self.match(KEYWORD, 'OR'):
            operands.append(self._conjunction())
        return disjunction(*operands)

    def _conjunction(self):
        operands = [self._primary()]
        while self.match(KEYWORD, 'AND'):
            operands.append(self._primary())
        return conjunction(*operands)

    def _primary(self):
        token = self.peek()
        if token.kind == NAME:
            self._use_concept(self.expect_name())
            return Atomic(token.value)
        if token.kind == PUNCT and token.value == '(':
            self.advance()
            inner = self.parse_expression()
            self.expect_punct(')')
            return inner
        if token.kind != KEYWORD:
            self.error(f"expected a concept expression, found {token.describe()}")

        self.advance()
        if token.value == 'TOP':
            return TOP
        if token.value == 'BOTTOM':
            return BOTTOM
        if token.value == 'NOT':
            name = self.expect_name('an atomic concept after NOT')
            self._use_concept(name)
            return NegAtomic(name.value)
        if token.value == 'ALL':
            role = self._role()
            self.expect_punct('.')
            return Forall(role, self._primary())
        if token.value in ('ATLEAST', 'ATMOST', 'EXACTLY'):
            n = self.expect_int('a nonnegative integer')
            role = self._role()
            if token.value == 'ATLEAST':
                return at_least(n, role)
            if token.value == 'ATMOST':
                return at_most(n, role)
            return exactly(n, role)
        if token.value == 'SOME':
            role = self._role()
            if self.at(PUNCT, '.'):
                if not self.allow_goal_only:
                    self.error("qualified SOME R . C is only allowed in search goals", token)
                self.advance()
                return Exists(role, self._primary())
            return some(role)
        self.error(f"unexpected keyword '{token.value}'", token)

    def _role(self):
        if self.match(PUNCT, '('):
            role = self._role()
            self.expect_punct(')')
            return role
        inverted = self.match(KEYWORD, 'INV') is not None
        name = self.expect_name('a role name')
        self.used_roles.setdefault(name.value, name)
        return RoleExpr(name.value, inverted)

    def _use_concept(self, token):
        self.used_concepts.setdefault(token.value, token)


def parse_kb(text, auto_declare=None):
    """
    Parse .kb text into a knowledge base.

    Args:
        text: File contents
        auto_declare: Declare symbols on first use; None reads Config.AUTO_DECLARE

    Returns:
        KnowledgeBase

    Raises:
        KBSyntaxError: With line and column of the offending token
        UndeclaredSymbolError: For a symbol never declared while auto-declaration is off
    """
    if auto_declare is None:
        auto_declare = Config.AUTO_DECLARE
    parser = KBParser(text)
    concepts, roles, assertions = parser.parse_file()

    if not auto_declare:
        for name, token in sorted(parser.used_concepts.items()):
            if name not in concepts:
                raise UndeclaredSymbolError(name, token.line, token.column)
        for name, token in sorted(parser.used_roles.items()):
            if name not in roles:
                raise UndeclaredSymbolError(name, token.line, token.column)

    kb = KnowledgeBase.build(assertions, concepts, roles)
    logger.debug("Parsed knowledge base: %r", kb)
    return kb


def parse_concept(text, allow_goal_only=True):
    """Parse a single concept expression (as given on the command line)"""
    parser = KBParser(text, allow_goal_only=allow_goal_only)
    expr = parser.parse_expression()
    if not parser.at(EOF):
        parser.error(f"unexpected {parser.peek().describe()} after expression")
    return expr


def render_kb(kb, collapse=False):
    """
    Canonical .kb text: sorted declarations, then sorted assertions.

    Args:
        kb: KnowledgeBase
        collapse: Write one assertion per left hand side (display form)
    """
    if collapse:
        kb = kb.collapsed()
    lines = [f"concept {name};" for name in sorted(kb.concepts)]
    lines += [f"role {name};" for name in sorted(kb.roles)]
    if kb.assertions:
        lines.append('')
        lines += [assertion.to_text() for assertion in kb.assertions]
    return '\n'.join(lines) + '\n'


__all__ = ['parse_kb', 'parse_concept', 'render_kb', 'KBParser']
