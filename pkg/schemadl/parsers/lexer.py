# File: schemadl/parsers/lexer.py
"""
Tokenizer and recursive-descent parser base shared by the four surface
languages (.kb, .frm, .ers, .oos).
"""
import re
from dataclasses import dataclass
from typing import Iterable, List, Optional

from schemadl.exceptions import KBSyntaxError
from schemadl.models.concept import is_identifier

NAME = 'NAME'
KEYWORD = 'KW'
INTEGER = 'INT'
PUNCT = 'PUNCT'
EOF = 'EOF'

DEFAULT_WORD = r'[A-Za-z][A-Za-z0-9_]*'


@dataclass(frozen=True)
class Token:
    kind: str
    value: str
    line: int
    column: int

    def describe(self):
        if self.kind == EOF:
            return 'end of input'
        return f"'{self.value}'"


class Lexer:
    """
    Splits text into tokens.

    Words matching one of the keywords become KW tokens, other words NAME
    tokens. `#` starts a comment running to the end of the line.
    """

    def __init__(self, keywords: Iterable[str], punctuation: Iterable[str],
                 word=DEFAULT_WORD, source='kb'):
        self.keywords = frozenset(keywords)
        self.source = source
        # Longest punctuation first so '..' wins over '.'
        punct = '|'.join(re.escape(p) for p in sorted(punctuation, key=len, reverse=True))
        self.pattern = re.compile(
            rf'(?P<space>[ \t\r\n]+)|(?P<comment>\#[^\n]*)|(?P<int>[0-9]+)'
            rf'|(?P<word>{word})|(?P<punct>{punct})'
        )

    def tokenize(self, text) -> List[Token]:
        tokens = []
        pos = 0
        line = 1
        line_start = 0
        while pos < len(text):
            match = self.pattern.match(text, pos)
            column = pos - line_start + 1
            if match is None:
                raise KBSyntaxError(f"unexpected character '{text[pos]}'", line, column, self.source)
            kind = match.lastgroup
            value = match.group()
            if kind == 'int':
                tokens.append(Token(INTEGER, value, line, column))
            elif kind == 'word':
                token_kind = KEYWORD if value in self.keywords else NAME
                tokens.append(Token(token_kind, value, line, column))
            elif kind == 'punct':
                tokens.append(Token(PUNCT, value, line, column))
            newlines = value.count('\n')
            if newlines:
                line += newlines
                line_start = pos + value.rindex('\n') + 1
            pos = match.end()
        tokens.append(Token(EOF, '', line, pos - line_start + 1))
        return tokens


class BaseParser:
    """Token cursor with located error reporting"""

    source = 'kb'

    def __init__(self, tokens: List[Token]):
        self.tokens = tokens
        self.pos = 0

    def peek(self, offset=0) -> Token:
        index = min(self.pos + offset, len(self.tokens) - 1)
        return self.tokens[index]

    def advance(self) -> Token:
        token = self.peek()
        if token.kind != EOF:
            self.pos += 1
        return token

    def at(self, kind, value=None, offset=0):
        token = self.peek(offset)
        return token.kind == kind and (value is None or token.value == value)

    def at_eof(self):
        return self.at(EOF)

    def match(self, kind, value=None) -> Optional[Token]:
        if self.at(kind, value):
            return self.advance()
        return None

    def expect(self, kind, value=None, what=None) -> Token:
        token = self.match(kind, value)
        if token is None:
            wanted = what or (f"'{value}'" if value else kind.lower())
            self.error(f"expected {wanted}, found {self.peek().describe()}")
        return token

    def expect_keyword(self, value):
        return self.expect(KEYWORD, value)

    def expect_punct(self, value):
        return self.expect(PUNCT, value)

    def expect_name(self, what='a name') -> Token:
        token = self.expect(NAME, what=what)
        if not is_identifier(token.value):
            self.error(f"'{token.value}' is not a valid identifier", token)
        return token

    def expect_int(self, what='an integer') -> int:
        return int(self.expect(INTEGER, what=what).value)

    def error(self, message, token=None):
        token = token or self.peek()
        raise KBSyntaxError(message, token.line, token.column, self.source)
