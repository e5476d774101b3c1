# File: schemadl/parsers/frame_parser.py
"""
Parser and renderer for .frm frame knowledge bases.

    Frame: NAME in KB NAME
    [SuperClasses: NAME{, NAME}]
    {MemberSlot: NAME  ValueClass: H  [Cardinality.Min: n]  [Cardinality.Max: n]}

    H ::= NAME | (UNION H H) | (INTERSECTION H H) | (NOT H)

Layout is free: line breaks carry no meaning.
"""
import logging

from schemadl.exceptions import SchemaValidationError
from schemadl.models.frame import (
    FrameDefinition, FrameKB, FrameRef, Intersection, Not, SlotSpec, Union
)
from schemadl.parsers.lexer import BaseParser, KEYWORD, Lexer, NAME, PUNCT

logger = logging.getLogger(__name__)

FRAME_KEYWORDS = (
    'Frame', 'in', 'KB', 'SuperClasses', 'MemberSlot', 'ValueClass',
    'Cardinality.Min', 'Cardinality.Max', 'UNION', 'INTERSECTION', 'NOT'
)
FRAME_WORD = r'[A-Za-z][A-Za-z0-9_]*(?:\.[A-Za-z][A-Za-z0-9_]*)?'

_LEXER = Lexer(FRAME_KEYWORDS, (':', '(', ')', ','), word=FRAME_WORD, source='frm')


class FrameParser(BaseParser):
    """Recursive-descent parser for .frm text"""

    source = 'frm'

    def __init__(self, text):
        super().__init__(_LEXER.tokenize(text))

    def parse_file(self):
        """
        Returns:
            List of (definition, kb name, name token) in file order
        """
        frames = []
        while not self.at_eof():
            self.expect_keyword('Frame')
            self.expect_punct(':')
            name = self.expect_name('a frame name')
            self.expect_keyword('in')
            self.expect_keyword('KB')
            kb_name = self.expect_name('a knowledge base name')
            supers, slots = self.parse_body()
            frames.append((FrameDefinition(name.value, supers, slots), kb_name.value, name))
        return frames

    def parse_body(self):
        supers = ()
        if self.match(KEYWORD, 'SuperClasses'):
            self.expect_punct(':')
            names = [self.expect_name('a super frame').value]
            while self.match(PUNCT, ','):
                names.append(self.expect_name('a super frame').value)
            supers = tuple(names)

        slots = []
        seen = set()
        while self.at(KEYWORD, 'MemberSlot'):
            start = self.advance()
            slot = self._slot()
            if slot.slot in seen:
                self.error(f"slot '{slot.slot}' appears twice in one definition", start)
            seen.add(slot.slot)
            slots.append(slot)
        return supers, tuple(slots)

    def _slot(self):
        self.expect_punct(':')
        name = self.expect_name('a slot name').value
        self.expect_keyword('ValueClass')
        self.expect_punct(':')
        value_class = self.constraint()

        min_card = max_card = None
        if self.match(KEYWORD, 'Cardinality.Min'):
            self.expect_punct(':')
            min_card = self._positive('Cardinality.Min')
        if self.match(KEYWORD, 'Cardinality.Max'):
            self.expect_punct(':')
            max_card = self._positive('Cardinality.Max')
        if min_card is not None and max_card is not None and min_card > max_card:
            logger.warning(
                "Slot %s: Cardinality.Min %d exceeds Cardinality.Max %d, the frame is inconsistent",
                name, min_card, max_card
            )
        return SlotSpec(name, value_class, min_card, max_card)

    def _positive(self, what):
        token = self.peek()
        value = self.expect_int(f"a positive integer after {what}")
        if value < 1:
            self.error(f"{what} must be a positive integer", token)
        return value

    def constraint(self):
        if self.at(NAME):
            return FrameRef(self.expect_name('a frame name').value)
        self.expect_punct('(')
        if self.match(KEYWORD, 'UNION'):
            result = Union(self.constraint(), self.constraint())
        elif self.match(KEYWORD, 'INTERSECTION'):
            result = Intersection(self.constraint(), self.constraint())
        elif self.match(KEYWORD, 'NOT'):
            result = Not(self.constraint())
        else:
            self.error(f"expected UNION, INTERSECTION or NOT, found {self.peek().describe()}")
        self.expect_punct(')')
        return result


def parse_frames(text):
    """
    Parse a frame knowledge base.

    Value classes may name frames that have no definition (such as a
    built-in String class); they become bodyless frame names. Super
    classes must be defined frames.

    Raises:
        KBSyntaxError: On grammar errors
        SchemaValidationError: On duplicate definitions, undefined super
            classes or frames declared in different knowledge bases
    """
    entries = FrameParser(text).parse_file()
    if not entries:
        raise SchemaValidationError("No frame definitions found")

    kb_name = entries[0][1]
    definitions = []
    defined = set()
    for definition, name_of_kb, token in entries:
        if definition.name in defined:
            raise SchemaValidationError(
                f"Duplicate definition of frame '{definition.name}' (line {token.line})",
                {'frame': definition.name, 'line': token.line}
            )
        if name_of_kb != kb_name:
            raise SchemaValidationError(
                f"Frame '{definition.name}' is in KB '{name_of_kb}', expected '{kb_name}'",
                {'frame': definition.name, 'kb': name_of_kb}
            )
        defined.add(definition.name)
        definitions.append(definition)

    frame_names = set(defined)
    slot_names = set()
    for definition in definitions:
        for parent in definition.supers:
            if parent not in defined:
                raise SchemaValidationError(
                    f"Frame '{definition.name}' refers to undeclared super frame '{parent}'",
                    {'frame': definition.name, 'reference': parent}
                )
        for slot in definition.slots:
            slot_names.add(slot.slot)
            frame_names |= slot.value_class.frame_names()

    kb = FrameKB(kb_name, tuple(definitions), frozenset(frame_names), frozenset(slot_names))
    if kb.external_frames:
        logger.debug("Value classes without definition: %s", sorted(kb.external_frames))
    return kb


def parse_frame_expression(text):
    """
    Parse a frame expression: a definition body without the `Frame:` header,
    e.g. "SuperClasses: Course" or "MemberSlot: taughtby ValueClass: Professor".
    """
    parser = FrameParser(text)
    supers, slots = parser.parse_body()
    if not parser.at_eof():
        parser.error(f"unexpected {parser.peek().describe()} in frame expression")
    return FrameDefinition(None, supers, slots)


def render_frames(kb):
    """Write a frame knowledge base back to .frm text"""
    blocks = []
    for frame in kb.frames:
        lines = [f"Frame: {frame.name} in KB {kb.kb_name}"]
        if frame.supers:
            lines.append(f"  SuperClasses: {', '.join(frame.supers)}")
        for slot in frame.slots:
            lines.append(f"  MemberSlot: {slot.slot}")
            lines.append(f"    ValueClass: {slot.value_class.to_text()}")
            if slot.min_card is not None:
                lines.append(f"    Cardinality.Min: {slot.min_card}")
            if slot.max_card is not None:
                lines.append(f"    Cardinality.Max: {slot.max_card}")
        blocks.append('\n'.join(lines))
    return '\n\n'.join(blocks) + '\n'
