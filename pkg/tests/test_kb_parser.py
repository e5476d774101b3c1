# File: tests/test_kb_parser.py
"""Parsing and canonical rendering of .kb knowledge bases"""
import pytest

from conftest import read_figure
from schemadl.exceptions import KBSyntaxError, UndeclaredSymbolError, UnknownSymbolError
from schemadl.models import (
    TOP, AtLeast, AtMost, Atomic, Exists, Forall, InclusionAssertion, KnowledgeBase,
    NegAtomic, RoleExpr, conjunction, disjunction
)
from schemadl.parsers import parse_concept, parse_kb, render_kb


class TestParseKB:

    def test_single_top_assertion(self):
        kb = parse_kb("concept A; A <= TOP;")
        assert kb.concepts == {'A'}
        assert kb.assertions == (InclusionAssertion('A', TOP),)

    def test_university_knowledge_base(self):
        kb = parse_kb(read_figure('fig3.kb'))
        assert len(kb.concepts) == 8
        assert kb.roles == {'enrolls', 'taughtby', 'degree'}
        assert len(kb.assertions) == 5

    def test_inverse_role_in_parentheses(self):
        kb = parse_kb("A <= ALL (INV P).B AND ATLEAST 2 P;")
        P = RoleExpr('P')
        assert kb.assertions[0].rhs == conjunction(Forall(P.inverse(), Atomic('B')), AtLeast(2, P))

    def test_and_binds_tighter_than_or(self):
        expr = parse_concept("A AND B OR C")
        assert expr == disjunction(conjunction(Atomic('A'), Atomic('B')), Atomic('C'))

    def test_universal_takes_a_primary_filler(self):
        expr = parse_concept("ALL P . A AND B")
        assert expr == conjunction(Forall(RoleExpr('P'), Atomic('A')), Atomic('B'))

    def test_exactly_and_some(self):
        P = RoleExpr('P')
        assert parse_concept("EXACTLY 2 P") == conjunction(AtLeast(2, P), AtMost(2, P))
        assert parse_concept("SOME INV P") == AtLeast(1, P.inverse())

    def test_atleast_zero_is_top(self):
        assert parse_concept("ATLEAST 0 P") == TOP

    def test_qualified_some_only_in_goals(self):
        assert parse_concept("SOME P . A") == Exists(RoleExpr('P'), Atomic('A'))
        with pytest.raises(KBSyntaxError):
            parse_kb("B <= SOME P . A;")

    def test_comments_are_ignored(self):
        kb = parse_kb("# header\nconcept A; # trailing\nA <= NOT B;")
        assert kb.assertions[0].rhs == NegAtomic('B')

    def test_same_lhs_kept_apart(self):
        kb = parse_kb("A <= B; A <= C;")
        assert len(kb.assertions) == 2
        assert kb.merged()['A'] == conjunction(Atomic('B'), Atomic('C'))


class TestErrors:

    def test_syntax_error_has_position(self):
        with pytest.raises(KBSyntaxError) as excinfo:
            parse_kb("concept A;\nA <= ALL P B;")
        assert excinfo.value.line == 2
        assert excinfo.value.column == 12

    def test_not_takes_an_atom_only(self):
        with pytest.raises(KBSyntaxError):
            parse_kb("A <= NOT (B AND C);")

    def test_undeclared_symbol_without_auto_declare(self):
        with pytest.raises(UndeclaredSymbolError) as excinfo:
            parse_kb("concept A; role P; A <= ALL P . B;", auto_declare=False)
        assert excinfo.value.payload['symbol'] == 'B'

    def test_auto_declare_adds_symbols(self):
        kb = parse_kb("A <= ALL P . B;", auto_declare=True)
        assert kb.concepts == {'A', 'B'}
        assert kb.roles == {'P'}

    def test_kb_rejects_symbols_outside_signature(self):
        with pytest.raises(UnknownSymbolError):
            KnowledgeBase(frozenset(['A']), frozenset(), (InclusionAssertion('A', Atomic('B')),))


class TestRender:

    @pytest.mark.parametrize('name', ['fig3.kb', 'fig6.kb', 'fig8.kb', 'keven.kb'])
    def test_render_is_a_fixed_point(self, name):
        kb = parse_kb(read_figure(name))
        text = render_kb(kb)
        assert parse_kb(text) == kb
        assert render_kb(parse_kb(text)) == text

    def test_random_round_trip(self, kb_generator):
        generator = kb_generator(3)
        for _ in range(100):
            kb = generator.knowledge_base()
            assert parse_kb(render_kb(kb)) == kb

    def test_collapsed_display(self):
        kb = parse_kb("concept A, B, C; A <= B; A <= C;")
        text = render_kb(kb, collapse=True)
        assert 'A <= B AND C;' in text
        assert parse_kb(text) == kb.collapsed()


class TestFigureFiles:

    @pytest.mark.parametrize('name', [
        'fig2.frm', 'fig3.kb', 'fig4.ers', 'fig6.kb', 'fig7.oos', 'fig8.kb', 'keven.kb', 'ex44.ers', 'ex56.oos'
    ])
    def test_header_names_the_source(self, name):
        assert read_figure(name).startswith('# Provenance: ')

    @pytest.mark.parametrize('name', ['fig4.ers', 'ex56.oos'])
    def test_redrawn_figures_say_how(self, name):
        header = read_figure(name).splitlines()[1]
        assert header.startswith('# Reconstruction: ')
