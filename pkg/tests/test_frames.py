# File: tests/test_frames.py
"""Frame knowledge bases: parsing, translation and reasoning"""
import pytest

from conftest import budget
from schemadl.exceptions import KBSyntaxError, SchemaValidationError, UnknownSymbolError
from schemadl.models import (
    Atomic, FrameRef, Intersection, NegAtomic, Not, Outcome, SlotSpec, Union, conjunction,
    disjunction
)
from schemadl.parsers import parse_frame_expression, parse_frames, render_frames
from schemadl.services import FrameService


class TestParseFrames:

    def test_university_frames(self, university_frames):
        assert university_frames.kb_name == 'University'
        assert len(university_frames.frames) == 7
        assert university_frames.external_frames == {'String'}
        assert university_frames.slot_names == {'enrolls', 'taughtby', 'degree'}

    def test_course_slots(self, university_frames):
        course = university_frames.definition('Course')
        assert course.supers == ()
        assert [(s.slot, s.min_card, s.max_card) for s in course.slots] == [
            ('enrolls', 2, 30), ('taughtby', 1, 1)
        ]
        assert course.slots[1].value_class == Union(FrameRef('GradStudent'), FrameRef('Professor'))

    def test_nested_value_class(self, university_frames):
        adv = university_frames.definition('AdvCourse')
        assert adv.supers == ('Course',)
        assert adv.slots == (SlotSpec(
            'enrolls',
            Intersection(FrameRef('GradStudent'), Not(FrameRef('Undergrad'))),
            None,
            20
        ),)

    def test_bodyless_frames(self, university_frames):
        assert university_frames.definition('Professor').is_empty
        assert university_frames.definition('String') is None

    def test_render_round_trip(self, university_frames):
        assert parse_frames(render_frames(university_frames)) == university_frames

    def test_duplicate_definition(self):
        with pytest.raises(SchemaValidationError):
            parse_frames("Frame: A in KB K\nFrame: A in KB K")

    def test_undefined_super_frame(self):
        with pytest.raises(SchemaValidationError) as excinfo:
            parse_frames("Frame: A in KB K SuperClasses: B")
        assert excinfo.value.payload['reference'] == 'B'

    def test_frames_from_two_knowledge_bases(self):
        with pytest.raises(SchemaValidationError):
            parse_frames("Frame: A in KB K\nFrame: B in KB L")

    def test_minimum_must_be_positive(self):
        with pytest.raises(KBSyntaxError) as excinfo:
            parse_frames("Frame: A in KB K\n  MemberSlot: s\n    ValueClass: B\n    Cardinality.Min: 0")
        assert excinfo.value.line == 4

    def test_slot_twice_in_one_frame(self):
        with pytest.raises(KBSyntaxError):
            parse_frames(
                "Frame: A in KB K MemberSlot: s ValueClass: B MemberSlot: s ValueClass: B"
            )

    def test_empty_file(self):
        with pytest.raises(SchemaValidationError):
            parse_frames("# nothing here\n")


class TestTranslateTheta:

    def test_university_translation(self, university_frames, university_frames_dl):
        assert FrameService.translate_theta(university_frames) == university_frames_dl

    def test_one_assertion_per_nonempty_frame(self, university_frames):
        kb = FrameService.translate_theta(university_frames)
        assert sorted(a.lhs for a in kb.assertions) == [
            'AdvCourse', 'BasCourse', 'Course', 'GradStudent', 'Undergrad'
        ]

    def test_no_inverse_roles(self, university_frames):
        kb = FrameService.translate_theta(university_frames)
        assert not any(
            role.inverted for a in kb.assertions for role in a.rhs.role_exprs()
        )

    def test_negation_is_pushed_onto_names(self):
        value_class = Not(Union(FrameRef('A'), Intersection(FrameRef('B'), Not(FrameRef('C')))))
        expected = conjunction(NegAtomic('A'), disjunction(NegAtomic('B'), Atomic('C')))
        assert FrameService.constraint_concept(value_class) == expected


class TestFrameReasoning:

    @pytest.mark.parametrize('frame', ['Course', 'AdvCourse', 'BasCourse', 'GradStudent'])
    def test_university_frames_are_consistent(self, university_frames, app_config, frame):
        verdict = FrameService.frame_consistent(university_frames, frame, budget(4), app_config)
        assert verdict.outcome == Outcome.WITNESS_FOUND
        assert verdict.witness.concept(frame)

    def test_contradictory_bounds(self, app_config):
        kb = parse_frames(
            "Frame: Tiny in KB K\n"
            "  MemberSlot: s\n    ValueClass: Item\n    Cardinality.Min: 2\n    Cardinality.Max: 1\n"
        )
        verdict = FrameService.frame_consistent(kb, 'Tiny', budget(3), app_config)
        assert str(verdict) == 'NoModelUpTo(3)'
        assert 'finite model property' in verdict.caveat

    def test_unknown_frame(self, university_frames, app_config):
        with pytest.raises(UnknownSymbolError):
            FrameService.frame_consistent(university_frames, 'Dean', budget(2), app_config)

    def test_super_class_is_more_general(self, university_frames, app_config):
        expression = parse_frame_expression("SuperClasses: Course")
        verdict = FrameService.frame_more_general(university_frames, 'AdvCourse', expression, budget(3), app_config)
        assert verdict.outcome == Outcome.NO_MODEL_UP_TO

    def test_inherited_slot_restriction(self, university_frames, app_config):
        expression = parse_frame_expression(
            "MemberSlot: enrolls ValueClass: Student Cardinality.Max: 30"
        )
        verdict = FrameService.frame_more_general(university_frames, 'AdvCourse', expression, budget(3), app_config)
        assert verdict.outcome == Outcome.NO_MODEL_UP_TO

    def test_professor_teachers_only_for_basic_courses(self, university_frames, app_config):
        expression = parse_frame_expression("MemberSlot: taughtby ValueClass: Professor")
        basic = FrameService.frame_more_general(university_frames, 'BasCourse', expression, budget(4), app_config)
        advanced = FrameService.frame_more_general(university_frames, 'AdvCourse', expression, budget(4), app_config)
        assert basic.outcome == Outcome.NO_MODEL_UP_TO
        assert advanced.outcome == Outcome.WITNESS_FOUND

    def test_expression_with_unknown_frame(self, university_frames, app_config):
        expression = parse_frame_expression("SuperClasses: Dean")
        with pytest.raises(UnknownSymbolError):
            FrameService.frame_more_general(university_frames, 'Course', expression, budget(2), app_config)
