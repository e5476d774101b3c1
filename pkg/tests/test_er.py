# File: tests/test_er.py
"""ER schemas: parsing, translation, state legality and reasoning"""
import random
from collections import Counter

import pytest

from conftest import budget, read_figure
from schemadl.exceptions import (
    KBSyntaxError, SchemaValidationError, SignatureMismatchError, UnknownSymbolError
)
from schemadl.models import (
    Cardinality, DatabaseState, InclusionAssertion, LabeledTuple, NegAtomic, Outcome
)
from schemadl.parsers import parse_er, render_er
from schemadl.serializers import load_database_state
from schemadl.services import ERService


class TestParseER:

    def test_university_schema(self, university_er):
        assert university_er.entities == ('Course', 'AdvCourse', 'Teacher', 'Student', 'GradStudent')
        assert university_er.domains == {'String'}
        assert university_er.isa == {('AdvCourse', 'Course'), ('GradStudent', 'Student')}
        assert university_er.att['GradStudent'] == (('degree', 'String'),)
        assert university_er.rel['ENROLLING'] == (('Ein', 'Course'), ('Eof', 'Student'))

    def test_cardinalities(self, university_er):
        assert university_er.cardinality('Course', 'ENROLLING', 'Ein') == Cardinality(2, 30)
        assert university_er.cardinality('AdvCourse', 'ENROLLING', 'Ein') == Cardinality(0, 20)
        assert university_er.cardinality('Teacher', 'TEACHING', 'Tby') == Cardinality(0, None)

    def test_unbounded_maximum(self, even_er):
        assert even_er.cardinality('Number', 'DOUBLES', 'doubled') == Cardinality(1, None)

    def test_render_round_trip(self, university_er):
        assert parse_er(render_er(university_er)) == university_er

    def test_cardinality_outside_primary_entity(self):
        with pytest.raises(SchemaValidationError) as excinfo:
            parse_er(
                "entity Course; entity Teacher;"
                "relationship TEACHING (Tof:Course, Tby:Teacher);"
                "card Teacher in TEACHING.Tof 1..1;"
            )
        assert excinfo.value.payload['primary'] == 'Course'

    def test_role_used_by_two_relationships(self):
        with pytest.raises(SchemaValidationError):
            parse_er(
                "entity A; entity B;"
                "relationship R (U:A, V:B); relationship S (U:B, W:A);"
            )

    def test_minimum_above_maximum(self):
        with pytest.raises(KBSyntaxError):
            parse_er("entity A; entity B; relationship R (U:A, V:B); card A in R.U 3..2;")

    def test_name_used_twice(self):
        with pytest.raises(SchemaValidationError) as excinfo:
            parse_er("entity R; relationship R (U:R);")
        assert excinfo.value.payload['name'] == 'R'

    def test_unknown_isa_target(self):
        with pytest.raises(SchemaValidationError):
            parse_er("entity A isa B;")


class TestTranslatePhi:

    def test_display_form_matches_university_kb(self, university_er, university_er_dl):
        kb = ERService.translate_phi(university_er, elide_disjointness=True)
        assert kb.collapsed() == university_er_dl.collapsed()

    def test_disjointness_assertions(self, university_er):
        full = ERService.translate_phi(university_er)
        display = ERService.translate_phi(university_er, elide_disjointness=True)
        extra = set(full.assertions) - set(display.assertions)
        assert InclusionAssertion('TEACHING', NegAtomic('ENROLLING')) in extra
        assert InclusionAssertion('String', NegAtomic('Course')) in extra
        assert InclusionAssertion('Course', NegAtomic('Teacher')) not in extra
        # relationships and domains against the seven other symbols
        assert len(extra) == 3 * 7

    def test_signature(self, university_er):
        kb = ERService.translate_phi(university_er)
        assert kb.concepts == {
            'Course', 'AdvCourse', 'Teacher', 'Student', 'GradStudent', 'TEACHING', 'ENROLLING', 'String'
        }
        assert kb.roles == {'Tof', 'Tby', 'Ein', 'Eof', 'degree'}


class TestCheckLegal:

    def test_single_teacher(self, university_er):
        state = load_database_state(read_figure('fig4_state.json'))
        assert ERService.check_legal(university_er, state).ok

    def test_course_without_enough_students(self, university_er):
        state = DatabaseState(
            frozenset({'c', 's'}),
            {'Course': {'c'}, 'Student': {'s'}},
            {},
            {'ENROLLING': {LabeledTuple.of({'Ein': 'c', 'Eof': 's'})}}
        )
        report = ERService.check_legal(university_er, state)
        assert not report.ok
        assert set(report.rules()) == {
            'card Course TEACHING.Tof', 'card Course ENROLLING.Ein', 'card Student ENROLLING.Eof'
        }

    def test_graduate_without_degree(self, university_er):
        state = DatabaseState(frozenset({'g'}), {'Student': {'g'}, 'GradStudent': {'g'}})
        report = ERService.check_legal(university_er, state)
        assert 'attribute GradStudent.degree' in report.rules()

    def test_degree_from_the_wrong_domain(self, university_er, university_state):
        state = university_state(random.Random(1))
        graduates = state.entity('GradStudent')
        if not graduates:
            state = DatabaseState(
                state.domain,
                dict(state.entities, GradStudent={'s0'}),
                {'degree': {('s0', 'String#0')}},
                state.rels
            )
        attrs = {'degree': {(s, 'Int#0') for s, _ in state.attribute('degree')}}
        broken = DatabaseState(state.domain, state.entities, attrs, state.rels)
        assert ERService.check_legal(university_er, state).ok
        assert 'attribute GradStudent.degree' in ERService.check_legal(university_er, broken).rules()

    def test_subentity_outside_its_parent(self, university_er):
        state = DatabaseState(frozenset({'t'}), {'Teacher': {'t'}, 'AdvCourse': {'t'}})
        assert 'isa AdvCourse Course' in ERService.check_legal(university_er, state).rules()

    def test_empty_state(self, university_er):
        report = ERService.check_legal(university_er, DatabaseState())
        assert report.rules() == ['domain']

    def test_individual_outside_the_domain(self, university_er):
        state = DatabaseState(frozenset({'t'}), {'Teacher': {'t', 'u'}})
        assert ERService.check_legal(university_er, state).violations[0].witness == 'u'

    def test_unknown_entity(self, university_er):
        with pytest.raises(UnknownSymbolError):
            ERService.check_legal(university_er, DatabaseState(frozenset({'x'}), {'Dean': {'x'}}))

    def test_tuple_with_wrong_roles(self, university_er):
        state = DatabaseState(
            frozenset({'c', 't'}), {}, {}, {'TEACHING': {LabeledTuple.of({'Tof': 'c'})}}
        )
        with pytest.raises(SignatureMismatchError):
            ERService.check_legal(university_er, state)

    def test_generated_states_are_legal(self, university_er, university_state):
        rng = random.Random(7)
        for _ in range(50):
            assert ERService.check_legal(university_er, university_state(rng)).ok

    def test_generated_states_reach_the_bounds(self, university_state):
        rng = random.Random(11)
        per_course, per_advanced, per_student = set(), set(), set()
        for _ in range(200):
            state = university_state(rng)
            tuples = state.relationship('ENROLLING')
            courses = Counter(t['Ein'] for t in tuples)
            students = Counter(t['Eof'] for t in tuples)
            per_course.update(courses.values())
            per_advanced.update(courses[c] for c in state.entity('AdvCourse'))
            per_student.update(students.values())
        assert {2, 30} <= per_course
        assert 20 in per_advanced
        assert {4, 6} <= per_student

    def test_one_enrollment_below_both_minimums(self, university_er, university_state):
        rng = random.Random(5)
        while True:
            state = university_state(rng)
            tuples = state.relationship('ENROLLING')
            courses = Counter(t['Ein'] for t in tuples)
            students = Counter(t['Eof'] for t in tuples)
            edge = [t for t in tuples if courses[t['Ein']] == 2 and students[t['Eof']] == 4]
            if edge:
                break
        rels = dict(state.rels, ENROLLING=tuples - {min(edge, key=lambda t: t.assignments)})
        broken = DatabaseState(state.domain, state.entities, state.attrs, rels)
        assert set(ERService.check_legal(university_er, broken).rules()) == {
            'card Course ENROLLING.Ein', 'card Student ENROLLING.Eof'
        }


class TestERReasoning:

    def test_teacher_alone(self, university_er, app_config):
        verdict = ERService.er_entity_satisfiable(university_er, 'Teacher', budget(3), app_config)
        assert verdict.found
        assert verdict.bound == 1
        assert verdict.certificate.entity('Teacher')
        assert ERService.check_legal(university_er, verdict.certificate).ok

    def test_numbers_need_even_doublers(self, even_er, app_config):
        verdict = ERService.er_entity_satisfiable(even_er, 'Number', budget(3), app_config)
        assert verdict.found
        assert ERService.check_legal(even_er, verdict.certificate).ok

    def test_inheritance_proved_by_cardinalities(self, even_er, app_config):
        verdict = ERService.er_inherits(even_er, 'Number', 'Even', budget(4), app_config)
        assert verdict.outcome == Outcome.NO_MODEL_UP_TO
        assert verdict.facts
        assert verdict.caveat.startswith('Proved')
        assert verdict.certificate is None

    def test_told_inheritance(self, university_er, app_config):
        verdict = ERService.er_inherits(university_er, 'AdvCourse', 'Course', budget(3), app_config)
        assert verdict.outcome == Outcome.NO_MODEL_UP_TO
        assert any(fact.kind.value == 'Subset' for fact in verdict.facts)

    def test_course_need_not_be_advanced(self, university_er, app_config):
        verdict = ERService.er_inherits(university_er, 'Course', 'AdvCourse', budget(6), app_config)
        assert verdict.found
        assert verdict.bound == 6
        state = verdict.certificate
        assert state is not None
        assert ERService.check_legal(university_er, state).ok
        assert state.entity('Course') - state.entity('AdvCourse')

    def test_teaching_can_be_populated(self, university_er, app_config):
        verdict = ERService.er_relationship_satisfiable(university_er, 'TEACHING', budget(6), app_config)
        assert verdict.found
        assert verdict.certificate.relationship('TEACHING')

    def test_unknown_names(self, university_er, app_config):
        with pytest.raises(UnknownSymbolError):
            ERService.er_entity_satisfiable(university_er, 'Dean', budget(2), app_config)
        with pytest.raises(UnknownSymbolError):
            ERService.er_relationship_satisfiable(university_er, 'Course', budget(2), app_config)
        with pytest.raises(UnknownSymbolError):
            ERService.er_inherits(university_er, 'Course', 'Dean', budget(2), app_config)

    def test_smallest_state_needs_three_tuples(self, app_config):
        schema = parse_er(
            "entity A; entity B; relationship R (U:A, V:B);"
            "card A in R.U 1..1; card B in R.V 3..3;"
        )
        small = ERService.er_entity_satisfiable(schema, 'A', budget(5), app_config)
        assert str(small) == 'NoModelUpTo(5)'
        verdict = ERService.er_entity_satisfiable(schema, 'A', budget(6), app_config)
        assert verdict.bound == 6
        assert len(verdict.certificate.relationship('R')) == 3
        assert ERService.check_legal(schema, verdict.certificate).ok
