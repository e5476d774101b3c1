# File: tests/conftest.py
"""
Shared fixtures: figure files, parsed schemas, budgets and seeded random
generators for knowledge bases, interpretations and database states.
"""
import os
import random

import pytest

from schemadl.config import TestingConfig
from schemadl.models import (
    AtLeast, AtMost, Atomic, DatabaseState, Forall, InclusionAssertion, Interpretation,
    KnowledgeBase, LabeledTuple, NegAtomic, RoleExpr, SearchBudget, conjunction, disjunction
)
from schemadl.parsers import parse_er, parse_frames, parse_kb, parse_oo
from schemadl.serializers import load_interpretation

FIGURES = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), 'figures')


def figure_path(name):
    return os.path.join(FIGURES, name)


def read_figure(name):
    with open(figure_path(name), encoding='utf-8') as handle:
        return handle.read()


def budget(max_size, min_size=1, time_limit=60.0):
    return SearchBudget(min_size, max_size, time_limit)


# ==================== CONFIG ====================

@pytest.fixture
def app_config():
    return TestingConfig


# ==================== FIGURES ====================

@pytest.fixture
def university_frames():
    return parse_frames(read_figure('fig2.frm'))


@pytest.fixture
def university_frames_dl():
    return parse_kb(read_figure('fig3.kb'))


@pytest.fixture
def university_er():
    return parse_er(read_figure('fig4.ers'))


@pytest.fixture
def university_er_dl():
    return parse_kb(read_figure('fig6.kb'))


@pytest.fixture
def university_oo():
    return parse_oo(read_figure('fig7.oos'))


@pytest.fixture
def university_oo_dl():
    return parse_kb(read_figure('fig8.kb'))


@pytest.fixture
def even_kb():
    return parse_kb(read_figure('keven.kb'))


@pytest.fixture
def even_er():
    return parse_er(read_figure('ex44.ers'))


@pytest.fixture
def nested_oo():
    return parse_oo(read_figure('ex56.oos'))


@pytest.fixture
def nested_model():
    """Two C objects whose values nest records; v1 and v2 close a cycle"""
    return load_interpretation(read_figure('fig9_model.json'))


@pytest.fixture
def even_loop():
    """Size-1 model of keven.kb: one even number doubling itself"""
    return Interpretation(
        1,
        {'Number': {0}, 'Even': {0}},
        {'doubles': {(0, 0)}}
    )


# ==================== RANDOM GENERATORS ====================

class KBGenerator:
    """
    Seeded generator of small knowledge bases, concepts and interpretations
    over concepts A, B (optionally C) and one role P.
    """

    def __init__(self, seed, concepts=('A', 'B'), roles=('P',)):
        self.rng = random.Random(seed)
        self.concepts = tuple(concepts)
        self.roles = tuple(roles)

    def role(self):
        return RoleExpr(self.rng.choice(self.roles), self.rng.random() < 0.4)

    def concept(self, depth=2):
        rng = self.rng
        leaf = depth == 0 or rng.random() < 0.3
        if leaf:
            name = rng.choice(self.concepts)
            return Atomic(name) if rng.random() < 0.7 else NegAtomic(name)
        kind = rng.choice(('and', 'or', 'all', 'atleast', 'atmost'))
        if kind == 'and':
            return conjunction(self.concept(depth - 1), self.concept(depth - 1))
        if kind == 'or':
            return disjunction(self.concept(depth - 1), self.concept(depth - 1))
        if kind == 'all':
            return Forall(self.role(), self.concept(depth - 1))
        if kind == 'atleast':
            return AtLeast(rng.randint(1, 2), self.role())
        return AtMost(rng.randint(0, 2), self.role())

    def knowledge_base(self, max_assertions=3):
        assertions = [
            InclusionAssertion(self.rng.choice(self.concepts), self.concept())
            for _ in range(self.rng.randint(0, max_assertions))
        ]
        return KnowledgeBase(frozenset(self.concepts), frozenset(self.roles), tuple(assertions))

    def cardinality_kb(self):
        """Assertions built from the conjunct shapes the analyzer reads"""
        rng = self.rng
        assertions = []
        for lhs in self.concepts:
            parts = []
            for _ in range(rng.randint(0, 3)):
                kind = rng.choice(('atom', 'atleast', 'atmost', 'all'))
                role = self.role()
                if kind == 'atom':
                    parts.append(Atomic(rng.choice(self.concepts)))
                elif kind == 'atleast':
                    parts.append(AtLeast(rng.randint(1, 3), role))
                elif kind == 'atmost':
                    parts.append(AtMost(rng.randint(0, 2), role))
                else:
                    parts.append(Forall(role, Atomic(rng.choice(self.concepts))))
            if parts:
                assertions.append(InclusionAssertion(lhs, conjunction(*parts)))
        return KnowledgeBase(frozenset(self.concepts), frozenset(self.roles), tuple(assertions))

    def interpretation(self, size):
        rng = self.rng
        concepts = {
            name: {d for d in range(size) if rng.random() < 0.5} for name in self.concepts
        }
        roles = {
            name: {(a, b) for a in range(size) for b in range(size) if rng.random() < 0.4}
            for name in self.roles
        }
        return Interpretation(size, concepts, roles)


@pytest.fixture
def kb_generator():
    return KBGenerator


def all_interpretations(size, concepts, roles):
    """Every interpretation of a signature over a domain of the given size"""
    concept_bits = [(name, d) for name in concepts for d in range(size)]
    role_bits = [(name, a, b) for name in roles for a in range(size) for b in range(size)]
    total = len(concept_bits) + len(role_bits)
    for mask in range(1 << total):
        ext = {name: set() for name in concepts}
        rel = {name: set() for name in roles}
        for position, (name, d) in enumerate(concept_bits):
            if mask >> position & 1:
                ext[name].add(d)
        for position, (name, a, b) in enumerate(role_bits, start=len(concept_bits)):
            if mask >> position & 1:
                rel[name].add((a, b))
        yield Interpretation(size, ext, rel)


@pytest.fixture
def enumerate_interpretations():
    return all_interpretations


def legal_university_state(rng):
    """
    A random legal database state of fig4.ers.

    Usually 4..6 courses share 2..5 students. Each student enrolls in 4..6
    courses, always picking the least crowded ones, so every course ends up
    with at least two students. Some states are crowded instead: 20 or 30
    students all take the same four courses, and at 20 some courses are
    advanced. Every course is taught by exactly one of the teachers.
    """
    crowded = rng.random() < 0.15
    if crowded:
        course_count, student_count = 4, rng.choice((20, 30))
    else:
        course_count = rng.randint(4, 6)
        student_count = rng.randint(2 if course_count == 4 else 3, 5)
    courses = [f"c{i}" for i in range(course_count)]
    students = [f"s{i}" for i in range(student_count)]
    teachers = [f"t{i}" for i in range(rng.randint(1, 3))]
    if crowded and student_count > 20:
        advanced = []
    else:
        advanced = [c for c in courses if rng.random() < 0.4]
    graduates = [s for s in students if rng.random() < 0.5]
    degrees = {(s, f"String#{rng.randint(0, 2)}") for s in graduates}
    teaching = {
        LabeledTuple.of({'Tof': c, 'Tby': rng.choice(teachers)}) for c in courses
    }

    load = dict.fromkeys(courses, 0)
    enrolling = set()
    for s in students:
        ranked = sorted(courses, key=lambda c: (load[c], rng.random()))
        for c in ranked[:rng.randint(4, min(6, course_count))]:
            load[c] += 1
            enrolling.add(LabeledTuple.of({'Ein': c, 'Eof': s}))

    return DatabaseState(
        frozenset(courses + students + teachers),
        {
            'Course': set(courses),
            'AdvCourse': set(advanced),
            'Teacher': set(teachers),
            'Student': set(students),
            'GradStudent': set(graduates)
        },
        {'degree': degrees},
        {'TEACHING': teaching, 'ENROLLING': enrolling}
    )


@pytest.fixture
def university_state():
    return legal_university_state
