# File: tests/test_cli.py
"""Command line verbs, reports and exit codes"""
import json

import pytest

from conftest import figure_path
from schemadl.cli import run
from schemadl.parsers import parse_kb


def call(capsys, *argv):
    """Run one command under the testing configuration"""
    code = run([argv[0], '--env', 'testing', *argv[1:]])
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def error_report(err):
    # log records come first; the JSON report is the last line
    return json.loads(err.strip().splitlines()[-1])


@pytest.fixture
def doubling_interpretation(tmp_path):
    def write(doubles):
        path = tmp_path / 'interp.json'
        path.write_text(json.dumps({
            'domain': 1,
            'concepts': {'Number': [0], 'Even': [0]},
            'roles': {'doubles': doubles}
        }))
        return str(path)
    return write


class TestTranslateCommand:

    def test_frames(self, capsys, university_frames_dl):
        code, out, _ = call(capsys, 'translate', figure_path('fig2.frm'), '--from', 'frm')
        assert code == 0
        assert parse_kb(out) == university_frames_dl

    def test_er_display_form(self, capsys, university_er_dl):
        code, out, _ = call(capsys, 'translate', figure_path('fig4.ers'), '--elide-disjointness')
        assert code == 0
        assert parse_kb(out).collapsed() == university_er_dl.collapsed()

    def test_oo_translation_keeps_opaque_classes_open(self, capsys, university_oo_dl):
        code, out, _ = call(capsys, 'translate', figure_path('fig7.oos'))
        assert code == 0
        assert parse_kb(out) == university_oo_dl

    def test_elide_disjointness_needs_er_input(self, capsys):
        code, _, err = call(capsys, 'translate', figure_path('fig2.frm'), '--elide-disjointness')
        assert code == 2
        assert error_report(err)['exitCode'] == 2

    def test_unknown_extension(self, capsys, tmp_path):
        path = tmp_path / 'schema.txt'
        path.write_text('concept A;')
        code, _, _ = call(capsys, 'translate', str(path))
        assert code == 2

    def test_missing_file(self, capsys, tmp_path):
        code, _, err = call(capsys, 'translate', str(tmp_path / 'absent.kb'))
        assert code == 3
        assert error_report(err)['exitCode'] == 3

    def test_syntax_error(self, capsys, tmp_path):
        path = tmp_path / 'broken.kb'
        path.write_text('concept A;\nA <= ;\n')
        code, _, err = call(capsys, 'translate', str(path))
        assert code == 3
        assert error_report(err)['line'] == 2


class TestDepthCommand:

    def test_schema_depth(self, capsys):
        code, out, _ = call(capsys, 'depth', figure_path('fig7.oos'))
        assert code == 0
        assert out == 'schema depth: 2\n'

    def test_pretty_lists_classes(self, capsys):
        code, out, _ = call(capsys, 'depth', figure_path('fig7.oos'), '--pretty')
        assert code == 0
        assert '  Course: 2' in out.splitlines()

    def test_only_oo_schemas(self, capsys):
        code, _, _ = call(capsys, 'depth', figure_path('keven.kb'))
        assert code == 2


class TestReasoningCommands:

    def test_check_model(self, capsys, doubling_interpretation):
        code, out, _ = call(capsys, 'check-model', figure_path('keven.kb'), doubling_interpretation([[0, 0]]))
        assert code == 0
        assert json.loads(out) == {'ok': True, 'violations': []}

    def test_check_model_negative(self, capsys, doubling_interpretation):
        code, out, _ = call(capsys, 'check-model', figure_path('keven.kb'), doubling_interpretation([]))
        assert code == 1
        assert json.loads(out)['violations']

    def test_find_model(self, capsys):
        code, out, _ = call(capsys, 'find-model', figure_path('keven.kb'), '--goal', 'Number', '--max', '2')
        assert code == 0
        report = json.loads(out)
        assert report['outcome'] == 'WitnessFound'
        assert report['bound'] == 1

    def test_no_finite_model(self, capsys):
        code, out, _ = call(
            capsys, 'find-model', figure_path('keven.kb'), '--goal', 'Number AND NOT Even', '--max', '3'
        )
        assert code == 1
        assert json.loads(out)['outcome'] == 'NoModelUpTo'

    def test_time_limit(self, capsys):
        code, out, _ = call(
            capsys, 'find-model', figure_path('keven.kb'), '--goal', 'Number AND NOT Even',
            '--max', '64', '--time', '0.001'
        )
        assert code == 1
        report = json.loads(out)
        assert report['outcome'] == 'TimedOut'
        assert report['bound'] < 64

    def test_pretty_verdict(self, capsys):
        code, out, _ = call(
            capsys, 'find-model', figure_path('keven.kb'), '--goal', 'Number', '--max', '1', '--pretty'
        )
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == 'WitnessFound(1)'
        assert '  doubles = {(0,0)}' in lines

    def test_er_goal_carries_a_certificate(self, capsys):
        code, out, _ = call(capsys, 'find-model', figure_path('fig4.ers'), '--goal', 'Teacher', '--max', '2')
        assert code == 0
        assert json.loads(out)['certificate']['entities']['Teacher']

    def test_invalid_budget(self, capsys):
        code, _, _ = call(
            capsys, 'find-model', figure_path('keven.kb'), '--goal', 'Number', '--min', '4', '--max', '2'
        )
        assert code == 2

    def test_subsumption_proved_by_cardinalities(self, capsys):
        code, out, _ = call(
            capsys, 'subsumes', figure_path('keven.kb'), '--lhs', 'Number', '--rhs', 'Even', '--max', '3'
        )
        assert code == 0
        report = json.loads(out)
        assert report['outcome'] == 'NoModelUpTo'
        assert report['caveat'].startswith('Proved')
        assert any(fact['kind'] == 'FiniteSubsumption' for fact in report['facts'])

    def test_subsumption_refuted(self, capsys):
        code, out, _ = call(
            capsys, 'subsumes', figure_path('fig3.kb'), '--lhs', 'Course', '--rhs', 'AdvCourse', '--max', '4'
        )
        assert code == 1
        assert json.loads(out)['outcome'] == 'WitnessFound'

    def test_frame_subsumption(self, capsys):
        code, _, _ = call(
            capsys, 'subsumes', figure_path('fig2.frm'), '--lhs', 'AdvCourse', '--rhs', 'Course', '--max', '3'
        )
        assert code == 0

    def test_analyze(self, capsys):
        code, out, _ = call(capsys, 'analyze', figure_path('keven.kb'))
        assert code == 0
        facts = json.loads(out)
        assert facts[0]['text'] == 'Subset(Even, Number)'

    def test_analyze_pretty(self, capsys):
        code, out, _ = call(capsys, 'analyze', figure_path('keven.kb'), '--pretty')
        assert code == 0
        assert 'FiniteSubsumption(Number, Even)' in out.splitlines()


class TestStateCommands:

    @pytest.mark.parametrize('schema, data', [
        ('fig4.ers', 'fig4_state.json'),
        ('fig7.oos', 'fig7_instance.json')
    ])
    def test_check_state(self, capsys, schema, data):
        code, out, _ = call(capsys, 'check-state', figure_path(schema), figure_path(data))
        assert code == 0
        assert json.loads(out)['ok']

    def test_illegal_state(self, capsys, tmp_path):
        path = tmp_path / 'state.json'
        path.write_text(json.dumps({'domain': ['c'], 'entities': {'Course': ['c']}}))
        code, out, _ = call(capsys, 'check-state', figure_path('fig4.ers'), str(path), '--pretty')
        assert code == 1
        assert out.splitlines()[0] == 'illegal'

    def test_state_needs_er_or_oo_schema(self, capsys):
        code, _, _ = call(capsys, 'check-state', figure_path('fig2.frm'), figure_path('fig4_state.json'))
        assert code == 2

    def test_malformed_state(self, capsys, tmp_path):
        path = tmp_path / 'state.json'
        path.write_text('{"entities": {}}')
        code, _, err = call(capsys, 'check-state', figure_path('fig4.ers'), str(path))
        assert code == 3
        assert 'domain' in error_report(err)['details']

    @pytest.mark.parametrize('schema, data', [
        ('fig4.ers', 'fig4_state.json'),
        ('fig7.oos', 'fig7_instance.json')
    ])
    def test_roundtrip(self, capsys, schema, data):
        code, out, _ = call(capsys, 'roundtrip', figure_path(schema), figure_path(data))
        assert code == 0
        report = json.loads(out)
        assert report['differences'] == []
        assert report['model']['ok']


class TestUsage:

    def test_unknown_verb(self):
        assert run(['explain']) == 2

    def test_missing_required_flag(self):
        assert run(['find-model', figure_path('keven.kb')]) == 2
