# File: tests/test_oo_mappings.py
"""Bad cycles, unfolding and the instance mappings"""
import pytest

from conftest import read_figure
from schemadl.models import BadCycle, Interpretation, OOInstance, Oid, RecVal, SetVal
from schemadl.serializers import load_oo_instance
from schemadl.services import EvaluationService, OOService


@pytest.fixture
def university_instance():
    return load_oo_instance(read_figure('fig7_instance.json'))


class TestBadCycles:

    def test_nested_model_satisfies_the_translation(self, nested_oo, nested_model):
        assert EvaluationService.is_model(OOService.translate_psi(nested_oo), nested_model).ok

    def test_one_bad_cycle(self, nested_oo, nested_model):
        assert OOService.find_bad_cycles(nested_oo, nested_model) == [
            BadCycle((2, 3), ((2, 'a1', 3), (3, 'a2', 2)))
        ]

    def test_value_edges_do_not_count(self, university_oo, university_instance):
        interp = OOService.alpha_oo(university_oo, university_instance)
        assert OOService.find_bad_cycles(university_oo, interp) == []


class TestUnfold:

    def test_unfold_at_depth_three(self, nested_oo, nested_model):
        unfolded = OOService.unfold(nested_oo, nested_model, 3)
        assert unfolded.size == 13
        assert OOService.find_bad_cycles(nested_oo, unfolded) == []
        assert len(unfolded.concept('AbstractClass')) == 2
        assert EvaluationService.is_model(OOService.translate_psi(nested_oo), unfolded).ok

    def test_copies_are_labelled_by_path(self, nested_oo, nested_model):
        unfolded = OOService.unfold(nested_oo, nested_model, 3)
        assert unfolded.labels[7] == 'v1/a1/v2'
        assert unfolded.concept('RecType') >= set(range(7, 13))

    def test_depth_zero_cuts_the_cycle(self, nested_oo, nested_model):
        unfolded = OOService.unfold(nested_oo, nested_model, 0)
        assert unfolded.size == 7
        assert OOService.find_bad_cycles(nested_oo, unfolded) == []
        assert (2, 3) not in unfolded.role('a1')

    def test_acyclic_interpretation_is_returned_as_is(self, university_oo, university_instance):
        interp = OOService.alpha_oo(university_oo, university_instance)
        assert OOService.unfold(university_oo, interp, 2) is interp

    def test_negative_depth(self, nested_oo, nested_model):
        with pytest.raises(ValueError):
            OOService.unfold(nested_oo, nested_model, -1)


class TestBetaOO:

    def test_nested_model_becomes_a_legal_instance(self, nested_oo, nested_model):
        instance = OOService.beta_oo(nested_oo, nested_model)
        assert instance.oids == {'o1', 'o2'}
        assert instance.extension('C') == {'o1', 'o2'}
        assert OOService.check_legal_instance(nested_oo, instance).ok

    def test_folded_values(self, nested_oo, nested_model):
        instance = OOService.beta_oo(nested_oo, nested_model)
        o2 = Oid('o2')
        assert instance.rho['o2'] == RecVal.of({
            'a1': RecVal.of({'a2': RecVal.of({'a3': o2})})
        })
        assert instance.rho['o1'] == RecVal.of({
            'a1': RecVal.of({'a2': RecVal.of({'a1': RecVal(), 'a3': o2})}),
            'a3': o2
        })

    def test_only_abstract_class_individuals_become_objects(self, nested_oo):
        interp = Interpretation(
            2,
            {'C': {0}, 'AbstractClass': {0}},
            {'value': {(0, 1)}, 'a1': {(1, 1)}}
        )
        instance = OOService.beta_oo(nested_oo, interp)
        assert instance.oids == {'0'}
        assert instance.extension('C') == {'0'}
        assert instance.rho == {'0': RecVal()}

    def test_unreached_individuals_are_dropped(self, nested_oo):
        interp = Interpretation(3, {'AbstractClass': {2}}, {})
        instance = OOService.beta_oo(nested_oo, interp)
        assert instance.oids == {'2'}


class TestAlphaOO:

    def test_university_instance(self, university_oo, university_instance):
        interp = OOService.alpha_oo(university_oo, university_instance)
        assert interp.size == 7
        assert interp.labels[:4] == ('c1', 'p1', 's1', 's2')
        assert interp.concept('AbstractClass') == {0, 1, 2, 3}
        assert len(interp.concept('RecType')) == 2
        (set_individual,) = interp.concept('SetType')
        assert {e for d, e in interp.role('member') if d == set_individual} == {2, 3}

    @pytest.mark.parametrize('close_opaque', [False, True])
    def test_legal_instance_gives_a_model(self, university_oo, university_instance, close_opaque):
        kb = OOService.translate_psi(university_oo, close_opaque=close_opaque)
        interp = OOService.alpha_oo(university_oo, university_instance)
        assert EvaluationService.is_model(kb, interp).ok

    def test_illegal_instance_is_not_a_model(self, university_oo, university_instance):
        rho = dict(university_instance.rho)
        rho['p1'] = RecVal()
        broken = OOInstance(university_instance.oids, university_instance.pi, rho)
        interp = OOService.alpha_oo(university_oo, broken)
        assert not EvaluationService.is_model(OOService.translate_psi(university_oo), interp).ok

    def test_round_trip(self, university_oo, university_instance):
        back = OOService.beta_oo(university_oo, OOService.alpha_oo(university_oo, university_instance))
        assert back.oids == university_instance.oids
        assert back.rho == university_instance.rho
        for name in university_oo.class_names:
            assert back.extension(name) == university_instance.extension(name)

    def test_nested_sets(self, university_oo):
        inner = SetVal(frozenset({Oid('s1')}))
        instance = OOInstance(frozenset({'s1'}), {'Student': {'s1'}}, {'s1': SetVal(frozenset({inner, SetVal()}))})
        back = OOService.beta_oo(university_oo, OOService.alpha_oo(university_oo, instance))
        assert back.rho == instance.rho
