# File: schemadl/cli/reasoning.py
"""
Reasoning commands: check-model, find-model, subsumes and analyze.
"""
import logging

from schemadl.cli.common import (
    add_budget_flags, budget_from, emit, emit_text, load_source, read_text
)
from schemadl.exceptions import EXIT_NEGATIVE
from schemadl.models.concept import Atomic, is_identifier
from schemadl.models.frame import FrameDefinition
from schemadl.models.verdict import FactKind, Outcome
from schemadl.parsers import parse_concept, parse_frame_expression
from schemadl.serializers import CardinalityFactSchema, VerdictSchema, load_interpretation
from schemadl.services import (
    CardinalityAnalyzer, ERService, EvaluationService, FrameService, ModelSearchEngine, OOService
)

logger = logging.getLogger(__name__)


def register(subparsers, common):
    check_model = subparsers.add_parser('check-model', help='check an interpretation against a KB', parents=[common])
    check_model.add_argument('path')
    check_model.add_argument('interpretation')
    check_model.set_defaults(handler=check_model_command)

    find_model = subparsers.add_parser('find-model', help='search a finite model with a nonempty goal', parents=[common])
    find_model.add_argument('path')
    find_model.add_argument('--goal', required=True)
    add_budget_flags(find_model)
    find_model.set_defaults(handler=find_model_command)

    subsumes = subparsers.add_parser('subsumes', help='look for a counterexample to LHS ⊑ RHS', parents=[common])
    subsumes.add_argument('path')
    subsumes.add_argument('--lhs', required=True)
    subsumes.add_argument('--rhs', required=True)
    add_budget_flags(subsumes)
    subsumes.set_defaults(handler=subsumes_command)

    analyze = subparsers.add_parser('analyze', help='derive cardinality facts', parents=[common])
    analyze.add_argument('path')
    analyze.set_defaults(handler=analyze_command)


def check_model_command(args, app_config):
    """Exit 0 when the interpretation is a model, 1 otherwise"""
    source = load_source(args.path, app_config)
    interp = load_interpretation(read_text(args.interpretation))
    report = EvaluationService.is_model(source.kb, interp)
    if args.pretty:
        lines = ['model' if report.ok else 'not a model']
        lines += [f"  {v.rule}: {v.message}" for v in report.violations]
        emit_text('\n'.join(lines))
    else:
        emit(report.to_dict(), app_config)
    return 0 if report.ok else EXIT_NEGATIVE


def find_model_command(args, app_config):
    """
    Goals naming an entity or relationship (.ers), a frame (.frm) or a
    type (.oos) go to the front-end services, which attach certificates;
    other goals are concept expressions over the translated KB.

    Exit 0 on WitnessFound, 1 otherwise.
    """
    source = load_source(args.path, app_config)
    budget = budget_from(args, app_config)
    goal = args.goal.strip()

    if source.kind == 'ers' and goal in source.schema.entities:
        verdict = ERService.er_entity_satisfiable(source.schema, goal, budget, app_config)
    elif source.kind == 'ers' and goal in source.schema.rel:
        verdict = ERService.er_relationship_satisfiable(source.schema, goal, budget, app_config)
    elif source.kind == 'frm' and goal in source.schema.frame_names:
        verdict = FrameService.frame_consistent(source.schema, goal, budget, app_config)
    elif source.kind == 'oos':
        verdict = OOService.oo_type_consistent(source.schema, goal, budget, app_config)
    else:
        verdict = ModelSearchEngine.find_model(source.kb, parse_concept(goal), budget, app_config)

    _emit_verdict(verdict, args, app_config)
    return 0 if verdict.found else EXIT_NEGATIVE


def subsumes_command(args, app_config):
    """
    Exit 0 when no counterexample exists up to the bound or the analyzer
    proves the subsumption, 1 when refuted or timed out.
    """
    source = load_source(args.path, app_config)
    budget = budget_from(args, app_config)
    lhs, rhs = args.lhs.strip(), args.rhs.strip()

    if source.kind == 'ers' and lhs in source.schema.entities and rhs in source.schema.entities:
        verdict = ERService.er_inherits(source.schema, lhs, rhs, budget, app_config)
    elif source.kind == 'oos':
        verdict = OOService.oo_subtype(source.schema, lhs, rhs, budget, app_config)
    elif source.kind == 'frm' and lhs in source.schema.frame_names:
        if is_identifier(rhs):
            expression = FrameDefinition(None, (rhs,))
        else:
            expression = parse_frame_expression(rhs)
        verdict = FrameService.frame_more_general(source.schema, lhs, expression, budget, app_config)
    else:
        sub, sup = parse_concept(lhs), parse_concept(rhs)
        verdict = ModelSearchEngine.subsumption_counterexample(source.kb, sub, sup, budget, app_config)
        if isinstance(sub, Atomic) and isinstance(sup, Atomic):
            verdict = _with_proof(source.kb, verdict, sub.name, sup.name)

    _emit_verdict(verdict, args, app_config)
    if verdict.found:
        return EXIT_NEGATIVE
    if verdict.outcome == Outcome.NO_MODEL_UP_TO or verdict.facts:
        return 0
    return EXIT_NEGATIVE


def analyze_command(args, app_config):
    source = load_source(args.path, app_config)
    facts = CardinalityAnalyzer.analyze_cardinalities(source.kb)
    if args.pretty:
        emit_text('\n'.join(str(fact) for fact in facts) or 'no facts')
    else:
        emit(CardinalityFactSchema(many=True).dump(facts), app_config)
    return 0


def _with_proof(kb, verdict, sub, sup):
    facts = tuple(
        fact for fact in CardinalityAnalyzer.analyze_cardinalities(kb)
        if (fact.kind in (FactKind.SUBSET, FactKind.FINITE_SUBSUMPTION)
            and fact.subject == sub and fact.object == sup)
        or (fact.kind == FactKind.FINITE_INCONSISTENT and fact.subject == sub)
    )
    if not facts or verdict.found:
        return verdict
    return verdict.replace(
        facts=facts,
        caveat=f"Proved in every finite model: {facts[0]}. {verdict.caveat}"
    )


def _emit_verdict(verdict, args, app_config):
    if not args.pretty:
        emit(VerdictSchema().dump(verdict), app_config)
        return
    lines = [str(verdict), verdict.caveat]
    lines += [f"  {fact}" for fact in verdict.facts]
    if verdict.witness is not None:
        interp = verdict.witness
        for name, extension in sorted(interp.concepts.items()):
            if extension:
                lines.append(f"  {name} = {{{', '.join(interp.label(d) for d in sorted(extension))}}}")
        for name, pairs in sorted(interp.roles.items()):
            if pairs:
                edges = ', '.join(f"({interp.label(a)},{interp.label(b)})" for a, b in sorted(pairs))
                lines.append(f"  {name} = {{{edges}}}")
    emit_text('\n'.join(lines))
