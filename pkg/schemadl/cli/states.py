# File: schemadl/cli/states.py
"""
Commands over database states and instances: check-state and roundtrip.
"""
import logging

from schemadl.cli.common import emit, emit_text, read_text, source_kind
from schemadl.exceptions import EXIT_NEGATIVE, UsageError
from schemadl.parsers import parse_er, parse_oo
from schemadl.serializers import load_database_state, load_oo_instance
from schemadl.services import ERService, EvaluationService, OOService

logger = logging.getLogger(__name__)


def register(subparsers, common):
    check_state = subparsers.add_parser(
        'check-state', help='check a database state (.ers) or instance (.oos)', parents=[common]
    )
    check_state.add_argument('schema')
    check_state.add_argument('data')
    check_state.set_defaults(handler=check_state_command)

    roundtrip = subparsers.add_parser(
        'roundtrip', help='map a state or instance to an interpretation and back', parents=[common]
    )
    roundtrip.add_argument('schema')
    roundtrip.add_argument('data')
    roundtrip.set_defaults(handler=roundtrip_command)


def _load(args):
    kind = source_kind(args.schema)
    if kind == 'ers':
        return kind, parse_er(read_text(args.schema)), load_database_state(read_text(args.data))
    if kind == 'oos':
        return kind, parse_oo(read_text(args.schema)), load_oo_instance(read_text(args.data))
    raise UsageError(f"'{args.schema}' is not an .ers or .oos schema")


def check_state_command(args, app_config):
    """Exit 0 when legal, 1 otherwise"""
    kind, schema, data = _load(args)
    if kind == 'ers':
        report = ERService.check_legal(schema, data)
    else:
        report = OOService.check_legal_instance(schema, data)
    if args.pretty:
        lines = ['legal' if report.ok else 'illegal']
        lines += [f"  {v.rule}: {v.message}" for v in report.violations]
        emit_text('\n'.join(lines))
    else:
        emit(report.to_dict(), app_config)
    return 0 if report.ok else EXIT_NEGATIVE


def roundtrip_command(args, app_config):
    """
    Run α then β and list what differs from the input. ER states keep
    entity extensions and the sizes of attribute and relationship
    extensions; instances keep π and ρ.

    Exit 0 when nothing differs, 1 otherwise.
    """
    kind, schema, data = _load(args)
    if kind == 'ers':
        interp = ERService.alpha_er(schema, data)
        kb = ERService.translate_phi(schema)
        back = ERService.beta_er(schema, interp)
        differences = _er_differences(schema, data, back)
    else:
        interp = OOService.alpha_oo(schema, data)
        kb = OOService.translate_psi(schema)
        back = OOService.beta_oo(schema, interp)
        differences = _oo_differences(schema, data, back)
    model = EvaluationService.is_model(kb, interp)

    if args.pretty:
        lines = [
            f"interpretation: {interp.size} individuals, {'a model' if model.ok else 'not a model'}",
            'round trip preserved' if not differences else 'round trip differs:'
        ]
        lines += [f"  {d}" for d in differences]
        emit_text('\n'.join(lines))
    else:
        emit({
            'interpretation': interp.to_dict(),
            'model': model.to_dict(),
            'result': back.to_dict(),
            'differences': differences
        }, app_config)
    return 0 if not differences else EXIT_NEGATIVE


def _er_differences(schema, before, after):
    differences = []
    for entity in schema.entities:
        if before.entity(entity) != after.entity(entity):
            differences.append(f"entity {entity}")
    for attribute in sorted(schema.attributes):
        if len(before.attribute(attribute)) != len(after.attribute(attribute)):
            differences.append(f"attribute {attribute}")
    for relationship in schema.rel:
        if len(before.relationship(relationship)) != len(after.relationship(relationship)):
            differences.append(f"relationship {relationship}")
    return differences


def _oo_differences(schema, before, after):
    differences = []
    if before.oids != after.oids:
        differences.append('oids')
    for name in sorted(schema.class_names):
        if before.extension(name) != after.extension(name):
            differences.append(f"class {name}")
    for oid in sorted(before.oids):
        if before.rho.get(oid) != after.rho.get(oid):
            differences.append(f"value of {oid}")
    return differences
