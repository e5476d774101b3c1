# File: schemadl/cli/translate.py
"""
Translation commands: translate and depth.
"""
import logging

from schemadl.cli.common import emit_text, load_source, read_text, source_kind
from schemadl.exceptions import UsageError
from schemadl.parsers import parse_oo, render_kb
from schemadl.services import OOService

logger = logging.getLogger(__name__)


def register(subparsers, common):
    translate = subparsers.add_parser('translate', help='translate a schema to .kb text', parents=[common])
    translate.add_argument('path')
    translate.add_argument('--from', dest='source', choices=('kb', 'frm', 'ers', 'oos'))
    translate.add_argument(
        '--elide-disjointness', action='store_true',
        help='ER display form: leave out disjointness and merge assertions per concept'
    )
    translate.set_defaults(handler=translate_command)

    depth = subparsers.add_parser('depth', help='nesting depth of an object-oriented schema', parents=[common])
    depth.add_argument('path')
    depth.set_defaults(handler=depth_command)


def translate_command(args, app_config):
    """
    Print the translated knowledge base.

    Example:
        translate --from frm figures/fig2.frm
    """
    kind = source_kind(args.path, args.source)
    if args.elide_disjointness and kind != 'ers':
        raise UsageError("--elide-disjointness applies to .ers input only")
    source = load_source(
        args.path, app_config, kind,
        elide_disjointness=args.elide_disjointness, close_opaque=False
    )
    emit_text(render_kb(source.kb, collapse=args.elide_disjointness))
    return 0


def depth_command(args, app_config):
    """
    Print "schema depth: N"; --pretty adds the depth of each declared class.
    """
    if source_kind(args.path) != 'oos':
        raise UsageError("depth applies to .oos schemas only")
    schema = parse_oo(read_text(args.path))
    lines = [f"schema depth: {OOService.schema_depth(schema)}"]
    if args.pretty:
        for name, value in sorted(OOService.class_depths(schema).items()):
            lines.append(f"  {name}: {value}")
    emit_text('\n'.join(lines))
    return 0
