# File: schemadl/cli/__init__.py
"""
Command line entry point.

Exit codes: 0 success or positive answer, 1 negative answer (no model,
refuted, illegal), 2 usage error, 3 input error.
"""
import argparse
import logging
import sys

from schemadl import __version__, configure_logging
from schemadl.config import config, get_config
from schemadl.exceptions import EXIT_INPUT, EXIT_USAGE, SchemaDLException
from schemadl.serializers import dump_json

logger = logging.getLogger(__name__)


def build_parser():
    parser = argparse.ArgumentParser(
        prog='schemadl',
        description='Translate frame, ER and object-oriented schemas to description logic and reason over them.'
    )
    parser.add_argument('--version', action='version', version=f"%(prog)s {__version__}")
    # Flags accepted after every verb
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--env', choices=sorted(config), default=None, help='configuration to use')
    common.add_argument('--pretty', action='store_true', help='human readable text instead of JSON')
    subparsers = parser.add_subparsers(dest='verb', required=True, metavar='verb')

    # Command modules register their verbs on the shared subparsers
    from schemadl.cli import reasoning, states, translate
    translate.register(subparsers, common)
    reasoning.register(subparsers, common)
    states.register(subparsers, common)
    return parser


def run(argv=None):
    """
    Run one command.

    Args:
        argv: Arguments without the program name (defaults to sys.argv[1:])

    Returns:
        Exit code
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE

    app_config = get_config(args.env)
    configure_logging(app_config)
    logger.debug("Running %s with %s", args.verb, app_config.__name__)

    try:
        return args.handler(args, app_config)
    except SchemaDLException as e:
        logger.info("%s failed: %s", args.verb, e.message)
        sys.stderr.write(dump_json(e.to_dict()) + '\n')
        return e.exit_code
    except OSError as e:
        sys.stderr.write(dump_json({'error': str(e), 'exitCode': EXIT_INPUT}) + '\n')
        return EXIT_INPUT


def main():
    sys.exit(run())


__all__ = ['run', 'main', 'build_parser']
