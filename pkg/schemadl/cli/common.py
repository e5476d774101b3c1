# File: schemadl/cli/common.py
"""
Helpers shared by the command modules: loading inputs by file extension,
search budgets from flags, and report output.
"""
import logging
import os
import sys
from dataclasses import dataclass
from typing import Any

from schemadl.exceptions import UsageError
from schemadl.models.knowledge_base import KnowledgeBase
from schemadl.models.verdict import SearchBudget
from schemadl.parsers import parse_er, parse_frames, parse_kb, parse_oo
from schemadl.serializers import dump_json
from schemadl.services import ERService, FrameService, OOService

logger = logging.getLogger(__name__)

SOURCE_KINDS = ('kb', 'frm', 'ers', 'oos')


@dataclass(frozen=True)
class Source:
    """
    An input file with its translation.

    Attributes:
        kind: kb, frm, ers or oos
        kb: Knowledge base to reason over
        schema: Parsed FrameKB / ERSchema / OOSchema (None for .kb)
    """
    kind: str
    kb: KnowledgeBase
    schema: Any = None


def read_text(path):
    with open(path, encoding='utf-8') as handle:
        return handle.read()


def source_kind(path, declared=None):
    """Input kind from --from, or else from the file extension"""
    if declared:
        return declared
    extension = os.path.splitext(path)[1].lstrip('.').lower()
    if extension not in SOURCE_KINDS:
        raise UsageError(f"Cannot tell the format of '{path}'; use one of .kb .frm .ers .oos")
    return extension


def load_source(path, app_config, declared=None, elide_disjointness=False, close_opaque=True):
    """
    Parse a file and translate it to a knowledge base.

    Object-oriented schemas are closed over their opaque classes unless
    close_opaque is False, which gives the plain translation.
    """
    kind = source_kind(path, declared)
    text = read_text(path)
    if kind == 'kb':
        return Source(kind, parse_kb(text, app_config.AUTO_DECLARE))
    if kind == 'frm':
        frame_kb = parse_frames(text)
        return Source(kind, FrameService.translate_theta(frame_kb), frame_kb)
    if kind == 'ers':
        schema = parse_er(text)
        return Source(kind, ERService.translate_phi(schema, elide_disjointness), schema)
    schema = parse_oo(text)
    return Source(kind, OOService.translate_psi(schema, close_opaque=close_opaque), schema)


def add_budget_flags(parser):
    parser.add_argument('--min', type=int, default=None, help='smallest domain size to try')
    parser.add_argument('--max', type=int, default=None, help='largest domain size to try')
    parser.add_argument('--time', type=float, default=None, help='time limit in seconds')


def budget_from(args, app_config):
    return SearchBudget.from_config(app_config, args.min, args.max, args.time)


def emit(data, app_config):
    """Write a JSON report to stdout"""
    sys.stdout.write(dump_json(data, app_config.JSON_INDENT) + '\n')


def emit_text(text):
    sys.stdout.write(text if text.endswith('\n') else text + '\n')
