# File: schemadl/parsers/__init__.py
"""Surface-language parsers and renderers"""
from .kb_parser import parse_concept, parse_kb, render_kb
from .frame_parser import parse_frame_expression, parse_frames, render_frames
from .er_parser import parse_er, render_er
from .oo_parser import parse_oo, parse_type_expression, render_oo

__all__ = [
    'parse_concept',
    'parse_kb',
    'render_kb',
    'parse_frame_expression',
    'parse_frames',
    'render_frames',
    'parse_er',
    'render_er',
    'parse_oo',
    'parse_type_expression',
    'render_oo'
]
