# File: schemadl/serializers/__init__.py
from .base import dump_json, load_json_text, load_with
from .database_state_schema import DatabaseStateSchema, load_database_state
from .interpretation_schema import InterpretationSchema, load_interpretation
from .oo_instance_schema import OOInstanceSchema, ValueField, load_oo_instance
from .verdict_schema import CardinalityFactSchema, VerdictSchema

__all__ = [
    'dump_json',
    'load_json_text',
    'load_with',
    'DatabaseStateSchema',
    'load_database_state',
    'InterpretationSchema',
    'load_interpretation',
    'OOInstanceSchema',
    'ValueField',
    'load_oo_instance',
    'CardinalityFactSchema',
    'VerdictSchema'
]
