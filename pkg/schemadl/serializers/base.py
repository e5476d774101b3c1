# File: schemadl/serializers/base.py
"""
Shared loading helper: marshmallow validation errors become InputFormatError.
"""
import json
import logging

from marshmallow import ValidationError

from schemadl.exceptions import InputFormatError

logger = logging.getLogger(__name__)


def load_with(schema, data, what):
    """
    Validate and load parsed JSON with a marshmallow schema.

    Raises:
        InputFormatError: With marshmallow's error messages as details
    """
    try:
        return schema.load(data)
    except ValidationError as e:
        logger.debug("Rejected %s: %s", what, e.messages)
        raise InputFormatError(f"Invalid {what}", e.messages)


def load_json_text(schema, text, what):
    """Parse JSON text, then load it with a marshmallow schema"""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise InputFormatError(f"Invalid {what}: {e.msg} at line {e.lineno}", {'line': e.lineno})
    return load_with(schema, data, what)


def dump_json(data, indent=None):
    """Deterministic JSON text"""
    return json.dumps(data, sort_keys=True, indent=indent, ensure_ascii=False)
