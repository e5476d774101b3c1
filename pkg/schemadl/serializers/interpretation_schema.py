# File: schemadl/serializers/interpretation_schema.py
"""
JSON format of finite interpretations:

    {"domain": n, "concepts": {A: [i, ...]}, "roles": {P: [[i, j], ...]},
     "labels": [str, ...]}
"""
from marshmallow import Schema, ValidationError, fields, post_load, validate, validates_schema

from schemadl.models.interpretation import Interpretation
from schemadl.serializers.base import load_json_text


class InterpretationSchema(Schema):
    """Loads an Interpretation; every index must lie in range(domain)"""

    domain = fields.Integer(required=True, strict=True, validate=validate.Range(min=0))
    concepts = fields.Dict(
        keys=fields.String(),
        values=fields.List(fields.Integer(strict=True)),
        load_default=dict
    )
    roles = fields.Dict(
        keys=fields.String(),
        values=fields.List(fields.List(fields.Integer(strict=True), validate=validate.Length(equal=2))),
        load_default=dict
    )
    labels = fields.List(fields.String(), load_default=None, allow_none=True)

    @validates_schema
    def validate_ranges(self, data, **kwargs):
        size = data['domain']
        errors = {}
        for name, extension in data.get('concepts', {}).items():
            outside = [i for i in extension if not 0 <= i < size]
            if outside:
                errors.setdefault('concepts', {})[name] = [f"individuals {outside} outside 0..{size - 1}"]
        for name, pairs in data.get('roles', {}).items():
            outside = [p for p in pairs if not all(0 <= i < size for i in p)]
            if outside:
                errors.setdefault('roles', {})[name] = [f"pairs {outside} outside 0..{size - 1}"]
        labels = data.get('labels')
        if labels is not None and len(labels) != size:
            errors['labels'] = [f"expected {size} labels, got {len(labels)}"]
        if errors:
            raise ValidationError(errors)

    @post_load
    def make_interpretation(self, data, **kwargs):
        labels = data.get('labels')
        return Interpretation(
            data['domain'],
            {name: frozenset(ext) for name, ext in data['concepts'].items()},
            {name: frozenset(tuple(p) for p in pairs) for name, pairs in data['roles'].items()},
            tuple(labels) if labels is not None else None
        )


def load_interpretation(text):
    return load_json_text(InterpretationSchema(), text, 'interpretation')
