# File: schemadl/serializers/database_state_schema.py
"""
JSON format of ER database states:

    {"domain": [ind, ...], "entities": {E: [ind, ...]},
     "attrs": {A: [[ind, "D#k"], ...]}, "rels": {R: [{U: ind, ...}, ...]}}
"""
from marshmallow import Schema, ValidationError, fields, post_load, validate, validates_schema

from schemadl.models.er_schema import DatabaseState, LabeledTuple, value_domain
from schemadl.serializers.base import load_json_text


class DatabaseStateSchema(Schema):
    """
    Loads a DatabaseState.

    Validation rules:
    1. Attribute values are basic values "D#k"
    2. Individuals are not written like basic values
    """

    domain = fields.List(fields.String(), required=True)
    entities = fields.Dict(keys=fields.String(), values=fields.List(fields.String()), load_default=dict)
    attrs = fields.Dict(
        keys=fields.String(),
        values=fields.List(fields.List(fields.String(), validate=validate.Length(equal=2))),
        load_default=dict
    )
    rels = fields.Dict(
        keys=fields.String(),
        values=fields.List(fields.Dict(keys=fields.String(), values=fields.String())),
        load_default=dict
    )

    @validates_schema
    def validate_values(self, data, **kwargs):
        errors = {}
        for name, pairs in data.get('attrs', {}).items():
            bad = [value for _, value in pairs if value_domain(value) is None]
            if bad:
                errors.setdefault('attrs', {})[name] = [f"not basic values of the form D#k: {bad}"]
        bad = [ind for ind in data.get('domain', []) if value_domain(ind) is not None]
        if bad:
            errors['domain'] = [f"individuals written as basic values: {bad}"]
        if errors:
            raise ValidationError(errors)

    @post_load
    def make_state(self, data, **kwargs):
        return DatabaseState(
            frozenset(data['domain']),
            {name: frozenset(ext) for name, ext in data['entities'].items()},
            {name: frozenset(tuple(p) for p in pairs) for name, pairs in data['attrs'].items()},
            {name: frozenset(LabeledTuple.of(t) for t in tuples) for name, tuples in data['rels'].items()}
        )


def load_database_state(text):
    return load_json_text(DatabaseStateSchema(), text, 'database state')
