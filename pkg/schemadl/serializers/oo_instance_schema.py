# File: schemadl/serializers/oo_instance_schema.py
"""
JSON format of object-oriented instances:

    {"oids": [o, ...], "pi": {C: [o, ...]}, "rho": {o: value}}

with values tagged {"oid": o}, {"set": [value, ...]} or {"rec": {A: value}}.
"""
from marshmallow import Schema, ValidationError, fields, post_load, validates_schema

from schemadl.models.oo_schema import OOInstance, Oid, RecVal, SetVal
from schemadl.serializers.base import load_json_text


class ValueField(fields.Field):
    """Recursive tagged value"""

    def _serialize(self, value, attr, obj, **kwargs):
        if value is None:
            return None
        return value.to_json()

    def _deserialize(self, value, attr, data, **kwargs):
        return _value(value, attr or 'value')


def _value(data, where):
    if not isinstance(data, dict) or len(data) != 1:
        raise ValidationError(f"{where}: a value is an object with one of the keys oid, set, rec")
    (tag, body), = data.items()
    if tag == 'oid':
        if not isinstance(body, str):
            raise ValidationError(f"{where}: oid must be a string")
        return Oid(body)
    if tag == 'set':
        if not isinstance(body, list):
            raise ValidationError(f"{where}: set must be a list")
        return SetVal(frozenset(_value(item, f"{where}.set") for item in body))
    if tag == 'rec':
        if not isinstance(body, dict):
            raise ValidationError(f"{where}: rec must be an object")
        return RecVal.of({label: _value(item, f"{where}.{label}") for label, item in body.items()})
    raise ValidationError(f"{where}: unknown value tag '{tag}'")


class OOInstanceSchema(Schema):
    """Loads an OOInstance; π and ρ may only use listed object identifiers"""

    oids = fields.List(fields.String(), required=True)
    pi = fields.Dict(keys=fields.String(), values=fields.List(fields.String()), load_default=dict)
    rho = fields.Dict(keys=fields.String(), values=ValueField(), load_default=dict)

    @validates_schema
    def validate_oids(self, data, **kwargs):
        known = set(data.get('oids', []))
        unknown = sorted(set(data.get('rho', {})) - known)
        if unknown:
            raise ValidationError({'rho': [f"values for unknown object identifiers {unknown}"]})

    @post_load
    def make_instance(self, data, **kwargs):
        return OOInstance(
            frozenset(data['oids']),
            {name: frozenset(ext) for name, ext in data['pi'].items()},
            dict(data['rho'])
        )


def load_oo_instance(text):
    return load_json_text(OOInstanceSchema(), text, 'object-oriented instance')


__all__ = ['OOInstanceSchema', 'ValueField', 'load_oo_instance']
