# File: schemadl/serializers/verdict_schema.py
"""
JSON output of reasoning verdicts and analyzer facts.
"""
from marshmallow import Schema, fields


class CardinalityFactSchema(Schema):
    kind = fields.Function(lambda fact: fact.kind.value)
    subject = fields.String()
    object = fields.String(allow_none=True)
    m = fields.Integer()
    n = fields.Integer()
    derivation = fields.Function(lambda fact: [str(a) for a in fact.derivation])
    text = fields.Function(lambda fact: str(fact))


class VerdictSchema(Schema):
    """Dumps a ReasoningVerdict; witness and certificate use their to_dict()"""

    outcome = fields.Function(lambda verdict: verdict.outcome.value)
    bound = fields.Integer()
    witness = fields.Method('dump_witness')
    facts = fields.List(fields.Nested(CardinalityFactSchema))
    caveat = fields.String()
    certificate = fields.Method('dump_certificate')

    def dump_witness(self, verdict):
        return verdict.witness.to_dict() if verdict.witness is not None else None

    def dump_certificate(self, verdict):
        return verdict.certificate.to_dict() if verdict.certificate is not None else None
