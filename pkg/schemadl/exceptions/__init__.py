# File: schemadl/exceptions/__init__.py
"""Custom exceptions for the schema toolkit"""
from .custom_exceptions import (
    EXIT_NEGATIVE,
    EXIT_USAGE,
    EXIT_INPUT,
    SchemaDLException,
    KBSyntaxError,
    UndeclaredSymbolError,
    UnknownSymbolError,
    SignatureMismatchError,
    InvalidBudgetError,
    InexpressibleNegationError,
    SchemaValidationError,
    InputFormatError,
    RepairLimitExceededError,
    ConflictEliminationError,
    PreconditionError,
    UsageError
)

__all__ = [
    'EXIT_NEGATIVE',
    'EXIT_USAGE',
    'EXIT_INPUT',
    'SchemaDLException',
    'KBSyntaxError',
    'UndeclaredSymbolError',
    'UnknownSymbolError',
    'SignatureMismatchError',
    'InvalidBudgetError',
    'InexpressibleNegationError',
    'SchemaValidationError',
    'InputFormatError',
    'RepairLimitExceededError',
    'ConflictEliminationError',
    'PreconditionError',
    'UsageError'
]
