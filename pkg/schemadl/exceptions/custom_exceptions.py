# File: schemadl/exceptions/custom_exceptions.py
"""
Custom exception classes for parsing, validation and reasoning errors.
Each carries a process exit code and a payload for JSON error reports.
"""

# Exit codes shared with the command line surface
EXIT_NEGATIVE = 1
EXIT_USAGE = 2
EXIT_INPUT = 3


class SchemaDLException(Exception):
    """Base exception for all toolkit errors"""

    def __init__(self, message, exit_code=EXIT_INPUT, payload=None):
        super().__init__(message)
        self.message = message
        self.exit_code = exit_code
        self.payload = payload

    def to_dict(self):
        """Convert exception to dictionary for a JSON error report"""
        rv = dict(self.payload or ())
        rv['error'] = self.message
        rv['exitCode'] = self.exit_code
        return rv


class KBSyntaxError(SchemaDLException):
    """
    Raised when text does not follow one of the surface grammars
    (.kb, .frm, .ers, .oos). Line and column are 1-based.
    """

    def __init__(self, message, line, column, source='kb'):
        super().__init__(f"{source}:{line}:{column}: {message}")
        self.line = line
        self.column = column
        self.payload = {
            'source': source,
            'line': line,
            'column': column
        }


class UndeclaredSymbolError(SchemaDLException):
    """
    Raised when a .kb file uses a symbol it never declares while
    auto-declaration is switched off.
    """

    def __init__(self, symbol, line, column):
        message = f"{line}:{column}: symbol '{symbol}' is used but not declared"
        super().__init__(message)
        self.payload = {
            'symbol': symbol,
            'line': line,
            'column': column
        }


class UnknownSymbolError(SchemaDLException):
    """
    Raised when a name is not part of the relevant signature.
    Example: evaluating a concept over an interpretation that lacks it,
    or asking about an undeclared frame, entity or class.
    """

    def __init__(self, symbol, kind='symbol'):
        message = f"Unknown {kind} '{symbol}'"
        super().__init__(message)
        self.payload = {
            'symbol': symbol,
            'kind': kind
        }


class SignatureMismatchError(SchemaDLException):
    """Raised when two signatures that must agree do not"""

    def __init__(self, missing=(), extra=()):
        missing = sorted(missing)
        extra = sorted(extra)
        message = f"Signature mismatch. Missing: {missing}, Unexpected: {extra}"
        super().__init__(message)
        self.payload = {
            'missing': missing,
            'unexpected': extra
        }


class InvalidBudgetError(SchemaDLException):
    """
    Raised when search budget limits are violated.
    Examples:
    - min size below 1
    - min size above max size
    - max size above the configured domain limit
    - non-positive time limit
    """

    def __init__(self, message, min_size=None, max_size=None, time_limit=None):
        super().__init__(message, exit_code=EXIT_USAGE)
        self.payload = {
            'minSize': min_size,
            'maxSize': max_size,
            'timeLimit': time_limit
        }


class InexpressibleNegationError(SchemaDLException):
    """Raised when the complement of an expression leaves the concept language"""

    def __init__(self, expression):
        message = f"Cannot negate '{expression}' inside the concept language"
        super().__init__(message)
        self.payload = {'expression': str(expression)}


class SchemaValidationError(SchemaDLException):
    """
    Raised when a frame, ER or OO schema is not well formed.
    Examples:
    - duplicate frame definition or class declaration
    - ER role reused across relationships
    - cardinality declared for an entity that is not below the primary entity
    - empty Record type
    """

    def __init__(self, message, details=None):
        super().__init__(message)
        self.payload = dict(details or {})


class InputFormatError(SchemaDLException):
    """Raised when a JSON input file does not match its schema"""

    def __init__(self, message, errors=None):
        super().__init__(message)
        self.payload = {'details': errors or {}}


class RepairLimitExceededError(SchemaDLException):
    """
    Raised when conflict elimination would need more individuals
    than the configured limit allows.
    """

    def __init__(self, relationship, conflicts, size, limit):
        message = (
            f"Eliminating {conflicts} conflicts in '{relationship}' needs "
            f"{size} individuals, limit is {limit}"
        )
        super().__init__(message)
        self.payload = {
            'relationship': relationship,
            'conflicts': conflicts,
            'size': size,
            'limit': limit
        }


class ConflictEliminationError(SchemaDLException):
    """Raised when copy-and-exchange leaves conflict sets behind"""

    def __init__(self, relationship, remaining):
        message = f"Relationship '{relationship}' still has {remaining} conflict sets"
        super().__init__(message)
        self.payload = {
            'relationship': relationship,
            'remaining': remaining
        }


class UsageError(SchemaDLException):
    """Raised for inconsistent command line arguments"""

    def __init__(self, message):
        super().__init__(message, exit_code=EXIT_USAGE)


class PreconditionError(SchemaDLException):
    """
    Raised when an operation is applied outside its domain.
    Example: repairing an interpretation that is not a model.
    """

    def __init__(self, message, details=None):
        super().__init__(message)
        self.payload = dict(details or {})
