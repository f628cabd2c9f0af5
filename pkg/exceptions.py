"""Custom exception hierarchy for irredforge.

Separates caller mistakes (bad inputs, worth a one-line diagnostic and
exit status 2) from internal invariant failures (a bug or a corrupted
computation, exit status 1).

Hierarchy
---------
IrredForgeError
├── PreconditionError          — input violates a documented precondition
│   ├── FieldMismatchError     — operands live in different fields
│   ├── FieldZeroDivisionError — inverse of zero
│   └── IntegerRangeError      — integer outside the 64-bit cap
├── ParseError                 — malformed field / element / polynomial / JSON text
├── ConfigurationError         — invalid run configuration
└── InvariantError             — an internal invariant failed
"""


class IrredForgeError(Exception):
    """Base exception for all irredforge-classified errors."""


class PreconditionError(IrredForgeError):
    """An operation was called with inputs outside its domain."""


class FieldMismatchError(PreconditionError):
    """Elements or polynomials from different fields were combined."""


class FieldZeroDivisionError(PreconditionError, ZeroDivisionError):
    """Inverse (or division) of the zero element or zero polynomial."""


class IntegerRangeError(PreconditionError):
    """Integer input exceeds the supported 64-bit range."""


class ParseError(IrredForgeError):
    """Text or JSON input could not be parsed into a field object."""


class ConfigurationError(IrredForgeError):
    """Invalid run parameters — will never succeed without changing the input."""


class InvariantError(IrredForgeError):
    """An internal consistency check failed (e.g. coefficient descent, cycle cap)."""
