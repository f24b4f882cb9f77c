"""Exception taxonomy shared across the package.

Exit-code mapping used by the CLI: precondition violations map to 3,
capability errors (requests the library refuses on principle, such as
number-field arithmetic) map to 4.
"""


class FormisoError(Exception):
    """Base class for all library errors."""


class FieldMismatchError(FormisoError):
    """Operands live over different fields."""


class PreconditionError(FormisoError):
    """An operation was called outside its contract."""


class CharacteristicError(PreconditionError):
    """The field characteristic divides a required denominator."""


class CapabilityError(FormisoError):
    """The request is outside the supported scope (e.g. number fields)."""
