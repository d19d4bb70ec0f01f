"""Exception hierarchy.

Everything a user can trigger with bad input derives from
:class:`ValidationError` (CLI exit code 1).  :class:`InvariantError` marks a
broken internal identity and maps to exit code 2.
"""


class PhgError(Exception):
    pass


class ValidationError(PhgError):
    pass


class ParseError(ValidationError):
    def __init__(self, message, field=None, line=None):
        self.field = field
        self.line = line
        where = []
        if line is not None:
            where.append("line %d" % line)
        if field is not None:
            where.append("field %s" % field)
        if where:
            message = "%s (%s)" % (message, ", ".join(where))
        super().__init__(message)


class DimensionGuard(ValidationError):
    pass


class NotClosed(ValidationError):
    def __init__(self, i, j):
        self.pair = (i, j)
        super().__init__("commutator of basis elements %d and %d leaves the span" % (i, j))


class NotIndependent(ValidationError):
    pass


class NotASubalgebra(ValidationError):
    pass


class NotACharacter(ValidationError):
    pass


class NotACocycle(ValidationError):
    pass


class NotEtaleDimension(ValidationError):
    pass


class NotEtaleAt(ValidationError):
    pass


class NotPrehomogeneousAt(ValidationError):
    pass


class NotTwoStepBase(ValidationError):
    pass


class NotTwoStep(ValidationError):
    pass


class NotLeftSymmetric(ValidationError):
    pass


class DegenerateForm(ValidationError):
    pass


class NotFlatBiinvariant(ValidationError):
    pass


class InvariantError(PhgError):
    """An identity that holds by theory failed in exact arithmetic."""
