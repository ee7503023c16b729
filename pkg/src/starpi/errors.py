"""Exception hierarchy shared by all modules."""


class StarPIError(Exception):
    """Base class for library errors."""


class GradingMismatchError(StarPIError, ValueError):
    """Graded and non-graded variables were combined."""


class InhomogeneousError(StarPIError, ValueError):
    """A polynomial is not multihomogeneous."""


class NotMultilinearError(StarPIError, ValueError):
    """An operation that needs a multilinear polynomial got something else."""


class UngradedError(StarPIError, ValueError):
    """A graded variable was required."""


class VariableSetError(StarPIError, ValueError):
    """A variable set is not homogeneous, or does not match a polynomial."""


class DimensionError(StarPIError, ValueError):
    """Vector lengths, generator counts or algebras do not match."""


class InvalidAlgebraError(StarPIError, ValueError):
    """An algebra failed validation."""

    def __init__(self, report):
        super().__init__(report.message)
        self.report = report


class AssignmentError(StarPIError, ValueError):
    """An evaluation assignment is incomplete or violates kind/grade."""


class InsufficientGeneratorsError(StarPIError, ValueError):
    """The Grassmann truncation is too small for the requested witnesses."""


class DegreeCapError(StarPIError, ValueError):
    """An enumeration would exceed the configured degree cap."""


class ParseError(StarPIError, ValueError):
    """Syntax error in a polynomial or Grassmann expression."""

    def __init__(self, message, text="", pos=0):
        self.text = text
        self.pos = pos
        line = text.count("\n", 0, pos) + 1
        col = pos - (text.rfind("\n", 0, pos) + 1) + 1
        self.line = line
        self.column = col
        super().__init__(f"{message} (line {line}, column {col})")


class SchemaError(StarPIError, ValueError):
    """An algebra file does not follow the JSON schema."""
