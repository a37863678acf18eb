"""Exception types. Each carries the CLI exit code it maps to."""


class BecError(Exception):
    exit_code = 1
    code = "error"


class ValidationError(BecError, ValueError):
    """Bad input: dimension mismatch, unnormalized vector, malformed graph."""

    exit_code = 4
    code = "validation"


class GraphParseError(ValidationError):
    code = "parse"

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(message + where)


class ZeroProbabilityError(BecError):
    """A post-selected branch (or particle removal) has no support."""

    exit_code = 3
    code = "zero_probability"

    def __init__(self, message, probability=0.0):
        self.probability = probability
        super().__init__(message)


class NumericError(BecError, ArithmeticError):
    exit_code = 5
    code = "numeric"
