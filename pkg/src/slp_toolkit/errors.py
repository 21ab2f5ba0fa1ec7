"""Exception hierarchy shared by the library and the CLI."""


class SlpToolkitError(Exception):
    """Base class for every error raised by slp_toolkit."""


class ContractViolation(SlpToolkitError, ValueError):
    """A documented precondition of an operation does not hold."""


class QueryOutOfRangeError(ContractViolation):
    """A position argument lies outside the range the query accepts."""


class ExpansionRefusedError(QueryOutOfRangeError):
    """The derived string is longer than the caller's guard allows."""


class SlpFormatError(SlpToolkitError):
    """An SLP file or rule set could not be parsed."""


class NotAnSlpError(SlpFormatError):
    """The rule set parses but is not a straight-line program (cycle, arity, bad ids)."""


class StringTooLongError(SlpFormatError):
    """Some rule derives a string longer than 2**63 - 1 symbols."""
