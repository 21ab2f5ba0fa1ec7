"""Subsequence matching and labelled successor queries on grammar-compressed strings."""

__version__ = "0.1.0"

from .errors import (  # noqa: F401
    ContractViolation,
    ExpansionRefusedError,
    NotAnSlpError,
    QueryOutOfRangeError,
    SlpFormatError,
    SlpToolkitError,
    StringTooLongError,
)
from .ingest import generate, ingest_text  # noqa: F401
from .lsq import LsIndex  # noqa: F401
from .matcher import Pattern, count_minimal, iter_minimal, match_minimal, oracle_match_minimal  # noqa: F401
from .slp import Slp, SlpFile, SlpHeavyForest  # noqa: F401

# the click group, for `python -m` style embedding and tests
from .main import cli  # noqa: F401

__all__ = [
    "__version__",
    "cli",
    "ContractViolation",
    "ExpansionRefusedError",
    "LsIndex",
    "NotAnSlpError",
    "Pattern",
    "QueryOutOfRangeError",
    "Slp",
    "SlpFile",
    "SlpFormatError",
    "SlpHeavyForest",
    "SlpToolkitError",
    "StringTooLongError",
    "count_minimal",
    "generate",
    "ingest_text",
    "iter_minimal",
    "match_minimal",
    "oracle_match_minimal",
]
