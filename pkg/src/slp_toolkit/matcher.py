"""Minimal-occurrence subsequence matching driven by labelled successor/predecessor queries."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence, Union

from slp_toolkit.counters import QueryStats
from slp_toolkit.errors import ContractViolation, ExpansionRefusedError
from slp_toolkit.lsq import LsIndex
from slp_toolkit.models import Occurrence
from slp_toolkit.settings import get_settings
from slp_toolkit.slp import Alphabet

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Pattern:
    """Pattern symbols with their dense colors; a None color marks a symbol absent from the alphabet."""

    symbols: tuple
    colors: tuple[Optional[int], ...]

    def __post_init__(self):
        if not self.symbols:
            raise ContractViolation("pattern must not be empty")

    @classmethod
    def from_text(cls, text: Union[str, bytes], alphabet: Alphabet) -> "Pattern":
        if alphabet.byte_mode and isinstance(text, str):
            text = text.encode("utf-8")
        return cls(tuple(text), tuple(alphabet.encode(text)))

    def __len__(self) -> int:
        return len(self.symbols)

    @property
    def complete(self) -> bool:
        """Every pattern symbol occurs in the alphabet."""
        return all(c is not None for c in self.colors)


def iter_minimal(index: LsIndex, pattern: Pattern, stats: Optional[QueryStats] = None) -> Iterator[Occurrence]:
    """Yield minimal occurrences in increasing start order.

    Each round runs ``m - 1`` ls steps forward from the next ``P[1]`` and ``m - 1``
    lp steps back from the forward end; the next round seeds at the first
    ``P[1]`` after the reported start.
    """
    if not pattern.complete:
        return
    colors: Sequence[int] = pattern.colors  # type: ignore[assignment]
    m = len(colors)
    start = index.ls(0, colors[0], stats)
    while start is not None:
        j: Optional[int] = start
        for c in colors[1:]:
            j = index.ls(j, c, stats)  # type: ignore[arg-type]
            if j is None:
                return
        i = j
        for c in reversed(colors[: m - 1]):
            i = index.lp(i, c, stats)  # type: ignore[arg-type]
            assert i is not None
        yield Occurrence(start=i, end=j)
        start = index.ls(i, colors[0], stats)


def match_minimal(index: LsIndex, pattern: Pattern, stats: Optional[QueryStats] = None) -> list[Occurrence]:
    return list(iter_minimal(index, pattern, stats))


def count_minimal(index: LsIndex, pattern: Pattern, stats: Optional[QueryStats] = None) -> int:
    return sum(1 for _ in iter_minimal(index, pattern, stats))


def oracle_match_minimal(text: Sequence, pattern: Sequence, cap: Optional[int] = None) -> list[Occurrence]:
    """Minimal occurrences by forward/backward scans over the plain string.

    ``text`` and ``pattern`` are any sequences of comparable symbols (``str``,
    ``bytes`` or lists of dense indices). ``cap`` defaults to ``SLP_TOOLKIT_ORACLE_CAP``.
    """
    if not pattern:
        raise ContractViolation("pattern must not be empty")
    if cap is None:
        cap = get_settings().oracle_cap
    if len(text) > cap:
        raise ExpansionRefusedError(f"text length {len(text)} exceeds the oracle cap {cap}")
    n, m = len(text), len(pattern)
    out: list[Occurrence] = []
    pos = 0
    while True:
        # forward: greedy embedding starting at the first P[1] at or after pos
        k, j = 0, pos
        while j < n and k < m:
            if text[j] == pattern[k]:
                k += 1
            j += 1
        if k < m:
            return out
        end = j - 1
        # backward: greedy embedding of the reversed pattern ending at end
        k, i = m - 1, end
        while k >= 0:
            if text[i] == pattern[k]:
                k -= 1
            i -= 1
        start = i + 1
        out.append(Occurrence(start=start + 1, end=end + 1))
        pos = start + 1
