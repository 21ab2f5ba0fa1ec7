"""Straight-line programs: rules, alphabet, validation, expansion and window extraction."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence, Union

from slp_toolkit.errors import ExpansionRefusedError, NotAnSlpError, QueryOutOfRangeError, StringTooLongError
from slp_toolkit.tree import NO_NODE

logger = logging.getLogger(__name__)

MAX_LENGTH = (1 << 63) - 1

Symbol = Union[str, int]


@dataclass(frozen=True, slots=True)
class Terminal:
    symbol: int


@dataclass(frozen=True, slots=True)
class Nonterminal:
    left: int
    right: int


Rule = Union[Terminal, Nonterminal]


class Alphabet:
    """Dense symbol table ``0 .. sigma-1``.

    Text alphabets hold single characters; byte alphabets hold ints ``0..255`` and
    expand to ``bytes``.
    """

    __slots__ = ("symbols", "byte_mode", "_index")

    def __init__(self, symbols: Iterable[Symbol], byte_mode: bool = False):
        self.symbols: tuple[Symbol, ...] = tuple(symbols)
        self.byte_mode = byte_mode
        for s in self.symbols:
            if byte_mode and not (isinstance(s, int) and 0 <= s < 256):
                raise NotAnSlpError(f"byte alphabet symbol {s!r} is not in 0..255")
            if not byte_mode and not (isinstance(s, str) and len(s) == 1):
                raise NotAnSlpError(f"text alphabet symbol {s!r} is not a single character")
        self._index = {s: k for k, s in enumerate(self.symbols)}
        if len(self._index) != len(self.symbols):
            raise NotAnSlpError("alphabet lists a symbol twice")

    @classmethod
    def of_text(cls, text: Union[str, bytes]) -> "Alphabet":
        """Distinct symbols of ``text`` in first-occurrence order."""
        byte_mode = isinstance(text, (bytes, bytearray))
        return cls(dict.fromkeys(text), byte_mode=byte_mode)

    def __len__(self) -> int:
        return len(self.symbols)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Alphabet):
            return NotImplemented
        return self.symbols == other.symbols and self.byte_mode == other.byte_mode

    def __repr__(self) -> str:
        kind = "bytes" if self.byte_mode else "text"
        return f"Alphabet({kind}, sigma={len(self)})"

    def index(self, symbol: Symbol) -> Optional[int]:
        return self._index.get(symbol)

    def encode(self, text: Union[str, bytes]) -> list[Optional[int]]:
        """Dense indices of ``text``; symbols outside the alphabet map to None."""
        return [self._index.get(s) for s in text]

    def decode(self, indices: Sequence[int]) -> Union[str, bytes]:
        if self.byte_mode:
            return bytes(self.symbols[k] for k in indices)  # type: ignore[misc]
        return "".join(self.symbols[k] for k in indices)  # type: ignore[misc]

    def display(self, k: int) -> str:
        """Human-readable form of symbol ``k``: the character itself, or ``0xHH`` for bytes."""
        s = self.symbols[k]
        return f"0x{s:02x}" if self.byte_mode else str(s)


class Slp:
    """A validated straight-line program.

    Rules are addressed ``0 .. n-1`` in any order; the reference graph must be
    acyclic. Construction validates and fills ``lengths`` (``|S(v)|``),
    ``heights`` (nodes on the longest path down to a terminal), ``reachable``
    and ``topo_order`` (children before parents).
    """

    def __init__(self, rules: Sequence[Rule], root: int, alphabet: Alphabet):
        self.rules: tuple[Rule, ...] = tuple(rules)
        self.root = root
        self.alphabet = alphabet
        n = len(self.rules)
        self.left = [NO_NODE] * n
        self.right = [NO_NODE] * n
        self.symbol = [NO_NODE] * n
        self.lengths: list[int] = []
        self.heights: list[int] = []
        self.reachable: list[bool] = []
        self.topo_order: list[int] = []
        self.notes = validate(self)

    def __len__(self) -> int:
        return len(self.rules)

    def __repr__(self) -> str:
        return f"Slp(n={self.n}, N={self.N}, sigma={self.sigma}, h={self.height})"

    @property
    def n(self) -> int:
        return len(self.rules)

    @property
    def N(self) -> int:
        return self.lengths[self.root]

    @property
    def sigma(self) -> int:
        return len(self.alphabet)

    @property
    def height(self) -> int:
        return self.heights[self.root]

    def is_terminal(self, v: int) -> bool:
        return self.symbol[v] != NO_NODE

    def unreachable(self) -> list[int]:
        return [v for v, r in enumerate(self.reachable) if not r]

    def expand_indices(self, max_len: Optional[int] = None) -> list[int]:
        """Dense symbol indices of ``S`` by a left-to-right depth-first traversal."""
        if max_len is not None and self.N > max_len:
            logger.warning("refusing to expand N=%d above the guard %d", self.N, max_len)
            raise ExpansionRefusedError(f"string length {self.N} exceeds the expansion guard {max_len}")
        out: list[int] = []
        stack = [self.root]
        while stack:
            v = stack.pop()
            if self.symbol[v] != NO_NODE:
                out.append(self.symbol[v])
            else:
                stack.append(self.right[v])
                stack.append(self.left[v])
        return out

    def expand(self, max_len: Optional[int] = None) -> Union[str, bytes]:
        """The derived string; refuses when ``N > max_len``."""
        return self.alphabet.decode(self.expand_indices(max_len))

    def extract_indices(self, lo: int, hi: int) -> list[int]:
        """Dense indices of ``S[lo..hi]`` (1-indexed, inclusive) without expanding the rest."""
        if not 1 <= lo <= hi <= self.N:
            raise QueryOutOfRangeError(f"window [{lo}, {hi}] outside 1..{self.N}")
        out: list[int] = []
        # (node, 0-based start offset of S(node))
        stack = [(self.root, 0)]
        while stack:
            v, off = stack.pop()
            if off >= hi or off + self.lengths[v] < lo:
                continue
            if self.symbol[v] != NO_NODE:
                out.append(self.symbol[v])
                continue
            left = self.left[v]
            stack.append((self.right[v], off + self.lengths[left]))
            stack.append((left, off))
        return out

    def extract(self, lo: int, hi: int) -> Union[str, bytes]:
        return self.alphabet.decode(self.extract_indices(lo, hi))


def validate(slp: Slp) -> list[str]:
    """Check ids, arity and acyclicity, then compute lengths, heights and reachability.

    Returns diagnostics that do not make the rule set invalid (unreachable rules).
    Raises ``NotAnSlpError`` on malformed or cyclic rules and ``StringTooLongError``
    when some ``|S(v)|`` exceeds ``2**63 - 1``.
    """
    n = len(slp.rules)
    sigma = len(slp.alphabet)
    if n == 0:
        raise NotAnSlpError("an SLP needs at least one rule")
    if not 0 <= slp.root < n:
        raise NotAnSlpError(f"root {slp.root} outside 0..{n - 1}")
    for v, rule in enumerate(slp.rules):
        if isinstance(rule, Terminal):
            if not 0 <= rule.symbol < sigma:
                raise NotAnSlpError(f"rule {v}: symbol {rule.symbol} outside 0..{sigma - 1}")
            slp.symbol[v] = rule.symbol
        elif isinstance(rule, Nonterminal):
            for child in (rule.left, rule.right):
                if not 0 <= child < n:
                    raise NotAnSlpError(f"rule {v}: child {child} outside 0..{n - 1}")
            slp.left[v] = rule.left
            slp.right[v] = rule.right
        else:
            raise NotAnSlpError(f"rule {v}: {rule!r} is neither terminal nor nonterminal")

    # iterative three-state DFS; post-order puts children before parents
    state = [0] * n
    order: list[int] = []
    for s in range(n):
        if state[s]:
            continue
        state[s] = 1
        stack = [(s, 0)]
        while stack:
            v, k = stack[-1]
            kids = () if slp.symbol[v] != NO_NODE else (slp.left[v], slp.right[v])
            if k < len(kids):
                stack[-1] = (v, k + 1)
                c = kids[k]
                if state[c] == 1:
                    raise NotAnSlpError(f"rule {c} derives itself (reference cycle through rule {v})")
                if state[c] == 0:
                    state[c] = 1
                    stack.append((c, 0))
            else:
                state[v] = 2
                order.append(v)
                stack.pop()

    lengths = [0] * n
    heights = [0] * n
    for v in order:
        if slp.symbol[v] != NO_NODE:
            lengths[v] = 1
            heights[v] = 1
            continue
        length = lengths[slp.left[v]] + lengths[slp.right[v]]
        if length > MAX_LENGTH:
            raise StringTooLongError(f"rule {v} derives {length} symbols, more than 2**63 - 1")
        lengths[v] = length
        heights[v] = 1 + max(heights[slp.left[v]], heights[slp.right[v]])

    reachable = [False] * n
    reachable[slp.root] = True
    for v in reversed(order):
        if reachable[v] and slp.symbol[v] == NO_NODE:
            reachable[slp.left[v]] = True
            reachable[slp.right[v]] = True

    slp.lengths = lengths
    slp.heights = heights
    slp.reachable = reachable
    slp.topo_order = order

    notes = []
    unreachable = n - sum(reachable)
    if unreachable:
        notes.append(f"{unreachable} rule(s) unreachable from the root are ignored")
    logger.debug("validated SLP: n=%d N=%d sigma=%d h=%d", n, lengths[slp.root], sigma, heights[slp.root])
    return notes
