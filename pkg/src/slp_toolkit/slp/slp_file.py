"""Reader and writer for the line-based SLP text format.

    SLP <n> <root-id>
    ALPHA <sigma> <symbol tokens by dense index>
    T <symbol-index>            (one line per rule id 0..n-1)
    N <left-id> <right-id>

Text symbols are single characters, escaped Python-style when they are not
printable, are whitespace or are a backslash. Byte alphabets use ``0xHH`` tokens.
"""

from __future__ import annotations

import logging
import re
from pathlib import Path
from typing import Union

from slp_toolkit.errors import ContractViolation, SlpFormatError
from slp_toolkit.slp.grammar import Alphabet, Nonterminal, Rule, Slp, Symbol, Terminal

logger = logging.getLogger(__name__)

_BYTE_TOKEN = re.compile(r"0x[0-9a-fA-F]{2}")
_ESCAPES = {"x": 2, "u": 4, "U": 8}


class SlpFile:
    """Static helpers around the SLP text format.

    Parse problems raise ``SlpFormatError`` with the offending line number; rule
    sets that parse but are not SLPs raise ``NotAnSlpError`` from validation.
    """

    @staticmethod
    def escape_symbol(symbol: str) -> str:
        if symbol == "\\":
            return "\\\\"
        if symbol.isprintable() and not symbol.isspace():
            return symbol
        cp = ord(symbol)
        if cp < 0x100:
            return f"\\x{cp:02x}"
        if cp < 0x10000:
            return f"\\u{cp:04x}"
        return f"\\U{cp:08x}"

    @staticmethod
    def unescape_symbol(token: str) -> str:
        if token == "\\\\":
            return "\\"
        if token.startswith("\\"):
            width = _ESCAPES.get(token[1:2])
            if width is None or len(token) != 2 + width:
                raise ValueError(f"bad escape {token!r}")
            return chr(int(token[2:], 16))
        if len(token) != 1:
            raise ValueError(f"symbol token {token!r} is not a single character")
        return token

    @staticmethod
    def token(alphabet: Alphabet, k: int) -> str:
        s = alphabet.symbols[k]
        return f"0x{s:02x}" if alphabet.byte_mode else SlpFile.escape_symbol(str(s))

    @staticmethod
    def parse_symbol(token: str, byte_mode: bool) -> Symbol:
        """Symbol named by a command-line token: a character (escapes allowed) or, for bytes, ``0xHH``."""
        try:
            if byte_mode:
                if _BYTE_TOKEN.fullmatch(token):
                    return int(token[2:], 16)
                raw = SlpFile.unescape_symbol(token).encode("utf-8")
                if len(raw) != 1:
                    raise ValueError(f"{token!r} is not a single byte")
                return raw[0]
            return SlpFile.unescape_symbol(token)
        except ValueError as e:
            raise ContractViolation(f"cannot read symbol {token!r}: {e}") from e

    @staticmethod
    def dumps(slp: Slp) -> str:
        alpha = " ".join(SlpFile.token(slp.alphabet, k) for k in range(slp.sigma))
        lines = [f"SLP {slp.n} {slp.root}", f"ALPHA {slp.sigma} {alpha}".rstrip()]
        for rule in slp.rules:
            if isinstance(rule, Terminal):
                lines.append(f"T {rule.symbol}")
            else:
                lines.append(f"N {rule.left} {rule.right}")
        return "\n".join(lines) + "\n"

    @staticmethod
    def loads(text: str) -> Slp:
        lines = text.split("\n")
        if lines and lines[-1] == "":
            lines.pop()
        if len(lines) < 2:
            raise SlpFormatError("missing SLP or ALPHA header line")

        head = lines[0].split(" ")
        if len(head) != 3 or head[0] != "SLP":
            raise SlpFormatError(f"line 1: expected 'SLP <n> <root-id>', got {lines[0]!r}")
        n, root = SlpFile._ints(head[1:], 1)

        alpha = lines[1].split(" ")
        if alpha[0] != "ALPHA" or len(alpha) < 2:
            raise SlpFormatError(f"line 2: expected 'ALPHA <sigma> <symbols>', got {lines[1]!r}")
        (sigma,) = SlpFile._ints(alpha[1:2], 2)
        tokens = alpha[2:] if sigma else [t for t in alpha[2:] if t]
        if len(tokens) != sigma:
            raise SlpFormatError(f"line 2: ALPHA declares {sigma} symbols but lists {len(tokens)}")
        alphabet = SlpFile._alphabet(tokens)

        body = lines[2:]
        if len(body) != n:
            raise SlpFormatError(f"header declares {n} rules but the file has {len(body)} rule lines")
        rules: list[Rule] = []
        for lineno, line in enumerate(body, start=3):
            parts = line.split(" ")
            if parts[0] == "T" and len(parts) == 2:
                (sym,) = SlpFile._ints(parts[1:], lineno)
                rules.append(Terminal(sym))
            elif parts[0] == "N" and len(parts) == 3:
                left, right = SlpFile._ints(parts[1:], lineno)
                rules.append(Nonterminal(left, right))
            else:
                raise SlpFormatError(f"line {lineno}: expected 'T <symbol>' or 'N <left> <right>', got {line!r}")
        return Slp(rules, root, alphabet)

    @staticmethod
    def read(path: Union[str, Path]) -> Slp:
        raw = Path(path).read_bytes()
        try:
            text = raw.decode("utf-8")
        except UnicodeDecodeError as e:
            raise SlpFormatError(f"{path}: not UTF-8 ({e})") from e
        slp = SlpFile.loads(text)
        logger.debug("read %s: %r", path, slp)
        return slp

    @staticmethod
    def write(slp: Slp, path: Union[str, Path]) -> None:
        Path(path).write_text(SlpFile.dumps(slp), encoding="utf-8", newline="\n")

    @staticmethod
    def _ints(tokens: list[str], lineno: int) -> list[int]:
        out = []
        for tok in tokens:
            if not tok.isdigit() or not tok.isascii():
                raise SlpFormatError(f"line {lineno}: {tok!r} is not a decimal id")
            out.append(int(tok))
        return out

    @staticmethod
    def _alphabet(tokens: list[str]) -> Alphabet:
        if tokens and all(_BYTE_TOKEN.fullmatch(t) for t in tokens):
            return Alphabet((int(t[2:], 16) for t in tokens), byte_mode=True)
        try:
            return Alphabet(SlpFile.unescape_symbol(t) for t in tokens)
        except ValueError as e:
            raise SlpFormatError(f"line 2: {e}") from e
