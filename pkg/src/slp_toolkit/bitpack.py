"""Word-packed bit strings and bit matrices.

Layout: bit index ``i`` lives in word ``i // 64`` at bit position ``i % 64``
(least significant bit first). Index 0 is the first element of the set
universe. Words are ``numpy.uint64`` and bits past ``len_bits`` in the last
word are always zero.
"""

from __future__ import annotations

from typing import Iterable, Optional, Sequence

import numpy as np

from slp_toolkit.errors import ContractViolation

WORD_BITS = 64
WORD_DTYPE = np.uint64
ALL_ONES = (1 << WORD_BITS) - 1


def words_for(n_bits: int) -> int:
    """Number of 64-bit words needed to hold ``n_bits`` bits."""
    return (n_bits + WORD_BITS - 1) // WORD_BITS


def index_dtype(limit: int) -> np.dtype:
    """Smallest signed integer dtype holding every value in ``-1 .. limit``."""
    for dtype in (np.int8, np.int16, np.int32):
        if limit <= np.iinfo(dtype).max:
            return np.dtype(dtype)
    return np.dtype(np.int64)


def array_words(*arrays: np.ndarray) -> int:
    """64-bit words occupied by the given arrays, rounded up."""
    return (sum(a.nbytes for a in arrays) + 7) // 8


def tail_mask(n_bits: int) -> int:
    rem = n_bits % WORD_BITS
    return (1 << rem) - 1 if rem else ALL_ONES


def word_lsb(x: int) -> int:
    """Index of the least significant set bit of a non-zero word."""
    return (x & -x).bit_length() - 1


def word_msb(x: int) -> int:
    """Index of the most significant set bit of a non-zero word."""
    return x.bit_length() - 1


def has_bit(row: np.ndarray, i: int) -> bool:
    """Read bit ``i`` of a packed word row without wrapping it in a BitString."""
    return bool((int(row[i >> 6]) >> (i & 63)) & 1)


def canonicalize(words: np.ndarray, n_bits: int) -> np.ndarray:
    """Zero the padding bits of the last word (in place) and return ``words``."""
    if words.shape[-1] and n_bits % WORD_BITS:
        words[..., -1] &= WORD_DTYPE(tail_mask(n_bits))
    return words


def unpack_rows(words: np.ndarray, n_bits: int) -> np.ndarray:
    """Unpack a ``(rows, words)`` uint64 array into a ``(rows, n_bits)`` bool array."""
    if n_bits == 0 or words.shape[0] == 0:
        return np.zeros((words.shape[0], n_bits), dtype=bool)
    words = np.ascontiguousarray(words, dtype="<u8")
    as_bytes = words.view(np.uint8).reshape(words.shape[0], -1)
    return np.unpackbits(as_bytes, axis=1, bitorder="little")[:, :n_bits].astype(bool)


def pack_rows(bits: np.ndarray) -> np.ndarray:
    """Pack a ``(rows, n_bits)`` bool array into ``(rows, words)`` uint64 words."""
    bits = np.asarray(bits, dtype=bool)
    if bits.ndim != 2:
        raise ContractViolation("pack_rows expects a 2D array")
    rows, n_bits = bits.shape
    n_words = words_for(n_bits)
    if n_words == 0 or rows == 0:
        return np.zeros((rows, n_words), dtype=WORD_DTYPE)
    padded = np.zeros((rows, n_words * WORD_BITS), dtype=bool)
    padded[:, :n_bits] = bits
    packed = np.packbits(padded, axis=1, bitorder="little")
    return packed.view("<u8").astype(WORD_DTYPE).reshape(rows, n_words)


class BitString:
    """Immutable set over the universe ``0 .. len_bits - 1`` packed into 64-bit words."""

    __slots__ = ("words", "len_bits")

    def __init__(self, words: Sequence[int] | np.ndarray, len_bits: int):
        if len_bits < 0:
            raise ContractViolation(f"len_bits must be non-negative, got {len_bits}")
        arr = np.array(words, dtype=WORD_DTYPE).reshape(-1)
        if arr.size != words_for(len_bits):
            raise ContractViolation(
                f"{arr.size} words cannot hold exactly {len_bits} bits (need {words_for(len_bits)})"
            )
        canonicalize(arr, len_bits)
        arr.flags.writeable = False
        self.words = arr
        self.len_bits = len_bits

    @classmethod
    def zeros(cls, len_bits: int) -> "BitString":
        return cls(np.zeros(words_for(len_bits), dtype=WORD_DTYPE), len_bits)

    @classmethod
    def from_indices(cls, len_bits: int, indices: Iterable[int]) -> "BitString":
        arr = np.zeros(words_for(len_bits), dtype=WORD_DTYPE)
        for i in indices:
            if not 0 <= i < len_bits:
                raise ContractViolation(f"bit index {i} outside universe of size {len_bits}")
            arr[i >> 6] |= WORD_DTYPE(1 << (i & 63))
        return cls(arr, len_bits)

    @classmethod
    def from_str(cls, bits: str) -> "BitString":
        """Parse ``"0110"``: the leftmost character is index 0."""
        if any(ch not in "01" for ch in bits):
            raise ContractViolation(f"not a bit string: {bits!r}")
        return cls.from_indices(len(bits), (i for i, ch in enumerate(bits) if ch == "1"))

    @classmethod
    def from_bools(cls, bits: Sequence[bool] | np.ndarray) -> "BitString":
        arr = np.asarray(bits, dtype=bool).reshape(1, -1)
        return cls(pack_rows(arr)[0], arr.shape[1])

    def __len__(self) -> int:
        return self.len_bits

    def __getitem__(self, i: int) -> bool:
        if not 0 <= i < self.len_bits:
            raise ContractViolation(f"bit index {i} outside universe of size {self.len_bits}")
        return has_bit(self.words, i)

    def _check_same(self, other: "BitString") -> None:
        if not isinstance(other, BitString):
            raise ContractViolation(f"expected BitString, got {type(other).__name__}")
        if other.len_bits != self.len_bits:
            raise ContractViolation(f"length mismatch: {self.len_bits} vs {other.len_bits}")

    def __and__(self, other: "BitString") -> "BitString":
        self._check_same(other)
        return BitString(self.words & other.words, self.len_bits)

    def __or__(self, other: "BitString") -> "BitString":
        self._check_same(other)
        return BitString(self.words | other.words, self.len_bits)

    def __xor__(self, other: "BitString") -> "BitString":
        self._check_same(other)
        return BitString(self.words ^ other.words, self.len_bits)

    def __invert__(self) -> "BitString":
        return BitString(~self.words, self.len_bits)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BitString):
            return NotImplemented
        return self.len_bits == other.len_bits and bool(np.array_equal(self.words, other.words))

    def __hash__(self) -> int:
        return hash((self.len_bits, self.words.tobytes()))

    def __repr__(self) -> str:
        shown = self.to_str() if self.len_bits <= 80 else f"{self.popcount()} of {self.len_bits} set"
        return f"BitString({shown})"

    def is_empty(self) -> bool:
        return not self.words.any()

    def popcount(self) -> int:
        return int(np.bitwise_count(self.words).sum())

    def to_bools(self) -> np.ndarray:
        return unpack_rows(self.words.reshape(1, -1), self.len_bits)[0]

    def to_str(self) -> str:
        return "".join("1" if b else "0" for b in self.to_bools())


def first_set(words: np.ndarray) -> Optional[int]:
    """Smallest set index in a raw word row."""
    nz = np.flatnonzero(words)
    if nz.size == 0:
        return None
    k = int(nz[0])
    return k * WORD_BITS + word_lsb(int(words[k]))


def last_set(words: np.ndarray) -> Optional[int]:
    """Largest set index in a raw word row."""
    nz = np.flatnonzero(words)
    if nz.size == 0:
        return None
    k = int(nz[-1])
    return k * WORD_BITS + word_msb(int(words[k]))


def clear_prefix_words(words: np.ndarray, k: int) -> np.ndarray:
    """Copy of ``words`` with indices ``0 .. k-1`` cleared."""
    out = words.copy()
    full = k // WORD_BITS
    out[:full] = 0
    rem = k % WORD_BITS
    if rem:
        out[full] &= WORD_DTYPE(ALL_ONES ^ ((1 << rem) - 1))
    return out


def lsb_index(b: BitString) -> Optional[int]:
    """Smallest set index of ``b`` or None when ``b`` is empty."""
    return first_set(b.words)


def msb_index(b: BitString) -> Optional[int]:
    """Largest set index of ``b`` or None when ``b`` is empty."""
    return last_set(b.words)


def summary(bs: Sequence[BitString], len_bits: Optional[int] = None) -> BitString:
    """Bitwise OR of equal-length bit strings.

    Args:
        bs: The bit strings to combine.
        len_bits: Universe size; required when ``bs`` is empty.

    Raises:
        ContractViolation: If lengths differ or the universe size is unknown.
    """
    if not bs:
        if len_bits is None:
            raise ContractViolation("summary of no bit strings needs an explicit len_bits")
        return BitString.zeros(len_bits)
    size = bs[0].len_bits if len_bits is None else len_bits
    for b in bs:
        if b.len_bits != size:
            raise ContractViolation(f"length mismatch in summary: {b.len_bits} vs {size}")
    return BitString(np.bitwise_or.reduce(np.stack([b.words for b in bs]), axis=0), size)


def clear_prefix(b: BitString, k: int) -> BitString:
    """Return ``b`` with indices ``0 .. k-1`` cleared."""
    if not 0 <= k <= b.len_bits:
        raise ContractViolation(f"prefix length {k} outside 0..{b.len_bits}")
    return BitString(clear_prefix_words(b.words, k), b.len_bits)


class BitMatrix:
    """``rows x cols`` bit matrix, each row a packed word row."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, rows: int, cols: int, data: Optional[np.ndarray] = None):
        if rows < 0 or cols < 0:
            raise ContractViolation(f"bad matrix shape {rows}x{cols}")
        shape = (rows, words_for(cols))
        if data is None:
            arr = np.zeros(shape, dtype=WORD_DTYPE)
        else:
            arr = np.array(data, dtype=WORD_DTYPE).reshape(shape)
        canonicalize(arr, cols)
        arr.flags.writeable = False
        self.rows = rows
        self.cols = cols
        self.data = arr

    @classmethod
    def from_bools(cls, bits: np.ndarray) -> "BitMatrix":
        bits = np.asarray(bits, dtype=bool)
        return cls(bits.shape[0], bits.shape[1], pack_rows(bits))

    def to_bools(self) -> np.ndarray:
        return unpack_rows(self.data, self.cols)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BitMatrix):
            return NotImplemented
        return (self.rows, self.cols) == (other.rows, other.cols) and bool(
            np.array_equal(self.data, other.data)
        )

    def __repr__(self) -> str:
        return f"BitMatrix({self.rows}x{self.cols})"


def _swap_rounds() -> list[tuple[np.ndarray, np.ndarray, np.uint64, np.uint64]]:
    rounds = []
    mask = 0x00000000FFFFFFFF
    j = WORD_BITS // 2
    while j:
        lo = np.array([k for k in range(WORD_BITS) if not k & j])
        rounds.append((lo, lo + j, WORD_DTYPE(j), WORD_DTYPE(mask)))
        j >>= 1
        mask ^= (mask << j) & ALL_ONES
    return rounds


_ROUNDS = _swap_rounds()


def _transpose_blocks(a: np.ndarray) -> np.ndarray:
    """Transpose every 64x64 block stored column-wise in ``a`` (shape ``(64, blocks)``).

    log2(64) rounds; round ``j`` swaps the off-diagonal ``j x j`` sub-blocks of
    every ``2j x 2j`` block with one shift, one xor and one mask per word.
    """
    a = a.copy()
    for lo, hi, shift, mask in _ROUNDS:
        t = ((a[lo] >> shift) ^ a[hi]) & mask
        a[hi] ^= t
        a[lo] ^= t << shift
    return a


def transpose_word_block(m: BitMatrix) -> BitMatrix:
    """Transpose a single ``64 x 64`` matrix with the mask-and-shift scheme."""
    if m.rows != WORD_BITS or m.cols != WORD_BITS:
        raise ContractViolation(f"word block must be {WORD_BITS}x{WORD_BITS}, got {m.rows}x{m.cols}")
    out = _transpose_blocks(m.data.reshape(WORD_BITS, 1))
    return BitMatrix(WORD_BITS, WORD_BITS, out)


def transpose(m: BitMatrix) -> BitMatrix:
    """Transpose any matrix by transposing its 64x64 blocks and then the block grid."""
    row_blocks = words_for(m.rows)
    col_words = words_for(m.cols)
    if row_blocks == 0 or col_words == 0:
        return BitMatrix(m.cols, m.rows)
    padded = np.zeros((row_blocks * WORD_BITS, col_words), dtype=WORD_DTYPE)
    padded[: m.rows] = m.data
    # column (I * col_words + J) holds block (I, J)
    blocks = padded.reshape(row_blocks, WORD_BITS, col_words).transpose(1, 0, 2)
    flipped = _transpose_blocks(blocks.reshape(WORD_BITS, row_blocks * col_words))
    out = flipped.reshape(WORD_BITS, row_blocks, col_words).transpose(2, 0, 1)
    out = out.reshape(col_words * WORD_BITS, row_blocks)[: m.cols]
    return BitMatrix(m.cols, m.rows, out)
