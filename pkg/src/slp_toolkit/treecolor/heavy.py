"""Heavy path engine: a balanced summary tree per heavy path plus path-prefix summaries."""

from __future__ import annotations

import logging
from typing import Optional

import numpy as np

from slp_toolkit.bitpack import WORD_DTYPE, array_words, has_bit, index_dtype
from slp_toolkit.counters import QueryStats
from slp_toolkit.tree import NO_NODE, heavy_path_decompose
from slp_toolkit.treecolor.base import ColorQueryEngine, PackedColorTree

logger = logging.getLogger(__name__)


class HeavySummaryIndex(ColorQueryEngine):
    """Per heavy path ``v1..vk``: ``B`` summaries in an implicit segment tree over the
    path (leaf ``i`` is ``C(v_i)``, inner node is the OR of its children) and the
    prefix summary ``P(v_i) = C(v1) | ... | C(v_i)``.

    Segment rows are stored from index 1 up to the last real leaf; padding leaves
    past the path end are implicit zeros.
    """

    kind = "heavy"

    def __init__(self, ct: PackedColorTree):
        super().__init__(ct)
        tree = ct.tree
        t = len(tree)
        hpd = heavy_path_decompose(tree)
        dtype = index_dtype(t)
        n_words = ct.colors.shape[1]

        self._path_of = np.asarray(hpd.path_of, dtype=dtype)
        self._pos = np.asarray(hpd.pos, dtype=dtype)
        self._path_nodes = np.fromiter((v for path in hpd.paths for v in path), dtype=dtype, count=t)
        self._starts = np.cumsum([0] + [len(path) for path in hpd.paths], dtype=np.int64).astype(dtype)
        self._up = np.asarray([tree.parent[path[0]] for path in hpd.paths], dtype=dtype)

        self._segments: list[np.ndarray] = []
        prefix = np.zeros_like(ct.colors)
        for path in hpd.paths:
            k = len(path)
            size = 1 << (k - 1).bit_length()
            full = np.zeros((2 * size, n_words), dtype=WORD_DTYPE)
            full[size : size + k] = ct.colors[path]
            half = size // 2
            while half:
                full[half : 2 * half] = full[2 * half : 4 * half : 2] | full[2 * half + 1 : 4 * half : 2]
                half //= 2
            seg = full[1 : size + k].copy()
            seg.flags.writeable = False
            self._segments.append(seg)
            prefix[path] = np.bitwise_or.accumulate(ct.colors[path], axis=0)
        prefix.flags.writeable = False
        self._prefix = prefix
        for arr in (self._path_of, self._pos, self._path_nodes, self._starts, self._up):
            arr.flags.writeable = False
        logger.debug("heavy summary index: t=%d paths=%d", t, len(hpd.paths))

    def _length(self, p: int) -> int:
        return int(self._starts[p + 1]) - int(self._starts[p])

    def _node(self, p: int, i: int) -> int:
        return int(self._path_nodes[int(self._starts[p]) + i])

    def _search(
        self, p: int, lo: int, hi: int, c: int, rightmost: bool, stats: Optional[QueryStats]
    ) -> Optional[int]:
        """Position of the rightmost (or leftmost) leaf in ``[lo, hi]`` of path ``p`` colored ``c``."""
        if lo > hi:
            return None
        seg = self._segments[p]
        k = self._length(p)
        size = 1 << (k - 1).bit_length()
        end = size + k

        def colored(node: int) -> bool:
            return node < end and has_bit(seg[node - 1], c)

        left_side: list[int] = []
        right_side: list[int] = []
        l, r = lo + size, hi + size + 1
        while l < r:
            if l & 1:
                left_side.append(l)
                l += 1
            if r & 1:
                r -= 1
                right_side.append(r)
            l >>= 1
            r >>= 1
        if rightmost:
            candidates = right_side + left_side[::-1]
        else:
            candidates = left_side + right_side[::-1]
        for node in candidates:
            if not colored(node):
                continue
            while node < size:
                first, second = (2 * node + 1, 2 * node) if rightmost else (2 * node, 2 * node + 1)
                node = first if colored(first) else second
                if stats is not None:
                    stats.tree_steps += 1
            return node - size
        return None

    def firstcolor(self, v: int, c: int, stats: Optional[QueryStats] = None) -> Optional[int]:
        self._check_first(v, c)
        x = v
        while x != NO_NODE:
            if stats is not None:
                stats.path_hops += 1
            p = int(self._path_of[x])
            if has_bit(self._prefix[x], c):
                i = self._search(p, 0, int(self._pos[x]), c, True, stats)
                assert i is not None
                return self._node(p, i)
            x = int(self._up[p])
        return None

    def lastcolor(
        self, u: int, v: int, c: int, include_u: bool = True, stats: Optional[QueryStats] = None
    ) -> Optional[int]:
        self._check_last(u, v, c)
        target = int(self._path_of[u])
        # heavy path pieces of the u..v path, collected bottom-up
        pieces: list[tuple[int, int, int]] = []
        x = v
        while True:
            if stats is not None:
                stats.path_hops += 1
            p = int(self._path_of[x])
            if p == target:
                pieces.append((p, int(self._pos[u]) + (0 if include_u else 1), int(self._pos[x])))
                break
            pieces.append((p, 0, int(self._pos[x])))
            x = int(self._up[p])
        for p, lo, hi in reversed(pieces):
            if lo > hi:
                continue
            if p != target and not has_bit(self._prefix[self._node(p, hi)], c):
                continue
            i = self._search(p, lo, hi, c, False, stats)
            if i is not None:
                return self._node(p, i)
        return None

    def space_words(self) -> int:
        words = array_words(self._prefix, self._path_of, self._pos, self._path_nodes, self._starts, self._up)
        for seg in self._segments:
            words += seg.size
        return words
