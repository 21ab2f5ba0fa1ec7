"""Bit matrix engine: color rows over pre-order positions and per-node ancestor sets."""

from __future__ import annotations

import logging
from typing import Optional

import numpy as np

from slp_toolkit.bitpack import (
    WORD_DTYPE,
    BitMatrix,
    array_words,
    clear_prefix_words,
    first_set,
    has_bit,
    index_dtype,
    last_set,
    transpose,
    words_for,
)
from slp_toolkit.counters import QueryStats
from slp_toolkit.treecolor.base import ColorQueryEngine, PackedColorTree

logger = logging.getLogger(__name__)


class MatrixIndex(ColorQueryEngine):
    """``M[c]`` bit ``i`` is set iff the ``i``-th node in pre-order has color ``c``;
    ``A(i)`` holds the pre-order indices of the proper ancestors of that node.

    Ancestors have smaller pre-order indices than their descendants, so the deepest
    hit in ``M[c] & A(i)`` is its largest set index and the shallowest hit below
    ``u`` is the smallest set index after clearing everything before ``u``.
    """

    kind = "matrix"

    def __init__(self, ct: PackedColorTree):
        super().__init__(ct)
        tree = ct.tree
        t = len(tree)
        dtype = index_dtype(t)
        self._order = np.asarray(tree.order, dtype=dtype)
        self._pre = np.asarray(tree.tin, dtype=dtype)
        by_preorder = BitMatrix(t, ct.sigma, ct.colors[tree.order])
        self.matrix = transpose(by_preorder)

        ancestors = np.zeros((t, words_for(t)), dtype=WORD_DTYPE)
        for i, v in enumerate(tree.order):
            if v == tree.root:
                continue
            j = tree.tin[tree.parent[v]]
            ancestors[i] = ancestors[j]
            ancestors[i, j >> 6] |= WORD_DTYPE(1 << (j & 63))
        ancestors.flags.writeable = False
        self._ancestors = ancestors
        logger.debug("matrix index: t=%d sigma=%d", t, ct.sigma)

    def _hits(self, v: int, c: int) -> np.ndarray:
        i = int(self._pre[v])
        row = self.matrix.data[c]
        hits = row & self._ancestors[i]
        if has_bit(row, i):
            hits[i >> 6] |= WORD_DTYPE(1 << (i & 63))
        return hits

    def firstcolor(self, v: int, c: int, stats: Optional[QueryStats] = None) -> Optional[int]:
        self._check_first(v, c)
        i = last_set(self._hits(v, c))
        return None if i is None else int(self._order[i])

    def lastcolor(
        self, u: int, v: int, c: int, include_u: bool = True, stats: Optional[QueryStats] = None
    ) -> Optional[int]:
        self._check_last(u, v, c)
        start = int(self._pre[u]) + (0 if include_u else 1)
        i = first_set(clear_prefix_words(self._hits(v, c), start))
        return None if i is None else int(self._order[i])

    def space_words(self) -> int:
        return self.matrix.data.size + self._ancestors.size + array_words(self._order, self._pre)
