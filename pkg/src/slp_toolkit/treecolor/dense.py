"""Table engine: every firstcolor answer stored, lastcolor via induced colored subtrees."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np

from slp_toolkit.bitpack import array_words, index_dtype, unpack_rows
from slp_toolkit.counters import QueryStats
from slp_toolkit.tree import NO_NODE, LevelAncestorIndex, Tree
from slp_toolkit.treecolor.base import ColorQueryEngine, PackedColorTree

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class InducedSubtree:
    """The tree root plus every node colored ``c`` in pre-order, each hung below its nearest colored ancestor."""

    nodes: np.ndarray
    la: LevelAncestorIndex


class DenseIndex(ColorQueryEngine):
    """``rank[v, c]`` is the position, inside the induced ``c`` subtree, of the deepest
    ``c``-colored node on the root-to-``v`` path, or -1 when there is none.
    """

    kind = "dense"

    def __init__(self, ct: PackedColorTree):
        super().__init__(ct)
        tree = ct.tree
        t, sigma = len(tree), ct.sigma
        dtype = index_dtype(t)
        bits = unpack_rows(ct.colors, sigma)

        rank = np.full((t, sigma), -1, dtype=dtype)
        rank[tree.root] = np.where(bits[tree.root], 0, -1)
        # induced rank 0 is always the tree root
        taken = np.ones(sigma, dtype=np.int64)
        for v in tree.order[1:]:
            hit = bits[v]
            rank[v] = np.where(hit, taken, rank[tree.parent[v]])
            taken += hit
        rank.flags.writeable = False
        self._rank = rank

        order = np.array(tree.order[1:], dtype=np.int64)
        parents = np.array([tree.parent[v] for v in tree.order[1:]], dtype=np.int64)
        self._induced: list[Optional[InducedSubtree]] = []
        for c in range(sigma):
            if not bits[:, c].any():
                self._induced.append(None)
                continue
            hit = bits[order, c] if order.size else np.zeros(0, dtype=bool)
            ups = np.maximum(rank[parents[hit], c].astype(np.int64), 0).tolist()
            nodes = np.array([tree.root] + order[hit].tolist(), dtype=dtype)
            nodes.flags.writeable = False
            self._induced.append(InducedSubtree(nodes, LevelAncestorIndex(Tree([NO_NODE] + ups))))
        logger.debug("dense index: t=%d sigma=%d", t, sigma)

    def induced(self, c: int) -> Optional[InducedSubtree]:
        """Induced ``c``-colored subtree, or None when no node has color ``c``."""
        self._check_color(c)
        return self._induced[c]

    def firstcolor(self, v: int, c: int, stats: Optional[QueryStats] = None) -> Optional[int]:
        self._check_first(v, c)
        r = int(self._rank[v, c])
        if r < 0:
            return None
        induced = self._induced[c]
        assert induced is not None
        return int(induced.nodes[r])

    def lastcolor(
        self, u: int, v: int, c: int, include_u: bool = True, stats: Optional[QueryStats] = None
    ) -> Optional[int]:
        self._check_last(u, v, c)
        rv = int(self._rank[v, c])
        if rv < 0:
            return None
        induced = self._induced[c]
        assert induced is not None
        ru = int(self._rank[u, c])
        if include_u and ru >= 0 and int(induced.nodes[ru]) == u:
            return u
        if rv == ru:
            return None
        # the answer lies strictly below the nearest colored ancestor of u; step one level down towards v
        top = max(ru, 0)
        return int(induced.nodes[induced.la.la(rv, int(induced.la.depth[top]) + 1)])

    def space_words(self) -> int:
        words = array_words(self._rank)
        for ind in self._induced:
            if ind is not None:
                words += array_words(ind.nodes) + ind.la.space_words()
        return words
