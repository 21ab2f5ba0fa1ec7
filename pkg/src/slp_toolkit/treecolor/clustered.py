"""Cluster engine: small per-cluster engines glued together by a dense engine on the macro tree."""

from __future__ import annotations

import logging
from typing import Literal, Optional

import numpy as np

from slp_toolkit.bitpack import WORD_BITS, WORD_DTYPE, array_words, index_dtype
from slp_toolkit.counters import QueryStats
from slp_toolkit.tree import NO_NODE, LevelAncestorIndex, Tree, binarize, cluster_partition
from slp_toolkit.treecolor.base import ColorQueryEngine, PackedColorTree
from slp_toolkit.treecolor.dense import DenseIndex
from slp_toolkit.treecolor.heavy import HeavySummaryIndex
from slp_toolkit.treecolor.matrix import MatrixIndex

logger = logging.getLogger(__name__)

Flavor = Literal["log", "const"]

CLUSTER_SIZE = WORD_BITS


class ClusteredIndex(ColorQueryEngine):
    """Binarize, partition into clusters of O(w) nodes, and answer in at most three stages.

    The ``log`` flavor runs a heavy summary engine inside each cluster, the
    ``const`` flavor a matrix engine. A leaf boundary ``b`` of cluster ``C`` has
    macro color = OR of the colors on ``(root(C), b]``; the tree root keeps its own.

    A node's local id inside its home cluster is ``slot[v]``; a cluster root is
    local node 0 of every cluster it roots.
    """

    kind = "clustered"

    def __init__(self, ct: PackedColorTree, flavor: Flavor = "log"):
        super().__init__(ct)
        if flavor not in ("log", "const"):
            raise ValueError(f"Invalid flavor: {flavor}. Must be 'log' or 'const'.")
        self.flavor = flavor
        btree = binarize(ct.tree).tree
        tb = len(btree)
        self._root = btree.root
        colors = np.zeros((tb, ct.colors.shape[1]), dtype=WORD_DTYPE)
        colors[: len(ct.tree)] = ct.colors

        part = cluster_partition(btree, min(CLUSTER_SIZE, tb))
        clusters = part.clusters
        self.n_clusters = len(clusters)
        node_dtype = index_dtype(tb)
        self._home = np.asarray(part.home, dtype=index_dtype(self.n_clusters))
        self._slot = np.zeros(tb, dtype=index_dtype(max(len(cl.nodes) for cl in clusters)))
        self._nodes: list[np.ndarray] = []
        self._roots = np.asarray([cl.root for cl in clusters], dtype=node_dtype)
        self._leaf = np.asarray(
            [NO_NODE if cl.leaf_boundary is None else cl.leaf_boundary for cl in clusters], dtype=node_dtype
        )

        engine_cls = HeavySummaryIndex if flavor == "log" else MatrixIndex
        self._engines: list[ColorQueryEngine] = []
        for cl in clusters:
            local = {v: i for i, v in enumerate(cl.nodes)}
            for i, v in enumerate(cl.nodes[1:], start=1):
                self._slot[v] = i
            self._nodes.append(np.asarray(cl.nodes, dtype=node_dtype))
            parent = [NO_NODE] + [local[btree.parent[v]] for v in cl.nodes[1:]]
            sub = PackedColorTree(Tree(parent), ct.sigma, colors[list(cl.nodes)])
            self._engines.append(engine_cls(sub))

        # a single cluster answers everything on its own
        self.macro: Optional[DenseIndex] = None
        self._macro_la: Optional[LevelAncestorIndex] = None
        self.macro_size = 0
        if self.n_clusters > 1:
            self.macro_size = len(part.macro)
            macro_colors = np.zeros((self.macro_size, ct.colors.shape[1]), dtype=WORD_DTYPE)
            for m, b in enumerate(part.macro_nodes):
                if b == btree.root:
                    macro_colors[m] = colors[b]
                    continue
                top = clusters[part.below[b]].root
                x = b
                while x != top:
                    macro_colors[m] |= colors[x]
                    x = btree.parent[x]
            self.macro = DenseIndex(PackedColorTree(part.macro, ct.sigma, macro_colors))
            self._macro_la = LevelAncestorIndex(part.macro)
            macro_dtype = index_dtype(self.macro_size)
            self._macro_nodes = np.asarray(part.macro_nodes, dtype=node_dtype)
            self._macro_below = np.asarray(
                [part.below.get(b, NO_NODE) for b in part.macro_nodes], dtype=index_dtype(self.n_clusters)
            )
            self._root_macro = np.asarray([part.macro_id[cl.root] for cl in clusters], dtype=macro_dtype)
            self._leaf_macro = np.asarray(
                [NO_NODE if cl.leaf_boundary is None else part.macro_id[cl.leaf_boundary] for cl in clusters],
                dtype=macro_dtype,
            )
        logger.debug(
            "clustered index (%s): t=%d binary=%d clusters=%d macro=%d",
            flavor,
            len(ct.tree),
            tb,
            self.n_clusters,
            self.macro_size,
        )

    def _contains(self, k: int, v: int) -> bool:
        return int(self._home[v]) == k or int(self._roots[k]) == v

    def _local(self, k: int, v: int) -> int:
        return 0 if int(self._roots[k]) == v else int(self._slot[v])

    def _in_cluster_first(self, k: int, v: int, c: int, stats: Optional[QueryStats]) -> Optional[int]:
        if stats is not None:
            stats.cluster_calls += 1
        ans = self._engines[k].firstcolor(self._local(k, v), c, stats)
        return None if ans is None else int(self._nodes[k][ans])

    def _in_cluster_last(
        self, k: int, u: int, v: int, c: int, include_u: bool, stats: Optional[QueryStats]
    ) -> Optional[int]:
        if stats is not None:
            stats.cluster_calls += 1
        ans = self._engines[k].lastcolor(self._local(k, u), self._local(k, v), c, include_u, stats)
        return None if ans is None else int(self._nodes[k][ans])

    def firstcolor(self, v: int, c: int, stats: Optional[QueryStats] = None) -> Optional[int]:
        self._check_first(v, c)
        k = int(self._home[v])
        ans = self._in_cluster_first(k, v, c, stats)
        if ans is not None or self.macro is None:
            return ans
        if stats is not None:
            stats.macro_calls += 1
        w = self.macro.firstcolor(int(self._root_macro[k]), c)
        if w is None:
            return None
        node = int(self._macro_nodes[w])
        if node == self._root:
            return node
        return self._in_cluster_first(int(self._macro_below[w]), node, c, stats)

    def lastcolor(
        self, u: int, v: int, c: int, include_u: bool = True, stats: Optional[QueryStats] = None
    ) -> Optional[int]:
        self._check_last(u, v, c)
        if u == v:
            return u if include_u and self.ct.has(u, c) else None
        kv = int(self._home[v])
        if self._contains(kv, u):
            return self._in_cluster_last(kv, u, v, c, include_u, stats)
        assert self.macro is not None and self._macro_la is not None

        # w: first macro node below u on the macro path to root(C_v); its cluster holds u
        top_v = int(self._roots[kv])
        ku = int(self._home[u])
        above = int(self._leaf_macro[ku]) if int(self._leaf[ku]) == u else int(self._root_macro[ku])
        mw = self._macro_la.la(int(self._root_macro[kv]), int(self._macro_la.depth[above]) + 1)
        w = int(self._macro_nodes[mw])
        ans = self._in_cluster_last(int(self._macro_below[mw]), u, w, c, include_u, stats)
        if ans is not None:
            return ans

        if top_v != w:
            if stats is not None:
                stats.macro_calls += 1
            z = self.macro.lastcolor(mw, int(self._root_macro[kv]), c, include_u=False)
            if z is not None:
                node = int(self._macro_nodes[z])
                kz = int(self._macro_below[z])
                return self._in_cluster_last(kz, int(self._roots[kz]), node, c, False, stats)
        return self._in_cluster_last(kv, top_v, v, c, False, stats)

    def space_words(self) -> int:
        words = array_words(self._home, self._slot, self._roots, self._leaf, *self._nodes)
        if self.macro is not None and self._macro_la is not None:
            words += self.macro.space_words() + self._macro_la.space_words()
            words += array_words(self._macro_nodes, self._macro_below, self._root_macro, self._leaf_macro)
        for engine in self._engines:
            words += engine.space_words() + array_words(engine.ct.colors)
        return words
