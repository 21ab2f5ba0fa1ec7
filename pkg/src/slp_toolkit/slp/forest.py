"""Heavy forest of an SLP and random access with a per-tree entry/exit trace."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Literal, Optional

import numpy as np

from slp_toolkit.bitpack import index_dtype
from slp_toolkit.errors import QueryOutOfRangeError
from slp_toolkit.slp.grammar import Slp
from slp_toolkit.tree import NO_NODE, Tree

logger = logging.getLogger(__name__)

Side = Literal["left", "right"]


@dataclass(frozen=True)
class ForestTree:
    """One heavy tree: ``nodes[k]`` is the SLP rule with local id ``k``; local 0 is the terminal root."""

    root: int
    nodes: list[int]
    tree: Tree


@dataclass(frozen=True)
class Visit:
    tree: int
    entry: int
    exit: int
    offset: int
    side: Optional[Side]


@dataclass(frozen=True)
class AccessTrace:
    """Result of ``access(i)``: the symbol at ``i`` and the heavy trees crossed on the way down.

    ``offset`` of a visit is the 0-based start of ``S(entry)`` inside ``S``;
    ``side`` is the light edge taken out of the exit node (None at the terminal).
    """

    position: int
    symbol: int
    visits: list[Visit]


class SlpHeavyForest:
    """Forest parent of a nonterminal is its heavy child, so every tree is rooted at a terminal.

    The heavy child is the one deriving the longer string, the left one on ties.
    Only rules reachable from the SLP root are placed in trees.
    """

    def __init__(self, slp: Slp):
        self.slp = slp
        n = slp.n
        self.heavy = [NO_NODE] * n
        self.heavy_is_left = [False] * n
        self.root_of = [NO_NODE] * n
        self.heavy_offset = [0] * n
        light_max = [0] * n
        for v in slp.topo_order:
            if slp.is_terminal(v):
                self.root_of[v] = v
                continue
            left, right = slp.left[v], slp.right[v]
            is_left = slp.lengths[left] >= slp.lengths[right]
            heavy, light = (left, right) if is_left else (right, left)
            self.heavy[v] = heavy
            self.heavy_is_left[v] = is_left
            self.root_of[v] = self.root_of[heavy]
            self.heavy_offset[v] = self.heavy_offset[heavy] + (0 if is_left else slp.lengths[left])
            light_max[v] = max(light_max[heavy], 1 + light_max[light])
        self.light_edge_max = light_max[slp.root]

        tree_of = [NO_NODE] * n
        local = [NO_NODE] * n
        members: dict[int, list[int]] = {}
        for v in slp.topo_order:
            if slp.reachable[v]:
                members.setdefault(self.root_of[v], []).append(v)
        self.trees: list[ForestTree] = []
        for root, nodes in members.items():
            tid = len(self.trees)
            for k, v in enumerate(nodes):
                tree_of[v] = tid
                local[v] = k
            # topo order lists the terminal root first and each heavy child before its parent
            parent = [NO_NODE] + [local[self.heavy[v]] for v in nodes[1:]]
            self.trees.append(ForestTree(root, nodes, Tree(parent)))
        self.tree_of = np.asarray(tree_of, dtype=index_dtype(len(self.trees)))
        self.local = np.asarray(local, dtype=index_dtype(max(len(ft.nodes) for ft in self.trees)))
        logger.debug(
            "heavy forest: n=%d trees=%d light_edge_max=%d", n, len(self.trees), self.light_edge_max
        )

    def __len__(self) -> int:
        return len(self.trees)

    def depth(self, v: int) -> int:
        """Depth of rule ``v`` inside its heavy tree (the terminal root has depth 0)."""
        return self.trees[int(self.tree_of[v])].tree.depth[int(self.local[v])]

    def access(self, i: int) -> AccessTrace:
        """Descend from the root to ``S[i]`` (1-indexed), recording every heavy tree crossed."""
        slp = self.slp
        if not 1 <= i <= slp.N:
            raise QueryOutOfRangeError(f"position {i} outside 1..{slp.N}")
        visits: list[Visit] = []
        v, off = slp.root, 0
        entry, entry_off = v, off
        while not slp.is_terminal(v):
            left = slp.left[v]
            go_left = i - off <= slp.lengths[left]
            if go_left:
                nxt, nxt_off = left, off
            else:
                nxt, nxt_off = slp.right[v], off + slp.lengths[left]
            if go_left != self.heavy_is_left[v]:
                side: Side = "left" if go_left else "right"
                visits.append(Visit(int(self.tree_of[v]), entry, v, entry_off, side))
                entry, entry_off = nxt, nxt_off
            v, off = nxt, nxt_off
        visits.append(Visit(int(self.tree_of[v]), entry, v, entry_off, None))
        return AccessTrace(i, slp.symbol[v], visits)


def build_heavy_forest(slp: Slp) -> SlpHeavyForest:
    return SlpHeavyForest(slp)


def access(slp: Slp, forest: SlpHeavyForest, i: int) -> AccessTrace:
    if forest.slp is not slp:
        raise ValueError("heavy forest was built for a different SLP")
    return forest.access(i)
