"""Rooted ordered trees: heavy path decomposition, binarization, cluster partition, level ancestor."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from slp_toolkit.bitpack import array_words, index_dtype
from slp_toolkit.errors import ContractViolation

logger = logging.getLogger(__name__)

NO_NODE = -1


class Tree:
    """Rooted ordered tree over nodes ``0 .. t-1``.

    ``parent[root]`` is ``NO_NODE``. Children keep the order given, or increasing
    id order when only parents are supplied. Depths start at 0 for the root.
    """

    __slots__ = ("parent", "children", "root", "order", "depth", "size", "tin", "tout")

    def __init__(self, parent: Sequence[int], children: Optional[Sequence[Sequence[int]]] = None):
        t = len(parent)
        if t == 0:
            raise ContractViolation("a tree needs at least one node")
        self.parent = [int(p) for p in parent]
        roots = [v for v, p in enumerate(self.parent) if p < 0]
        if len(roots) != 1:
            raise ContractViolation(f"a tree has exactly one root, found {len(roots)}")
        self.root = roots[0]
        for v, p in enumerate(self.parent):
            if p >= t:
                raise ContractViolation(f"node {v} has parent {p} outside 0..{t - 1}")
        if children is None:
            kids: list[list[int]] = [[] for _ in range(t)]
            for v, p in enumerate(self.parent):
                if p >= 0:
                    kids[p].append(v)
        else:
            kids = [list(c) for c in children]
            if len(kids) != t or sum(len(c) for c in kids) != t - 1:
                raise ContractViolation("children lists do not match the parent array")
            for v, c in enumerate(kids):
                for u in c:
                    if self.parent[u] != v:
                        raise ContractViolation(f"node {u} listed as child of {v} but its parent is {self.parent[u]}")
        self.children = kids

        order = []
        stack = [self.root]
        while stack:
            v = stack.pop()
            order.append(v)
            stack.extend(reversed(kids[v]))
        if len(order) != t:
            raise ContractViolation("parent links contain a cycle or a detached part")
        self.order = order

        depth = [0] * t
        tin = [0] * t
        for i, v in enumerate(order):
            tin[v] = i
            if v != self.root:
                depth[v] = depth[self.parent[v]] + 1
        size = [1] * t
        for v in reversed(order):
            if v != self.root:
                size[self.parent[v]] += size[v]
        self.depth = depth
        self.tin = tin
        self.size = size
        self.tout = [tin[v] + size[v] - 1 for v in range(t)]

    @classmethod
    def from_parents(cls, parent: Sequence[int]) -> "Tree":
        return cls(parent)

    def __len__(self) -> int:
        return len(self.parent)

    def __repr__(self) -> str:
        return f"Tree(t={len(self)}, root={self.root})"

    def is_ancestor(self, u: int, v: int) -> bool:
        """True when ``u`` is an ancestor of ``v`` or ``u == v``."""
        return self.tin[u] <= self.tin[v] <= self.tout[u]

    def path_to_root(self, v: int) -> list[int]:
        path = [v]
        while self.parent[v] != NO_NODE:
            v = self.parent[v]
            path.append(v)
        return path


def random_tree(t: int, rng: np.random.Generator) -> Tree:
    """Uniform random recursive tree: node ``i`` hangs below a random earlier node."""
    parent = [NO_NODE] + [int(rng.integers(0, i)) for i in range(1, t)]
    return Tree(parent)


def random_binary_tree(t: int, rng: np.random.Generator) -> Tree:
    """Random tree with at most two children per node."""
    parent = [NO_NODE]
    open_slots = [0, 0]
    for v in range(1, t):
        k = int(rng.integers(0, len(open_slots)))
        p = open_slots[k]
        open_slots[k] = open_slots[-1]
        open_slots.pop()
        parent.append(p)
        open_slots.extend((v, v))
    return Tree(parent)


@dataclass(frozen=True)
class HeavyPathDecomposition:
    heavy_child: list[int]
    is_heavy: list[bool]
    path_of: list[int]
    pos: list[int]
    paths: list[list[int]]


def heavy_path_decompose(tree: Tree, weight: Optional[Sequence[int]] = None) -> HeavyPathDecomposition:
    """Split ``tree`` into heavy paths; ties go to the earliest child in order."""
    w = tree.size if weight is None else weight
    t = len(tree)
    heavy_child = [NO_NODE] * t
    is_heavy = [False] * t
    for v in range(t):
        best = NO_NODE
        for c in tree.children[v]:
            if best == NO_NODE or w[c] > w[best]:
                best = c
        heavy_child[v] = best
        if best != NO_NODE:
            is_heavy[best] = True

    path_of = [NO_NODE] * t
    pos = [0] * t
    paths: list[list[int]] = []
    for v in tree.order:
        if is_heavy[v]:
            continue
        path = []
        x = v
        while x != NO_NODE:
            path_of[x] = len(paths)
            pos[x] = len(path)
            path.append(x)
            x = heavy_child[x]
        paths.append(path)
    return HeavyPathDecomposition(heavy_child, is_heavy, path_of, pos, paths)


def light_depths(tree: Tree, hpd: HeavyPathDecomposition) -> list[int]:
    """Number of light edges on the path from the root to each node."""
    light = [0] * len(tree)
    for v in tree.order:
        if v != tree.root:
            light[v] = light[tree.parent[v]] + (0 if hpd.is_heavy[v] else 1)
    return light


@dataclass(frozen=True)
class BinarizedTree:
    tree: Tree
    image: list[int]
    original: list[int]


def binarize(tree: Tree) -> BinarizedTree:
    """Expand every node with k > 2 children into a right-leaning chain of k - 2 dummies.

    Original nodes keep their ids; dummies get ids ``t, t+1, ...`` and map back to
    ``NO_NODE``. Ancestry between original nodes is unchanged.
    """
    t = len(tree)
    children: list[list[int]] = [[] for _ in range(t)]
    for v in range(t):
        rest = list(tree.children[v])
        attach = v
        while len(rest) > 2:
            dummy = len(children)
            children.append([])
            children[attach] = [rest[0], dummy]
            attach = dummy
            rest = rest[1:]
        children[attach] = rest
    parent = [NO_NODE] * len(children)
    for v, kids in enumerate(children):
        for c in kids:
            parent[c] = v
    original = list(range(t)) + [NO_NODE] * (len(children) - t)
    return BinarizedTree(Tree(parent, children), list(range(t)), original)


@dataclass(frozen=True)
class Cluster:
    root: int
    nodes: tuple[int, ...]
    leaf_boundary: Optional[int]


@dataclass(frozen=True)
class ClusterPartition:
    """Edge partition of a binary tree into connected clusters.

    Every cluster is rooted at its top node and has at most one leaf boundary,
    the only node through which further clusters hang below it. ``home[v]`` is
    the cluster holding the edge into ``v`` (for the tree root: a cluster
    rooted at it). The macro tree has the tree root and every leaf boundary as
    nodes; a leaf boundary's macro parent is the root of its cluster.
    """

    x: int
    clusters: list[Cluster]
    home: list[int]
    boundary: list[bool]
    below: dict[int, int]
    macro: Tree
    macro_nodes: list[int]
    macro_id: dict[int, int]


def cluster_partition(tree: Tree, x: int) -> ClusterPartition:
    """Bottom-up greedy clustering of a binary tree.

    A node absorbs the open clusters of its children unless the merged cluster
    would exceed ``x`` nodes or carry two leaf boundaries; then every child's
    open cluster is closed with the node as its root, and the node continues
    alone as a leaf boundary.
    """
    t = len(tree)
    if not 1 <= x <= t:
        raise ContractViolation(f"cluster parameter x={x} outside 1..{t}")
    if any(len(c) > 2 for c in tree.children):
        raise ContractViolation("cluster_partition needs a binary tree")

    clusters: list[Cluster] = []
    open_nodes: list[Optional[list[int]]] = [None] * t
    open_leaf: list[Optional[int]] = [None] * t
    for v in reversed(tree.order):
        kids = tree.children[v]
        merged = 1 + sum(len(open_nodes[c]) for c in kids)  # type: ignore[arg-type]
        leaves = [open_leaf[c] for c in kids if open_leaf[c] is not None]
        if merged <= x and len(leaves) <= 1:
            nodes = [v]
            for c in kids:
                nodes.extend(open_nodes[c])  # type: ignore[arg-type]
                open_nodes[c] = None
            open_nodes[v] = nodes
            open_leaf[v] = leaves[0] if leaves else None
        else:
            for c in kids:
                clusters.append(Cluster(v, tuple([v] + open_nodes[c]), open_leaf[c]))  # type: ignore[operator]
                open_nodes[c] = None
            open_nodes[v] = [v]
            open_leaf[v] = v
    top = open_nodes[tree.root]
    assert top is not None
    if len(top) > 1 or not clusters:
        leaf = open_leaf[tree.root]
        clusters.append(Cluster(tree.root, tuple(top), None if leaf == tree.root else leaf))

    home = [NO_NODE] * t
    memberships = [0] * t
    below: dict[int, int] = {}
    for k, cl in enumerate(clusters):
        for v in cl.nodes:
            memberships[v] += 1
        for v in cl.nodes[1:]:
            home[v] = k
        if cl.leaf_boundary is not None:
            below[cl.leaf_boundary] = k
    home[tree.root] = min(k for k, cl in enumerate(clusters) if cl.root == tree.root)

    macro_nodes = sorted({tree.root, *below}, key=lambda v: tree.tin[v])
    macro_id = {v: i for i, v in enumerate(macro_nodes)}
    macro_parent = [NO_NODE] * len(macro_nodes)
    for b, k in below.items():
        macro_parent[macro_id[b]] = macro_id[clusters[k].root]
    macro = Tree(macro_parent)

    logger.debug("cluster partition: t=%d x=%d clusters=%d macro=%d", t, x, len(clusters), len(macro))
    return ClusterPartition(
        x=x,
        clusters=clusters,
        home=home,
        boundary=[m > 1 for m in memberships],
        below=below,
        macro=macro,
        macro_nodes=macro_nodes,
        macro_id=macro_id,
    )


class LevelAncestorIndex:
    """Jump pointers: ``up[k][v]`` is the ancestor ``2**k`` levels above ``v`` (clamped at the root)."""

    __slots__ = ("depth", "up")

    def __init__(self, tree: Tree):
        t = len(tree)
        dtype = index_dtype(t)
        self.depth = np.asarray(tree.depth, dtype=dtype)
        parent = np.array([p if p != NO_NODE else v for v, p in enumerate(tree.parent)], dtype=dtype)
        levels = max(1, int(self.depth.max()).bit_length())
        table = [parent]
        for _ in range(1, levels):
            prev = table[-1]
            table.append(prev[prev])
        self.up = np.stack(table)
        self.up.flags.writeable = False
        self.depth.flags.writeable = False
        assert self.up.shape == (levels, t)

    def la(self, v: int, d: int) -> int:
        """Ancestor of ``v`` at depth ``d`` (root depth 0)."""
        dv = int(self.depth[v])
        if not 0 <= d <= dv:
            raise ContractViolation(f"depth {d} outside 0..{dv} for node {v}")
        diff = dv - d
        k = 0
        while diff:
            if diff & 1:
                v = int(self.up[k, v])
            diff >>= 1
            k += 1
        return v

    def space_words(self) -> int:
        return array_words(self.depth, self.up)


def la(idx: LevelAncestorIndex, v: int, d: int) -> int:
    return idx.la(v, d)
