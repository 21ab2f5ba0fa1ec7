"""Packed colored trees and the query interface every engine implements."""

from __future__ import annotations

from abc import ABC, abstractmethod
from typing import Iterable, Optional, Sequence

import numpy as np

from slp_toolkit.bitpack import WORD_DTYPE, BitString, canonicalize, has_bit, pack_rows, words_for
from slp_toolkit.counters import QueryStats
from slp_toolkit.errors import ContractViolation
from slp_toolkit.tree import Tree


class PackedColorTree:
    """A tree whose node ``v`` carries the color set ``C(v)`` as a ``sigma``-bit word row.

    ``colors`` has shape ``(t, ceil(sigma / 64))``; row ``v`` is ``C(v)``.
    """

    __slots__ = ("tree", "sigma", "colors")

    def __init__(self, tree: Tree, sigma: int, colors: Optional[np.ndarray] = None):
        if sigma < 0:
            raise ContractViolation(f"sigma must be non-negative, got {sigma}")
        shape = (len(tree), words_for(sigma))
        if colors is None:
            arr = np.zeros(shape, dtype=WORD_DTYPE)
        else:
            arr = np.array(colors, dtype=WORD_DTYPE)
            if arr.shape != shape:
                raise ContractViolation(f"color rows have shape {arr.shape}, expected {shape}")
        canonicalize(arr, sigma)
        arr.flags.writeable = False
        self.tree = tree
        self.sigma = sigma
        self.colors = arr

    @classmethod
    def from_sets(cls, tree: Tree, sigma: int, sets: Sequence[Iterable[int]]) -> "PackedColorTree":
        if len(sets) != len(tree):
            raise ContractViolation(f"{len(sets)} color sets for {len(tree)} nodes")
        rows = np.stack([BitString.from_indices(sigma, s).words for s in sets])
        return cls(tree, sigma, rows.reshape(len(tree), words_for(sigma)))

    def __len__(self) -> int:
        return len(self.tree)

    def has(self, v: int, c: int) -> bool:
        return has_bit(self.colors[v], c)


def random_colored_tree(
    tree: Tree, sigma: int, rng: np.random.Generator, density: float = 0.1
) -> PackedColorTree:
    bits = rng.random((len(tree), sigma)) < density
    return PackedColorTree(tree, sigma, pack_rows(bits))


class ColorQueryEngine(ABC):
    """firstcolor / lastcolor over a packed colored tree.

    ``firstcolor(v, c)`` is the deepest node on the root-to-``v`` path (``v``
    included) colored ``c``. ``lastcolor(u, v, c, include_u)`` is the shallowest
    node colored ``c`` on the path from ancestor ``u`` down to ``v``; ``v`` is
    always on the path, ``u`` only when ``include_u`` is set.
    """

    kind: str = "abstract"

    def __init__(self, ct: PackedColorTree):
        self.ct = ct

    @property
    def tree(self) -> Tree:
        return self.ct.tree

    @property
    def sigma(self) -> int:
        return self.ct.sigma

    def _check_node(self, v: int) -> None:
        if not 0 <= v < len(self.ct.tree):
            raise ContractViolation(f"node {v} outside 0..{len(self.ct.tree) - 1}")

    def _check_color(self, c: int) -> None:
        if not 0 <= c < self.ct.sigma:
            raise ContractViolation(f"color {c} outside 0..{self.ct.sigma - 1}")

    def _check_first(self, v: int, c: int) -> None:
        self._check_node(v)
        self._check_color(c)

    def _check_last(self, u: int, v: int, c: int) -> None:
        self._check_node(u)
        self._check_node(v)
        self._check_color(c)
        if not self.ct.tree.is_ancestor(u, v):
            raise ContractViolation(f"node {u} is not an ancestor of node {v}")

    @abstractmethod
    def firstcolor(self, v: int, c: int, stats: Optional[QueryStats] = None) -> Optional[int]:
        ...

    @abstractmethod
    def lastcolor(
        self, u: int, v: int, c: int, include_u: bool = True, stats: Optional[QueryStats] = None
    ) -> Optional[int]:
        ...

    @abstractmethod
    def space_words(self) -> int:
        """Words held by the index (color rows it keeps, tables, per-node scalars)."""
