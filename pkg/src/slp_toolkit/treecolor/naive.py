"""Parent-chain walks: the ground truth every packed engine is checked against."""

from typing import Optional

from slp_toolkit.counters import QueryStats
from slp_toolkit.tree import NO_NODE
from slp_toolkit.treecolor.base import ColorQueryEngine, PackedColorTree


def naive_firstcolor(ct: PackedColorTree, v: int, c: int) -> Optional[int]:
    x = v
    while x != NO_NODE:
        if ct.has(x, c):
            return x
        x = ct.tree.parent[x]
    return None


def naive_lastcolor(ct: PackedColorTree, u: int, v: int, c: int, include_u: bool = True) -> Optional[int]:
    best = None
    x = v
    while x != u:
        if ct.has(x, c):
            best = x
        x = ct.tree.parent[x]
    if include_u and ct.has(u, c):
        best = u
    return best


class NaiveEngine(ColorQueryEngine):
    kind = "naive"

    def firstcolor(self, v: int, c: int, stats: Optional[QueryStats] = None) -> Optional[int]:
        self._check_first(v, c)
        return naive_firstcolor(self.ct, v, c)

    def lastcolor(
        self, u: int, v: int, c: int, include_u: bool = True, stats: Optional[QueryStats] = None
    ) -> Optional[int]:
        self._check_last(u, v, c)
        return naive_lastcolor(self.ct, u, v, c, include_u)

    def space_words(self) -> int:
        return self.ct.colors.size
