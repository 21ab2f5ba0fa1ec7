"""Labelled successor / predecessor queries on an SLP.

``ls(i, c)`` is the least ``j > i`` with ``S[j] = c`` and ``lp(i, c)`` the greatest
``j < i``. Both walk up the heavy trees crossed by ``access(i)``, asking one
lastcolor per tree for the nearest light subtree on the wanted side that holds
``c``, then descend into it with firstcolor / lastcolor queries on the
``L`` (light left child) and ``R`` (light right child) color sets.

One engine per heavy tree carries both sets: color ``c`` is ``c`` in ``L`` and
``sigma + c`` in ``R``. Trees without any light child get no engine.
"""

from __future__ import annotations

import logging
from typing import Optional, Sequence

import numpy as np

from slp_toolkit.bitpack import WORD_DTYPE, array_words, has_bit, pack_rows, unpack_rows, words_for
from slp_toolkit.counters import QueryStats
from slp_toolkit.errors import QueryOutOfRangeError
from slp_toolkit.slp import AccessTrace, Slp, SlpHeavyForest, Visit
from slp_toolkit.treecolor import ColorQueryEngine, EngineKind, PackedColorTree, build_engine

logger = logging.getLogger(__name__)


class LsIndex:
    def __init__(self, slp: Slp, forest: Optional[SlpHeavyForest] = None, kind: EngineKind = "log"):
        self.slp = slp
        self.forest = forest if forest is not None else SlpHeavyForest(slp)
        if self.forest.slp is not slp:
            raise ValueError("heavy forest was built for a different SLP")
        self.kind = kind
        n, sigma = slp.n, slp.sigma
        n_words = words_for(sigma)

        chars = np.zeros((n, n_words), dtype=WORD_DTYPE)
        left_colors = np.zeros((n, n_words), dtype=WORD_DTYPE)
        right_colors = np.zeros((n, n_words), dtype=WORD_DTYPE)
        for v in slp.topo_order:
            s = slp.symbol[v]
            if s >= 0:
                chars[v, s >> 6] = WORD_DTYPE(1 << (s & 63))
                continue
            left, right = slp.left[v], slp.right[v]
            chars[v] = chars[left] | chars[right]
            if self.forest.heavy_is_left[v]:
                right_colors[v] = chars[right]
            else:
                left_colors[v] = chars[left]
        chars.flags.writeable = False
        self.chars = chars

        combined = pack_rows(np.hstack([unpack_rows(left_colors, sigma), unpack_rows(right_colors, sigma)]))
        self._engines: list[Optional[ColorQueryEngine]] = []
        for ft in self.forest.trees:
            rows = combined[ft.nodes]
            if not rows.any():
                self._engines.append(None)
                continue
            self._engines.append(build_engine(PackedColorTree(ft.tree, 2 * sigma, rows), kind))
        logger.debug(
            "ls index (%s): n=%d N=%d sigma=%d trees=%d", kind, n, slp.N, sigma, len(self.forest.trees)
        )

    def color_of(self, symbol) -> Optional[int]:
        return self.slp.alphabet.index(symbol)

    def access(self, i: int) -> AccessTrace:
        return self.forest.access(i)

    def occurs(self, v: int, c: int) -> bool:
        """True when ``c`` occurs in ``S(v)``."""
        return has_bit(self.chars[v], c)

    def _offset(self, visit: Visit, z: int) -> int:
        d = self.forest.heavy_offset
        return visit.offset + d[visit.entry] - d[z]

    def _in_alphabet(self, c: Optional[int]) -> bool:
        return c is not None and 0 <= c < self.slp.sigma

    def _count(self, stats: Optional[QueryStats], walkup: bool) -> None:
        if stats is None:
            return
        stats.engine_queries += 1
        if walkup:
            stats.walkup_queries += 1
        else:
            stats.descent_queries += 1

    def ls(self, i: int, c: Optional[int], stats: Optional[QueryStats] = None) -> Optional[int]:
        """Least ``j > i`` with ``S[j] = c`` (``0 <= i <= N``), or None."""
        slp = self.slp
        if not 0 <= i <= slp.N:
            raise QueryOutOfRangeError(f"ls position {i} outside 0..{slp.N}")
        if stats is not None:
            stats.ls_calls += 1
        if not self._in_alphabet(c) or i == slp.N:
            return None
        assert c is not None
        if i == 0:
            return self._first_in(slp.root, 0, c, stats) if self.occurs(slp.root, c) else None

        trace = self.forest.access(i)
        if stats is not None:
            stats.visits += len(trace.visits)
        for visit in reversed(trace.visits):
            u = visit.exit
            if visit.side == "left":
                # the heavy right child of the exit node follows position i
                heavy = slp.right[u]
                if self.occurs(heavy, c):
                    return self._first_in(heavy, self._offset(visit, u) + slp.lengths[slp.left[u]], c, stats)
            z = self._last_on_path(visit, slp.sigma + c, visit.side == "left", stats)
            if z is not None:
                return self._first_in(slp.right[z], self._offset(visit, z) + slp.lengths[slp.left[z]], c, stats)
        return None

    def lp(self, i: int, c: Optional[int], stats: Optional[QueryStats] = None) -> Optional[int]:
        """Greatest ``j < i`` with ``S[j] = c`` (``1 <= i <= N + 1``), or None."""
        slp = self.slp
        if not 1 <= i <= slp.N + 1:
            raise QueryOutOfRangeError(f"lp position {i} outside 1..{slp.N + 1}")
        if stats is not None:
            stats.lp_calls += 1
        if not self._in_alphabet(c) or i == 1:
            return None
        assert c is not None
        if i == slp.N + 1:
            return self._last_in(slp.root, 0, c, stats) if self.occurs(slp.root, c) else None

        trace = self.forest.access(i)
        if stats is not None:
            stats.visits += len(trace.visits)
        for visit in reversed(trace.visits):
            u = visit.exit
            if visit.side == "right":
                heavy = slp.left[u]
                if self.occurs(heavy, c):
                    return self._last_in(heavy, self._offset(visit, u), c, stats)
            z = self._last_on_path(visit, c, visit.side == "right", stats)
            if z is not None:
                return self._last_in(slp.left[z], self._offset(visit, z), c, stats)
        return None

    def _firstcolor(self, t: int, v: int, c: int, stats: Optional[QueryStats]) -> Optional[int]:
        engine = self._engines[t]
        return None if engine is None else engine.firstcolor(v, c, stats)

    def _lastcolor(
        self, t: int, u: int, v: int, c: int, include_u: bool, stats: Optional[QueryStats]
    ) -> Optional[int]:
        engine = self._engines[t]
        return None if engine is None else engine.lastcolor(u, v, c, include_u, stats)

    def _last_on_path(
        self,
        visit: Visit,
        c: int,
        include_exit: bool,
        stats: Optional[QueryStats],
    ) -> Optional[int]:
        forest = self.forest
        self._count(stats, walkup=True)
        exit_local, entry_local = int(forest.local[visit.exit]), int(forest.local[visit.entry])
        z = self._lastcolor(visit.tree, exit_local, entry_local, c, include_exit, stats)
        return None if z is None else forest.trees[visit.tree].nodes[z]

    def _first_in(self, w: int, o: int, c: int, stats: Optional[QueryStats]) -> int:
        """Position of the first ``c`` in ``S(w)``, where ``S(w)`` starts after offset ``o``."""
        slp, forest = self.slp, self.forest
        d = forest.heavy_offset
        while True:
            t = int(forest.tree_of[w])
            ft = forest.trees[t]
            lw = int(forest.local[w])
            self._count(stats, walkup=False)
            z = self._firstcolor(t, lw, c, stats)
            if z is not None:
                node = ft.nodes[z]
                o += d[w] - d[node]
                w = slp.left[node]
                continue
            if slp.symbol[ft.root] == c:
                return o + d[w] + 1
            self._count(stats, walkup=False)
            z = self._lastcolor(t, 0, lw, slp.sigma + c, True, stats)
            assert z is not None, f"symbol {c} missing below rule {w}"
            node = ft.nodes[z]
            o += d[w] - d[node] + slp.lengths[slp.left[node]]
            w = slp.right[node]

    def _last_in(self, w: int, o: int, c: int, stats: Optional[QueryStats]) -> int:
        """Position of the last ``c`` in ``S(w)``, where ``S(w)`` starts after offset ``o``."""
        slp, forest = self.slp, self.forest
        d = forest.heavy_offset
        while True:
            t = int(forest.tree_of[w])
            ft = forest.trees[t]
            lw = int(forest.local[w])
            self._count(stats, walkup=False)
            z = self._firstcolor(t, lw, slp.sigma + c, stats)
            if z is not None:
                node = ft.nodes[z]
                o += d[w] - d[node] + slp.lengths[slp.left[node]]
                w = slp.right[node]
                continue
            if slp.symbol[ft.root] == c:
                return o + d[w] + 1
            self._count(stats, walkup=False)
            z = self._lastcolor(t, 0, lw, c, True, stats)
            assert z is not None, f"symbol {c} missing below rule {w}"
            node = ft.nodes[z]
            o += d[w] - d[node]
            w = slp.left[node]

    def space_words(self) -> int:
        forest = self.forest
        # chars rows, one offset word per rule, the tree_of / local tables and one heavy side bit per rule
        words = self.chars.size + self.slp.n + array_words(forest.tree_of, forest.local) + words_for(self.slp.n)
        for engine in self._engines:
            if engine is not None:
                words += engine.space_words() + array_words(engine.ct.colors)
        return words


def build_ls_index(slp: Slp, forest: Optional[SlpHeavyForest] = None, kind: EngineKind = "log") -> LsIndex:
    return LsIndex(slp, forest, kind)


def scan_ls(text: Sequence[int], i: int, c: int) -> Optional[int]:
    """Linear-scan labelled successor over dense indices (``text[0]`` is ``S[1]``)."""
    for j in range(i, len(text)):
        if text[j] == c:
            return j + 1
    return None


def scan_lp(text: Sequence[int], i: int, c: int) -> Optional[int]:
    for j in range(i - 2, -1, -1):
        if text[j] == c:
            return j + 1
    return None
