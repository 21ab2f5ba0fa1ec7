"""Packed tree color engines behind a single firstcolor / lastcolor interface."""

from typing import Literal, get_args

from .base import ColorQueryEngine, PackedColorTree, random_colored_tree
from .clustered import ClusteredIndex, Flavor
from .dense import DenseIndex
from .heavy import HeavySummaryIndex
from .matrix import MatrixIndex
from .naive import NaiveEngine, naive_firstcolor, naive_lastcolor

EngineKind = Literal["log", "const", "dense", "heavy", "matrix", "naive"]

ENGINE_KINDS: tuple[str, ...] = get_args(EngineKind)


def build_dense(ct: PackedColorTree) -> DenseIndex:
    return DenseIndex(ct)


def build_heavy_summary(ct: PackedColorTree) -> HeavySummaryIndex:
    return HeavySummaryIndex(ct)


def build_matrix(ct: PackedColorTree) -> MatrixIndex:
    return MatrixIndex(ct)


def build_clustered(ct: PackedColorTree, flavor: Flavor = "log") -> ClusteredIndex:
    return ClusteredIndex(ct, flavor)


def build_engine(ct: PackedColorTree, kind: EngineKind = "log") -> ColorQueryEngine:
    """Build the engine named by ``kind``: a clustered flavor (``log``/``const``) or a plain engine."""
    if kind in ("log", "const"):
        return ClusteredIndex(ct, kind)  # type: ignore[arg-type]
    if kind == "dense":
        return DenseIndex(ct)
    if kind == "heavy":
        return HeavySummaryIndex(ct)
    if kind == "matrix":
        return MatrixIndex(ct)
    if kind == "naive":
        return NaiveEngine(ct)
    raise ValueError(f"Invalid engine kind: {kind}. Must be one of {', '.join(ENGINE_KINDS)}.")


__all__ = [
    "ENGINE_KINDS",
    "ClusteredIndex",
    "ColorQueryEngine",
    "DenseIndex",
    "EngineKind",
    "Flavor",
    "HeavySummaryIndex",
    "MatrixIndex",
    "NaiveEngine",
    "PackedColorTree",
    "build_clustered",
    "build_dense",
    "build_engine",
    "build_heavy_summary",
    "build_matrix",
    "naive_firstcolor",
    "naive_lastcolor",
    "random_colored_tree",
]
