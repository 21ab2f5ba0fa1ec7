import math

import numpy as np
import pytest

from slp_toolkit.bitpack import WORD_BITS
from slp_toolkit.counters import QueryStats
from slp_toolkit.errors import ContractViolation
from slp_toolkit.tree import NO_NODE, Tree, random_tree
from slp_toolkit.treecolor import (
    ENGINE_KINDS,
    ClusteredIndex,
    PackedColorTree,
    build_clustered,
    build_dense,
    build_engine,
    build_heavy_summary,
    build_matrix,
    naive_firstcolor,
    naive_lastcolor,
    random_colored_tree,
)

PACKED_KINDS = ("dense", "heavy", "matrix", "log", "const")

A, B = 0, 1


@pytest.fixture
def path_example():
    # root 0 - 1 - 2 - 3 - 4; C(0) = {a}, C(2) = {a, b}, C(4) = {b}
    tree = Tree([NO_NODE, 0, 1, 2, 3])
    return PackedColorTree.from_sets(tree, 2, [{A}, set(), {A, B}, set(), {B}])


@pytest.mark.parametrize("kind", ENGINE_KINDS)
def test_path_example(path_example, kind):
    engine = build_engine(path_example, kind)
    assert engine.firstcolor(4, A) == 2
    assert engine.firstcolor(1, A) == 0
    assert engine.firstcolor(1, B) is None
    assert engine.lastcolor(0, 4, B, True) == 2
    assert engine.lastcolor(2, 4, B, False) == 4
    assert engine.lastcolor(2, 4, B, True) == 2
    assert engine.lastcolor(3, 3, B, True) is None


@pytest.mark.parametrize("kind", ENGINE_KINDS)
def test_contract_checks(path_example, kind):
    engine = build_engine(path_example, kind)
    with pytest.raises(ContractViolation):
        engine.firstcolor(5, A)
    with pytest.raises(ContractViolation):
        engine.firstcolor(0, 2)
    with pytest.raises(ContractViolation):
        engine.lastcolor(4, 2, A)


def test_unknown_engine_kind(path_example):
    with pytest.raises(ValueError):
        build_engine(path_example, "fast")
    with pytest.raises(ValueError):
        ClusteredIndex(path_example, "quick")  # type: ignore[arg-type]


def test_single_node_tree():
    ct = PackedColorTree.from_sets(Tree([NO_NODE]), 3, [{1}])
    for kind in ENGINE_KINDS:
        engine = build_engine(ct, kind)
        assert engine.firstcolor(0, 1) == 0
        assert engine.firstcolor(0, 2) is None
        assert engine.lastcolor(0, 0, 1, True) == 0
        assert engine.lastcolor(0, 0, 1, False) is None


def check_against_naive(ct: PackedColorTree, kinds, rng: np.random.Generator, queries: int = 0) -> None:
    engines = [build_engine(ct, kind) for kind in kinds]
    tree = ct.tree
    if queries:
        picks = [(int(rng.integers(0, len(tree))), int(rng.integers(0, ct.sigma))) for _ in range(queries)]
    else:
        picks = [(v, c) for v in range(len(tree)) for c in range(ct.sigma)]
    for v, c in picks:
        first = naive_firstcolor(ct, v, c)
        path = tree.path_to_root(v)
        u = path[int(rng.integers(0, len(path)))]
        for include_u in (True, False):
            last = naive_lastcolor(ct, u, v, c, include_u)
            for engine in engines:
                assert engine.firstcolor(v, c) == first, (engine.kind, v, c)
                assert engine.lastcolor(u, v, c, include_u) == last, (engine.kind, u, v, c, include_u)


@pytest.mark.parametrize("seed", range(12))
def test_engines_agree_with_naive(seed):
    rng = np.random.default_rng(seed)
    tree = random_tree(int(rng.integers(1, 129)), rng)
    sigma = (3, 30, 64, 96)[seed % 4]
    ct = random_colored_tree(tree, sigma, rng, density=0.05)
    exhaustive = len(tree) * sigma <= 1500
    check_against_naive(ct, PACKED_KINDS, rng, queries=0 if exhaustive else 1500)


@pytest.mark.parametrize("shape", ["path", "star", "caterpillar"])
def test_engines_on_degenerate_shapes(shape):
    rng = np.random.default_rng(3)
    t = 300
    if shape == "path":
        parent = [NO_NODE] + list(range(t - 1))
    elif shape == "star":
        parent = [NO_NODE] + [0] * (t - 1)
    else:
        parent = [NO_NODE] + [v - 1 if v % 2 else max(0, v - 2) for v in range(1, t)]
    ct = random_colored_tree(Tree(parent), 5, rng, density=0.05)
    check_against_naive(ct, PACKED_KINDS, rng, queries=600)


@pytest.mark.slow
@pytest.mark.parametrize("t", [1000, 4096])
def test_engines_agree_large(t):
    rng = np.random.default_rng(t)
    for sigma in (3, 200):
        ct = random_colored_tree(random_tree(t, rng), sigma, rng, density=0.05)
        check_against_naive(ct, ("dense", "heavy", "log", "const"), rng, queries=2000)


def test_heavy_engine_hops_are_logarithmic():
    rng = np.random.default_rng(11)
    tree = random_tree(1000, rng)
    ct = random_colored_tree(tree, 8, rng, density=0.02)
    engine = build_engine(ct, "heavy")
    bound = math.floor(math.log2(len(tree))) + 1
    for _ in range(300):
        v = int(rng.integers(0, len(tree)))
        c = int(rng.integers(0, 8))
        stats = QueryStats()
        engine.firstcolor(v, c, stats)
        assert stats.path_hops <= bound
        stats = QueryStats()
        engine.lastcolor(tree.root, v, c, True, stats)
        assert stats.path_hops <= bound


@pytest.mark.parametrize("flavor", ["log", "const"])
def test_clustered_query_stages(flavor):
    rng = np.random.default_rng(5)
    tree = random_tree(1500, rng)
    ct = random_colored_tree(tree, 6, rng, density=0.01)
    engine = ClusteredIndex(ct, flavor)
    assert engine.n_clusters > 1
    for _ in range(400):
        v = int(rng.integers(0, len(tree)))
        c = int(rng.integers(0, 6))
        path = tree.path_to_root(v)
        u = path[int(rng.integers(0, len(path)))]
        for stats_call in (
            lambda s: engine.firstcolor(v, c, s),
            lambda s: engine.lastcolor(u, v, c, True, s),
        ):
            stats = QueryStats()
            stats_call(stats)
            assert stats.macro_calls <= 3
            assert stats.cluster_calls <= 3
            if flavor == "log":
                assert stats.tree_steps <= 2 * math.log2(WORD_BITS) + 8


def test_space_accounting():
    rng = np.random.default_rng(9)
    for t in (50, 300):
        for sigma in (3, 200):
            ct = random_colored_tree(random_tree(t, rng), sigma, rng, density=0.05)
            linear = t + t * sigma / WORD_BITS
            assert build_engine(ct, "heavy").space_words() <= 16 * linear
            assert build_engine(ct, "matrix").space_words() <= 16 * linear
            assert build_engine(ct, "dense").space_words() <= 16 * (t + t * sigma)
            for flavor in ("log", "const"):
                assert build_engine(ct, flavor).space_words() <= 16 * linear


@pytest.mark.parametrize(
    "builder",
    [build_dense, build_heavy_summary, build_matrix, build_clustered, lambda ct: build_clustered(ct, "const")],
)
def test_named_builders(path_example, builder):
    engine = builder(path_example)
    assert engine.firstcolor(3, B) == 2
    assert engine.lastcolor(0, 3, A, False) == 2
