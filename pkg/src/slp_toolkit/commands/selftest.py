"""selftest: oracle-equivalence suites over random inputs."""

import functools
import math
import time
from typing import Callable, Optional, TypeVar

import click
import numpy as np

from slp_toolkit.bitpack import BitMatrix, BitString, lsb_index, msb_index, transpose, unpack_rows
from slp_toolkit.ingest import fibonacci, ingest_text, random_text
from slp_toolkit.lsq import LsIndex, scan_lp, scan_ls
from slp_toolkit.matcher import Pattern, match_minimal, oracle_match_minimal
from slp_toolkit.models import SuiteResult
from slp_toolkit.slp import Slp, SlpFile, SlpHeavyForest
from slp_toolkit.tree import NO_NODE, random_tree
from slp_toolkit.treecolor import PackedColorTree, build_engine, naive_lastcolor, random_colored_tree

SHAPES = (1, 7, 63, 64, 65, 200)
SIGMAS = (3, 30, 64, 200)
TEXT_SIGMAS = (2, 4, 26, 256)
PATTERN_LENGTHS = (1, 2, 3, 5, 10)
ENGINES = ("dense", "heavy", "matrix", "log", "const")

MAX_TREE = 4096
TREES_PER_CASE = 25
SCALE_QUERIES_PER_CASE = 50
MATCH_TEXTS_PER_CASE = 5
WINDOW = 10_000
LATENCY_MS = 1.0

Suite = Callable[[np.random.Generator, int], SuiteResult]
T = TypeVar("T")


def _texts(rng: np.random.Generator, cases: int, max_len: int = 300) -> list:
    texts: list = []
    for k in range(cases):
        sigma = TEXT_SIGMAS[k % len(TEXT_SIGMAS)]
        texts.append(random_text(int(rng.integers(1, max_len)), sigma, rng))
    texts += ["abcabcabc", "a" * 65, "ab" * 40, "mississippi"]
    return texts


def bit_kernels(rng: np.random.Generator, cases: int) -> SuiteResult:
    result = SuiteResult(name="bit kernels")
    for _ in range(cases):
        rows, cols = (int(x) for x in rng.choice(SHAPES, size=2))
        bits = rng.random((rows, cols)) < 0.3
        result.cases += 1
        if not np.array_equal(transpose(BitMatrix.from_bools(bits)).to_bools(), bits.T):
            result.fail(f"transpose {rows}x{cols}")
        row = BitString.from_bools(bits[0])
        set_bits = np.flatnonzero(bits[0])
        want = (int(set_bits[0]), int(set_bits[-1])) if set_bits.size else (None, None)
        result.cases += 1
        if (lsb_index(row), msb_index(row)) != want:
            result.fail(f"lsb/msb on {cols} bits")
    return result


def firstcolor_table(ct: PackedColorTree) -> np.ndarray:
    """``table[v, c]``: the deepest ``c``-colored node on the root-to-``v`` path, -1 when none."""
    tree = ct.tree
    bits = unpack_rows(ct.colors, ct.sigma)
    table = np.full((len(tree), ct.sigma), -1, dtype=np.int64)
    for v in tree.order:
        p = tree.parent[v]
        above = table[p] if p != NO_NODE else table[v]
        table[v] = np.where(bits[v], v, above)
    return table


def tree_color(rng: np.random.Generator, cases: int, max_tree: int = MAX_TREE) -> SuiteResult:
    """Every engine against the walk oracles: all ``(v, c)`` for firstcolor, ``t`` random lastcolor queries."""
    result = SuiteResult(name="tree color engines")
    for k in range(TREES_PER_CASE * cases):
        t = min(max_tree, int(math.exp(rng.uniform(0, math.log(max_tree)))))
        tree = random_tree(max(1, t), rng)
        ct = random_colored_tree(tree, SIGMAS[k % len(SIGMAS)], rng, density=0.05)
        engines = [build_engine(ct, kind) for kind in ENGINES]
        table = firstcolor_table(ct).tolist()

        for engine in engines:
            for v, row in enumerate(table):
                for c, want in enumerate(row):
                    result.cases += 1
                    got = engine.firstcolor(v, c)
                    if got != (None if want < 0 else want):
                        result.fail(f"{engine.kind}: t={len(tree)} firstcolor({v}, {c}) = {got}, want {want}")

        for _ in range(max(50, len(tree))):
            v = int(rng.integers(0, len(tree)))
            c = int(rng.integers(0, ct.sigma))
            path = tree.path_to_root(v)
            u = path[int(rng.integers(0, len(path)))]
            include_u = bool(rng.integers(0, 2))
            want = naive_lastcolor(ct, u, v, c, include_u)
            for engine in engines:
                result.cases += 1
                got = engine.lastcolor(u, v, c, include_u)
                if got != want:
                    query = f"lastcolor({u}, {v}, {c}, {include_u})"
                    result.fail(f"{engine.kind}: t={len(tree)} {query} = {got}, want {want}")
    return result


def random_access(rng: np.random.Generator, cases: int) -> SuiteResult:
    result = SuiteResult(name="random access")
    for text in _texts(rng, cases):
        slp = ingest_text(text)
        forest = SlpHeavyForest(slp)
        expanded = slp.expand_indices()
        for i in range(1, slp.N + 1):
            result.cases += 1
            if forest.access(i).symbol != expanded[i - 1]:
                result.fail(f"access({i}) on {len(text)} symbols")
    return result


def labelled_successor(rng: np.random.Generator, cases: int) -> SuiteResult:
    result = SuiteResult(name="labelled successor/predecessor")
    for text in _texts(rng, max(1, cases // 2), max_len=120):
        slp = ingest_text(text)
        expanded = slp.expand_indices()
        for kind in ("log", "const"):
            index = LsIndex(slp, kind=kind)
            for c in range(slp.sigma):
                for i in range(0, slp.N + 1):
                    result.cases += 2
                    if index.ls(i, c) != scan_ls(expanded, i, c):
                        result.fail(f"{kind} ls({i}, {c})")
                    if index.lp(i + 1, c) != scan_lp(expanded, i + 1, c):
                        result.fail(f"{kind} lp({i + 1}, {c})")
    return result


def check_ls_window(slp: Slp, i: int, c: int, j: Optional[int]) -> bool:
    """``S[j] = c`` with no ``c`` in ``S[i+1 .. j-1]``, decompressing at most ``WINDOW`` symbols."""
    if j is None:
        return slp.N - i > WINDOW or i == slp.N or c not in slp.extract_indices(i + 1, slp.N)
    if j <= i:
        return False
    gap = slp.extract_indices(i + 1, min(j, i + WINDOW))
    if j - i <= WINDOW:
        return gap[-1] == c and c not in gap[:-1]
    return slp.extract_indices(j, j)[0] == c and c not in gap


def check_lp_window(slp: Slp, i: int, c: int, k: Optional[int]) -> bool:
    """``S[k] = c`` with no ``c`` in ``S[k+1 .. i-1]``, decompressing at most ``WINDOW`` symbols."""
    if k is None:
        return i - 1 > WINDOW or i == 1 or c not in slp.extract_indices(1, i - 1)
    if k >= i:
        return False
    gap = slp.extract_indices(max(k, i - WINDOW), i - 1)
    if i - k <= WINDOW:
        return gap[0] == c and c not in gap[1:]
    return slp.extract_indices(k, k)[0] == c and c not in gap


def compressed_scale(rng: np.random.Generator, cases: int, latency_ms: float = LATENCY_MS) -> SuiteResult:
    """access / ls / lp on fibonacci(80), checked by window decompression, with a median latency bound."""
    result = SuiteResult(name="fibonacci(80) access/ls/lp")
    slp = fibonacci(80)
    index = LsIndex(slp)
    timings: dict[str, list[int]] = {"access": [], "ls": [], "lp": []}

    def timed(op: str, call: Callable[[], T]) -> T:
        start = time.perf_counter_ns()
        answer = call()
        timings[op].append(time.perf_counter_ns() - start)
        return answer

    for _ in range(SCALE_QUERIES_PER_CASE * cases):
        i = int(rng.integers(1, slp.N + 1))
        c = int(rng.integers(0, slp.sigma))
        result.cases += 3
        trace = timed("access", lambda: index.access(i))
        if trace.symbol != slp.extract_indices(i, i)[0]:
            result.fail(f"access({i})")
        j = timed("ls", lambda: index.ls(i, c))
        if not check_ls_window(slp, i, c, j):
            result.fail(f"ls({i}, {c}) = {j}")
        k = timed("lp", lambda: index.lp(i, c))
        if not check_lp_window(slp, i, c, k):
            result.fail(f"lp({i}, {c}) = {k}")

    for op, samples in timings.items():
        result.cases += 1
        median_ms = float(np.median(samples)) / 1e6
        if median_ms >= latency_ms:
            result.fail(f"{op} median latency {median_ms:.3f} ms over the {latency_ms} ms bound")
    return result


def subsequence_matching(rng: np.random.Generator, cases: int) -> SuiteResult:
    """Match on the stored-then-reloaded grammar against the plain-string oracle on the original text."""
    result = SuiteResult(name="subsequence matching")
    for text in _texts(rng, MATCH_TEXTS_PER_CASE * cases):
        slp = SlpFile.loads(SlpFile.dumps(ingest_text(text)))
        index = LsIndex(slp)
        symbols = list(slp.alphabet.symbols)
        for m in PATTERN_LENGTHS:
            picks = [symbols[int(k)] for k in rng.integers(0, len(symbols), size=m)]
            pattern = bytes(picks) if slp.alphabet.byte_mode else "".join(picks)
            result.cases += 1
            got = match_minimal(index, Pattern.from_text(pattern, slp.alphabet))
            if got != oracle_match_minimal(text, pattern):
                result.fail(f"pattern {pattern!r} on {len(text)} symbols")
    return result


def round_trip(rng: np.random.Generator, cases: int) -> SuiteResult:
    result = SuiteResult(name="compress round trip")
    for text in _texts(rng, cases) + ["\\ \t\né\U0001f600", b"\x00\xff\n"]:
        result.cases += 1
        slp = SlpFile.loads(SlpFile.dumps(ingest_text(text)))
        if slp.expand() != text:
            result.fail(f"round trip of {len(text)} symbols")
    return result


def suites(max_tree: int = MAX_TREE, latency_ms: float = LATENCY_MS) -> tuple[Suite, ...]:
    return (
        bit_kernels,
        functools.partial(tree_color, max_tree=max_tree),
        random_access,
        labelled_successor,
        functools.partial(compressed_scale, latency_ms=latency_ms),
        subsequence_matching,
        round_trip,
    )


def run_suites(
    seed: int, cases: int, max_tree: int = MAX_TREE, latency_ms: float = LATENCY_MS
) -> list[SuiteResult]:
    rng = np.random.default_rng(seed)
    return [suite(rng, cases) for suite in suites(max_tree, latency_ms)]


@click.command()
@click.option("--seed", type=int, default=0, show_default=True, help="Random seed for generated inputs")
@click.option(
    "--cases",
    type=click.IntRange(min=1),
    default=20,
    show_default=True,
    help=(
        f"Scale of every suite: {TREES_PER_CASE} trees, {SCALE_QUERIES_PER_CASE} fibonacci(80) queries "
        f"and {MATCH_TEXTS_PER_CASE} matching texts per case"
    ),
)
@click.option(
    "--max-tree",
    type=click.IntRange(min=1),
    default=MAX_TREE,
    show_default=True,
    help="Largest random tree in the tree color suite",
)
@click.option(
    "--latency-ms",
    type=click.FloatRange(min=0, min_open=True),
    default=LATENCY_MS,
    show_default=True,
    help="Median latency bound for fibonacci(80) access/ls/lp",
)
@click.pass_context
def selftest(ctx, seed: int, cases: int, max_tree: int, latency_ms: float):
    """Check every query structure against its plain-string oracle."""
    click.echo(f"🔍 Running {len(suites())} suites (seed={seed}, cases={cases}, max_tree={max_tree})")
    click.echo("─" * 60)
    results = run_suites(seed, cases, max_tree, latency_ms)
    for result in results:
        click.echo(result.str_line())
        for detail in result.details:
            click.echo(f"   {detail}")
    click.echo("─" * 60)
    if all(r.ok for r in results):
        click.echo("🎉 All suites passed.")
        return
    click.echo("❌ Some suites failed.", err=True)
    ctx.exit(1)
