"""bench: query latency and engine counters for a generated grammar, as CSV."""

import time
from typing import Callable, Optional

import click
import numpy as np

from slp_toolkit.counters import QueryStats
from slp_toolkit.ingest import generate
from slp_toolkit.lsq import LsIndex
from slp_toolkit.matcher import Pattern, iter_minimal
from slp_toolkit.models import BENCH_HEADER, BenchRecord, GrammarRecipe
from slp_toolkit.treecolor import EngineKind

from .common import flavor_option, resolve_flavor

MATCH_PATTERN_LENGTH = 3
MATCH_OCCURRENCE_LIMIT = 100


def _measure(
    recipe: str, index: LsIndex, flavor: str, op: str, calls: list[Callable[[QueryStats], object]]
) -> BenchRecord:
    stats = QueryStats()
    times = []
    for call in calls:
        start = time.perf_counter_ns()
        call(stats)
        times.append(time.perf_counter_ns() - start)
    p50, p99 = np.percentile(np.array(times, dtype=np.int64), [50, 99])
    slp = index.slp
    return BenchRecord(
        recipe=recipe,
        n=slp.n,
        N=slp.N,
        sigma=slp.sigma,
        flavor=flavor,
        op=op,
        p50_ns=int(p50),
        p99_ns=int(p99),
        engine_queries_per_op=stats.engine_queries / max(1, len(calls)),
    )


def run_bench(recipe: GrammarRecipe, flavor: EngineKind, queries: int, seed: int) -> list[BenchRecord]:
    slp = generate(recipe)
    index = LsIndex(slp, kind=flavor)
    rng = np.random.default_rng(seed)
    N, sigma = slp.N, slp.sigma
    positions = [int(x) for x in rng.integers(1, N + 1, size=queries)]
    colors = [int(x) for x in rng.integers(0, sigma, size=queries)]
    name = str(recipe)

    def first_occurrences(pattern: Pattern, stats: QueryStats) -> int:
        found = 0
        for _ in iter_minimal(index, pattern, stats):
            found += 1
            if found == MATCH_OCCURRENCE_LIMIT:
                break
        return found

    symbols = slp.alphabet.symbols
    patterns = []
    for _ in range(max(1, queries // 10)):
        picks = [symbols[int(k)] for k in rng.integers(0, sigma, size=MATCH_PATTERN_LENGTH)]
        text = bytes(picks) if slp.alphabet.byte_mode else "".join(picks)  # type: ignore[arg-type]
        patterns.append(Pattern.from_text(text, slp.alphabet))

    return [
        _measure(name, index, flavor, "access", [lambda s, i=i: index.access(i) for i in positions]),
        _measure(name, index, flavor, "ls", [lambda s, i=i, c=c: index.ls(i, c, s) for i, c in zip(positions, colors)]),
        _measure(name, index, flavor, "lp", [lambda s, i=i, c=c: index.lp(i, c, s) for i, c in zip(positions, colors)]),
        _measure(name, index, flavor, "match", [lambda s, p=p: first_occurrences(p, s) for p in patterns]),
    ]


@click.command()
@click.argument("recipe")
@flavor_option
@click.option("--queries", type=click.IntRange(min=1), default=1000, show_default=True, help="Random queries per operation")
@click.option("--seed", type=int, default=0, show_default=True, help="Seed for query positions and symbols")
@click.pass_context
def bench(ctx, recipe: str, flavor: Optional[str], queries: int, seed: int):
    """Time access, ls, lp and match on the grammar RECIPE (e.g. fibonacci:k=40)."""
    parsed = GrammarRecipe.parse(recipe)
    click.echo(BENCH_HEADER)
    for record in run_bench(parsed, resolve_flavor(ctx, flavor), queries, seed):
        click.echo(record.csv_row())
