"""Build SLPs from text (greedy pair replacement) and from synthetic recipes."""

from __future__ import annotations

import logging
from collections import Counter
from typing import Optional, Union

import numpy as np

from slp_toolkit.errors import ContractViolation
from slp_toolkit.models import GrammarRecipe
from slp_toolkit.settings import get_settings
from slp_toolkit.slp import Alphabet, Nonterminal, Rule, Slp, Terminal

logger = logging.getLogger(__name__)

RANDOM_LENGTH_CAP = 1_000_000

Pair = tuple[int, int]


def most_frequent_pair(seq: list[int]) -> Optional[tuple[Pair, int]]:
    """Most frequent adjacent pair, counting runs like ``aaa`` once per non-overlapping pair."""
    counts: Counter[Pair] = Counter()
    parity = 0
    for k in range(len(seq) - 1):
        if seq[k] == seq[k + 1]:
            parity += 1
            if parity == 2:
                parity = 0
                continue
        else:
            parity = 0
        counts[(seq[k], seq[k + 1])] += 1
    if not counts:
        return None
    return counts.most_common(1)[0]


def replace_pair(seq: list[int], pair: Pair, rule: int) -> list[int]:
    out = []
    k = 0
    a, b = pair
    while k < len(seq):
        if k + 1 < len(seq) and seq[k] == a and seq[k + 1] == b:
            out.append(rule)
            k += 2
        else:
            out.append(seq[k])
            k += 1
    return out


class _RuleBuilder:
    def __init__(self, sigma: int):
        self.rules: list[Rule] = [Terminal(k) for k in range(sigma)]
        self._pairs: dict[Pair, int] = {}

    def pair(self, left: int, right: int) -> int:
        key = (left, right)
        rule = self._pairs.get(key)
        if rule is None:
            rule = len(self.rules)
            self.rules.append(Nonterminal(left, right))
            self._pairs[key] = rule
        return rule

    def balance(self, seq: list[int]) -> int:
        """Pair neighbours level by level until one rule derives the whole sequence."""
        while len(seq) > 1:
            nxt = [self.pair(seq[k], seq[k + 1]) for k in range(0, len(seq) - 1, 2)]
            if len(seq) % 2:
                nxt.append(seq[-1])
            seq = nxt
        return seq[0]


def ingest_text(text: Union[str, bytes], rounds: Optional[int] = None) -> Slp:
    """SLP deriving ``text``: up to ``rounds`` pair replacements, then balanced pairing."""
    if len(text) == 0:
        raise ContractViolation("cannot build an SLP for empty text")
    if rounds is None:
        rounds = get_settings().repair_rounds
    alphabet = Alphabet.of_text(text)
    seq: list[int] = alphabet.encode(text)  # type: ignore[assignment]
    builder = _RuleBuilder(len(alphabet))
    done = 0
    while done < rounds:
        best = most_frequent_pair(seq)
        if best is None or best[1] < 2:
            break
        pair, _ = best
        seq = replace_pair(seq, pair, builder.pair(*pair))
        done += 1
    root = builder.balance(seq)
    slp = Slp(builder.rules, root, alphabet)
    logger.debug("ingested %d symbols: rounds=%d n=%d h=%d", len(text), done, slp.n, slp.height)
    return slp


def _symbols(sigma: int) -> tuple[list, bool]:
    if sigma <= 26:
        return [chr(ord("a") + k) for k in range(sigma)], False
    return list(range(sigma)), True


def random_text(length: int, sigma: int, rng: np.random.Generator) -> Union[str, bytes]:
    """Uniform random text over the first ``sigma`` letters (bytes once ``sigma > 26``)."""
    symbols, byte_mode = _symbols(sigma)
    draws = rng.integers(0, sigma, size=length)
    if byte_mode:
        return bytes(draws.astype(np.uint8).tolist())
    return "".join(symbols[k] for k in draws.tolist())


def fibonacci(k: int) -> Slp:
    """``F_1 = b``, ``F_2 = a``, ``F_j = F_{j-1} F_{j-2}``; rule ``j`` derives ``F_{j+1}``."""
    rules: list[Rule] = [Terminal(1), Terminal(0)]
    rules += [Nonterminal(j - 1, j - 2) for j in range(2, k)]
    return Slp(rules, k - 1, Alphabet(["a", "b"]))


def power(k: int, symbol: str = "a") -> Slp:
    """``symbol`` repeated ``2**k`` times with ``k + 1`` rules."""
    rules: list[Rule] = [Terminal(0)] + [Nonterminal(j - 1, j - 1) for j in range(1, k + 1)]
    return Slp(rules, k, Alphabet([symbol]))


def random_slp(n: int, sigma: int, seed: int, cap: int = RANDOM_LENGTH_CAP) -> Slp:
    """Random DAG: ``sigma`` terminals, then rules over random earlier rules, lengths capped at ``cap``."""
    rng = np.random.default_rng(seed)
    symbols, byte_mode = _symbols(sigma)
    rules: list[Rule] = [Terminal(k) for k in range(sigma)]
    lengths = [1] * sigma
    for j in range(sigma, n):
        a, b = (int(x) for x in rng.integers(0, j, size=2))
        if lengths[a] + lengths[b] > cap:
            b = int(rng.integers(0, sigma))
            if lengths[a] + 1 > cap:
                a = int(rng.integers(0, sigma))
        rules.append(Nonterminal(a, b))
        lengths.append(lengths[a] + lengths[b])
    return Slp(rules, n - 1, Alphabet(symbols, byte_mode=byte_mode))


def generate(recipe: GrammarRecipe) -> Slp:
    """Deterministic SLP for ``recipe``."""
    if recipe.kind == "fibonacci":
        slp = fibonacci(recipe.k)  # type: ignore[arg-type]
    elif recipe.kind == "power":
        slp = power(recipe.k, recipe.symbol)  # type: ignore[arg-type]
    elif recipe.kind in ("balanced", "repair"):
        text = random_text(recipe.length, recipe.sigma, np.random.default_rng(recipe.seed))  # type: ignore[arg-type]
        slp = ingest_text(text, rounds=0 if recipe.kind == "balanced" else None)
    else:
        slp = random_slp(recipe.n, recipe.sigma, recipe.seed)  # type: ignore[arg-type]
    logger.debug("generated %s: %r", recipe, slp)
    return slp
