import itertools

import numpy as np
import pytest

from slp_toolkit.counters import QueryStats
from slp_toolkit.errors import ContractViolation, ExpansionRefusedError
from slp_toolkit.ingest import fibonacci, ingest_text, random_text
from slp_toolkit.lsq import LsIndex
from slp_toolkit.matcher import Pattern, count_minimal, iter_minimal, match_minimal, oracle_match_minimal
from slp_toolkit.models import Occurrence


def windows(occurrences):
    return [(o.start, o.end) for o in occurrences]


def is_subsequence(pattern, window) -> bool:
    it = iter(window)
    return all(any(s == p for s in it) for p in pattern)


@pytest.mark.parametrize(
    "text, pattern, expected",
    [
        ("abcabcabc", "aa", [(1, 4), (4, 7)]),
        ("abcabcabc", "ac", [(1, 3), (4, 6), (7, 9)]),
        ("abaab", "ab", [(1, 2), (4, 5)]),
        ("abaab", "b", [(2, 2), (5, 5)]),
        ("abaab", "bb", [(2, 5)]),
        ("abaab", "bbb", []),
        ("abaab", "z", []),
        ("abaab", "az", []),
    ],
)
def test_examples(text, pattern, expected):
    slp = ingest_text(text)
    index = LsIndex(slp)
    p = Pattern.from_text(pattern, slp.alphabet)
    assert windows(match_minimal(index, p)) == expected
    assert count_minimal(index, p) == len(expected)
    assert windows(oracle_match_minimal(text, pattern)) == expected


def test_fibonacci_grammar_examples():
    slp = fibonacci(5)
    index = LsIndex(slp)
    assert windows(match_minimal(index, Pattern.from_text("ab", slp.alphabet))) == [(1, 2), (4, 5)]


def test_empty_pattern():
    alphabet = ingest_text("ab").alphabet
    with pytest.raises(ContractViolation):
        Pattern.from_text("", alphabet)
    with pytest.raises(ContractViolation):
        oracle_match_minimal("ab", "")


def test_byte_patterns_from_text():
    slp = ingest_text(b"xyxy")
    p = Pattern.from_text("yx", slp.alphabet)
    assert p.symbols == (ord("y"), ord("x"))
    assert windows(match_minimal(LsIndex(slp), p)) == [(2, 3)]


def test_oracle_cap():
    with pytest.raises(ExpansionRefusedError):
        oracle_match_minimal("a" * 11, "a", cap=10)


def test_occurrence_positions_are_positive():
    with pytest.raises(ValueError):
        Occurrence(start=0, end=1)


@pytest.mark.parametrize("seed", range(8))
def test_matches_oracle_on_random_texts(seed):
    rng = np.random.default_rng(seed)
    sigma = (2, 4, 26, 256)[seed % 4]
    text = random_text(int(rng.integers(1, 300)), sigma, rng)
    slp = ingest_text(text)
    index = LsIndex(slp, kind=("log", "const")[seed % 2])
    symbols = list(slp.alphabet.symbols)
    for m in (1, 2, 3, 5, 10):
        picks = [symbols[int(k)] for k in rng.integers(0, len(symbols), size=m)]
        pattern = bytes(picks) if slp.alphabet.byte_mode else "".join(picks)
        got = match_minimal(index, Pattern.from_text(pattern, slp.alphabet))
        assert got == oracle_match_minimal(text, pattern)


@pytest.mark.parametrize("pattern", ["ab", "bab", "aabaa", "bbb"])
def test_windows_are_minimal(pattern):
    slp = fibonacci(16)
    text = slp.expand()
    found = match_minimal(LsIndex(slp), Pattern.from_text(pattern, slp.alphabet))
    assert found == oracle_match_minimal(text, pattern)
    for a, b in itertools.pairwise(found):
        assert a.start < b.start and a.end < b.end
    for occ in found[:200]:
        window = text[occ.start - 1 : occ.end]
        assert is_subsequence(pattern, window)
        assert not is_subsequence(pattern, window[1:])
        assert not is_subsequence(pattern, window[:-1])


def test_iteration_is_lazy():
    slp = fibonacci(80)
    index = LsIndex(slp)
    stats = QueryStats()
    first = list(itertools.islice(iter_minimal(index, Pattern.from_text("ba", slp.alphabet), stats), 3))
    assert windows(first) == [(2, 3), (5, 6), (7, 8)]
    assert stats.ls_calls < 20


def test_oracle_cap_from_environment(monkeypatch):
    monkeypatch.setenv("SLP_TOOLKIT_ORACLE_CAP", "5")
    with pytest.raises(ExpansionRefusedError):
        oracle_match_minimal("abcabc", "a")


@pytest.mark.parametrize("pattern", ["a", "ab", "cab", "aaaaa", "abcbacabca"])
def test_query_calls_per_occurrence(pattern):
    rng = np.random.default_rng(len(pattern))
    slp = ingest_text(random_text(500, 3, rng))
    stats = QueryStats()
    occ = count_minimal(LsIndex(slp), Pattern.from_text(pattern, slp.alphabet), stats)
    m = len(pattern)
    assert stats.ls_calls + stats.lp_calls <= 2 * m * (occ + 1)


@pytest.mark.parametrize("seed", range(6))
def test_out_of_alphabet_symbols_never_match(seed):
    rng = np.random.default_rng(100 + seed)
    text = random_text(int(rng.integers(1, 200)), (2, 4, 26)[seed % 3], rng)
    slp = ingest_text(text)
    index = LsIndex(slp)
    symbols = list(slp.alphabet.symbols)
    for m in (1, 2, 3, 5, 10):
        picks = [symbols[int(k)] for k in rng.integers(0, len(symbols), size=m)]
        picks[int(rng.integers(0, m))] = "#"
        pattern = "".join(picks)
        p = Pattern.from_text(pattern, slp.alphabet)
        assert not p.complete
        assert match_minimal(index, p) == [] == oracle_match_minimal(text, pattern)
        assert count_minimal(index, p) == 0


@pytest.mark.parametrize("seed", range(6))
def test_flavors_agree(seed):
    rng = np.random.default_rng(200 + seed)
    sigma = (2, 4, 26, 256)[seed % 4]
    text = random_text(int(rng.integers(1, 400)), sigma, rng)
    slp = ingest_text(text)
    log_index, const_index = LsIndex(slp, kind="log"), LsIndex(slp, kind="const")
    symbols = list(slp.alphabet.symbols)
    for m in (1, 2, 3, 5, 10):
        picks = [symbols[int(k)] for k in rng.integers(0, len(symbols), size=m)]
        pattern = bytes(picks) if slp.alphabet.byte_mode else "".join(picks)
        p = Pattern.from_text(pattern, slp.alphabet)
        assert match_minimal(log_index, p) == match_minimal(const_index, p) == oracle_match_minimal(text, pattern)
