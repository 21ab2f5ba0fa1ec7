import math

import numpy as np
import pytest

from slp_toolkit.errors import ContractViolation
from slp_toolkit.ingest import (
    generate,
    ingest_text,
    most_frequent_pair,
    power,
    random_slp,
    random_text,
    replace_pair,
)
from slp_toolkit.models import GrammarRecipe


def test_runs_are_counted_without_overlap():
    assert most_frequent_pair([0, 0, 0]) == ((0, 0), 1)
    assert most_frequent_pair([0, 0, 0, 0]) == ((0, 0), 2)
    assert most_frequent_pair([0]) is None


def test_replace_pair_left_to_right():
    assert replace_pair([0, 0, 0], (0, 0), 5) == [5, 0]
    assert replace_pair([0, 1, 0, 1, 1], (0, 1), 7) == [7, 7, 1]


@pytest.mark.parametrize(
    "text", ["a", "aaaa", "abaab", "mississippi", "\\ \t\né\U0001f600", b"\x00\xff\n", "ab" * 1000]
)
def test_ingest_round_trip(text):
    slp = ingest_text(text)
    assert slp.expand() == text
    assert not slp.unreachable()


def test_ingest_compresses_repetitions():
    assert ingest_text("aaaa").n <= 4
    assert ingest_text("ab" * 1000).n <= 40


def test_ingest_without_pair_rounds_is_balanced():
    slp = ingest_text("abcdefgh" * 4, rounds=0)
    assert slp.expand() == "abcdefgh" * 4
    assert slp.height <= 6


def test_ingest_rejects_empty_text():
    with pytest.raises(ContractViolation):
        ingest_text("")
    with pytest.raises(ContractViolation):
        ingest_text(b"")


def test_repair_rounds_setting(monkeypatch):
    monkeypatch.setenv("SLP_TOOLKIT_REPAIR_ROUNDS", "0")
    text = "ab" * 64
    assert ingest_text(text).n == ingest_text(text, rounds=0).n


def test_random_text():
    rng = np.random.default_rng(0)
    letters = random_text(100, 3, rng)
    assert isinstance(letters, str) and set(letters) <= set("abc")
    raw = random_text(50, 256, rng)
    assert isinstance(raw, bytes) and len(raw) == 50


def test_random_slp_is_deterministic():
    a = random_slp(60, 4, seed=3)
    b = random_slp(60, 4, seed=3)
    assert a.rules == b.rules
    assert a.N <= 1_000_000


def test_power():
    assert power(0).expand() == "a"
    assert power(4, "z").expand() == "z" * 16


@pytest.mark.parametrize(
    "recipe, n_symbols",
    [
        ("fibonacci:k=10", 55),
        ("power:k=5,symbol=q", 32),
        ("balanced:length=100,sigma=4,seed=1", 100),
        ("repair:length=100,sigma=4,seed=1", 100),
    ],
)
def test_generate(recipe, n_symbols):
    slp = generate(GrammarRecipe.parse(recipe))
    assert slp.N == n_symbols
    assert generate(GrammarRecipe.parse(recipe)).expand() == slp.expand()


def test_generate_random():
    slp = generate(GrammarRecipe.parse("random:n=50,sigma=3,seed=2"))
    assert slp.n == 50


def test_recipe_text():
    assert str(GrammarRecipe.parse("fibonacci:k=40")) == "fibonacci:k=40"
    assert str(GrammarRecipe.parse("repair: length=10, sigma=3")) == "repair:length=10,sigma=3,seed=0"


@pytest.mark.parametrize(
    "text",
    [
        "fibonacci",
        "fibonacci:k=1",
        "power:k=-1",
        "power:k=3,symbol=ab",
        "balanced:sigma=4",
        "repair:length=10,sigma=300",
        "random:n=2,sigma=3",
        "zipf:k=3",
        "fibonacci:k",
        "fibonacci:k=ten",
    ],
)
def test_bad_recipes(text):
    with pytest.raises(ContractViolation):
        GrammarRecipe.parse(text)


def height_corpus():
    rng = np.random.default_rng(11)
    texts: list = [random_text(int(rng.integers(1, 2000)), (2, 4, 26, 256)[k % 4], rng) for k in range(12)]
    texts += ["a", "ab", "a" * 1000, "ab" * 700, "abcabd" * 150, "mississippi" * 40]
    return texts


def test_ingested_height_is_logarithmic():
    for text in height_corpus():
        slp = ingest_text(text)
        # height counts nodes, so edges on the longest path are height - 1
        assert slp.height - 1 <= 4 * math.log2(slp.N), (len(text), slp.height)
