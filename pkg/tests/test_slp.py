import math

import pytest

from slp_toolkit.errors import (
    ContractViolation,
    ExpansionRefusedError,
    NotAnSlpError,
    QueryOutOfRangeError,
    SlpFormatError,
    StringTooLongError,
)
from slp_toolkit.ingest import fibonacci, ingest_text, power, random_slp
from slp_toolkit.slp import Alphabet, Nonterminal, Slp, SlpFile, SlpHeavyForest, Terminal, access

FIB5_FILE = "SLP 5 4\nALPHA 2 a b\nT 1\nT 0\nN 1 0\nN 2 1\nN 3 2\n"

TEXTS = ["abaab", "mississippi", "a", "aaaa" * 20, "abcabcabc", "ab" * 40, b"\x00\x01\xff\x00\x01"]


def test_fibonacci_grammar():
    slp = fibonacci(5)
    assert slp.expand() == "abaab"
    assert (slp.n, slp.N, slp.sigma, slp.height) == (5, 5, 2, 4)
    assert fibonacci(10).N == 55


def test_fibonacci_80_stays_compressed():
    slp = fibonacci(80)
    assert slp.N == 23416728348467685
    assert (slp.n, slp.height) == (80, 79)
    with pytest.raises(ExpansionRefusedError):
        slp.expand(max_len=1_000_000)
    assert len(slp.extract(slp.N - 9, slp.N)) == 10


def test_power_and_self_pairs():
    slp = power(3)
    assert slp.expand() == "aaaaaaaa"
    forest = SlpHeavyForest(slp)
    assert all(forest.access(i).symbol == 0 for i in range(1, 9))

    tiny = Slp([Terminal(0), Nonterminal(0, 0)], 1, Alphabet(["a"]))
    assert tiny.N == 2
    assert tiny.expand() == "aa"


def test_validation_errors():
    alphabet = Alphabet(["a"])
    with pytest.raises(NotAnSlpError, match="derives itself"):
        Slp([Nonterminal(1, 1), Nonterminal(0, 0)], 0, alphabet)
    with pytest.raises(NotAnSlpError):
        Slp([Terminal(1)], 0, alphabet)
    with pytest.raises(NotAnSlpError):
        Slp([Terminal(0), Nonterminal(0, 2)], 1, alphabet)
    with pytest.raises(NotAnSlpError):
        Slp([Terminal(0)], 1, alphabet)
    with pytest.raises(NotAnSlpError):
        Slp([], 0, alphabet)
    with pytest.raises(NotAnSlpError):
        Alphabet(["a", "a"])
    with pytest.raises(StringTooLongError):
        power(63)
    assert power(62).N == 2**62


def test_unreachable_rules_are_reported():
    slp = Slp([Terminal(0), Terminal(1), Nonterminal(0, 0)], 2, Alphabet(["a", "b"]))
    assert slp.unreachable() == [1]
    assert slp.notes
    assert len(SlpHeavyForest(slp)) == 1


def test_extract_windows():
    slp = fibonacci(10)
    text = slp.expand()
    for lo in range(1, slp.N + 1, 7):
        for hi in range(lo, slp.N + 1, 5):
            assert slp.extract(lo, hi) == text[lo - 1 : hi]
    for lo, hi in [(0, 1), (5, 4), (1, 56)]:
        with pytest.raises(QueryOutOfRangeError):
            slp.extract(lo, hi)


def test_alphabet():
    alphabet = Alphabet.of_text("banana")
    assert alphabet.symbols == ("b", "a", "n")
    assert alphabet.encode("nab?") == [2, 1, 0, None]
    assert alphabet.decode([1, 2]) == "an"
    raw = Alphabet.of_text(b"\x10\xff")
    assert raw.byte_mode
    assert raw.display(1) == "0xff"
    assert raw.decode([1, 0]) == b"\xff\x10"


def test_file_format_golden():
    assert SlpFile.dumps(fibonacci(5)) == FIB5_FILE
    slp = SlpFile.loads(FIB5_FILE)
    assert slp.expand() == "abaab"
    assert SlpFile.dumps(slp) == FIB5_FILE


@pytest.mark.parametrize("text", TEXTS + ["\\ \t\né\U0001f600\u200b"])
def test_file_round_trip(text, tmp_path):
    path = tmp_path / "text.slp"
    SlpFile.write(ingest_text(text), path)
    assert SlpFile.read(path).expand() == text


def test_byte_alphabet_file():
    slp = SlpFile.loads("SLP 3 2\nALPHA 2 0x00 0xff\nT 0\nT 1\nN 0 1\n")
    assert slp.alphabet.byte_mode
    assert slp.expand() == b"\x00\xff"


@pytest.mark.parametrize(
    "text",
    [
        "",
        "SLP 1 0\n",
        "SLP x 0\nALPHA 1 a\nT 0\n",
        "SLP 1 0 extra\nALPHA 1 a\nT 0\n",
        "SLP 2 0\nALPHA 1 a\nT 0\n",
        "SLP 1 0\nALPHA 2 a\nT 0\n",
        "SLP 1 0\nALPHA 1 ab\nT 0\n",
        "SLP 1 0\nALPHA 1 a\nQ 0\n",
        "SLP 1 0\nALPHA 1 a\nT -1\n",
        "SLP 1 0\nGAMMA 1 a\nT 0\n",
    ],
)
def test_format_errors(text):
    with pytest.raises(SlpFormatError):
        SlpFile.loads(text)


def test_format_error_reports_line():
    with pytest.raises(SlpFormatError, match="line 4"):
        SlpFile.loads("SLP 2 1\nALPHA 1 a\nT 0\nN 0\n")


def test_cyclic_file_is_not_an_slp():
    with pytest.raises(NotAnSlpError):
        SlpFile.loads("SLP 2 0\nALPHA 1 a\nN 1 1\nN 0 0\n")


def test_non_utf8_file(tmp_path):
    path = tmp_path / "bad.slp"
    path.write_bytes(b"SLP 1 0\nALPHA 1 \xff\nT 0\n")
    with pytest.raises(SlpFormatError):
        SlpFile.read(path)


def test_symbol_escapes():
    assert SlpFile.escape_symbol(" ") == "\\x20"
    assert SlpFile.escape_symbol("\\") == "\\\\"
    assert SlpFile.escape_symbol("é") == "é"
    assert SlpFile.unescape_symbol("\\u00e9") == "é"
    assert SlpFile.unescape_symbol("\\U0001f600") == "\U0001f600"
    with pytest.raises(ValueError):
        SlpFile.unescape_symbol("ab")
    with pytest.raises(ValueError):
        SlpFile.unescape_symbol("\\q")


def test_parse_symbol():
    assert SlpFile.parse_symbol("0x41", True) == 0x41
    assert SlpFile.parse_symbol("a", True) == ord("a")
    assert SlpFile.parse_symbol("\\x20", False) == " "
    with pytest.raises(ContractViolation):
        SlpFile.parse_symbol("é", True)
    with pytest.raises(ContractViolation):
        SlpFile.parse_symbol("ab", False)


def test_heavy_forest_of_fibonacci():
    slp = fibonacci(5)
    forest = SlpHeavyForest(slp)
    assert len(forest) == 2
    assert forest.heavy[2:] == [1, 2, 3]
    assert all(forest.heavy_is_left[2:])
    assert forest.light_edge_max == 2
    assert [forest.depth(v) for v in (1, 2, 3, 4)] == [0, 1, 2, 3]


@pytest.mark.parametrize("text", TEXTS)
def test_access_matches_expansion(text):
    slp = ingest_text(text)
    forest = SlpHeavyForest(slp)
    expanded = slp.expand_indices()
    assert forest.light_edge_max <= math.floor(math.log2(slp.N))
    for i in range(1, slp.N + 1):
        trace = access(slp, forest, i)
        assert trace.symbol == expanded[i - 1]
        assert trace.visits[0].entry == slp.root
        assert trace.visits[-1].side is None
        assert slp.is_terminal(trace.visits[-1].exit)
        assert len(trace.visits) - 1 <= forest.light_edge_max
        for visit in trace.visits:
            assert forest.tree_of[visit.entry] == forest.tree_of[visit.exit] == visit.tree
            assert visit.offset < i <= visit.offset + slp.lengths[visit.entry]
    for i in (0, slp.N + 1):
        with pytest.raises(QueryOutOfRangeError):
            forest.access(i)


def test_access_rejects_foreign_forest():
    with pytest.raises(ValueError):
        access(fibonacci(5), SlpHeavyForest(fibonacci(5)), 1)


@pytest.mark.parametrize("seed", range(8))
def test_light_edges_on_random_dags(seed):
    slp = random_slp(200, (2, 3, 5, 26)[seed % 4], seed, cap=10**6)
    forest = SlpHeavyForest(slp)
    assert forest.light_edge_max <= math.floor(math.log2(slp.N))
    for i in (1, slp.N // 3, slp.N // 2, slp.N):
        assert len(forest.access(max(1, i)).visits) - 1 <= forest.light_edge_max
