import pytest
from click.testing import CliRunner

from slp_toolkit.main import EXIT_FORMAT, EXIT_RANGE, EXIT_USAGE, cli, run
from slp_toolkit.models import BENCH_HEADER

FIB5_FILE = "SLP 5 4\nALPHA 2 a b\nT 1\nT 0\nN 1 0\nN 2 1\nN 3 2\n"


@pytest.fixture
def runner():
    return CliRunner()


@pytest.fixture
def fib5(tmp_path):
    path = tmp_path / "fib5.slp"
    path.write_text(FIB5_FILE, encoding="utf-8")
    return str(path)


def test_stats(runner, fib5):
    result = runner.invoke(cli, ["stats", fib5])
    assert result.exit_code == 0
    assert result.output.splitlines() == [
        "n=5",
        "N=5",
        "sigma=2",
        "height=4",
        "light_edge_max=2",
        "heavy_trees=2",
        "unreachable=0",
    ]


@pytest.mark.parametrize(
    "args, expected",
    [
        (["access", "{f}", "4"], "a\n"),
        (["ls", "{f}", "0", "b"], "2\n"),
        (["ls", "{f}", "2", "b"], "5\n"),
        (["ls", "{f}", "5", "b"], "none\n"),
        (["ls", "{f}", "0", "z"], "none\n"),
        (["lp", "{f}", "6", "a"], "4\n"),
        (["lp", "{f}", "1", "a"], "none\n"),
        (["lp", "{f}", "5", "b", "--flavor", "const"], "2\n"),
        (["match", "{f}", "ab"], "1 2\n4 5\nocc=2\n"),
        (["match", "{f}", "ab", "--count-only"], "occ=2\n"),
        (["match", "{f}", "b", "--flavor", "heavy"], "2 2\n5 5\nocc=2\n"),
        (["match", "{f}", "z"], "occ=0\n"),
        (["decompress", "{f}"], "abaab"),
    ],
)
def test_golden_outputs(runner, fib5, args, expected):
    result = runner.invoke(cli, [a.format(f=fib5) for a in args])
    assert result.exit_code == 0, result.output
    assert result.output == expected


def test_compress_round_trip(runner, tmp_path):
    source = tmp_path / "input.txt"
    source.write_text("mississippi\r\nmississippi\n", encoding="utf-8", newline="")
    out = tmp_path / "out.slp"
    assert runner.invoke(cli, ["compress", str(source), str(out)]).exit_code == 0
    result = runner.invoke(cli, ["decompress", str(out)])
    assert result.exit_code == 0
    assert result.stdout_bytes == source.read_bytes()


def test_compress_bytes(runner, tmp_path):
    source = tmp_path / "input.bin"
    source.write_bytes(b"\x00\xff\x00\xff\x10")
    out = tmp_path / "out.slp"
    assert runner.invoke(cli, ["compress", "--bytes", str(source), str(out)]).exit_code == 0
    assert "0x00" in out.read_text(encoding="utf-8")
    result = runner.invoke(cli, ["decompress", str(out)])
    assert result.stdout_bytes == b"\x00\xff\x00\xff\x10"
    result = runner.invoke(cli, ["access", str(out), "2"])
    assert result.output == "0xff\n"
    result = runner.invoke(cli, ["ls", str(out), "0", "0x10"])
    assert result.output == "5\n"


def test_exit_codes(fib5, tmp_path):
    bad = tmp_path / "bad.slp"
    bad.write_text("SLP 1 0\nALPHA 1 a\n", encoding="utf-8")
    cyclic = tmp_path / "cyclic.slp"
    cyclic.write_text("SLP 2 0\nALPHA 1 a\nN 1 1\nN 0 0\n", encoding="utf-8")

    assert run(["stats", fib5]) == 0
    assert run(["access", fib5, "0"]) == EXIT_RANGE
    assert run(["access", fib5, "6"]) == EXIT_RANGE
    assert run(["ls", fib5, "9", "a"]) == EXIT_RANGE
    assert run(["decompress", fib5, "--max-len", "3"]) == EXIT_RANGE
    assert run(["stats", str(bad)]) == EXIT_FORMAT
    assert run(["stats", str(cyclic)]) == EXIT_FORMAT
    assert run(["stats", str(tmp_path / "missing.slp")]) == EXIT_USAGE
    assert run(["frobnicate"]) == EXIT_USAGE
    assert run(["ls", fib5, "0", "ab"]) == EXIT_USAGE
    assert run(["match", fib5, "ab", "--flavor", "fast"]) == EXIT_USAGE
    assert run(["bench", "fibonacci:k=1"]) == EXIT_USAGE


def test_runner_exit_codes(runner, fib5):
    assert runner.invoke(cli, ["access", fib5, "0"]).exit_code == EXIT_RANGE
    assert runner.invoke(cli, ["access", fib5]).exit_code == EXIT_USAGE


def test_settings_from_environment(runner, fib5, monkeypatch):
    monkeypatch.setenv("SLP_TOOLKIT_MAX_EXPAND", "3")
    assert runner.invoke(cli, ["decompress", fib5]).exit_code == EXIT_RANGE
    monkeypatch.setenv("SLP_TOOLKIT_MAX_EXPAND", "10")
    monkeypatch.setenv("SLP_TOOLKIT_FLAVOR", "const")
    assert runner.invoke(cli, ["ls", fib5, "0", "b"]).output == "2\n"
    monkeypatch.setenv("SLP_TOOLKIT_FLAVOR", "fast")
    assert runner.invoke(cli, ["stats", fib5]).exit_code == EXIT_USAGE


def test_bench(runner):
    result = runner.invoke(cli, ["bench", "power:k=4", "--queries", "5"])
    assert result.exit_code == 0, result.output
    lines = result.output.splitlines()
    assert lines[0] == BENCH_HEADER
    assert [line.split(",")[5] for line in lines[1:]] == ["access", "ls", "lp", "match"]
    assert all(line.startswith("power:k=4;symbol=a,5,16,1,log,") for line in lines[1:])


def test_selftest(runner):
    result = runner.invoke(
        cli, ["selftest", "--cases", "1", "--seed", "3", "--max-tree", "64", "--latency-ms", "100"]
    )
    assert result.exit_code == 0, result.output
    assert result.output.count("✅") == 7
    assert "❌" not in result.output
