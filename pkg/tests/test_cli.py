import io
import json
import subprocess
import sys

import pytest

from rle_repeats.cli import EXIT_IO, EXIT_USAGE, EXIT_VERIFY, escape, run


def call(*argv):
    out = io.StringIO()
    code = run(list(argv), out)
    return code, out.getvalue()


@pytest.fixture()
def example_file(tmp_path):
    path = tmp_path / "example.txt"
    path.write_bytes(b"abcbbcbcabc")
    return path


@pytest.fixture()
def example_idx(tmp_path, example_file):
    out = tmp_path / "example.idx"
    code, text = call("build", "--text", str(example_file), "--out", str(out), "--with-nocc")
    assert code == 0 and "n=12" in text
    return out


def rows(text):
    return [line.split("\t") for line in text.strip().splitlines()]


def test_build_from_rlbwt_roundtrip(tmp_path, example_file):
    txt = tmp_path / "ex.rlbwt"
    idx1 = tmp_path / "a.idx"
    idx2 = tmp_path / "b.idx"
    assert call("build", "--text", str(example_file), "--out", str(idx1), "--emit-rlbwt", str(txt))[0] == 0
    assert txt.read_text().splitlines()[0] == "12 7 4"
    assert call("build", "--rlbwt", str(txt), "--out", str(idx2))[0] == 0
    assert idx1.read_bytes() == idx2.read_bytes()


def test_build_baseline(tmp_path, example_file):
    out = tmp_path / "b.idx"
    assert call("build", "--text", str(example_file), "--out", str(out), "--mapper", "baseline")[0] == 0
    code, text = call("stats", "--index", str(out))
    assert code == 0 and "mapper\tbaseline" in text


def test_strip_newlines(tmp_path):
    path = tmp_path / "t.txt"
    path.write_bytes(b"abcbbc\nbcabc\n")
    out = tmp_path / "t.idx"
    assert call("build", "--text", str(path), "--out", str(out), "--strip-newlines")[0] == 0
    assert rows(call("nf-query", "--index", str(out), "--pattern", "abc")[1]) == [["abc", "2"]]


def test_enumerate_tsv(example_idx):
    code, text = call("enumerate", "--index", str(example_idx), "--materialize")
    assert code == 0
    table = rows(text)
    assert table[0] == ["length", "occ_count", "lc", "rc", "flags", "nf", "nocc", "string"]
    by_string = {r[7]: r for r in table[1:]}
    assert set(by_string) == {"", "b", "c", "bc", "cb", "abc", "bcb"}
    assert by_string["bc"][:7] == ["2", "4", "3", "3", "LMR,RMR,MR,NSMR", "1", "7"]
    assert by_string["abc"][4:7] == ["LMR,RMR,MR,NSMR,SMR", "2", "1,9"]
    assert by_string["cb"][4:7] == ["RMR", "0", "-"]


def test_enumerate_classes_and_json(example_idx):
    code, text = call("enumerate", "--index", str(example_idx), "--classes", "smr", "--format", "json",
                      "--materialize")
    assert code == 0
    objs = [json.loads(line) for line in text.splitlines()]
    assert sorted(o["string"] for o in objs) == ["abc", "bcb"]
    assert all("SMR" in o["flags"] for o in objs)
    code, text = call("enumerate", "--index", str(example_idx), "--classes", "mr,nsmr")
    assert code == 0 and len(rows(text)) == 1 + 5


def test_enumerate_unknown_class(example_idx):
    assert call("enumerate", "--index", str(example_idx), "--classes", "lmr")[0] == EXIT_USAGE


def test_all_nf(example_idx):
    code, text = call("all-nf", "--index", str(example_idx), "--materialize")
    assert code == 0
    assert rows(text)[1:] == [
        ["1", "3", "abc", "2"], ["2", "3", "bcb", "2"], ["5", "3", "bcb", "2"],
        ["7", "2", "bc", "1"], ["9", "3", "abc", "2"],
    ]


def test_all_nf_epsilon(tmp_path):
    path = tmp_path / "ab.txt"
    path.write_bytes(b"ab")
    out = tmp_path / "ab.idx"
    call("build", "--text", str(path), "--out", str(out))
    assert len(rows(call("all-nf", "--index", str(out))[1])) == 4
    assert len(rows(call("all-nf", "--index", str(out), "--no-epsilon")[1])) == 1
    code, text = call("mus", "--index", str(out))
    assert rows(text) == [["b", "e"], ["1", "1"], ["2", "2"], ["3", "3"]]


def test_mus(example_idx):
    code, text = call("mus", "--index", str(example_idx))
    assert code == 0
    assert rows(text)[1:] == [["1", "4"], ["4", "5"], ["6", "8"], ["8", "9"], ["12", "12"]]
    code, text = call("mus", "--index", str(example_idx), "--format", "json")
    assert json.loads(text.splitlines()[0]) == {"b": 1, "e": 4}


def test_nf_query_pattern(example_idx):
    assert call("nf-query", "--index", str(example_idx), "--pattern", "abc") == (0, "abc\t2\n")


def test_nf_query_hex(example_idx):
    assert call("nf-query", "--index", str(example_idx), "--pattern", "626362", "--hex") == (0, "bcb\t2\n")
    assert call("nf-query", "--index", str(example_idx), "--pattern", "xyz", "--hex")[0] == EXIT_USAGE


@pytest.mark.parametrize("threads", ["1", "4"])
def test_nf_query_file(tmp_path, example_idx, monkeypatch, threads):
    monkeypatch.setenv("RLE_REPEATS_THREADS", threads)
    pats = tmp_path / "p.txt"
    pats.write_bytes(b"abc\nbc\ncb\nq\\x\n")
    code, text = call("nf-query", "--index", str(example_idx), "--patterns-file", str(pats))
    assert code == 0
    assert rows(text) == [["abc", "2"], ["bc", "1"], ["cb", "0"], ["q\\\\x", "0"]]


def test_nf_query_needs_one_source(example_idx):
    assert call("nf-query", "--index", str(example_idx))[0] == EXIT_USAGE


def test_stats(example_idx):
    code, text = call("stats", "--index", str(example_idx))
    table = dict(rows(text))
    assert code == 0
    assert (table["n"], table["r"], table["sigma"]) == ("12", "7", "4")
    assert table["net_occurrences"] == "5" and table["bound_2r"] == "14"
    assert table["net_occurrence_margin"] == "9"
    assert table["mus"] == "5" and table["nsmr"] == "3"
    code, text = call("stats", "--index", str(example_idx), "--format", "json")
    assert json.loads(text)["r"] == 7


def test_stats_figures(tmp_path, example_idx):
    figs = tmp_path / "figs"
    assert call("stats", "--index", str(example_idx), "--figures", str(figs))[0] == 0
    names = sorted(p.name for p in figs.iterdir())
    assert names == ["net_occurrences.png", "run_lengths.png", "working_set.png"]


def test_verify(example_file):
    code, text = call("verify", "--text", str(example_file))
    assert code == 0
    assert all(line.startswith("PASS") for line in text.splitlines())


def test_verify_failure_exit_code(example_file, monkeypatch):
    import rle_repeats.verify as verify

    monkeypatch.setattr(verify, "verify_text", lambda *a, **k: [("fake", False, "")])
    assert call("verify", "--text", str(example_file))[0] == EXIT_VERIFY


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["frobnicate"],
        ["build", "--out", "x.idx"],
        ["build", "--text", "a", "--rlbwt", "b", "--out", "x"],
        ["build", "--text", "a", "--out", "x", "--balance", "1"],
        ["mus"],
        ["enumerate", "--index", "x", "--format", "xml"],
    ],
)
def test_usage_errors(argv):
    assert call(*argv)[0] == EXIT_USAGE


def test_io_errors(tmp_path):
    missing = tmp_path / "missing"
    assert call("mus", "--index", str(missing))[0] == EXIT_IO
    bad = tmp_path / "bad.idx"
    bad.write_bytes(b"not an index")
    assert call("stats", "--index", str(bad))[0] == EXIT_IO
    empty = tmp_path / "empty.txt"
    empty.write_bytes(b"")
    assert call("build", "--text", str(empty), "--out", str(tmp_path / "e.idx"))[0] == EXIT_IO
    broken = tmp_path / "broken.rlbwt"
    broken.write_text("12 7 4\n4 2\n")
    assert call("build", "--rlbwt", str(broken), "--out", str(tmp_path / "x.idx"))[0] == EXIT_IO


def test_escape():
    assert escape(b"a\tb\\\n\x01") == "a\\tb\\\\\\n\\x01"


def test_console_script(example_idx):
    proc = subprocess.run(
        [sys.executable, "-m", "rle_repeats.cli", "nf-query", "--index", str(example_idx), "--pattern", "bc"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0 and proc.stdout == "bc\t1\n"
