import warnings

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rle_repeats import rlbwt
from rle_repeats.alphabet import encode_text
from rle_repeats.errors import EmptyNetOccurrences
from rle_repeats.index import RepeatIndex
from rle_repeats.mapping import build_move, sample_sa_at_run_boundaries
from rle_repeats.net_analysis import (
    MusInterval,
    NetOccurrence,
    all_net_occurrences,
    check_run_boundary,
    epsilon_net_occurrences,
    mus_from_net_occurrences,
    net_frequency_table,
    unique_symbol_positions,
)
from rle_repeats.oracle import Oracle
from rle_repeats.range_distinct import build_rd


def parts(raw):
    rl, _ = rlbwt.from_text(encode_text(raw))
    mapper = build_move(rl)
    return rl, mapper, build_rd(rl), sample_sa_at_run_boundaries(rl, mapper)


def test_running_example_net_occurrences(example_parts):
    got = [(o.start, o.length) for o in all_net_occurrences(*example_parts)]
    assert got == [(1, 3), (2, 3), (5, 3), (7, 2), (9, 3)]


def test_running_example_mus(example_parts):
    mus = mus_from_net_occurrences(all_net_occurrences(*example_parts), 12)
    assert [tuple(m) for m in mus] == [(1, 4), (4, 5), (6, 8), (8, 9), (12, 12)]


def test_net_frequency_table(example_text, example_parts):
    table = net_frequency_table(*example_parts, materialize=True)
    by_string = {bytes(example_text.decode_map[c] for c in s).decode(): (nf, nocc) for _, _, nf, nocc, s in table}
    assert by_string == {"bc": (1, [7]), "abc": (2, [1, 9]), "bcb": (2, [2, 5])}


@pytest.mark.parametrize(
    "raw, expected",
    [(b"ab", [1, 2, 3]), (b"a", [1, 2]), (b"aab", [4]), (b"abcbbcbcabc", []), (b"xaay", [1, 5])],
)
def test_epsilon(raw, expected):
    rl, _, _, samples = parts(raw)
    assert epsilon_net_occurrences(rl, samples) == expected
    assert epsilon_net_occurrences(rl, samples) == list(Oracle(encode_text(raw)).epsilon_nocc())


def test_epsilon_in_all_occurrences():
    got = all_net_occurrences(*parts(b"ab"))
    assert [(o.start, o.length, o.interval) for o in got] == [(1, 0, (1, 3)), (2, 0, (1, 3)), (3, 0, (1, 3))]
    assert all_net_occurrences(*parts(b"ab"), include_epsilon=False) == []


def test_unique_symbols():
    rl, _, _, samples = parts(b"aabc")
    assert unique_symbol_positions(rl, samples) == {1: 5, 3: 3, 4: 4}


def test_mus_formula():
    occs = [NetOccurrence(1, 3), NetOccurrence(2, 3), NetOccurrence(5, 3), NetOccurrence(7, 2), NetOccurrence(9, 3)]
    assert mus_from_net_occurrences(occs, 12) == [
        MusInterval(1, 4), MusInterval(4, 5), MusInterval(6, 8), MusInterval(8, 9), MusInterval(12, 12)
    ]


def test_mus_empty_warns():
    with pytest.warns(EmptyNetOccurrences):
        assert mus_from_net_occurrences([], 7) == [MusInterval(7, 7)]


def test_net_occurrence_ordering():
    a, b = NetOccurrence(3, 2), NetOccurrence(5, 1)
    assert a < b and a.end == 4 and b.end == 5


def test_run_boundary(example_rl):
    assert check_run_boundary(example_rl, 8)
    assert check_run_boundary(example_rl, 12)
    assert not check_run_boundary(example_rl, 10)


@settings(max_examples=100, deadline=None)
@given(st.text(alphabet="abcd", min_size=1, max_size=200).map(str.encode))
def test_matches_oracle(raw):
    t = encode_text(raw)
    oracle = Oracle(t)
    idx = RepeatIndex.from_text(t)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", EmptyNetOccurrences)
        mus = [tuple(m) for m in idx.mus()]
    assert mus == oracle.mus()
    full = oracle.classify_all_repeats()
    expected = sorted((b, r.length) for r in full for b in r.nocc)
    got = [(o.start, o.length) for o in idx.all_net_occurrences()]
    assert got == expected
    assert len(got) < 2 * idx.r
    assert len(mus) < 2 * idx.r
    # net occurrences sit on run boundaries of L
    rows = {oracle.rank[b] for b, length in got if length}
    assert all(check_run_boundary(idx.rl, i) for i in rows)
