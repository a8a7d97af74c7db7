import pytest
from hypothesis import given
from hypothesis import strategies as st

from rle_repeats.alphabet import SENTINEL, char_at, decode_symbols, encode_text, text_from_symbols
from rle_repeats.errors import EmptyInput, OutOfRange, SentinelMisplaced


def test_running_example_encoding():
    t = encode_text(b"abcbbcbcabc")
    assert t.n == 12
    assert t.sigma == 4
    assert t.symbols() == [2, 3, 4, 3, 3, 4, 3, 4, 2, 3, 4, 1]


def test_minimal_text():
    t = encode_text(b"a")
    assert (t.n, t.sigma, t.symbols()) == (2, 2, [2, 1])


def test_single_letter_text():
    t = encode_text(b"zz")
    assert (t.n, t.sigma, t.symbols()) == (3, 2, [2, 2, 1])


def test_byte_order_not_first_occurrence():
    t = encode_text(b"cab")
    assert t.symbols() == [4, 2, 3, 1]


def test_trailing_sentinel_accepted():
    assert encode_text(b"ab\x00").symbols() == encode_text(b"ab").symbols()


@pytest.mark.parametrize("raw", [b"", b"\x00"])
def test_empty_input(raw):
    with pytest.raises(EmptyInput):
        encode_text(raw)


def test_sentinel_misplaced():
    with pytest.raises(SentinelMisplaced):
        encode_text(b"a\x00b")


@pytest.mark.parametrize("i, expected", [(0, "$"), (1, "a"), (12, "$"), (3, "c")])
def test_char_at(i, expected):
    t = encode_text(b"abcbbcbcabc")
    assert decode_symbols(t.decode_map, [char_at(t, i)]) == expected.encode()


@pytest.mark.parametrize("i", [-1, 13])
def test_char_at_out_of_range(i):
    with pytest.raises(OutOfRange):
        char_at(encode_text(b"abcbbcbcabc"), i)


def test_text_from_symbols_checks_sentinel():
    with pytest.raises(SentinelMisplaced):
        text_from_symbols([2, 1, 2])
    assert text_from_symbols([2, 3, 1]).sigma == 3


@given(st.binary(min_size=1).filter(lambda b: b"\x00" not in b))
def test_roundtrip(raw):
    t = encode_text(raw)
    assert t.decode() == raw
    assert t.symbols().count(SENTINEL) == 1
    assert t.symbols()[-1] == SENTINEL
    assert set(t.symbols()) == set(range(1, t.sigma + 1))


@given(st.binary(min_size=1, max_size=20).filter(lambda b: b"\x00" not in b),
       st.binary(min_size=1, max_size=20).filter(lambda b: b"\x00" not in b))
def test_order_preserved(a, b):
    joint = encode_text(a + b"\x01" + b)
    ea = joint.encode_pattern(a)
    eb = joint.encode_pattern(b)
    assert (ea < eb) == (a < b)
