"""Dense integer alphabet and sentinel-terminated texts.

Symbols are integers in ``[1..sigma]``. Symbol 1 is the sentinel ``$``; it
occurs exactly once, at the last position. The remaining symbols are the
distinct input bytes ranked in ascending byte order, so comparing encoded
strings is the same as comparing the raw bytes.

Positions are 1-based throughout the package: ``char_at(t, 1)`` is the first
symbol and ``char_at(t, 0)`` returns the sentinel by convention.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import EmptyInput, OutOfRange, SentinelMisplaced, UnknownSymbol

SENTINEL = 1
SENTINEL_BYTE = 0x00
MAX_LENGTH = 1 << 48


@dataclass(frozen=True, eq=False)
class Text:
    """An encoded text ``T[1..n]`` with ``T[n] = $``.

    ``chars`` holds the symbols in a 0-based numpy array (``chars[i-1]`` is
    ``T[i]``). ``decode_map[s]`` is the original byte of symbol ``s`` for
    ``s >= 2``; index 0 and 1 are unused.
    """

    chars: np.ndarray
    sigma: int
    decode_map: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.chars)

    def __len__(self) -> int:
        return len(self.chars)

    def symbols(self) -> list[int]:
        return self.chars.tolist()

    def decode(self) -> bytes:
        """Raw bytes without the trailing sentinel."""
        return decode_symbols(self.decode_map, self.chars[:-1].tolist())

    def encode_pattern(self, raw: bytes) -> list[int] | None:
        return encode_pattern(self.decode_map, raw)

    def __repr__(self) -> str:
        preview = self.decode()[:32]
        return f"Text(n={self.n}, sigma={self.sigma}, raw={preview!r})"


def encode_text(raw: bytes | str) -> Text:
    """Encode raw bytes, appending the sentinel when it is absent."""
    if isinstance(raw, str):
        raw = raw.encode("utf-8")
    raw = bytes(raw)
    if raw.endswith(b"\x00"):
        raw = raw[:-1]
    if not raw:
        raise EmptyInput("input must contain at least one non-sentinel byte")
    if b"\x00" in raw:
        raise SentinelMisplaced(
            f"byte 0x00 is reserved for the sentinel; found at offset {raw.index(0)}"
        )
    if len(raw) + 1 > MAX_LENGTH:
        raise ValueError("text too long")
    buf = np.frombuffer(raw, dtype=np.uint8)
    present = np.zeros(256, dtype=bool)
    present[buf] = True
    alphabet = np.flatnonzero(present)
    table = np.zeros(256, dtype=np.int64)
    table[alphabet] = np.arange(2, len(alphabet) + 2)
    chars = np.empty(len(raw) + 1, dtype=np.int64)
    chars[:-1] = table[buf]
    chars[-1] = SENTINEL
    decode_map = (0, SENTINEL_BYTE) + tuple(int(b) for b in alphabet)
    return Text(chars=chars, sigma=len(alphabet) + 1, decode_map=decode_map)


def text_from_symbols(symbols, decode_map=None) -> Text:
    """Wrap an already-encoded symbol sequence (must end with the sentinel)."""
    chars = np.asarray(symbols, dtype=np.int64)
    if len(chars) < 2:
        raise EmptyInput("a text needs at least one symbol before the sentinel")
    if chars[-1] != SENTINEL or np.count_nonzero(chars == SENTINEL) != 1:
        raise SentinelMisplaced("symbol 1 must occur exactly once, at the end")
    sigma = int(chars.max())
    if len(np.unique(chars)) != sigma:
        raise ValueError("every symbol in [1..sigma] must occur")
    if decode_map is None:
        decode_map = identity_decode_map(sigma)
    return Text(chars=chars, sigma=sigma, decode_map=tuple(decode_map))


def identity_decode_map(sigma: int) -> tuple[int, ...]:
    # symbol s <-> byte s-1, which keeps 0x00 for the sentinel
    return (0,) + tuple(s - 1 for s in range(1, sigma + 1))


def char_at(t: Text, i: int) -> int:
    if i < 0 or i > t.n:
        raise OutOfRange(f"position {i} outside [0..{t.n}]")
    if i == 0:
        return SENTINEL
    return int(t.chars[i - 1])


def decode_symbols(decode_map, symbols) -> bytes:
    out = bytearray()
    for s in symbols:
        if s == SENTINEL:
            out.append(ord("$"))
        else:
            out.append(decode_map[s])
    return bytes(out)


def encode_pattern(decode_map, raw: bytes) -> list[int] | None:
    """Map raw pattern bytes to symbols; ``None`` if a byte is not in the alphabet."""
    lookup = {b: s for s, b in enumerate(decode_map) if s >= 2}
    out = []
    for b in raw:
        s = lookup.get(b)
        if s is None:
            return None
        out.append(s)
    return out


def symbol_of(decode_map, byte: int) -> int:
    for s in range(2, len(decode_map)):
        if decode_map[s] == byte:
            return s
    raise UnknownSymbol(byte)
