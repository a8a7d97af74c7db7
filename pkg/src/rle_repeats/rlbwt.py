"""BWT and its run-length encoding.

Rows and run indices are 1-based. Arrays indexed by run keep a dummy slot at
index 0 so that ``heads[k]`` is the head of run ``k``.
"""

from __future__ import annotations

import io
import struct
from dataclasses import dataclass

import numpy as np

from .alphabet import SENTINEL, Text, identity_decode_map
from .errors import BadMagic, FormatError, Truncated, UnknownSymbol, VersionMismatch
from .suffix_array import suffix_array

RLBWT_MAGIC = b"RLBR1\x00"
RLBWT_VERSION = 1


@dataclass(eq=False)
class Rlbwt:
    """Run-length encoded BWT ``L = heads[1]^lens[1] ... heads[r]^lens[r]``.

    ``ccount[c]`` is the number of BWT symbols smaller than ``c`` for
    ``c`` in ``[1..sigma+1]``. ``run_rank[k]`` is the number of occurrences of
    ``heads[k]`` in ``L[1..starts[k]-1]``, which with ``ccount`` gives LF at
    any row of run ``k`` in constant time.
    """

    n: int
    sigma: int
    heads: list[int]
    lens: list[int]
    starts: list[int]
    ends: list[int]
    ccount: list[int]
    run_rank: list[int]
    decode_map: tuple[int, ...]

    @property
    def r(self) -> int:
        return len(self.heads) - 1

    def lf_in_run(self, i: int, k: int) -> int:
        return self.ccount[self.heads[k]] + self.run_rank[k] + (i - self.starts[k]) + 1

    def decode(self) -> list[int]:
        out = []
        for k in range(1, self.r + 1):
            out.extend([self.heads[k]] * self.lens[k])
        return out

    def run_of(self, i: int) -> int:
        """Run containing row ``i`` (binary search; not used on hot paths)."""
        import bisect

        return bisect.bisect_right(self.starts, i, 1, self.r + 1) - 1

    def __eq__(self, other):
        if not isinstance(other, Rlbwt):
            return NotImplemented
        return (
            self.n == other.n
            and self.sigma == other.sigma
            and self.heads == other.heads
            and self.lens == other.lens
            and tuple(self.decode_map) == tuple(other.decode_map)
        )


def bwt_from_sa(t: Text, sa) -> list[int]:
    """``L[i] = T[SA[i]-1]`` with ``T[0] = $``; ``sa`` holds 1-based values."""
    chars = t.chars
    sa = np.asarray(sa, dtype=np.int64)
    L = chars[(sa - 2) % t.n]
    return L.tolist()


def run_length_encode(L, sigma: int | None = None, decode_map=None) -> Rlbwt:
    L = np.asarray(L, dtype=np.int64)
    if len(L) == 0:
        raise FormatError("empty BWT")
    change = np.flatnonzero(L[1:] != L[:-1]) + 1
    starts0 = np.concatenate(([0], change))
    lens = np.diff(np.concatenate((starts0, [len(L)])))
    heads = L[starts0]
    return from_runs(heads.tolist(), lens.tolist(), sigma=sigma, decode_map=decode_map)


def from_runs(heads, lens, sigma: int | None = None, decode_map=None) -> Rlbwt:
    """Assemble an :class:`Rlbwt` from run heads and lengths (0-based lists)."""
    heads = [int(h) for h in heads]
    lens = [int(d) for d in lens]
    if len(heads) != len(lens) or not heads:
        raise FormatError("heads and lens must be non-empty and of equal length")
    if any(d < 1 for d in lens):
        raise FormatError("run lengths must be positive")
    if sigma is None:
        sigma = max(heads)
    if any(h < 1 or h > sigma for h in heads):
        raise FormatError("run head outside [1..sigma]")
    r = len(heads)
    n = sum(lens)
    totals = [0] * (sigma + 2)
    run_rank = [0] * (r + 1)
    starts = [0] * (r + 2)
    ends = [0] * (r + 1)
    pos = 1
    for k in range(1, r + 1):
        h = heads[k - 1]
        run_rank[k] = totals[h]
        totals[h] += lens[k - 1]
        starts[k] = pos
        pos += lens[k - 1]
        ends[k] = pos - 1
    starts[r + 1] = n + 1
    ccount = [0] * (sigma + 2)
    for c in range(2, sigma + 2):
        ccount[c] = ccount[c - 1] + totals[c - 1]
    if decode_map is None:
        decode_map = identity_decode_map(sigma)
    return Rlbwt(
        n=n,
        sigma=sigma,
        heads=[0] + heads,
        lens=[0] + lens,
        starts=starts,
        ends=ends,
        ccount=ccount,
        run_rank=run_rank,
        decode_map=tuple(decode_map),
    )


def validate(rl: Rlbwt) -> None:
    """Structural checks on an RLBWT read from outside."""
    heads = rl.heads
    for k in range(1, rl.r):
        if heads[k] == heads[k + 1]:
            raise FormatError(f"runs {k} and {k + 1} share head {heads[k]}")
    counts = [rl.ccount[c + 1] - rl.ccount[c] for c in range(1, rl.sigma + 1)]
    if counts[SENTINEL - 1] != 1:
        raise FormatError("the sentinel must occur exactly once")
    if any(k == 0 for k in counts):
        raise FormatError("every symbol in [1..sigma] must occur")
    if rl.n < 2:
        raise FormatError("n must be at least 2")
    if len(rl.decode_map) != rl.sigma + 1:
        raise FormatError("decode map size does not match sigma")


def from_text(t: Text) -> tuple[Rlbwt, np.ndarray]:
    """RLBWT of ``t`` plus its 1-based suffix array."""
    sa = suffix_array(t.chars) + 1
    L = bwt_from_sa(t, sa)
    return run_length_encode(L, sigma=t.sigma, decode_map=t.decode_map), sa


def interval_of_char(rl: Rlbwt, c: int) -> tuple[int, int]:
    if c < 1 or c > rl.sigma:
        raise UnknownSymbol(c)
    return rl.ccount[c] + 1, rl.ccount[c + 1]


def invert(rl: Rlbwt) -> list[int]:
    """Recover ``T[1..n]`` by LF-walking from the sentinel row."""
    import bisect

    n = rl.n
    out = [0] * n
    out[n - 1] = SENTINEL
    i = 1  # row of the suffix "$"
    starts = rl.starts
    for pos in range(n - 2, -1, -1):
        k = bisect.bisect_right(starts, i, 1, rl.r + 1) - 1
        if rl.heads[k] == SENTINEL:
            raise FormatError("LF is not a single cycle; not a valid BWT")
        out[pos] = rl.heads[k]
        i = rl.lf_in_run(i, k)
    return out


# -- interchange formats -------------------------------------------------------


def write_text_format(rl: Rlbwt, fh) -> None:
    """``n r sigma`` header, optional ``#alphabet`` line, then ``head length`` lines."""
    fh.write(f"{rl.n} {rl.r} {rl.sigma}\n")
    fh.write("#alphabet " + bytes(rl.decode_map[2:]).hex() + "\n")
    for k in range(1, rl.r + 1):
        fh.write(f"{rl.heads[k]} {rl.lens[k]}\n")


def read_text_format(fh) -> Rlbwt:
    header = None
    decode_map = None
    heads, lens = [], []
    for lineno, line in enumerate(fh, 1):
        line = line.strip()
        if not line:
            continue
        if line.startswith("#"):
            if line.startswith("#alphabet"):
                hexpart = line[len("#alphabet") :].strip()
                decode_map = (0, 0) + tuple(bytes.fromhex(hexpart))
            continue
        parts = line.split()
        try:
            values = [int(x) for x in parts]
        except ValueError:
            raise FormatError(f"line {lineno}: expected integers") from None
        if header is None:
            if len(values) != 3:
                raise FormatError("header must be 'n r sigma'")
            header = values
            continue
        if len(values) != 2:
            raise FormatError(f"line {lineno}: expected 'head_symbol run_length'")
        heads.append(values[0])
        lens.append(values[1])
    if header is None:
        raise FormatError("missing header")
    n, r, sigma = header
    if len(heads) != r:
        raise FormatError(f"header says r={r} but {len(heads)} runs were read")
    rl = from_runs(heads, lens, sigma=sigma, decode_map=decode_map)
    if rl.n != n:
        raise FormatError(f"header says n={n} but run lengths sum to {rl.n}")
    validate(rl)
    return rl


def _pack_u64(values) -> bytes:
    return np.asarray(values, dtype="<u8").tobytes()


def serialize(rl: Rlbwt) -> bytes:
    buf = io.BytesIO()
    buf.write(RLBWT_MAGIC)
    buf.write(struct.pack("<HQQQ", RLBWT_VERSION, rl.n, rl.r, rl.sigma))
    buf.write(_pack_u64(rl.decode_map[2:]))
    buf.write(_pack_u64(rl.heads[1:]))
    buf.write(_pack_u64(rl.lens[1:]))
    return buf.getvalue()


class Reader:
    """Cursor over a bytes buffer raising :class:`Truncated` on short reads."""

    def __init__(self, data: bytes, offset: int = 0):
        self.data = data
        self.offset = offset

    def take(self, size: int) -> bytes:
        if self.offset + size > len(self.data):
            raise Truncated(f"need {size} bytes at offset {self.offset}, have {len(self.data) - self.offset}")
        out = self.data[self.offset : self.offset + size]
        self.offset += size
        return out

    def unpack(self, fmt: str):
        return struct.unpack(fmt, self.take(struct.calcsize(fmt)))

    def u64s(self, count: int) -> list[int]:
        return np.frombuffer(self.take(8 * count), dtype="<u8").astype(np.int64).tolist()


def deserialize(data: bytes) -> Rlbwt:
    rl, _ = read_from(Reader(data))
    return rl


def read_from(reader: Reader):
    if reader.take(len(RLBWT_MAGIC)) != RLBWT_MAGIC:
        raise BadMagic("not an RLBWT section")
    version, n, r, sigma = reader.unpack("<HQQQ")
    if version != RLBWT_VERSION:
        raise VersionMismatch(f"RLBWT version {version}, expected {RLBWT_VERSION}")
    alphabet = reader.u64s(sigma - 1)
    heads = reader.u64s(r)
    lens = reader.u64s(r)
    rl = from_runs(heads, lens, sigma=sigma, decode_map=(0, 0) + tuple(alphabet))
    if rl.n != n:
        raise FormatError("run lengths do not sum to n")
    return rl, reader
