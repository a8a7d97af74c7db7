"""One-file index: RLBWT, mapping tables, boundary samples and the NF trie."""

from __future__ import annotations

import io
import struct
import time
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import nf_trie, rlbwt
from .alphabet import Text, decode_symbols, encode_pattern, encode_text
from .errors import BadMagic, FormatError, VersionMismatch
from .mapping import DEFAULT_BALANCE, BaselineMapper, BoundarySamples, MoveMapper, sample_sa_at_run_boundaries
from .net_analysis import NetOccurrence, epsilon_net_occurrences, mus_from_net_occurrences
from .range_distinct import build_rd
from .renum import TraversalStats, traverse

INDEX_MAGIC = b"RLEIDX\x00\x01"
INDEX_VERSION = 1
MOVE_MAGIC = b"MOVE1\x00"
SAMPLE_MAGIC = b"SAMP1\x00"
MAPPER_KINDS = {"move": 0, "baseline": 1}


@dataclass
class BuildReport:
    traversal: TraversalStats
    seconds: dict = field(default_factory=dict)
    net_occurrences: list = field(default_factory=list)


class _BuildVisitor:
    def __init__(self, trie_builder):
        self.trie_builder = trie_builder
        self.netoccs = []

    def __call__(self, report):
        self.trie_builder(report)
        for b in report.net_occurrences:
            self.netoccs.append(NetOccurrence(b, report.depth, report.interval))


class RepeatIndex:
    """Everything needed to enumerate repeats and answer NF queries."""

    def __init__(self, rl, mapper, samples: BoundarySamples, trie: nf_trie.NfTrie | None):
        self.rl = rl
        self.mapper = mapper
        self.samples = samples
        self.trie = trie
        self._rd = None
        self.build_report: BuildReport | None = None

    # -- construction ----------------------------------------------------------

    @classmethod
    def from_rlbwt(cls, rl, mapper: str = "move", balance: int = DEFAULT_BALANCE,
                   with_nocc: bool = False, lookup: str = "hash") -> "RepeatIndex":
        seconds = {}
        t0 = time.perf_counter()
        m = MoveMapper(rl, balance) if mapper == "move" else BaselineMapper(rl)
        seconds["mapper"] = time.perf_counter() - t0
        t0 = time.perf_counter()
        samples = sample_sa_at_run_boundaries(rl, m)
        seconds["samples"] = time.perf_counter() - t0
        idx = cls(rl, m, samples, None)
        t0 = time.perf_counter()
        builder = nf_trie.TrieBuilder(store_nocc=with_nocc)
        visitor = _BuildVisitor(builder)
        stats = traverse(rl, m, idx.rd, visitor, samples, epsilon_rows=idx.epsilon_net_occurrences())
        seconds["traverse"] = time.perf_counter() - t0
        t0 = time.perf_counter()
        idx.trie = builder.finish(m, lookup=lookup)
        seconds["trie"] = time.perf_counter() - t0
        idx.build_report = BuildReport(stats, seconds, sorted(visitor.netoccs))
        return idx

    @classmethod
    def from_text(cls, text: Text | bytes | str, **kwargs) -> "RepeatIndex":
        if not isinstance(text, Text):
            text = encode_text(text)
        t0 = time.perf_counter()
        rl, _ = rlbwt.from_text(text)
        elapsed = time.perf_counter() - t0
        idx = cls.from_rlbwt(rl, **kwargs)
        idx.build_report.seconds["bwt"] = elapsed
        return idx

    # -- basic properties ------------------------------------------------------

    @property
    def n(self) -> int:
        return self.rl.n

    @property
    def r(self) -> int:
        return self.rl.r

    @property
    def sigma(self) -> int:
        return self.rl.sigma

    @property
    def rd(self):
        if self._rd is None:
            self._rd = build_rd(self.rl)
        return self._rd

    def epsilon_net_occurrences(self) -> list[int]:
        return epsilon_net_occurrences(self.rl, self.samples)

    def decode(self, symbols) -> bytes:
        return decode_symbols(self.rl.decode_map, symbols)

    def encode_pattern(self, raw: bytes):
        return encode_pattern(self.rl.decode_map, raw)

    # -- queries ---------------------------------------------------------------

    def nf(self, pattern, counter=None) -> int:
        """Net frequency of ``pattern`` (bytes/str, or a list of symbols)."""
        return nf_trie.nf_query(self.trie, self.mapper, self._symbols(pattern), counter)

    def nocc(self, pattern) -> list[int]:
        return nf_trie.nocc_query(self.trie, self.mapper, self._symbols(pattern))

    def _symbols(self, pattern):
        if isinstance(pattern, str):
            pattern = pattern.encode("utf-8")
        if isinstance(pattern, (bytes, bytearray)):
            return self.encode_pattern(bytes(pattern))
        return list(pattern)

    def traverse(self, visitor=None, materialize: bool = False) -> TraversalStats:
        return traverse(self.rl, self.mapper, self.rd, visitor, self.samples, materialize=materialize,
                        epsilon_rows=self.epsilon_net_occurrences())

    def all_net_occurrences(self, include_epsilon: bool = True) -> list[NetOccurrence]:
        if self.build_report is not None:
            items = self.build_report.net_occurrences
        else:
            collected = []

            def visit(report):
                for b in report.net_occurrences:
                    collected.append(NetOccurrence(b, report.depth, report.interval))

            self.traverse(visit)
            items = sorted(collected)
        if not include_epsilon:
            items = [o for o in items if o.length > 0]
        return list(items)

    def mus(self):
        return mus_from_net_occurrences(self.all_net_occurrences(), self.n)

    def string_of(self, row: int, length: int) -> list[int]:
        return self.mapper.walk_string(row, length)

    # -- serialization ---------------------------------------------------------

    def to_bytes(self) -> bytes:
        buf = io.BytesIO()
        kind = MAPPER_KINDS[self.mapper.kind]
        balance = getattr(self.mapper, "D", 0)
        buf.write(INDEX_MAGIC)
        buf.write(struct.pack("<HHI", INDEX_VERSION, kind, balance))
        buf.write(rlbwt.serialize(self.rl))
        buf.write(MOVE_MAGIC)
        if self.mapper.kind == "move":
            tables = self.mapper.tables
            buf.write(struct.pack("<QQ", len(tables[0]), len(tables[3])))
            for arr in tables:
                buf.write(np.asarray(arr, dtype="<u8").tobytes())
        else:
            buf.write(struct.pack("<QQ", 0, 0))
        rows = sorted(self.samples)
        buf.write(SAMPLE_MAGIC)
        buf.write(struct.pack("<Q", len(rows)))
        buf.write(np.asarray(rows, dtype="<u8").tobytes())
        buf.write(np.asarray([self.samples[i] for i in rows], dtype="<u8").tobytes())
        buf.write(nf_trie.serialize(self.trie))
        return buf.getvalue()

    @classmethod
    def from_bytes(cls, data: bytes) -> "RepeatIndex":
        reader = rlbwt.Reader(data)
        if reader.take(len(INDEX_MAGIC)) != INDEX_MAGIC:
            raise BadMagic("not an index file")
        version, kind, balance = reader.unpack("<HHI")
        if version != INDEX_VERSION:
            raise VersionMismatch(f"index version {version}, expected {INDEX_VERSION}")
        rl, _ = rlbwt.read_from(reader)
        if reader.take(len(MOVE_MAGIC)) != MOVE_MAGIC:
            raise BadMagic("move-table section missing")
        h, fh = reader.unpack("<QQ")
        if kind == MAPPER_KINDS["move"]:
            tables = [reader.u64s(h), reader.u64s(h), reader.u64s(h), reader.u64s(fh), reader.u64s(fh), reader.u64s(fh)]
            mapper = MoveMapper(rl, balance, _tables=tables)
        elif kind == MAPPER_KINDS["baseline"]:
            mapper = BaselineMapper(rl)
        else:
            raise FormatError(f"unknown mapper kind {kind}")
        if reader.take(len(SAMPLE_MAGIC)) != SAMPLE_MAGIC:
            raise BadMagic("sample section missing")
        (count,) = reader.unpack("<Q")
        rows = reader.u64s(count)
        values = reader.u64s(count)
        samples = BoundarySamples(zip(rows, values))
        trie = nf_trie.read_from(reader)
        if reader.offset != len(data):
            raise FormatError("trailing bytes after trie section")
        return cls(rl, mapper, samples, trie)

    def save(self, path) -> int:
        data = self.to_bytes()
        Path(path).write_bytes(data)
        return len(data)

    @classmethod
    def load(cls, path) -> "RepeatIndex":
        return cls.from_bytes(Path(path).read_bytes())


def build_index(source, **kwargs) -> RepeatIndex:
    if isinstance(source, rlbwt.Rlbwt):
        return RepeatIndex.from_rlbwt(source, **kwargs)
    return RepeatIndex.from_text(source, **kwargs)
