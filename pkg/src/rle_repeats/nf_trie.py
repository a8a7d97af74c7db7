"""Compacted reversed trie over the repeats with positive net frequency.

Edges prepend symbols, so a query pattern is matched from its last symbol
backwards. Nodes keep only their string length and one row ``i_x`` of
their SA-interval; an edge label is recovered on demand by walking FL from
the child's row (``x[k] = F[FL^{k-1}(i_x)]``).

The trie is grown during the traversal. After visiting a right-maximal
repeat ``x`` with right-maximal left extensions ``A_x``:

* ``|A_x| >= 2``: hang every extension below ``x``;
* ``|A_x| == 1``: hang it, then splice ``x`` out unless ``x`` has net
  occurrences;
* ``|A_x| == 0``: drop ``x`` unless it has net occurrences, and splice its
  parent out if that leaves the parent with one child and no net
  occurrences.

What remains is the root, every repeat with NF > 0 and the branching nodes.
"""

from __future__ import annotations

import bisect
import io
import struct

import numpy as np

from .errors import BadMagic, FormatError, NoccNotStored, VersionMismatch

TRIE_MAGIC = b"NFTR1\x00"
TRIE_VERSION = 1
SORTED_SCAN_LIMIT = 8


class _Node:
    __slots__ = ("depth", "witness", "parent", "key", "nf", "nocc", "children")

    def __init__(self, depth, witness, parent, key):
        self.depth = depth
        self.witness = witness
        self.parent = parent
        self.key = key
        self.nf = 0
        self.nocc = None
        self.children = {}


class TrieBuilder:
    """Traversal visitor maintaining the trie of the current depth."""

    def __init__(self, store_nocc: bool = False):
        self.store_nocc = store_nocc
        self.root = _Node(0, 1, None, 0)
        self.depth = 0
        self.frontier = {1: self.root}
        self.upcoming = {}
        self.removed = 0

    def __call__(self, report):
        depth = report.depth
        if depth != self.depth:
            self.frontier = self.upcoming
            self.upcoming = {}
            self.depth = depth
        x = self.frontier.pop(report.repr.p)
        nf = len(report.net_occurrences)
        x.nf = nf
        if self.store_nocc and nf:
            x.nocc = list(report.net_occurrences)
        for a, y in report.children:
            child = _Node(depth + 1, y.p, x, a)
            x.children[a] = child
            self.upcoming[y.p] = child
        if x is self.root or nf:
            return
        kids = len(x.children)
        if kids == 1:
            self._splice(x)
        elif kids == 0:
            parent = x.parent
            del parent.children[x.key]
            self.removed += 1
            if parent is not self.root and parent.nf == 0 and len(parent.children) == 1:
                self._splice(parent)

    def _splice(self, x):
        (child,) = x.children.values()
        parent = x.parent
        child.parent = parent
        child.key = x.key
        parent.children[x.key] = child
        self.removed += 1

    def finish(self, mapper, lookup: str = "hash") -> "NfTrie":
        order = [self.root]
        parents = [-1]
        idx = 0
        while idx < len(order):
            node = order[idx]
            for key in sorted(node.children):
                order.append(node.children[key])
                parents.append(idx)
            idx += 1
        depth = [nd.depth for nd in order]
        witness = [nd.witness for nd in order]
        key = [nd.key for nd in order]
        nf = [nd.nf for nd in order]
        fl_handle = [mapper.fl_handle_of(w) for w in witness]
        nocc = [nd.nocc or [] for nd in order] if self.store_nocc else None
        return NfTrie(depth, witness, fl_handle, parents, key, nf, nocc, lookup=lookup)


class NfTrie:
    """Immutable compacted trie in flat arrays; node 0 is the root (ε)."""

    def __init__(self, depth, witness, fl_handle, parent, key, nf, nocc=None, lookup: str = "hash"):
        self.depth = list(depth)
        self.witness = list(witness)
        self.fl_handle = list(fl_handle)
        self.parent = list(parent)
        self.key = list(key)
        self.nf = list(nf)
        self.nocc = nocc
        if lookup not in ("hash", "sorted"):
            raise ValueError(f"unknown lookup mode {lookup!r}")
        self.lookup = lookup
        size = len(self.depth)
        # children grouped by parent; node ids are BFS-ordered with keys ascending
        first = [0] * (size + 1)
        for v in range(1, size):
            first[self.parent[v] + 1] += 1
        for u in range(size):
            first[u + 1] += first[u]
        self.child_first = [f + 1 for f in first]  # children of u are ids child_first[u]..child_first[u+1]-1
        self.child_keys = self.key
        if lookup == "hash":
            self.children = [dict() for _ in range(size)]
            for v in range(1, size):
                self.children[self.parent[v]][self.key[v]] = v

    def __len__(self):
        return len(self.depth)

    @property
    def nodes(self) -> int:
        return len(self.depth)

    @property
    def has_nocc(self) -> bool:
        return self.nocc is not None

    def child(self, u: int, c: int) -> int:
        """Child of ``u`` whose edge ends next to ``u`` with symbol ``c``; -1 if none."""
        if self.lookup == "hash":
            return self.children[u].get(c, -1)
        lo, hi = self.child_first[u], self.child_first[u + 1]
        keys = self.child_keys
        if hi - lo <= SORTED_SCAN_LIMIT:
            for v in range(lo, hi):
                if keys[v] == c:
                    return v
            return -1
        v = bisect.bisect_left(keys, c, lo, hi)
        return v if v < hi and keys[v] == c else -1

    def nsmr_count(self) -> int:
        return sum(1 for v in range(1, len(self.nf)) if self.nf[v] > 0)

    def __eq__(self, other):
        if not isinstance(other, NfTrie):
            return NotImplemented
        return (
            self.depth == other.depth
            and self.witness == other.witness
            and self.fl_handle == other.fl_handle
            and self.parent == other.parent
            and self.key == other.key
            and self.nf == other.nf
            and self.nocc == other.nocc
        )


class QueryCounter:
    """Accumulates symbol comparisons, child lookups and FL steps."""

    def __init__(self):
        self.work = 0
        self.queries = 0
        self.max_ratio = 0.0

    def add(self, work: int, plen: int):
        self.work += work
        self.queries += 1
        self.max_ratio = max(self.max_ratio, work / (plen + 1))


def _locate(trie: NfTrie, mapper, P, counter: QueryCounter | None):
    """Node spelling exactly ``P`` or -1."""
    m = len(P)
    node = 0
    matched = 0
    work = 0
    depth = trie.depth
    fchar = mapper.fchar
    step = mapper.step_fl
    found = 0
    while matched < m:
        c = P[m - 1 - matched]
        child = trie.child(node, c)
        work += 1
        if child < 0:
            found = -1
            break
        edge = depth[child] - depth[node]
        if matched + edge > m:
            found = -1
            break
        i, g = trie.witness[child], trie.fl_handle[child]
        label = []
        for k in range(edge):
            label.append(fchar[g])
            if k + 1 < edge:
                i, g = step(i, g)
                work += 1
        base = m - 1 - matched
        for j in range(edge):
            work += 1
            if label[edge - 1 - j] != P[base - j]:
                found = -1
                break
        if found < 0:
            break
        matched += edge
        node = child
    if counter is not None:
        counter.add(work, m)
    return node if found == 0 else -1


def nf_query(trie: NfTrie, mapper, P, counter: QueryCounter | None = None) -> int:
    """Net frequency of the symbol sequence ``P`` (``None`` means unmappable)."""
    if P is None:
        return 0
    node = _locate(trie, mapper, P, counter)
    return trie.nf[node] if node >= 0 else 0


def nocc_query(trie: NfTrie, mapper, P) -> list[int]:
    if not trie.has_nocc:
        raise NoccNotStored("trie was built without net-occurrence lists")
    if P is None:
        return []
    node = _locate(trie, mapper, P, None)
    if node < 0:
        return []
    return list(trie.nocc[node])


def edge_label(trie: NfTrie, mapper, v: int) -> list[int]:
    """Symbols on the edge into ``v``, read left to right."""
    edge = trie.depth[v] - trie.depth[trie.parent[v]]
    return mapper.walk_string(trie.witness[v], edge, trie.fl_handle[v])


def node_string(trie: NfTrie, mapper, v: int) -> list[int]:
    return mapper.walk_string(trie.witness[v], trie.depth[v], trie.fl_handle[v])


# -- serialization -------------------------------------------------------------


def _u64(values) -> bytes:
    return np.asarray(values, dtype="<u8").tobytes()


def serialize(trie: NfTrie) -> bytes:
    buf = io.BytesIO()
    buf.write(TRIE_MAGIC)
    flags = (1 if trie.has_nocc else 0) | (2 if trie.lookup == "sorted" else 0)
    size = len(trie)
    buf.write(struct.pack("<HHQ", TRIE_VERSION, flags, size))
    buf.write(_u64(trie.depth))
    buf.write(_u64(trie.witness))
    buf.write(_u64(trie.fl_handle))
    buf.write(_u64([p + 1 for p in trie.parent]))  # root's -1 stored as 0
    buf.write(_u64(trie.key))
    buf.write(_u64(trie.nf))
    if trie.has_nocc:
        offsets = [0]
        for lst in trie.nocc:
            offsets.append(offsets[-1] + len(lst))
        buf.write(_u64(offsets))
        buf.write(_u64([b for lst in trie.nocc for b in lst]))
    return buf.getvalue()


def read_from(reader) -> NfTrie:
    if reader.take(len(TRIE_MAGIC)) != TRIE_MAGIC:
        raise BadMagic("not a trie section")
    version, flags, size = reader.unpack("<HHQ")
    if version != TRIE_VERSION:
        raise VersionMismatch(f"trie version {version}, expected {TRIE_VERSION}")
    depth = reader.u64s(size)
    witness = reader.u64s(size)
    fl_handle = reader.u64s(size)
    parent = [p - 1 for p in reader.u64s(size)]
    key = reader.u64s(size)
    nf = reader.u64s(size)
    nocc = None
    if flags & 1:
        offsets = reader.u64s(size + 1)
        values = reader.u64s(offsets[-1])
        nocc = [values[offsets[v] : offsets[v + 1]] for v in range(size)]
    if size == 0 or parent[0] != -1:
        raise FormatError("trie root missing")
    return NfTrie(depth, witness, fl_handle, parent, key, nf, nocc, lookup="sorted" if flags & 2 else "hash")


def deserialize(data: bytes) -> NfTrie:
    from .rlbwt import Reader

    return read_from(Reader(data))
