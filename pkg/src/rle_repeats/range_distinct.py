"""Range-distinct queries over the run heads ``L'[1..r]``.

For a run range ``[pk..qk]`` the query reports every distinct head with the
leftmost and rightmost run holding it. Leftmost runs are those with
``prev[k] < pk`` and rightmost runs those with ``next[k] > qk``; both sets
are enumerated by recursive range-minimum (resp. maximum) descent, so the
work is linear in the number of outputs.
"""

from __future__ import annotations

from .rlbwt import Rlbwt

BLOCK = 16
SCAN_LIMIT = 8


class BlockArgMin:
    """Position of a minimum in ``values[l..r]`` (1-based, inclusive).

    Blocks of ``BLOCK`` entries are summarized by their argmin and a sparse
    table over the block summaries; partial blocks are scanned. Space is
    ``O(r/BLOCK * log r)`` words on top of the values.
    """

    def __init__(self, values: list[int]):
        self.values = values
        size = len(values) - 1
        self.size = size
        nblocks = (size + BLOCK - 1) // BLOCK
        key = values.__getitem__
        block_arg = [
            min(range(1 + j * BLOCK, min(size, (j + 1) * BLOCK) + 1), key=key) for j in range(nblocks)
        ]
        table = [block_arg]
        width = 1
        while 2 * width <= nblocks:
            prev = table[-1]
            row = []
            for j in range(nblocks - 2 * width + 1):
                a, b = prev[j], prev[j + width]
                row.append(a if values[a] <= values[b] else b)
            table.append(row)
            width *= 2
        self.table = table

    def query(self, l: int, r: int) -> int:
        values = self.values
        key = values.__getitem__
        bl = (l - 1) // BLOCK
        br = (r - 1) // BLOCK
        if br - bl <= 1:
            return min(range(l, r + 1), key=key)
        best = min(range(l, (bl + 1) * BLOCK + 1), key=key)
        right = min(range(br * BLOCK + 1, r + 1), key=key)
        if values[right] < values[best]:
            best = right
        lo, hi = bl + 1, br - 1
        level = (hi - lo + 1).bit_length() - 1
        row = self.table[level]
        a, b = row[lo], row[hi - (1 << level) + 1]
        mid = a if values[a] <= values[b] else b
        if values[mid] < values[best]:
            best = mid
        return best


class RdIndex:
    """prev/next arrays over run heads plus their range-min/max structures."""

    def __init__(self, heads: list[int], sigma: int):
        r = len(heads) - 1
        self.r = r
        self.heads = heads
        self.sigma = sigma
        last = [0] * (sigma + 1)
        prev = [0] * (r + 1)
        for k in range(1, r + 1):
            prev[k] = last[heads[k]]
            last[heads[k]] = k
        nxt = [0] * (r + 1)
        first = [r + 1] * (sigma + 1)
        for k in range(r, 0, -1):
            nxt[k] = first[heads[k]]
            first[heads[k]] = k
        self.prev = prev
        self.next = nxt
        self._min_prev = BlockArgMin(prev)
        self._max_next = BlockArgMin([-v for v in nxt])
        self.probes = 0
        self.queries = 0
        self.outputs = 0

    def new_scratch(self) -> list[int]:
        return [0] * (self.sigma + 1)

    def range_distinct(self, pk: int, qk: int, scratch: list[int] | None = None) -> list[tuple[int, int, int]]:
        """``(symbol, leftmost run, rightmost run)`` per distinct head in ``[pk..qk]``.

        ``scratch`` must be all zeros on entry and is all zeros on return.
        Output order is unspecified.
        """
        heads = self.heads
        self.queries += 1
        if pk == qk:
            self.probes += 1
            self.outputs += 1
            return [(heads[pk], pk, pk)]
        if scratch is None:
            scratch = self.new_scratch()
        out = []
        if qk - pk < SCAN_LIMIT:
            for k in range(pk, qk + 1):
                c = heads[k]
                slot = scratch[c]
                if slot:
                    out[slot - 1][2] = k
                else:
                    out.append([c, k, k])
                    scratch[c] = len(out)
            self.probes += qk - pk + 1
        else:
            prev, nxt = self.prev, self.next
            min_prev, max_next = self._min_prev.query, self._max_next.query
            probes = 0
            stack = [(pk, qk)]
            while stack:
                a, b = stack.pop()
                m = min_prev(a, b)
                probes += 1
                if prev[m] >= pk:
                    continue
                c = heads[m]
                out.append([c, m, m])
                scratch[c] = len(out)
                if a < m:
                    stack.append((a, m - 1))
                if m < b:
                    stack.append((m + 1, b))
            stack = [(pk, qk)]
            while stack:
                a, b = stack.pop()
                m = max_next(a, b)
                probes += 1
                if nxt[m] <= qk:
                    continue
                out[scratch[heads[m]] - 1][2] = m
                if a < m:
                    stack.append((a, m - 1))
                if m < b:
                    stack.append((m + 1, b))
            self.probes += probes
        for item in out:
            scratch[item[0]] = 0
        self.outputs += len(out)
        return [tuple(item) for item in out]


def build_rd(rl: Rlbwt) -> RdIndex:
    return RdIndex(rl.heads, rl.sigma)


def range_distinct(idx: RdIndex, pk: int, qk: int, scratch=None):
    return idx.range_distinct(pk, qk, scratch)
