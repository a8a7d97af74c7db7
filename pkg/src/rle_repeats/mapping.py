"""LF and FL mappings over an RLBWT.

Two back-ends share one interface. Positions come with a *handle*: the index
of the interval of the back-end's partition that contains the position.
``step_lf(i, h)`` returns ``(LF(i), h')`` with ``h'`` the handle of the
result, so a walk never has to search for its interval again. The handle
also tells which run of L holds the position (``run_of[h]``), which is how
the traversal turns SA-intervals into run ranges.

* :class:`BaselineMapper` partitions by runs and finds the handle of the
  result by binary search over run starts (O(log r) per step).
* :class:`MoveMapper` uses balanced move tables: the image of every
  interval overlaps at most ``D`` intervals, so the handle of the result is
  found by a forward scan of at most ``D`` entries.

On the FL side the partition is over F (the sorted first column); every
FL interval carries its F symbol in ``fchar``, so walking a string left to
right is ``fchar[g]`` followed by ``step_fl``.
"""

from __future__ import annotations

import bisect

import numpy as np

from .errors import FormatError, MissingBoundarySample
from .rlbwt import Rlbwt

DEFAULT_BALANCE = 4


def _lf_run_images(rl: Rlbwt) -> list[int]:
    return [0] + [rl.lf_in_run(rl.starts[k], k) for k in range(1, rl.r + 1)]


class _Common:
    """Members shared by both back-ends (the F side is partitioned alike)."""

    kind = "?"

    def lf(self, i: int) -> int:
        return self.step_lf(i, self.handle_of(i))[0]

    def fl(self, i: int) -> int:
        return self.step_fl(i, self.fl_handle_of(i))[0]

    def handle_of(self, i: int) -> int:
        return bisect.bisect_right(self.p, i, 0, self.size) - 1

    def fl_handle_of(self, i: int) -> int:
        return bisect.bisect_right(self.fp, i, 0, self.fl_size) - 1

    def symbol_at(self, h: int) -> int:
        """``L[i]`` for any ``i`` in LF interval ``h``."""
        return self.rl.heads[self.run_of[h]]

    def walk_string(self, i: int, length: int, g: int | None = None) -> list[int]:
        """``x[1..length]`` for a string ``x`` whose SA-interval contains row ``i``."""
        if g is None:
            g = self.fl_handle_of(i)
        out = []
        fchar = self.fchar
        for k in range(length):
            out.append(fchar[g])
            if k + 1 < length:
                i, g = self.step_fl(i, g)
        return out

    def _finish_lf(self, rl: Rlbwt):
        # run bookkeeping for the LF partition
        size = self.size
        starts = rl.starts
        self.run_of = [bisect.bisect_right(starts, self.p[h], 1, rl.r + 1) - 1 for h in range(size)]
        self.run_first = [0] * (rl.r + 1)
        self.run_last = [0] * (rl.r + 1)
        for h in range(size - 1, -1, -1):
            self.run_first[self.run_of[h]] = h
        for h in range(size):
            self.run_last[self.run_of[h]] = h


class BaselineMapper(_Common):
    """Predecessor search over run starts; one interval per run."""

    kind = "baseline"

    def __init__(self, rl: Rlbwt):
        self.rl = rl
        self.n = rl.n
        r = rl.r
        self.size = r
        self.p = rl.starts[1 : r + 2]  # p[h] = start of run h+1, p[size] = n+1
        lf_start = _lf_run_images(rl)
        self.shift = [lf_start[k] - rl.starts[k] for k in range(1, r + 1)]
        order = sorted(range(1, r + 1), key=lambda k: lf_start[k])
        self.fl_size = r
        self.fp = [lf_start[k] for k in order] + [rl.n + 1]
        self.fshift = [rl.starts[k] - lf_start[k] for k in order]
        self.fchar = [rl.heads[k] for k in order]
        self._finish_lf(rl)

    def step_lf(self, i: int, h: int):
        j = i + self.shift[h]
        return j, bisect.bisect_right(self.p, j, 0, self.size) - 1

    def step_fl(self, i: int, g: int):
        j = i + self.fshift[g]
        return j, bisect.bisect_right(self.fp, j, 0, self.fl_size) - 1

    def step_lf_scans(self, i: int, h: int):
        j, h2 = self.step_lf(i, h)
        return j, h2, 1


def balance_intervals(in_starts, out_starts, n: int, D: int):
    """Split intervals until every image overlaps at most ``D`` input intervals.

    ``in_starts`` (sorted, 1-based) partition ``[1..n]``; interval ``k`` is
    mapped by a shift onto the interval beginning at ``out_starts[k]``. An
    image that overlaps more than ``D`` intervals is cut where the
    ``(D+1)``-th overlapped interval begins; every cut adds an input
    boundary, so the loop ends after at most ``n`` cuts.
    """
    if D < 2:
        raise ValueError("balance parameter must be at least 2")
    p = np.asarray(in_starts, dtype=np.int64)
    q = np.asarray(out_starts, dtype=np.int64)
    while True:
        lens = np.diff(np.append(p, n + 1))
        a = np.searchsorted(p, q, side="right") - 1
        b = np.searchsorted(p, q + lens - 1, side="right") - 1
        viol = np.flatnonzero(b - a + 1 > D)
        if len(viol) == 0:
            break
        cut_out = p[a[viol] + D]
        cut_in = p[viol] + (cut_out - q[viol])
        p = np.concatenate((p, cut_in))
        q = np.concatenate((q, cut_out))
        order = np.argsort(p, kind="stable")
        p, q = p[order], q[order]
    tgt = np.searchsorted(p, q, side="right") - 1
    off = q - p[tgt]
    return p, tgt, off


class MoveMapper(_Common):
    """Balanced move tables for LF and FL."""

    kind = "move"

    def __init__(self, rl: Rlbwt, D: int = DEFAULT_BALANCE, _tables=None):
        self.rl = rl
        self.n = rl.n
        self.D = D
        if _tables is None:
            lf_start = _lf_run_images(rl)
            p, tgt, off = balance_intervals(rl.starts[1 : rl.r + 1], lf_start[1:], rl.n, D)
            order = sorted(range(1, rl.r + 1), key=lambda k: lf_start[k])
            fp, ftgt, foff = balance_intervals(
                [lf_start[k] for k in order], [rl.starts[k] for k in order], rl.n, D
            )
            _tables = (p, tgt, off, fp, ftgt, foff)
        p, tgt, off, fp, ftgt, foff = (np.asarray(a, dtype=np.int64) for a in _tables)
        self.size = len(p)
        self.p = p.tolist() + [rl.n + 1]
        self.tgt = tgt.tolist()
        self.off = off.tolist()
        self.fl_size = len(fp)
        self.fp = fp.tolist() + [rl.n + 1]
        self.ftgt = ftgt.tolist()
        self.foff = foff.tolist()
        self._finish_lf(rl)
        # F symbol of each FL interval: symbol c with ccount[c] < start <= ccount[c+1]
        cc = rl.ccount
        self.fchar = [bisect.bisect_left(cc, s, 1, rl.sigma + 2) - 1 for s in self.fp[:-1]]
        # destination offset folded into one shift per interval
        self.shift = [self.p[t] + o - s for s, t, o in zip(self.p, self.tgt, self.off)]
        self.fshift = [self.fp[t] + o - s for s, t, o in zip(self.fp, self.ftgt, self.foff)]

    @property
    def tables(self):
        return (self.p[:-1], self.tgt, self.off, self.fp[:-1], self.ftgt, self.foff)

    def step_lf(self, i: int, h: int):
        j = i + self.shift[h]
        g = self.tgt[h]
        p = self.p
        while p[g + 1] <= j:
            g += 1
        return j, g

    def step_fl(self, i: int, h: int):
        j = i + self.fshift[h]
        g = self.ftgt[h]
        p = self.fp
        while p[g + 1] <= j:
            g += 1
        return j, g

    def step_lf_scans(self, i: int, h: int):
        """``step_lf`` that also reports how many intervals were inspected."""
        j = i + self.shift[h]
        g = self.tgt[h]
        scans = 1
        while self.p[g + 1] <= j:
            g += 1
            scans += 1
        return j, g, scans

    def max_overlap(self, fl: bool = False) -> int:
        """Largest number of intervals any single image overlaps."""
        p = np.asarray(self.fp if fl else self.p, dtype=np.int64)
        size = len(p) - 1
        shift = np.asarray(self.fshift if fl else self.shift, dtype=np.int64)
        lens = np.diff(p)
        q = p[:-1] + shift
        a = np.searchsorted(p[:-1], q, side="right") - 1
        b = np.searchsorted(p[:-1], q + lens - 1, side="right") - 1
        return int((b - a + 1).max()) if size else 0


def build_baseline(rl: Rlbwt) -> BaselineMapper:
    return BaselineMapper(rl)


def build_move(rl: Rlbwt, D: int = DEFAULT_BALANCE) -> MoveMapper:
    return MoveMapper(rl, D)


def build_mapper(rl: Rlbwt, kind: str = "move", D: int = DEFAULT_BALANCE):
    if kind == "move":
        return MoveMapper(rl, D)
    if kind == "baseline":
        return BaselineMapper(rl)
    raise ValueError(f"unknown mapper kind {kind!r}")


class BoundarySamples(dict):
    """``SA[i]`` for every row ``i`` that begins or ends a run of L."""

    def sa(self, i: int) -> int:
        try:
            return self[i]
        except KeyError:
            raise MissingBoundarySample(f"row {i} is not a run boundary") from None


def sample_sa_at_run_boundaries(rl: Rlbwt, mapper) -> BoundarySamples:
    """One LF-walk of length n from the row of ``$`` (SA value n)."""
    wanted = set()
    for k in range(1, rl.r + 1):
        wanted.add(rl.starts[k])
        wanted.add(rl.ends[k])
    out = BoundarySamples()
    i, h = 1, mapper.handle_of(1)
    step = mapper.step_lf
    for sa in range(rl.n, 0, -1):
        if i in wanted:
            out[i] = sa
        i, h = step(i, h)
        if i == 1 and sa != 1:
            raise FormatError("LF is not a single cycle; the input is not a BWT")
    if i != 1:
        raise FormatError("LF walk did not return to the sentinel row")
    return out
