"""Net occurrences of all repeats, the ε exception, and MUSs by duality."""

from __future__ import annotations

import warnings
from dataclasses import dataclass

from .alphabet import SENTINEL
from .errors import EmptyNetOccurrences
from .renum import traverse


@dataclass(frozen=True, order=True)
class NetOccurrence:
    start: int
    length: int
    interval: tuple[int, int] = (0, 0)  # SA-interval of the repeat, (1, n) for ε

    @property
    def end(self) -> int:
        return self.start + self.length - 1


@dataclass(frozen=True, order=True)
class MusInterval:
    b: int
    e: int

    def __iter__(self):
        return iter((self.b, self.e))


def unique_symbol_positions(rl, boundary_sa) -> dict[int, int]:
    """Text position of every symbol occurring exactly once in T.

    A unique symbol forms a run of length 1 in L, so its row is a run
    boundary and ``L[i] = T[SA[i]-1]`` locates it. The sentinel sits at
    position n.
    """
    out = {}
    cc = rl.ccount
    for k in range(1, rl.r + 1):
        c = rl.heads[k]
        if cc[c + 1] - cc[c] != 1:
            continue
        if c == SENTINEL:
            out[c] = rl.n
        else:
            out[c] = boundary_sa.sa(rl.starts[k]) - 1
    return out


def epsilon_net_occurrences(rl, boundary_sa) -> list[int]:
    """Positions b with both ``T[b-1]`` and ``T[b]`` unique (``T[0] = $``)."""
    unique_pos = set(unique_symbol_positions(rl, boundary_sa).values())
    unique_pos.add(0)
    return sorted(b for b in unique_pos if b >= 1 and b - 1 in unique_pos)


class _Collector:
    def __init__(self, with_strings=False):
        self.items = []
        self.table = []
        self.with_strings = with_strings

    def __call__(self, report):
        if not report.net_occurrences:
            return
        interval = report.interval
        depth = report.depth
        self.table.append((interval, depth, len(report.net_occurrences), list(report.net_occurrences), report.string))
        for b in report.net_occurrences:
            self.items.append(NetOccurrence(b, depth, interval))


def _run(rl, mapper, rd, boundary_sa, include_epsilon=True, materialize=False):
    eps = epsilon_net_occurrences(rl, boundary_sa) if include_epsilon else []
    collector = _Collector()
    stats = traverse(rl, mapper, rd, collector, boundary_sa, materialize=materialize, epsilon_rows=eps)
    return collector, stats


def all_net_occurrences(rl, mapper, rd, boundary_sa, include_epsilon: bool = True) -> list[NetOccurrence]:
    """Every net occurrence of every repeat, sorted by start position."""
    collector, _ = _run(rl, mapper, rd, boundary_sa, include_epsilon)
    return sorted(collector.items)


def net_frequency_table(rl, mapper, rd, boundary_sa, include_epsilon: bool = True, materialize=False):
    """``(interval, length, NF, NOcc, string)`` for every repeat with NF > 0."""
    collector, _ = _run(rl, mapper, rd, boundary_sa, include_epsilon, materialize)
    return collector.table


def mus_from_net_occurrences(netoccs, n: int) -> list[MusInterval]:
    """Chain consecutive net occurrences into minimal unique substrings.

    With starts ``s_1 < ... < s_m`` and inclusive ends ``t_i``, the i-th MUS
    is ``[s_{i+1} - 1 .. t_i + 1]`` where ``s_{m+1} = n + 1``.
    """
    items = sorted((o.start, o.length) if isinstance(o, NetOccurrence) else tuple(o) for o in netoccs)
    if not items:
        warnings.warn("no net occurrences; returning the sentinel MUS only", EmptyNetOccurrences)
        return [MusInterval(n, n)]
    out = []
    m = len(items)
    for idx, (s, length) in enumerate(items):
        nxt = items[idx + 1][0] if idx + 1 < m else n + 1
        out.append(MusInterval(nxt - 1, s + length))
    return out


def check_run_boundary(rl, row: int) -> bool:
    k = rl.run_of(row)
    return row == rl.starts[k] or row == rl.ends[k]
