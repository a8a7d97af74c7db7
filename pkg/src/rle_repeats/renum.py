"""Breadth-first enumeration of right-maximal repeats over the RLBWT.

Every right-maximal repeat ``x`` is visited once, carried as a rich
representation: its SA-interval, the sorted list of right extensions
``(c, I(xc))`` and its length. Left extensions ``ax`` are computed from the
right-extension list with range-distinct queries and LF steps; the ones
that are again right-maximal form the next depth.

While ``x`` is at hand it is classified: context diversity, maximal and
supermaximal status, and its net occurrences. A row ``i`` of ``I(x)`` holds
a net occurrence iff ``xc`` is unique for ``c`` following it and ``L[i]``
occurs once in ``L[I(x)]``; such rows are run boundaries of L, so the text
position is read from the boundary SA samples.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .alphabet import SENTINEL
from .errors import VisitorAbort


class RichRepr:
    """``(I(x), rlist(x), |x|)`` plus the mapper handles of both interval ends.

    ``rlist`` holds ``(c, p_c, q_c, hp_c, hq_c)`` tuples sorted by ``c``.
    Visitors must not keep references to these objects.
    """

    __slots__ = ("p", "q", "hp", "hq", "rlist", "depth")

    def __init__(self, p, q, hp, hq, rlist, depth):
        self.p = p
        self.q = q
        self.hp = hp
        self.hq = hq
        self.rlist = rlist
        self.depth = depth

    @property
    def interval(self) -> tuple[int, int]:
        return (self.p, self.q)

    def right_extensions(self) -> list[tuple[int, tuple[int, int]]]:
        return [(c, (pc, qc)) for c, pc, qc, _, _ in self.rlist]

    def __repr__(self):
        return f"RichRepr({self.interval}, {self.right_extensions()}, {self.depth})"


class Scratch:
    """Per-traversal working arrays of size sigma+1, all empty between uses."""

    __slots__ = ("lists", "rd")

    def __init__(self, sigma: int):
        self.lists = [None] * (sigma + 1)
        self.rd = [0] * (sigma + 1)


@dataclass
class Extension:
    """Result of extending ``x`` to the left by every ``a`` in ``lc(x)``."""

    children: list  # (a, RichRepr of ax) for a in lc(x) minus $, ascending a
    lc: list  # symbols of lc(x), $ included
    net_rows: list  # rows of I(x) holding a net occurrence of x


@dataclass
class NodeReport:
    repr: RichRepr
    lc_size: int
    rc_size: int
    occ_count: int
    is_mr: bool
    is_smr: bool
    net_rows: list
    net_occurrences: list
    children: list  # right-maximal left extensions kept for the next depth
    string: list | None = None

    @property
    def depth(self) -> int:
        return self.repr.depth

    @property
    def interval(self) -> tuple[int, int]:
        return self.repr.interval

    @property
    def witness_index(self) -> int:
        return self.repr.p

    @property
    def cd(self) -> tuple[int, int]:
        return (self.lc_size, self.rc_size)

    @property
    def nf(self) -> int:
        return len(self.net_occurrences)

    @property
    def is_nsmr(self) -> bool:
        return bool(self.net_occurrences)

    @property
    def flags(self) -> frozenset:
        out = {"RMR"}
        if self.lc_size > 1:
            out.add("LMR")
        if self.is_mr:
            out.add("MR")
        if self.is_nsmr:
            out.add("NSMR")
        if self.is_smr:
            out.add("SMR")
        return frozenset(out)


@dataclass
class TraversalStats:
    nodes: int = 0
    weiner_links: int = 0
    lf_calls: int = 0
    rd_queries: int = 0
    rd_outputs: int = 0
    max_depth: int = 0
    peak_rlist: int = 0
    peak_rlist_depth: int = 0
    net_occurrences: int = 0
    aborted: bool = False
    per_depth_rlist: list = field(default_factory=list)

    @property
    def linear_work(self) -> int:
        return self.lf_calls + self.rd_outputs


def initial_repr(rl, mapper) -> RichRepr:
    """``repr(ε)``: the whole row range split by first symbol."""
    rlist = []
    cc = rl.ccount
    for c in range(1, rl.sigma + 1):
        p, q = cc[c] + 1, cc[c + 1]
        rlist.append((c, p, q, mapper.handle_of(p), mapper.handle_of(q)))
    return RichRepr(1, rl.n, mapper.handle_of(1), mapper.handle_of(rl.n), rlist, 0)


def extend_repr(x: RichRepr, rd, mapper, scratch: Scratch, stats: TraversalStats | None = None) -> Extension:
    """Compute ``repr(ax)`` for every ``a`` in ``lc(x)`` except ``$``."""
    rl = mapper.rl
    heads, starts, ends = rl.heads, rl.starts, rl.ends
    run_of, run_first, run_last = mapper.run_of, mapper.run_first, mapper.run_last
    step = mapper.step_lf
    A = scratch.lists
    rds = scratch.rd
    query = rd.range_distinct
    lf_calls = 0
    rd_out = 0
    rd_inline = 0
    candidates = []
    for c, pc, qc, hpc, hqc in x.rlist:
        kp = run_of[hpc]
        kq = run_of[hqc]
        if kp == kq:
            # one run: a single distinct symbol, no query needed
            outs = ((heads[kp], kp, kp),)
            rd_inline += 1
        else:
            outs = query(kp, kq, rds)
        rd_out += len(outs)
        if pc == qc:
            candidates.append((pc, heads[kp]))
        for a, kl, kr in outs:
            if a == SENTINEL:
                continue
            if kl == kp:
                lp, lh = pc, hpc
            else:
                lp, lh = starts[kl], run_first[kl]
            if kr == kq:
                rp, rh = qc, hqc
            else:
                rp, rh = ends[kr], run_last[kr]
            if lp == rp:
                lp, lh = step(lp, lh)
                rp, rh = lp, lh
                lf_calls += 1
            else:
                lp, lh = step(lp, lh)
                rp, rh = step(rp, rh)
                lf_calls += 2
            entry = (c, lp, rp, lh, rh)
            slot = A[a]
            if slot is None:
                A[a] = [entry]
            else:
                slot.append(entry)
    lc_out = query(run_of[x.hp], run_of[x.hq], rds)
    rd_out += len(lc_out)
    lc = sorted(a for a, _, _ in lc_out)
    net_rows = []
    if x.depth > 0:
        for row, a in candidates:
            if a == SENTINEL:
                net_rows.append(row)
            else:
                lst = A[a]
                if lst[0][1] == lst[-1][2]:
                    net_rows.append(row)
    depth = x.depth + 1
    children = []
    for a in lc:
        if a == SENTINEL:
            continue
        lst = A[a]
        A[a] = None
        first, last = lst[0], lst[-1]
        children.append((a, RichRepr(first[1], last[2], first[3], last[4], lst, depth)))
    if rd_inline:
        rd.queries += rd_inline
        rd.probes += rd_inline
        rd.outputs += rd_inline
    if stats is not None:
        stats.lf_calls += lf_calls
        stats.rd_outputs += rd_out
        stats.rd_queries += len(x.rlist) + 1
        stats.weiner_links += len(children)
    return Extension(children=children, lc=lc, net_rows=net_rows)


def classify_node(x: RichRepr, ext: Extension, boundary_sa=None) -> NodeReport:
    """Context diversity, MR/SMR flags and net occurrences of ``x``.

    ``ext`` must come from :func:`extend_repr` on the same ``x``. Net
    occurrences of ε are not produced here (see
    :func:`rle_repeats.net_analysis.epsilon_net_occurrences`).
    """
    lc_size = len(ext.lc)
    rc_size = len(x.rlist)
    occ = x.q - x.p + 1
    net_rows = ext.net_rows
    if boundary_sa is not None:
        net_occ = sorted(boundary_sa.sa(i) for i in net_rows)
    else:
        net_occ = list(net_rows)
    return NodeReport(
        repr=x,
        lc_size=lc_size,
        rc_size=rc_size,
        occ_count=occ,
        is_mr=lc_size >= 2 and rc_size >= 2,
        is_smr=lc_size == rc_size == occ,
        net_rows=net_rows,
        net_occurrences=net_occ,
        children=[(a, y) for a, y in ext.children if len(y.rlist) >= 2],
    )


def traverse(rl, mapper, rd, visitor=None, boundary_sa=None, materialize: bool = False,
             epsilon_rows=None) -> TraversalStats:
    """Visit every right-maximal repeat in ``(depth, interval start)`` order.

    ``visitor(report)`` is called once per node; raising
    :class:`VisitorAbort` stops the traversal. ``boundary_sa`` turns
    net-occurrence rows into text positions; without it
    ``report.net_occurrences`` holds rows. ``epsilon_rows`` supplies the net
    occurrences of the root, which the per-node rule does not cover.
    """
    stats = TraversalStats()
    scratch = Scratch(rl.sigma)
    current = [initial_repr(rl, mapper)]
    depth = 0
    stats.per_depth_rlist.append(len(current[0].rlist))
    stats.peak_rlist = len(current[0].rlist)
    try:
        while current:
            upcoming = []
            for x in current:
                ext = extend_repr(x, rd, mapper, scratch, stats)
                report = classify_node(x, ext, boundary_sa)
                if x.depth == 0 and epsilon_rows is not None:
                    report.net_occurrences = sorted(epsilon_rows)
                stats.nodes += 1
                stats.net_occurrences += len(report.net_occurrences)
                if materialize:
                    report.string = mapper.walk_string(x.p, x.depth)
                if visitor is not None:
                    visitor(report)
                upcoming.extend(y for _, y in report.children)
            if not upcoming:
                break
            depth += 1
            upcoming.sort(key=lambda y: y.p)
            stored = sum(len(y.rlist) for y in upcoming)
            stats.per_depth_rlist.append(stored)
            if stored > stats.peak_rlist:
                stats.peak_rlist = stored
                stats.peak_rlist_depth = depth
            stats.max_depth = depth
            current = upcoming
    except VisitorAbort:
        stats.aborted = True
    return stats
