"""Engine-versus-reference checks for one text (desk scale).

Each check returns ``(name, passed, detail)``. Empirical constants (balance
overlap, interval blow-up, work per symbol) are reported in the detail
field alongside the verdict.
"""

from __future__ import annotations

import random

from . import rlbwt
from .alphabet import Text, encode_text
from .index import RepeatIndex
from .mapping import BaselineMapper, MoveMapper
from .oracle import Oracle
from .nf_trie import QueryCounter

FULL_ORACLE_LIMIT = 300
WORK_FACTOR = 10
MOVE_SIZE_FACTOR = 3
WORKSET_FACTOR = 2


def engine_records(idx: RepeatIndex) -> dict:
    out = {}

    def visit(rep):
        out[(rep.interval, rep.depth)] = (rep.cd, rep.flags, tuple(rep.net_occurrences))

    stats = idx.traverse(visit)
    return out, stats


def oracle_records(oracle: Oracle, full: bool) -> dict:
    recs = oracle.classify_all_repeats(right_maximal_only=not full)
    out = {}
    extra_nsmr = []
    for r in recs:
        if "RMR" in r.flags or r.length == 0:
            out[(r.interval, r.length)] = (r.cd, r.flags, r.nocc)
        elif r.nf:
            extra_nsmr.append(r)
    return out, extra_nsmr


def check_tables(t: Text, oracle: Oracle, rl, balance: int):
    lf, fl = oracle.lf(), oracle.fl()
    base = BaselineMapper(rl)
    move = MoveMapper(rl, balance)
    n = t.n
    ok = all(base.lf(i) == lf[i] == move.lf(i) and base.fl(i) == fl[i] == move.fl(i) for i in range(1, n + 1))
    L_ok = rl.decode() == oracle.bwt()
    inv_ok = rlbwt.invert(rl) == t.chars.tolist()
    yield "lf-fl-tables", ok and L_ok, f"n={n} r={rl.r}"
    yield "bwt-inversion", inv_ok, ""
    max_scan = 0
    for i in range(1, n + 1):
        _, _, scans = move.step_lf_scans(i, move.handle_of(i))
        max_scan = max(max_scan, scans)
    yield "move-balance", max_scan <= balance, f"max_scan={max_scan} D={balance}"
    yield "move-size", move.size <= MOVE_SIZE_FACTOR * rl.r, f"h_hat={move.size} r={rl.r} ratio={move.size / rl.r:.3f}"


def check_repeats(t: Text, oracle: Oracle, idx: RepeatIndex):
    full = t.n <= FULL_ORACLE_LIMIT
    expected, extra = oracle_records(oracle, full)
    got, stats = engine_records(idx)
    yield "classification", got == expected and not extra, (
        f"rmr={len(expected)} engine={len(got)} full_oracle={full}"
    )
    netoccs = idx.all_net_occurrences()
    mus = [tuple(m) for m in idx.mus()]
    yield "mus", mus == oracle.mus(), f"count={len(mus)}"
    bound = 2 * idx.r
    yield "net-occurrence-bound", len(netoccs) < bound, f"{len(netoccs)} < {bound}"
    yield "mus-bound", len(mus) < bound, f"{len(mus)} < {bound}"
    rl = idx.rl
    starts = {o.start for o in netoccs}
    refined = True
    if rl.lens[1] > 1 and oracle.sa[0] in starts:
        refined = False
    if rl.lens[rl.r] > 1 and oracle.sa[-1] in starts:
        refined = False
    yield "first-last-run", refined, f"first_run={rl.lens[1]} last_run={rl.lens[rl.r]}"
    boundary_rows = set(rl.starts[1 : rl.r + 1]) | set(rl.ends[1:])
    rows_ok = all(oracle.rank[o.start] in boundary_rows for o in netoccs)
    yield "net-rows-on-boundaries", rows_ok, ""
    work = stats.linear_work
    yield "linear-work", work <= WORK_FACTOR * t.n, f"work={work} n={t.n} ratio={work / t.n:.3f}"
    yield "weiner-links", stats.weiner_links <= 3 * t.n, f"links={stats.weiner_links}"
    ratio = stats.peak_rlist / idx.r
    yield "working-set", stats.peak_rlist <= WORKSET_FACTOR * idx.r, (
        f"peak_rlist={stats.peak_rlist} r={idx.r} ratio={ratio:.3f}"
    )


def oracle_nf_table(oracle: Oracle) -> dict:
    full = oracle.n <= FULL_ORACLE_LIMIT
    table = {}
    for r in oracle.classify_all_repeats(right_maximal_only=not full):
        if r.nf:
            table[r.symbols(oracle.t)] = r.nf
    return table


def substrings(chars: list[int], max_len: int):
    seen = set()
    n = len(chars)
    for b in range(n):
        for m in range(1, min(max_len, n - b) + 1):
            seen.add(tuple(chars[b : b + m]))
    return seen


def absent_patterns(rng: random.Random, present: set, sigma: int, count: int, max_len: int):
    out = []
    tries = 0
    while len(out) < count and tries < 50 * count:
        tries += 1
        m = rng.randint(1, max_len)
        pat = tuple(rng.randint(2, sigma) for _ in range(m)) if sigma >= 2 else ()
        if pat and pat not in present:
            out.append(pat)
    return out


def check_queries(t: Text, oracle: Oracle, idx: RepeatIndex, max_pattern: int, absent: int = 200, seed: int = 0):
    table = oracle_nf_table(oracle)
    chars = t.chars.tolist()
    present = substrings(chars, max_pattern)
    counter = QueryCounter()
    wrong = [p for p in present if idx.nf(list(p), counter) != table.get(p, 0)]
    rng = random.Random(seed)
    missing = absent_patterns(rng, present, t.sigma, absent, max_pattern)
    wrong += [p for p in missing if idx.nf(list(p), counter) != 0]
    empty_ok = idx.nf([]) == len(oracle.epsilon_nocc())
    yield "nf-queries", not wrong and empty_ok, f"queries={len(present) + len(missing)} wrong={len(wrong)}"
    yield "query-work", counter.max_ratio <= WORK_FACTOR, f"max_work_per_symbol={counter.max_ratio:.3f}"
    clone = RepeatIndex.from_bytes(idx.to_bytes())
    sample = list(present)[:2000] + missing
    same = all(clone.nf(list(p)) == idx.nf(list(p)) for p in sample)
    yield "serialization", same and clone.trie == idx.trie, f"bytes={len(idx.to_bytes())}"


def verify_text(raw, mapper: str = "move", balance: int = 4, max_pattern: int = 50):
    t = raw if isinstance(raw, Text) else encode_text(raw)
    oracle = Oracle(t)
    rl, _ = rlbwt.from_text(t)
    idx = RepeatIndex.from_rlbwt(rl, mapper=mapper, balance=balance)
    results = []
    results.extend(check_tables(t, oracle, rl, balance))
    results.extend(check_repeats(t, oracle, idx))
    results.extend(check_queries(t, oracle, idx, max_pattern))
    return results
