"""Summary statistics and figures for an index."""

from __future__ import annotations

from collections import Counter
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .net_analysis import mus_from_net_occurrences  # noqa: E402


def collect_stats(idx) -> dict:
    """Counts and bound margins; runs one traversal for the per-depth profile."""
    netoccs = idx.all_net_occurrences()
    stats = idx.traverse()
    mus = mus_from_net_occurrences(netoccs, idx.n)
    bound = 2 * idx.r
    out = {
        "n": idx.n,
        "r": idx.r,
        "sigma": idx.sigma,
        "mapper": idx.mapper.kind,
        "h_hat": idx.mapper.size,
        "h_hat_fl": idx.mapper.fl_size,
        "nsmr": idx.trie.nsmr_count(),
        "trie_nodes": len(idx.trie),
        "net_occurrences": len(netoccs),
        "mus": len(mus),
        "bound_2r": bound,
        "net_occurrence_margin": bound - len(netoccs),
        "mus_margin": bound - len(mus),
        "rmr_nodes": stats.nodes,
        "weiner_links": stats.weiner_links,
        "lf_calls": stats.lf_calls,
        "rd_outputs": stats.rd_outputs,
        "work_per_n": round(stats.linear_work / idx.n, 4),
        "peak_rlist": stats.peak_rlist,
        "peak_rlist_per_r": round(stats.peak_rlist / idx.r, 4),
        "max_depth": stats.max_depth,
    }
    return out, stats, netoccs, mus


def render_figures(idx, outdir, stats, netoccs, mus) -> list[Path]:
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    written = []

    fig, ax = plt.subplots(figsize=(6, 4))
    lens = Counter(idx.rl.lens[1:])
    xs = sorted(lens)
    ax.bar(range(len(xs)), [lens[x] for x in xs])
    step = max(1, len(xs) // 12)
    ax.set_xticks(range(0, len(xs), step))
    ax.set_xticklabels([str(xs[i]) for i in range(0, len(xs), step)], rotation=45)
    ax.set_yscale("log")
    ax.set_xlabel("run length")
    ax.set_ylabel("runs")
    ax.set_title(f"BWT runs (n={idx.n}, r={idx.r})")
    fig.tight_layout()
    path = outdir / "run_lengths.png"
    fig.savefig(path, dpi=120)
    plt.close(fig)
    written.append(path)

    fig, ax = plt.subplots(figsize=(7, 4))
    ax.plot(range(len(stats.per_depth_rlist)), stats.per_depth_rlist, lw=1, label="stored rlist entries")
    ax.axhline(idx.r, color="k", ls="--", lw=1, label="r")
    ax.set_xlabel("depth")
    ax.set_ylabel("entries")
    ax.legend(frameon=False)
    ax.set_title("Traversal working set per depth")
    fig.tight_layout()
    path = outdir / "working_set.png"
    fig.savefig(path, dpi=120)
    plt.close(fig)
    written.append(path)

    fig, (top, bottom) = plt.subplots(2, 1, figsize=(8, 5), sharex=True)
    if netoccs:
        top.hlines([o.length for o in netoccs], [o.start for o in netoccs],
                   [o.start + max(o.length, 1) - 1 for o in netoccs], lw=2)
    top.set_ylabel("repeat length")
    top.set_title(f"net occurrences ({len(netoccs)}) and MUSs ({len(mus)}); 2r = {2 * idx.r}")
    if mus:
        bottom.hlines([m.e - m.b + 1 for m in mus], [m.b for m in mus], [m.e for m in mus], lw=2, color="C1")
    bottom.set_ylabel("MUS length")
    bottom.set_xlabel("text position")
    fig.tight_layout()
    path = outdir / "net_occurrences.png"
    fig.savefig(path, dpi=120)
    plt.close(fig)
    written.append(path)
    return written
