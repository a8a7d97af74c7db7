"""Command-line front end (``rle-repeats``)."""

from __future__ import annotations

import argparse
import json
import os
import sys
from collections import Counter
from concurrent.futures import ThreadPoolExecutor

from . import rlbwt
from .alphabet import encode_text
from .errors import FormatError, RleRepeatsError
from .index import RepeatIndex
from .mapping import DEFAULT_BALANCE

EXIT_USAGE = 1
EXIT_IO = 2
EXIT_VERIFY = 3
CLASSES = ("rmr", "mr", "smr", "nsmr")
FLAG_ORDER = ("LMR", "RMR", "MR", "NSMR", "SMR")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def escape(raw: bytes) -> str:
    """C-style escaping so that a pattern fits in one TSV field."""
    out = []
    for b in raw:
        if b == 0x5C:
            out.append("\\\\")
        elif b == 0x09:
            out.append("\\t")
        elif b == 0x0A:
            out.append("\\n")
        elif b == 0x0D:
            out.append("\\r")
        elif 0x20 <= b < 0x7F:
            out.append(chr(b))
        else:
            out.append(f"\\x{b:02x}")
    return "".join(out)


def read_input(path: str, strip_newlines: bool = False) -> bytes:
    data = sys.stdin.buffer.read() if path == "-" else open(path, "rb").read()
    if strip_newlines:
        data = data.replace(b"\r", b"").replace(b"\n", b"")
    return data


def _emit(out, fmt: str, header: list[str], row: list):
    if fmt == "json":
        out.write(json.dumps(dict(zip(header, row))) + "\n")
    else:
        out.write("\t".join(str(v) for v in row) + "\n")


def cmd_build(args, out):
    if bool(args.text) == bool(args.rlbwt):
        raise UsageError("build needs exactly one of --text or --rlbwt")
    if args.balance < 2:
        raise UsageError("--balance must be at least 2")
    kwargs = dict(mapper=args.mapper, balance=args.balance, with_nocc=args.with_nocc)
    if args.text:
        text = encode_text(read_input(args.text, args.strip_newlines))
        rl, _ = rlbwt.from_text(text)
        if args.emit_rlbwt:
            with open(args.emit_rlbwt, "w") as fh:
                rlbwt.write_text_format(rl, fh)
    else:
        with open(args.rlbwt) as fh:
            rl = rlbwt.read_text_format(fh)
    idx = RepeatIndex.from_rlbwt(rl, **kwargs)
    size = idx.save(args.out)
    out.write(f"wrote {args.out}\tn={idx.n}\tr={idx.r}\tbytes={size}\n")
    return 0


def _flags_text(flags) -> str:
    return ",".join(f for f in FLAG_ORDER if f in flags)


def cmd_enumerate(args, out):
    idx = RepeatIndex.load(args.index)
    wanted = {c.strip().lower() for c in args.classes.split(",") if c.strip()}
    unknown = wanted - set(CLASSES)
    if unknown:
        raise UsageError(f"unknown classes: {', '.join(sorted(unknown))}")
    header = ["length", "occ_count", "lc", "rc", "flags", "nf", "nocc"]
    if args.materialize:
        header.append("string")
    if args.format == "tsv":
        out.write("\t".join(header) + "\n")

    def visit(rep):
        flags = rep.flags
        if not any(c.upper() in flags for c in wanted):
            return
        row = [rep.depth, rep.occ_count, rep.lc_size, rep.rc_size]
        if args.format == "json":
            row += [sorted(flags, key=FLAG_ORDER.index), rep.nf, rep.net_occurrences]
        else:
            row += [_flags_text(flags), rep.nf, ",".join(map(str, rep.net_occurrences)) or "-"]
        if args.materialize:
            raw = idx.decode(rep.string)
            row.append(raw.decode("latin-1") if args.format == "json" else escape(raw))
        _emit(out, args.format, header, row)

    idx.traverse(visit, materialize=args.materialize)
    return 0


def cmd_all_nf(args, out):
    idx = RepeatIndex.load(args.index)
    netoccs = idx.all_net_occurrences(include_epsilon=not args.no_epsilon)
    nf_of = Counter((o.interval, o.length) for o in netoccs)
    header = ["start", "length", "pattern", "nf_of_pattern"]
    if args.format == "tsv":
        out.write("\t".join(header) + "\n")
    for o in netoccs:
        pattern = "-"
        if args.materialize:
            raw = idx.decode(idx.string_of(o.interval[0], o.length))
            pattern = raw.decode("latin-1") if args.format == "json" else escape(raw)
        _emit(out, args.format, header, [o.start, o.length, pattern, nf_of[(o.interval, o.length)]])
    return 0


def cmd_mus(args, out):
    idx = RepeatIndex.load(args.index)
    header = ["b", "e"]
    if args.format == "tsv":
        out.write("\t".join(header) + "\n")
    for m in idx.mus():
        _emit(out, args.format, header, [m.b, m.e])
    return 0


def _thread_count() -> int:
    raw = os.environ.get("RLE_REPEATS_THREADS", "")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def cmd_nf_query(args, out):
    if bool(args.pattern is not None) == bool(args.patterns_file):
        raise UsageError("nf-query needs exactly one of --pattern or --patterns-file")
    idx = RepeatIndex.load(args.index)
    if args.pattern is not None:
        items = [args.pattern]
    else:
        with open(args.patterns_file, "rb") as fh:
            items = [line.rstrip(b"\r\n") for line in fh]
    patterns = []
    for item in items:
        if isinstance(item, str):
            item = os.fsencode(item)
        if args.hex:
            try:
                item = bytes.fromhex(item.decode("ascii"))
            except ValueError:
                raise UsageError(f"not a hex string: {item!r}") from None
        patterns.append(item)
    threads = min(_thread_count(), max(1, len(patterns)))
    if threads > 1:
        with ThreadPoolExecutor(threads) as pool:
            answers = list(pool.map(idx.nf, patterns))
    else:
        answers = [idx.nf(p) for p in patterns]
    for p, nf in zip(patterns, answers):
        out.write(f"{escape(p)}\t{nf}\n")
    return 0


def cmd_stats(args, out):
    from .report import collect_stats, render_figures

    idx = RepeatIndex.load(args.index)
    summary, stats, netoccs, mus = collect_stats(idx)
    if args.format == "json":
        out.write(json.dumps(summary) + "\n")
    else:
        for key, value in summary.items():
            out.write(f"{key}\t{value}\n")
    if args.figures:
        for path in render_figures(idx, args.figures, stats, netoccs, mus):
            sys.stderr.write(f"figure\t{path}\n")
    return 0


def cmd_verify(args, out):
    from .verify import verify_text

    raw = read_input(args.text, args.strip_newlines)
    results = verify_text(raw, mapper=args.mapper, balance=args.balance, max_pattern=args.max_pattern)
    ok = True
    for name, passed, detail in results:
        out.write(f"{'PASS' if passed else 'FAIL'}\t{name}\t{detail}\n")
        ok = ok and passed
    return 0 if ok else EXIT_VERIFY


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="rle-repeats", description="Repeats, net frequencies and MUSs from the RLBWT.")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    p = sub.add_parser("build", help="build an index file")
    p.add_argument("--text", help="raw text file ('-' for stdin)")
    p.add_argument("--rlbwt", help="RLBWT in the text interchange format")
    p.add_argument("--out", required=True)
    p.add_argument("--mapper", choices=("move", "baseline"), default="move")
    p.add_argument("--balance", type=int, default=DEFAULT_BALANCE)
    p.add_argument("--with-nocc", action="store_true", help="store net-occurrence lists in the trie")
    p.add_argument("--strip-newlines", action="store_true")
    p.add_argument("--emit-rlbwt", help="also write the RLBWT in the text interchange format")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("enumerate", help="list right-maximal repeats with their classification")
    p.add_argument("--index", required=True)
    p.add_argument("--classes", default="rmr")
    p.add_argument("--materialize", action="store_true")
    p.add_argument("--format", choices=("tsv", "json"), default="tsv")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("all-nf", help="all net occurrences sorted by position")
    p.add_argument("--index", required=True)
    p.add_argument("--materialize", action="store_true")
    p.add_argument("--no-epsilon", action="store_true", help="omit net occurrences of the empty string")
    p.add_argument("--format", choices=("tsv", "json"), default="tsv")
    p.set_defaults(func=cmd_all_nf)

    p = sub.add_parser("mus", help="minimal unique substrings")
    p.add_argument("--index", required=True)
    p.add_argument("--format", choices=("tsv", "json"), default="tsv")
    p.set_defaults(func=cmd_mus)

    p = sub.add_parser("nf-query", help="net frequency of patterns")
    p.add_argument("--index", required=True)
    p.add_argument("--pattern")
    p.add_argument("--patterns-file")
    p.add_argument("--hex", action="store_true", help="patterns are hex-encoded bytes")
    p.set_defaults(func=cmd_nf_query)

    p = sub.add_parser("stats", help="sizes, counts and bound margins")
    p.add_argument("--index", required=True)
    p.add_argument("--format", choices=("tsv", "json"), default="tsv")
    p.add_argument("--figures", metavar="DIR", help="also render PNG figures into DIR")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("verify", help="check the engine against the brute-force reference")
    p.add_argument("--text", required=True)
    p.add_argument("--strip-newlines", action="store_true")
    p.add_argument("--mapper", choices=("move", "baseline"), default="move")
    p.add_argument("--balance", type=int, default=DEFAULT_BALANCE)
    p.add_argument("--max-pattern", type=int, default=50)
    p.set_defaults(func=cmd_verify)
    return parser


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args, out)
    except UsageError as exc:
        sys.stderr.write(f"rle-repeats: usage error: {exc}\n")
        return EXIT_USAGE
    except (OSError, FormatError) as exc:
        sys.stderr.write(f"rle-repeats: {exc}\n")
        return EXIT_IO
    except RleRepeatsError as exc:
        sys.stderr.write(f"rle-repeats: {exc}\n")
        return EXIT_IO


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
