"""Brute-force reference for every repeat notion used by the engine.

Nothing here touches the BWT machinery: suffixes are sorted by direct
comparison, and repeat/unique tests go through the longest repeat starting
at each position (``maxrep``), which is read off neighbouring LCP values.
The functions are quadratic in the worst case and meant for texts of a few
thousand symbols.

A useful fact for the covering test: an occurrence ``[b..b+len)`` is
strictly inside an occurrence of another repeat iff one of its one-symbol
extensions ``[b-1..b+len)`` or ``[b..b+len]`` is a repeat, because every
substring of a repeat is a repeat.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .alphabet import SENTINEL, Text

LMR = "LMR"
RMR = "RMR"
MR = "MR"
NSMR = "NSMR"
SMR = "SMR"


@dataclass(frozen=True)
class RepeatRecord:
    interval: tuple[int, int]
    length: int
    occ: tuple[int, ...]
    lc: frozenset
    rc: frozenset
    nocc: tuple[int, ...]
    flags: frozenset = field(default_factory=frozenset)

    @property
    def cd(self) -> tuple[int, int]:
        return (len(self.lc), len(self.rc))

    @property
    def nf(self) -> int:
        return len(self.nocc)

    def symbols(self, t: Text) -> tuple[int, ...]:
        b = self.occ[0]
        return tuple(t.chars[b - 1 : b - 1 + self.length].tolist())


def _sortable(t: Text):
    if t.sigma < 256:
        return bytes(t.chars.astype("uint8").tolist())
    return tuple(t.chars.tolist())


def build_suffix_array(t: Text) -> list[int]:
    """1-based suffix array by comparison sort of the suffixes themselves."""
    s = _sortable(t)
    return [i + 1 for i in sorted(range(t.n), key=lambda i: s[i:])]


def lcp_array(t: Text, sa: list[int]) -> list[int]:
    """``lcp[i]`` = LCP of rows i-1 and i (1-based rows); ``lcp[1] = lcp[n+1] = 0``."""
    n = t.n
    chars = t.chars.tolist()
    lcp = [0] * (n + 2)
    for i in range(2, n + 1):
        a, b = sa[i - 2] - 1, sa[i - 1] - 1
        k = 0
        while a + k < n and b + k < n and chars[a + k] == chars[b + k]:
            k += 1
        lcp[i] = k
    return lcp


class Oracle:
    """Suffix array, LCP and derived repeat tests for one text."""

    def __init__(self, t: Text):
        self.t = t
        self.n = t.n
        self.chars = [SENTINEL] + t.chars.tolist()  # chars[0] is the T[0] = $ convention
        self.sa = build_suffix_array(t)
        self.rank = [0] * (self.n + 1)
        for i, b in enumerate(self.sa, 1):
            self.rank[b] = i
        self.lcp = lcp_array(t, self.sa)
        # maxrep[b]: length of the longest repeat starting at b
        self.maxrep = [0] * (self.n + 2)
        for b in range(1, self.n + 1):
            i = self.rank[b]
            self.maxrep[b] = max(self.lcp[i], self.lcp[i + 1])
        counts = {}
        for c in self.chars[1:]:
            counts[c] = counts.get(c, 0) + 1
        self.counts = counts

    def is_repeat(self, b: int, length: int) -> bool:
        """Whether ``T[b..b+length)`` occurs at least twice (empty string counts)."""
        if length == 0:
            return True
        return length <= self.maxrep[b]

    def lf(self) -> list[int]:
        """1-based LF permutation (index 0 unused)."""
        out = [0] * (self.n + 1)
        for i in range(1, self.n + 1):
            b = self.sa[i - 1]
            out[i] = 1 if b == 1 else self.rank[b - 1]
        return out

    def fl(self) -> list[int]:
        lf = self.lf()
        out = [0] * (self.n + 1)
        for i in range(1, self.n + 1):
            out[lf[i]] = i
        return out

    def bwt(self) -> list[int]:
        return [self.chars[b - 1] for b in self.sa]

    def interval(self, pattern) -> tuple[int, int] | None:
        """SA-interval of a symbol sequence by scanning the sorted suffixes."""
        pattern = list(pattern)
        m = len(pattern)
        rows = [i for i, b in enumerate(self.sa, 1) if self.chars[b : b + m] == pattern]
        if not rows:
            return None
        return rows[0], rows[-1]

    def occurrences(self, pattern) -> list[int]:
        pattern = list(pattern)
        m = len(pattern)
        return sorted(b for b in range(1, self.n + 1) if self.chars[b : b + m] == pattern)

    def _covered(self, b: int, length: int) -> bool:
        if b >= 2 and self.is_repeat(b - 1, length + 1):
            return True
        return b + length <= self.n and self.is_repeat(b, length + 1)

    def epsilon_nocc(self) -> tuple[int, ...]:
        unique = {c for c, k in self.counts.items() if k == 1}
        ch = self.chars
        return tuple(b for b in range(1, self.n + 1) if ch[b - 1] in unique and ch[b] in unique)

    def _record(self, p: int, q: int, length: int) -> RepeatRecord:
        ch = self.chars
        occ = tuple(sorted(self.sa[p - 1 : q]))
        lc = frozenset(ch[b - 1] for b in occ)
        rc = frozenset(ch[b + length] for b in occ)
        if length == 0:
            nocc = self.epsilon_nocc()
        else:
            nocc = tuple(b for b in occ if not self._covered(b, length))
        flags = set()
        if len(lc) > 1:
            flags.add(LMR)
        if len(rc) > 1:
            flags.add(RMR)
        if len(lc) > 1 and len(rc) > 1:
            flags.add(MR)
        if nocc:
            flags.add(NSMR)
        if length == 0:
            if max(self.maxrep) == 0:
                flags.add(SMR)
        elif not any(self._covered(b, length) for b in occ):
            flags.add(SMR)
        return RepeatRecord((p, q), length, occ, lc, rc, nocc, frozenset(flags))

    def lcp_intervals(self):
        """``(p, q, length, parent_length)`` for every internal node, root first.

        Root has parent length -1. Strings with SA-interval ``[p..q]`` are
        exactly the lengths in ``(parent_length..length]``.
        """
        n = self.n
        lcp = self.lcp
        found = []
        stack = [[0, 1]]  # [lcp value, left bound]
        for i in range(2, n + 2):
            cur = lcp[i] if i <= n else -1
            lb = i - 1
            while stack and cur < stack[-1][0]:
                val, lb = stack.pop()
                found.append((lb, i - 1, val))
            if not stack or cur > stack[-1][0]:
                stack.append([cur, lb])
        result = []
        for p, q, val in found:
            parent = -1 if (p, q) == (1, n) else max(lcp[p], lcp[q + 1])
            result.append((p, q, val, parent))
        result.sort(key=lambda x: (x[2], x[0]))
        return result

    def classify_all_repeats(self, right_maximal_only: bool = False) -> list[RepeatRecord]:
        """One record per distinct repeat, ε included.

        With ``right_maximal_only`` only the lengths at which an SA-interval is
        an internal node are emitted. Every other repeat has a single right
        context, so each of its occurrences is covered by a one-symbol right
        extension and its net frequency is 0.
        """
        records = []
        for p, q, val, parent in self.lcp_intervals():
            if right_maximal_only or val == 0:
                lengths = [val] if val > parent else []
            else:
                lengths = range(max(parent + 1, 1), val + 1)
            for length in lengths:
                records.append(self._record(p, q, length))
        records.sort(key=lambda r: (r.length, r.interval[0]))
        return records

    def mus(self) -> list[tuple[int, int]]:
        """All minimal unique substrings as 1-based inclusive intervals."""
        out = []
        for b in range(1, self.n + 1):
            e = b + self.maxrep[b]
            if e > self.n:
                continue
            if self.is_repeat(b + 1, e - b) if e > b else True:
                out.append((b, e))
        return out


def classify_all_repeats(t: Text, right_maximal_only: bool = False) -> list[RepeatRecord]:
    return Oracle(t).classify_all_repeats(right_maximal_only)


def mus_bruteforce(t: Text) -> list[tuple[int, int]]:
    return Oracle(t).mus()


def count_occurrences(t: Text, b: int, e: int) -> int:
    """Occurrences of ``T[b..e]`` counted by sliding comparison (no index)."""
    s = t.chars.tolist()
    pat = s[b - 1 : e]
    m = len(pat)
    return sum(1 for i in range(len(s) - m + 1) if s[i : i + m] == pat)
