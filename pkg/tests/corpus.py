"""Deterministic text families shared by the tests."""

import random
import string

RUNNING_EXAMPLE = b"abcbbcbcabc"

ALPHABETS = {2: b"ab", 4: b"acgt", 26: string.ascii_lowercase.encode()}


def random_text(rng: random.Random, n: int, sigma: int) -> bytes:
    alphabet = ALPHABETS[sigma]
    return bytes(rng.choice(alphabet) for _ in range(n))


def fibonacci_word(n: int) -> bytes:
    a, b = b"a", b"ab"
    while len(b) < n:
        a, b = b, b + a
    return b[:n]


def thue_morse(n: int) -> bytes:
    return bytes(b"ab"[bin(i).count("1") & 1] for i in range(n))


def de_bruijn(k: int, order: int) -> bytes:
    """Lexicographically least de Bruijn sequence over the first k letters."""
    alphabet = b"abcdefghijklmnopqrstuvwxyz"[:k]
    a = [0] * k * order
    seq = []

    def db(t, p):
        if t > order:
            if order % p == 0:
                seq.extend(a[1 : p + 1])
        else:
            a[t] = a[t - p]
            db(t + 1, p)
            for j in range(a[t - p] + 1, k):
                a[t] = j
                db(t + 1, t)

    db(1, 1)
    return bytes(alphabet[i] for i in seq)


def periodic_with_mutations(rng: random.Random, n: int, period: int, rate: float, sigma: int = 4) -> bytes:
    alphabet = ALPHABETS[sigma]
    base = [rng.choice(alphabet) for _ in range(period)]
    out = bytearray(base[i % period] for i in range(n))
    for i in range(n):
        if rng.random() < rate:
            out[i] = rng.choice(alphabet)
    return bytes(out)


def adversarial_texts(max_n: int = 2000) -> list[tuple[str, bytes]]:
    rng = random.Random(7)
    out = []
    for k in (1, 2, 3, 5, 17, 100, max_n):
        out.append((f"unary-{k}", b"a" * k))
    for n in (5, 13, 34, 89, 233, 610, 1597):
        if n <= max_n:
            out.append((f"fibonacci-{n}", fibonacci_word(n)))
    for n in (16, 64, 512, 1024):
        out.append((f"thue-morse-{n}", thue_morse(n)))
    for k, order in ((2, 3), (2, 8), (4, 4), (3, 6)):
        s = de_bruijn(k, order)
        out.append((f"de-bruijn-{k}-{order}", s))
        out.append((f"de-bruijn-{k}-{order}-x2", s + s))
    for n, period, rate in ((200, 7, 0.02), (800, 23, 0.01), (1500, 50, 0.01), (2000, 3, 0.005), (1000, 100, 0.0)):
        out.append((f"periodic-{n}-{period}-{rate}", periodic_with_mutations(rng, n, period, rate)))
    out.append(("squares", b"ab" * 40 + b"aab" * 30))
    out.append(("abab", b"abab"))
    out.append(("ab", b"ab"))
    out.append(("aab", b"aab"))
    out.append(("aaa", b"aaa"))
    out.append(("running-example", RUNNING_EXAMPLE))
    return out


def random_texts(count: int = 300, seed: int = 2025, max_n: int = 2000) -> list[tuple[str, bytes]]:
    rng = random.Random(seed)
    out = []
    sigmas = (2, 4, 26)
    for i in range(count):
        sigma = sigmas[i % 3]
        # skew towards small n; every tenth text is near the maximum
        if i % 10 == 9:
            n = rng.randint(max_n // 2, max_n)
        else:
            n = rng.randint(2, max(2, int(max_n * rng.random() ** 2)))
        out.append((f"random-{i}-s{sigma}-n{n}", random_text(rng, n, sigma)))
    return out


def sweep_corpus() -> list[tuple[str, bytes]]:
    return adversarial_texts() + random_texts()


def small_corpus() -> list[tuple[str, bytes]]:
    """Texts small enough for the all-substrings checks."""
    rng = random.Random(11)
    out = [item for item in adversarial_texts(max_n=700) if len(item[1]) <= 700]
    for i in range(40):
        sigma = (2, 4, 26)[i % 3]
        n = rng.randint(2, 400)
        out.append((f"small-random-{i}-s{sigma}-n{n}", random_text(rng, n, sigma)))
    return out
