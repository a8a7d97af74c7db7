"""Prefix-doubling suffix array construction on numpy arrays.

This is the production path from raw text to the BWT. The reference
implementation in :mod:`rle_repeats.oracle` sorts suffixes directly and is
kept independent of this module.
"""

import numpy as np


def suffix_array(chars: np.ndarray) -> np.ndarray:
    """0-based suffix array of a sentinel-terminated symbol array.

    The last symbol must be unique and smallest, so no suffix is a prefix of
    another and ties never survive the final round.
    """
    n = len(chars)
    rank = np.asarray(chars, dtype=np.int64)
    if n == 1:
        return np.zeros(1, dtype=np.int64)
    # initial ranks dense in [0..sigma)
    _, rank = np.unique(rank, return_inverse=True)
    rank = rank.astype(np.int64)
    k = 1
    while True:
        second = np.zeros(n, dtype=np.int64)
        second[: n - k] = rank[k:] + 1
        key = rank * (n + 1) + second
        order = np.argsort(key, kind="stable")
        sorted_key = key[order]
        fresh = np.empty(n, dtype=np.int64)
        fresh[0] = 0
        np.cumsum(sorted_key[1:] != sorted_key[:-1], out=fresh[1:])
        rank = np.empty(n, dtype=np.int64)
        rank[order] = fresh
        if fresh[-1] == n - 1:
            return order
        k <<= 1
        if k >= n:
            return order
