"""Deterministic randomness for every construction in the package.

All randomness flows from one 64-bit seed through named Philox4x64
substreams.  The substream for a path (d, i, j, ...) uses the key

    child_seed(seed, d, i, j, ...) = fold of splitmix64 over the path,

so independent parts of a construction (one unital, one point-clique, one
sampled subset, ...) draw from provably disjoint streams and may run in
any order or in parallel without changing results.  Consumption rules:

* bounded integers are ``raw % n`` on 64-bit words (modulo bias below
  2**-50 for every bound used here);
* a Bernoulli(p) draw compares one raw word against floor(p * 2**64);
* the part draw for the Turanization consumes exactly two words per
  vertex -- activity then part label -- whether or not the vertex is
  active, keeping streams aligned;
* subset sampling is a partial Fisher-Yates shuffle consuming one word
  per selected element.
"""

from __future__ import annotations

import numpy as np

_MASK64 = (1 << 64) - 1

# Substream domains.  Keeping them distinct is what lets one CLI seed feed
# every stage without collisions.
COLORING = 1
SPARSIFY = 2
SUBSET = 3
EXTENSION = 4
SAMPLE = 5
RUN = 6
EDGEPICK = 7


def mix64(x: int) -> int:
    """splitmix64 finalizer."""
    x = (x + 0x9E3779B97F4A7C15) & _MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & _MASK64
    return x ^ (x >> 31)


def child_seed(seed: int, *path: int) -> int:
    x = seed & _MASK64
    for p in path:
        x = mix64(x ^ mix64(p & _MASK64))
    return x


def raw_stream(seed: int, *path: int) -> np.random.Philox:
    """A fresh Philox bit generator for the given substream."""
    return np.random.Philox(key=child_seed(seed, *path))


def raw(bg: np.random.Philox, n: int) -> np.ndarray:
    """The next n raw 64-bit words of the stream."""
    return bg.random_raw(n)


def ints_mod(bg: np.random.Philox, n: int, m: int) -> list[int]:
    """n integers uniform in [0, m) (one word each, via modulo)."""
    if m <= 0:
        raise ValueError("modulus must be positive")
    return [int(w % m) for w in bg.random_raw(n)]


def bernoulli_threshold(p: float) -> int:
    """floor(p * 2**64), clipped to [0, 2**64]."""
    if p <= 0:
        return 0
    if p >= 1:
        return 1 << 64
    return int(p * (1 << 64))


def part_draws(bg: np.random.Philox, count: int, alpha: float, k: int) -> list[int]:
    """Turanization part labels for `count` vertices of one clique.

    Part 0 with probability 1 - alpha; otherwise uniform over 1..k.
    Exactly two raw words are consumed per vertex.
    """
    thr = bernoulli_threshold(alpha)
    words = bg.random_raw(2 * count)
    out = []
    for i in range(count):
        if int(words[2 * i]) < thr:
            out.append(1 + int(words[2 * i + 1] % k))
        else:
            out.append(0)
    return out


def sample_subset(bg: np.random.Philox, n: int, size: int) -> tuple[int, ...]:
    """A uniform `size`-subset of range(n), returned sorted."""
    if not 0 <= size <= n:
        raise ValueError("subset size out of range")
    pool = list(range(n))
    words = bg.random_raw(size) if size else []
    for i in range(size):
        j = i + int(words[i] % (n - i))
        pool[i], pool[j] = pool[j], pool[i]
    return tuple(sorted(pool[:size]))
