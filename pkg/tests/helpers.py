"""Shared brute-force oracles, kept deliberately naive and loop-based."""

import itertools
from collections import Counter


def enumerate_collision_counts(n: int, b: int) -> dict[int, float]:
    """Law of C(b, n) by direct iteration over all n**b throw sequences."""
    if b == 0:
        return {0: 1.0}
    total = n**b
    tally: Counter[int] = Counter()
    for seq in itertools.product(range(n), repeat=b):
        occupied = len(set(seq))
        tally[b - occupied] += 1
    return {c: k / total for c, k in sorted(tally.items())}


def pmf_as_dict(pmf) -> dict[int, float]:
    return {int(x): float(m) for x, m in zip(pmf.support, pmf.masses)}
