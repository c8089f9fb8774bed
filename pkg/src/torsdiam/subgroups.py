"""Subgroup growth of the free group F2 = <a, b>.

``a_N`` counts the index-N subgroups. Pointed transitive actions of F2 on
{0..N-1} are pairs of permutations generating a transitive group, and each
subgroup corresponds to exactly (N-1)! such pairs, so ``t_N = a_N (N-1)!``.
The recursion

    a_N = N * N! - sum_{i<N} (N-i)! * a_i

follows from splitting an arbitrary pair in S_N x S_N by the orbit of the
point 0. ``count_transitive_pairs_bruteforce`` is the independent check.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import kernels
from ._parallel import parallel_map
from .errors import ConfigError, ScaleExceeded

BRUTE_FORCE_CEILING = 8


@dataclass(frozen=True)
class SubgroupCountTable:
    max_index: int
    counts: tuple[int, ...]
    transitive_pair_counts: tuple[int, ...]

    def a(self, n: int) -> int:
        """Number of index-``n`` subgroups (1-based, like the math)."""
        return self.counts[n - 1]

    def t(self, n: int) -> int:
        return self.transitive_pair_counts[n - 1]

    def ratio(self, n: int) -> float:
        """a_n / (n * n!), computed from exact integers before rounding."""
        from fractions import Fraction

        return float(Fraction(self.a(n), n * math.factorial(n)))


@lru_cache(maxsize=None)
def _factorials(upto: int) -> tuple[int, ...]:
    out = [1]
    for k in range(1, upto + 1):
        out.append(out[-1] * k)
    return tuple(out)


def count_subgroups(max_index: int) -> SubgroupCountTable:
    if max_index < 1:
        raise ConfigError(f"max_index must be >= 1, got {max_index}")
    fact = _factorials(max_index)
    a: list[int] = []
    for n in range(1, max_index + 1):
        s = n * fact[n]
        for i in range(1, n):
            s -= fact[n - i] * a[i - 1]
        a.append(s)
    t = tuple(a[n - 1] * fact[n - 1] for n in range(1, max_index + 1))
    return SubgroupCountTable(max_index, tuple(a), t)


def _cycle_types(n: int):
    """Partitions of n as non-increasing tuples."""
    def rec(rest, largest):
        if rest == 0:
            yield ()
            return
        for k in range(min(rest, largest), 0, -1):
            for tail in rec(rest - k, k):
                yield (k,) + tail
    yield from rec(n, n)


def _class_size(n: int, cycle_type: tuple[int, ...]) -> int:
    denom = 1
    for k in set(cycle_type):
        m = cycle_type.count(k)
        denom *= k**m * math.factorial(m)
    return math.factorial(n) // denom


def _representative(cycle_type: tuple[int, ...]) -> np.ndarray:
    perm = []
    start = 0
    for k in cycle_type:
        perm.extend(range(start + 1, start + k))
        perm.append(start)
        start += k
    return np.asarray(perm, dtype=np.int64)


def _all_perms(n: int) -> np.ndarray:
    return np.asarray(list(itertools.permutations(range(n))), dtype=np.int64).reshape(-1, n)


def _partners_for(args) -> int:
    sigma_a, n = args
    return kernels.count_transitive_partners(sigma_a, _all_perms_cached(n))


@lru_cache(maxsize=4)
def _all_perms_cached(n: int) -> np.ndarray:
    return _all_perms(n)


def count_transitive_pairs_bruteforce(
    n: int,
    *,
    by_class: bool = True,
    ceiling: int = BRUTE_FORCE_CEILING,
    threads: int = 1,
) -> int:
    """Count pairs in S_n x S_n generating a transitive group, by enumeration.

    The inner loop runs over every sigma_b. With ``by_class`` the outer loop
    visits one sigma_a per conjugacy class and weights by class size; the
    count is conjugation invariant so this is exact. ``by_class=False``
    walks all n! choices of sigma_a.
    """
    if n < 1:
        raise ConfigError(f"n must be >= 1, got {n}")
    if n > ceiling:
        raise ScaleExceeded(f"oracle scale exceeded: n={n} > ceiling {ceiling}")
    if by_class:
        types = list(_cycle_types(n))
        outer = [_representative(ct) for ct in types]
        weights = [_class_size(n, ct) for ct in types]
    else:
        outer = list(_all_perms(n))
        weights = [1] * len(outer)
    hits = parallel_map(_partners_for, [(sa, n) for sa in outer], threads)
    return sum(w * h for w, h in zip(weights, hits))
