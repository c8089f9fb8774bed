"""Smith normal form over Z with exact Python integers.

Only the invariant factors are computed, not the transforms. Boundary
matrices are sparse and mostly carry +-1 pivots, so a sparse phase first
eliminates unit pivots (each contributes a factor 1). The remainder goes
to a dense reduction that always pivots on the entry of least absolute
value. The diagonal is then normalised into a divisibility chain.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Sequence

import numpy as np


@dataclass(frozen=True)
class SmithResult:
    invariant_factors: tuple[int, ...]

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)

    @property
    def torsion(self) -> tuple[int, ...]:
        return tuple(d for d in self.invariant_factors if d > 1)


def _to_columns(m) -> tuple[list[dict[int, int]], int]:
    arr = np.asarray(m, dtype=object)
    if arr.ndim != 2:
        if arr.size == 0:
            return [], 0
        raise ValueError("expected a 2-d integer matrix")
    n_rows, n_cols = arr.shape
    cols = []
    for j in range(n_cols):
        col = {}
        for i in range(n_rows):
            v = int(arr[i, j])
            if v:
                col[i] = v
        cols.append(col)
    return cols, n_rows


def _eliminate_units(cols: list[dict[int, int]]) -> tuple[int, list[dict[int, int]]]:
    """Remove +-1 pivots; returns their count and the surviving columns."""
    active = {j: col for j, col in enumerate(cols) if col}
    rows: dict[int, set[int]] = {}
    for j, col in active.items():
        for i in col:
            rows.setdefault(i, set()).add(j)
    units = 0
    progress = True
    while progress:
        progress = False
        for j in sorted(active):
            col = active.get(j)
            if not col:
                continue
            best = None
            for i, v in col.items():
                if v == 1 or v == -1:
                    cost = len(rows[i])
                    if best is None or cost < best[0] or (cost == best[0] and i < best[1]):
                        best = (cost, i)
            if best is None:
                continue
            i = best[1]
            v = col[i]
            for k in sorted(rows[i] - {j}):
                other = active[k]
                factor = other[i] * v
                for r, x in col.items():
                    y = other.get(r, 0) - factor * x
                    if y:
                        if r not in other:
                            rows[r].add(k)
                        other[r] = y
                    elif r in other:
                        del other[r]
                        rows[r].discard(k)
                if not other:
                    del active[k]
            for r in col:
                rows[r].discard(j)
            del rows[i]
            del active[j]
            units += 1
            progress = True
    return units, [active[j] for j in sorted(active)]


def _dense_diagonal(cols: list[dict[int, int]]) -> list[int]:
    row_ids = sorted({i for col in cols for i in col})
    pos = {r: k for k, r in enumerate(row_ids)}
    a = [[0] * len(cols) for _ in row_ids]
    for j, col in enumerate(cols):
        for i, v in col.items():
            a[pos[i]][j] = v
    n_rows, n_cols = len(a), len(cols)
    diag = []
    t = 0
    while t < min(n_rows, n_cols):
        best = None
        for i in range(t, n_rows):
            row = a[i]
            for j in range(t, n_cols):
                x = row[j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
                    if best[0] == 1:
                        break
            if best and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        a[t], a[i] = a[i], a[t]
        if j != t:
            for row in a:
                row[t], row[j] = row[j], row[t]
        while True:
            p = a[t][t]
            dirty = False
            for i in range(t + 1, n_rows):
                x = a[i][t]
                if x:
                    q = x // p
                    ri, rt = a[i], a[t]
                    for j in range(t, n_cols):
                        if rt[j]:
                            ri[j] -= q * rt[j]
                    if ri[t]:
                        dirty = True
            for j in range(t + 1, n_cols):
                x = a[t][j]
                if x:
                    q = x // p
                    for row in a[t:]:
                        if row[t]:
                            row[j] -= q * row[t]
                    if a[t][j]:
                        dirty = True
            if not dirty:
                break
            # a smaller remainder appeared in row or column t: make it the pivot
            best = (abs(p), t, t)
            for i in range(t + 1, n_rows):
                if a[i][t] and abs(a[i][t]) < best[0]:
                    best = (abs(a[i][t]), i, t)
            for j in range(t + 1, n_cols):
                if a[t][j] and abs(a[t][j]) < best[0]:
                    best = (abs(a[t][j]), t, j)
            _, i, j = best
            if i != t:
                a[t], a[i] = a[i], a[t]
            if j != t:
                for row in a:
                    row[t], row[j] = row[j], row[t]
        diag.append(abs(a[t][t]))
        t += 1
    return diag


def divisibility_chain(diagonal: Sequence[int]) -> tuple[int, ...]:
    """Invariant factors of a diagonal matrix: repeated (gcd, lcm) exchange."""
    d = sorted(abs(int(x)) for x in diagonal if x)
    for i in range(len(d)):
        for j in range(i + 1, len(d)):
            g = gcd(d[i], d[j])
            if g != d[i]:
                d[i], d[j] = g, d[i] // g * d[j]
    return tuple(d)


def smith_from_columns(cols: list[dict[int, int]]) -> SmithResult:
    units, rest = _eliminate_units([dict(c) for c in cols])
    diag = _dense_diagonal(rest) if rest else []
    return SmithResult((1,) * units + divisibility_chain(diag))


def smith_normal_form(m) -> SmithResult:
    """Invariant factors d1 | d2 | ... | dr (all positive) and rank r of ``m``."""
    cols, _ = _to_columns(m)
    return smith_from_columns(cols)
