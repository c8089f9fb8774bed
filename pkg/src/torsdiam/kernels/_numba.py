"""numba-compiled hot kernels; see ``_numpy`` for the reference fallback."""
from __future__ import annotations

import numpy as np
from numba import njit


@njit(cache=True, nogil=True)
def _find(parent, x):
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


@njit(cache=True, nogil=True)
def _orbit_count(sa, sb):
    n = sa.shape[0]
    parent = np.arange(n)
    comps = n
    for i in range(n):
        for j in (sa[i], sb[i]):
            ri = _find(parent, i)
            rj = _find(parent, j)
            if ri != rj:
                parent[rj] = ri
                comps -= 1
    return comps


@njit(cache=True, nogil=True)
def _count_transitive_partners(sa, partners):
    n = sa.shape[0]
    base = np.arange(n)
    comps0 = n
    for i in range(n):
        ri = _find(base, i)
        rj = _find(base, sa[i])
        if ri != rj:
            base[rj] = ri
            comps0 -= 1
    total = 0
    parent = np.empty(n, dtype=base.dtype)
    for p in range(partners.shape[0]):
        parent[:] = base
        comps = comps0
        for i in range(n):
            if comps == 1:
                break
            ri = _find(parent, i)
            rj = _find(parent, partners[p, i])
            if ri != rj:
                parent[rj] = ri
                comps -= 1
        if comps == 1:
            total += 1
    return total


@njit(cache=True, nogil=True)
def _batch_diameters(sa, sb):
    G, N = sa.shape
    out = np.zeros(G, dtype=np.int64)
    nbr = np.empty((N, 4), dtype=np.int64)
    dist = np.empty(N, dtype=np.int64)
    queue = np.empty(N, dtype=np.int64)
    for g in range(G):
        for v in range(N):
            nbr[v, 0] = sa[g, v]
            nbr[sa[g, v], 1] = v
            nbr[v, 2] = sb[g, v]
            nbr[sb[g, v], 3] = v
        best = 0
        for s in range(N):
            dist[:] = -1
            dist[s] = 0
            queue[0] = s
            head = 0
            tail = 1
            while head < tail:
                u = queue[head]
                head += 1
                for k in range(4):
                    w = nbr[u, k]
                    if dist[w] < 0:
                        dist[w] = dist[u] + 1
                        queue[tail] = w
                        tail += 1
            if tail < N:
                best = -1
                break
            if dist[queue[tail - 1]] > best:
                best = dist[queue[tail - 1]]
        out[g] = best
    return out


@njit(cache=True, nogil=True)
def _greedy_net(d, separation):
    n = d.shape[0]
    centers = np.empty(n, dtype=np.int64)
    k = 0
    for i in range(n):
        ok = True
        for j in range(k):
            if d[i, centers[j]] < separation:
                ok = False
                break
        if ok:
            centers[k] = i
            k += 1
    return centers[:k].copy()


def orbit_count(sigma_a, sigma_b) -> int:
    return int(_orbit_count(np.asarray(sigma_a, dtype=np.int64), np.asarray(sigma_b, dtype=np.int64)))


def count_transitive_partners(sigma_a, partners) -> int:
    partners = np.asarray(partners, dtype=np.int64)
    if partners.shape[0] == 0:
        return 0
    return int(_count_transitive_partners(np.asarray(sigma_a, dtype=np.int64), partners))


def batch_diameters(sigma_a, sigma_b) -> np.ndarray:
    sa = np.ascontiguousarray(np.atleast_2d(sigma_a), dtype=np.int64)
    sb = np.ascontiguousarray(np.atleast_2d(sigma_b), dtype=np.int64)
    return _batch_diameters(sa, sb)


def greedy_net(dist, separation: float) -> np.ndarray:
    return _greedy_net(np.ascontiguousarray(dist, dtype=np.float64), float(separation))
