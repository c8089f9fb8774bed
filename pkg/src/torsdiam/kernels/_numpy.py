"""Pure-numpy implementations of the hot kernels.

Same signatures and results as the numba versions in ``_numba``; they are
selected when numba is unavailable or ``TORSDIAM_DISABLE_NUMBA=1``.
"""
from __future__ import annotations

import numpy as np

# cap on the boolean work array (graphs x sources x vertices x 4) per chunk
_WORK_LIMIT = 1 << 25


def _inverse_rows(perms: np.ndarray) -> np.ndarray:
    inv = np.empty_like(perms)
    rows = np.arange(perms.shape[0])[:, None]
    inv[rows, perms] = np.arange(perms.shape[1])[None, :]
    return inv


def orbit_count(sigma_a, sigma_b) -> int:
    sa = np.asarray(sigma_a, dtype=np.int64)
    sb = np.asarray(sigma_b, dtype=np.int64)
    ia = np.argsort(sa)
    ib = np.argsort(sb)
    labels = np.arange(sa.shape[0])
    while True:
        new = np.minimum.reduce([labels, labels[sa], labels[ia], labels[sb], labels[ib]])
        if np.array_equal(new, labels):
            break
        labels = new
    return int(np.unique(labels).shape[0])


def count_transitive_partners(sigma_a, partners) -> int:
    """Number of rows ``sigma_b`` of ``partners`` with <sigma_a, sigma_b> transitive."""
    sa = np.asarray(sigma_a, dtype=np.int64)
    sb = np.asarray(partners, dtype=np.int64)
    if sb.shape[0] == 0:
        return 0
    ia = np.argsort(sa)
    ib = _inverse_rows(sb)
    labels = np.broadcast_to(np.arange(sa.shape[0]), sb.shape).copy()
    while True:
        new = np.minimum.reduce([
            labels,
            labels[:, sa],
            labels[:, ia],
            np.take_along_axis(labels, sb, axis=1),
            np.take_along_axis(labels, ib, axis=1),
        ])
        if np.array_equal(new, labels):
            break
        labels = new
    return int(np.count_nonzero((labels == 0).all(axis=1)))


def batch_diameters(sigma_a, sigma_b) -> np.ndarray:
    """Graph diameters of a stack of permutation pairs, shape ``(G, N)`` each.

    Breadth-first search from every vertex at once, vectorised over graphs
    and sources. Disconnected graphs get ``-1``.
    """
    sa = np.atleast_2d(np.asarray(sigma_a, dtype=np.int64))
    sb = np.atleast_2d(np.asarray(sigma_b, dtype=np.int64))
    G, N = sa.shape
    nbr = np.stack([sa, _inverse_rows(sa), sb, _inverse_rows(sb)], axis=2).reshape(G, 1, 4 * N)
    out = np.zeros(G, dtype=np.int64)
    g_chunk = max(1, _WORK_LIMIT // (4 * N * N))
    s_chunk = max(1, min(N, _WORK_LIMIT // (4 * N)))
    eye = np.eye(N, dtype=bool)
    for g0 in range(0, G, g_chunk):
        g1 = min(G, g0 + g_chunk)
        idx = nbr[g0:g1]
        best = np.zeros(g1 - g0, dtype=np.int64)
        connected = np.ones(g1 - g0, dtype=bool)
        for s0 in range(0, N, s_chunk):
            s1 = min(N, s0 + s_chunk)
            seen = np.broadcast_to(eye[s0:s1], (g1 - g0, s1 - s0, N)).copy()
            frontier = seen.copy()
            level = 0
            while True:
                hit = np.take_along_axis(frontier, np.broadcast_to(idx, (g1 - g0, s1 - s0, 4 * N)), axis=2)
                reached = hit.reshape(g1 - g0, s1 - s0, N, 4).any(axis=3)
                # reached[g, s, v] is True when some neighbour of v is on the frontier
                new = reached & ~seen
                grew = new.any(axis=(1, 2))
                if not grew.any():
                    break
                level += 1
                best[grew] = np.maximum(best[grew], level)
                seen |= new
                frontier = new
            connected &= seen.all(axis=(1, 2))
        best[~connected] = -1
        out[g0:g1] = best
    return out


def greedy_net(dist, separation: float) -> np.ndarray:
    d = np.asarray(dist, dtype=np.float64)
    n = d.shape[0]
    nearest = np.full(n, np.inf)
    centers = []
    for i in range(n):
        if nearest[i] >= separation:
            centers.append(i)
            np.minimum(nearest, d[i], out=nearest)
    return np.asarray(centers, dtype=np.int64)
