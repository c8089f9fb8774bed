"""Separated nets and the nerves of their ball covers."""
from __future__ import annotations

import itertools
import warnings
from dataclasses import dataclass

import numpy as np

from .. import kernels
from ..errors import ConfigError
from .metric import FiniteMetricSpace
from .simplicial import SimplicialComplex


class DimensionCapWarning(UserWarning):
    pass


@dataclass(frozen=True, eq=False)
class Net:
    space: FiniteMetricSpace
    separation: float
    centers: tuple[int, ...]

    def center_distances(self) -> np.ndarray:
        idx = np.asarray(self.centers)
        return self.space.dist[np.ix_(idx, idx)]

    def is_separated(self) -> bool:
        d = self.center_distances()
        off = ~np.eye(len(self.centers), dtype=bool)
        return bool(np.all(d[off] >= self.separation))

    def is_maximal(self) -> bool:
        """Every point lies within the separation of some center."""
        near = self.space.dist[:, list(self.centers)].min(axis=1)
        return bool(np.all(near <= self.separation))


def build_net(space: FiniteMetricSpace, s: float) -> Net:
    """Greedy pass in index order: keep a point iff it is >= s from every kept point."""
    if not s > 0:
        raise ConfigError("separation must be positive")
    centers = kernels.greedy_net(space.dist, s)
    return Net(space, float(s), tuple(int(c) for c in centers))


def cover_matrix(net: Net, radius: float) -> np.ndarray:
    """Boolean (points x centers): point within ``radius`` of center."""
    return net.space.dist[:, list(net.centers)] <= radius


def covers(net: Net, radius: float) -> bool:
    return bool(cover_matrix(net, radius).any(axis=1).all())


def _maximal_sets(rows: np.ndarray) -> list[tuple[int, ...]]:
    uniq = np.unique(rows, axis=0)
    sets = [tuple(np.flatnonzero(r).tolist()) for r in uniq if r.any()]
    masks = [sum(1 << v for v in s) for s in sets]
    order = sorted(range(len(sets)), key=lambda k: -len(sets[k]))
    kept: list[int] = []
    for k in order:
        if not any(masks[k] & masks[j] == masks[k] for j in kept):
            kept.append(k)
    return sorted(sets[k] for k in kept)


def cech_nerve(net: Net, radius: float, max_dim: int = 2) -> SimplicialComplex:
    """Witness approximation of the Cech nerve of the radius balls around the centers.

    Centers span a simplex iff one sample point of the space lies within
    ``radius`` of all of them. Simplices above ``max_dim`` are dropped with a
    ``DimensionCapWarning``; the top degree of the homology is then unreliable.
    """
    if not radius > 0:
        raise ConfigError("radius must be positive")
    if max_dim < 1:
        raise ConfigError("max_dim must be >= 1")
    witness_sets = _maximal_sets(cover_matrix(net, radius))
    truncated = any(len(s) > max_dim + 1 for s in witness_sets)
    if truncated:
        warnings.warn(f"dimension cap reached: witness sets of size up to "
                      f"{max(len(s) for s in witness_sets)} cut at dimension {max_dim}",
                      DimensionCapWarning, stacklevel=2)
    faces = set()
    for s in witness_sets:
        if len(s) <= max_dim + 1:
            faces.add(s)
        else:
            faces.update(itertools.combinations(s, max_dim + 1))
    return SimplicialComplex.from_facets(faces, len(net.centers), truncated=truncated)


def rips_nerve(net: Net, radius: float, max_dim: int = 2) -> SimplicialComplex:
    """Clique complex of centers at pairwise distance <= 2 * radius."""
    if not radius > 0:
        raise ConfigError("radius must be positive")
    if max_dim < 1:
        raise ConfigError("max_dim must be >= 1")
    d = net.center_distances()
    k = len(net.centers)
    adj = (d <= 2 * radius) & ~np.eye(k, dtype=bool)
    nbrs = [set(np.flatnonzero(adj[i]).tolist()) for i in range(k)]
    faces = [(i,) for i in range(k)]
    truncated = False

    def grow(clique, candidates):
        nonlocal truncated
        for v in sorted(candidates):
            if v <= clique[-1]:
                continue
            new = clique + (v,)
            rest = candidates & nbrs[v]
            if len(new) == max_dim + 1:
                faces.append(new)
                if any(w > v for w in rest):
                    truncated = True
            else:
                faces.append(new)
                grow(new, rest)

    for i in range(k):
        grow((i,), nbrs[i])
    if truncated:
        warnings.warn(f"dimension cap reached: Rips cliques exceed dimension {max_dim}",
                      DimensionCapWarning, stacklevel=2)
    return SimplicialComplex.from_facets(faces, k, truncated=truncated)
