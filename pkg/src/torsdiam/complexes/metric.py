"""Finite metric spaces standing in for closed manifolds."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from ..errors import ConfigError, InvariantViolation
from ..seeding import stream

MODELS = ("flat-torus", "round-sphere", "projective-plane", "explicit-matrix")


@dataclass(frozen=True, eq=False)
class FiniteMetricSpace:
    dist: np.ndarray
    model: str = "explicit-matrix"
    params: dict = field(default_factory=dict)
    dimension: int | None = None
    volume: float | None = None

    def __post_init__(self):
        d = np.asarray(self.dist, dtype=np.float64)
        if d.ndim != 2 or d.shape[0] != d.shape[1] or d.shape[0] == 0:
            raise ConfigError("distance matrix must be square and nonempty")
        if self.model not in MODELS:
            raise ConfigError(f"unknown model {self.model!r}")
        d.flags.writeable = False
        object.__setattr__(self, "dist", d)

    @property
    def n_points(self) -> int:
        return self.dist.shape[0]

    def distance(self, i: int, j: int) -> float:
        return float(self.dist[i, j])

    def check(self, triples: int = 2000, seed: int = 0, slack: float = 1e-9) -> None:
        """Symmetry, zero diagonal, and the triangle inequality on random triples."""
        d = self.dist
        if not np.allclose(d, d.T, rtol=0, atol=slack) or np.any(np.abs(np.diag(d)) > slack):
            raise InvariantViolation("distance matrix is not symmetric with zero diagonal")
        if np.any(d < -slack):
            raise InvariantViolation("negative distance")
        idx = stream(seed).integers(0, self.n_points, size=(triples, 3))
        i, j, k = idx.T
        if np.any(d[i, k] > d[i, j] + d[j, k] + slack):
            raise InvariantViolation("triangle inequality fails")


def explicit(matrix, **kwargs) -> FiniteMetricSpace:
    return FiniteMetricSpace(np.asarray(matrix, dtype=np.float64), "explicit-matrix", **kwargs)


def from_points(points, metric: str = "euclidean") -> FiniteMetricSpace:
    x = np.asarray(points, dtype=np.float64)
    if metric != "euclidean":
        raise ConfigError(f"unsupported metric {metric!r}")
    diff = x[:, None, :] - x[None, :, :]
    return explicit(np.sqrt((diff**2).sum(axis=-1)))


def circle(n: int, chordal: bool = True) -> FiniteMetricSpace:
    """n evenly spaced points on the unit circle."""
    theta = 2 * np.pi * np.arange(n) / n
    if chordal:
        return from_points(np.c_[np.cos(theta), np.sin(theta)])
    gap = np.abs(theta[:, None] - theta[None, :])
    return explicit(np.minimum(gap, 2 * np.pi - gap), dimension=1, volume=2 * np.pi)


def flat_torus(resolution: int, dims: int = 2) -> FiniteMetricSpace:
    """Grid of ``resolution**dims`` points on the unit flat torus."""
    axes = np.meshgrid(*[np.arange(resolution) / resolution] * dims, indexing="ij")
    pts = np.stack([a.ravel() for a in axes], axis=1)
    gap = np.abs(pts[:, None, :] - pts[None, :, :])
    gap = np.minimum(gap, 1.0 - gap)
    return FiniteMetricSpace(np.sqrt((gap**2).sum(axis=-1)), "flat-torus",
                             {"dims": dims, "resolution": resolution}, dims, 1.0)


def fibonacci_sphere(n: int) -> np.ndarray:
    """n nearly uniform unit vectors, z decreasing from the north pole."""
    k = np.arange(n)
    z = 1 - (2 * k + 1) / n
    phi = k * math.pi * (3 - math.sqrt(5))
    rho = np.sqrt(1 - z * z)
    return np.c_[rho * np.cos(phi), rho * np.sin(phi), z]


def round_sphere(resolution: int) -> FiniteMetricSpace:
    x = fibonacci_sphere(resolution)
    ang = np.arccos(np.clip(x @ x.T, -1.0, 1.0))
    np.fill_diagonal(ang, 0.0)
    return FiniteMetricSpace(ang, "round-sphere", {"resolution": resolution}, 2, 4 * math.pi)


def projective_plane(resolution: int) -> FiniteMetricSpace:
    """RP^2 as lines through the origin: d(x, y) = min(d_S(x, y), d_S(x, -y)).

    Uses the northern half of a ``2 * resolution`` point Fibonacci sphere so
    every line is sampled once.
    """
    x = fibonacci_sphere(2 * resolution)[:resolution]
    ang = np.arccos(np.clip(np.abs(x @ x.T), 0.0, 1.0))
    np.fill_diagonal(ang, 0.0)
    return FiniteMetricSpace(ang, "projective-plane", {"resolution": resolution}, 2, 2 * math.pi)


def build_model(model: str, points: int, dims: int = 2) -> FiniteMetricSpace:
    if model == "flat-torus":
        side = round(points ** (1 / dims))
        return flat_torus(side, dims)
    if model == "round-sphere":
        return round_sphere(points)
    if model == "projective-plane":
        return projective_plane(points)
    raise ConfigError(f"no generator for model {model!r}")
