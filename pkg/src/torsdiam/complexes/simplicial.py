"""Finite abstract simplicial complexes and their boundary matrices.

Simplices are strictly increasing vertex tuples. The boundary of
``(v0, ..., vp)`` is ``sum_i (-1)^i (v0, ..., vi^, ..., vp)``.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable

import numpy as np

from ..errors import ConfigError


@dataclass(frozen=True)
class SimplicialComplex:
    n_vertices: int
    simplices: dict[int, tuple[tuple[int, ...], ...]]
    truncated: bool = field(default=False, compare=False)

    @classmethod
    def from_facets(cls, facets: Iterable[Iterable[int]], n_vertices: int | None = None,
                    max_dim: int | None = None, truncated: bool = False) -> "SimplicialComplex":
        """Face closure of ``facets``, optionally cut at ``max_dim``."""
        faces: dict[int, set] = {}
        top = -1
        facets = [tuple(sorted(set(int(v) for v in f))) for f in facets]
        for f in facets:
            top = max(top, len(f) - 1)
        if max_dim is not None:
            top = min(top, max_dim)
        verts = set()
        for f in facets:
            verts.update(f)
            for k in range(1, min(len(f), top + 1) + 1):
                faces.setdefault(k - 1, set()).update(itertools.combinations(f, k))
        if n_vertices is None:
            n_vertices = max(verts) + 1 if verts else 0
        faces.setdefault(0, set()).update((v,) for v in range(n_vertices))
        return cls(n_vertices, {p: tuple(sorted(s)) for p, s in sorted(faces.items()) if s}, truncated)

    @property
    def dim(self) -> int:
        return max(self.simplices) if self.simplices else -1

    def count(self, p: int) -> int:
        return len(self.simplices.get(p, ()))

    def f_vector(self) -> list[int]:
        return [self.count(p) for p in range(self.dim + 1)]

    def euler_characteristic(self) -> int:
        return sum((-1) ** p * c for p, c in enumerate(self.f_vector()))

    def index(self, p: int) -> dict[tuple[int, ...], int]:
        return {s: i for i, s in enumerate(self.simplices.get(p, ()))}

    def degrees(self) -> np.ndarray:
        deg = np.zeros(self.n_vertices, dtype=np.int64)
        for u, v in self.simplices.get(1, ()):
            deg[u] += 1
            deg[v] += 1
        return deg

    @property
    def max_degree(self) -> int:
        return int(self.degrees().max()) if self.n_vertices else 0

    def is_face_closed(self) -> bool:
        for p in range(1, self.dim + 1):
            lower = set(self.simplices.get(p - 1, ()))
            for s in self.simplices[p]:
                if any(f not in lower for f in itertools.combinations(s, p)):
                    return False
        return True

    def disjoint_union(self, other: "SimplicialComplex") -> "SimplicialComplex":
        shift = self.n_vertices
        facets = [s for p in self.simplices.values() for s in p]
        facets += [tuple(v + shift for v in s) for p in other.simplices.values() for s in p]
        return SimplicialComplex.from_facets(facets, self.n_vertices + other.n_vertices)

    def relabel(self, perm) -> "SimplicialComplex":
        perm = list(perm)
        facets = [tuple(perm[v] for v in s) for p in self.simplices.values() for s in p]
        return SimplicialComplex.from_facets(facets, self.n_vertices)

    def to_json(self) -> dict:
        return {"vertices": self.n_vertices,
                "simplices": {str(p): [list(s) for s in ss] for p, ss in self.simplices.items() if p >= 1}}

    @classmethod
    def from_json(cls, obj) -> "SimplicialComplex":
        if isinstance(obj, (str, Path)) and not str(obj).lstrip().startswith("{"):
            obj = json.loads(Path(obj).read_text())
        elif isinstance(obj, str):
            obj = json.loads(obj)
        try:
            n = int(obj["vertices"])
            listed = [tuple(s) for ss in obj.get("simplices", {}).values() for s in ss]
        except (KeyError, TypeError, ValueError) as exc:
            raise ConfigError(f"malformed complex file: {exc}") from exc
        for s in listed:
            if len(set(s)) != len(s) or any(not 0 <= v < n for v in s):
                raise ConfigError(f"bad simplex {list(s)}")
        return cls.from_facets(listed, n)


def boundary_columns(c: SimplicialComplex, p: int) -> list[dict[int, int]]:
    """Sparse boundary map C_p -> C_{p-1}: one ``{row: coefficient}`` per p-simplex."""
    if p < 1:
        raise ConfigError("boundary_matrix needs p >= 1")
    rows = c.index(p - 1)
    cols = []
    for s in c.simplices.get(p, ()):
        col = {}
        for i in range(p + 1):
            col[rows[s[:i] + s[i + 1:]]] = -1 if i % 2 else 1
        cols.append(col)
    return cols


def boundary_matrix(c: SimplicialComplex, p: int) -> np.ndarray:
    """Dense integer boundary matrix, rows (p-1)-simplices, columns p-simplices."""
    cols = boundary_columns(c, p)
    m = np.zeros((c.count(p - 1), len(cols)), dtype=np.int64)
    for j, col in enumerate(cols):
        for i, v in col.items():
            m[i, j] = v
    return m
