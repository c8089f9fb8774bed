"""Schreier graphs of finite-index subgroups of F2 = <a, b>.

A graph on N vertices is stored as the action of the two generators,
``sigma_a`` and ``sigma_b`` (0-based permutations), plus the base vertex
(the coset of H itself). Fixed points count as loops and 2-cycles as double
edges, so every graph is 4-regular; distances ignore both.
"""
from __future__ import annotations

import json
import statistics
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import kernels
from ._parallel import parallel_map
from .errors import ConfigError, InvariantViolation, RejectionCapExceeded, ScaleExceeded
from .seeding import derive_seed, stream

ENUMERATION_CEILING = 7
DEFAULT_REJECTION_CAP = 1000


@dataclass(frozen=True)
class SchreierGraph:
    n_vertices: int
    sigma_a: tuple[int, ...]
    sigma_b: tuple[int, ...]
    base_vertex: int = 0

    def __post_init__(self):
        n = self.n_vertices
        if n < 1:
            raise ConfigError("a Schreier graph needs at least one vertex")
        for name in ("sigma_a", "sigma_b"):
            perm = getattr(self, name)
            if len(perm) != n or sorted(perm) != list(range(n)):
                raise ConfigError(f"{name} is not a permutation of 0..{n - 1}")
        if not 0 <= self.base_vertex < n:
            raise ConfigError(f"base vertex {self.base_vertex} out of range")

    @classmethod
    def from_arrays(cls, sigma_a, sigma_b, base_vertex: int = 0) -> "SchreierGraph":
        sa = tuple(int(x) for x in sigma_a)
        return cls(len(sa), sa, tuple(int(x) for x in sigma_b), int(base_vertex))

    def arrays(self) -> tuple[np.ndarray, np.ndarray]:
        return np.asarray(self.sigma_a, dtype=np.int64), np.asarray(self.sigma_b, dtype=np.int64)

    def is_transitive(self) -> bool:
        return kernels.orbit_count(*self.arrays()) == 1

    def degree(self, v: int) -> int:
        # each generator contributes an out- and an in-edge; a loop counts twice
        return 4

    def edges(self) -> list[tuple[int, int, str]]:
        """Labelled edges ``(v, sigma(v), letter)``, one per vertex and generator."""
        return [(v, self.sigma_a[v], "a") for v in range(self.n_vertices)] + [
            (v, self.sigma_b[v], "b") for v in range(self.n_vertices)
        ]

    def to_json(self) -> dict:
        return {"n": self.n_vertices, "sigma_a": list(self.sigma_a),
                "sigma_b": list(self.sigma_b), "base": self.base_vertex}

    @classmethod
    def from_json(cls, obj) -> "SchreierGraph":
        if isinstance(obj, str):
            obj = json.loads(obj)
        g = cls.from_arrays(obj["sigma_a"], obj["sigma_b"], obj.get("base", 0))
        if g.n_vertices != obj["n"]:
            raise ConfigError("field n does not match permutation length")
        return g


def _draw_pair(n: int, seed: int, rejection_cap: int) -> tuple[np.ndarray, np.ndarray]:
    rng = stream(seed)
    for _ in range(rejection_cap):
        sa = rng.permutation(n)
        sb = rng.permutation(n)
        if kernels.orbit_count(sa, sb) == 1:
            return sa, sb
    raise RejectionCapExceeded(f"rejection cap exceeded: {rejection_cap} intransitive draws at n={n}")


def sample_schreier(n: int, seed: int, *, rejection_cap: int = DEFAULT_REJECTION_CAP) -> SchreierGraph:
    """Uniform random transitive pair by rejection sampling; base vertex 0."""
    if n < 1:
        raise ConfigError(f"n must be >= 1, got {n}")
    sa, sb = _draw_pair(n, seed, rejection_cap)
    return SchreierGraph.from_arrays(sa, sb, 0)


def canonical_arrays(sigma_a, sigma_b, base: int = 0) -> tuple[np.ndarray, np.ndarray]:
    """Relabel vertices in breadth-first discovery order from ``base``.

    Neighbours are expanded in the letter order a, a^-1, b, b^-1.
    """
    sa = np.asarray(sigma_a, dtype=np.int64)
    sb = np.asarray(sigma_b, dtype=np.int64)
    n = sa.shape[0]
    ia = np.argsort(sa)
    ib = np.argsort(sb)
    label = np.full(n, -1, dtype=np.int64)
    label[base] = 0
    order = [base]
    head = 0
    while head < len(order):
        v = order[head]
        head += 1
        for w in (sa[v], ia[v], sb[v], ib[v]):
            if label[w] < 0:
                label[w] = len(order)
                order.append(int(w))
    if len(order) != n:
        raise ConfigError("graph is not transitive; canonical form undefined")
    new_a = np.empty(n, dtype=np.int64)
    new_b = np.empty(n, dtype=np.int64)
    new_a[label] = label[sa]
    new_b[label] = label[sb]
    return new_a, new_b


def graph_canonical_form(g: SchreierGraph) -> bytes:
    """Deduplication key: equal iff the pointed graphs define the same subgroup."""
    ca, cb = canonical_arrays(g.sigma_a, g.sigma_b, g.base_vertex)
    return np.concatenate([[g.n_vertices], ca, cb]).astype("<u4").tobytes()


@lru_cache(maxsize=None)
def _canonical_tables(n: int) -> tuple[np.ndarray, np.ndarray]:
    # Low-index search: fill the coset table in (vertex, letter) order; a new
    # vertex always takes the next free label, so every completed table is
    # already in breadth-first canonical form and appears exactly once.
    fwd = [[-1] * n, [-1] * n]   # images under a, b
    bwd = [[-1] * n, [-1] * n]   # images under a^-1, b^-1
    found_a: list[list[int]] = []
    found_b: list[list[int]] = []

    def next_slot(used):
        for v in range(used):
            for gen in (0, 1):
                if fwd[gen][v] < 0:
                    return v, gen, True
                if bwd[gen][v] < 0:
                    return v, gen, False
        return None

    def search(used):
        slot = next_slot(used)
        if slot is None:
            if used == n:
                found_a.append(list(fwd[0]))
                found_b.append(list(fwd[1]))
            return
        v, gen, forward = slot
        free = bwd[gen] if forward else fwd[gen]
        top = used + 1 if used < n else used
        for w in range(top):
            if free[w] >= 0:
                continue
            if forward:
                fwd[gen][v], bwd[gen][w] = w, v
            else:
                bwd[gen][v], fwd[gen][w] = w, v
            search(max(used, w + 1))
            if forward:
                fwd[gen][v], bwd[gen][w] = -1, -1
            else:
                bwd[gen][v], fwd[gen][w] = -1, -1

    search(1)
    sa = np.asarray(found_a, dtype=np.int64).reshape(-1, n)
    sb = np.asarray(found_b, dtype=np.int64).reshape(-1, n)
    sa.flags.writeable = False
    sb.flags.writeable = False
    return sa, sb


def enumerate_subgroup_tables(n: int, *, ceiling: int = ENUMERATION_CEILING) -> tuple[np.ndarray, np.ndarray]:
    """All index-``n`` subgroups as stacked canonical ``(sigma_a, sigma_b)`` rows."""
    if n < 1:
        raise ConfigError(f"n must be >= 1, got {n}")
    if n > ceiling:
        raise ScaleExceeded(f"enumeration scale exceeded: n={n} > ceiling {ceiling}")
    return _canonical_tables(n)


def enumerate_subgroups(n: int, *, ceiling: int = ENUMERATION_CEILING) -> list[SchreierGraph]:
    sa, sb = enumerate_subgroup_tables(n, ceiling=ceiling)
    return [SchreierGraph.from_arrays(a, b, 0) for a, b in zip(sa, sb)]


def graph_diameter(g: SchreierGraph) -> int:
    d = int(kernels.batch_diameters(*g.arrays())[0])
    if d < 0:
        raise ConfigError("graph is not transitive")
    return d


def diameter_lower_bound(n: int) -> int:
    """Smallest d with 2 * 3**d - 1 >= n: a 4-regular ball of radius d has at most that many vertices."""
    d = 0
    while 2 * 3**d - 1 < n:
        d += 1
    return d


@dataclass(frozen=True)
class DiameterStatistics:
    n_vertices: int
    trials: int
    diameters: tuple[int, ...]
    seed: int

    def __post_init__(self):
        floor = diameter_lower_bound(self.n_vertices)
        bad = [d for d in self.diameters if d < floor]
        if bad:
            raise InvariantViolation(f"diameter {bad[0]} below the ball-growth floor {floor}")

    @property
    def min(self) -> int:
        return min(self.diameters)

    @property
    def max(self) -> int:
        return max(self.diameters)

    @property
    def median(self) -> float:
        return statistics.median(self.diameters)

    def fraction_le_2log3(self) -> float:
        # d <= 2 log_3 N  <=>  3**d <= N**2, kept in integers
        n2 = self.n_vertices**2
        return sum(3**d <= n2 for d in self.diameters) / self.trials

    def summary(self) -> dict:
        return {"n": self.n_vertices, "trials": self.trials, "min": self.min,
                "median": self.median, "max": self.max,
                "frac_le_2log3": self.fraction_le_2log3()}

    def to_csv(self) -> str:
        lines = ["trial,diameter"]
        lines += [f"{t},{d}" for t, d in enumerate(self.diameters)]
        return "\n".join(lines) + "\n"


def _diameters_for_trials(args) -> list[int]:
    n, seed, trial_ids, rejection_cap = args
    pairs = [_draw_pair(n, derive_seed(seed, t), rejection_cap) for t in trial_ids]
    sa = np.stack([p[0] for p in pairs])
    sb = np.stack([p[1] for p in pairs])
    return [int(d) for d in kernels.batch_diameters(sa, sb)]


def diameter_statistics(
    n: int,
    trials: int,
    seed: int,
    *,
    threads: int = 1,
    rejection_cap: int = DEFAULT_REJECTION_CAP,
) -> DiameterStatistics:
    """Diameters of ``trials`` uniform Schreier graphs; trial t uses child seed (seed, t)."""
    if n < 3:
        raise ConfigError(f"diameter statistics need n >= 3, got {n}")
    if trials < 1:
        raise ConfigError("trials must be >= 1")
    chunk = 16
    jobs = [(n, seed, range(t0, min(trials, t0 + chunk)), rejection_cap) for t0 in range(0, trials, chunk)]
    diams = [d for part in parallel_map(_diameters_for_trials, jobs, threads) for d in part]
    return DiameterStatistics(n, trials, tuple(diams), seed)


def sample_with_seed_for_trial(n: int, seed: int, trial: int) -> SchreierGraph:
    """The graph recorded as trial ``trial`` of ``diameter_statistics(n, ., seed)``."""
    return sample_schreier(n, derive_seed(seed, trial))
