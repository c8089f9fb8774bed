"""Empirical constants for Gabber's torsion lemma.

For complexes with at most V vertices of degree <= D, log|H_p tors| <= C V.
The lemma only asserts that C(D, p) exists. ``gabber_scan`` estimates it
from random complexes under the degree cap, drawn mostly from families
built to carry torsion: discs glued onto a circle by a map of degree k
(Moore spaces M(Z/k, 1)), their suspensions (torsion in degree 2), random
closed-walk gluings and the 6-vertex projective plane. Plain random flag
and 2-complexes serve as background.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from .._parallel import parallel_map
from ..errors import ConfigError
from ..seeding import stream
from .corpus import projective_plane
from .homology import homology
from .simplicial import SimplicialComplex

DEGREES = (1, 2)
FAMILIES = ("moore", "walk", "suspended-moore", "union", "flag", "random-2", "projective-plane")


def hadamard_gabber_constant(D: int, p: int) -> float:
    """A certified C(D, p) from Hadamard's inequality.

    Each column of the boundary map out of (p+1)-simplices has norm
    sqrt(p+2), and there are at most V * binom(D, p+1) / (p+2) of them.
    """
    return math.comb(D, p + 1) / (p + 2) * 0.5 * math.log(p + 2)


def _zigzag(poly: list[int]) -> list[tuple[int, ...]]:
    order = []
    lo, hi = 0, len(poly) - 1
    while lo <= hi:
        order.append(poly[lo])
        if lo != hi:
            order.append(poly[hi])
        lo += 1
        hi -= 1
    return [tuple(order[i:i + 3]) for i in range(len(order) - 2)]


def glued_disc(word: list[int], m: int, fill: str = "zigzag") -> SimplicialComplex:
    """A disc whose boundary follows the closed walk ``word`` on an m-cycle.

    Vertices 0..m-1 form the cycle; a ring of ``len(word)`` fresh vertices
    sits inside the boundary so the gluing stays simplicial, and the ring
    is filled by a cone or a zigzag. H1 is Z/|winding number|.
    """
    L = len(word)
    ring = [m + i for i in range(L)]
    facets = [(i, (i + 1) % m) for i in range(m)]
    for i in range(L):
        b0, b1 = word[i], word[(i + 1) % L]
        facets.append((b0, b1, ring[i]))
        facets.append((b1, ring[i], ring[(i + 1) % L]))
    n = m + L
    if fill == "cone":
        facets += [(ring[i], ring[(i + 1) % L], n) for i in range(L)]
        n += 1
    else:
        facets += _zigzag(ring)
    return SimplicialComplex.from_facets(facets, n)


def moore_space(k: int, m: int = 3, fill: str = "zigzag") -> SimplicialComplex:
    """M(Z/k, 1): boundary wraps k times around an m-cycle."""
    return glued_disc([i % m for i in range(k * m)], m, fill)


def suspension(c: SimplicialComplex) -> SimplicialComplex:
    n = c.n_vertices
    facets = [s + (apex,) for p in c.simplices.values() for s in p for apex in (n, n + 1)]
    return SimplicialComplex.from_facets(facets, n + 2)


def _walk_word(rng, m: int, length: int) -> list[int]:
    # closed walk on the m-cycle: random +-1 steps, never standing still;
    # on an even cycle a closed walk has even length
    if m % 2 == 0 and length % 2:
        length += 1
    while True:
        steps = rng.choice([-1, 1], size=length)
        if steps.sum() % m == 0:
            return [int(x) for x in np.cumsum(np.r_[0, steps[:-1]]) % m]


def _flag_complex(rng, n: int, D: int, max_dim: int = 3) -> SimplicialComplex:
    deg = np.zeros(n, dtype=int)
    edges = set()
    target = int(rng.integers(n, n * D // 2 + 1))
    for _ in range(4 * target):
        u, v = (int(x) for x in rng.choice(n, size=2, replace=False))
        if u > v:
            u, v = v, u
        if (u, v) in edges or deg[u] >= D or deg[v] >= D:
            continue
        edges.add((u, v))
        deg[u] += 1
        deg[v] += 1
        if len(edges) >= target:
            break
    nbrs = [set() for _ in range(n)]
    for u, v in edges:
        nbrs[u].add(v)
        nbrs[v].add(u)
    faces = [(v,) for v in range(n)] + sorted(edges)
    frontier = sorted(edges)
    for _ in range(2, max_dim + 1):
        nxt = []
        for s in frontier:
            common = set.intersection(*(nbrs[v] for v in s))
            nxt += [s + (w,) for w in sorted(common) if w > s[-1]]
        faces += nxt
        frontier = nxt
    return SimplicialComplex.from_facets(faces, n)


def _random_2complex(rng, n: int, D: int) -> SimplicialComplex:
    deg = np.zeros(n, dtype=int)
    edges = set()
    tris = []
    for _ in range(int(rng.integers(n, 4 * n))):
        t = tuple(sorted(int(x) for x in rng.choice(n, size=3, replace=False)))
        new = [e for e in itertools.combinations(t, 2) if e not in edges]
        extra = np.zeros(n, dtype=int)
        for u, v in new:
            extra[u] += 1
            extra[v] += 1
        if np.any(deg + extra > D):
            continue
        deg += extra
        edges.update(new)
        tris.append(t)
    return SimplicialComplex.from_facets([(v,) for v in range(n)] + tris, n)


def random_complex(rng, D: int, v_max: int) -> tuple[str, SimplicialComplex]:
    """One random complex with max degree <= D and <= v_max vertices."""
    for _ in range(200):
        family = FAMILIES[int(rng.integers(len(FAMILIES)))]
        fill = "cone" if rng.random() < 0.3 else "zigzag"
        if family == "moore":
            c = moore_space(int(rng.integers(2, 7)), int(rng.integers(3, 6)), fill)
        elif family == "walk":
            m = int(rng.integers(3, 6))
            c = glued_disc(_walk_word(rng, m, int(rng.integers(m, 4 * m + 1))), m, fill)
        elif family == "suspended-moore":
            c = suspension(moore_space(int(rng.integers(2, 5)), 3, "zigzag"))
        elif family == "union":
            c = moore_space(int(rng.integers(2, 6)), 3, fill).disjoint_union(
                moore_space(int(rng.integers(2, 6)), 3, "zigzag"))
        elif family == "projective-plane":
            # the 6-vertex triangulation: the densest Z/2 torsion per vertex seen
            c = projective_plane()
            pick = rng.random()
            if pick < 1 / 3:
                c = suspension(c)
            elif pick < 2 / 3:
                c = c.disjoint_union(moore_space(int(rng.integers(2, 6)), 3, fill))
        elif family == "flag":
            c = _flag_complex(rng, int(rng.integers(4, v_max + 1)), D)
        else:
            c = _random_2complex(rng, int(rng.integers(4, v_max + 1)), D)
        if c.n_vertices <= v_max and c.max_degree <= D:
            return family, c.relabel(rng.permutation(c.n_vertices))
    raise ConfigError(f"no admissible complex found for D={D}, V<={v_max}")


@dataclass(frozen=True)
class ScanRecord:
    trial: int
    family: str
    vertices: int
    max_degree: int
    log_torsion: tuple[float, ...]  # indexed like DEGREES


def _scan_chunk(args) -> list[ScanRecord]:
    D, v_max, seed, trial_ids = args
    out = []
    for t in trial_ids:
        family, c = random_complex(stream(seed, t), D, v_max)
        h = homology(c)
        out.append(ScanRecord(t, family, c.n_vertices, c.max_degree,
                              tuple(h.log_torsion(p) for p in DEGREES)))
    return out


@dataclass
class GabberScan:
    degree_cap: int
    v_max: int
    trials: int
    seed: int
    records: list[ScanRecord] = field(repr=False, default_factory=list)

    def ratios(self, p: int) -> np.ndarray:
        k = DEGREES.index(p)
        return np.asarray([r.log_torsion[k] / r.vertices for r in self.records])

    def constant(self, p: int) -> float:
        return float(self.ratios(p).max())

    @property
    def constants(self) -> dict[int, float]:
        return {p: self.constant(p) for p in DEGREES}

    def witness(self, p: int) -> int:
        """Trial index achieving the maximum ratio in degree p."""
        return self.records[int(np.argmax(self.ratios(p)))].trial

    def witness_complex(self, p: int) -> SimplicialComplex:
        return random_complex(stream(self.seed, self.witness(p)), self.degree_cap, self.v_max)[1]

    def table(self) -> dict[int, dict[int, float]]:
        return {self.degree_cap: self.constants}

    def to_json(self) -> dict:
        return {
            "degree_cap": self.degree_cap,
            "v_max": self.v_max,
            "trials": self.trials,
            "seed": self.seed,
            "constants": {str(p): c for p, c in self.constants.items()},
            "witness_trials": {str(p): self.witness(p) for p in DEGREES},
            "witnesses": {str(p): self.witness_complex(p).to_json() for p in DEGREES},
            "table": {str(self.degree_cap): {str(p): c for p, c in self.constants.items()}},
        }


def gabber_scan(D: int, v_max: int, trials: int, seed: int, threads: int = 1) -> GabberScan:
    """Max over random complexes of log|H_p tors| / V for p = 1, 2."""
    if D < 2 or v_max < 4 or trials < 1:
        raise ConfigError("need D >= 2, V_max >= 4 and trials >= 1")
    chunk = 64
    jobs = [(D, v_max, seed, range(t, min(trials, t + chunk))) for t in range(0, trials, chunk)]
    records = [r for part in parallel_map(_scan_chunk, jobs, threads) for r in part]
    return GabberScan(D, v_max, trials, seed, records)


def load_table(obj) -> dict[int, dict[int, float]]:
    """Gabber table from a scan JSON, a list of scans, or a bare ``{D: {p: C}}`` map."""
    if isinstance(obj, list):
        out = {}
        for item in obj:
            out.update(load_table(item))
        return out
    if "table" in obj:
        obj = obj["table"]
    return {int(d): {int(p): float(c) for p, c in row.items()} for d, row in obj.items()}
