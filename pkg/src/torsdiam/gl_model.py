"""Combinatorial model of the glued manifolds M(H, tau).

A manifold is represented by its Schreier graph and a vertex labelling
``tau``; the six building blocks only enter through their diameters. The
counting functions give certified lower bounds: one manifold per subgroup,
with tau marking the base vertex only.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path

import numpy as np

from . import kernels
from .errors import ConfigError
from .schreier import (
    ENUMERATION_CEILING,
    SchreierGraph,
    diameter_lower_bound,
    enumerate_subgroup_tables,
    graph_diameter,
    _draw_pair,
    DEFAULT_REJECTION_CAP,
)
from .seeding import derive_seed
from .subgroups import count_subgroups

BLOCK_NAMES = ("V0", "V1", "Aplus", "Aminus", "Bplus", "Bminus")
SAMPLING_CEILING = 150  # a_N overflows a double beyond N ~ 168


@dataclass(frozen=True)
class BlockTable:
    diam_V0: float = 1.0
    diam_V1: float = 1.0
    diam_Aplus: float = 1.0
    diam_Aminus: float = 1.0
    diam_Bplus: float = 1.0
    diam_Bminus: float = 1.0

    def __post_init__(self):
        for name in BLOCK_NAMES:
            if not getattr(self, f"diam_{name}") > 0:
                raise ConfigError(f"block diameter diam_{name} must be positive")

    @property
    def D(self) -> float:
        return max(getattr(self, f"diam_{name}") for name in BLOCK_NAMES)

    @classmethod
    def uniform(cls, D: float) -> "BlockTable":
        return cls(*([float(D)] * 6))

    @classmethod
    def from_json(cls, source) -> "BlockTable":
        """Accepts a path or a mapping; keys may be ``V0`` or ``diam_V0``."""
        if isinstance(source, (str, Path)):
            source = json.loads(Path(source).read_text())
        kwargs = {}
        for key, value in source.items():
            name = key if key.startswith("diam_") else f"diam_{key}"
            if name[5:] not in BLOCK_NAMES:
                if key == "D":
                    continue
                raise ConfigError(f"unknown block {key!r}")
            kwargs[name] = float(value)
        return cls(**kwargs)


@dataclass(frozen=True)
class GLDescriptor:
    graph: SchreierGraph
    tau: tuple[int, ...]

    def __post_init__(self):
        if len(self.tau) != self.graph.n_vertices or set(self.tau) - {0, 1}:
            raise ConfigError("tau must assign 0 or 1 to every vertex")
        if sum(self.tau) != 1:
            raise ConfigError("tau must mark exactly one vertex with 1")

    @classmethod
    def marked_at_base(cls, graph: SchreierGraph) -> "GLDescriptor":
        tau = [0] * graph.n_vertices
        tau[graph.base_vertex] = 1
        return cls(graph, tuple(tau))


def manifold_diameter_upper(desc: GLDescriptor, blocks: BlockTable, graph_diam: int | None = None) -> float:
    """2 D diam(graph) + 2 D: a path crosses at most 2 diam + 2 blocks."""
    g = graph_diameter(desc.graph) if graph_diam is None else graph_diam
    return 2.0 * blocks.D * g + 2.0 * blocks.D


def graph_diameter_cap(d_max: float, D: float) -> int:
    """Largest g with 2 D g + 2 D <= d_max, or -1 when even g = 0 fails."""
    if d_max < 2 * D:
        return -1
    g = int(math.floor((d_max - 2 * D) / (2 * D)))
    while 2 * D * (g + 1) + 2 * D <= d_max:
        g += 1
    while g >= 0 and 2 * D * g + 2 * D > d_max:
        g -= 1
    return g


@lru_cache(maxsize=None)
def enumerated_diameters(n: int) -> np.ndarray:
    """Diameters of every index-n subgroup's Schreier graph (n <= 7)."""
    sa, sb = enumerate_subgroup_tables(n)
    out = kernels.batch_diameters(sa, sb)
    out.flags.writeable = False
    return out


@dataclass
class CountReport:
    d_max: float
    D: float
    n_ceiling: int
    graph_diameter_cap: int
    exact: int = 0
    estimated: float = 0.0
    stderr: float = 0.0
    ceiling_too_low: bool = False
    per_n: list[dict] = field(default_factory=list)

    @property
    def lower_bound(self) -> int:
        """The certified part: exact counts only."""
        return self.exact

    def to_json(self) -> dict:
        return {
            "d_max": self.d_max,
            "D": self.D,
            "ceiling": self.n_ceiling,
            "graph_diameter_cap": self.graph_diameter_cap,
            "exact": str(self.exact),
            "estimated": self.estimated,
            "stderr": self.stderr,
            "ceiling_too_low": self.ceiling_too_low,
            "per_n": self.per_n,
        }


def count_noncommensurable(
    d_max: float,
    blocks: BlockTable | None = None,
    n_ceiling: int = ENUMERATION_CEILING,
    *,
    trials: int = 200,
    seed: int = 0,
    rejection_cap: int = DEFAULT_REJECTION_CAP,
) -> CountReport:
    """Pairwise non-commensurable model manifolds of diameter bound <= d_max.

    Indices up to 7 are counted exactly by enumeration. Larger indices up to
    ``n_ceiling`` are estimated as a_N times the sampled fraction of graphs
    under the diameter cap and kept in separate fields. ``ceiling_too_low``
    flags that indices above the ceiling could still contribute.
    """
    blocks = blocks or BlockTable()
    if n_ceiling < 1:
        raise ConfigError("ceiling must be >= 1")
    if n_ceiling > SAMPLING_CEILING:
        raise ConfigError(f"ceiling above {SAMPLING_CEILING} is not supported")
    D = blocks.D
    g_cap = graph_diameter_cap(d_max, D)
    report = CountReport(d_max, D, n_ceiling, g_cap)
    table = count_subgroups(n_ceiling)
    var = 0.0
    for n in range(1, n_ceiling + 1):
        a_n = table.a(n)
        row = {"n": n, "a_n": str(a_n)}
        if g_cap < diameter_lower_bound(n):
            row.update(kind="exact", admitted="0")
        elif n <= ENUMERATION_CEILING:
            admitted = int(np.count_nonzero(enumerated_diameters(n) <= g_cap))
            report.exact += admitted
            row.update(kind="exact", admitted=str(admitted))
        else:
            hits = 0
            sa, sb = [], []
            for t in range(trials):
                a, b = _draw_pair(n, derive_seed(seed, n, t), rejection_cap)
                sa.append(a)
                sb.append(b)
            diams = kernels.batch_diameters(np.stack(sa), np.stack(sb))
            hits = int(np.count_nonzero(diams <= g_cap))
            p = hits / trials
            est = float(a_n) * p
            se = float(a_n) * math.sqrt(p * (1 - p) / trials)
            report.estimated += est
            var += se * se
            row.update(kind="estimated", fraction=p, estimate=est, stderr=se)
        report.per_n.append(row)
    report.stderr = math.sqrt(var)
    # a graph of diameter g has at most 2*3^g - 1 vertices
    report.ceiling_too_low = g_cap >= 1 and 2 * 3**g_cap - 1 > n_ceiling
    return report


def count_by_filtering(d_max: float, blocks: BlockTable, n_max: int) -> int:
    """Direct filter over enumerated descriptors; oracle for the exact part."""
    total = 0
    for n in range(1, n_max + 1):
        sa, sb = enumerate_subgroup_tables(n)
        for a, b in zip(sa, sb):
            desc = GLDescriptor.marked_at_base(SchreierGraph.from_arrays(a, b))
            if manifold_diameter_upper(desc, blocks) <= d_max:
                total += 1
    return total


@dataclass(frozen=True)
class FractionBound:
    d: float
    log_bound: float
    fraction: float


def arithmetic_fraction_bound(
    d: float,
    C_n: float = 1.0,
    beta: float = 1.0,
    eps: float = 0.1,
    C_prime: float = 0.5,
) -> FractionBound:
    """Upper bound on the share of arithmetic manifolds at diameter <= d.

    Arithmetic count <= exp(beta' d^(1+eps)) with beta' = beta / C_n^(1+eps),
    against at least exp(C' d exp(C' d)) non-commensurable manifolds. The
    ratio is formed in log space and clamped to [0, 1].
    """
    for name, val in (("C_n", C_n), ("beta", beta), ("C_prime", C_prime)):
        if not val > 0:
            raise ConfigError(f"{name} must be positive")
    if eps < 0 or d < 0:
        raise ConfigError("d and eps must be nonnegative")
    beta_eff = beta / C_n ** (1 + eps)
    upper = beta_eff * d ** (1 + eps)
    x = C_prime * d
    lower = x * math.exp(x) if x < 700 else math.inf
    log_bound = upper - lower
    return FractionBound(d, log_bound, math.exp(min(0.0, log_bound)))


def loglog_envelope(d_values, counts) -> dict:
    """Two lines bracketing log(log(count)) against d.

    Counts below 2 have no log log and are skipped. The lower line has the
    slope of the chord through the first and last remaining points and is
    shifted down until every residual is >= 0; on a concave sequence no shift
    is needed. The upper line is the least-squares line shifted up until
    every residual is <= 0.
    """
    pairs = [(float(d), int(c)) for d, c in zip(d_values, counts) if int(c) >= 2]
    if len(pairs) < 2:
        raise ConfigError("need at least two counts >= 2")
    x = np.asarray([p[0] for p in pairs])
    y = np.log(np.log(np.asarray([p[1] for p in pairs], dtype=np.float64)))
    lo_slope = (y[-1] - y[0]) / (x[-1] - x[0])
    lo_icpt = y[0] - lo_slope * x[0]
    lo_icpt += min(0.0, float(np.min(y - (lo_slope * x + lo_icpt))))
    hi_slope, hi_icpt = np.polyfit(x, y, 1)
    hi_icpt += float(np.max(y - (hi_slope * x + hi_icpt)))
    return {
        "d": x.tolist(),
        "loglog": y.tolist(),
        "lower_slope": float(lo_slope),
        "lower_intercept": float(lo_icpt),
        "lower_residuals": (y - (lo_slope * x + lo_icpt)).tolist(),
        "upper_slope": float(hi_slope),
        "upper_intercept": float(hi_icpt),
        "upper_residuals": (y - (hi_slope * x + hi_icpt)).tolist(),
    }
