"""Plot-ready (x, y) tables for the three headline growth curves.

Nothing here draws; every kind returns a header, rows and a small meta dict
that the CLI writes as CSV or JSON.
"""
from __future__ import annotations

import math

from .complexes.gabber import DEGREES, gabber_scan
from .errors import ConfigError
from .gl_model import BlockTable, count_noncommensurable, loglog_envelope
from .schreier import diameter_statistics
from .seeding import derive_seed

KINDS = ("count-vs-diam", "diam-vs-n", "torsion-vs-vertices")

DEFAULTS = {
    "count-vs-diam": {"dmin": 2.0, "dmax": 12.0, "step": 1.0, "D": 1.0, "ceiling": 7},
    "diam-vs-n": {"ns": (27, 81, 243, 729), "trials": 200},
    "torsion-vs-vertices": {"degree": 12, "vmax": 40, "trials": 2000},
}


def _count_vs_diam(p, seed, threads):
    if p["step"] <= 0 or p["dmax"] < p["dmin"]:
        raise ConfigError("need step > 0 and dmax >= dmin")
    blocks = BlockTable.uniform(p["D"])
    k = int(math.floor((p["dmax"] - p["dmin"]) / p["step"] + 1e-9))
    ds = [p["dmin"] + i * p["step"] for i in range(k + 1)]
    counts = [count_noncommensurable(d, blocks, p["ceiling"], seed=seed).exact for d in ds]
    env = loglog_envelope(ds, counts)
    rows = []
    for d, c in zip(ds, counts):
        y = math.log(math.log(c)) if c >= 2 else -math.inf
        rows.append([d, y, str(c),
                     env["lower_slope"] * d + env["lower_intercept"],
                     env["upper_slope"] * d + env["upper_intercept"]])
    meta = {k: v for k, v in env.items() if k in ("lower_slope", "lower_intercept", "upper_slope", "upper_intercept")}
    return ["x", "y", "count", "lower_fit", "upper_fit"], rows, meta


def _diam_vs_n(p, seed, threads):
    rows = []
    for n in p["ns"]:
        st = diameter_statistics(int(n), int(p["trials"]), derive_seed(seed, int(n)), threads=threads)
        log3 = math.log(n, 3)
        rows.append([int(n), float(st.median), st.min, st.max, st.fraction_le_2log3(), log3 - 1, 2 * log3])
    return ["x", "y", "min", "max", "frac_le_2log3", "lower_envelope", "upper_envelope"], rows, {}


def _torsion_vs_vertices(p, seed, threads):
    scan = gabber_scan(int(p["degree"]), int(p["vmax"]), int(p["trials"]), seed, threads)
    consts = scan.constants
    rows = []
    for r in scan.records:
        for k, deg in enumerate(DEGREES):
            rows.append([r.vertices, r.log_torsion[k], deg, consts[deg] * r.vertices, r.trial])
    meta = {"constants": {str(k): v for k, v in consts.items()}}
    return ["x", "y", "p", "bound", "trial"], rows, meta


_BUILDERS = {"count-vs-diam": _count_vs_diam, "diam-vs-n": _diam_vs_n,
             "torsion-vs-vertices": _torsion_vs_vertices}


def emit_curves(kind: str, params: dict | None = None, seed: int = 0, threads: int = 1):
    """Return (header, rows, meta) for one curve kind; unset params take DEFAULTS."""
    if kind not in _BUILDERS:
        raise ConfigError(f"unknown curve kind {kind!r}; choose from {', '.join(KINDS)}")
    p = dict(DEFAULTS[kind])
    for key, val in (params or {}).items():
        if val is not None and key in p:
            p[key] = val
    return _BUILDERS[kind](p, seed, threads)
