#!/usr/bin/env python3
"""Time the numba kernels against the pure-numpy fallback.

Both backends are imported directly, so the TORSDIAM_DISABLE_NUMBA flag
does not matter here. Each kernel is checked for identical output before
timing. The first numba call (compilation or cache load) is excluded.

Usage:
    python3 benchmarks/bench_kernels.py [--n 729] [--graphs 64] [--repeat 3]
"""
from __future__ import annotations

import argparse
import time

import numpy as np

from torsdiam.kernels import _numba, _numpy
from torsdiam.complexes.metric import projective_plane
from torsdiam.schreier import _draw_pair
from torsdiam.seeding import derive_seed, stream


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t)
    return min(times), out


def cases(args):
    sa, sb = zip(*(_draw_pair(args.n, derive_seed(0, t), 1000) for t in range(args.graphs)))
    SA, SB = np.stack(sa), np.stack(sb)
    rng = stream(0, 1)
    perms_b = np.stack([rng.permutation(6) for _ in range(720)])
    sigma_a = rng.permutation(6)
    dist = projective_plane(args.points).dist
    return {
        "batch_diameters": lambda m: m.batch_diameters(SA, SB),
        "orbit_count": lambda m: [m.orbit_count(a, b) for a, b in zip(SA, SB)],
        "count_transitive_partners": lambda m: m.count_transitive_partners(sigma_a, perms_b),
        "greedy_net": lambda m: m.greedy_net(dist, 0.3),
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=729, help="Schreier graph size")
    ap.add_argument("--graphs", type=int, default=64)
    ap.add_argument("--points", type=int, default=2000, help="metric model size for greedy_net")
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    print(f"{'kernel':28s} {'numpy [s]':>10s} {'numba [s]':>10s} {'speedup':>8s}")
    for name, run in cases(args).items():
        run(_numba)  # compile / load cache
        t_np, out_np = best_of(lambda: run(_numpy), args.repeat)
        t_nb, out_nb = best_of(lambda: run(_numba), args.repeat)
        same = np.array_equal(np.asarray(out_np), np.asarray(out_nb))
        flag = "" if same else "  OUTPUT MISMATCH"
        print(f"{name:28s} {t_np:10.4f} {t_nb:10.4f} {t_np / t_nb:8.1f}x{flag}")


if __name__ == "__main__":
    main()
