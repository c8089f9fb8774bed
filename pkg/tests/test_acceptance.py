"""Acceptance criteria, one test each, at the stated tolerances.

Every test logs a single ``[PASS]``/``[FAIL]`` line, shown in the pytest
summary under "acceptance criteria". ``python3 tests/test_acceptance.py``
runs the same checks without pytest and prints the lines directly.
"""
from __future__ import annotations

import math
import time
import warnings

import numpy as np
import pytest

from torsdiam import cli
from torsdiam import hyperbolic as hy
from torsdiam.complexes import corpus
from torsdiam.complexes.gabber import DEGREES, gabber_scan
from torsdiam.complexes.homology import homology
from torsdiam.complexes.metric import flat_torus, projective_plane, round_sphere
from torsdiam.complexes.nerve import covers
from torsdiam.complexes.pipeline import nerve_pipeline
from torsdiam.gl_model import arithmetic_fraction_bound, count_noncommensurable, loglog_envelope
from torsdiam.schreier import diameter_lower_bound, diameter_statistics
from torsdiam.subgroups import count_subgroups, count_transitive_pairs_bruteforce


def criterion_1():
    t0 = time.perf_counter()
    table = count_subgroups(7)
    mismatches = []
    for n in range(1, 8):
        pairs = count_transitive_pairs_bruteforce(n)
        q, r = divmod(pairs, math.factorial(n - 1))
        if r or q != table.a(n):
            mismatches.append(n)
    named = [table.a(n) for n in (2, 3, 4, 5)] == [3, 13, 71, 461]
    dt = time.perf_counter() - t0
    ok = not mismatches and named and dt < 300
    return ok, f"oracle == recursion for N<=7: {not mismatches}, a2..a5 = 3,13,71,461: {named}, {dt:.1f}s (<300s)"


def criterion_2():
    t0 = time.perf_counter()
    table = count_subgroups(100)
    r = [table.ratio(n) for n in range(2, 101)]
    drops = [n for n, (a, b) in enumerate(zip(r, r[1:]), start=2) if not a < b]
    r50 = table.ratio(50)
    dt = time.perf_counter() - t0
    ok = not drops and r50 >= 0.95 and dt < 10
    detail = (f"strictly increasing on 2..100: {not drops}"
              + (f" (fails at N={drops[0]}->{drops[0] + 1}: {r[drops[0] - 2]:.6f} -> {r[drops[0] - 1]:.6f})" if drops else "")
              + f", ratio(50) = {r50:.5f} (>=0.95), {dt:.2f}s")
    return ok, detail


def criterion_3():
    t0 = time.perf_counter()
    parts, ok = [], True
    for n in (243, 729, 2187):
        st = diameter_statistics(n, 200, seed=n)
        frac = st.fraction_le_2log3()
        floor = diameter_lower_bound(n)
        floor_ok = min(st.diameters) >= floor == math.ceil(math.log((n + 1) / 2, 3) - 1e-12)
        ok &= frac >= 0.99 and floor_ok
        parts.append(f"N={n}: {frac:.0%} <= 2log3N, min {st.min} >= {floor}")
    dt = time.perf_counter() - t0
    ok &= dt < 600
    return ok, "; ".join(parts) + f", {dt:.0f}s (<600s)"


def criterion_4():
    ds = list(range(2, 17))
    counts = [count_noncommensurable(d, n_ceiling=7).exact for d in ds]
    env = loglog_envelope(ds, counts)
    one_sided = min(env["lower_residuals"]) >= -1e-12
    slope_pos = env["lower_slope"] > 0
    small = count_noncommensurable(4, n_ceiling=2).exact
    ok = one_sided and slope_pos and small == 4
    return ok, (f"d in 2..16, counts {counts[0]}..{counts[-1]}: lower fit slope {env['lower_slope']:.4f} > 0, "
                f"residuals >= 0: {one_sided}; count(d_max=4, D=1) = {small}")


def criterion_5():
    grid = np.linspace(0.0, 20.0, 2001)
    logs = [min(0.0, arithmetic_fraction_bound(float(d)).log_bound) for d in grid]
    nonincreasing = all(b <= a for a, b in zip(logs, logs[1:]))
    below_one = [i for i, v in enumerate(logs) if v < 0]
    strict = all(b < a for a, b in zip(logs[below_one[0]:], logs[below_one[0] + 1:]))
    at20 = arithmetic_fraction_bound(20.0).log_bound
    target = -100 * math.log(10)
    ok = nonincreasing and strict and at20 < target
    return ok, (f"monotone on [0,20]: {nonincreasing and strict} (strict once below 1 at d={grid[below_one[0]]:.2f}), "
                f"log bound at d=20: {at20:.4g} < {target:.2f}")


def criterion_6():
    worst_q = max(abs(hy.ball_volume(n, R) / hy.ball_volume_closed(n, R) - 1)
                  for n in (2, 3) for R in (0.01, 0.1, 1, 5, 20))
    worst_inv = max(abs(hy.min_diameter_for_log_volume(n, hy.log_ball_volume(n, R)) / R - 1)
                    for n in (2, 3, 4, 5) for R in (0.01, 0.1, 1, 5, 20))
    worst_deg = max(abs(hy.degree_bound(n, 1e-4) / 9**n - 1) for n in (2, 3, 4, 5))
    ok = worst_q <= 1e-10 and worst_inv <= 1e-8 and worst_deg <= 1e-3
    return ok, (f"quadrature vs closed form max rel err {worst_q:.1e} (<=1e-10), "
                f"inverse round trip {worst_inv:.1e} (<=1e-8), degree/9^n {worst_deg:.1e} (<=1e-3)")


def _profile(c):
    return [(d.betti, d.torsion) for d in homology(c).degrees]


def criterion_7():
    t0 = time.perf_counter()
    expected = {
        "circle": [(1, ()), (1, ())],
        "sphere": [(1, ()), (0, ()), (1, ())],
        "torus": [(1, ()), (2, ()), (1, ())],
        "projective-plane": [(1, ()), (0, (2,)), (0, ())],
        "klein-bottle": [(1, ()), (1, (2,)), (0, ())],
    }
    wrong = [name for name, prof in expected.items() if _profile(corpus.CORPUS[name]()) != prof]
    rp2_min = corpus.projective_plane()
    cross = (rp2_min.f_vector() == [6, 15, 10]
             and _profile(corpus.projective_grid(4)) == _profile(rp2_min))
    dt = time.perf_counter() - t0
    ok = not wrong and cross and dt < 60
    return ok, (f"corpus exact: {not wrong}{' (wrong: ' + ', '.join(wrong) + ')' if wrong else ''}, "
                f"6-vertex RP2 agrees with a 17-vertex grid RP2: {cross}, {dt:.2f}s")


def criterion_8():
    t0 = time.perf_counter()
    space = projective_plane(2000)
    res = nerve_pipeline(space, 0.3, 0.45)
    verified = covers(res.net, 0.45) and "cover not verified" not in res.flags
    tors = res.homology.torsion(1)
    dt = time.perf_counter() - t0
    ok = tors == (2,) and verified and res.homology.trusted_up_to >= 1 and dt < 600
    return ok, (f"2000 points, sep 0.3, radius 0.45: {len(res.net.centers)} centers, H1 torsion {list(tors)}, "
                f"cover verified: {verified}, {dt:.1f}s")


def _pipeline_complexes():
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        return [
            ("RP2 0.3/0.45", nerve_pipeline(projective_plane(2000), 0.3, 0.45)),
            ("RP2 0.4/0.42", nerve_pipeline(projective_plane(2000), 0.4, 0.42, max_dim=8)),
            ("torus", nerve_pipeline(flat_torus(40), 0.2, 0.21, max_dim=6)),
            ("sphere", nerve_pipeline(round_sphere(1000), 0.6, 0.62, max_dim=6)),
        ]


def criterion_9():
    t0 = time.perf_counter()
    scans = [gabber_scan(12, 40, 2000, seed) for seed in range(5)]
    total = sum(len(s.records) for s in scans)
    finite = all(np.all(np.isfinite(s.ratios(p))) for s in scans for p in DEGREES)
    spread = {}
    for p in DEGREES:
        c = [s.constant(p) for s in scans]
        spread[p] = max(c) / min(c) - 1 if min(c) > 0 else math.inf
    stable = all(v <= 0.2 for v in spread.values())

    runs = _pipeline_complexes()
    cap = max(r.complex.max_degree for _, r in runs)
    wide = gabber_scan(cap, 40, 2000, 0)
    table = {12: scans[0].constants, cap: wide.constants}
    bad = []
    for name, r in runs:
        _, C = hy.lookup_gabber_constant(table, r.complex.max_degree)
        V = r.complex.n_vertices
        for p in range(1, min(max(DEGREES), r.homology.trusted_up_to) + 1):
            if r.homology.log_torsion(p) > C * V:
                bad.append(f"{name} p={p}")
    dt = time.perf_counter() - t0
    ok = total >= 10_000 and finite and stable and not bad
    consts = ", ".join(f"C{p} {scans[0].constant(p):.4f} (spread {spread[p]:.1%})" for p in DEGREES)
    return ok, (f"{total} complexes, D=12, V<=40, all ratios finite: {finite}; {consts}; "
                f"{len(runs)} nerve complexes (degree <= {cap}) under the scanned bound: {not bad}, {dt:.0f}s")


DETERMINISM_RUNS = [
    ["subgroups", "--oracle"],
    ["schreier", "sample", "--count", "5"],
    ["schreier", "enumerate"],
    ["schreier", "diam-stats"],
    ["gl", "count", "--ceiling", "9", "--dmax", "10"],
    ["gl", "fraction"],
    ["geom", "ball-volume"],
    ["geom", "torsion-bound"],
    ["geom", "sharpness"],
    ["homology", "--complex", "klein-bottle"],
    ["nerve"],
    ["gabber-scan"],
    ["curves", "--kind", "count-vs-diam"],
    ["curves", "--kind", "diam-vs-n"],
    ["curves", "--kind", "torsion-vs-vertices"],
]


def criterion_10(tmp_dir):
    from pathlib import Path
    import contextlib
    import io
    differ = []
    for argv in DETERMINISM_RUNS:
        outs = []
        for fmt in ("json", "csv"):
            for threads in ("1", "2"):
                path = Path(tmp_dir) / f"{'_'.join(argv)}.{threads}.{fmt}"
                with contextlib.redirect_stdout(io.StringIO()), contextlib.redirect_stderr(io.StringIO()):
                    code = cli.main(["--threads", threads, "--seed", "11", "--format", fmt, *argv, "--out", str(path)])
                outs.append((code, path.read_bytes() if code == 0 else b""))
        if any(code != 0 for code, _ in outs) or outs[0] != outs[1] or outs[2] != outs[3]:
            differ.append(" ".join(argv))
    ok = not differ
    return ok, (f"{len(DETERMINISM_RUNS)} subcommand configs x json/csv, threads 1 vs 2 byte-identical: {ok}"
                + (f" (differ: {'; '.join(differ)})" if differ else ""))


def _line(n, ok, detail):
    return f"[{'PASS' if ok else 'FAIL'}] criterion {n}: {detail}"


@pytest.mark.parametrize("n", range(1, 10))
def test_criterion(n, acceptance_log):
    ok, detail = globals()[f"criterion_{n}"]()
    acceptance_log(_line(n, ok, detail))
    print(_line(n, ok, detail))
    assert ok, detail


def test_criterion_10(tmp_path, acceptance_log):
    ok, detail = criterion_10(tmp_path)
    acceptance_log(_line(10, ok, detail))
    print(_line(10, ok, detail))
    assert ok, detail


if __name__ == "__main__":
    import tempfile
    for n in range(1, 10):
        print(_line(n, *globals()[f"criterion_{n}"]()), flush=True)
    with tempfile.TemporaryDirectory() as d:
        print(_line(10, *criterion_10(d)), flush=True)
