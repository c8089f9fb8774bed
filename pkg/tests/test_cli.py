import csv
import io
import json
import math
import time

import pytest

from torsdiam import cli
from torsdiam.subgroups import count_subgroups

# every subcommand at its default parameters
DEFAULT_RUNS = [
    ["subgroups"],
    ["schreier", "sample"],
    ["schreier", "enumerate"],
    ["schreier", "diam-stats"],
    ["gl", "count"],
    ["gl", "fraction"],
    ["geom", "ball-volume"],
    ["geom", "torsion-bound"],
    ["geom", "sharpness"],
    ["homology"],
    ["nerve"],
    ["gabber-scan"],
    ["curves"],
    ["curves", "--kind", "diam-vs-n"],
    ["curves", "--kind", "torsion-vs-vertices"],
]


def run(argv, capsys):
    code = cli.main(argv)
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize("argv", DEFAULT_RUNS, ids=lambda a: "-".join(a))
def test_smoke_defaults(argv, tmp_path, capsys):
    out = tmp_path / "out.dat"
    t = time.perf_counter()
    code, _, err = run(argv + ["--out", str(out)], capsys)
    assert code == 0, err
    assert time.perf_counter() - t < 60
    assert out.stat().st_size > 0
    manifest = json.loads((tmp_path / "out.dat.manifest.json").read_text())
    assert set(manifest) >= {"config", "config_hash", "seed", "versions", "wall_time_s", "output_sha256"}


def test_subgroups_csv(capsys):
    code, out, _ = run(["subgroups", "--max-index", "10"], capsys)
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and rows[9]["a_n"] == str(count_subgroups(10).a(10)) == "31998903"


def test_subgroups_two_columns(capsys):
    _, out, _ = run(["subgroups", "--max-index", "3"], capsys)
    assert out.splitlines() == ["n,a_n", "1,1", "2,3", "3,13"]


def test_sample_is_one_graph(capsys):
    _, out, _ = run(["schreier", "sample", "--n", "9"], capsys)
    g = json.loads(out)
    assert set(g) >= {"n", "sigma_a", "sigma_b", "base"} and g["n"] == 9


def test_diam_stats_summary_file(tmp_path, capsys):
    out = tmp_path / "d.csv"
    run(["schreier", "diam-stats", "--n", "27", "--trials", "10", "--out", str(out)], capsys)
    summary = json.loads((tmp_path / "d.csv.summary.json").read_text())
    assert set(summary) == {"n", "trials", "min", "median", "max", "frac_le_2log3"}


def test_ball_volume_log_space(capsys):
    _, out, _ = run(["geom", "ball-volume", "--n", "3", "--r", "800", "--log-space"], capsys)
    row = json.loads(out)["rows"][0]
    assert row["volume"] is None and math.isfinite(row["log_volume"])
    code, _, err = run(["geom", "ball-volume", "--n", "3", "--r", "800"], capsys)
    assert code == 3 and "log-space" in err


def test_subgroups_oracle_column(capsys):
    code, out, _ = run(["subgroups", "--max-index", "6", "--oracle"], capsys)
    rows = list(csv.DictReader(io.StringIO(out)))
    assert all(r["match"] == "True" for r in rows)


def test_gl_count_example(capsys):
    code, out, _ = run(["gl", "count", "--dmax", "4", "--ceiling", "2"], capsys)
    data = json.loads(out)
    assert data["exact"] == "4" and data["ceiling_too_low"] is True


def test_block_table_file(tmp_path, capsys):
    path = tmp_path / "blocks.json"
    path.write_text(json.dumps({"V0": 2.0, "V1": 1.0}))
    _, out, _ = run(["gl", "count", "--dmax", "8", "--ceiling", "2", "--block-table", str(path)], capsys)
    assert json.loads(out)["D"] == 2.0 and json.loads(out)["exact"] == "4"


def test_homology_file(tmp_path, capsys):
    path = tmp_path / "c.json"
    path.write_text(json.dumps({"vertices": 3, "simplices": {"1": [[0, 1], [1, 2], [0, 2]]}}))
    _, out, _ = run(["homology", "--complex", str(path)], capsys)
    assert json.loads(out)["degrees"]["1"] == {"betti": 1, "torsion": []}


def test_nerve_recovers_torsion(capsys):
    _, out, _ = run(["nerve"], capsys)
    data = json.loads(out)
    assert data["homology"]["degrees"]["1"]["torsion"] == ["2"]
    assert "cover not verified" not in data["flags"]


def test_big_values_are_strings(capsys):
    _, out, _ = run(["subgroups", "--max-index", "30", "--json"], capsys)
    assert json.loads(out)[-1] == str(count_subgroups(30).a(30))
    _, out, _ = run(["subgroups", "--max-index", "30", "--detail", "--format", "json"], capsys)
    assert json.loads(out)[-1]["t_n"] == str(count_subgroups(30).t(30))
    _, out, _ = run(["curves", "--format", "json"], capsys)
    assert json.loads(out)["rows"][0][1] == "-inf"


@pytest.mark.parametrize("argv, code, kind", [
    (["subgroups", "--oracle-max", "9"], 3, "scale-exceeded"),
    (["schreier", "enumerate", "--n", "8"], 3, "scale-exceeded"),
    (["gl", "count", "--ceiling", "0"], 2, "invalid-config"),
    (["homology", "--complex", "/nonexistent.json"], 2, "invalid-config"),
    (["nope"], 2, "invalid-config"),
    (["schreier", "diam-stats", "--n", "2"], 2, "invalid-config"),
    (["schreier", "sample", "--n", "60", "--rejection-cap", "1", "--count", "50"], 4, "rejection-cap-exceeded"),
    (["--threads", "0", "subgroups"], 2, "invalid-config"),
])
def test_exit_codes(argv, code, kind, capsys):
    got, _, err = run(argv, capsys)
    assert got == code
    obj = json.loads(err)
    assert obj["error"] == kind and obj["exit_code"] == code


def test_missing_gabber_constant(tmp_path, capsys):
    path = tmp_path / "t.json"
    path.write_text(json.dumps({"table": {"12": {"1": 0.1}}}))
    code, _, err = run(["geom", "torsion-bound", "--gabber-table", str(path)], capsys)
    assert code == 2 and "constant table missing" in json.loads(err)["message"]


def test_global_flags_after_subcommand(capsys):
    a = run(["--seed", "5", "schreier", "sample", "--n", "9"], capsys)[1]
    b = run(["schreier", "sample", "--n", "9", "--seed", "5"], capsys)[1]
    assert a == b


@pytest.mark.parametrize("argv", [
    ["schreier", "diam-stats", "--n", "243", "--trials", "40"],
    ["gabber-scan", "--trials", "200"],
    ["curves", "--kind", "diam-vs-n", "--ns", "27,81", "--trials", "20"],
    ["homology", "--complex", "klein-bottle"],
], ids=lambda a: "-".join(a[:2]))
def test_threads_do_not_change_output(argv, tmp_path, capsys):
    files = []
    for threads in ("1", "2"):
        out = tmp_path / f"o{threads}"
        assert run(["--threads", threads, "--seed", "7"] + argv + ["--out", str(out)], capsys)[0] == 0
        files.append(out)
    assert files[0].read_bytes() == files[1].read_bytes()
    m1, m2 = (json.loads((tmp_path / f"o{t}.manifest.json").read_text()) for t in "12")
    assert m1["config_hash"] == m2["config_hash"]
    assert m1["output_sha256"] == m2["output_sha256"]


def test_seed_changes_output(capsys):
    a = run(["schreier", "diam-stats", "--n", "81", "--trials", "30", "--seed", "1"], capsys)[1]
    b = run(["schreier", "diam-stats", "--n", "81", "--trials", "30", "--seed", "2"], capsys)[1]
    assert a != b
