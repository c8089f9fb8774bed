"""Command-line entry point: ``torsdiam <subcommand> [options]``.

Every subcommand produces one data file (JSON or CSV) on stdout or at
``--out``. With ``--out`` a manifest ``<out>.manifest.json`` is written next
to it. Data files never depend on ``--threads`` or on the clock; the wall
time lives only in the manifest.
"""
from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import math
import platform
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import __version__, hyperbolic, kernels
from .complexes import corpus
from .complexes.gabber import DEGREES, gabber_scan, hadamard_gabber_constant, load_table
from .complexes.homology import homology
from .complexes.metric import MODELS, build_model
from .complexes.pipeline import nerve_pipeline
from .complexes.simplicial import SimplicialComplex
from .curves import KINDS, emit_curves
from .errors import ConfigError, ScaleExceeded, TorsdiamError
from .gl_model import BlockTable, arithmetic_fraction_bound, count_noncommensurable
from .schreier import (diameter_statistics, enumerate_subgroups, graph_canonical_form,
                       graph_diameter, sample_schreier)
from .seeding import derive_seed
from .subgroups import BRUTE_FORCE_CEILING, count_subgroups, count_transitive_pairs_bruteforce

# not part of the experiment identity
_VOLATILE = ("out", "threads", "handler")


@dataclass
class Output:
    data: object
    header: list[str] = field(default_factory=list)
    rows: list[list] = field(default_factory=list)
    default_format: str = "json"
    # suffix -> JSON payload, written next to --out
    extras: dict = field(default_factory=dict)


def _clean(obj):
    """JSON-safe copy: non-finite floats and big ints become strings."""
    if isinstance(obj, float):
        return obj if math.isfinite(obj) else repr(obj)
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        v = int(obj)
        return v if abs(v) < 2**53 else str(v)
    if isinstance(obj, np.floating):
        return _clean(float(obj))
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, np.ndarray)):
        return [_clean(v) for v in obj]
    return obj


def _cell(v) -> str:
    if isinstance(v, (float, np.floating)):
        return repr(float(v))
    if isinstance(v, (list, tuple)):
        return " ".join(str(x) for x in v)
    return str(v)


def render(out: Output, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(_clean(out.data), indent=2, sort_keys=True) + "\n"
    if not out.header:
        raise ConfigError("this subcommand has no CSV form; use --format json")
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(out.header)
    for row in out.rows:
        w.writerow([_cell(v) for v in row])
    return buf.getvalue()


def _read_json(path):
    try:
        return json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read {path}: {exc}") from exc


# ---- subcommand handlers ---------------------------------------------------

def cmd_subgroups(args) -> Output:
    """Plain run: (n, a_n). --detail adds t_n and the ratio, --oracle the brute-force check."""
    table = count_subgroups(args.max_index)
    oracle_max = args.oracle_max if args.oracle_max is not None else (
        min(args.max_index, 7) if args.oracle else 0)
    oracle = {}
    for n in range(1, min(oracle_max, args.max_index) + 1):
        oracle[n] = count_transitive_pairs_bruteforce(n, ceiling=BRUTE_FORCE_CEILING, threads=args.threads)
    detail = args.detail or bool(oracle)
    if not detail:
        a = [str(table.a(n)) for n in range(1, args.max_index + 1)]
        return Output(a, ["n", "a_n"], [[n, v] for n, v in enumerate(a, start=1)], "csv")
    header = ["n", "a_n", "t_n", "ratio"] + (["oracle_t_n", "match"] if oracle else [])
    rows, items = [], []
    for n in range(1, args.max_index + 1):
        item = {"n": n, "a_n": str(table.a(n)), "t_n": str(table.t(n)), "ratio": table.ratio(n)}
        if oracle:
            o = oracle.get(n)
            item["oracle_t_n"] = "" if o is None else str(o)
            item["match"] = "" if o is None else o == table.t(n)
        rows.append([item[k] for k in header])
        items.append(item)
    return Output(items, header, rows, "csv")


def _graph_row(i, g):
    return [i, g.n_vertices, graph_diameter(g), list(g.sigma_a), list(g.sigma_b),
            graph_canonical_form(g).hex()]


_GRAPH_HEADER = ["index", "n", "diameter", "sigma_a", "sigma_b", "canonical"]


def _graph_json(i, g):
    return {**g.to_json(), "diameter": graph_diameter(g), "canonical": graph_canonical_form(g).hex()}


def cmd_schreier_sample(args) -> Output:
    graphs = [sample_schreier(args.n, derive_seed(args.seed, i), rejection_cap=args.rejection_cap)
              for i in range(args.count)]
    items = [_graph_json(i, g) for i, g in enumerate(graphs)]
    data = items[0] if len(items) == 1 else items
    return Output(data, _GRAPH_HEADER, [_graph_row(i, g) for i, g in enumerate(graphs)], "json")


def cmd_schreier_enumerate(args) -> Output:
    graphs = enumerate_subgroups(args.n, ceiling=args.ceiling)
    return Output({"n": args.n, "count": len(graphs),
                   "graphs": [_graph_json(i, g) for i, g in enumerate(graphs)]},
                  _GRAPH_HEADER, [_graph_row(i, g) for i, g in enumerate(graphs)], "csv")


def cmd_schreier_diam_stats(args) -> Output:
    st = diameter_statistics(args.n, args.trials, args.seed, threads=args.threads,
                             rejection_cap=args.rejection_cap)
    rows = [[t, d] for t, d in enumerate(st.diameters)]
    return Output({**st.summary(), "seed": args.seed, "diameters": list(st.diameters)},
                  ["trial", "diameter"], rows, "csv", extras={"summary": st.summary()})


def _blocks(args) -> BlockTable:
    if args.block_table:
        return BlockTable.from_json(_read_json(args.block_table))
    return BlockTable.uniform(args.D)


def cmd_gl_count(args) -> Output:
    rep = count_noncommensurable(args.dmax, _blocks(args), args.ceiling,
                                 trials=args.trials, seed=args.seed)
    header = ["n", "a_n", "kind", "admitted", "fraction", "estimate", "stderr"]
    rows = [[r["n"], r["a_n"], r["kind"], r.get("admitted", ""), r.get("fraction", ""),
             r.get("estimate", ""), r.get("stderr", "")] for r in rep.per_n]
    return Output(rep.to_json(), header, rows, "json")


def cmd_gl_fraction(args) -> Output:
    ds = args.d if args.d else [float(x) for x in range(1, 21)]
    res = [arithmetic_fraction_bound(d, args.cn, args.beta, args.eps, args.cprime) for d in ds]
    rows = [[r.d, r.log_bound, r.fraction] for r in res]
    data = {"constants": {"C_n": args.cn, "beta": args.beta, "eps": args.eps, "C_prime": args.cprime},
            "rows": [{"d": r.d, "log_bound": r.log_bound, "fraction": r.fraction} for r in res]}
    return Output(data, ["d", "log_bound", "fraction"], rows, "json")


def cmd_geom_ball_volume(args) -> Output:
    """Both fields always; linear overflow is an error unless --log-space, which nulls it."""
    header = ["n", "R", "volume", "log_volume", "closed_form"]
    items = []
    for R in args.R:
        vol = hyperbolic.ball_volume(args.n, R)
        if math.isinf(vol):
            if not args.log_space:
                raise ScaleExceeded(f"volume at R={R} overflows a double; rerun with --log-space")
            vol = None
        closed = hyperbolic.ball_volume_closed(args.n, R) if args.n in (2, 3) and vol is not None else None
        items.append({"n": args.n, "R": R, "volume": vol,
                      "log_volume": hyperbolic.log_ball_volume(args.n, R), "closed_form": closed})
    rows = [["" if it[k] is None else it[k] for k in header] for it in items]
    return Output({"rows": items}, header, rows, "json")


def _gabber_table_for(args, degree: int):
    if args.gabber_table:
        return load_table(_read_json(args.gabber_table))
    return {degree: {p: hadamard_gabber_constant(degree, p) for p in DEGREES}}


def cmd_geom_torsion_bound(args) -> Output:
    params = hyperbolic.GeometryParams(n=args.n, diam=args.diam, vol=args.vol, C_inj=args.c_inj)
    table = _gabber_table_for(args, hyperbolic.required_degree_cap(args.n))
    tb = hyperbolic.torsion_bound(args.n, args.diam, params, table)
    data = tb.to_json()
    data["gabber_source"] = args.gabber_table or "hadamard"
    return Output(data, list(data), [[data[k] for k in data]], "json")


def cmd_geom_sharpness(args) -> Output:
    s = hyperbolic.SharpnessParams(args.A, args.B, args.lambda1)
    res = [hyperbolic.sharpness_chain(t, s) for t in args.target]
    cols = ["target", "diam_at_target", "envelope", "slope", "offset"]
    rows = [[getattr(r, c) for c in cols] for r in res]
    return Output({"A": s.A, "B": s.B, "rows": [r.to_json() for r in res]}, cols, rows, "json")


def _complex(source: str) -> SimplicialComplex:
    if source in corpus.CORPUS:
        return corpus.CORPUS[source]()
    try:
        return SimplicialComplex.from_json(source)
    except OSError as exc:
        raise ConfigError(f"{source!r} is neither a corpus name ({', '.join(corpus.CORPUS)}) "
                          f"nor a readable file: {exc}") from exc


def _homology_rows(h):
    return [[p, d.betti, list(d.torsion), h.log_torsion(p)] for p, d in enumerate(h.degrees)]


def cmd_homology(args) -> Output:
    c = _complex(args.complex)
    h = homology(c, args.threads)
    data = {"complex": args.complex, "f_vector": c.f_vector(), "max_degree": c.max_degree,
            "euler_characteristic": c.euler_characteristic(), **h.to_json()}
    return Output(data, ["degree", "betti", "torsion", "log_torsion"], _homology_rows(h), "json")


def cmd_nerve(args) -> Output:
    space = build_model(args.model, args.points, args.dims)
    table = load_table(_read_json(args.gabber_table)) if args.gabber_table else "hadamard"
    res = nerve_pipeline(space, args.sep, args.radius, max_dim=args.max_dim,
                         gabber_table=table, threads=args.threads)
    data = {"model": args.model, "points": space.n_points, "sep": args.sep, "radius": args.radius,
            "gabber_source": args.gabber_table or "hadamard", **res.to_json()}
    return Output(data, ["degree", "betti", "torsion", "log_torsion"], _homology_rows(res.homology), "json")


def cmd_gabber_scan(args) -> Output:
    scan = gabber_scan(args.degree, args.vmax, args.trials, args.seed, args.threads)
    header = ["trial", "family", "vertices", "max_degree"] + [f"log_torsion_{p}" for p in DEGREES]
    rows = [[r.trial, r.family, r.vertices, r.max_degree, *r.log_torsion] for r in scan.records]
    return Output(scan.to_json(), header, rows, "json")


def cmd_curves(args) -> Output:
    params = {"dmin": args.dmin, "dmax": args.dmax, "step": args.step, "D": args.D,
              "ceiling": args.ceiling, "ns": args.ns, "trials": args.trials,
              "degree": args.degree, "vmax": args.vmax}
    header, rows, meta = emit_curves(args.kind, params, args.seed, args.threads)
    data = {"kind": args.kind, "meta": meta, "columns": header, "rows": rows}
    return Output(data, header, rows, "csv")


# ---- parser ----------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ConfigError(f"{self.prog}: {message}")


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from exc


def _globals(p: argparse.ArgumentParser, top: bool) -> None:
    d = (lambda v: v) if top else (lambda v: argparse.SUPPRESS)
    p.add_argument("--seed", type=int, default=d(0), help="64-bit experiment seed")
    p.add_argument("--threads", type=int, default=d(1), help="worker processes")
    p.add_argument("--format", choices=("json", "csv"), default=d(None),
                   help="output format (default depends on the subcommand)")
    p.add_argument("--out", default=d(None), help="output file; stdout if omitted")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="torsdiam", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"torsdiam {__version__}")
    _globals(parser, True)
    common = _Parser(add_help=False)
    _globals(common, False)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(subparsers, name, handler, help_):
        sp = subparsers.add_parser(name, parents=[common], help=help_)
        sp.set_defaults(handler=handler)
        return sp

    sp = add(sub, "subgroups", cmd_subgroups, "index-N subgroup counts of F2")
    sp.add_argument("--max-index", type=int, default=10)
    sp.add_argument("--oracle", action="store_true", help="brute-force check up to min(max-index, 7)")
    sp.add_argument("--detail", action="store_true", help="add t_n and a_n / (n n!) columns")
    sp.add_argument("--json", dest="format", action="store_const", const="json",
                    help="same as --format json")
    sp.add_argument("--oracle-max", type=int, default=None, help="brute-force check up to this index")

    sch = sub.add_parser("schreier", help="Schreier graphs").add_subparsers(
        dest="action", required=True, parser_class=_Parser)
    sp = add(sch, "sample", cmd_schreier_sample, "uniform random Schreier graphs")
    sp.add_argument("--n", type=int, default=27)
    sp.add_argument("--count", type=int, default=1)
    sp.add_argument("--rejection-cap", type=int, default=1000)
    sp = add(sch, "enumerate", cmd_schreier_enumerate, "all Schreier graphs of index n")
    sp.add_argument("--n", type=int, default=4)
    sp.add_argument("--ceiling", type=int, default=7)
    sp = add(sch, "diam-stats", cmd_schreier_diam_stats, "diameter statistics of random graphs")
    sp.add_argument("--n", type=int, default=729)
    sp.add_argument("--trials", type=int, default=200)
    sp.add_argument("--rejection-cap", type=int, default=1000)

    gl = sub.add_parser("gl", help="glued-manifold model").add_subparsers(
        dest="action", required=True, parser_class=_Parser)
    sp = add(gl, "count", cmd_gl_count, "count model manifolds under a diameter bound")
    sp.add_argument("--dmax", type=float, default=4.0)
    sp.add_argument("--ceiling", type=int, default=7)
    sp.add_argument("--block-table", default=None, help="JSON file of block diameters")
    sp.add_argument("--D", type=float, default=1.0, help="uniform block diameter if no table")
    sp.add_argument("--trials", type=int, default=200, help="samples per index above 7")
    sp = add(gl, "fraction", cmd_gl_fraction, "bound on the arithmetic fraction")
    sp.add_argument("--d", type=float, nargs="+", default=None)
    sp.add_argument("--cn", type=float, default=1.0)
    sp.add_argument("--beta", type=float, default=1.0)
    sp.add_argument("--eps", type=float, default=0.1)
    sp.add_argument("--cprime", type=float, default=0.5)

    geom = sub.add_parser("geom", help="hyperbolic formula layer").add_subparsers(
        dest="action", required=True, parser_class=_Parser)
    sp = add(geom, "ball-volume", cmd_geom_ball_volume, "volume of hyperbolic balls")
    sp.add_argument("--n", type=int, default=3)
    sp.add_argument("--r", "--R", dest="R", type=float, nargs="+", default=[0.01, 0.1, 1.0, 5.0, 20.0])
    sp.add_argument("--log-space", action="store_true", help="allow radii whose linear volume overflows (reported as null)")
    sp = add(geom, "torsion-bound", cmd_geom_torsion_bound, "assembled torsion bound")
    sp.add_argument("--n", type=int, default=3)
    sp.add_argument("--diam", type=float, default=10.0)
    sp.add_argument("--vol", type=float, default=None)
    sp.add_argument("--c-inj", type=float, default=1.0)
    sp.add_argument("--gabber-table", default=None, help="scan JSON; Hadamard constants if omitted")
    sp = add(geom, "sharpness", cmd_geom_sharpness, "diameter vs torsion for congruence towers")
    sp.add_argument("--a", "--A", dest="A", type=float, default=1.0)
    sp.add_argument("--b", "--B", dest="B", type=float, default=hyperbolic.SharpnessParams(1.0).B)
    sp.add_argument("--lambda1", type=float, default=1.0)
    sp.add_argument("--target", type=float, nargs="+", default=[1.0, 10.0, 100.0, 1000.0])

    sp = add(sub, "homology", cmd_homology, "integral homology of a complex")
    sp.add_argument("--complex", default="projective-plane",
                    help=f"JSON file or one of: {', '.join(corpus.CORPUS)}")

    sp = add(sub, "nerve", cmd_nerve, "net, nerve and homology of a metric model")
    sp.add_argument("--model", choices=[m for m in MODELS if m != "explicit-matrix"],
                    default="projective-plane")
    sp.add_argument("--points", type=int, default=2000)
    sp.add_argument("--dims", type=int, default=2)
    sp.add_argument("--sep", type=float, default=0.3)
    sp.add_argument("--radius", type=float, default=0.45)
    sp.add_argument("--max-dim", type=int, default=2)
    sp.add_argument("--gabber-table", default=None)

    sp = add(sub, "gabber-scan", cmd_gabber_scan, "empirical torsion constants")
    sp.add_argument("--degree", type=int, default=12)
    sp.add_argument("--vmax", type=int, default=40)
    sp.add_argument("--trials", type=int, default=2000)

    sp = add(sub, "curves", cmd_curves, "plot-ready data for the growth curves")
    sp.add_argument("--kind", choices=KINDS, default="count-vs-diam")
    sp.add_argument("--dmin", type=float, default=None)
    sp.add_argument("--dmax", type=float, default=None)
    sp.add_argument("--step", type=float, default=None)
    sp.add_argument("--D", type=float, default=None)
    sp.add_argument("--ceiling", type=int, default=None)
    sp.add_argument("--ns", type=_int_list, default=None)
    sp.add_argument("--trials", type=int, default=None)
    sp.add_argument("--degree", type=int, default=None)
    sp.add_argument("--vmax", type=int, default=None)
    return parser


def config_of(args) -> dict:
    return {k: v for k, v in sorted(vars(args).items()) if k not in _VOLATILE}


def config_hash(cfg: dict) -> str:
    return hashlib.sha256(json.dumps(_clean(cfg), sort_keys=True).encode()).hexdigest()


def _versions() -> dict:
    import numba
    return {"torsdiam": __version__, "python": platform.python_version(),
            "numpy": np.__version__, "numba": numba.__version__, "kernel_backend": kernels.BACKEND}


def run(argv=None) -> int:
    t0 = time.perf_counter()
    args = build_parser().parse_args(argv)
    if args.threads < 1:
        raise ConfigError("--threads must be >= 1")
    out = args.handler(args)
    fmt = args.format or out.default_format
    text = render(out, fmt)
    if args.out is None:
        sys.stdout.write(text)
        return 0
    path = Path(args.out)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text)
    cfg = {**config_of(args), "format": fmt}
    manifest = {
        "config": cfg,
        "config_hash": config_hash(cfg),
        "seed": args.seed,
        "format": fmt,
        "output": str(path),
        "output_sha256": hashlib.sha256(text.encode()).hexdigest(),
        "versions": _versions(),
        "threads": args.threads,
        "wall_time_s": time.perf_counter() - t0,
    }
    for suffix, payload in out.extras.items():
        Path(f"{path}.{suffix}.json").write_text(json.dumps(_clean(payload), indent=2, sort_keys=True) + "\n")
    Path(str(path) + ".manifest.json").write_text(json.dumps(_clean(manifest), indent=2, sort_keys=True) + "\n")
    return 0


def main(argv=None) -> int:
    try:
        return run(argv)
    except SystemExit as exc:  # --help / --version
        return int(exc.code or 0)
    except TorsdiamError as exc:
        err = {"error": exc.kind, "message": str(exc), "exit_code": exc.exit_code}
    except Exception as exc:  # noqa: BLE001 - reported as an internal error
        err = {"error": "internal", "message": f"{type(exc).__name__}: {exc}", "exit_code": 4}
    sys.stderr.write(json.dumps(err) + "\n")
    return err["exit_code"]


if __name__ == "__main__":
    sys.exit(main())
