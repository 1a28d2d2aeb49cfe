"""Command-line pipeline: generate datasets, walk, classify, measure, benchmark.

Every command writes plain CSV/JSON for external plotting. Outputs are a pure
function of the flags and the seed (timings excepted).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import sys
import tempfile
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from .bench import BENCH_COLUMNS, run_bench
from .classifier import ClassifierError, LabeledSample, loocv, pca_project
from .dataset import DatasetManifest, ManifestError, align_signatures, samples as manifest_samples
from .graph import GraphError
from .ingest import format_edge_list, parse_edge_list
from .metrics import (DEFAULT_REALIZATIONS, STRUCTURAL_NAMES, log_grid, metrics_report,
                      structural_features, ws_sweep)
from .signatures import joint_histogram, psi
from .walker import WalkerConfig, format_trace, trace, walk_all

log = logging.getLogger("touristwalk")

LABEL_COLUMNS = ("sample_id", "label", "path", "model", "n", "k", "p", "seed", "noise")
SWEEP_COLUMNS = ("N", "k", "p", "mu", "chi", "omega", "C", "mean_walk_len", "seeds")


class InputError(ValueError):
    pass


# ---------------------------------------------------------------- helpers

def _int_list(text):
    try:
        values = [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")
    if not values:
        raise argparse.ArgumentTypeError("empty list")
    return values


def _write_atomic(path, text):
    """Write via a temp file in the same directory so readers never see a partial file."""
    folder = os.path.dirname(os.path.abspath(path))
    os.makedirs(folder, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=folder, prefix=".tmp-")
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _csv_text(header, rows):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _fmt(x):
    # repr keeps floats exact so re-runs hash identically
    return repr(float(x)) if isinstance(x, (float, np.floating)) else x


def _pool_map(fn, items, jobs):
    """Ordered map, in worker processes when ``jobs > 1``."""
    if jobs <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items, chunksize=max(1, len(items) // (4 * jobs))))


def _graph_inputs(paths):
    """Expand graph files and dataset directories into (sample_id, label, path)."""
    out = []
    for path in paths:
        labels = os.path.join(path, "labels.csv")
        if os.path.isdir(path):
            if not os.path.exists(labels):
                raise InputError(f"{path} is a directory without labels.csv")
            with open(labels, newline="") as fh:
                for row in csv.DictReader(fh):
                    out.append((row["sample_id"], row["label"], os.path.join(path, row["path"])))
        else:
            sid = os.path.splitext(os.path.basename(path))[0]
            out.append((sid, "", path))
    if not out:
        raise InputError("no graphs given")
    return out


# --------------------------------------------------------------- generate

def _build_sample_file(job):
    sample, path = job
    g = sample.build()
    prov = " ".join(f"{k}={v}" for k, v in sample.provenance().items())
    _write_atomic(path, format_edge_list(g, header=f"{sample.sample_id} {sample.label} {prov}"))
    return path


def cmd_generate(args):
    if args.manifest:
        manifest = DatasetManifest.load(args.manifest)
    elif args.full_scale:
        manifest = DatasetManifest.full_scale()
    else:
        manifest = DatasetManifest.desk()
    if args.seed is not None:
        manifest.base_seed = args.seed
    if args.noise is not None:
        manifest.noise = args.noise
    if args.graphs_per_class is not None:
        manifest.graphs_per_class = args.graphs_per_class
    todo = manifest_samples(manifest.validate())

    gdir = os.path.join(args.out_dir, "graphs")
    os.makedirs(gdir, exist_ok=True)
    rel = [os.path.join("graphs", f"{s.sample_id}.edges") for s in todo]
    _pool_map(_build_sample_file, [(s, os.path.join(args.out_dir, r)) for s, r in zip(todo, rel)],
              args.jobs)

    rows = []
    for s, r in zip(todo, rel):
        prov = s.provenance()
        rows.append([s.sample_id, s.label, r, prov["model"], prov["n"], prov["k"],
                     _fmt(prov["p"]), prov["seed"], _fmt(prov["noise"])])
    _write_atomic(os.path.join(args.out_dir, "labels.csv"), _csv_text(LABEL_COLUMNS, rows))
    manifest.files = rel
    _write_atomic(os.path.join(args.out_dir, "manifest.json"), manifest.to_json() + "\n")
    print(f"wrote {len(todo)} graphs to {gdir}")
    return 0


# ------------------------------------------------------------------- walk

def _walk_one(job):
    path, mus = job
    g, _ = parse_edge_list(path)
    jhs = [joint_histogram(walk_all(g, WalkerConfig(mu))) for mu in mus]
    return g.n, jhs, psi(jhs, list(mus), g.n)


def cmd_walk(args):
    inputs = _graph_inputs(args.inputs)
    results = _pool_map(_walk_one, [(p, args.mu) for _, _, p in inputs], args.jobs)
    sigs = align_signatures([r[2] for r in results])

    hdir = os.path.join(args.out_dir, "histograms")
    os.makedirs(hdir, exist_ok=True)
    for (sid, _, _), (_, jhs, _) in zip(inputs, results):
        for mu, jh in zip(args.mu, jhs):
            rows = [(t, a, _fmt(m)) for (t, a), m in jh.counts.items()]
            _write_atomic(os.path.join(hdir, f"{sid}_mu{mu}.csv"), _csv_text(("t", "a", "mass"), rows))

    header = ["sample_id", "label"] + sigs[0].column_names()
    rows = [[sid, label] + [_fmt(v) for v in sv.values] for (sid, label, _), sv in zip(inputs, sigs)]
    _write_atomic(os.path.join(args.out_dir, "signatures.csv"), _csv_text(header, rows))

    if args.trace is not None:
        for sid, _, path in inputs:
            g, _ = parse_edge_list(path)
            for mu in args.mu:
                outcome, visited = trace(g, args.trace, WalkerConfig(mu))
                print(f"{sid} mu={mu} {format_trace(args.trace, outcome, visited)}")
    print(f"wrote signatures for {len(inputs)} graphs to {args.out_dir}")
    return 0


# ------------------------------------------------------------- structural

def _structural_one(path):
    g, _ = parse_edge_list(path)
    return structural_features(g).as_array()


def cmd_structural(args):
    inputs = _graph_inputs(args.inputs)
    feats = _pool_map(_structural_one, [p for _, _, p in inputs], args.jobs)
    rows = [[sid, label] + [_fmt(v) for v in f] for (sid, label, _), f in zip(inputs, feats)]
    out = os.path.join(args.out_dir, "structural.csv")
    _write_atomic(out, _csv_text(("sample_id", "label") + STRUCTURAL_NAMES, rows))
    print(f"wrote {out}")
    return 0


# --------------------------------------------------------------- classify

def read_features(path):
    """Load a ``sample_id,label,<features...>`` CSV into labelled samples."""
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if not header or header[:2] != ["sample_id", "label"]:
            raise InputError(f"{path}: header must start with sample_id,label")
        out = []
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != len(header):
                raise InputError(f"{path} line {lineno}: mixed feature lengths "
                                 f"({len(row) - 2} values, header has {len(header) - 2})")
            try:
                values = np.array([float(v) for v in row[2:]])
            except ValueError as exc:
                raise InputError(f"{path} line {lineno}: {exc}")
            out.append(LabeledSample(values, row[1], row[0]))
    return out, header[2:]


def cmd_classify(args):
    data, _ = read_features(args.features)
    if len(data) < 3:
        raise InputError(f"need at least 3 samples, got {len(data)}")
    if len({s.label for s in data}) < 2:
        raise InputError("features hold a single class; classification needs at least two")
    standardize = args.standardize if args.standardize is not None else args.method == "structural"
    shrinkage = None if args.shrinkage == "none" else args.shrinkage
    if shrinkage not in (None, "auto"):
        shrinkage = float(shrinkage)
    report = loocv(data, shrinkage=shrinkage, reg=args.reg, standardize=standardize)
    report.notes.append(f"method={args.method}")

    os.makedirs(args.out_dir, exist_ok=True)
    _write_atomic(os.path.join(args.out_dir, "report.json"),
                  json.dumps(report.to_dict(), indent=2) + "\n")
    conf_rows = [[lab] + row for lab, row in zip(report.labels, report.confusion)]
    _write_atomic(os.path.join(args.out_dir, "confusion.csv"),
                  _csv_text(["true\\pred"] + report.labels, conf_rows))
    coords, _ = pca_project(data, dims=2)
    pca_rows = [[s.sample_id, s.label, _fmt(x), _fmt(y)] for s, (x, y) in zip(data, coords)]
    _write_atomic(os.path.join(args.out_dir, "pca.csv"),
                  _csv_text(("sample_id", "label", "x", "y"), pca_rows))
    print(f"accuracy {report.accuracy_mean:.1f} (+/- {report.accuracy_std:.1f}) "
          f"over {report.n_samples} samples")
    return 0


# ----------------------------------------------------------------- metric

def cmd_metric(args):
    if args.sweep:
        if args.n is None or args.k is None:
            raise InputError("sweep mode needs --n and --k")
        ps = log_grid(args.p_min, args.p_max, args.points)
        rows = ws_sweep(args.n, args.k, ps, args.mu, args.seeds, args.realizations, args.seed)
        text = _csv_text(SWEEP_COLUMNS, [[_fmt(r[c]) for c in SWEEP_COLUMNS] for r in rows])
    else:
        if args.graph is None:
            raise InputError("give a graph file or --sweep")
        g, _ = parse_edge_list(args.graph)
        reports = [metrics_report(g, WalkerConfig(mu), args.realizations, args.seed,
                                  with_omega=not args.no_omega).to_dict() for mu in args.mu]
        text = json.dumps(reports[0] if len(reports) == 1 else reports, indent=2) + "\n"
    if args.out:
        _write_atomic(args.out, text)
    else:
        sys.stdout.write(text)
    return 0


# ------------------------------------------------------------------ bench

def cmd_bench(args):
    rows = run_bench(args.sizes, args.p, args.mu, args.repeats, args.k, args.realizations, args.seed)
    text = _csv_text(BENCH_COLUMNS, [[r[c] if c != "median_ms" else f"{r[c]:.3f}"
                                      for c in BENCH_COLUMNS] for r in rows])
    if args.out:
        _write_atomic(args.out, text)
    else:
        sys.stdout.write(text)
    return 0


# ------------------------------------------------------------------- main

def build_parser():
    parser = argparse.ArgumentParser(prog="touristwalk", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def jobs(p):
        p.add_argument("--jobs", type=int, default=1, help="worker processes")

    p = sub.add_parser("generate", help="write a synthetic labelled dataset")
    p.add_argument("--manifest", help="dataset manifest JSON (default: desk-scale grid)")
    p.add_argument("--out-dir", required=True)
    p.add_argument("--seed", type=int, help="override the manifest base seed")
    p.add_argument("--paper-scale", dest="full_scale", action="store_true", help="full size/degree grid, 2800 graphs per class")
    p.add_argument("--noise", type=float, help="edge noise rate applied to every class")
    p.add_argument("--graphs-per-class", type=int)
    jobs(p)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("walk", help="tourist-walk signatures and joint histograms")
    p.add_argument("inputs", nargs="+", help="edge-list files or dataset directories")
    p.add_argument("--mu", type=_int_list, default=[1, 2, 3, 4, 5], help="memories, e.g. 1,2,3")
    p.add_argument("--out-dir", required=True)
    p.add_argument("--trace", type=int, metavar="NODE", help="print the walk launched from NODE")
    jobs(p)
    p.set_defaults(func=cmd_walk)

    p = sub.add_parser("structural", help="structural feature vectors")
    p.add_argument("inputs", nargs="+")
    p.add_argument("--out-dir", required=True)
    jobs(p)
    p.set_defaults(func=cmd_structural)

    p = sub.add_parser("classify", help="LDA with leave-one-out evaluation")
    p.add_argument("features", help="CSV from 'walk' or 'structural'")
    p.add_argument("--method", choices=("dtw", "structural"), required=True)
    p.add_argument("--out-dir", required=True)
    p.add_argument("--shrinkage", default="auto", help="'auto' (Ledoit-Wolf), 'none', or a weight in [0, 1]")
    p.add_argument("--reg", type=float, default=1e-6, help="ridge used when shrinkage is 'none'")
    std = p.add_mutually_exclusive_group()
    std.add_argument("--standardize", dest="standardize", action="store_true", default=None)
    std.add_argument("--no-standardize", dest="standardize", action="store_false")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("metric", help="chi and omega for a graph, or a Watts-Strogatz sweep")
    p.add_argument("graph", nargs="?")
    p.add_argument("--mu", type=_int_list, default=[1])
    p.add_argument("--realizations", type=int, default=DEFAULT_REALIZATIONS)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--no-omega", action="store_true")
    p.add_argument("--out")
    p.add_argument("--sweep", action="store_true")
    p.add_argument("--n", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--p-min", type=float, default=1e-4)
    p.add_argument("--p-max", type=float, default=1.0)
    p.add_argument("--points", type=int, default=20)
    p.add_argument("--seeds", type=int, default=5)
    p.set_defaults(func=cmd_metric)

    p = sub.add_parser("bench", help="time chi against omega")
    p.add_argument("--sizes", type=_int_list, default=[100, 1000, 10000])
    p.add_argument("--p", type=float, default=0.05)
    p.add_argument("--mu", type=_int_list, default=[1, 2, 3])
    p.add_argument("--repeats", type=int, default=3)
    p.add_argument("--k", type=int, default=10)
    p.add_argument("--realizations", type=int, default=DEFAULT_REALIZATIONS)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (InputError, ManifestError, ClassifierError, GraphError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
