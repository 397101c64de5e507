"""Batch front end.

``gapdet run <config.json>`` executes one job described by a JSON
document; ``gapdet check equivalence|derivatives|pde --preset <name>``
runs a named verification; ``gapdet tw-oracle --s <real>`` compares the
single-time determinant against the independent Tracy-Widom oracle.
Exit code 0 means every requested tolerance was met.
"""

from __future__ import annotations

import argparse
import concurrent.futures
import copy
import csv
import json
import logging
import os
import sys
import time

import numpy as np

from . import isomono, pdecheck, tracy_widom
from .airy import AiryEndpoints
from .gap import airy_gap_probability, equivalence_report, pearcey_gap_probability
from .pearcey import PearceyEndpoints

log = logging.getLogger("gapdet")

_TASKS = ("det", "equivalence", "derivatives", "pde", "tw-oracle", "sweep")

_DEFAULT_TOL = {
    "equivalence": 1e-6,
    "derivatives": 1e-4,
    "pde": 1e-3,
    "tw-oracle": 1e-8,
    "imag": 1e-8,
}

_PRESETS = {
    "equivalence": {
        "airy-two-time": {
            "process": "airy", "times": [0.0, 1.0],
            "intervals": [[0.0], [0.5]], "task": "equivalence",
            "quadrature": {"m": 120},
        },
        "pearcey-two-time": {
            "process": "pearcey", "times": [0.0, 1.0],
            "intervals": [[-1.0, 1.0], [-1.0, 1.0]], "task": "equivalence",
            "quadrature": {"m": 100},
        },
    },
    "derivatives": {
        "airy-n2": {
            "process": "airy", "times": [0.0, 1.0],
            "intervals": [[0.0], [0.0]], "task": "derivatives",
            "quadrature": {"m": 160},
        },
        "pearcey-n1": {
            "process": "pearcey", "times": [0.0],
            "intervals": [[-1.0, 1.0]], "task": "derivatives",
            "quadrature": {"m": 120},
        },
        "pearcey-n2": {
            "process": "pearcey", "times": [0.0, 1.0],
            "intervals": [[-1.0, 1.0], [-1.0, 1.0]], "task": "derivatives",
            "quadrature": {"m": 120},
        },
    },
    "pde": {
        "avm-center": {
            "process": "airy", "times": [0.0, 1.0],
            "intervals": [[0.3], [0.1]], "task": "pde",
            "pde": {"center": [1.0, 0.2, 0.1], "steps": [0.04, 0.02],
                    "radius": 2},
            "quadrature": {"m": 120},
        },
    },
}


class ConfigError(ValueError):
    """Invalid job configuration."""


def _require(cond, msg):
    if not cond:
        raise ConfigError(msg)


def validate_config(cfg):
    """Field-level validation; returns a normalized copy."""
    cfg = copy.deepcopy(cfg)
    _require(isinstance(cfg, dict), "config must be a JSON object")
    task = cfg.get("task", "det")
    _require(task in _TASKS, f"task: expected one of {_TASKS}, got {task!r}")
    cfg["task"] = task
    if task != "tw-oracle":
        process = cfg.get("process")
        _require(process in ("airy", "pearcey"),
                 f"process: expected 'airy' or 'pearcey', got {process!r}")
        times = cfg.get("times")
        _require(isinstance(times, list) and times,
                 "times: need a non-empty list of reals")
        _require(all(b > a for a, b in zip(times, times[1:])),
                 "times: must be strictly increasing")
        intervals = cfg.get("intervals")
        _require(isinstance(intervals, list) and len(intervals) == len(times),
                 "intervals: need one endpoint list per time")
        # endpoint parity/sorting is enforced by the endpoint classes
        try:
            if process == "airy":
                AiryEndpoints(intervals)
            else:
                PearceyEndpoints(intervals)
        except ValueError as exc:
            raise ConfigError(f"intervals: {exc}") from exc
    quad = cfg.setdefault("quadrature", {})
    _require(isinstance(quad, dict), "quadrature: must be an object")
    for key in ("m",):
        if key in quad:
            _require(int(quad[key]) >= 4, f"quadrature.{key}: must be >= 4")
    for key in ("truncation_radius", "delta", "t_cut"):
        if key in quad:
            _require(float(quad[key]) > 0,
                     f"quadrature.{key}: must be positive")
    cfg.setdefault("tolerances", {})
    return cfg


def _quad_kwargs(cfg, process):
    quad = cfg.get("quadrature", {})
    kw = {"m": int(quad.get("m", 80))}
    if "truncation_radius" in quad:
        kw["radius"] = float(quad["truncation_radius"])
    if process == "airy":
        if "deform" in quad:
            kw["deform"] = bool(quad["deform"])
        if "t_cut" in quad:
            kw["t_cut"] = float(quad["t_cut"])
    if process == "pearcey" and "delta" in quad:
        kw["delta"] = float(quad["delta"])
    return kw


def _complex_fields(z):
    return {"re": z.real, "im": z.imag}


def _gap(cfg, representation="iiks"):
    process = cfg["process"]
    kw = _quad_kwargs(cfg, process)
    fn = airy_gap_probability if process == "airy" else pearcey_gap_probability
    return fn(cfg["times"], cfg["intervals"],
              representation=representation, **kw)


def _sanitize(obj):
    """JSON-encodable copy (numpy scalars to floats, tuple keys to str)."""
    if isinstance(obj, dict):
        return {str(k): _sanitize(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_sanitize(v) for v in obj]
    if isinstance(obj, complex):
        return _complex_fields(obj)
    if isinstance(obj, (np.floating, np.integer)):
        return float(obj)
    if isinstance(obj, np.ndarray):
        return [_sanitize(v) for v in obj.tolist()]
    return obj


def run_task(cfg):
    """Execute one validated job; returns a result record (dict)."""
    t0 = time.time()
    task = cfg["task"]
    tol = {**_DEFAULT_TOL, **cfg.get("tolerances", {})}
    record = {"config": copy.deepcopy(cfg), "task": task}
    passed = True
    if task == "det":
        res = _gap(cfg)
        record["det"] = _complex_fields(res.value)
        record["log_det"] = _complex_fields(res.log_value)
        record["diagnostics"] = _sanitize(res.diagnostics)
        passed = abs(res.value.imag) < tol["imag"]
    elif task == "equivalence":
        process = cfg["process"]
        rep = equivalence_report(process, cfg["times"], cfg["intervals"],
                                 **_quad_kwargs(cfg, process))
        record["det_physical"] = _complex_fields(rep["det_physical"])
        record["det_iiks"] = _complex_fields(rep["det_iiks"])
        record["abs_difference"] = rep["abs_difference"]
        passed = rep["abs_difference"] < tol["equivalence"]
    elif task == "derivatives":
        process = cfg["process"]
        m = int(cfg.get("quadrature", {}).get("m", 160))
        if process == "airy":
            rep = isomono.airy_derivative_report(
                AiryEndpoints(cfg["intervals"]), cfg["times"], m=m)
        else:
            rep = isomono.pearcey_derivative_report(
                PearceyEndpoints(cfg["intervals"]), cfg["times"], m=m)
        record["identities"] = _sanitize(
            {"a": rep["a"], "tau": rep["tau"]})
        record["max_rel_mismatch"] = rep["max_rel_mismatch"]
        passed = rep["max_rel_mismatch"] < tol["derivatives"]
    elif task == "pde":
        pde = cfg.get("pde", {})
        center = tuple(pde.get("center", (1.0, 0.2, 0.1)))
        steps = list(pde.get("steps", [0.04, 0.02]))
        m = int(cfg.get("quadrature", {}).get("m", 120))
        results = []
        for h in steps:
            grid = pdecheck.build_grid(center, step=h,
                                       radius=int(pde.get("radius", 2)), m=m)
            results.append(pdecheck.avm_residual(grid))
        record["residuals"] = _sanitize(
            [{"step": h, **r} for h, r in zip(steps, results)])
        passed = results[-1]["relative_residual"] < tol["pde"]
        if len(results) >= 2:
            ratio = results[0]["relative_residual"] / max(
                results[-1]["relative_residual"], 1e-300)
            record["richardson_ratio"] = ratio
    elif task == "tw-oracle":
        s = float(cfg["s"])
        m = int(cfg.get("quadrature", {}).get("m", 140))
        det_iiks = airy_gap_probability([0.0], [[s]], m=m).value
        oracle = tracy_widom.gap_probability(s)
        record["s"] = s
        record["det_iiks"] = _complex_fields(det_iiks)
        record["oracle"] = oracle
        record["abs_difference"] = abs(det_iiks.real - oracle)
        passed = record["abs_difference"] < tol["tw-oracle"] and \
            abs(det_iiks.imag) < tol["imag"]
    else:
        raise ConfigError(f"task {task!r} must be dispatched via run_sweep")
    record["wall_time"] = time.time() - t0
    record["passed"] = bool(passed)
    return record


def _sweep_point(args):
    cfg, axis, value = args
    point = copy.deepcopy(cfg)
    point["task"] = cfg.get("sweep", {}).get("task", "det")
    try:
        target = axis.split(":")
        if target[0] == "endpoint":
            i, ell = int(target[1]), int(target[2])
            point["intervals"][i][ell] = value
        elif target[0] == "tau":
            point["times"][int(target[1])] = value
        elif target[0] == "s":
            point["s"] = value
        else:
            raise ConfigError(f"unknown sweep axis {axis!r}")
        rec = run_task(point)
    except Exception as exc:  # keep sweeps alive, flag the point
        rec = {"config": point, "task": point["task"], "passed": False,
               "error": f"{type(exc).__name__}: {exc}"}
    rec["sweep_value"] = value
    return rec


def run_sweep(cfg, workers=1):
    sweep = cfg.get("sweep")
    _require(isinstance(sweep, dict), "sweep: missing sweep description")
    axis = sweep.get("axis")
    values = sweep.get("values")
    _require(isinstance(axis, str), "sweep.axis: must be a string")
    _require(isinstance(values, list) and values,
             "sweep.values: need a non-empty list")
    jobs = [(cfg, axis, v) for v in values]
    if workers > 1:
        with concurrent.futures.ProcessPoolExecutor(workers) as pool:
            records = list(pool.map(_sweep_point, jobs))
    else:
        records = [_sweep_point(j) for j in jobs]
    return records


def _write_output(payload, out_path):
    text = json.dumps(payload, indent=2, sort_keys=True)
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _write_csv(records, path):
    cols = ["sweep_value", "re_det", "im_det", "log_det", "passed", "error"]
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(cols)
        for rec in records:
            det = rec.get("det", {})
            writer.writerow([
                rec.get("sweep_value"),
                det.get("re"), det.get("im"),
                rec.get("log_det", {}).get("re"),
                rec.get("passed"), rec.get("error", ""),
            ])


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--m", type=int, help="nodes per contour component")
    common.add_argument("--radius", type=float, help="truncation radius")
    common.add_argument("--deform", dest="deform", action="store_true",
                        default=None, help="deform Airy vertical lines")
    common.add_argument("--no-deform", dest="deform", action="store_false")
    common.add_argument("--workers", type=int, default=1,
                        help="worker processes for sweeps")
    common.add_argument("--out", help="output JSON path (default stdout)")

    parser = argparse.ArgumentParser(
        prog="gapdet",
        description="Gap probabilities of the Airy and Pearcey processes",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", parents=[common],
                           help="run a JSON job config")
    p_run.add_argument("config", help="path to the JSON config file")

    p_check = sub.add_parser("check", parents=[common],
                             help="run a named verification")
    p_check.add_argument("what", choices=("equivalence", "derivatives", "pde"))
    p_check.add_argument("--preset", required=True)

    p_tw = sub.add_parser("tw-oracle", parents=[common],
                          help="single-time Airy vs the Tracy-Widom oracle")
    p_tw.add_argument("--s", type=float, required=True,
                      help="left endpoint of [s, inf)")
    return parser


def _apply_flag_overrides(cfg, args):
    quad = cfg.setdefault("quadrature", {})
    if args.m is not None:
        quad["m"] = args.m
    if args.radius is not None:
        quad["truncation_radius"] = args.radius
    if args.deform is not None:
        quad["deform"] = args.deform
    return cfg


def main(argv=None):
    logging.basicConfig(
        level=os.environ.get("GAPDET_LOG", "WARNING").upper())
    args = build_parser().parse_args(argv)
    try:
        if args.command == "run":
            with open(args.config) as fh:
                cfg = validate_config(json.load(fh))
        elif args.command == "check":
            presets = _PRESETS[args.what]
            if args.preset not in presets:
                raise ConfigError(
                    f"unknown preset {args.preset!r}; "
                    f"available: {sorted(presets)}")
            cfg = validate_config(copy.deepcopy(presets[args.preset]))
        else:
            cfg = {"task": "tw-oracle", "s": args.s, "quadrature": {}}
        cfg = _apply_flag_overrides(cfg, args)
        if cfg["task"] == "sweep":
            records = run_sweep(cfg, workers=args.workers)
            payload = {"records": records,
                       "passed": all(r.get("passed") for r in records)}
            out = cfg.get("output") or args.out
            _write_output(payload, out)
            csv_path = cfg.get("csv")
            if csv_path:
                _write_csv(records, csv_path)
            ok = payload["passed"]
        else:
            record = run_task(validate_config(cfg) if args.command != "run"
                              else cfg)
            _write_output(record, cfg.get("output") or args.out)
            ok = record["passed"]
    except ConfigError as exc:
        log.error("invalid configuration: %s", exc)
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
