"""Command-line front end.

Verbs:

* ``preset <name>`` -- run a named experiment, write its artifacts and a
  JSON summary with pass/fail assertions.
* ``run <config.json>`` -- run a user config (lattice or driven) without
  assertions.
* ``sweep <config.json> --param <path> --values v1,v2,...`` -- rerun a
  config with one scalar field swept over a list, collecting final
  populations into a table.

Exit status: 0 success, 1 assertion failure, 2 input error, 3 numerical
instability.
"""

import argparse
import json
import sys
import time
from pathlib import Path

from .driven import DriveConfig, simulate_driven
from .errors import ConfigurationError, FanoChainError, InstabilityError
from .lattice import simulate
from .presets import PRESET_NAMES, run_preset
from .serialize import (
    CSV_FLOAT_FORMAT,
    config_from_json,
    rwa_comparison_to_csv,
    snapshots_to_json,
    spectrum_to_csv,
    trajectory_to_csv,
)

EXIT_OK = 0
EXIT_ASSERTION = 1
EXIT_INPUT = 2
EXIT_INSTABILITY = 3


def _parser():
    p = argparse.ArgumentParser(
        prog="fanochain",
        description="Simulate a discrete state coupled to a tight-binding "
                    "continuum through a time-dependent complex coupling.")
    sub = p.add_subparsers(dest="verb", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", type=Path, default=None,
                        help="output directory (default ./runs/<name>)")
    common.add_argument("--dt", type=float, default=None,
                        help="override the integrator step")
    common.add_argument("--chain-length", type=int, default=None,
                        help="override the chain length")
    common.add_argument("--snapshots", type=int, default=None, metavar="STRIDE",
                        help="store full state snapshots every STRIDE steps")

    sp = sub.add_parser("preset", parents=[common],
                        help="run a named experiment preset")
    sp.add_argument("name", choices=PRESET_NAMES)

    sr = sub.add_parser("run", parents=[common], help="run a JSON config")
    sr.add_argument("config", type=Path)

    ss = sub.add_parser("sweep", parents=[common],
                        help="sweep one scalar field of a JSON config")
    ss.add_argument("config", type=Path)
    ss.add_argument("--param", required=True,
                    help="dotted path of the field, e.g. A0 or continuum.kappa1")
    ss.add_argument("--values", required=True,
                    help="comma-separated list of values")
    return p


def _overrides(args):
    out = {}
    if args.dt is not None:
        out["dt"] = args.dt
    if args.chain_length is not None:
        out["chain_length"] = args.chain_length
    if args.snapshots is not None:
        out["snapshot_stride"] = args.snapshots
    return out


def _write_summary(out_dir, summary):
    with open(out_dir / "summary.json", "w") as fh:
        json.dump(summary, fh, indent=2, sort_keys=True)
        fh.write("\n")


def _write_artifacts(out_dir, artifacts):
    traj = artifacts.get("trajectory")
    if traj is not None:
        trajectory_to_csv(traj, out_dir / "trajectory.csv")
        if traj.snapshots is not None:
            snapshots_to_json(traj, out_dir / "snapshots.json")
    if "spectrum" in artifacts:
        omega, power = artifacts["spectrum"]
        spectrum_to_csv(omega, power, out_dir / "spectrum.csv")
    if "rwa" in artifacts:
        rwa_comparison_to_csv(artifacts["rwa"], out_dir / "rwa_compare.csv")
    if "contour" in artifacts:
        deltas, amps = artifacts["contour"]
        with open(out_dir / "contour.csv", "w") as fh:
            fh.write("delta,Re_A,Im_A\n")
            for d, a in zip(deltas, amps):
                fh.write(",".join(CSV_FLOAT_FORMAT % x
                                  for x in (d, a.real, a.imag)) + "\n")


def _cmd_preset(args):
    out_dir = args.out or Path("runs") / args.name
    out_dir.mkdir(parents=True, exist_ok=True)
    started = time.perf_counter()
    outcome = run_preset(args.name, overrides=_overrides(args))
    summary = dict(outcome.summary)
    summary["runtime_s"] = round(time.perf_counter() - started, 3)
    _write_artifacts(out_dir, outcome.artifacts)
    _write_summary(out_dir, summary)
    failed = [c for c in outcome.assertions if not c.passed]
    for c in outcome.assertions:
        status = "PASS" if c.passed else "FAIL"
        print(f"[{status}] {args.name}: {c.label} "
              f"(value {c.value:.6g}; {c.threshold})")
    print(f"artifacts in {out_dir}")
    return EXIT_ASSERTION if failed else EXIT_OK


def _run_config_obj(config):
    if isinstance(config, DriveConfig):
        return simulate_driven(config)
    return simulate(config)


def _apply_config_overrides(doc, args):
    scope = doc.get("base", doc) if doc.get("kind") == "driven" else doc
    if args.dt is not None:
        scope["dt"] = args.dt
    if args.chain_length is not None:
        scope["chain_length"] = args.chain_length
    if args.snapshots is not None:
        scope["snapshot_stride"] = args.snapshots


def _load_doc(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except FileNotFoundError:
        raise ConfigurationError(f"no such config file: {path}")
    except json.JSONDecodeError as exc:
        raise ConfigurationError(f"malformed JSON in {path}: {exc}")


def _cmd_run(args):
    out_dir = args.out or Path("runs") / "run"
    doc = _load_doc(args.config)
    _apply_config_overrides(doc, args)
    config = config_from_json(doc)
    out_dir.mkdir(parents=True, exist_ok=True)
    started = time.perf_counter()
    traj = _run_config_obj(config)
    summary = {
        "schema_version": 1,
        "config": str(args.config),
        "P_s_final": float(traj.p_s[-1]),
        "P_c_final": float(traj.p_c[-1]),
        "runtime_s": round(time.perf_counter() - started, 3),
    }
    _write_artifacts(out_dir, {"trajectory": traj})
    _write_summary(out_dir, summary)
    print(f"P_s(end) = {summary['P_s_final']:.6g}, "
          f"P_c(end) = {summary['P_c_final']:.6g}; artifacts in {out_dir}")
    return EXIT_OK


def _set_path(doc, path, value):
    """Assign ``value`` at a dotted path (list indices as name[i])."""
    node = doc
    parts = path.split(".")
    for i, raw in enumerate(parts):
        key = raw
        idx = None
        if raw.endswith("]") and "[" in raw:
            key, bracket = raw.split("[", 1)
            try:
                idx = int(bracket[:-1])
            except ValueError:
                raise ConfigurationError(f"bad index in path segment {raw!r}",
                                         field=path)
        if not isinstance(node, dict) or key not in node:
            raise ConfigurationError("no such field", field=path)
        last = i == len(parts) - 1
        if idx is not None:
            seq = node[key]
            if not isinstance(seq, list) or not (0 <= idx < len(seq)):
                raise ConfigurationError("index out of range", field=path)
            if last:
                seq[idx] = value
            else:
                node = seq[idx]
        elif last:
            node[key] = value
        else:
            node = node[key]


def _cmd_sweep(args):
    out_dir = args.out or Path("runs") / "sweep"
    base_doc = _load_doc(args.config)
    _apply_config_overrides(base_doc, args)
    values = [v for v in args.values.split(",") if v.strip() != ""]
    out_dir.mkdir(parents=True, exist_ok=True)
    rows = []
    for i, raw in enumerate(values):
        try:
            value = float(raw)
        except ValueError:
            raise ConfigurationError(f"sweep value {raw!r} is not a number")
        doc = json.loads(json.dumps(base_doc))
        _set_path(doc, args.param, value)
        config = config_from_json(doc)
        traj = _run_config_obj(config)
        row = {"schema_version": 1, "param": args.param, "value": value,
               "P_s_final": float(traj.p_s[-1]),
               "P_c_final": float(traj.p_c[-1])}
        row_dir = out_dir / "rows" / f"{i:03d}"
        row_dir.mkdir(parents=True, exist_ok=True)
        _write_summary(row_dir, row)
        rows.append(row)
    with open(out_dir / "sweep.csv", "w") as fh:
        fh.write(f"{args.param},P_s_final,P_c_final\n")
        for row in rows:
            fh.write(",".join(CSV_FLOAT_FORMAT % row[k]
                              for k in ("value", "P_s_final", "P_c_final"))
                     + "\n")
    print(f"{len(rows)} sweep rows in {out_dir}")
    return EXIT_OK


def main(argv=None):
    args = _parser().parse_args(argv)
    try:
        if args.verb == "preset":
            return _cmd_preset(args)
        if args.verb == "run":
            return _cmd_run(args)
        return _cmd_sweep(args)
    except InstabilityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INSTABILITY
    except FanoChainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
