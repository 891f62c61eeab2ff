"""Command-line experiment runner.

    eqtoeplitz list-experiments
    eqtoeplitz run --experiment eq8 [--t 3 5] [--n 500] [--l 3] [--out DIR] [--jobs K]
    eqtoeplitz run --config cfg.json [--out DIR] [--jobs K]

Each run writes ``<name>.csv`` (one row per result, complex values as
``*_re``/``*_im`` columns) and ``<name>.json`` (pass/fail, worst deviation).
The default output directory is ``$EQTOEPLITZ_OUT`` or ``./results``.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np

OUT_ENV = "EQTOEPLITZ_OUT"
FIELDS = ("experiment", "t", "N", "L", "padding", "tolerance", "seed", "params", "out")


class ConfigError(ValueError):
    pass


@dataclass
class ExperimentConfig:
    experiment: str
    t: list
    N: list
    L: list
    padding: int | None = None
    tolerance: float = 1.0
    seed: int = 0
    params: dict = field(default_factory=dict)
    out: str | None = None

    def validate(self):
        from .experiments import CATALOG

        if self.experiment not in CATALOG:
            raise ConfigError(f"field 'experiment': unknown experiment {self.experiment!r}")
        for name in ("t", "N", "L"):
            v = getattr(self, name)
            if not isinstance(v, list) or not v:
                raise ConfigError(f"field {name!r}: must be a nonempty list")
        if any(not isinstance(x, (int, float)) or not x > 1 for x in self.t):
            raise ConfigError("field 't': every weight must be a number > 1")
        for name in ("N", "L"):
            if any(not isinstance(x, int) or isinstance(x, bool) or x < 0 for x in getattr(self, name)):
                raise ConfigError(f"field {name!r}: entries must be non-negative integers")
        if self.padding is not None and (not isinstance(self.padding, int) or self.padding < 0):
            raise ConfigError("field 'padding': must be a non-negative integer or null")
        if not isinstance(self.tolerance, (int, float)) or not self.tolerance > 0:
            raise ConfigError("field 'tolerance': must be positive")
        if not isinstance(self.seed, int):
            raise ConfigError("field 'seed': must be an integer")
        if not isinstance(self.params, dict):
            raise ConfigError("field 'params': must be an object")
        return self

    def to_json(self):
        return json.dumps(asdict(self), sort_keys=True)

    @classmethod
    def from_dict(cls, d, line_of=None):
        if not isinstance(d, dict):
            raise ConfigError("config must be a JSON object")
        unknown = [k for k in d if k not in FIELDS]
        if unknown:
            loc = f" (line {line_of(unknown[0])})" if line_of else ""
            raise ConfigError(f"field {unknown[0]!r}{loc}: unknown field")
        if "experiment" not in d:
            raise ConfigError("field 'experiment': required")
        from .experiments import CATALOG

        exp = CATALOG.get(d["experiment"])
        if exp is None:
            raise ConfigError(f"field 'experiment': unknown experiment {d['experiment']!r}")
        merged = {**exp.defaults, "params": {}, **d}
        for k in ("t",):
            merged[k] = [float(x) if isinstance(x, int) and not isinstance(x, bool) else x
                         for x in merged[k]] if isinstance(merged[k], list) else merged[k]
        return cls(**{k: merged[k] for k in FIELDS if k in merged}).validate()

    @classmethod
    def from_json(cls, text):
        try:
            d = json.loads(text)
        except json.JSONDecodeError as e:
            raise ConfigError(f"line {e.lineno}, column {e.colno}: {e.msg}") from None

        def line_of(key):
            for i, ln in enumerate(text.splitlines(), 1):
                if f'"{key}"' in ln:
                    return i
            return "?"

        return cls.from_dict(d, line_of)


def default_config(name, overrides=None):
    return ExperimentConfig.from_dict({"experiment": name, **(overrides or {})})


# ---------------------------------------------------------------------------
# execution


def _point_task(args):
    name, cfg, p = args
    from .experiments import CATALOG

    return CATALOG[name].point(p, cfg)


def run_experiment(cfg: ExperimentConfig, jobs=1):
    """Rows in grid order and the summary dict."""
    from .experiments import CATALOG

    exp = CATALOG[cfg.experiment]
    c = asdict(cfg)
    grid = exp.grid(c)
    tasks = [(exp.name, c, p) for p in grid]
    t0 = time.perf_counter()
    if jobs and jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=int(jobs)) as ex:
            parts = list(ex.map(_point_task, tasks))
    else:
        parts = [_point_task(tk) for tk in tasks]
    rows = [r for part in parts for r in part]
    summary = exp.summarize(rows, c)
    summary.update({"experiment": exp.name, "criterion": exp.criterion,
                    "elapsed_s": round(time.perf_counter() - t0, 3), "config": c})
    return rows, summary


def _fmt(v):
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return repr(float(v))
    return str(v)


def rows_to_csv(rows):
    cols = []
    flat = []
    for r in rows:
        fr = {}
        for k, v in r.items():
            if isinstance(v, (complex, np.complexfloating)):
                fr[f"{k}_re"] = float(np.real(v))
                fr[f"{k}_im"] = float(np.imag(v))
            else:
                fr[k] = v
        for k in fr:
            if k not in cols:
                cols.append(k)
        flat.append(fr)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\r\n")
    w.writerow(cols)
    for fr in flat:
        w.writerow([_fmt(fr[k]) if k in fr else "" for k in cols])
    return buf.getvalue()


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (complex, np.complexfloating)):
        return {"re": float(np.real(x)), "im": float(np.imag(x))}
    if isinstance(x, (np.bool_,)):
        return bool(x)
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, (float, np.floating)):
        x = float(x)
        return None if math.isnan(x) else x
    return x


def write_outputs(rows, summary, out_dir, name):
    os.makedirs(out_dir, exist_ok=True)
    csv_path = os.path.join(out_dir, f"{name}.csv")
    with open(csv_path, "w", newline="") as fh:
        fh.write(rows_to_csv(rows))
    json_path = os.path.join(out_dir, f"{name}.json")
    with open(json_path, "w") as fh:
        json.dump(_jsonable(summary), fh, indent=2, sort_keys=True)
    return csv_path, json_path


def run_to_bytes(name, jobs=1, overrides=None):
    rows, _ = run_experiment(default_config(name, overrides), jobs)
    return rows_to_csv(rows).encode()


# ---------------------------------------------------------------------------
# argument parsing


def _parser():
    p = argparse.ArgumentParser(prog="eqtoeplitz", description="Equivariant Toeplitz trace experiments")
    sub = p.add_subparsers(dest="cmd", required=True)
    sub.add_parser("list-experiments", help="print the experiment catalog")
    r = sub.add_parser("run", help="run one experiment")
    src = r.add_mutually_exclusive_group(required=True)
    src.add_argument("--config", help="JSON config file")
    src.add_argument("--experiment", help="catalog name")
    r.add_argument("--t", type=float, nargs="+", help="weights t")
    r.add_argument("--n", type=int, nargs="+", help="basis truncations N")
    r.add_argument("--l", type=int, nargs="+", help="word lengths L")
    r.add_argument("--out", help=f"output directory (default ${OUT_ENV} or ./results)")
    r.add_argument("--jobs", type=int, default=1, help="worker processes")
    return p


def main(argv=None):
    args = _parser().parse_args(argv)
    from .experiments import CATALOG, check_catalog

    if args.cmd == "list-experiments":
        check_catalog()
        for e in CATALOG.values():
            tag = f"[criterion {e.criterion}]" if e.criterion else "[supplementary]"
            print(f"{e.name:20s} {tag:16s} {e.description}")
        return 0

    try:
        if args.config:
            with open(args.config) as fh:
                cfg = ExperimentConfig.from_json(fh.read())
        else:
            over = {}
            if args.t:
                over["t"] = args.t
            if args.n:
                over["N"] = args.n
            if args.l:
                over["L"] = args.l
            cfg = default_config(args.experiment, over)
    except (ConfigError, OSError) as e:
        print(f"config error: {e}", file=sys.stderr)
        return 2
    if args.jobs < 1:
        print("config error: --jobs must be >= 1", file=sys.stderr)
        return 2

    out = args.out or cfg.out or os.environ.get(OUT_ENV) or "results"
    rows, summary = run_experiment(cfg, args.jobs)
    csv_path, json_path = write_outputs(rows, summary, out, cfg.experiment)
    status = "PASS" if summary["pass"] else "FAIL"
    print(f"{cfg.experiment}: {status} (worst deviation {summary['worst_deviation']:.3e}); "
          f"wrote {csv_path}, {json_path}")
    if not summary["pass"]:
        print(json.dumps(_jsonable(summary["details"]), sort_keys=True), file=sys.stderr)
    return 0 if summary["pass"] else 1


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
