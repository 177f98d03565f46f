"""Batch front door: config parsing, run dispatch, and table/plot-data output.

Each verb builds a RunConfig from a flat key-value config file plus flag
overrides (flags win), runs the operation in-process — or against a running
service with ``--server`` — prints a two-decimal human summary, and writes the
full-precision artifact as JSON or CSV.

Exit codes: 0 success, 1 validation error, 2 solver non-convergence,
3 verification failure, 4 I/O error.
"""

from __future__ import annotations

import csv
import io
import json
import math
import os
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, List, Optional, Tuple

import click
import httpx

from .model import GameParams, Thresholds, ValidationError
from .mcsim import SimConfig, ThresholdStrategyPair
from .schemas import (SWEEPABLE_PARAMS, ParamsModel, PlotdataRequest,
                      ReduceRequest, SimConfigModel, SimulateRequest,
                      SolutionModel, SolveRequest, StrategyModel, SweepRequest,
                      ThresholdsModel, VerifyRequest)
from .service import (SOLVER_ERRORS, op_plotdata, op_reduce, op_simulate,
                      op_solve, op_sweep, op_verify)

OUTPUT_DIR_ENV = "SWITCHSTOP_OUT"

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_NO_CONVERGENCE = 2
EXIT_VERIFICATION = 3
EXIT_IO = 4

MODES = ("solve", "verify", "simulate", "sweep", "reduce", "plotdata")

PARAM_FIELDS = SWEEPABLE_PARAMS  # r, sigma1, ..., lambda2


class ArtifactIOError(OSError):
    """Output artifact or input file could not be read or written."""


@dataclass(frozen=True)
class RunConfig:
    """One resolved batch run: what to do, on which model, where output goes."""

    mode: str
    params: Optional[GameParams] = None
    sweep: Optional[Tuple[str, Tuple[float, ...]]] = None
    sim: Optional[SimConfig] = None
    output_path: Optional[Path] = None
    output_format: str = "json"
    start: Optional[Tuple[float, int]] = None
    grid: Optional[int] = None
    parallel: bool = False
    init: Optional[Thresholds] = None
    strategy: Optional[ThresholdStrategyPair] = None
    solution_path: Optional[Path] = None
    reduce_args: Optional[Tuple[float, float, float, float]] = None
    server: Optional[str] = None

    def __post_init__(self):
        problems = []
        if self.mode not in MODES:
            problems.append(f"mode must be one of {', '.join(MODES)}, got {self.mode!r}")
        if self.output_format not in ("csv", "json"):
            problems.append(f"format must be csv or json, got {self.output_format!r}")
        if self.sweep is not None:
            name, values = self.sweep
            if name not in SWEEPABLE_PARAMS:
                problems.append(f"sweep parameter must be one of "
                                f"{', '.join(SWEEPABLE_PARAMS)}, got {name!r}")
            if len(values) == 0:
                problems.append("sweep value list must be non-empty")
            elif not all(math.isfinite(v) for v in values):
                problems.append("sweep values must be finite")
        if problems:
            raise ValidationError(problems)


# ---- config file parsing ----

def parse_config_file(path: Path) -> Dict[str, str]:
    """Flat ``key = value`` lines with optional ``[section]`` headers.

    Sections prefix the keys that follow (``[params]`` + ``r`` -> ``params.r``);
    fully dotted keys work without sections, so the format reads as the common
    subset of TOML and INI.
    """
    try:
        text = path.read_text()
    except OSError as exc:
        raise ArtifactIOError(f"cannot read config {path}: {exc}") from exc
    out: Dict[str, str] = {}
    section = ""
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith(("#", ";")):
            continue
        if line.startswith("[") and line.endswith("]"):
            section = line[1:-1].strip()
            if not section:
                raise ValidationError([f"{path}:{lineno}: empty section name"])
            continue
        if "=" not in line:
            raise ValidationError(
                [f"{path}:{lineno}: expected 'key = value', got {line!r}"])
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.strip().strip("\"'")
        if not key:
            raise ValidationError([f"{path}:{lineno}: empty key"])
        full = f"{section}.{key}" if section else key
        if full in out:
            raise ValidationError([f"{path}:{lineno}: duplicate key {full!r}"])
        out[full] = value
    return out


def _parse_float(value: str, field: str) -> float:
    try:
        out = float(value)
    except ValueError as exc:
        raise ValidationError(
            [f"config field {field}: cannot parse {value!r} as a number"]) from exc
    return out


def _parse_int(value: str, field: str) -> int:
    try:
        return int(value)
    except ValueError as exc:
        raise ValidationError(
            [f"config field {field}: cannot parse {value!r} as an integer"]) from exc


def _parse_bool(value: str, field: str) -> bool:
    low = value.strip().lower()
    if low in ("true", "1", "yes", "on"):
        return True
    if low in ("false", "0", "no", "off"):
        return False
    raise ValidationError(
        [f"config field {field}: cannot parse {value!r} as a boolean"])


def _parse_values(text: str, field: str) -> Tuple[float, ...]:
    items = [s.strip() for s in text.split(",") if s.strip()]
    if not items:
        raise ValidationError([f"{field}: value list must be non-empty"])
    return tuple(_parse_float(s, field) for s in items)


def _resolve_params(cfg: Dict[str, str], flags: Dict[str, Optional[float]]) -> GameParams:
    """Config ``params.*`` keys overridden by same-name flags; all 9 required."""
    values = {}
    missing = []
    for name in PARAM_FIELDS:
        flag = flags.get(name)
        if flag is not None:
            values[name] = flag
        elif f"params.{name}" in cfg:
            values[name] = _parse_float(cfg[f"params.{name}"], f"params.{name}")
        else:
            missing.append(f"params.{name}")
    if missing:
        raise ValidationError([f"missing parameter {m}" for m in missing])
    return GameParams(**values)


def _resolve_sim(cfg: Dict[str, str], dt: Optional[float], paths: Optional[int],
                 seed: Optional[int], horizon: Optional[float],
                 antithetic: Optional[bool]) -> SimConfig:
    def pick(flag, key, parse, default):
        if flag is not None:
            return flag
        if key in cfg:
            return parse(cfg[key], key)
        return default

    return SimConfig(
        dt=pick(dt, "sim.dt", _parse_float, 1e-4),
        paths=pick(paths, "sim.paths", _parse_int, 100_000),
        seed=pick(seed, "sim.seed", _parse_int, 12345),
        horizon=pick(horizon, "sim.horizon", _parse_float, None),
        antithetic=pick(antithetic, "sim.antithetic", _parse_bool, True),
    )


def _resolve_output(cfg: Dict[str, str], out: Optional[str], fmt: Optional[str],
                    mode: str) -> Tuple[Optional[Path], str]:
    fmt = fmt or cfg.get("output.format", "json")
    if fmt not in ("csv", "json"):
        raise ValidationError([f"format must be csv or json, got {fmt!r}"])
    out = out or cfg.get("output.path")
    if out is not None:
        return Path(out), fmt
    env_dir = os.environ.get(OUTPUT_DIR_ENV)
    if env_dir:
        return Path(env_dir) / f"{mode}.{fmt}", fmt
    return None, fmt


# ---- remote dispatch ----

_OPS = {"solve": op_solve, "reduce": op_reduce, "verify": op_verify,
        "simulate": op_simulate, "sweep": op_sweep, "plotdata": op_plotdata}


def _run_op(cfg: RunConfig, request) -> dict:
    """Runs the op in-process, or POSTs it to ``cfg.server``."""
    if cfg.server is None:
        return _OPS[cfg.mode](request).model_dump()
    url = cfg.server.rstrip("/") + "/" + cfg.mode
    try:
        resp = httpx.post(url, json=request.model_dump(), timeout=600.0)
    except httpx.HTTPError as exc:
        raise ArtifactIOError(f"request to {url} failed: {exc}") from exc
    if resp.status_code == 400:
        raise ValidationError(resp.json()["detail"]["problems"])
    if resp.status_code == 409:
        raise click.ClickException(resp.json()["detail"]["message"])
    if resp.status_code != 200:
        raise ArtifactIOError(f"{url} returned HTTP {resp.status_code}: {resp.text}")
    return resp.json()


# ---- artifact rendering ----

def _csv_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, (dict, list, tuple)):
        return json.dumps(value)
    return str(value)


def _flatten(prefix: str, obj, rows: List[Tuple[str, object]]):
    if isinstance(obj, dict):
        for key, val in obj.items():
            _flatten(f"{prefix}.{key}" if prefix else str(key), val, rows)
    else:
        rows.append((prefix, obj))


def render_artifact(mode: str, artifact: dict, fmt: str) -> str:
    """Serializes an artifact; CSV is locale-independent with a fixed header."""
    if fmt == "json":
        return json.dumps(artifact, indent=2) + "\n"
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    if mode == "sweep":
        writer.writerow([artifact["param"], "a1", "a2", "b1", "b2", "error"])
        for row in artifact["rows"]:
            writer.writerow([_csv_cell(row["value"]), _csv_cell(row["a1"]),
                             _csv_cell(row["a2"]), _csv_cell(row["b1"]),
                             _csv_cell(row["b2"]), row["error"]])
    elif mode == "plotdata":
        writer.writerow(artifact["columns"])
        for row in artifact["rows"]:
            writer.writerow([_csv_cell(v) for v in row])
    else:
        writer.writerow(["key", "value"])
        rows: List[Tuple[str, object]] = []
        _flatten("", artifact, rows)
        for key, value in rows:
            writer.writerow([key, _csv_cell(value)])
    return buf.getvalue()


def write_artifact(cfg: RunConfig, artifact: dict) -> None:
    if cfg.output_path is None:
        return
    text = render_artifact(cfg.mode, artifact, cfg.output_format)
    try:
        cfg.output_path.parent.mkdir(parents=True, exist_ok=True)
        cfg.output_path.write_text(text)
    except OSError as exc:
        raise ArtifactIOError(f"cannot write {cfg.output_path}: {exc}") from exc
    click.echo(f"wrote {cfg.output_path}")


# ---- run_* dispatch ----

def run_solve(cfg: RunConfig) -> int:
    req = SolveRequest(
        params=ParamsModel.from_params(cfg.params),
        init=ThresholdsModel.from_thresholds(cfg.init) if cfg.init else None)
    artifact = _run_op(cfg, req)
    th = artifact["solution"]["thresholds"]
    click.echo("thresholds: a1={a1:.2f} a2={a2:.2f} b1={b1:.2f} b2={b2:.2f}".format(**th))
    click.echo(f"pasting residual {artifact['solution']['residual']:.2e} "
               f"({artifact['solution']['newton_iterations']} iterations)")
    passed = bool(artifact["verification"]["overall_pass"])
    click.echo(f"verification {'PASS' if passed else 'FAIL'}")
    write_artifact(cfg, artifact)
    return EXIT_OK if passed else EXIT_VERIFICATION


def run_reduce(cfg: RunConfig) -> int:
    r, sigma, K, Ktilde = cfg.reduce_args
    artifact = _run_op(cfg, ReduceRequest(r=r, sigma=sigma, K=K, Ktilde=Ktilde))
    click.echo("thresholds: a={a:.2f} b={b:.2f}".format(**artifact))
    click.echo(f"residual {artifact['residual']:.2e}")
    write_artifact(cfg, artifact)
    return EXIT_OK


def run_verify(cfg: RunConfig) -> int:
    solution = None
    if cfg.solution_path is not None:
        try:
            payload = json.loads(cfg.solution_path.read_text())
        except OSError as exc:
            raise ArtifactIOError(f"cannot read {cfg.solution_path}: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise ValidationError([f"{cfg.solution_path}: invalid JSON: {exc}"]) from exc
        if "solution" in payload:  # accept a full solve artifact too
            payload = payload["solution"]
        solution = SolutionModel.model_validate(payload)
    req = VerifyRequest(
        params=ParamsModel.from_params(cfg.params) if cfg.params else None,
        solution=solution, grid=cfg.grid)
    artifact = _run_op(cfg, req)
    report = artifact["report"]
    click.echo("thresholds: a1={a1:.2f} a2={a2:.2f} b1={b1:.2f} b2={b2:.2f}"
               .format(**artifact["thresholds"]))
    click.echo(f"smoothness worst {report['smoothness_worst']:.2e} "
               f"{'PASS' if report['smoothness_pass'] else 'FAIL'}")
    click.echo(f"bounds worst {report['bounds']['worst']:.2e} "
               f"{'PASS' if report['bounds']['passed'] else 'FAIL'}")
    click.echo(f"vi (continuation of P1) worst {report['vi_continuation1']['worst']:.2e} "
               f"{'PASS' if report['vi_continuation1']['passed'] else 'FAIL'}")
    click.echo(f"vi (continuation of P2) worst {report['vi_continuation2']['worst']:.2e} "
               f"{'PASS' if report['vi_continuation2']['passed'] else 'FAIL'}")
    passed = bool(report["overall_pass"])
    click.echo(f"verification {'PASS' if passed else 'FAIL'}")
    write_artifact(cfg, artifact)
    return EXIT_OK if passed else EXIT_VERIFICATION


def run_simulate(cfg: RunConfig) -> int:
    strategy = None
    if cfg.strategy is not None:
        strategy = StrategyModel(p1_levels=cfg.strategy.p1_levels,
                                 p2_levels=cfg.strategy.p2_levels)
    sim = SimConfigModel(dt=cfg.sim.dt, paths=cfg.sim.paths, seed=cfg.sim.seed,
                         antithetic=cfg.sim.antithetic, horizon=cfg.sim.horizon)
    req = SimulateRequest(params=ParamsModel.from_params(cfg.params),
                          start_x=cfg.start[0], start_regime=cfg.start[1],
                          strategy=strategy, sim=sim)
    artifact = _run_op(cfg, req)
    click.echo(f"estimate {artifact['estimate']:.2f} "
               f"+/- {artifact['ci95']:.2f} (95% CI, {artifact['paths_used']} paths)")
    dist = artifact["stop_distribution"]
    click.echo(f"stopped first: P1 {dist['p1_first']:.4f}, P2 {dist['p2_first']:.4f}, "
               f"truncated {dist['truncated']:.4f}")
    write_artifact(cfg, artifact)
    return EXIT_OK


def run_sweep(cfg: RunConfig) -> int:
    name, values = cfg.sweep
    req = SweepRequest(params=ParamsModel.from_params(cfg.params), param=name,
                       values=list(values), parallel=cfg.parallel)
    artifact = _run_op(cfg, req)
    failed = 0
    for row in artifact["rows"]:
        if row["error"]:
            failed += 1
            click.echo(f"{name}={row['value']:.2f}: error: {row['error']}")
        else:
            click.echo(f"{name}={row['value']:.2f}: a1={row['a1']:.2f} "
                       f"a2={row['a2']:.2f} b1={row['b1']:.2f} b2={row['b2']:.2f}")
    write_artifact(cfg, artifact)
    return EXIT_NO_CONVERGENCE if failed else EXIT_OK


def run_plotdata(cfg: RunConfig) -> int:
    req = PlotdataRequest(params=ParamsModel.from_params(cfg.params),
                          grid=cfg.grid or 2000)
    artifact = _run_op(cfg, req)
    xs_lo, xs_hi = artifact["rows"][0][0], artifact["rows"][-1][0]
    click.echo(f"plot grid: {len(artifact['rows'])} points on "
               f"[{xs_lo:.2f}, {xs_hi:.2f}]")
    write_artifact(cfg, artifact)
    return EXIT_OK


# ---- click wiring ----

def params_options(f):
    for name in reversed(PARAM_FIELDS):
        f = click.option(f"--params.{name}", f"--{name}", f"p_{name}",
                         type=float, default=None,
                         help=f"model parameter {name}")(f)
    return f


def common_options(f):
    f = click.option("--config", "config_path", type=click.Path(path_type=Path),
                     default=None, help="flat key=value config file")(f)
    f = click.option("--out", "out", default=None,
                     help="artifact path (default: $SWITCHSTOP_OUT/<verb>.<format>)")(f)
    f = click.option("--format", "fmt", type=click.Choice(["csv", "json"]),
                     default=None, help="artifact format")(f)
    f = click.option("--server", default=None,
                     help="run against an HTTP service instead of in-process")(f)
    return f


def _load_config(config_path: Optional[Path]) -> Dict[str, str]:
    return parse_config_file(config_path) if config_path else {}


def _flag_params(kwargs: Dict[str, Optional[float]]) -> Dict[str, Optional[float]]:
    return {name: kwargs.pop(f"p_{name}") for name in PARAM_FIELDS}


@click.group()
def cli():
    """Equilibrium thresholds and value functions for a two-regime stopping game."""


@cli.command()
@common_options
@params_options
@click.option("--init", "init_text", default=None,
              help="comma list a1,a2,b1,b2 to warm-start the solver")
def solve(config_path, out, fmt, server, init_text, **kwargs):
    """Solve for the four equilibrium thresholds and verify the solution."""
    cfg_map = _load_config(config_path)
    params = _resolve_params(cfg_map, _flag_params(kwargs))
    init_text = init_text or cfg_map.get("init")
    init = None
    if init_text:
        vals = _parse_values(init_text, "init")
        if len(vals) != 4:
            raise ValidationError(["init must have exactly 4 values a1,a2,b1,b2"])
        init = Thresholds(*vals).validate_ordering()
    path, fmt = _resolve_output(cfg_map, out, fmt, "solve")
    cfg = RunConfig(mode="solve", params=params, init=init, output_path=path,
                    output_format=fmt, server=server)
    return run_solve(cfg)


@cli.command()
@common_options
@click.option("--r", "r", type=float, default=None, help="discount rate")
@click.option("--sigma", type=float, default=None, help="volatility")
@click.option("--K", "K", type=float, default=None, help="Player-1 payoff offset")
@click.option("--Ktilde", "Ktilde", type=float, default=None,
              help="Player-2 payoff offset")
def reduce(config_path, out, fmt, server, r, sigma, K, Ktilde):
    """Solve the single-regime reduction (two thresholds)."""
    cfg_map = _load_config(config_path)
    args = []
    missing = []
    for flag, key in ((r, "reduce.r"), (sigma, "reduce.sigma"),
                      (K, "reduce.K"), (Ktilde, "reduce.Ktilde")):
        if flag is not None:
            args.append(flag)
        elif key in cfg_map:
            args.append(_parse_float(cfg_map[key], key))
        else:
            missing.append(key)
    if missing:
        raise ValidationError([f"missing parameter {m}" for m in missing])
    path, fmt = _resolve_output(cfg_map, out, fmt, "reduce")
    cfg = RunConfig(mode="reduce", reduce_args=tuple(args), output_path=path,
                    output_format=fmt, server=server)
    return run_reduce(cfg)


@cli.command()
@common_options
@params_options
@click.option("--solution", "solution_path", type=click.Path(path_type=Path),
              default=None, help="re-verify a previously dumped solution JSON")
@click.option("--grid", type=int, default=None, help="verification grid point count")
def verify(config_path, out, fmt, server, solution_path, grid, **kwargs):
    """Check smoothness, bounds, and variational inequalities numerically."""
    cfg_map = _load_config(config_path)
    flags = _flag_params(kwargs)
    params = None
    if solution_path is None:
        params = _resolve_params(cfg_map, flags)
    if grid is None and "grid" in cfg_map:
        grid = _parse_int(cfg_map["grid"], "grid")
    path, fmt = _resolve_output(cfg_map, out, fmt, "verify")
    cfg = RunConfig(mode="verify", params=params, solution_path=solution_path,
                    grid=grid, output_path=path, output_format=fmt, server=server)
    return run_verify(cfg)


@cli.command()
@common_options
@params_options
@click.option("--start-x", type=float, default=None, help="initial level X_0")
@click.option("--start-regime", type=int, default=None, help="initial regime (1 or 2)")
@click.option("--paths", type=int, default=None, help="number of Monte Carlo paths")
@click.option("--dt", type=float, default=None, help="Euler time step")
@click.option("--seed", type=int, default=None, help="RNG seed")
@click.option("--horizon", type=float, default=None, help="truncation time")
@click.option("--antithetic/--no-antithetic", "antithetic", default=None,
              help="antithetic path pairing")
@click.option("--a1", type=float, default=None, help="override strategy level a1")
@click.option("--a2", type=float, default=None, help="override strategy level a2")
@click.option("--b1", type=float, default=None, help="override strategy level b1")
@click.option("--b2", type=float, default=None, help="override strategy level b2")
def simulate(config_path, out, fmt, server, start_x, start_regime, paths, dt,
             seed, horizon, antithetic, a1, a2, b1, b2, **kwargs):
    """Estimate the discounted payoff by Monte Carlo under threshold rules."""
    cfg_map = _load_config(config_path)
    params = _resolve_params(cfg_map, _flag_params(kwargs))
    if start_x is None and "start.x" in cfg_map:
        start_x = _parse_float(cfg_map["start.x"], "start.x")
    if start_regime is None and "start.regime" in cfg_map:
        start_regime = _parse_int(cfg_map["start.regime"], "start.regime")
    if start_x is None or start_regime is None:
        raise ValidationError(["simulate requires start.x and start.regime "
                               "(flags --start-x / --start-regime)"])
    sim = _resolve_sim(cfg_map, dt, paths, seed, horizon, antithetic)
    levels = (a1, a2, b1, b2)
    strategy = None
    if any(v is not None for v in levels):
        if any(v is None for v in levels):
            raise ValidationError(
                ["strategy override requires all of --a1, --a2, --b1, --b2"])
        strategy = ThresholdStrategyPair(p1_levels=(a1, a2), p2_levels=(b1, b2))
    path, fmt = _resolve_output(cfg_map, out, fmt, "simulate")
    cfg = RunConfig(mode="simulate", params=params, sim=sim,
                    start=(start_x, start_regime), strategy=strategy,
                    output_path=path, output_format=fmt, server=server)
    return run_simulate(cfg)


@cli.command()
@common_options
@params_options
@click.option("--param", "--sweep.param", "param", default=None,
              help=f"parameter to sweep: one of {', '.join(SWEEPABLE_PARAMS)}")
@click.option("--values", "--sweep.values", "values_text", default=None,
              help="comma list of parameter values")
@click.option("--parallel", is_flag=True, default=False,
              help="solve rows independently from cold starts")
def sweep(config_path, out, fmt, server, param, values_text, parallel, **kwargs):
    """Solve once per parameter value; rows warm-start from the previous row."""
    cfg_map = _load_config(config_path)
    params = _resolve_params(cfg_map, _flag_params(kwargs))
    param = param or cfg_map.get("sweep.param")
    values_text = values_text or cfg_map.get("sweep.values")
    if not param or not values_text:
        raise ValidationError(["sweep requires sweep.param and sweep.values "
                               "(flags --param / --values)"])
    values = _parse_values(values_text, "sweep.values")
    path, fmt = _resolve_output(cfg_map, out, fmt, "sweep")
    cfg = RunConfig(mode="sweep", params=params, sweep=(param, values),
                    parallel=parallel, output_path=path, output_format=fmt,
                    server=server)
    return run_sweep(cfg)


@cli.command()
@common_options
@params_options
@click.option("--grid", type=int, default=None, help="number of grid points (default 2000)")
def plotdata(config_path, out, fmt, server, grid, **kwargs):
    """Emit value-function, envelope, and generator columns for plotting."""
    cfg_map = _load_config(config_path)
    params = _resolve_params(cfg_map, _flag_params(kwargs))
    if grid is None and "grid" in cfg_map:
        grid = _parse_int(cfg_map["grid"], "grid")
    path, fmt = _resolve_output(cfg_map, out, fmt, "plotdata")
    cfg = RunConfig(mode="plotdata", params=params, grid=grid,
                    output_path=path, output_format=fmt, server=server)
    return run_plotdata(cfg)


@cli.command()
@click.option("--host", default="127.0.0.1", help="bind address")
@click.option("--port", type=int, default=8000, help="bind port")
def serve(host, port):
    """Run the HTTP service."""
    import uvicorn

    from .service import app
    uvicorn.run(app, host=host, port=port)
    return EXIT_OK


def main(argv: Optional[List[str]] = None) -> int:
    """Entry point with the documented exit-code contract."""
    try:
        rv = cli.main(args=argv, prog_name="switchstop", standalone_mode=False)
        return int(rv) if isinstance(rv, int) else EXIT_OK
    except ValidationError as exc:
        for problem in exc.problems:
            click.echo(f"error: {problem}", err=True)
        return EXIT_VALIDATION
    except SOLVER_ERRORS as exc:
        click.echo(f"error: {exc}", err=True)
        return EXIT_NO_CONVERGENCE
    except ArtifactIOError as exc:
        click.echo(f"error: {exc}", err=True)
        return EXIT_IO
    except click.UsageError as exc:
        click.echo(f"error: {exc.format_message()}", err=True)
        return EXIT_VALIDATION
    except click.ClickException as exc:
        click.echo(f"error: {exc.format_message()}", err=True)
        return EXIT_NO_CONVERGENCE
    except click.exceptions.Abort:
        return EXIT_VALIDATION
    except OSError as exc:
        click.echo(f"error: {exc}", err=True)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
