"""Scenario configs: JSON schema, bundled gallery and the runners behind the CLI.

A scenario is a JSON document with ``"version": 1``, a ``kind`` and the
parameters that kind needs.  Unknown keys are rejected.  Each runner writes
CSV files (with a leading ``#`` metadata block) plus ``summary.json`` and
returns the list of files written; the CLI adds ``manifest.json``.
"""

import csv
import io
import json
from importlib import resources
from pathlib import Path

import jsonschema
import numpy as np

from . import ansatz as an
from . import flux as fl
from . import fv_oracle as fv
from . import kernels as kn
from . import phase_dynamics as pd
from . import switch as sw
from . import weak_residual as wr
from .errors import DomainError

SCHEMA_VERSION = 1

KINDS = ("single_shock", "two_shock_interaction", "naive_W", "rho_profile",
         "switch_table", "residual_sweep", "oracle_compare")

_num = {"type": "number"}
_pos = {"type": "number", "exclusiveMinimum": 0}

_kernel = {
    "type": "object",
    "properties": {"family": {"enum": list(kn.FAMILIES)}, "width": _pos, "shift": _num,
                   "z": {"type": "array", "items": _num}, "w": {"type": "array", "items": _num}},
    "required": ["family"],
    "additionalProperties": False,
}

_flux = {
    "oneOf": [
        {"enum": sorted(fl.BUILTIN)},
        {"type": "object",
         "properties": {"label": {"type": "string"},
                        "table": {"type": "object",
                                  "properties": {"u": {"type": "array", "items": _num},
                                                 "f": {"type": "array", "items": _num}},
                                  "required": ["u", "f"], "additionalProperties": False}},
         "required": ["label"], "additionalProperties": False},
    ]
}

_profile = {
    "type": "object",
    "properties": {"type": {"enum": ["constant", "linear", "tanh"]}, "a": _num, "b": _num, "c": _pos},
    "required": ["type", "a"],
    "additionalProperties": False,
}

_two_state = {
    "type": "object",
    "properties": {"u0": _num, "e1": _pos, "e2": _pos, "x1_0": _num, "x2_0": _num},
    "required": ["u0", "e1", "e2", "x1_0", "x2_0"],
    "additionalProperties": False,
}

_single_state = {
    "type": "object",
    "properties": {"u0": _profile, "e": _profile, "x0": _num, "T": _pos},
    "required": ["u0", "e", "x0"],
    "additionalProperties": False,
}

_naive_state = {
    "type": "object",
    "properties": {"a": {"type": "number", "exclusiveMinimum": 1}},
    "required": ["a"],
    "additionalProperties": False,
}

_numerics = {
    "type": "object",
    "properties": {
        "eps": {"type": "array", "items": _pos, "minItems": 1},
        "cells": {"type": "integer", "minimum": 2},
        "cfl": {"type": "number", "exclusiveMinimum": 0, "maximum": 0.9},
        "domain": {"type": "array", "items": _num, "minItems": 2, "maxItems": 2},
        "t_grid": {"type": "array", "items": {"type": "number", "minimum": 0}, "minItems": 1},
        "x_grid": {"type": "array", "items": _num, "minItems": 1},
        "tau_max": _pos,
        "step": _pos,
        "rho_max": _pos,
        "n": {"type": "integer", "minimum": 64},
        "stride": {"type": "integer", "minimum": 1},
        "hopf_path": {"type": "boolean"},
        "test_functions": {"type": "array", "minItems": 1,
                           "items": {"type": "array", "items": _num, "minItems": 2, "maxItems": 2}},
    },
    "additionalProperties": False,
}

SCHEMA = {
    "type": "object",
    "properties": {
        "version": {"const": SCHEMA_VERSION},
        "name": {"type": "string"},
        "kind": {"enum": list(KINDS)},
        "description": {"type": "string"},
        "anchor": {"type": "string"},
        "flux": _flux,
        "kernels": {"type": "array", "items": _kernel, "minItems": 1, "maxItems": 2},
        "state": {"type": "object"},
        "numerics": _numerics,
    },
    "required": ["version", "name", "kind", "state"],
    "additionalProperties": False,
    "allOf": [
        {"if": {"properties": {"kind": {"enum": ["two_shock_interaction", "rho_profile", "switch_table",
                                                 "residual_sweep", "oracle_compare"]}}},
         "then": {"properties": {"state": _two_state}}},
        {"if": {"properties": {"kind": {"const": "single_shock"}}},
         "then": {"properties": {"state": _single_state}}},
        {"if": {"properties": {"kind": {"const": "naive_W"}}},
         "then": {"properties": {"state": _naive_state}}},
    ],
}


class ConfigError(ValueError):
    """Schema violation; ``path`` locates the offending field."""

    def __init__(self, message, path="$"):
        super().__init__(f"{path}: {message}")
        self.path = path


def validate(cfg):
    validator = jsonschema.Draft202012Validator(SCHEMA)
    errors = sorted(validator.iter_errors(cfg), key=lambda e: list(e.absolute_path))
    if errors:
        err = errors[0]
        path = "$" + "".join(f"[{p}]" if isinstance(p, int) else f".{p}" for p in err.absolute_path)
        raise ConfigError(err.message, path)
    return cfg


def load(source):
    """Parse and validate a config from a path or a bundled scenario name."""
    path = Path(source)
    if not path.exists():
        bundled = bundled_path(source)
        if bundled is None:
            raise ConfigError(f"no such file or bundled scenario: {source!r}")
        path = bundled
    try:
        cfg = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise ConfigError(f"invalid JSON ({exc.msg} at line {exc.lineno})") from None
    return validate(cfg)


def _bundle_dir():
    return resources.files("weakshock") / "scenarios"


def bundled_path(name):
    p = _bundle_dir() / f"{name}.json"
    return Path(str(p)) if p.is_file() else None


def list_scenarios():
    """``[(name, description, anchor)]`` for every bundled scenario, sorted by name."""
    out = []
    for p in sorted(_bundle_dir().iterdir(), key=lambda q: q.name):
        if p.name.endswith(".json"):
            cfg = json.loads(p.read_text())
            out.append((cfg["name"], cfg.get("description", ""), cfg.get("anchor", "")))
    return out


# -- builders ---------------------------------------------------------------

def _profile_fn(spec):
    a, b, c = spec["a"], spec.get("b", 0.0), spec.get("c", 1.0)
    kind = spec["type"]
    if kind == "constant":
        return lambda x: np.full_like(np.asarray(x, dtype=float), a)
    if kind == "linear":
        return lambda x: a + b * np.asarray(x, dtype=float)
    return lambda x: a + b * np.tanh(np.asarray(x, dtype=float) / c)


def _as_config_error(path):
    def wrap(fn):
        def inner(cfg):
            try:
                return fn(cfg)
            except DomainError as exc:
                raise ConfigError(str(exc), path) from None
        inner.__doc__ = fn.__doc__
        return inner
    return wrap


@_as_config_error("$.flux")
def build_flux(cfg):
    return fl.from_config(cfg.get("flux", "hopf"))


@_as_config_error("$.kernels")
def build_kernels(cfg):
    specs = cfg.get("kernels") or [{"family": "gaussian"}]
    ks = [kn.from_config(k) for k in specs]
    return (ks[0], ks[-1])


@_as_config_error("$.state")
def build_two_state(cfg):
    return pd.TwoShockState(**{k: float(v) for k, v in cfg["state"].items()})


@_as_config_error("$.state")
def build_single_state(cfg):
    st = cfg["state"]
    return fl.SingleShockState(_profile_fn(st["u0"]), _profile_fn(st["e"]), float(st["x0"]),
                               float(st.get("T", 1.0)))


# -- output helpers -----------------------------------------------------------

def csv_text(columns, rows, metadata):
    buf = io.StringIO()
    for key, value in metadata.items():
        buf.write(f"# {key}: {value}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for row in rows:
        w.writerow([repr(float(v)) for v in row])
    return buf.getvalue()


class _Writer:
    def __init__(self, out_dir, name, kind, flux_label):
        self.out = Path(out_dir)
        self.out.mkdir(parents=True, exist_ok=True)
        self.meta = {"scenario": name, "kind": kind, "flux": flux_label,
                     "schema_version": SCHEMA_VERSION}
        self.files = []

    def csv(self, name, columns, rows, **extra):
        self.text(name, csv_text(columns, rows, {**self.meta, **extra}))

    def text(self, name, content):
        (self.out / name).write_text(content)
        self.files.append(name)

    def summary(self, data):
        self.text("summary.json", json.dumps(_jsonable({**self.meta, **data}), indent=2, sort_keys=True) + "\n")


def _jsonable(obj):
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    return obj


def _eps_tag(e):
    return f"{e:g}"


def _default_domain(flux, s, t_end):
    event = pd.merge_point(flux, s)
    speeds = np.abs([*event.pre_speeds, event.post_speed])
    pad = 1.0 + speeds.max() * t_end
    return (s.x1_0 - pad, s.x2_0 + pad)


# -- runners ----------------------------------------------------------------------

def _run_two_shock(cfg, w):
    flux, (k1, k2), s = build_flux(cfg), build_kernels(cfg), build_two_state(cfg)
    num = cfg.get("numerics", {})
    hopf_path = num.get("hopf_path", False)
    ps = pd.build_phase_set(flux, s, k1, k2, num.get("tau_max", 50.0), num.get("step", 0.01),
                            hopf_path=hopf_path)
    ev = ps.merge
    t_grid = np.asarray(num.get("t_grid", np.linspace(0.0, 2.0 * ev.t_star, 41)), dtype=float)
    for e in num.get("eps", [0.05]):
        p1, p2 = ps.full_phase(t_grid, e)
        l1, l2 = pd.limit_phases(flux, s, t_grid)
        w.csv(f"trajectories_eps={_eps_tag(e)}.csv", ["t", "phi1", "phi2", "phi1_limit", "phi2_limit"],
              np.column_stack([t_grid, p1, p2, l1, l2]), eps=e, t_star=ev.t_star, x_star=ev.x_star)
    _write_fast(w, ps, num.get("stride", 10))
    w.summary({"t_star": ev.t_star, "x_star": ev.x_star, "pre_speeds": list(ev.pre_speeds),
               "post_speed": ev.post_speed, "rho0": ps.rho.rho0,
               "switch_target": ps.rho.dynamics.target})


def _write_fast(w, ps, stride):
    r = ps.rho
    idx = np.arange(0, r.tau_grid.size, stride)
    w.csv("rho_profile.csv", ["tau", "rho", "F"],
          np.column_stack([r.tau_grid[idx], r.rho_values[idx], r.F(r.rho_values[idx])]), rho0=r.rho0)
    w.csv("perturbations.csv", ["tau", "phi11", "phi21"], ps.perturbations.rows()[idx],
          note="phi_k1 has a pole at tau=0 (written as nan)")


def _run_rho_profile(cfg, w):
    flux, (k1, k2), s = build_flux(cfg), build_kernels(cfg), build_two_state(cfg)
    num = cfg.get("numerics", {})
    ps = pd.build_phase_set(flux, s, k1, k2, num.get("tau_max", 50.0), num.get("step", 0.01),
                            hopf_path=num.get("hopf_path", False))
    _write_fast(w, ps, num.get("stride", 10))
    p = ps.perturbations
    w.summary({"rho0": ps.rho.rho0, "rho_at_minus_tau_max": float(ps.rho.rho_values[0]),
               "phi11_at_minus_tau_max": p.phi11(p.tau_grid[0]),
               "phi21_at_minus_tau_max": p.phi21(p.tau_grid[0])})


def _run_switch_table(cfg, w):
    flux, (k1, k2), s = build_flux(cfg), build_kernels(cfg), build_two_state(cfg)
    num = cfg.get("numerics", {})
    table = sw.build_switch_table(flux, s.u0, s.e1, s.e2, k1, k2, num.get("rho_max"), num.get("n"))
    write_switch_table(w, table)


def write_switch_table(w, table):
    w.csv("switch_table.csv", ["rho", "b1", "b2", "sum_residual"], table.rows(),
          constant=table.constant, interpolation=table.interpolation)
    w.summary({"constant": table.constant, "n": int(table.rho.size), "rho_max": float(table.rho[-1]),
               "max_sum_residual": float(np.max(np.abs(table.rows()[:, 3])))})


def _run_naive(cfg, w):
    a = float(cfg["state"]["a"])
    num = cfg.get("numerics", {})
    lo, hi = an.naive_time_range(a)
    t = np.asarray(num.get("t_grid", np.linspace(0.0, 0.95 * hi, 39)), dtype=float)
    w.csv("naive_phi.csv", ["t", "phi", "dphi_dt"],
          np.column_stack([t, an.naive_phi(a, t), an.naive_phi_rate(a, t)]), a=a)
    x = np.linspace(-1.5, 1.5, 61)
    rows = [(tt, xx, an.naive_W_solution(a, tt, xx)) for tt in t[:: max(1, t.size // 4)] for xx in x]
    w.csv("naive_W_field.csv", ["t", "x", "W"], rows, a=a)
    w.summary({"a": a, "initial_slope": float(an.naive_phi_rate(a, 0.0)),
               "time_range": [lo, hi]})


def _run_single(cfg, w):
    flux, s = build_flux(cfg), build_single_state(cfg)
    num = cfg.get("numerics", {})
    t = np.asarray(num.get("t_grid", [0.1, 0.2, 0.3, 0.4]), dtype=float)
    domain = num.get("domain", [s.x0 - 12.0, s.x0 + 12.0])
    xg = np.linspace(*domain, 1601)
    sol = an.single_shock_solve(flux, s, t, np.linspace(s.x0 - 1.0, s.x0 + 1.0, 41), horizon_grid=xg)
    g = fv.godunov_solve(flux, s.initial, domain, num.get("cells", 4096), snapshots=t,
                         cfl=num.get("cfl", 0.9))
    oracle = []
    for tt, p in zip(t, sol.front):
        pos = fv.extract_shock_positions(g, tt, threshold=0.5 * float(np.min(s.e_init(np.array([p])))))
        oracle.append(min(pos, key=lambda q: abs(q - p)) if pos else np.nan)
    w.csv("front.csv", ["t", "phi", "phi_oracle"], np.column_stack([t, sol.front, oracle]),
          horizon=sol.horizon, dx=g.dx)
    w.summary({"horizon": sol.horizon, "dx": g.dx,
               "max_front_error_over_dx": float(np.nanmax(np.abs(sol.front - oracle)) / g.dx)})


def default_test_functions(s, t_end):
    """Five bumps of common radius spread over the region swept by the fronts."""
    lo = s.x1_0
    hi = max(s.x2_0, s.x2_0 + t_end)
    return [wr.TestFunction(c, 0.8 * (hi - lo + 1.0), f"tf{i}")
            for i, c in enumerate(np.linspace(lo, hi + 0.5, 5))]


def _run_residual(cfg, w):
    flux, (k1, k2), s = build_flux(cfg), build_kernels(cfg), build_two_state(cfg)
    num = cfg.get("numerics", {})
    ps = pd.build_phase_set(flux, s, k1, k2, num.get("tau_max", 50.0), num.get("step", 0.01),
                            hopf_path=num.get("hopf_path", False))
    ts = ps.merge.t_star
    t_grid = np.asarray(num.get("t_grid", np.linspace(0.2 * ts, 1.8 * ts, 9)), dtype=float)
    if "test_functions" in num:
        tfs = [wr.TestFunction(c, r, f"tf{i}") for i, (c, r) in enumerate(num["test_functions"])]
    else:
        tfs = default_test_functions(s, float(t_grid[-1]))
    eps = num.get("eps", [0.1, 0.05, 0.025, 0.0125])
    rep = wr.epsilon_sweep(lambda e: an.interaction_ansatz(ps, (k1, k2), e, flux), t_grid, tfs, eps)
    w.text("residuals.csv", rep.to_csv({**w.meta, "t_star": ts}))
    w.summary({**rep.summary(), "order_by_t": rep.order_by_t, "t_grid": t_grid,
               "test_functions": [[tf.center, tf.radius] for tf in tfs]})


def _run_compare(cfg, w):
    flux, (k1, k2), s = build_flux(cfg), build_kernels(cfg), build_two_state(cfg)
    num = cfg.get("numerics", {})
    ps = pd.build_phase_set(flux, s, k1, k2, num.get("tau_max", 50.0), num.get("step", 0.01),
                            hopf_path=num.get("hopf_path", False))
    ev = ps.merge
    t_grid = np.asarray(num.get("t_grid", [0.5 * ev.t_star, ev.t_star, 1.5 * ev.t_star, 2.0 * ev.t_star]))
    domain = num.get("domain") or _default_domain(flux, s, float(t_grid.max()))
    L = an.two_shock_limit(flux, s)
    g = fv.godunov_solve(flux, L, domain, num.get("cells", 4096), snapshots=t_grid,
                         cfl=num.get("cfl", 0.9))
    eps = num.get("eps", [0.05])[-1]
    A = an.interaction_ansatz(ps, (k1, k2), eps, flux)
    xs = g.x_centers[:: max(1, g.n_cells // 400)]
    rows, shocks, l1 = [], [], {}
    for t in t_grid:
        u_or = g.snapshot(t)[:: max(1, g.n_cells // 400)]
        rows += list(zip(xs, np.full(xs.shape, t), A(xs, t), L(xs, t), u_or))
        pos = fv.extract_shock_positions(g, t, threshold=0.5 * min(s.e1, s.e2))
        lim = sorted(set(np.atleast_1d(pd.limit_phases(flux, s, t))))
        shocks += [(t, i, p, lim[i] if i < len(lim) else np.nan) for i, p in enumerate(pos)]
        l1[repr(float(t))] = fv.l1_distance(g, L, t)
    w.csv("field.csv", ["x", "t", "u_ansatz", "u_limit", "u_oracle"], rows, eps=eps, cells=g.n_cells,
          cfl=g.cfl)
    w.csv("shocks.csv", ["t", "index", "x_oracle", "x_limit"], shocks, dx=g.dx)
    errs = [abs(r[2] - r[3]) / g.dx for r in shocks if np.isfinite(r[3])]
    w.summary({"t_star": ev.t_star, "x_star": ev.x_star, "dx": g.dx, "l1_oracle_vs_limit": l1,
               "max_shock_error_over_dx": max(errs) if errs else None})


RUNNERS = {
    "two_shock_interaction": _run_two_shock,
    "rho_profile": _run_rho_profile,
    "switch_table": _run_switch_table,
    "naive_W": _run_naive,
    "single_shock": _run_single,
    "residual_sweep": _run_residual,
    "oracle_compare": _run_compare,
}


def run(cfg, out_dir, kind=None):
    """Run a validated config; returns the names of the files written."""
    kind = kind or cfg["kind"]
    w = _Writer(out_dir, cfg["name"], kind, build_flux(cfg).label)
    RUNNERS[kind](cfg, w)
    return w.files


def switch_table_files(table, out_dir, name="switch_table"):
    w = _Writer(out_dir, name, "switch_table", table.context["flux"])
    write_switch_table(w, table)
    return w.files
