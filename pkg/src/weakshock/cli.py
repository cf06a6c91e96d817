"""Command-line scenario runner.

Subcommands::

    weakshock list
    weakshock run <config-or-bundled-name> [--out-dir D] [--eps E ...] [--cells N]
    weakshock compare <config-or-bundled-name> [--out-dir D] [--eps E] [--cells N]
    weakshock switch-table [--flux hopf] [--u0 0] [--e1 1] [--e2 1] [--kernel1 gaussian] ...

Exit status: 0 on success, 2 for configuration errors, 3 for numerical failures.
Every run writes ``manifest.json`` listing each emitted file with its SHA-256.
"""

import argparse
import hashlib
import json
import sys
import traceback
from pathlib import Path

from . import flux as fl
from . import kernels as kn
from . import scenarios
from . import switch as sw
from .errors import WeakShockError

EXIT_OK, EXIT_CONFIG, EXIT_NUMERIC = 0, 2, 3


def write_manifest(out_dir, files, extra=None):
    out = Path(out_dir)
    digests = {name: hashlib.sha256((out / name).read_bytes()).hexdigest() for name in sorted(files)}
    manifest = {"files": digests, **(extra or {})}
    (out / "manifest.json").write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n")
    return manifest


def _apply_overrides(cfg, args):
    num = dict(cfg.get("numerics", {}))
    if getattr(args, "eps", None):
        num["eps"] = list(args.eps)
    if getattr(args, "cells", None):
        num["cells"] = args.cells
    cfg = {**cfg, "numerics": num}
    return scenarios.validate(cfg)


def _out_dir(args, cfg):
    return Path(args.out_dir) if args.out_dir else Path("out") / cfg["name"]


def cmd_list(args):
    rows = scenarios.list_scenarios()
    width = max(len(r[0]) for r in rows)
    for name, desc, anchor in rows:
        print(f"{name:<{width}}  {desc}  [{anchor}]")
    return EXIT_OK


def _run(args, kind=None):
    cfg = _apply_overrides(scenarios.load(args.config), args)
    if kind == "oracle_compare" and cfg["kind"] not in ("two_shock_interaction", "oracle_compare",
                                                        "residual_sweep", "rho_profile"):
        raise scenarios.ConfigError(f"compare needs two-shock data, not kind {cfg['kind']!r}", "$.kind")
    out = _out_dir(args, cfg)
    files = scenarios.run(cfg, out, kind)
    write_manifest(out, files, {"scenario": cfg["name"], "kind": kind or cfg["kind"]})
    summary = json.loads((out / "summary.json").read_text())
    print(json.dumps(summary, indent=2, sort_keys=True))
    print(f"wrote {len(files) + 1} files to {out}")
    return EXIT_OK


def cmd_run(args):
    return _run(args)


def cmd_compare(args):
    return _run(args, "oracle_compare")


def cmd_switch_table(args):
    try:
        flux = fl.from_config(args.flux)
        k1 = kn.Kernel(args.kernel1, args.width1, args.shift1)
        k2 = kn.Kernel(args.kernel2, args.width2, args.shift2)
    except ValueError as exc:
        raise scenarios.ConfigError(str(exc)) from None
    for name in ("e1", "e2"):
        if not getattr(args, name) > 0:
            raise scenarios.ConfigError(f"--{name} must be positive, got {getattr(args, name)}")
    if args.n is not None and args.n < 64:
        raise scenarios.ConfigError(f"--n must be at least 64, got {args.n}")
    table = sw.build_switch_table(flux, args.u0, args.e1, args.e2, k1, k2, args.rho_max, args.n)
    out = Path(args.out_dir or "out/switch_table")
    files = scenarios.switch_table_files(table, out)
    write_manifest(out, files, {"kind": "switch_table"})
    print(f"wrote {len(files) + 1} files to {out}")
    return EXIT_OK


def build_parser():
    p = argparse.ArgumentParser(prog="weakshock", description=__doc__.split("\n")[0])
    sub = p.add_subparsers(dest="command", required=True)

    sub.add_parser("list", help="list bundled scenarios").set_defaults(func=cmd_list)

    for name, func, help_ in (("run", cmd_run, "run a scenario config"),
                              ("compare", cmd_compare, "compare ansatz, limit and oracle")):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("config", help="path to a JSON config or a bundled scenario name")
        sp.add_argument("--out-dir")
        sp.add_argument("--eps", type=float, action="append", help="repeatable; replaces the eps list")
        sp.add_argument("--cells", type=int)
        sp.set_defaults(func=func)

    sp = sub.add_parser("switch-table", help="tabulate B1, B2 and the sum residual")
    sp.add_argument("--flux", default="hopf", choices=sorted(fl.BUILTIN))
    sp.add_argument("--u0", type=float, default=0.0)
    sp.add_argument("--e1", type=float, default=1.0)
    sp.add_argument("--e2", type=float, default=1.0)
    for k in (1, 2):
        sp.add_argument(f"--kernel{k}", default="gaussian", choices=["gaussian", "bump"])
        sp.add_argument(f"--width{k}", type=float, default=1.0)
        sp.add_argument(f"--shift{k}", type=float, default=0.0)
    sp.add_argument("--rho-max", type=float)
    sp.add_argument("--n", type=int)
    sp.add_argument("--out-dir")
    sp.set_defaults(func=cmd_switch_table)
    return p


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_CONFIG if exc.code else EXIT_OK
    try:
        return args.func(args)
    except scenarios.ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except WeakShockError as exc:
        frames = [f for f in traceback.extract_tb(exc.__traceback__) if "weakshock" in f.filename]
        where = Path(frames[-1].filename).stem if frames else "weakshock"
        print(f"numeric error in {where} ({type(exc).__name__}): {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
