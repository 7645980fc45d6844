"""Command-line front end: config parsing, catalog selection, dispatch.

Exit codes: 0 when every verdict passes or is informational, 1 when any
verdict fails, 2 on runtime errors (bad configs, unknown names, resource
guards).  All file output is UTF-8 with LF line endings and 17 significant
digits.
"""

from __future__ import annotations

import argparse
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from .carleson import BoxDensity, box_mass, box_report_csv, carleson_norm, vanishing_profile
from .errors import BadParams, ParseError, QclineError, UnknownName, ValidationError
from .experiments import SCENARIOS, run_scenario
from .extension import DilatationField, GridSpec, ba_extend, complex_dilatation, de_extend_line
from .homeo import (
    catalog_names,
    doubling_constant,
    dump_csv,
    log_deriv,
    make_catalog,
    modulus_of_continuity,
    qs_constant,
    symmetric_profile,
)
from .intervals import Interval
from .oscillation import bmo_norm_estimate, vmo_profile
from .profiles import format_float

MAX_DEPTH = 24  # dyadic levels; past this the grids outgrow desk-scale runs

_HOMEO_OPS = ("qs", "doubling", "symmetric", "modulus", "dump")
_OSC_OPS = ("vmo", "bmo")
_EXTEND_OPS = ("ba", "de")
_CARLESON_OPS = ("box", "norm", "profile", "report")


# ---------------------------------------------------------------------------
# config text format: `key = value` lines with [section] headers


def _coerce(text: str):
    """Scalar or comma list; numbers and booleans are recognized, rest is text."""
    s = text.strip()
    if "," in s:
        items = [p for p in (q.strip() for q in s.split(",")) if p]
        return [_coerce(p) for p in items]
    low = s.lower()
    if low in ("true", "false"):
        return low == "true"
    try:
        return int(s)
    except ValueError:
        pass
    try:
        return float(s)
    except ValueError:
        return s


def _fmt_value(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return format_float(v)
    if isinstance(v, (list, tuple)):
        body = ",".join(_fmt_value(x) for x in v)
        return body if len(v) != 1 else body + ","
    return str(v)


def loads_config(text: str, label: str = "<config>") -> dict:
    """Parse sectioned key = value text; malformed lines raise ParseError."""
    out: dict = {}
    section = None
    for i, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("["):
            if not line.endswith("]") or len(line) < 3:
                raise ParseError(f"{label}:{i}: malformed section header {raw.strip()!r}")
            section = line[1:-1].strip()
            out.setdefault(section, {})
            continue
        if "=" not in line:
            raise ParseError(f"{label}:{i}: expected 'key = value', got {raw.strip()!r}")
        key, val = (p.strip() for p in line.split("=", 1))
        if not key:
            raise ParseError(f"{label}:{i}: empty key")
        target = out if section is None else out[section]
        target[key] = _coerce(val)
    return out


def dumps_config(cfg: dict) -> str:
    """Canonical text for a config mapping; parses back to the same mapping."""
    lines = []
    for k in sorted(k for k in cfg if not isinstance(cfg[k], dict)):
        lines.append(f"{k} = {_fmt_value(cfg[k])}")
    for k in sorted(k for k in cfg if isinstance(cfg[k], dict)):
        lines.append("")
        lines.append(f"[{k}]")
        for kk in sorted(cfg[k]):
            lines.append(f"{kk} = {_fmt_value(cfg[k][kk])}")
    return "\n".join(lines).lstrip("\n") + "\n"


def _apply_set(cfg: dict, pair: str):
    if "=" not in pair:
        raise ParseError(f"--set {pair!r}: expected key=value")
    key, val = (p.strip() for p in pair.split("=", 1))
    if not key:
        raise ParseError(f"--set {pair!r}: empty key")
    value = _coerce(val)
    if "." in key:
        sec, sub = key.split(".", 1)
        cfg.setdefault(sec, {})
        if not isinstance(cfg[sec], dict):
            raise ParseError(f"--set {pair!r}: {sec!r} is not a section")
        cfg[sec][sub] = value
    else:
        cfg[key] = value


def _validate(cfg: dict) -> None:
    """Reject unordered scales and out-of-budget grids; list every offender."""
    bad = []
    for key, v in list(cfg.items()) + [
        (f"{s}.{k}", vv) for s, d in cfg.items() if isinstance(d, dict) for k, vv in d.items()
    ]:
        leaf = key.rsplit(".", 1)[-1]
        if leaf.endswith("scales") and isinstance(v, list):
            arr = [x for x in v if isinstance(x, (int, float))]
            if len(arr) != len(v) or any(x <= 0 for x in arr) or any(
                b >= a for a, b in zip(arr, arr[1:])
            ):
                bad.append(f"{key}: scales must be positive and strictly decreasing")
        elif leaf in ("depth", "companion_depth", "field_depth"):
            if not isinstance(v, int) or not (1 <= v <= MAX_DEPTH):
                bad.append(f"{key}: grid depth must be an integer in [1, {MAX_DEPTH}] (resource guard)")
        elif leaf in ("top", "stride", "n_nodes", "chunk") and isinstance(v, (int, float)):
            if v <= 0:
                bad.append(f"{key}: must be positive")
        elif leaf.endswith("window") and isinstance(v, list):
            if len(v) != 2 or not all(isinstance(x, (int, float)) for x in v) or not v[0] < v[1]:
                bad.append(f"{key}: window must be two ascending numbers")
    if bad:
        raise ValidationError("; ".join(bad))


def parse_config(path: str | None = None, sets=(), flags: dict | None = None) -> dict:
    """Override mapping from a config file, --set pairs, and named flags.

    Later sources win: file, then sets, then flags.
    """
    cfg: dict = {}
    if path is not None:
        try:
            text = Path(path).read_text(encoding="utf-8")
        except OSError as exc:
            raise ParseError(f"cannot read config {path!r}: {exc}") from exc
        cfg = loads_config(text, label=str(path))
    for pair in sets:
        _apply_set(cfg, pair)
    for key, v in (flags or {}).items():
        if v is not None:
            cfg[key] = v
    _validate(cfg)
    return cfg


@dataclass
class RunConfig:
    """A validated scenario request: name plus overrides and output policy."""

    name: str
    overrides: dict = field(default_factory=dict)
    outdir: str = ""
    threads: int = 1
    echo_only: bool = False


# ---------------------------------------------------------------------------
# dispatch


def _outdir(value: str | None) -> Path:
    return Path(value or os.environ.get("QCLINE_OUTDIR") or "qcline-out")


def _normalize_scenario(name: str) -> str:
    n = name.replace("-", "_")
    if n.startswith("run_"):
        n = n[4:]
    return n


def _run_one(name: str, overrides: dict, outdir: Path):
    rep = run_scenario(name, overrides or None)
    path = rep.write(outdir)
    return rep, path


def dispatch(cfg: RunConfig) -> int:
    """Run one scenario (or all); 0 pass, 1 any fail verdict, 2 on errors."""
    names = sorted(SCENARIOS) if cfg.name == "all" else [_normalize_scenario(cfg.name)]
    for n in names:
        if n not in SCENARIOS:
            raise UnknownName(f"unknown scenario {n!r}; choose from {', '.join(sorted(SCENARIOS))}")
    if cfg.echo_only:
        for n in names:
            sys.stdout.write(dumps_config(_merged_defaults(n, cfg.overrides)))
        return 0
    outdir = _outdir(cfg.outdir)
    if len(names) == 1:
        rep, path = _run_one(names[0], cfg.overrides, outdir)
        results = [(names[0], rep, path)]
    else:
        # deterministic reduction: submission and reporting follow name order
        with ThreadPoolExecutor(max_workers=max(1, cfg.threads)) as pool:
            futs = [(n, pool.submit(_run_one, n, cfg.overrides, outdir)) for n in names]
            results = [(n, *f.result()) for n, f in futs]
    code = 0
    for n, rep, path in results:
        print(path)
        for v_name in sorted(rep.verdicts):
            print(f"  {n}.{v_name}: {rep.verdicts[v_name]}")
        if not rep.passed:
            code = 1
    return code


def _merged_defaults(name: str, overrides: dict) -> dict:
    from .experiments import _merge

    defaults_map = {
        "composition_failure": "_COMPOSITION_DEFAULTS",
        "uc_closure": "_UC_DEFAULTS",
        "symmetric_closure": "_SYMMETRIC_DEFAULTS",
        "de_vanishing": "_DE_DEFAULTS",
        "chain_rule": "_CHAIN_DEFAULTS",
        "cayley_comparison": "_CAYLEY_DEFAULTS",
    }
    import qcline.experiments as _exp

    return _merge(getattr(_exp, defaults_map[name]), overrides or None)


# ---------------------------------------------------------------------------
# sub-handlers


def _kv_params(pairs) -> dict:
    out = {}
    for pair in pairs or ():
        if "=" not in pair:
            raise ParseError(f"--param {pair!r}: expected key=value")
        k, v = (p.strip() for p in pair.split("=", 1))
        out[k] = _coerce(v)
    return out


def _interval_arg(v, flag: str) -> Interval:
    vals = v if isinstance(v, list) else _coerce(v)
    if not isinstance(vals, list) or len(vals) != 2:
        raise ValidationError(f"{flag}: expected two comma-separated numbers")
    return Interval(float(vals[0]), float(vals[1]))


def _scales_arg(v) -> list:
    vals = v if isinstance(v, list) else _coerce(v)
    if not isinstance(vals, list):
        vals = [vals]
    out = [float(x) for x in vals]
    if any(x <= 0 for x in out) or any(b >= a for a, b in zip(out, out[1:])):
        raise ValidationError("scales: must be positive and strictly decreasing")
    return out


def _cmd_catalog(args) -> int:
    for name in catalog_names():
        print(name)
    return 0


def _cmd_homeo(args) -> int:
    h = make_catalog(args.name, **_kv_params(args.param))
    win = _interval_arg(args.window, "--window")
    if args.op == "dump":
        out = _outdir(args.outdir)
        out.mkdir(parents=True, exist_ok=True)
        path = out / f"{args.name}.csv"
        dump_csv(h, path, n=args.n, window=win)
        print(path)
        return 0
    scales = _scales_arg(args.scales)
    if args.op == "qs":
        print(format_float(qs_constant(h, win, scales)))
        return 0
    if args.op == "doubling":
        print(format_float(doubling_constant(h, win, scales)))
        return 0
    prof = (
        symmetric_profile(h, win, scales)
        if args.op == "symmetric"
        else modulus_of_continuity(h, win, scales)
    )
    out = _outdir(args.outdir)
    out.mkdir(parents=True, exist_ok=True)
    path = out / f"{args.name}_{args.op}.csv"
    prof.to_csv(path)
    print(path)
    print(f"final: {format_float(prof.final_value)}")
    return 0


def _cmd_oscillation(args) -> int:
    h = make_catalog(args.name, **_kv_params(args.param))
    u = log_deriv(h)
    win = _interval_arg(args.window, "--window")
    scales = _scales_arg(args.scales)
    if args.op == "bmo":
        print(format_float(bmo_norm_estimate(u, win, scales)))
        return 0
    prof = vmo_profile(u, win, scales, threshold=args.threshold)
    out = _outdir(args.outdir)
    out.mkdir(parents=True, exist_ok=True)
    path = out / f"{args.name}_vmo.csv"
    prof.to_csv(path)
    print(path)
    print(f"final: {format_float(prof.final_value)}")
    print(f"vmo: {bool(prof.meta['vmo'])}")
    return 0


def _cmd_extend(args) -> int:
    h = make_catalog(args.name, **_kv_params(args.param))
    if args.depth > MAX_DEPTH:
        raise ValidationError(f"depth {args.depth} exceeds the {MAX_DEPTH}-level resource budget")
    F = ba_extend(h) if args.op == "ba" else de_extend_line(h, n_nodes=args.n_nodes)
    win = _interval_arg(args.window, "--window")
    grid = GridSpec(win, top=args.top, depth=args.depth, stride=args.stride)
    fld = complex_dilatation(F, grid, fd_eps=args.fd_eps)
    out = _outdir(args.outdir)
    out.mkdir(parents=True, exist_ok=True)
    path = out / f"{args.name}_{args.op}_field.csv"
    fld.to_csv(path)
    print(path)
    print(f"sup_mu: {format_float(fld.sup_norm)}")
    return 0


def _cmd_carleson(args) -> int:
    fld = DilatationField.from_csv(args.field)
    d = BoxDensity.from_field(fld)
    if args.op == "box":
        iv = _interval_arg(args.interval, "--interval")
        bm = box_mass(d, iv, tol=args.tol)
        print(f"mass: {format_float(bm.value)}")
        print(f"mass_over_length: {format_float(bm.value / iv.length)}")
        print(f"diverging: {bm.diverging}")
        return 0
    win = _interval_arg(args.window, "--window")
    scales = _scales_arg(args.scales)
    if args.op == "norm":
        ns = carleson_norm(d, win, scales, tol=args.tol)
        print(f"norm: {format_float(ns.value)}")
        print(f"argmax: {ns.argmax}")
        print(f"diverging: {ns.diverging_any}")
        return 0
    out = _outdir(args.outdir)
    out.mkdir(parents=True, exist_ok=True)
    if args.op == "profile":
        prof = vanishing_profile(d, win, scales, tol=args.tol)
        path = out / "box_profile.csv"
        prof.to_csv(path)
        print(path)
        print(f"final: {format_float(prof.final_value)}")
        print(f"vanishing: {bool(prof.meta['vanishing'])}")
        return 0
    # report: disjoint boxes of the smallest scale tiling the window
    s = scales[-1]
    n = int(win.length / s)
    ivs = [Interval(win.a + i * s, win.a + (i + 1) * s) for i in range(n)]
    path = out / "boxes.csv"
    path.write_text(box_report_csv(d, ivs, tol=args.tol), encoding="utf-8", newline="")
    print(path)
    return 0


def _cmd_experiment(args) -> int:
    flags = {
        "h": args.h,
        "g": args.g,
        "scales": _scales_arg(args.scales) if args.scales else None,
        "window": [iv.a, iv.b] if (iv := (_interval_arg(args.window, "--window") if args.window else None)) else None,
        "top": args.top,
        "depth": args.depth,
        "pair_seed": args.seed,
    }
    overrides = parse_config(args.config, args.set or (), flags)
    cfg = RunConfig(
        name=args.name,
        overrides=overrides,
        outdir=args.outdir or "",
        threads=args.threads,
        echo_only=args.echo_config,
    )
    return dispatch(cfg)


# ---------------------------------------------------------------------------
# parser


def _scenario_epilog() -> str:
    lines = ["scenarios (experiment <name>):"]
    for n in sorted(SCENARIOS):
        lines.append(f"  {n:22s} {SCENARIOS[n][1]}")
    lines.append("operations:")
    lines.append(f"  homeo:       {' '.join(_HOMEO_OPS)}")
    lines.append(f"  oscillation: {' '.join(_OSC_OPS)}")
    lines.append(f"  extend:      {' '.join(_EXTEND_OPS)}")
    lines.append(f"  carleson:    {' '.join(_CARLESON_OPS)}")
    lines.append("  catalog:     list")
    return "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qcline",
        description="Oscillation, extension, and box-mass diagnostics for line homeomorphisms.",
        epilog=_scenario_epilog(),
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("catalog", help="catalog inspection")
    p.add_argument("action", choices=["list"])
    p.set_defaults(handler=_cmd_catalog)

    def common(p):
        p.add_argument("--outdir", default=None, help="output directory (or QCLINE_OUTDIR)")

    p = sub.add_parser("homeo", help="map-level diagnostics: " + " ".join(_HOMEO_OPS))
    p.add_argument("name", help="catalog map name")
    p.add_argument("--op", choices=_HOMEO_OPS, default="symmetric")
    p.add_argument("--param", action="append", metavar="K=V", help="catalog parameter")
    p.add_argument("--window", default="-6,6")
    p.add_argument("--scales", default="1,0.5,0.25,0.125")
    p.add_argument("--n", type=int, default=512, help="rows for --op dump")
    common(p)
    p.set_defaults(handler=_cmd_homeo)

    p = sub.add_parser("oscillation", help="log-derivative oscillation: " + " ".join(_OSC_OPS))
    p.add_argument("name", help="catalog map name")
    p.add_argument("--op", choices=_OSC_OPS, default="vmo")
    p.add_argument("--param", action="append", metavar="K=V")
    p.add_argument("--window", default="-6,6")
    p.add_argument("--scales", default="1,0.5,0.25,0.125,0.0625")
    p.add_argument("--threshold", type=float, default=0.05)
    common(p)
    p.set_defaults(handler=_cmd_oscillation)

    p = sub.add_parser("extend", help="dilatation fields of extensions: " + " ".join(_EXTEND_OPS))
    p.add_argument("name", help="catalog map name")
    p.add_argument("--op", choices=_EXTEND_OPS, default="ba")
    p.add_argument("--param", action="append", metavar="K=V")
    p.add_argument("--window", default="-6,6")
    p.add_argument("--top", type=float, default=4.0)
    p.add_argument("--depth", type=int, default=6)
    p.add_argument("--stride", type=float, default=0.5)
    p.add_argument("--n-nodes", type=int, default=2048, dest="n_nodes")
    p.add_argument("--fd-eps", type=float, default=1e-4, dest="fd_eps")
    common(p)
    p.set_defaults(handler=_cmd_extend)

    p = sub.add_parser("carleson", help="box masses from a field CSV: " + " ".join(_CARLESON_OPS))
    p.add_argument("field", help="dilatation field CSV path")
    p.add_argument("--op", choices=_CARLESON_OPS, default="profile")
    p.add_argument("--interval", default="0,1", help="box base for --op box")
    p.add_argument("--window", default="-4,4")
    p.add_argument("--scales", default="1,0.5,0.25")
    p.add_argument("--tol", type=float, default=1e-9)
    common(p)
    p.set_defaults(handler=_cmd_carleson)

    p = sub.add_parser("experiment", help="scenario runners (see epilog; 'all' runs every one)")
    p.add_argument("name", help="scenario name or 'all'")
    p.add_argument("--config", default=None, help="key = value file with [sections]")
    p.add_argument("--set", action="append", metavar="KEY=VAL", help="override one config key")
    p.add_argument("--h", default=None, help="catalog name for h")
    p.add_argument("--g", default=None, help="catalog name for g")
    p.add_argument("--scales", default=None)
    p.add_argument("--window", default=None)
    p.add_argument("--top", type=float, default=None)
    p.add_argument("--depth", type=int, default=None)
    p.add_argument("--seed", type=int, default=None, help="pair seed where a scenario samples")
    p.add_argument("--threads", type=int, default=os.cpu_count() or 1)
    p.add_argument("--echo-config", action="store_true", help="print merged config and exit")
    common(p)
    p.set_defaults(handler=_cmd_experiment)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except QclineError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
