"""Command line front end.

Each subcommand drives one module, prints a short human summary to
stdout, and (given --out PREFIX) writes its CSV/PGM/JSON artifacts plus
a PREFIX.manifest.json recording command, normalized parameters, input
digests, version, seed and timestamp.  Re-running a manifest through
--config reproduces every CSV byte for byte; only the manifest's own
timestamp differs.

Exit codes: 0 success, 2 argument problems, 3 module errors (the message
names the error class).
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from datetime import datetime, timezone
from fractions import Fraction
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from . import __version__
from .errors import HrtlabError
from .flow import DiagonalFlow, product_trace, summability_probe
from .fmt import format_float, pgm_text
from .operators import independence_margin
from .points import (
    Configuration,
    TFPoint,
    classify_configuration,
    configuration_to_jsonable,
    normalize_configuration,
    parse_configuration,
)
from .relations import detect_relations, is_rationally_independent
from .torus import (
    TorusPoint,
    TrigPolynomial2,
    discrepancy,
    orbit,
    orbit_log_product,
    p_constancy_on_line,
    toral_line,
)
from .windows import make_window
from .zak import _IDENTITIES, check_zak_identity, zak_csv, zak_pgm, zak_transform


class _UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# value coercion: every option accepts the CLI string form and the JSON
# form a config file would hold


def _co_int(v: Any) -> int:
    try:
        return int(str(v), 10) if isinstance(v, str) else int(v)
    except (TypeError, ValueError):
        raise _UsageError(f"expected an integer, got {v!r}")


def _co_float(v: Any) -> float:
    if isinstance(v, str):
        try:
            return float(Fraction(v))
        except (ValueError, ZeroDivisionError):
            raise _UsageError(f"expected a number, got {v!r}")
    try:
        return float(v)
    except (TypeError, ValueError):
        raise _UsageError(f"expected a number, got {v!r}")


def _co_pair(v: Any) -> Tuple[float, float]:
    items: Sequence[Any]
    if isinstance(v, str):
        s = v.strip()
        if s.startswith("["):
            try:
                items = json.loads(s)
            except json.JSONDecodeError as e:
                raise _UsageError(f"bad pair {v!r}: {e}")
        else:
            items = s.split(",")
    else:
        items = v
    if not isinstance(items, (list, tuple)) or len(items) != 2:
        raise _UsageError(f"expected two comma-separated numbers, got {v!r}")
    return (_co_float(items[0]), _co_float(items[1]))


def _co_range(v: Any) -> List[float]:
    """start:stop:step with exact decimal arithmetic, a single number, or
    an explicit list.  Inclusive of start; inclusive of stop when the
    steps land on it."""
    if isinstance(v, (list, tuple)):
        return [_co_float(x) for x in v]
    s = str(v).strip()
    if s.startswith("["):
        try:
            items = json.loads(s)
        except json.JSONDecodeError:
            raise _UsageError(f"bad range list {v!r}")
        if not isinstance(items, list):
            raise _UsageError(f"bad range list {v!r}")
        return [_co_float(x) for x in items]
    parts = s.split(":")
    if len(parts) == 1:
        return [_co_float(s)]
    if len(parts) != 3:
        raise _UsageError(f"range must be start:stop:step, got {v!r}")
    try:
        start, stop, step = (Fraction(p) for p in parts)
    except (ValueError, ZeroDivisionError):
        raise _UsageError(f"range must hold numbers, got {v!r}")
    if step <= 0:
        raise _UsageError("range step must be positive")
    if stop < start:
        raise _UsageError("range stop must not precede start")
    vals = []
    x = start
    while x <= stop:
        vals.append(float(x))
        x += step
    return vals


def _co_json(v: Any) -> Any:
    if isinstance(v, str):
        try:
            return json.loads(v)
        except json.JSONDecodeError as e:
            raise _UsageError(f"bad JSON argument: {e}")
    return v


def _co_str(v: Any) -> str:
    return str(v)


def _co_bool(v: Any) -> bool:
    if isinstance(v, bool):
        return v
    if isinstance(v, str):
        if v.lower() in ("1", "true", "yes", "on"):
            return True
        if v.lower() in ("0", "false", "no", "off"):
            return False
    raise _UsageError(f"expected a boolean, got {v!r}")


@dataclass(frozen=True)
class _Opt:
    name: str  # dashed long-option name, also the manifest key
    coerce: Callable[[Any], Any]
    default: Any  # raw (uncoerced) default; _REQUIRED if mandatory
    help: str
    flag: bool = False

    @property
    def dest(self) -> str:
        return self.name.replace("-", "_")


_REQUIRED = object()


@dataclass
class _RunContext:
    out_prefix: Optional[str]
    written: List[str] = field(default_factory=list)

    def write(self, suffix: str, text: str) -> None:
        if self.out_prefix is None:
            return
        path = f"{self.out_prefix}.{suffix}"
        with open(path, "w", newline="") as fh:
            fh.write(text)
        self.written.append(path)


def _dump_json(obj: Any) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _jsonable_float(x: float) -> Any:
    if x != x:
        return "nan"
    if x == float("inf"):
        return "inf"
    if x == float("-inf"):
        return "-inf"
    return x


def _parse_poly(raw: Any) -> TrigPolynomial2:
    """Terms come as [[re, im, y, x], ...] or [[c, y, x], ...] (real c),
    optionally wrapped in {"terms": ...}."""
    data = raw
    if isinstance(data, dict):
        data = data.get("terms")
    if not isinstance(data, list) or not data:
        raise _UsageError("polynomial must be a nonempty list of terms")
    terms = []
    for entry in data:
        if not isinstance(entry, (list, tuple)):
            raise _UsageError(f"bad polynomial term {entry!r}")
        if len(entry) == 4:
            c = complex(_co_float(entry[0]), _co_float(entry[1]))
            y, x = _co_float(entry[2]), _co_float(entry[3])
        elif len(entry) == 3:
            c = complex(_co_float(entry[0]), 0.0)
            y, x = _co_float(entry[1]), _co_float(entry[2])
        else:
            raise _UsageError(
                f"terms are [re,im,y,x] or [c,y,x], got {entry!r}"
            )
        terms.append((c, y, x))
    try:
        return TrigPolynomial2(tuple(terms))
    except ValueError as e:
        raise _UsageError(str(e))


def _thread_count() -> int:
    raw = os.environ.get("HRTLAB_THREADS", "").strip()
    if raw in ("", "0"):
        return min(8, os.cpu_count() or 1)
    try:
        v = int(raw)
    except ValueError:
        raise _UsageError(f"HRTLAB_THREADS must be an integer, got {raw!r}")
    return max(1, v)


# ---------------------------------------------------------------------------
# subcommand handlers


def _cmd_classify(p: Dict[str, Any], ctx: _RunContext) -> None:
    cfg = parse_configuration(p["points"])
    cls = classify_configuration(cfg)
    print(cls.describe())
    ctx.write(
        "json",
        _dump_json(
            {
                "label": cls.label.value,
                "off_index": cls.off_index,
                "line": list(cls.line) if cls.line is not None else None,
                "fully_collinear": cls.fully_collinear,
                "points": configuration_to_jsonable(cfg)["points"],
            }
        ),
    )


def _cmd_normalize(p: Dict[str, Any], ctx: _RunContext) -> None:
    cfg = parse_configuration(p["points"])
    norm, fmap = normalize_configuration(cfg)
    floats = norm.float_points()
    print(json.dumps([[float(x), float(y)] for x, y in floats]))
    ctx.write(
        "json",
        _dump_json(
            {
                "points": [[x, y] for x, y in floats],
                "matrix": [list(row) for row in fmap.matrix],
                "shift": list(fmap.shift),
            }
        ),
    )


def _cmd_zak_check(p: Dict[str, Any], ctx: _RunContext) -> None:
    q = p["q"]
    if q < 1:
        raise _UsageError("q must be a positive integer")
    w = make_window(p["window"], 1.0 / q, p["K"])
    errors = {}
    for name in _IDENTITIES:
        err = check_zak_identity(name, w, q, alpha=p["alpha"], beta=p["beta"])
        errors[name] = err
        print(f"{name} {format_float(err)}")
    ctx.write(
        "json",
        _dump_json(
            {
                "window": p["window"],
                "q": q,
                "K": p["K"],
                "alpha": p["alpha"],
                "beta": p["beta"],
                "max_errors": {k: v for k, v in errors.items()},
            }
        ),
    )
    if p["dump"]:
        img = zak_transform(w, q)
        ctx.write("csv", zak_csv(img))
        ctx.write("pgm", zak_pgm(img))


def _cmd_orbit(p: Dict[str, Any], ctx: _RunContext) -> None:
    z = TorusPoint(*p["z"])
    n = p["n"]
    if n < 1:
        raise _UsageError("n must be >= 1")
    pts = orbit(z, p["gamma"], n)
    d = discrepancy(pts, p["grid-res"])
    print(f"discrepancy {format_float(d)}")
    lines = ["n,t,omega"]
    for j, pt in enumerate(pts):
        lines.append(f"{j},{format_float(pt.t)},{format_float(pt.omega)}")
    ctx.write("csv", "\n".join(lines) + "\n")
    ctx.write(
        "json",
        _dump_json(
            {
                "n": n,
                "gamma": list(p["gamma"]),
                "z": [z.t, z.omega],
                "grid_res": p["grid-res"],
                "discrepancy": d,
            }
        ),
    )


def _cmd_product(p: Dict[str, Any], ctx: _RunContext) -> None:
    has_torus = p["gamma"] is not None
    has_flow = p["xs"] is not None
    if has_torus == has_flow:
        raise _UsageError(
            "pick one mode: --gamma (+ --poly) for a torus orbit product, "
            "--xs/--cs/--xi for a diagonal flow"
        )
    if p["n"] < 1:
        raise _UsageError("n must be >= 1")
    if has_torus:
        if p["poly"] is None:
            raise _UsageError("torus mode needs --poly")
        poly = _parse_poly(p["poly"])
        led = orbit_log_product(
            poly,
            TorusPoint(*p["z"]),
            p["gamma"],
            p["n"],
            eps_zero=p["eps-zero"],
        )
        print(f"s_final {format_float(led.log_sums[-1])}")
        ctx.write("csv", led.to_csv())
        ctx.write(
            "json",
            _dump_json(
                {
                    "mode": "torus",
                    "s_final": led.log_sums[-1],
                    "zero_hits": list(led.zero_hits),
                    "gamma": list(led.gamma),
                }
            ),
        )
    else:
        if p["cs"] is None or p["xi"] is None:
            raise _UsageError("flow mode needs --xs, --cs and --xi")
        flow = _make_flow(p)
        tr = product_trace(
            flow, p["xi"], p["n"], delta=p["delta"], eps_zero=p["eps-zero"]
        )
        print(f"classification {tr.classification}")
        ctx.write("csv", tr.to_csv())
        summary = tr.summary()
        summary["mode"] = "flow"
        ctx.write("json", _dump_json(summary))


def _make_flow(p: Dict[str, Any]) -> DiagonalFlow:
    xs = p["xs"]
    cs = p["cs"]
    if not isinstance(xs, list) or not xs:
        raise _UsageError("--xs must be a nonempty JSON list")
    if not isinstance(cs, list) or not cs:
        raise _UsageError("--cs must be a nonempty JSON list")
    xs_f = [_co_float(x) for x in xs]
    cs_c = []
    for c in cs:
        if isinstance(c, (list, tuple)):
            if len(c) != 2:
                raise _UsageError(f"complex coefficient is [re, im]: {c!r}")
            cs_c.append(complex(_co_float(c[0]), _co_float(c[1])))
        else:
            cs_c.append(complex(_co_float(c), 0.0))
    try:
        return DiagonalFlow(xs_f, cs_c)
    except ValueError as e:
        raise _UsageError(str(e))


def _cmd_line(p: Dict[str, Any], ctx: _RunContext) -> None:
    anchor = TorusPoint(*p["anchor"])
    tl = toral_line(anchor, p["gamma"], p["max-segments"])
    if tl.closed:
        u, v = tl.winding
        print(f"closed winding=({u},{v}) segments={len(tl.segments)}")
    else:
        print(f"open segments={len(tl.segments)}")
    info: Dict[str, Any] = {
        "closed": tl.closed,
        "winding": list(tl.winding) if tl.winding is not None else None,
        "segments": len(tl.segments),
        "anchor": [anchor.t, anchor.omega],
        "direction": list(tl.direction),
    }
    if p["poly"] is not None:
        poly = _parse_poly(p["poly"])
        var, mean = p_constancy_on_line(poly, tl, p["samples"])
        print(f"p_variation {format_float(var)} p_mean {format_float(mean)}")
        info["p_variation"] = var
        info["p_mean"] = mean
    ctx.write("csv", tl.to_csv())
    ctx.write("json", _dump_json(info))


def _cmd_relations(p: Dict[str, Any], ctx: _RunContext) -> None:
    values = p["values"]
    if not isinstance(values, list) or not values:
        raise _UsageError("--values must be a nonempty JSON list")
    if p["independent"]:
        cert = is_rationally_independent(values, p["max-den"], p["tol"])
        obj = {
            "independent": cert.independent,
            "relation": list(cert.relation)
            if cert.relation is not None
            else None,
            "max_den": cert.max_den,
            "tol": cert.tol,
            "exact": cert.exact,
        }
    else:
        rb = detect_relations(values, p["max-den"], p["tol"])
        obj = rb.to_json()
    print(json.dumps(obj, sort_keys=True))
    ctx.write("json", _dump_json(obj))


def _cmd_independence(p: Dict[str, Any], ctx: _RunContext) -> None:
    q = p["q"]
    if q < 1:
        raise _UsageError("q must be a positive integer")
    w = make_window(p["window"], 1.0 / q, p["K"])
    base_cfg = parse_configuration(p["base"])
    base_pts = [(pt.xf, pt.yf) for pt in base_cfg.points]
    alphas = p["alpha"]
    betas = p["beta"]
    if not alphas or not betas:
        raise _UsageError("alpha and beta ranges must be nonempty")

    def sweep_row(a: float) -> List[Tuple[float, float, Any]]:
        out = []
        for b in betas:
            pts = list(base_pts)
            # a swept point landing on a base point would be a fake
            # dependency; the family is a set, so drop the duplicate
            if not any(
                abs(a - x) <= 1e-12 and abs(b - y) <= 1e-12 for x, y in pts
            ):
                pts.append((a, b))
            cfg = Configuration(
                tuple(TFPoint(float(x), float(y)) for x, y in pts)
            )
            out.append((a, b, independence_margin(w, cfg)))
        return out

    nt = _thread_count()
    if nt == 1:
        rows = [sweep_row(a) for a in alphas]
    else:
        with ThreadPoolExecutor(max_workers=nt) as ex:
            rows = list(ex.map(sweep_row, alphas))

    lines = ["alpha,beta,min_singular,condition_number,leakage"]
    grid = np.empty((len(alphas), len(betas)))
    smin_all = float("inf")
    leak_all = 0.0
    for i, row in enumerate(rows):
        for j, (a, b, rep) in enumerate(row):
            lines.append(
                f"{format_float(a)},{format_float(b)},"
                f"{format_float(rep.min_singular)},"
                f"{format_float(rep.condition_number)},"
                f"{format_float(rep.leakage)}"
            )
            grid[i, j] = rep.min_singular
            smin_all = min(smin_all, rep.min_singular)
            leak_all = max(leak_all, rep.leakage)
    print(f"min_singular_min {format_float(smin_all)}")
    print(f"leakage_max {format_float(leak_all)}")
    ctx.write("csv", "\n".join(lines) + "\n")
    ctx.write("pgm", pgm_text(grid))
    ctx.write(
        "json",
        _dump_json(
            {
                "window": p["window"],
                "q": q,
                "K": p["K"],
                "rows": len(alphas) * len(betas),
                "min_singular_min": smin_all,
                "leakage_max": leak_all,
            }
        ),
    )


def _cmd_flow(p: Dict[str, Any], ctx: _RunContext) -> None:
    if p["xs"] is None or p["cs"] is None:
        raise _UsageError("flow needs --xs and --cs")
    if p["n"] < 1:
        raise _UsageError("n must be >= 1")
    flow = _make_flow(p)
    tr = product_trace(
        flow, p["xi"], p["n"], delta=p["delta"], eps_zero=p["eps-zero"]
    )
    probe = summability_probe(flow, p["xi"], p["probe-seed"], p["n"])
    print(f"classification {tr.classification}")
    ctx.write("csv", tr.to_csv())
    summary = tr.summary()
    summary["summability"] = {
        "final": _jsonable_float(float(probe.partial_sums[-1])),
        "overflowed": probe.overflowed,
        "overflow_indices": list(probe.overflow_indices),
        "seed": probe.seed,
    }
    ctx.write("json", _dump_json(summary))


# ---------------------------------------------------------------------------
# wiring

_COMMON = (
    _Opt("out", _co_str, None, "output path prefix (PREFIX.csv etc.)"),
    _Opt("config", _co_str, None, "JSON file with flag values or a manifest"),
    _Opt("seed", _co_int, None, "RNG seed recorded in the manifest"),
)

_SUBCOMMANDS: Dict[str, Tuple[str, Tuple[_Opt, ...], Callable]] = {
    "classify": (
        "label a point configuration",
        (
            _Opt("points", _co_json, _REQUIRED, "JSON list of [x, y] points"),
        ),
        _cmd_classify,
    ),
    "normalize": (
        "move a configuration to the standard position",
        (
            _Opt("points", _co_json, _REQUIRED, "JSON list of [x, y] points"),
        ),
        _cmd_normalize,
    ),
    "zak-check": (
        "verify the five transform identities",
        (
            _Opt("window", _co_str, "gaussian", "window kind"),
            _Opt("q", _co_int, 64, "grid denominator"),
            _Opt("K", _co_int, 8, "half support"),
            _Opt("alpha", _co_float, "1/4", "joint-shift frequency part"),
            _Opt("beta", _co_float, "1/2", "joint-shift time part"),
            _Opt("dump", _co_bool, False, "also write the image CSV/PGM", flag=True),
        ),
        _cmd_zak_check,
    ),
    "orbit": (
        "rotation orbit and its star discrepancy",
        (
            _Opt("z", _co_pair, "0,0", "start point t,omega"),
            _Opt("gamma", _co_pair, _REQUIRED, "step gamma1,gamma2"),
            _Opt("n", _co_int, 10000, "orbit length"),
            _Opt("grid-res", _co_int, 100, "discrepancy lattice resolution"),
        ),
        _cmd_orbit,
    ),
    "product": (
        "log-domain product along an orbit (torus) or a flow line",
        (
            _Opt("poly", _co_json, None, "torus mode: polynomial terms"),
            _Opt("z", _co_pair, "0,0", "torus mode: start point"),
            _Opt("gamma", _co_pair, None, "torus mode: rotation step"),
            _Opt("xs", _co_json, None, "flow mode: translation parameters"),
            _Opt("cs", _co_json, None, "flow mode: coefficients"),
            _Opt("xi", _co_float, None, "flow mode: start frequency"),
            _Opt("n", _co_int, 1000, "number of factors"),
            _Opt("delta", _co_float, "1e-3", "slope threshold per step"),
            _Opt("eps-zero", _co_float, "1e-14", "zero-factor cutoff"),
        ),
        _cmd_product,
    ),
    "line": (
        "toral line, winding and |p| constancy",
        (
            _Opt("anchor", _co_pair, "0,0", "anchor point t,omega"),
            _Opt("gamma", _co_pair, _REQUIRED, "direction"),
            _Opt("max-segments", _co_int, 64, "cap for open lines"),
            _Opt("poly", _co_json, None, "optional polynomial to sample"),
            _Opt("samples", _co_int, 512, "parameters for |p| sampling"),
        ),
        _cmd_line,
    ),
    "relations": (
        "rational dependence detection",
        (
            _Opt("values", _co_json, _REQUIRED,
                 "JSON list of numbers / exact-grammar strings"),
            _Opt("max-den", _co_int, 64, "coefficient bound"),
            _Opt("tol", _co_float, "1e-12", "verification tolerance"),
            _Opt("independent", _co_bool, False,
                 "homogeneous independence test instead", flag=True),
        ),
        _cmd_relations,
    ),
    "independence": (
        "min-singular-value sweep over shifted families",
        (
            _Opt("window", _co_str, "gaussian", "window kind"),
            _Opt("q", _co_int, 64, "grid denominator"),
            _Opt("K", _co_int, 8, "half support"),
            _Opt("base", _co_json, "[[0,0],[0,1],[1,0]]",
                 "base points as JSON"),
            _Opt("alpha", _co_range, "0:2:0.1", "swept alpha range"),
            _Opt("beta", _co_range, "0:2:0.1", "swept beta range"),
        ),
        _cmd_independence,
    ),
    "flow": (
        "diagonal flow trace, classification and summability probe",
        (
            _Opt("xs", _co_json, _REQUIRED, "translation parameters"),
            _Opt("cs", _co_json, _REQUIRED, "coefficients"),
            _Opt("xi", _co_float, "0", "start frequency"),
            _Opt("n", _co_int, 1000, "number of factors"),
            _Opt("delta", _co_float, "1e-3", "slope threshold per step"),
            _Opt("eps-zero", _co_float, "1e-14", "zero-factor cutoff"),
            _Opt("probe-seed", _co_float, "1", "seed for the summability sums"),
        ),
        _cmd_flow,
    ),
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hrtlab",
        description="time-frequency shift independence laboratory",
    )
    parser.add_argument(
        "--version", action="version", version=f"%(prog)s {__version__}"
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (help_text, opts, _) in _SUBCOMMANDS.items():
        sp = sub.add_parser(name, help=help_text)
        for opt in opts + _COMMON:
            if opt.flag:
                sp.add_argument(
                    f"--{opt.name}",
                    dest=opt.dest,
                    action="store_true",
                    default=argparse.SUPPRESS,
                    help=opt.help,
                )
            else:
                sp.add_argument(
                    f"--{opt.name}",
                    dest=opt.dest,
                    default=argparse.SUPPRESS,
                    help=opt.help,
                )
    return parser


def _load_config(path: str) -> Tuple[Dict[str, Any], str]:
    try:
        with open(path, "rb") as fh:
            blob = fh.read()
    except OSError as e:
        raise _UsageError(f"cannot read config {path}: {e}")
    digest = hashlib.sha256(blob).hexdigest()
    try:
        data = json.loads(blob.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as e:
        raise _UsageError(f"config {path} is not JSON: {e}")
    if isinstance(data, dict) and "parameters" in data:
        data = data["parameters"]
    if not isinstance(data, dict):
        raise _UsageError(f"config {path} must hold an object of flag values")
    return data, digest


def _merge_params(
    opts: Tuple[_Opt, ...], ns: argparse.Namespace
) -> Tuple[Dict[str, Any], Dict[str, Any], Optional[Tuple[str, str]]]:
    """Raw parameter set: defaults, overlaid by --config, overlaid by
    explicit flags.  Returns (raw by dashed name, coerced, config digest)."""
    all_opts = opts + _COMMON
    by_dest = {o.dest: o for o in all_opts}
    by_name = {o.name: o for o in all_opts}

    provided = {
        k: v for k, v in vars(ns).items() if k != "command"
    }
    config_info: Optional[Tuple[str, str]] = None
    config_vals: Dict[str, Any] = {}
    config_path = provided.get("config")
    if config_path is not None:
        data, digest = _load_config(config_path)
        config_info = (config_path, digest)
        for key, val in data.items():
            canon = key.replace("_", "-")
            if canon == "config":
                raise _UsageError("config files cannot nest --config")
            if canon not in by_name:
                raise _UsageError(f"config key {key!r} is not a flag here")
            config_vals[canon] = val

    raw: Dict[str, Any] = {}
    for o in all_opts:
        if o.dest in provided:
            raw[o.name] = provided[o.dest]
        elif o.name in config_vals:
            raw[o.name] = config_vals[o.name]
        elif o.default is _REQUIRED:
            raise _UsageError(f"--{o.name} is required")
        else:
            raw[o.name] = o.default

    coerced: Dict[str, Any] = {}
    for o in all_opts:
        v = raw[o.name]
        coerced[o.name] = None if v is None else o.coerce(v)
    return raw, coerced, config_info


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    name = ns.command
    _, opts, handler = _SUBCOMMANDS[name]
    try:
        raw, params, config_info = _merge_params(opts, ns)
    except _UsageError as e:
        print(f"argument error: {e}", file=sys.stderr)
        return 2

    ctx = _RunContext(out_prefix=params["out"])
    try:
        handler(params, ctx)
    except _UsageError as e:
        print(f"argument error: {e}", file=sys.stderr)
        return 2
    except HrtlabError as e:
        print(f"error[{type(e).__name__}]: {e}", file=sys.stderr)
        return 3

    if ctx.out_prefix is not None:
        manifest = {
            "command": name,
            "version": __version__,
            "parameters": {
                k: v for k, v in raw.items() if k != "config"
            },
            "inputs": (
                {config_info[0]: f"sha256:{config_info[1]}"}
                if config_info
                else {}
            ),
            "seed": params["seed"],
            "timestamp": datetime.now(timezone.utc).isoformat(),
            "outputs": list(ctx.written),
        }
        path = f"{ctx.out_prefix}.manifest.json"
        with open(path, "w", newline="") as fh:
            fh.write(_dump_json(manifest))
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
