"""Command-line surface: evaluation sweeps, dispersion-relation checks,
imaginary-axis tables and contour convergence studies.

JSON configuration in (schema shipped with the package and documented in
docs/cli.md), CSV or JSON tables out.  Identical configurations produce
byte-identical output: floats are printed with 17 significant digits and
rows are emitted in grid order regardless of how they were computed.

Exit codes: 0 success, 2 configuration error, 3 numerical failure,
4 threshold breach in --check mode.
"""

import argparse
import csv
import io
import json
import sys
from importlib import resources
from multiprocessing import Pool

import jsonschema
import numpy as np

from . import contour as _contour
from . import kk as _kk
from . import models as _m
from .errors import EpskkError

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3
EXIT_CHECK = 4

C_SI = 2.99792458e8
V_FERMI_RATIO_DEFAULT = 1.0 / 300.0

_GRAPHENE_TYPES = {
    "graphene-longitudinal": _m.GrapheneLongitudinal,
    "graphene-transverse": _m.GrapheneTransverse,
}


class ConfigError(Exception):
    pass


def _fmt(x):
    """Fixed 17-significant-digit decimal rendering (deterministic)."""
    if x is None:
        return ""
    if isinstance(x, str):
        return x
    return format(float(x), ".17g")


def load_config(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            cfg = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config is not valid JSON: {exc}") from exc
    schema = json.loads(
        resources.files("epskk.schemas").joinpath("config.schema.json").read_text())
    try:
        jsonschema.validate(cfg, schema)
    except jsonschema.ValidationError as exc:
        raise ConfigError(f"config does not match schema: {exc.message}") from exc
    return cfg


def _is_graphene_cfg(cfg):
    return cfg["model"]["type"] in _GRAPHENE_TYPES


def build_models(cfg):
    """Instantiate the configured model, one instance per wave vector.

    Returns a list of (k_label, model); k_label is None for the spatially
    local reference models.
    """
    mc = cfg["model"]
    mtype = mc["type"]
    units = cfg.get("units", "natural")

    if mtype in _GRAPHENE_TYPES:
        alpha = mc.get("alpha", _m.ALPHA_DEFAULT)
        ratio = mc.get("v_fermi_ratio", V_FERMI_RATIO_DEFAULT)
        ks = cfg.get("k_values") or [mc.get("k", 1.0)]
        out = []
        for k in ks:
            if units == "si":
                params = _m.GrapheneParams(k=k, v_fermi=ratio * C_SI,
                                           alpha=alpha, c=C_SI)
            else:
                params = _m.GrapheneParams(k=k, v_fermi=1.0, alpha=alpha,
                                           c=1.0 / ratio)
            out.append((k, _GRAPHENE_TYPES[mtype](params)))
        return out

    if cfg.get("k_values"):
        raise ConfigError("k_values only applies to graphene models")
    if mtype == "drude":
        if "omega_p" not in mc:
            raise ConfigError("drude model needs omega_p")
        return [(None, _m.Drude(mc["omega_p"], mc.get("gamma", 0.0)))]
    if mtype == "plasma":
        if "omega_p" not in mc:
            raise ConfigError("plasma model needs omega_p")
        return [(None, _m.Plasma(mc["omega_p"]))]
    if mtype == "oscillator":
        if "oscillators" not in mc:
            raise ConfigError("oscillator model needs oscillators")
        return [(None, _m.Oscillator(mc["oscillators"]))]
    if mtype == "generalized-plasma":
        if "omega_p" not in mc or "oscillators" not in mc:
            raise ConfigError("generalized-plasma model needs omega_p and oscillators")
        return [(None, _m.GeneralizedPlasma(mc["omega_p"], mc["oscillators"]))]
    raise ConfigError(f"unknown model type {mtype!r}")


def grid_values(cfg):
    grid = cfg.get("grid")
    if not grid:
        raise ConfigError("this command requires a grid section")
    if "values" in grid:
        vals = np.asarray(grid["values"], dtype=float)
    else:
        for key in ("start", "stop", "count"):
            if key not in grid:
                raise ConfigError(f"grid needs {key} (or explicit values)")
        if grid.get("scale", "linear") == "log":
            if grid["start"] <= 0:
                raise ConfigError("log grids need a positive start")
            vals = np.geomspace(grid["start"], grid["stop"], grid["count"])
        else:
            vals = np.linspace(grid["start"], grid["stop"], grid["count"])
    if vals.size == 0:
        raise ConfigError("grid is empty")
    if vals.size > 1 and not np.all(np.diff(vals) > 0):
        raise ConfigError("grid values must be strictly increasing")
    win = grid.get("exclusion_window", 0.0)
    if win and _is_graphene_cfg(cfg):
        vals = vals[np.abs(np.abs(vals) - 1.0) >= win]
        if vals.size == 0:
            raise ConfigError("exclusion window removed every grid point")
    return vals


def _tolerances(cfg):
    tol = cfg.get("tolerances", {})
    return {
        "abs_tol": tol.get("abs", _kk.ABS_TOL_INNER),
        "rel_tol": tol.get("rel", _kk.REL_TOL_INNER),
    }


# ---------------------------------------------------------------------------
# commands


def run_eval(cfg, check):
    variable = cfg.get("grid", {}).get("variable", "omega")
    vals = grid_values(cfg)
    models = build_models(cfg)
    graphene = _is_graphene_cfg(cfg)
    columns = [variable, "k", "re_eps", "im_eps", "status"]
    rows = []
    max_parity = 0.0
    for k_label, model in models:
        scale = model.params.b if graphene else 1.0
        for v in vals:
            x = v * scale
            if variable == "xi":
                if x <= 0:
                    raise ConfigError("xi grids must be positive")
                eps = _m.eval_complex(model, 1j * x)
            else:
                eps = _m.eval_real(model, x)
            if eps.is_regular:
                rows.append([v, k_label, eps.value.real, eps.value.imag, eps.status])
                if check and variable == "omega" and x != 0.0:
                    d_re, d_im = _m.parity_defect(model, x)
                    rel = max(d_re, d_im) / max(abs(eps.value), 1.0)
                    max_parity = max(max_parity, rel)
            else:
                rows.append([v, k_label, None, None, eps.status])
    summary = {"n_rows": len(rows)}
    ok = True
    if check:
        thr = cfg.get("check", {}).get("max_parity_defect", 1e-14)
        summary["max_parity_defect"] = max_parity
        summary["parity_threshold"] = thr
        ok = max_parity <= thr
        summary["check_passed"] = ok
    return columns, rows, summary, ok


def _kk_worker(payload):
    model, relation, at, kw = payload
    r = _kk.reconstruct(model, relation, at, **kw)
    return (r.direct, r.reconstructed, r.subtraction_term,
            r.abs_residual, r.rel_residual)


def run_kk(cfg, check, relation_override=None, jobs=1):
    relation = relation_override or cfg.get("relation")
    if relation not in _kk.RELATIONS:
        raise ConfigError("kk command needs relation: one of "
                          + ", ".join(_kk.RELATIONS))
    variable = "xi" if relation == _kk.IMAG_AXIS else "omega"
    vals = grid_values(cfg)
    models = build_models(cfg)
    graphene = _is_graphene_cfg(cfg)
    kw = _tolerances(cfg)

    tasks = []
    for k_label, model in models:
        scale = model.params.b if graphene else 1.0
        for v in vals:
            tasks.append((k_label, v, (model, relation, v * scale, kw)))

    if jobs > 1:
        with Pool(jobs) as pool:
            results = pool.map(_kk_worker, [t[2] for t in tasks])
    else:
        results = [_kk_worker(t[2]) for t in tasks]

    columns = ["relation", variable, "k", "direct", "reconstructed",
               "subtraction_term", "abs_residual", "rel_residual"]
    rows = []
    max_abs = 0.0
    max_rel = 0.0
    for (k_label, v, _), res in zip(tasks, results):
        direct, recon, sub, abs_res, rel_res = res
        rows.append([relation, v, k_label, direct, recon, sub, abs_res, rel_res])
        max_abs = max(max_abs, abs_res)
        max_rel = max(max_rel, rel_res)
    summary = {"n_rows": len(rows), "max_abs_residual": max_abs,
               "max_rel_residual": max_rel}
    ok = True
    if check:
        thr = cfg.get("check", {}).get("max_rel_residual", 1e-6)
        summary["residual_threshold"] = thr
        ok = max_rel <= thr
        summary["check_passed"] = ok
    return columns, rows, summary, ok


def run_contour(cfg, check):
    if not _is_graphene_cfg(cfg):
        raise ConfigError("contour command applies to graphene models")
    models = build_models(cfg)
    if len(models) != 1:
        raise ConfigError("contour command takes a single wave vector")
    k_label, model = models[0]
    cc = cfg.get("contour", {})
    xi_over_b = cc.get("xi_over_b", 1.0)
    rhos = sorted(cc.get("rho_over_b", [1e-2, 1e-3, 1e-4]))
    big_r = cc.get("big_radius_over_b", 1e4)

    columns = ["k", "rho_over_b",
               "real_axis_re", "real_axis_im", "pole_re", "pole_im",
               "left_re", "left_im", "right_re", "right_im",
               "arc_re", "arc_im", "defect_abs", "defect_rel"]
    rows = []
    thr = cfg.get("check", {}).get("max_defect_rel", 1e-5)
    slope_tol = cfg.get("check", {}).get("slope_tolerance", 0.1)

    b = model.params.b
    pole_vals = []
    left_mags = []
    right_mags = []
    max_defect = 0.0
    for rho in rhos:
        spec = _contour.ContourSpec(model, xi_over_b * b, rho * b, big_r * b)
        rep = _contour.residue_identity(spec)
        defect = abs(rep.residue_identity_defect)
        rel = defect / abs(rep.residue_term)
        max_defect = max(max_defect, rel)
        pole_vals.append(rep.pole_semicircle)
        left_mags.append(abs(rep.left_branch_semicircle))
        right_mags.append(abs(rep.right_branch_semicircle))
        rows.append([k_label, rho,
                     rep.real_axis_part.real, rep.real_axis_part.imag,
                     rep.pole_semicircle.real, rep.pole_semicircle.imag,
                     rep.left_branch_semicircle.real, rep.left_branch_semicircle.imag,
                     rep.right_branch_semicircle.real, rep.right_branch_semicircle.imag,
                     rep.big_arc.real, rep.big_arc.imag,
                     defect, rel])

    spec0 = _contour.ContourSpec(model, xi_over_b * b, rhos[0] * b, big_r * b)
    limit = _contour.pole_semicircle_limit(spec0)
    extrapolated = pole_vals[0]
    pole_rel = (abs(extrapolated - limit) / abs(limit)) if limit else abs(extrapolated)
    expected = 1.5 if isinstance(model, _m.GrapheneTransverse) else 0.5
    summary = {
        "xi_over_b": xi_over_b,
        "big_radius_over_b": big_r,
        "max_defect_rel": max_defect,
        "pole_extrapolated_re": extrapolated.real,
        "pole_extrapolated_im": extrapolated.imag,
        "pole_limit_re": limit.real,
        "pole_limit_im": limit.imag,
        "pole_extrapolation_rel_error": pole_rel,
        "expected_branch_slope": expected,
    }
    slope_ok = True
    if len(rhos) >= 2:
        left_slope = _contour.loglog_slope(rhos, left_mags)
        right_slope = _contour.loglog_slope(rhos, right_mags)
        summary["left_branch_slope"] = left_slope
        summary["right_branch_slope"] = right_slope
        slope_ok = (abs(left_slope - expected) <= slope_tol
                    and abs(right_slope - expected) <= slope_tol)

    ok = True
    if check:
        pole_ok = pole_rel <= 1e-6 if isinstance(model, _m.GrapheneTransverse) else True
        ok = max_defect <= thr and slope_ok and pole_ok
        summary["defect_threshold"] = thr
        summary["check_passed"] = ok
    return columns, rows, summary, ok


# ---------------------------------------------------------------------------
# output


def write_output(command, columns, rows, summary, fmt_name, path):
    if fmt_name == "json":
        payload = {
            "command": command,
            "columns": columns,
            "rows": [[(None if v is None else (v if isinstance(v, str) else float(v)))
                      for v in row] for row in rows],
            "summary": {k: (bool(v) if isinstance(v, (bool, np.bool_))
                            else v if isinstance(v, str)
                            else float(v))
                        for k, v in summary.items()},
        }
        text = json.dumps(payload, indent=2) + "\n"
    else:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([_fmt(v) if not isinstance(v, str) else v for v in row])
        for key, value in summary.items():
            rendered = value if isinstance(value, (str, bool)) else _fmt(value)
            buf.write(f"# {key}={rendered}\n")
        text = buf.getvalue()
    if path:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _add_common(sub):
    sub.add_argument("--config", required=True, help="path to a JSON run configuration")
    sub.add_argument("--out", default=None, help="output path (default: stdout)")
    sub.add_argument("--format", choices=("csv", "json"), default=None,
                     help="output format (overrides config)")
    sub.add_argument("--check", action="store_true",
                     help="verify thresholds; exit 4 on breach")
    sub.add_argument("--jobs", type=int, default=1,
                     help="worker processes for grid sweeps")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="epskk",
        description="Nonlocal response functions and their dispersion relations")
    subs = parser.add_subparsers(dest="command", required=True)
    for name, doc in (
        ("eval", "evaluate a response model on a frequency grid"),
        ("kk", "verify a dispersion relation on a frequency grid"),
        ("imag-axis", "imaginary-axis representation (kk with the imag-axis relation)"),
        ("contour", "contour pieces, convergence sweep and residue identity"),
    ):
        _add_common(subs.add_parser(name, help=doc))
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        cfg = load_config(args.config)
        fmt_name = args.format or cfg.get("output", {}).get("format", "csv")
        path = args.out or cfg.get("output", {}).get("path")

        if args.command == "eval":
            columns, rows, summary, ok = run_eval(cfg, args.check)
        elif args.command == "kk":
            columns, rows, summary, ok = run_kk(cfg, args.check, jobs=args.jobs)
        elif args.command == "imag-axis":
            columns, rows, summary, ok = run_kk(cfg, args.check,
                                                relation_override=_kk.IMAG_AXIS,
                                                jobs=args.jobs)
        else:
            columns, rows, summary, ok = run_contour(cfg, args.check)
    except EpskkError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except (ConfigError, ValueError) as exc:
        # parameter-record invariants surface as ValueError
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except FloatingPointError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL

    write_output(args.command, columns, rows, summary, fmt_name, path)
    return EXIT_OK if (ok or not args.check) else EXIT_CHECK


if __name__ == "__main__":
    sys.exit(main())
