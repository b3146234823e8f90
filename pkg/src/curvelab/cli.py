"""Command-line interface.

Every subcommand writes a CSV (``#`` comment lines echoing the configuration,
then one header row) and a JSON summary with keys ``schema``, ``config``,
``results``, ``checks`` and ``deviations``. Exit status: 0 success, 1
configuration error, 2 numerical failure (diagnostic JSON written), 3 a
``validate`` check failed.
"""

from __future__ import annotations

import argparse
import csv
import datetime as _dt
import io
import json
import math
import os
import re
import sys
from pathlib import Path
from typing import Any, Callable, Optional

import numpy as np

from . import __version__
from .errors import CurvelabError, NumericalError
from .grids import parse_grid
from .numerics.rng import default_seed

SCHEMA = 1

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_NUMERICAL = 2
EXIT_VALIDATE = 3

# Notes on where the implementation departs from the published formulas.
DEVIATIONS = {
    "cauchy_sign": "Cauchy transforms use h_k(z) = (2 pi i)^-1 int p_k w/(x - z); F1, F2 carry the opposite "
                   "overall sign to the published asymptotic forms, K is unaffected.",
    "density_norm": "finite-N density normalised with 1/(N c_{N-1}^2) (unit mass).",
    "charfn_sign": "characteristic functions are <exp(-i w c)>.",
    "c_sc": "c_sc = c_edge - N^(1/3), the curvature variable of the soft-edge density.",
    "tail": "c^4 P(c) approaches the tail coefficient with a c^-5 correction; at c = 50 the ratio is "
            "off by 0.04 to 0.15 depending on zeta.",
    "overlap": "the extreme-level formula assumes independent Gaussian overlaps; mc-extreme samples that "
               "model with --overlap gaussian, exact eigenvectors differ at small N.",
    "rng_blocks": "trials are grouped in blocks of size depending only on N; block b uses stream b.",
    "asym_window": "bulk asymptotic errors are reported as the maximum over a small window in mu.",
}


class ConfigError(CurvelabError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # exit code 1 for all configuration errors
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(EXIT_CONFIG)


# output helpers ----------------------------------------------------------------

def _fmt(v) -> str:
    if isinstance(v, (bool, np.bool_)):
        return "1" if v else "0"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        f = float(v)
        if math.isnan(f):
            return "nan"
        return "%.17g" % f
    return str(v)


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.floating, float)):
        f = float(obj)
        return f if math.isfinite(f) else str(f)
    if isinstance(obj, (complex, np.complexfloating)):
        return {"re": _jsonable(obj.real), "im": _jsonable(obj.imag)}
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, np.ndarray):
        return _jsonable(obj.tolist())
    return obj


def render_csv(config: dict, header: list[str], rows) -> str:
    buf = io.StringIO()
    buf.write(f"# curvelab {__version__}\n")
    buf.write(f"# schema: {SCHEMA}\n")
    for key in sorted(config):
        buf.write(f"# {key}: {json.dumps(_jsonable(config[key]), sort_keys=True)}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([_fmt(v) for v in row])
    return buf.getvalue()


def read_csv(path: str) -> tuple[list[str], np.ndarray]:
    """Header and numeric body of a curvelab CSV (comment lines skipped)."""
    with open(path, newline="") as fh:
        lines = [ln for ln in fh if not ln.startswith("#")]
    reader = csv.reader(lines)
    header = next(reader)
    body = np.array([[float(x) for x in r] for r in reader if r], dtype=float)
    return header, body


class Result:
    """Everything a subcommand produces."""

    def __init__(self, header, rows, results=None, checks=None, deviations=()):
        self.header = header
        self.rows = rows
        self.results = results or {}
        self.checks = checks or {}
        self.deviations = [DEVIATIONS[d] for d in deviations]


# subcommands ---------------------------------------------------------------------

def _grid(text):
    lo, hi, n = parse_grid(text)
    return np.linspace(lo, hi, n)


def _window(text):
    parts = text.split(":")
    if len(parts) != 2:
        raise ConfigError("window must look like center:half_width")
    c, hw = float(parts[0]), float(parts[1])
    if not hw > 0:
        raise ConfigError("window half width must be positive")
    return c, hw


def _floats(text):
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def cmd_airy(a) -> Result:
    from .airy import airy_eval

    z = _grid(a.grid)
    rows, worst = [], 0.0
    for zz in z:
        v = airy_eval(float(zz))
        wr = abs(v.wronskian() - 1.0 / math.pi)
        worst = max(worst, wr)
        rows.append((zz, v.ai, v.ai_prime, v.bi, v.bi_prime, wr))
    return Result(["zeta", "ai", "ai_prime", "bi", "bi_prime", "wronskian_residual"], rows,
                  {"points": len(rows)}, {"wronskian_max": worst, "wronskian_ok": worst <= 1e-9})


def cmd_pdf_bulk(a) -> Result:
    from .bulk import mean_curvature, zd_cdf, zd_pdf

    c = _grid(a.grid)
    p = zd_pdf(c, a.x)
    f = zd_cdf(c, a.x)
    return Result(["c_bulk", "pdf_c_bulk", "cdf_c_bulk"], zip(c, p, f),
                  {"x": a.x, "mean_curvature_over_y": mean_curvature(a.x)},
                  {"grid_mass": float(np.trapezoid(p, c))})


def cmd_pdf_edge(a) -> Result:
    from .softedge import edge_normalization, pdf_edge_parts

    c = _grid(a.grid)
    p1, p2 = pdf_edge_parts(c, a.zeta)
    norm = edge_normalization(a.zeta)
    return Result(["c_sc", "pdf_I_c_sc", "pdf_II_c_sc", "pdf_c_sc"], zip(c, p1, p2, p1 + p2),
                  {"zeta": a.zeta, "normalization": norm},
                  {"mass_I_minus_1": norm["int_P_I"] - 1.0, "mass_II": norm["int_P_II"]},
                  ["c_sc", "tail"])


def cmd_charfn_finite(a) -> Result:
    from .hermite import HermiteContext, char_fn_finite, charfn_omega_grid, invert_char_fn

    ctx = HermiteContext(a.n)
    mu = a.mu if a.frame == "bulk" else 2.0 + a.zeta / a.n ** (2.0 / 3.0)
    col = "c_bulk" if a.frame == "bulk" else "c_sc"
    if a.invert:
        om, K = charfn_omega_grid(mu, ctx, 2.0 * math.pi / a.period, frame=a.frame)
        c = _grid(a.grid)
        g = invert_char_fn(om, K, c)
        return Result([col, f"pdf_{col}"], zip(c, g.density),
                      {"mu": mu, "omega_max": float(om[-1]), "omega_points": int(om.size)},
                      {"K0_minus_1": abs(K[0] - 1.0), "grid_mass": g.mass,
                       "min_density": float(g.density.min())},
                      ["charfn_sign", "cauchy_sign"])
    om = _grid(a.omega_grid)
    K = char_fn_finite(om, mu, ctx, a.frame)
    return Result([f"omega_{col}", f"re_K_{col}", f"im_K_{col}"], zip(om, K.real, K.imag),
                  {"mu": mu}, {}, ["charfn_sign", "cauchy_sign"])


def cmd_density_finite(a) -> Result:
    from .bulk import semicircle_density
    from .hermite import HermiteContext, density_finite

    x = _grid(a.grid)
    r = density_finite(x, HermiteContext(a.n))
    return Result(["x", "rho_finite", "rho_semicircle"], zip(x, r, semicircle_density(x)),
                  {"n": a.n}, {"grid_mass": float(np.trapezoid(r, x))}, ["density_norm"])


def _hist_rows(samples, edges, model):
    counts, _ = np.histogram(samples, bins=edges)
    width = np.diff(edges)
    dens = counts / (samples.size * width)
    mid = 0.5 * (edges[1:] + edges[:-1])
    return zip(edges[:-1], edges[1:], mid, counts, dens, model(mid))


def cmd_mc_bulk(a) -> Result:
    from .bulk import zd_cdf, zd_pdf
    from .montecarlo import ks_distance, run_campaign, window_bulk

    x0, hw = _window(a.window)
    camp = run_campaign(a.n, a.trials, a.seed, a.perturbation, threads=a.threads)
    s, meta = window_bulk(camp.batch, x0, hw)
    ks = ks_distance(s, None, model_cdf=lambda c: zd_cdf(c, x0))
    edges = _grid(a.grid)
    raw = camp.batch.curvature_raw[np.abs(camp.batch.lam - x0) <= hw] / camp.batch.y_typ
    rows = _hist_rows(s, edges, lambda c: zd_pdf(c, x0))
    return Result(["c_bulk_lo", "c_bulk_hi", "c_bulk_mid", "count", "density_c_bulk", "zd_pdf_c_bulk"],
                  rows,
                  {"samples": meta["count"], "discarded_trials": camp.discarded, "y_typ": camp.batch.y_typ,
                   "mean_curvature_over_y": float(raw.mean()),
                   "mean_curvature_se": float(raw.std(ddof=1) / math.sqrt(raw.size)) if raw.size > 1 else None},
                  {"ks_vs_zd": ks}, ["rng_blocks"])


def cmd_mc_edge(a) -> Result:
    from .montecarlo import CurvatureBatch, ks_distance, run_campaign, window_edge
    from .softedge import pdf_edge

    z0, hw = _window(a.window)
    camp = run_campaign(a.n, a.trials, a.seed, a.perturbation, threads=a.threads)
    s, meta = window_edge(camp.batch, z0, hw)
    if a.both_edges:
        b = camp.batch
        low = CurvatureBatch(b.n_dim, b.y_typ, -b.lam, -b.velocity, -b.curvature_raw, b.trial)
        s = np.concatenate([s, window_edge(low, z0, hw)[0]])
    ks = ks_distance(s, lambda c: pdf_edge(c, z0))
    edges = _grid(a.grid)
    rows = _hist_rows(s, edges, lambda c: pdf_edge(c, z0))
    return Result(["c_sc_lo", "c_sc_hi", "c_sc_mid", "count", "density_c_sc", "pdf_edge_c_sc"], rows,
                  {"samples": int(s.size), "discarded_trials": camp.discarded, "both_edges": a.both_edges},
                  {"ks_vs_pdf_edge": ks}, ["c_sc", "rng_blocks"])


def cmd_mc_extreme(a) -> Result:
    from .extreme import charfn_extreme_direct
    from .montecarlo import char_fn_samples, run_campaign

    om = _floats(a.omega)
    camp = run_campaign(a.n, a.trials, a.seed, a.perturbation, overlap=a.overlap,
                        levels="extreme", threads=a.threads)
    c = camp.batch.c_edge[0::2]
    K, se = char_fn_samples(c, om)
    direct = [charfn_extreme_direct(w, a.n) if a.n in (2, 3) else complex("nan") for w in om]
    diff = [abs(k - d) for k, d in zip(K, direct)]
    rows = zip(om, K.real, K.imag, se, [d.real for d in direct], [d.imag for d in direct], diff)
    return Result(["omega_c_edge", "re_K_mc_c_edge", "im_K_mc_c_edge", "se_K_mc_c_edge",
                   "re_K_direct_c_edge", "im_K_direct_c_edge", "abs_diff"], rows,
                  {"samples": int(c.size), "mean_c_edge": float(c.mean())},
                  {"max_abs_diff": float(np.nanmax(diff)) if a.n in (2, 3) else None},
                  ["charfn_sign", "overlap", "rng_blocks"])


def cmd_extreme_direct(a) -> Result:
    from .extreme import charfn_extreme_direct

    om = _grid(a.omega_grid)
    K = [charfn_extreme_direct(float(w), a.n) for w in om]
    return Result(["omega_c_edge", "re_K_c_edge", "im_K_c_edge"], [(w, k.real, k.imag) for w, k in zip(om, K)],
                  {"n": a.n}, {"max_modulus": max(abs(k) for k in K)}, ["charfn_sign"])


def cmd_asymptotics(a) -> Result:
    from .hermite import HermiteContext, asymptotics_bulk, asymptotics_edge

    ns = [int(x) for x in _floats(a.n_list)]
    rows, table = [], {}
    for n in ns:
        ctx = HermiteContext(n)
        if a.frame == "bulk":
            rec = asymptotics_bulk(a.mu, a.omega, ctx)
            qs = {k: rec[k]["window_err"] for k in ("p_N", "W1", "F1", "F2", "F2_over_F1")}
        else:
            rec = asymptotics_edge(a.zeta, a.omega, ctx)
            qs = {k: rec[k]["rel_err"] for k in ("p_N", "p_N_minus_1", "f_N", "W1", "F1", "F2", "F2_over_NF1")}
            qs["W2_over_2W1"] = rec["W2_over_2W1"]["rel_err_correction"]
        for k, v in qs.items():
            rows.append((n, k, v))
            table.setdefault(k, []).append(v)
    mono = {k: all(v[i + 1] < v[i] for i in range(len(v) - 1)) for k, v in table.items()}
    return Result(["n", "quantity", "rel_err"], rows, {"errors": table},
                  {"strictly_decreasing": mono, "all_decreasing": all(mono.values())},
                  ["cauchy_sign"] + (["asym_window"] if a.frame == "bulk" else []))


def _density_col(header):
    for i, h in enumerate(header):
        if h.startswith(("pdf", "density", "rho")):
            return i
    return 1


def cmd_compare(a) -> Result:
    ha, A = read_csv(a.a)
    hb, B = read_csv(a.b)
    ia = ha.index(a.column_a) if a.column_a else _density_col(ha)
    ib = hb.index(a.column_b) if a.column_b else _density_col(hb)
    xa, ya = A[:, 0], A[:, ia]
    xb, yb = B[:, 0], B[:, ib]
    lo, hi = max(xa.min(), xb.min()), min(xa.max(), xb.max())
    if not lo < hi:
        raise ConfigError("the two grids do not overlap")
    m = (xa >= lo) & (xa <= hi)
    x = xa[m]
    ybi = np.interp(x, xb, yb)
    d = ya[m] - ybi
    norm = max(np.abs(ya[m]).max(), 1e-300)
    return Result([ha[0], f"a_{ha[ia]}", f"b_{hb[ib]}", "diff"], zip(x, ya[m], ybi, d),
                  {"columns": [ha[ia], hb[ib]]},
                  {"sup_diff": float(np.abs(d).max()), "sup_diff_over_peak": float(np.abs(d).max() / norm),
                   "l1_diff": float(np.trapezoid(np.abs(d), x))})


def _validate_suites() -> dict:
    """Fast invariant suites; each returns (ok, detail)."""
    from .airy import airy_eval
    from .bulk import zd_pdf
    from .extreme import truncated_op_basis
    from .hermite import HermiteContext, char_fn_finite
    from .montecarlo import run_campaign
    from .softedge import char_fn_edge, edge_normalization, pdf_edge

    out = {}
    wr = max(abs(airy_eval(z).wronskian() - 1 / math.pi) for z in np.linspace(-10, 8, 37))
    out["airy_wronskian"] = (wr <= 1e-9, wr)
    n = edge_normalization(0.0)
    out["edge_normalization"] = (abs(n["int_P_I"] - 1) <= 1e-6 and abs(n["int_P_II"]) <= 1e-6, n)
    c = np.linspace(-6, 6, 25)
    om = np.arange(0, 40 + 1e-9, 2 * math.pi / 200)
    K = char_fn_edge(om, 0.0)
    w = np.full(om.size, om[1] - om[0])
    w[0] *= 0.5
    w[-1] *= 0.5
    inv = np.real(np.exp(1j * np.outer(c, om)) * K) @ w / math.pi
    two = float(np.abs(inv - pdf_edge(c, 0.0)).max())
    out["edge_two_route"] = (two <= 1e-4, two)
    k0 = abs(char_fn_finite(0.0, 0.0, HermiteContext(50)) - 1.0)
    out["finite_K0"] = (k0 <= 1e-8, k0)
    kb = abs(char_fn_finite(1.0, 0.0, HermiteContext(400)) - 2 * math.exp(-1.0))
    out["finite_bulk_limit"] = (kb <= 5e-3, kb)
    res = truncated_op_basis(12, 10, 0.0).residual
    out["truncated_basis"] = (res <= 1e-8, res)
    r1 = run_campaign(8, 40, 1, threads=1).batch.curvature_raw
    r2 = run_campaign(8, 40, 1, threads=2).batch.curvature_raw
    out["mc_thread_invariance"] = (bool(np.array_equal(r1, r2)), int(r1.size))
    zd = float(zd_pdf(0.0, 0.0))
    out["zd_peak"] = (abs(zd - 2 / math.pi) <= 1e-15, zd)
    return out


def cmd_validate(a) -> Result:
    suites = _validate_suites()
    rows = [(k, int(bool(v[0])), v[1] if isinstance(v[1], (int, float)) else "") for k, v in suites.items()]
    checks = {k: {"ok": bool(v[0]), "value": v[1]} for k, v in suites.items()}
    checks["all_ok"] = all(v[0] for v in suites.values())
    from .softedge import fit_b_coefficient

    results = {"suites": len(suites), "b_fit": fit_b_coefficient()}
    return Result(["suite", "ok", "value"], rows, results, checks, list(DEVIATIONS))


# parser ------------------------------------------------------------------------

COMMANDS: dict[str, Callable[[argparse.Namespace], Result]] = {
    "airy": cmd_airy,
    "pdf-bulk": cmd_pdf_bulk,
    "pdf-edge": cmd_pdf_edge,
    "charfn-finite": cmd_charfn_finite,
    "density-finite": cmd_density_finite,
    "mc-bulk": cmd_mc_bulk,
    "mc-edge": cmd_mc_edge,
    "mc-extreme": cmd_mc_extreme,
    "extreme-direct": cmd_extreme_direct,
    "asymptotics": cmd_asymptotics,
    "compare": cmd_compare,
    "validate": cmd_validate,
}

# options that never influence the CSV payload
_NOT_ECHOED = {"out", "summary", "threads", "func"}


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="curvelab", description="GUE level-curvature distributions from bulk to soft edge.")
    p.add_argument("--version", action="version", version=f"curvelab {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("--out", help="CSV output path (default: stdout)")
        sp.add_argument("--summary", help="JSON summary path (default: next to --out)")
        return sp

    sp = add("airy", "Airy functions on a grid")
    sp.add_argument("--grid", default="-10:8:181")

    sp = add("pdf-bulk", "bulk curvature density")
    sp.add_argument("--x", type=float, default=0.0)
    sp.add_argument("--grid", default="-8:8:401")

    sp = add("pdf-edge", "soft-edge curvature density")
    sp.add_argument("--zeta", type=float, default=0.0)
    sp.add_argument("--grid", default="-8:8:401")

    sp = add("charfn-finite", "exact finite-N characteristic function")
    sp.add_argument("--n", type=int, default=100)
    sp.add_argument("--frame", choices=["bulk", "edge"], default="bulk")
    sp.add_argument("--mu", type=float, default=0.0, help="spectral position (bulk frame)")
    sp.add_argument("--zeta", type=float, default=0.0, help="edge coordinate (edge frame)")
    sp.add_argument("--omega-grid", default="0:10:101")
    sp.add_argument("--invert", action="store_true", help="emit the inverted density instead")
    sp.add_argument("--grid", default="-10:10:401", help="curvature grid for --invert")
    sp.add_argument("--period", type=float, default=400.0, help="inversion period 2 pi / d_omega")

    sp = add("density-finite", "finite-N eigenvalue density")
    sp.add_argument("--n", type=int, default=100)
    sp.add_argument("--grid", default="-2.5:2.5:201")

    for name, frame, n, trials, grid in (("mc-bulk", "bulk", 100, 2000, "-8:8:81"),
                                        ("mc-edge", "edge", 200, 5000, "-10:6:65")):
        sp = add(name, f"Monte Carlo curvatures in a {frame} window")
        sp.add_argument("--n", type=int, default=n)
        sp.add_argument("--trials", type=int, default=trials)
        sp.add_argument("--window", default="0:0.5", help="center:half_width")
        sp.add_argument("--grid", default=grid, help="histogram edges min:max:points")
        sp.add_argument("--perturbation", default="diag_rademacher",
                        choices=["diag_rademacher", "fixed_gue_draw", "alternating"])
        sp.add_argument("--seed", type=int, default=None)
        sp.add_argument("--threads", type=int, default=os.cpu_count() or 1)
        if frame == "edge":
            sp.add_argument("--both-edges", action="store_true",
                            help="add the lower edge through the H -> -H symmetry")

    sp = add("mc-extreme", "Monte Carlo curvature of the lowest level")
    sp.add_argument("--n", type=int, default=2)
    sp.add_argument("--trials", type=int, default=100000)
    sp.add_argument("--omega", default="0.5,1,2")
    sp.add_argument("--overlap", choices=["gaussian", "exact"], default="gaussian")
    sp.add_argument("--perturbation", default="diag_rademacher",
                    choices=["diag_rademacher", "fixed_gue_draw", "alternating"])
    sp.add_argument("--seed", type=int, default=None)
    sp.add_argument("--threads", type=int, default=os.cpu_count() or 1)

    sp = add("extreme-direct", "direct quadrature of the lowest-level characteristic function")
    sp.add_argument("--n", type=int, choices=[2, 3], default=2)
    sp.add_argument("--omega-grid", default="-4:4:17")

    sp = add("asymptotics", "large-N approximations versus exact kernels")
    sp.add_argument("--frame", choices=["bulk", "edge"], default="bulk")
    sp.add_argument("--mu", type=float, default=0.3)
    sp.add_argument("--zeta", type=float, default=0.0)
    sp.add_argument("--omega", type=float, default=1.0)
    sp.add_argument("--n-list", default="100,200,400")

    sp = add("compare", "compare density columns of two CSV files")
    sp.add_argument("a")
    sp.add_argument("b")
    sp.add_argument("--column-a")
    sp.add_argument("--column-b")

    add("validate", "run the invariant suites")
    return p


def _config(args) -> dict:
    cfg = {k: v for k, v in vars(args).items() if k not in _NOT_ECHOED}
    return cfg


def _summary_path(args) -> Optional[Path]:
    if args.summary:
        return Path(args.summary)
    if args.out:
        return Path(args.out).with_suffix(".json")
    return None


def _write_json(path: Optional[Path], payload: dict, fallback=sys.stderr):
    text = json.dumps(_jsonable(payload), indent=2, sort_keys=True) + "\n"
    if path is None:
        fallback.write(text)
    else:
        path.write_text(text)


_NEG_VALUE = re.compile(r"^-\d[\d.eE+-]*[:,]")


def _attach_negative_values(argv: list[str]) -> list[str]:
    """Turn ``--grid -8:8:401`` into ``--grid=-8:8:401`` so argparse accepts it."""
    out: list[str] = []
    for tok in argv:
        if out and out[-1].startswith("--") and "=" not in out[-1] and _NEG_VALUE.match(tok):
            out[-1] = f"{out[-1]}={tok}"
        else:
            out.append(tok)
    return out


def main(argv=None) -> int:
    parser = build_parser()
    argv = _attach_negative_values(list(sys.argv[1:] if argv is None else argv))
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if hasattr(args, "seed"):
        args.seed = default_seed(args.seed)
    if hasattr(args, "threads") and args.threads < 1:
        sys.stderr.write("curvelab: error: --threads must be >= 1\n")
        return EXIT_CONFIG
    if hasattr(args, "trials") and args.trials < 1:
        sys.stderr.write("curvelab: error: --trials must be >= 1\n")
        return EXIT_CONFIG
    config = _config(args)
    full_config = dict(config, threads=getattr(args, "threads", None))
    summary = _summary_path(args)
    try:
        res = COMMANDS[args.command](args)
        rows = list(res.rows)
    except NumericalError as exc:
        _write_json(summary, {"schema": SCHEMA, "config": full_config, "results": {},
                              "checks": {}, "deviations": [],
                              "error": {"type": type(exc).__name__, "message": str(exc)},
                              "timestamp": _dt.datetime.now(_dt.timezone.utc).isoformat()})
        sys.stderr.write(f"curvelab: numerical failure: {type(exc).__name__}: {exc}\n")
        return EXIT_NUMERICAL
    except (CurvelabError, ValueError, OSError) as exc:
        sys.stderr.write(f"curvelab: error: {exc}\n")
        return EXIT_CONFIG

    text = render_csv(config, res.header, rows)
    if args.out:
        Path(args.out).write_text(text)
    elif args.command != "validate":
        sys.stdout.write(text)
    payload = {"schema": SCHEMA, "config": full_config, "results": res.results, "checks": res.checks,
               "deviations": res.deviations,
               "timestamp": _dt.datetime.now(_dt.timezone.utc).isoformat()}
    if args.command == "validate":
        _write_json(summary, payload, fallback=sys.stdout)
        return EXIT_OK if res.checks.get("all_ok") else EXIT_VALIDATE
    if summary is not None:
        _write_json(summary, payload)
    return EXIT_OK


if __name__ == "__main__":
    raise SystemExit(main())
