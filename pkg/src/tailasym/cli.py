"""Command-line interface.

Subcommands: ``measure`` (population curves), ``estimate`` (sample analogue
with intervals), ``test`` (m-point chi-squared test), ``sample`` (seeded
variate generation), ``simulate`` (Monte-Carlo scenarios), ``analyze`` (the
full residual-analysis pipeline).

Exit codes are a stable scripting contract: 0 success, 2 usage/configuration
error, 3 data error, 4 numerical failure.

Inputs are two-column numeric CSVs (UTF-8, LF or CRLF, optional header).
Serial dependence is expected to be handled upstream: feed residuals or
innovations, not raw series, when autocorrelation matters.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from dataclasses import dataclass

import numpy as np
from scipy.special import ndtr, ndtri, stdtr

from . import __version__
from .copulas import parse_model_spec
from .errors import DataError, DomainError, LimitUnknownError, NumericalError, TailAsymError
from .estimation import (
    IntervalBand,
    alpha_hat_curve,
    chi2_test,
    ci_bootstrap,
    jump_set,
    pseudo_observations,
    sigma_hat_curve,
    tail_counts_grid,
    u_min_rule,
)
from .extreal import format_value, parse_value
from .measures import TailCurve, WEIGHTS, alpha_curve, beta, rho_k_curve, sigma3_empirical
from .sampling import PairedSample, SeedSpec, sample_clayton_cauchy, sample_copula
from .simulation import Scenario, run_scenario

__all__ = ["main", "margin_cdf", "parse_margin_spec", "AnalysisConfig"]

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DATA = 3
EXIT_NUMERICAL = 4


# ----------------------------------------------------------------------
# Margin transforms for the known-margin pipeline
# ----------------------------------------------------------------------

_MARGIN_FAMILIES = {
    "normal": ("mu", "sigma"),
    "cauchy": ("loc", "scale"),
    "student_t": ("nu", "loc", "scale"),
}

_MARGIN_DEFAULTS = {"mu": 0.0, "sigma": 1.0, "loc": 0.0, "scale": 1.0}


def parse_margin_spec(spec: str) -> tuple[str, dict]:
    """Parse ``family:key=value,...`` margin specs (normal, cauchy, student_t)."""
    text = spec.strip().lower()
    name, _, rest = text.partition(":")
    name = name.strip()
    if name == "none":
        return ("none", {})
    if name not in _MARGIN_FAMILIES:
        raise DomainError(
            f"unknown margin family {name!r}; known: none, {', '.join(_MARGIN_FAMILIES)}"
        )
    names = _MARGIN_FAMILIES[name]
    params = {k: _MARGIN_DEFAULTS[k] for k in names if k in _MARGIN_DEFAULTS}
    if rest.strip():
        for item in rest.split(","):
            key, eq, value = item.partition("=")
            key = key.strip()
            if not eq or key not in names:
                raise DomainError(f"bad margin parameter {item!r} for family {name!r}")
            try:
                params[key] = float(value)
            except ValueError:
                raise DomainError(f"non-numeric margin parameter {item!r}") from None
    missing = [k for k in names if k not in params]
    if missing:
        raise DomainError(f"margin {name!r}: missing parameter(s) {missing}")
    if name == "normal" and params["sigma"] <= 0:
        raise DomainError(f"normal margin: sigma must be > 0, got {params['sigma']}")
    if name in ("cauchy", "student_t") and params["scale"] <= 0:
        raise DomainError(f"{name} margin: scale must be > 0, got {params['scale']}")
    if name == "student_t" and params["nu"] <= 0:
        raise DomainError(f"student_t margin: nu must be > 0, got {params['nu']}")
    return (name, params)


def margin_cdf(spec: tuple[str, dict] | str, x):
    """Evaluate a margin CDF; values are clipped strictly inside (0, 1)."""
    if isinstance(spec, str):
        spec = parse_margin_spec(spec)
    name, p = spec
    x = np.asarray(x, dtype=float)
    if name == "normal":
        out = ndtr((x - p["mu"]) / p["sigma"])
    elif name == "cauchy":
        out = 0.5 + np.arctan((x - p["loc"]) / p["scale"]) / np.pi
    elif name == "student_t":
        out = stdtr(p["nu"], (x - p["loc"]) / p["scale"])
    else:
        raise DomainError(f"margin_cdf: no CDF for margin {name!r}")
    out = np.clip(out, np.nextafter(0.0, 1.0), np.nextafter(1.0, 0.0))
    return float(out) if out.ndim == 0 else out


# ----------------------------------------------------------------------
# CSV plumbing
# ----------------------------------------------------------------------

def _read_pairs(path: str) -> tuple[np.ndarray, np.ndarray]:
    """Two numeric columns; optional single header row; errors carry line numbers."""
    col1: list[float] = []
    col2: list[float] = []
    try:
        fh = open(path, newline="", encoding="utf-8")
    except OSError as exc:
        raise DataError(f"cannot open input file {path}: {exc}") from exc
    with fh:
        reader = csv.reader(fh)
        for lineno, row in enumerate(reader, start=1):
            if not row or all(not cell.strip() for cell in row):
                continue
            if len(row) < 2:
                raise DataError(f"{path}:{lineno}: expected two columns, got {len(row)}")
            try:
                col1.append(float(row[0]))
                col2.append(float(row[1]))
            except ValueError:
                if lineno == 1:
                    continue  # header row
                raise DataError(
                    f"{path}:{lineno}: non-numeric row {row[:2]!r}"
                ) from None
    if len(col1) < 2:
        raise DataError(f"{path}: need at least 2 data rows, got {len(col1)}")
    return np.asarray(col1), np.asarray(col2)


def _load_sample(path: str, scale: str) -> PairedSample:
    x1, x2 = _read_pairs(path)
    try:
        return PairedSample(x1, x2, scale)
    except DomainError as exc:
        raise DataError(f"{path}: {exc}") from exc


def _open_out(path: str | None):
    if path is None or path == "-":
        return sys.stdout, False
    return open(path, "w", newline="", encoding="utf-8"), True


def _write_rows(path: str | None, header: list[str], rows) -> None:
    fh, close = _open_out(path)
    try:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)
    finally:
        if close:
            fh.close()


def _curve_rows(curve) -> list[list[str]]:
    param_json = json.dumps(curve.meta, sort_keys=True)
    return [
        [format_value(float(u)), format_value(float(v)), curve.kind, param_json]
        for u, v in zip(curve.u, curve.values)
    ]


def _parse_u_grid(spec: str) -> np.ndarray:
    """``a:b:step``, or a comma list of values."""
    text = spec.strip()
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise DomainError(f"bad u-grid {spec!r}; expected a:b:step")
        a, b, step = (float(p) for p in parts)
        if step <= 0 or b < a:
            raise DomainError(f"bad u-grid {spec!r}: need step > 0 and b >= a")
        n = int(math.floor((b - a) / step + 1e-9)) + 1
        grid = a + step * np.arange(n)
    else:
        grid = np.asarray([float(p) for p in text.split(",") if p.strip()])
    if grid.size == 0 or np.any((grid <= 0) | (grid > 0.5)) or np.any(np.diff(grid) <= 0):
        raise DomainError(f"u-grid {spec!r} must be strictly increasing within (0, 0.5]")
    return grid


def _seed_from_args(args) -> SeedSpec:
    return SeedSpec(args.seed, getattr(args, "stream", 0))


# ----------------------------------------------------------------------
# Subcommands
# ----------------------------------------------------------------------

def _cmd_measure(args) -> int:
    model = parse_model_spec(args.model)
    grid = _parse_u_grid(args.u_grid)
    if args.kind == "alpha":
        curve = alpha_curve(model, grid)
    else:
        vals = beta(model, grid, kappa=args.kappa)
        curve = TailCurve(grid, vals, "beta",
                          meta={"model": model.spec_string(), "kappa": args.kappa})
    _write_rows(args.out, ["u", "value", "kind", "param_json"], _curve_rows(curve))
    if args.limit:
        try:
            lim = model.alpha_limit()
            print(f"alpha_zero={format_value(lim)}", file=sys.stderr)
        except LimitUnknownError as exc:
            print(f"alpha_zero=unknown ({exc})", file=sys.stderr)
    return EXIT_OK


def _cmd_sample(args) -> int:
    seed = _seed_from_args(args)
    if args.clayton_cauchy is not None:
        sample = sample_clayton_cauchy(args.clayton_cauchy, args.n, seed)
        header = ["x1", "x2"]
        desc = {"family": "clayton-cauchy", "params": {"theta": args.clayton_cauchy}}
    else:
        model = parse_model_spec(args.model)
        sample = sample_copula(model, args.n, seed)
        header = ["u1", "u2"]
        desc = {"family": model.family, "params": model.param_dict}
    _write_rows(args.out, header,
                ([repr(float(a)), repr(float(b))] for a, b in zip(sample.x1, sample.x2)))
    sidecar = {
        **desc,
        "n": args.n,
        "master_seed": seed.master_seed,
        "stream_id": seed.stream_id,
        "scale": sample.scale,
        "version": __version__,
    }
    sidecar_path = args.sidecar
    if sidecar_path is None and args.out not in (None, "-"):
        sidecar_path = args.out + ".json"
    if sidecar_path:
        with open(sidecar_path, "w", encoding="utf-8") as fh:
            json.dump(sidecar, fh, indent=2, sort_keys=True)
            fh.write("\n")
    return EXIT_OK


def _zband(sample: PairedSample, us: np.ndarray, level: float, method: str) -> IntervalBand:
    """Normal-quantile band at the given grid; Bonferroni splits p across n."""
    tail = (1.0 - level) / 2.0
    meta: dict = {"n": sample.n}
    if method == "bonferroni":
        tail /= sample.n
        meta["u_min"] = float(us[0])
        meta["u_max"] = float(us[-1])
    z = float(-ndtri(tail))
    meta["z"] = z
    est = alpha_hat_curve(sample, us)
    sig = sigma_hat_curve(sample, us)
    ok = np.isfinite(est) & np.isfinite(sig)
    half = z * np.where(ok, sig, 0.0) / math.sqrt(sample.n)
    return IntervalBand(
        u=us, estimate=est,
        lower=np.where(ok, est - half, -np.inf),
        upper=np.where(ok, est + half, np.inf),
        method=method, level=level, meta=meta,
    )


def _estimate_band(sample: PairedSample, args, us: np.ndarray | None):
    """Shared by estimate/analyze: band of the requested method."""
    if args.method == "bootstrap":
        if args.seed is None:
            raise DomainError("estimate: --method bootstrap requires --seed")
        if sample.scale != "raw":
            # bootstrap re-ranks within resamples, which needs raw values;
            # uniform-scale values work verbatim as raw
            sample = PairedSample(sample.x1, sample.x2, "raw")
        if us is None:
            us = jump_set(pseudo_observations(sample))
        return ci_bootstrap(sample, us, args.level, args.resamples,
                            SeedSpec(args.seed, getattr(args, "stream", 0)))
    if sample.scale == "raw":
        raise DomainError(
            "asymptotic and bonferroni intervals need known-margin data "
            "(--scale uniform); for raw data use --method bootstrap"
        )
    if us is None:
        us = jump_set(sample)
        if us.size == 0:
            raise DataError("estimate: no observation enters either corner")
    return _zband(sample, us, args.level, args.method)


def _band_rows(band, sample: PairedSample | None) -> list[list[str]]:
    rows = []
    counts = None
    if sample is not None:
        counts = tail_counts_grid(sample, band.u)
    unbounded = band.meta.get("unbounded")
    for j, u in enumerate(band.u):
        flags = []
        if not math.isfinite(band.estimate[j]):
            flags.append("nonfinite-estimate")
        if unbounded is not None and unbounded[j]:
            flags.append("unbounded")
        elif not (math.isfinite(band.lower[j]) and math.isfinite(band.upper[j])):
            flags.append("unbounded")
        if counts is not None:
            tl = counts[0][j] / sample.n
            tu = counts[1][j] / sample.n
        else:
            tl = tu = math.nan
        rows.append([
            format_value(float(u)),
            format_value(float(band.estimate[j])),
            format_value(float(band.lower[j])),
            format_value(float(band.upper[j])),
            repr(float(tl)),
            repr(float(tu)),
            ";".join(flags),
        ])
    return rows


_ESTIMATE_HEADER = ["u", "alpha_hat", "lower", "upper", "t_lower", "t_upper", "flags"]


def _cmd_estimate(args) -> int:
    sample = _load_sample(args.input, args.scale)
    us = None if args.u_grid == "jumps" else _parse_u_grid(args.u_grid)
    band = _estimate_band(sample, args, us)
    count_sample = sample if sample.scale in ("uniform", "pseudo") else \
        pseudo_observations(PairedSample(sample.x1, sample.x2, "raw"))
    _write_rows(args.out, _ESTIMATE_HEADER, _band_rows(band, count_sample))
    return EXIT_OK


def _cmd_test(args) -> int:
    sample = _load_sample(args.input, args.scale)
    if sample.scale == "raw":
        sample = pseudo_observations(sample)
    u_points = np.asarray([float(p) for p in args.u_points.split(",") if p.strip()])
    if args.null == "0":
        null_values = 0.0
    else:
        null_values = _null_from_curve(args.null, u_points)
    report = chi2_test(sample, u_points, null_values, nominal_size=args.size)
    payload = json.dumps(report.to_dict(), indent=2, sort_keys=True) + "\n"
    fh, close = _open_out(args.out)
    try:
        fh.write(payload)
    finally:
        if close:
            fh.close()
    return EXIT_OK


def _null_from_curve(path: str, u_points: np.ndarray) -> np.ndarray:
    """Null curve CSV (columns u,value): every test point must be present."""
    try:
        fh = open(path, newline="", encoding="utf-8")
    except OSError as exc:
        raise DataError(f"cannot open null curve {path}: {exc}") from exc
    table: dict[float, float] = {}
    with fh:
        for lineno, row in enumerate(csv.reader(fh), start=1):
            if not row or all(not c.strip() for c in row):
                continue
            try:
                table[float(parse_value(row[0]))] = float(parse_value(row[1]))
            except (ValueError, IndexError):
                if lineno == 1:
                    continue
                raise DataError(f"{path}:{lineno}: bad null-curve row {row!r}") from None
    out = np.empty(u_points.size)
    keys = np.asarray(sorted(table))
    for i, u in enumerate(u_points):
        j = int(np.argmin(np.abs(keys - u))) if keys.size else -1
        if j < 0 or abs(keys[j] - u) > 1e-9:
            raise DataError(f"null curve {path} has no value at u={u:g}")
        out[i] = table[float(keys[j])]
    return out


def _cmd_simulate(args) -> int:
    scenario = Scenario.from_json(args.scenario)
    report = run_scenario(scenario)
    import os

    os.makedirs(args.out, exist_ok=True)
    with open(os.path.join(args.out, "report.json"), "w", encoding="utf-8") as fh:
        json.dump(report, fh, indent=2, sort_keys=True)
        fh.write("\n")
    rows = [
        [
            format_value(r["u"]),
            r["method"],
            repr(float(r["level"])),
            repr(float(r["coverage"])),
            "" if r["mean_width"] is None else repr(float(r["mean_width"])),
            str(r["width_count"]),
            str(r["unbounded_count"]),
        ]
        for r in report["intervals"]
    ]
    _write_rows(
        os.path.join(args.out, "intervals.csv"),
        ["u", "method", "level", "coverage", "mean_width", "width_count", "unbounded_count"],
        rows,
    )
    return EXIT_OK


# ----------------------------------------------------------------------
# analyze: the full pipeline on externally produced residuals
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class AnalysisConfig:
    input: str
    out: str
    margin1: str = "none"
    margin2: str = "none"
    level: float = 0.9
    resamples: int = 999
    seed: int = 0
    test_points: int = 11
    test_upper: float = 0.1
    test_size: float = 0.1
    count_threshold: int = 30
    rho_grid: str = "0.02:0.5:0.02"
    weights: str = "x,x2,x4"
    negate_rho: bool = True
    sigma3_resolution: int = 200

    @classmethod
    def from_dict(cls, d: dict) -> "AnalysisConfig":
        known = set(cls.__dataclass_fields__)
        extra = set(d) - known
        if extra:
            raise DomainError(f"manifest: unknown field(s) {sorted(extra)}")
        return cls(**d)

    def to_dict(self) -> dict:
        d = {k: getattr(self, k) for k in self.__dataclass_fields__}
        return d


def run_analysis(cfg: AnalysisConfig) -> dict:
    """Execute the pipeline, write the output bundle, return the summary."""
    import os

    m1 = parse_margin_spec(cfg.margin1)
    m2 = parse_margin_spec(cfg.margin2)
    if (m1[0] == "none") != (m2[0] == "none"):
        raise DomainError("margins: specify both --margin1 and --margin2, or neither")
    have_margins = m1[0] != "none"

    x1, x2 = _read_pairs(cfg.input)
    raw = PairedSample(x1, x2, "raw")
    pseudo = pseudo_observations(raw)

    os.makedirs(cfg.out, exist_ok=True)

    def path(name: str) -> str:
        return os.path.join(cfg.out, name)

    known = None
    u_min_known = None
    if have_margins:
        known = PairedSample(margin_cdf(m1, x1), margin_cdf(m2, x2), "uniform")
        us_known = jump_set(known)
        band_known = _zband(known, us_known, cfg.level, "asymptotic")
        _write_rows(path("alpha_known.csv"), _ESTIMATE_HEADER, _band_rows(band_known, known))
        u_min_known = u_min_rule(known, cfg.count_threshold)

    us_pseudo = jump_set(pseudo)
    band_star = ci_bootstrap(raw, us_pseudo, cfg.level, cfg.resamples, SeedSpec(cfg.seed, 0))
    _write_rows(path("alpha_pseudo.csv"), _ESTIMATE_HEADER, _band_rows(band_star, pseudo))
    u_min_star = u_min_rule(pseudo, cfg.count_threshold)

    # chi-squared test on m equispaced points in [u_min, test_upper]
    test_sample = known if have_margins else pseudo
    u_min_for_test = u_min_known if have_margins else u_min_star
    test_payload: dict
    if u_min_for_test is None or u_min_for_test >= cfg.test_upper:
        test_payload = {
            "skipped": True,
            "reason": f"u_min rule (threshold {cfg.count_threshold}) gives "
                      f"{u_min_for_test}, not below {cfg.test_upper}",
        }
    else:
        m = cfg.test_points
        pts = u_min_for_test + (cfg.test_upper - u_min_for_test) * np.arange(m) / (m - 1)
        try:
            report = chi2_test(test_sample, pts, 0.0, nominal_size=cfg.test_size)
            test_payload = report.to_dict()
        except TailAsymError as exc:
            test_payload = {"skipped": True, "reason": str(exc)}
    with open(path("test_report.json"), "w", encoding="utf-8") as fh:
        json.dump(test_payload, fh, indent=2, sort_keys=True)
        fh.write("\n")

    # comparison measures on the uniform-scale sample
    comp_sample = known if have_margins else pseudo
    rho_grid = _parse_u_grid(cfg.rho_grid)
    rho_rows: list[list[str]] = []
    for wid in (w.strip() for w in cfg.weights.split(",") if w.strip()):
        if wid not in WEIGHTS:
            raise DomainError(f"unknown weight {wid!r}; known: {sorted(WEIGHTS)}")
        curve = rho_k_curve(comp_sample, rho_grid, wid, negate=cfg.negate_rho)
        rho_rows.extend(_curve_rows(curve))
    _write_rows(path("rho_k.csv"), ["u", "value", "kind", "param_json"], rho_rows)

    s3 = sigma3_empirical(comp_sample, cfg.sigma3_resolution)

    summary = {
        "n": raw.n,
        "sigma3": s3.value,
        "sigma3_resolution": s3.resolution,
        "u_min_known": u_min_known,
        "u_min_pseudo": u_min_star,
        "margins": {"margin1": cfg.margin1, "margin2": cfg.margin2},
        "level": cfg.level,
        "test": test_payload,
    }
    with open(path("summary.json"), "w", encoding="utf-8") as fh:
        json.dump(summary, fh, indent=2, sort_keys=True)
        fh.write("\n")

    manifest = {"config": cfg.to_dict(), "version": __version__}
    with open(path("manifest.json"), "w", encoding="utf-8") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return summary


def _cmd_analyze(args) -> int:
    if args.manifest:
        with open(args.manifest, encoding="utf-8") as fh:
            payload = json.load(fh)
        cfg = AnalysisConfig.from_dict(payload["config"])
    else:
        if args.input is None or args.out is None:
            raise DomainError("analyze: --input and --out are required (or --manifest)")
        if args.seed is None:
            raise DomainError("analyze: --seed is required (bootstrap intervals are randomized)")
        margin = args.margin
        cfg = AnalysisConfig(
            input=args.input,
            out=args.out,
            margin1=args.margin1 or margin or "none",
            margin2=args.margin2 or margin or "none",
            level=args.level,
            resamples=args.resamples,
            seed=args.seed,
            test_points=args.test_points,
            test_upper=args.test_upper,
            test_size=args.test_size,
            count_threshold=args.count_threshold,
            rho_grid=args.rho_grid,
            weights=args.weights,
            negate_rho=not args.no_negate,
            sigma3_resolution=args.sigma3_resolution,
        )
    run_analysis(cfg)
    return EXIT_OK


# ----------------------------------------------------------------------
# Parser and dispatch
# ----------------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tailasym",
        description="Tail-asymmetry measures for bivariate data: population "
                    "curves, estimation, testing, sampling, simulation.",
    )
    parser.add_argument("--version", action="version", version=f"tailasym {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("measure", help="population curves for a model spec")
    p.add_argument("--model", required=True, help="family:key=value,... e.g. clayton:theta=2")
    p.add_argument("--u-grid", default="0.01:0.5:0.01")
    p.add_argument("--kind", choices=["alpha", "beta"], default="alpha")
    p.add_argument("--kappa", type=float, default=1.0, help="scaling index for --kind beta")
    p.add_argument("--limit", action="store_true", help="also print the u->0 limit to stderr")
    p.add_argument("--out", default=None, help="output CSV (default stdout)")
    p.set_defaults(func=_cmd_measure)

    p = sub.add_parser("sample", help="seeded variate generation")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--model", help="copula model spec")
    g.add_argument("--clayton-cauchy", type=float, metavar="THETA",
                   help="Clayton copula with standard Cauchy margins (raw scale)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--stream", type=int, default=0)
    p.add_argument("--out", default=None, help="output CSV (default stdout)")
    p.add_argument("--sidecar", default=None,
                   help="sidecar JSON path (default: <out>.json when --out is a file)")
    p.set_defaults(func=_cmd_sample)

    p = sub.add_parser("estimate", help="sample analogue with confidence bounds")
    p.add_argument("--input", required=True)
    p.add_argument("--scale", choices=["raw", "uniform"], required=True)
    p.add_argument("--u-grid", default="jumps",
                   help="a:b:step, comma list, or 'jumps' for the exact step grid")
    p.add_argument("--level", type=float, default=0.9)
    p.add_argument("--method", choices=["asymptotic", "bonferroni", "bootstrap"],
                   default="asymptotic")
    p.add_argument("--resamples", type=int, default=999)
    p.add_argument("--seed", type=int, default=None, help="required for --method bootstrap")
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_estimate)

    p = sub.add_parser("test", help="m-point chi-squared test of a null curve")
    p.add_argument("--input", required=True)
    p.add_argument("--scale", choices=["raw", "uniform"], required=True)
    p.add_argument("--u-points", required=True, help="comma-separated increasing u values")
    p.add_argument("--null", default="0", help="'0' or a curve CSV with columns u,value")
    p.add_argument("--size", type=float, default=0.1)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_test)

    p = sub.add_parser("simulate", help="run a Monte-Carlo scenario file")
    p.add_argument("--scenario", required=True, help="scenario JSON")
    p.add_argument("--out", required=True, help="output directory")
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("analyze", help="full pipeline on residual-style input data")
    p.add_argument("--input", default=None)
    p.add_argument("--out", default=None, help="output directory")
    p.add_argument("--manifest", default=None,
                   help="rerun from an emitted manifest.json instead of flags")
    p.add_argument("--margin", default=None,
                   help="margin spec applied to both columns, e.g. cauchy:loc=0,scale=1")
    p.add_argument("--margin1", default=None)
    p.add_argument("--margin2", default=None)
    p.add_argument("--level", type=float, default=0.9)
    p.add_argument("--resamples", type=int, default=999)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--test-points", type=int, default=11)
    p.add_argument("--test-upper", type=float, default=0.1)
    p.add_argument("--test-size", type=float, default=0.1)
    p.add_argument("--count-threshold", type=int, default=30)
    p.add_argument("--rho-grid", default="0.02:0.5:0.02")
    p.add_argument("--weights", default="x,x2,x4")
    p.add_argument("--no-negate", action="store_true",
                   help="report rho_K itself instead of its negative")
    p.add_argument("--sigma3-resolution", type=int, default=200)
    p.set_defaults(func=_cmd_analyze)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except DomainError as exc:
        print(f"tailasym: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DataError as exc:
        print(f"tailasym: {exc}", file=sys.stderr)
        return EXIT_DATA
    except NumericalError as exc:
        print(f"tailasym: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except TailAsymError as exc:
        print(f"tailasym: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
