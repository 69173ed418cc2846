"""Command-line interface.

Subcommands mirror the pipeline: analyze (dataset -> complexity
profile), calibrate (accuracy sweep CSV -> degradation model), plan
(architecture + model + constraint -> compression plan), report
(model/plans -> SVG charts), presets (built-in architectures).

Exit codes are a stable contract: 0 success, 2 usage or input error,
3 calibration error, 4 infeasible constraint.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import re
import sys
from pathlib import Path

from . import __version__
from .calibrate import (
    CalibrationTable,
    DegradationModel,
    fit_dataset_slope,
    fit_lambda_delta,
    fit_omega,
    load_calibration_csv,
    paper_fixture_models,
    save_model,
)
from .complexity import analyze_dataset, load_manifest, save_profile
from .errors import (
    BudgetTooSmallError,
    CcnetError,
    ConfigurationError,
    DegenerateRegressionError,
    InfeasibleBudgetError,
    InfeasibleEpsilonError,
    InsufficientDataError,
    ManifestError,
    MissingMaskError,
)
from .fixtures import resolve_model, resolve_profile
from .netarch import (
    ALPHA_MIN_DEFAULT,
    PRESET_NAMES,
    arch_to_dict,
    param_count,
    parse_arch,
    preset,
)
from .solver import (
    EPSILON_DEFAULT,
    Constraint,
    build_plan,
    epsilon_check,
)
from .svgplot import dataset_trends_svg, reduction_bars_svg, scatter_fit_svg

SLOPES_HEADER = ("dataset", "metric", "complexity", "slope", "r2", "n")

_SIZE_RE = re.compile(r"^\s*(\d+(?:\.\d+)?)\s*(b|kb|mb|gb|kib|mib|gib)?\s*$", re.IGNORECASE)
_SIZE_MULT = {
    None: 1, "b": 1,
    "kb": 10**3, "mb": 10**6, "gb": 10**9,
    "kib": 2**10, "mib": 2**20, "gib": 2**30,
}


def parse_size(text: str) -> int:
    """'1MB' -> 10**6 bytes; 'MiB' and friends are binary; bare ints are bytes."""
    m = _SIZE_RE.match(text)
    if not m:
        raise ConfigurationError(f"cannot parse byte size {text!r}")
    value = float(m.group(1))
    unit = m.group(2).lower() if m.group(2) else None
    return int(value * _SIZE_MULT[unit])


def _resolve_arch(ref: str):
    if ref.lower() in PRESET_NAMES:
        return preset(ref)
    return parse_arch(ref)


def _write(path: Path, content: str, force: bool) -> None:
    """Write unless an identical file already exists; refuse to clobber."""
    if path.exists():
        if path.read_text(encoding="utf-8") == content:
            return
        if not force:
            raise ConfigurationError(f"{path} exists with different content; use --force")
    path.write_text(content, encoding="utf-8")


def _out_dir(args) -> Path:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    return out


def _json_text(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


# ---------------------------------------------------------------------------
# analyze

def cmd_analyze(args) -> int:
    manifest = load_manifest(args.manifest)
    if args.require_masks and not manifest.has_masks:
        raise ManifestError(
            f"--require-masks given but manifest {manifest.name!r} configures no masks"
        )
    profile, rows = analyze_dataset(manifest)
    if args.omega is not None:
        profile = profile.with_jb(args.omega)
    out = _out_dir(args)
    profile_path = out / f"{manifest.name}.profile.json"
    _write(profile_path, _json_text(profile.to_dict()), args.force)
    print(f"wrote {profile_path}")
    if args.per_image:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["path", "energy", "edge", "jpeg_j", "blob_b"])
        for r in rows:
            b = "" if r.fg_pixels is None else repr(r.fg_pixels / r.mask_pixels)
            writer.writerow([r.path.name, repr(r.energy), repr(r.edge), repr(r.jpeg_j), b])
        csv_path = out / f"{manifest.name}.per-image.csv"
        _write(csv_path, buf.getvalue(), args.force)
        print(f"wrote {csv_path}")
    return 0


# ---------------------------------------------------------------------------
# calibrate

def _profiles_by_name(refs: list[str]) -> dict:
    profiles = {}
    for ref in refs:
        p = resolve_profile(ref)
        profiles[p.dataset_name] = p
    return profiles


def _calibrate_models(
    table: CalibrationTable, profiles: dict, arch_name: str, omega_step: float
) -> tuple[list[DegradationModel], list[tuple]]:
    """Fit one model per metric present in the table; returns models and
    slope rows (dataset, metric, complexity, slope, r2, n)."""
    models = []
    slope_rows = []
    groups = table.grouped()
    for metric in ("F1", "IU"):
        datasets = table.datasets(metric)
        if not datasets:
            continue
        for name in datasets:
            if name not in profiles:
                raise ConfigurationError(
                    f"calibration CSV references dataset {name!r} but no profile "
                    f"for it was supplied"
                )
        slopes = []
        for name in datasets:
            slope, r2 = fit_dataset_slope(groups[(name, metric)])
            slopes.append((name, slope, r2, len(groups[(name, metric)])))
        if metric == "F1":
            pairs = [(profiles[name].jpeg_j, slope) for name, slope, _, _ in slopes]
            lam, delta, r2 = fit_lambda_delta(pairs)
            model = DegradationModel(
                architecture=arch_name, metric="F1", complexity_kind="J",
                lambda_=lam, delta=delta, r2=r2, source="fitted",
            )
            complexities = {name: profiles[name].jpeg_j for name in datasets}
        else:
            omega, lam, delta, r2 = fit_omega(
                [profiles[name] for name in datasets],
                [slope for _, slope, _, _ in slopes],
                grid_step=omega_step,
            )
            model = DegradationModel(
                architecture=arch_name, metric="IU", complexity_kind="JB",
                lambda_=lam, delta=delta, omega=omega, r2=r2, source="fitted",
            )
            complexities = {
                name: profiles[name].with_jb(omega).jb for name in datasets
            }
        models.append(model)
        for name, slope, sr2, n in slopes:
            slope_rows.append((name, metric, complexities[name], slope, sr2, n))
    return models, slope_rows


def cmd_calibrate(args) -> int:
    out = _out_dir(args)
    if args.export_paper_fixtures:
        for model in paper_fixture_models():
            path = out / f"{model.architecture}-{model.metric.lower()}.model.json"
            _write(path, _json_text(model.to_dict()), args.force)
            print(f"wrote {path}")
        if not args.csv:
            return 0
    if not args.csv:
        raise ConfigurationError("calibrate needs --csv (or --export-paper-fixtures)")
    table = load_calibration_csv(args.csv)
    profiles = _profiles_by_name(args.profile or [])
    try:
        models, slope_rows = _calibrate_models(
            table, profiles, args.arch_name, args.omega_step
        )
    except (DegenerateRegressionError, InsufficientDataError, MissingMaskError,
            ConfigurationError) as exc:
        print(f"calibration error: {exc}", file=sys.stderr)
        return 3
    for model in models:
        path = out / f"{args.arch_name}.{model.metric.lower()}.model.json"
        _write(path, _json_text(model.to_dict()), args.force)
        print(f"wrote {path}")
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(SLOPES_HEADER)
    for row in slope_rows:
        writer.writerow([row[0], row[1], repr(row[2]), repr(row[3]), repr(row[4]), row[5]])
    slopes_path = out / f"{args.arch_name}.slopes.csv"
    _write(slopes_path, buf.getvalue(), args.force)
    print(f"wrote {slopes_path}")
    return 0


# ---------------------------------------------------------------------------
# plan

def cmd_plan(args) -> int:
    flags = [args.min_rel_f1 is not None, args.disk_budget is not None,
             args.ram_budget is not None]
    if sum(flags) != 1:
        raise ConfigurationError(
            "exactly one of --min-rel-f1, --disk-budget, --ram-budget is required"
        )
    arch = _resolve_arch(args.arch)
    model = resolve_model(args.model) if args.model else None
    profile = resolve_profile(args.profile) if args.profile else None

    if args.min_rel_f1 is not None:
        if model is None or profile is None:
            raise ConfigurationError("--min-rel-f1 needs --model and --profile")
        constraint = Constraint("accuracy_floor", rel_acc_floor=args.min_rel_f1,
                                bytes_per_param=args.bytes_per_param)
    elif args.disk_budget is not None:
        constraint = Constraint("disk_budget", disk_bytes=parse_size(args.disk_budget),
                                bytes_per_param=args.bytes_per_param)
    else:
        constraint = Constraint("ram_budget", ram_bytes=parse_size(args.ram_budget),
                                bytes_per_param=args.bytes_per_param)

    plan = build_plan(
        arch, profile, model, constraint,
        alpha_min=args.alpha_min, rounding=args.rounding, snap=args.snap,
    )
    out = _out_dir(args)
    plan_path = out / "plan.json"
    _write(plan_path, _json_text(plan.to_dict()), args.force)
    arch_path = out / "arch.scaled.json"
    _write(arch_path, _json_text(arch_to_dict(plan.scaled_arch)), args.force)
    print(f"wrote {plan_path}")
    print(f"wrote {arch_path}")
    if args.epsilon_check:
        sibling = epsilon_check(plan, args.epsilon)
        sibling_path = out / "plan.epsilon.json"
        _write(sibling_path, _json_text(sibling.to_dict()), args.force)
        print(f"wrote {sibling_path}")
    print(
        f"alpha={plan.alpha_applied:.6g} log10_theta_realized="
        f"{plan.log10_theta_realized:.4f} pr={plan.pr:.4g} lr_proxy={plan.lr_proxy:.4g}"
    )
    return 0


# ---------------------------------------------------------------------------
# report

def _read_slopes_csv(path: Path) -> list[dict]:
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ManifestError(f"{path}: cannot read slopes CSV ({exc})") from exc
    reader = csv.DictReader(io.StringIO(text))
    if reader.fieldnames is None or tuple(reader.fieldnames) != SLOPES_HEADER:
        raise ManifestError(f"{path}: slopes CSV header must be {','.join(SLOPES_HEADER)}")
    return list(reader)


def cmd_report(args) -> int:
    out = _out_dir(args)
    wrote_any = False
    if args.model and args.slopes:
        model = resolve_model(args.model)
        rows = [r for r in _read_slopes_csv(Path(args.slopes)) if r["metric"] == model.metric]
        if not rows:
            raise ManifestError(
                f"slopes CSV has no rows for metric {model.metric}"
            )
        points = [(float(r["complexity"]), float(r["slope"]), r["dataset"]) for r in rows]
        svg = scatter_fit_svg(
            points, model.lambda_, model.delta,
            title=f"{model.architecture} {model.metric}: degradation rate vs "
                  f"{model.complexity_kind}",
            xlabel=f"complexity {model.complexity_kind}",
            ylabel="degradation rate per log10(params)",
        )
        path = out / "degradation_fit.svg"
        _write(path, svg, args.force)
        print(f"wrote {path}")
        wrote_any = True
        if args.calibration:
            table = load_calibration_csv(args.calibration)
            groups = table.grouped()
            series = []
            for name in table.datasets(model.metric):
                pts = sorted(groups[(name, model.metric)])
                slope, _ = fit_dataset_slope(pts)
                # Anchor the drawn line on the dataset's own points.
                xs = [x for x, _ in pts]
                ys = [y for _, y in pts]
                mean_x = sum(xs) / len(xs)
                mean_y = sum(ys) / len(ys)
                series.append((name, pts, slope, mean_y - slope * mean_x))
            svg = dataset_trends_svg(
                series,
                title=f"{model.architecture} {model.metric}: relative accuracy vs size",
                xlabel="log10(trainable parameters)",
                ylabel=f"relative {model.metric}",
            )
            path = out / "dataset_trends.svg"
            _write(path, svg, args.force)
            print(f"wrote {path}")
    if args.plans:
        entries = []
        for plan_ref in args.plans:
            try:
                raw = json.loads(Path(plan_ref).read_text(encoding="utf-8"))
            except (OSError, json.JSONDecodeError) as exc:
                raise ManifestError(f"{plan_ref}: cannot read plan JSON ({exc})") from exc
            label = raw.get("dataset") or raw.get("architecture") or Path(plan_ref).stem
            key = raw.get("complexity_value")
            entries.append((
                float("inf") if key is None else float(key),
                str(label), float(raw["pr"]), float(raw["lr_proxy"]),
            ))
        entries.sort(key=lambda e: (e[0], e[1]))
        svg = reduction_bars_svg(
            [(label, pr, lr) for _, label, pr, lr in entries],
            title="Reduction by dataset (ascending complexity)",
        )
        path = out / "reduction_bars.svg"
        _write(path, svg, args.force)
        print(f"wrote {path}")
        wrote_any = True
    if not wrote_any:
        raise ConfigurationError(
            "report needs --model + --slopes (regression charts) and/or --plans "
            "(reduction bars)"
        )
    return 0


# ---------------------------------------------------------------------------
# presets

def cmd_presets(args) -> int:
    if args.dump:
        arch = preset(args.dump)
        out = _out_dir(args)
        path = out / f"{arch.name}.arch.json"
        _write(path, _json_text(arch_to_dict(arch)), args.force)
        print(f"wrote {path}")
        return 0
    for name in PRESET_NAMES:
        acc = param_count(preset(name))
        print(f"{name:14s} theta={acc.theta:>12d} log10_theta={acc.log10_theta:.4f} "
              f"macs={acc.macs}")
    return 0


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ccnet",
        description="Complexity-guided CNN compression planning without training",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="compute a dataset complexity profile")
    p.add_argument("--manifest", required=True, help="dataset manifest JSON")
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--per-image", action="store_true", help="also write per-image CSV")
    p.add_argument("--require-masks", action="store_true",
                   help="fail unless the manifest configures masks")
    p.add_argument("--omega", type=float, default=None,
                   help="fill the JB field using this weight")
    p.add_argument("--force", action="store_true", help="overwrite differing outputs")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("calibrate", help="fit a degradation model from a sweep CSV")
    p.add_argument("--csv", help="calibration CSV (dataset,metric,log10_theta,rel_acc)")
    p.add_argument("--profile", action="append", default=[],
                   help="profile JSON path or fixtures:<name>; repeatable")
    p.add_argument("--arch-name", default="arch", help="architecture label for outputs")
    p.add_argument("--omega-step", type=float, default=0.01, help="omega grid step")
    p.add_argument("--export-paper-fixtures", action="store_true",
                   help="write the six published fixture models")
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--force", action="store_true", help="overwrite differing outputs")
    p.set_defaults(func=cmd_calibrate)

    p = sub.add_parser("plan", help="solve a width multiplier for a constraint")
    p.add_argument("--arch", required=True,
                   help=f"arch JSON path or preset: {', '.join(PRESET_NAMES)}")
    p.add_argument("--model", help="model JSON path or fixtures:<name>")
    p.add_argument("--profile", help="profile JSON path or fixtures:<name>")
    p.add_argument("--min-rel-f1", type=float, default=None,
                   help="accuracy floor relative to the base network, e.g. 0.95")
    p.add_argument("--disk-budget", default=None, help="disk budget, e.g. 1MB")
    p.add_argument("--ram-budget", default=None, help="main-memory budget, e.g. 64MiB")
    p.add_argument("--bytes-per-param", type=int, default=4)
    p.add_argument("--alpha-min", type=float, default=ALPHA_MIN_DEFAULT)
    p.add_argument("--rounding", choices=("ceil", "floor", "nearest"), default="ceil")
    p.add_argument("--snap", choices=("none", "ceil_to_grid"), default="none",
                   help="optionally snap alpha up to the calibration grid")
    p.add_argument("--epsilon-check", action="store_true",
                   help="also write the plan at alpha - epsilon")
    p.add_argument("--epsilon", type=float, default=EPSILON_DEFAULT)
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--force", action="store_true", help="overwrite differing outputs")
    p.set_defaults(func=cmd_plan)

    p = sub.add_parser("report", help="emit SVG charts")
    p.add_argument("--model", help="model JSON path or fixtures:<name>")
    p.add_argument("--slopes", help="slopes CSV from calibrate")
    p.add_argument("--calibration", help="calibration CSV for per-dataset trends")
    p.add_argument("--plans", nargs="+", default=None, help="plan JSON files")
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--force", action="store_true", help="overwrite differing outputs")
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("presets", help="list or dump built-in architectures")
    p.add_argument("--dump", help="preset name to write as arch JSON")
    p.add_argument("--out", default=".", help="output directory for --dump")
    p.add_argument("--force", action="store_true", help="overwrite differing outputs")
    p.set_defaults(func=cmd_presets)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 2
    try:
        return args.func(args)
    except (BudgetTooSmallError, InfeasibleBudgetError, InfeasibleEpsilonError) as exc:
        print(f"infeasible constraint: {exc}", file=sys.stderr)
        return 4
    except CcnetError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def console() -> None:
    sys.exit(main())
