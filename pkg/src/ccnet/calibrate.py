"""Degradation-model calibration.

Per dataset, relative accuracy (score at a compressed size divided by
the full-size score) falls roughly linearly in log10 of the parameter
count; the per-dataset slope of that line is the degradation rate. The
rate itself is modeled as a linear function of image complexity:
rate = lambda * C + delta. F1-based models pair with the JPEG
complexity J; IU-based models pair with the combination JB, whose
weight omega is picked by a reproducible grid search maximizing the
regression r^2 (step 0.01, ties to the smallest omega).
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from pathlib import Path

from .complexity import ComplexityProfile, combine_jb
from .errors import (
    DegenerateNormalizationError,
    DegenerateRegressionError,
    InsufficientDataError,
    ManifestError,
    MissingMaskError,
)

METRICS = ("F1", "IU")
COMPLEXITY_KINDS = ("J", "JB")

CALIBRATION_HEADER = ("dataset", "metric", "log10_theta", "rel_acc")

OMEGA_GRID_STEP_DEFAULT = 0.01


@dataclass(frozen=True)
class CalibrationRow:
    dataset: str
    metric: str
    log10_theta: float
    rel_acc: float


@dataclass(frozen=True)
class CalibrationTable:
    rows: tuple[CalibrationRow, ...]

    def __post_init__(self):
        groups = self.grouped()
        if not groups:
            raise InsufficientDataError("calibration table is empty")
        for (dataset, metric), pts in groups.items():
            xs = {x for x, _ in pts}
            if len(xs) < 2:
                raise DegenerateRegressionError(
                    f"dataset {dataset!r} metric {metric}: needs >= 2 distinct "
                    f"log10_theta values"
                )
            top = max(pts, key=lambda p: p[0])
            if abs(top[1] - 1.0) > 1e-9:
                raise ManifestError(
                    f"dataset {dataset!r} metric {metric}: rel_acc at the largest "
                    f"network must be 1.0, got {top[1]}"
                )

    def grouped(self) -> dict[tuple[str, str], list[tuple[float, float]]]:
        groups: dict[tuple[str, str], list[tuple[float, float]]] = {}
        for row in self.rows:
            groups.setdefault((row.dataset, row.metric), []).append(
                (row.log10_theta, row.rel_acc)
            )
        return groups

    def datasets(self, metric: str) -> list[str]:
        seen: list[str] = []
        for row in self.rows:
            if row.metric == metric and row.dataset not in seen:
                seen.append(row.dataset)
        return seen


def load_calibration_csv(source: str | Path) -> CalibrationTable:
    """Parse a calibration CSV with header dataset,metric,log10_theta,rel_acc."""
    path = Path(source)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ManifestError(f"{path}: cannot read calibration CSV ({exc})") from exc
    reader = csv.DictReader(io.StringIO(text))
    if reader.fieldnames is None or tuple(reader.fieldnames) != CALIBRATION_HEADER:
        raise ManifestError(
            f"{path}: calibration CSV header must be {','.join(CALIBRATION_HEADER)}"
        )
    rows = []
    for lineno, rec in enumerate(reader, start=2):
        try:
            metric = rec["metric"].strip()
            if metric not in METRICS:
                raise ValueError(f"metric must be F1 or IU, got {metric!r}")
            rows.append(
                CalibrationRow(
                    dataset=rec["dataset"].strip(),
                    metric=metric,
                    log10_theta=float(rec["log10_theta"]),
                    rel_acc=float(rec["rel_acc"]),
                )
            )
        except (TypeError, ValueError, AttributeError) as exc:
            raise ManifestError(f"{path}:{lineno}: bad calibration row ({exc})") from exc
    return CalibrationTable(tuple(rows))


@dataclass(frozen=True)
class DegradationModel:
    """rate(C) = lambda_ * C + delta for one architecture and metric."""

    architecture: str
    metric: str
    complexity_kind: str
    lambda_: float
    delta: float
    omega: float | None = None
    r2: float | None = None
    source: str = "fitted"

    def rate(self, complexity: float) -> float:
        return self.lambda_ * complexity + self.delta

    def to_dict(self) -> dict:
        return {
            "architecture": self.architecture,
            "metric": self.metric,
            "complexity_kind": self.complexity_kind,
            "lambda": self.lambda_,
            "delta": self.delta,
            "omega": self.omega,
            "r2": self.r2,
            "source": self.source,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "DegradationModel":
        return cls(
            architecture=d["architecture"],
            metric=d["metric"],
            complexity_kind=d["complexity_kind"],
            lambda_=float(d["lambda"]),
            delta=float(d["delta"]),
            omega=None if d.get("omega") is None else float(d["omega"]),
            r2=None if d.get("r2") is None else float(d["r2"]),
            source=d.get("source", "fitted"),
        )


def save_model(model: DegradationModel, path: str | Path) -> None:
    Path(path).write_text(json.dumps(model.to_dict(), indent=2) + "\n", encoding="utf-8")


def load_model(path: str | Path) -> DegradationModel:
    try:
        raw = json.loads(Path(path).read_text(encoding="utf-8"))
        return DegradationModel.from_dict(raw)
    except (OSError, json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        raise ManifestError(f"{path}: cannot read model JSON ({exc})") from exc


def _ols(xs: list[float], ys: list[float]) -> tuple[float, float, float]:
    """Ordinary least squares y = slope * x + intercept; returns
    (slope, intercept, r2). r2 is 1.0 when the fit is exact and the
    response has no variance."""
    n = len(xs)
    mean_x = sum(xs) / n
    mean_y = sum(ys) / n
    sxx = sum((x - mean_x) ** 2 for x in xs)
    sxy = sum((x - mean_x) * (y - mean_y) for x, y in zip(xs, ys))
    slope = sxy / sxx
    intercept = mean_y - slope * mean_x
    ss_res = sum((y - (slope * x + intercept)) ** 2 for x, y in zip(xs, ys))
    ss_tot = sum((y - mean_y) ** 2 for y in ys)
    if ss_tot == 0.0:
        r2 = 1.0 if ss_res <= 1e-24 else 0.0
    else:
        r2 = 1.0 - ss_res / ss_tot
    return slope, intercept, r2


def fit_dataset_slope(points: list[tuple[float, float]]) -> tuple[float, float]:
    """OLS slope of rel_acc against log10_theta for one dataset.

    The slope is the degradation rate: rel_acc ~ 1 - slope * (log10
    theta_base - log10 theta), so it is positive when accuracy drops as
    the network shrinks.
    """
    if len(points) < 2:
        raise InsufficientDataError(f"need >= 2 calibration points, got {len(points)}")
    xs = [float(x) for x, _ in points]
    ys = [float(y) for _, y in points]
    if max(xs) == min(xs):
        raise DegenerateRegressionError("all log10_theta values are equal")
    slope, _, r2 = _ols(xs, ys)
    return slope, r2


def fit_lambda_delta(pairs: list[tuple[float, float]]) -> tuple[float, float, float]:
    """OLS of degradation rate against complexity: (lambda, delta, r2)."""
    if len(pairs) < 2:
        raise InsufficientDataError(f"need >= 2 (complexity, slope) pairs, got {len(pairs)}")
    xs = [float(c) for c, _ in pairs]
    ys = [float(s) for _, s in pairs]
    if max(xs) == min(xs):
        raise DegenerateRegressionError("all complexity values are equal")
    return _ols(xs, ys)


def fit_omega(
    profiles: list[ComplexityProfile],
    slopes: list[float],
    grid_step: float = OMEGA_GRID_STEP_DEFAULT,
) -> tuple[float, float, float, float]:
    """Grid search the JB weight maximizing regression r^2.

    Returns (omega, lambda, delta, r2); ties go to the smallest omega.
    """
    if len(profiles) != len(slopes):
        raise InsufficientDataError("profiles and slopes must have equal length")
    if len(profiles) < 2:
        raise InsufficientDataError("need >= 2 datasets to fit omega")
    for p in profiles:
        if p.blob_b is None:
            raise MissingMaskError(
                f"profile {p.dataset_name!r} has no blob density; omega fit needs masks"
            )
    steps = round(1.0 / grid_step)
    best = None
    for k in range(steps + 1):
        omega = k / steps
        jb = [combine_jb(p.jpeg_j, p.blob_b, omega) for p in profiles]
        try:
            lam, delta, r2 = fit_lambda_delta(list(zip(jb, slopes)))
        except DegenerateRegressionError:
            continue  # JB collapsed to a constant at this omega
        if best is None or r2 > best[3]:
            best = (omega, lam, delta, r2)
    if best is None:
        raise DegenerateRegressionError("JB is constant at every omega grid point")
    return best


def normalize_profiles(values: list[float]) -> list[float]:
    """Min-max normalization to [0, 1]."""
    if len(values) < 2:
        raise InsufficientDataError("need >= 2 values to normalize")
    lo, hi = min(values), max(values)
    if lo == hi:
        raise DegenerateNormalizationError("all values equal; nothing to normalize")
    return [(v - lo) / (hi - lo) for v in values]


# Published degradation models, one per architecture and accuracy metric.
# F1 models pair with J, IU models with JB (their omega was not published).
_FIXTURE_CONSTANTS = (
    ("fcn", "F1", "J", 0.407, -0.030),
    ("fcn", "IU", "JB", 0.627, -0.070),
    ("unet", "F1", "J", 0.411, -0.037),
    ("unet", "IU", "JB", 0.323, -0.031),
    ("cumedvision", "F1", "J", 0.701, -0.071),
    ("cumedvision", "IU", "JB", 1.010, -0.129),
)


def paper_fixture_models() -> list[DegradationModel]:
    """The six published (lambda, delta) models."""
    return [
        DegradationModel(
            architecture=arch,
            metric=metric,
            complexity_kind=kind,
            lambda_=lam,
            delta=delta,
            source="paper_fixture",
        )
        for arch, metric, kind, lam, delta in _FIXTURE_CONSTANTS
    ]
