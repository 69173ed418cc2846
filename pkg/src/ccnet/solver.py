"""Width-multiplier solving for the three planning scenarios.

Given a base architecture, a complexity profile, and a degradation
model, the solver picks the multiplier alpha for:

* a disk budget: parameters scale with alpha^2, so
  alpha = sqrt(theta_target / theta);
* a main-memory budget: activation memory dominates and scales with
  alpha, so alpha = budget / (activations + parameter bytes);
* an accuracy floor: invert the linear degradation model
  1 - floor = rate * (log10 theta - log10 theta_target), then map the
  parameter target back through the alpha^2 law.

Plans apply ceiling rounding to feature-map counts (so accuracy floors
stay safe); byte budgets that a ceiled network would overshoot fall
back to floor rounding, and if needed to the largest feasible alpha,
so a hard budget is never silently exceeded.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import NamedTuple

from .calibrate import DegradationModel
from .complexity import ComplexityProfile, combine_jb
from .errors import (
    BudgetTooSmallError,
    ConfigurationError,
    DomainError,
    InfeasibleBudgetError,
    InfeasibleEpsilonError,
    InvalidModelError,
)
from .netarch import (
    ALPHA_GRID,
    ALPHA_MIN_DEFAULT,
    ArchSpec,
    ParamAccount,
    param_count,
    reduction_ratios,
    scale_arch,
)

SLOPE_MIN_DEFAULT = 1e-4
EPSILON_DEFAULT = 1.0 / 64.0

CONSTRAINT_KINDS = ("disk_budget", "ram_budget", "accuracy_floor")


@dataclass(frozen=True)
class Constraint:
    kind: str
    disk_bytes: int | None = None
    ram_bytes: int | None = None
    rel_acc_floor: float | None = None
    bytes_per_param: int = 4

    def __post_init__(self):
        if self.kind not in CONSTRAINT_KINDS:
            raise DomainError(f"constraint kind must be one of {CONSTRAINT_KINDS}")
        if self.bytes_per_param < 1:
            raise DomainError("bytes_per_param must be >= 1")
        fields = {
            "disk_budget": self.disk_bytes,
            "ram_budget": self.ram_bytes,
            "accuracy_floor": self.rel_acc_floor,
        }
        for kind, value in fields.items():
            if kind == self.kind:
                if value is None:
                    raise DomainError(f"{kind} constraint needs its value")
            elif value is not None:
                raise DomainError(f"{self.kind} constraint must not set {kind} fields")
        if self.kind in ("disk_budget", "ram_budget"):
            budget = self.disk_bytes if self.kind == "disk_budget" else self.ram_bytes
            if budget <= 0:
                raise DomainError("byte budget must be positive")
        if self.kind == "accuracy_floor" and not 0.0 < self.rel_acc_floor < 1.0:
            raise DomainError(f"accuracy floor must lie in (0, 1), got {self.rel_acc_floor}")

    def to_dict(self) -> dict:
        d = {"kind": self.kind, "bytes_per_param": self.bytes_per_param}
        if self.disk_bytes is not None:
            d["disk_bytes"] = self.disk_bytes
        if self.ram_bytes is not None:
            d["ram_bytes"] = self.ram_bytes
        if self.rel_acc_floor is not None:
            d["rel_acc_floor"] = self.rel_acc_floor
        return d


def disk_budget(disk_bytes: int, bytes_per_param: int = 4) -> Constraint:
    return Constraint("disk_budget", disk_bytes=disk_bytes, bytes_per_param=bytes_per_param)


def ram_budget(ram_bytes: int, bytes_per_param: int = 4) -> Constraint:
    return Constraint("ram_budget", ram_bytes=ram_bytes, bytes_per_param=bytes_per_param)


def accuracy_floor(rel_acc_floor: float) -> Constraint:
    return Constraint("accuracy_floor", rel_acc_floor=rel_acc_floor)


def alpha_for_disk_budget(theta: int, constraint: Constraint) -> float:
    """alpha = min(1, sqrt(theta_target / theta)) for a disk-byte budget."""
    if theta < 1:
        raise DomainError("base parameter count must be >= 1")
    if constraint.kind != "disk_budget":
        raise ConfigurationError("constraint is not a disk budget")
    theta_star = constraint.disk_bytes // constraint.bytes_per_param
    if theta_star < 1:
        raise BudgetTooSmallError(
            f"disk budget {constraint.disk_bytes} B cannot hold one "
            f"{constraint.bytes_per_param}-byte parameter"
        )
    return min(1.0, math.sqrt(theta_star / theta))


def total_memory_bytes(account: ParamAccount, bytes_per_param: int) -> int:
    """Activation memory plus parameter storage."""
    return account.activation_bytes + account.theta * bytes_per_param


def alpha_for_ram_budget(
    arch: ArchSpec, constraint: Constraint, alpha_min: float = ALPHA_MIN_DEFAULT
) -> float:
    """alpha = min(1, budget / base memory); memory scales linearly in alpha."""
    if constraint.kind != "ram_budget":
        raise ConfigurationError("constraint is not a ram budget")
    base = total_memory_bytes(param_count(arch), constraint.bytes_per_param)
    alpha = min(1.0, constraint.ram_bytes / base)
    if alpha < alpha_min:
        minimal = math.ceil(alpha_min * base)
        raise InfeasibleBudgetError(
            f"ram budget {constraint.ram_bytes} B needs alpha < alpha_min "
            f"{alpha_min}; minimal feasible budget is {minimal} B",
            minimal_feasible_bytes=minimal,
        )
    return alpha


class AccuracySolution(NamedTuple):
    alpha: float
    log10_theta_target: float
    clamped: bool


def alpha_for_accuracy(
    log10_theta: float,
    complexity: float,
    model: DegradationModel,
    floor: float,
    alpha_min: float = ALPHA_MIN_DEFAULT,
    slope_min: float = SLOPE_MIN_DEFAULT,
) -> AccuracySolution:
    """Invert the degradation model for a relative-accuracy floor.

    rate = lambda * C + delta. A rate below the threshold means the
    model sees negligible degradation at any size, so alpha clamps to
    alpha_min; a meaningfully negative rate is a refused model (it
    would predict accuracy gains from pruning).
    """
    if not 0.0 < floor < 1.0:
        raise DomainError(f"accuracy floor must lie in (0, 1), got {floor}")
    rate = model.rate(complexity)
    if not math.isfinite(rate):
        raise InvalidModelError(f"degradation rate is not finite: {rate}")
    if rate < -slope_min:
        raise InvalidModelError(
            f"model predicts accuracy gain from pruning (rate {rate:.6g} at "
            f"complexity {complexity:.6g}); refusing"
        )
    if rate <= slope_min:
        return AccuracySolution(alpha_min, log10_theta + 2.0 * math.log10(alpha_min), True)
    drop = (1.0 - floor) / rate
    log_target = log10_theta - drop
    alpha = 10.0 ** ((log_target - log10_theta) / 2.0)
    clamped = alpha < alpha_min or alpha > 1.0
    return AccuracySolution(min(1.0, max(alpha_min, alpha)), log_target, clamped)


def predict_rel_acc(
    log10_theta_base: float,
    log10_theta_new: float,
    complexity: float,
    model: DegradationModel,
) -> float:
    """Relative accuracy the linear model assigns to a smaller network."""
    if log10_theta_new > log10_theta_base:
        raise DomainError(
            f"log10_theta_new {log10_theta_new} exceeds base {log10_theta_base}"
        )
    value = 1.0 - model.rate(complexity) * (log10_theta_base - log10_theta_new)
    return max(0.0, value)


def snap_alpha(alpha: float, grid=ALPHA_GRID, mode: str = "none") -> float:
    """Optionally snap alpha up to the calibration grid."""
    if mode == "none":
        return alpha
    if mode != "ceil_to_grid":
        raise DomainError(f"snap mode must be 'none' or 'ceil_to_grid', got {mode!r}")
    candidates = [g for g in grid if g >= alpha - 1e-12]
    if not candidates:
        return max(grid)
    return min(candidates)


@dataclass(frozen=True)
class CompressionPlan:
    base_arch: ArchSpec
    scaled_arch: ArchSpec
    constraint: Constraint
    model: DegradationModel | None
    dataset: str | None
    complexity_value: float | None
    alpha_continuous: float
    alpha_applied: float
    alpha_min: float
    clamped: bool
    rounding_used: str
    theta_base: int
    log10_theta_base: float
    theta_target: float
    log10_theta_target: float
    theta_realized: int
    log10_theta_realized: float
    predicted_rel_acc: float | None
    pr: float
    lr_proxy: float

    def to_dict(self) -> dict:
        return {
            "architecture": self.base_arch.name,
            "dataset": self.dataset,
            "complexity_kind": self.model.complexity_kind if self.model else None,
            "complexity_value": self.complexity_value,
            "constraint": self.constraint.to_dict(),
            "model": self.model.to_dict() if self.model else None,
            "alpha_continuous": self.alpha_continuous,
            "alpha_applied": self.alpha_applied,
            "alpha_min": self.alpha_min,
            "clamped": self.clamped,
            "rounding_used": self.rounding_used,
            "theta_base": self.theta_base,
            "log10_theta_base": self.log10_theta_base,
            "theta_target": self.theta_target,
            "log10_theta_target": self.log10_theta_target,
            "theta_realized": self.theta_realized,
            "log10_theta_realized": self.log10_theta_realized,
            "predicted_rel_acc": self.predicted_rel_acc,
            "pr": self.pr,
            "lr_proxy": self.lr_proxy,
        }


def complexity_for(model: DegradationModel, profile: ComplexityProfile) -> float:
    """The complexity value a model consumes from a profile."""
    if model.complexity_kind == "J":
        return profile.jpeg_j
    if model.complexity_kind == "JB":
        if model.omega is not None:
            if profile.blob_b is None:
                raise ConfigurationError(
                    f"profile {profile.dataset_name!r} has no blob density but the "
                    f"model needs JB"
                )
            return combine_jb(profile.jpeg_j, profile.blob_b, model.omega)
        if profile.jb is not None:
            return profile.jb
        raise ConfigurationError(
            "JB model without omega needs a profile with a precomputed jb value"
        )
    raise ConfigurationError(f"unknown complexity kind {model.complexity_kind!r}")


def _budget_fits(account: ParamAccount, constraint: Constraint) -> bool:
    if constraint.kind == "disk_budget":
        return account.theta * constraint.bytes_per_param <= constraint.disk_bytes
    return total_memory_bytes(account, constraint.bytes_per_param) <= constraint.ram_bytes


def _largest_feasible_alpha(
    arch: ArchSpec, constraint: Constraint, alpha_hi: float, alpha_min: float
) -> tuple[float, ArchSpec, ParamAccount]:
    """Bisect for the largest floor-rounded alpha whose cost fits the budget.

    Raises InfeasibleBudgetError when even alpha_min does not fit.
    """
    lo_arch = scale_arch(arch, alpha_min, "floor")
    lo_acc = param_count(lo_arch)
    if not _budget_fits(lo_acc, constraint):
        if constraint.kind == "disk_budget":
            minimal = lo_acc.theta * constraint.bytes_per_param
            budget = constraint.disk_bytes
        else:
            minimal = total_memory_bytes(lo_acc, constraint.bytes_per_param)
            budget = constraint.ram_bytes
        raise InfeasibleBudgetError(
            f"budget {budget} B is infeasible even at alpha_min {alpha_min}; "
            f"minimal feasible budget is {minimal} B",
            minimal_feasible_bytes=minimal,
        )
    lo, hi = alpha_min, alpha_hi
    best = (alpha_min, lo_arch, lo_acc)
    for _ in range(64):
        mid = 0.5 * (lo + hi)
        cand = scale_arch(arch, mid, "floor")
        acc = param_count(cand)
        if _budget_fits(acc, constraint):
            best = (mid, cand, acc)
            lo = mid
        else:
            hi = mid
    return best


def build_plan(
    arch: ArchSpec,
    profile: ComplexityProfile | None,
    model: DegradationModel | None,
    constraint: Constraint,
    alpha_min: float = ALPHA_MIN_DEFAULT,
    rounding: str = "ceil",
    snap: str = "none",
    slope_min: float = SLOPE_MIN_DEFAULT,
) -> CompressionPlan:
    """Solve the constraint, scale the architecture, and assemble the plan.

    profile/model may be omitted for byte budgets; the plan then carries
    no accuracy prediction.
    """
    base_acc = param_count(arch)
    theta_base = base_acc.theta
    log_base = base_acc.log10_theta

    complexity = None
    if model is not None:
        if profile is None:
            raise ConfigurationError("a model was given without a profile")
        complexity = complexity_for(model, profile)

    clamped = False
    if constraint.kind == "accuracy_floor":
        if model is None or complexity is None:
            raise ConfigurationError("accuracy-floor planning needs a model and a profile")
        solution = alpha_for_accuracy(
            log_base, complexity, model, constraint.rel_acc_floor,
            alpha_min=alpha_min, slope_min=slope_min,
        )
        alpha_cont = solution.alpha
        log_target = solution.log10_theta_target
        theta_target = 10.0 ** log_target
        clamped = solution.clamped
    elif constraint.kind == "disk_budget":
        alpha_raw = alpha_for_disk_budget(theta_base, constraint)
        theta_target = float(constraint.disk_bytes // constraint.bytes_per_param)
        log_target = math.log10(theta_target)
        alpha_cont = alpha_raw
        if theta_target >= theta_base:
            clamped = True  # budget exceeds the base network; alpha stopped at 1
    else:
        alpha_cont = alpha_for_ram_budget(arch, constraint, alpha_min=alpha_min)
        theta_target = alpha_cont * alpha_cont * theta_base
        log_target = math.log10(theta_target)
        base_mem = total_memory_bytes(base_acc, constraint.bytes_per_param)
        if constraint.ram_bytes >= base_mem:
            clamped = True

    alpha_applied = snap_alpha(alpha_cont, mode=snap)
    if alpha_applied < alpha_min:
        alpha_applied = alpha_min
        clamped = True
    if alpha_applied > 1.0:
        alpha_applied = 1.0
        clamped = True

    rounding_used = rounding
    scaled = scale_arch(arch, alpha_applied, rounding)
    acc = param_count(scaled)
    if constraint.kind in ("disk_budget", "ram_budget") and not _budget_fits(acc, constraint):
        if rounding == "ceil":
            scaled = scale_arch(arch, alpha_applied, "floor")
            acc = param_count(scaled)
            rounding_used = "floor"
        if not _budget_fits(acc, constraint):
            alpha_applied, scaled, acc = _largest_feasible_alpha(
                arch, constraint, alpha_applied, alpha_min
            )
            rounding_used = "floor"

    predicted = None
    if model is not None and complexity is not None:
        predicted = predict_rel_acc(log_base, acc.log10_theta, complexity, model)
    pr, lr = reduction_ratios(base_acc, acc)

    return CompressionPlan(
        base_arch=arch,
        scaled_arch=scaled,
        constraint=constraint,
        model=model,
        dataset=profile.dataset_name if profile is not None else None,
        complexity_value=complexity,
        alpha_continuous=alpha_cont,
        alpha_applied=alpha_applied,
        alpha_min=alpha_min,
        clamped=clamped,
        rounding_used=rounding_used,
        theta_base=theta_base,
        log10_theta_base=log_base,
        theta_target=theta_target,
        log10_theta_target=log_target,
        theta_realized=acc.theta,
        log10_theta_realized=acc.log10_theta,
        predicted_rel_acc=predicted,
        pr=pr,
        lr_proxy=lr,
    )


def epsilon_check(plan: CompressionPlan, epsilon: float = EPSILON_DEFAULT) -> CompressionPlan:
    """The sibling plan at alpha - epsilon, to demonstrate tightness."""
    if epsilon < 0.0:
        raise DomainError(f"epsilon must be >= 0, got {epsilon}")
    if epsilon == 0.0:
        return plan
    alpha = plan.alpha_applied - epsilon
    if alpha < plan.alpha_min - 1e-15:
        raise InfeasibleEpsilonError(
            f"alpha {plan.alpha_applied} - epsilon {epsilon} falls below "
            f"alpha_min {plan.alpha_min}"
        )
    base_acc = param_count(plan.base_arch)
    scaled = scale_arch(plan.base_arch, alpha, plan.rounding_used)
    acc = param_count(scaled)
    predicted = None
    if plan.model is not None and plan.complexity_value is not None:
        predicted = predict_rel_acc(
            base_acc.log10_theta, acc.log10_theta, plan.complexity_value, plan.model
        )
    pr, lr = reduction_ratios(base_acc, acc)
    theta_target = alpha * alpha * base_acc.theta
    return replace(
        plan,
        scaled_arch=scaled,
        alpha_continuous=alpha,
        alpha_applied=alpha,
        clamped=False,
        theta_target=theta_target,
        log10_theta_target=math.log10(theta_target),
        theta_realized=acc.theta,
        log10_theta_realized=acc.log10_theta,
        predicted_rel_acc=predicted,
        pr=pr,
        lr_proxy=lr,
    )
