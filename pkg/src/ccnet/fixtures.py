"""Built-in reference fixtures.

Seven published dataset profiles (JPEG complexity J and blob density B;
energy and edge were not published and stay None) and the six published
degradation models. Fixture names resolve through the "fixtures:" URI
scheme used by the CLI, e.g. "fixtures:c2dh-u373" or "fixtures:unet-f1";
anything without the prefix is treated as a file path.
"""

from __future__ import annotations

from pathlib import Path

from .calibrate import DegradationModel, load_model, paper_fixture_models
from .complexity import ComplexityProfile, load_profile
from .errors import PresetLookupError

FIXTURE_PREFIX = "fixtures:"

_PROFILE_ROWS = (
    # slug, aliases, image count, J, B
    ("glands", ("gl",), 165, 0.2401, 0.5711),
    ("lymph-nodes", ("ln",), 74, 0.2445, 0.0715),
    ("melanoma", ("me",), 2750, 0.1505, 0.3055),
    ("c2dh-hela", ("ch",), 20, 0.1403, 0.4607),
    ("wing-discs", ("wd",), 996, 0.0925, 0.1348),
    ("c2dh-u373", ("cu",), 34, 0.1473, 0.0699),
    ("c2dl-psc", ("cp",), 4, 0.2296, 0.3066),
)

# The first five are the calibration (train) datasets; the last two were
# held out for validation.
TRAIN_PROFILE_NAMES = ("glands", "lymph-nodes", "melanoma", "c2dh-hela", "wing-discs")
TEST_PROFILE_NAMES = ("c2dh-u373", "c2dl-psc")

# Published base-network sizes as log10 of the trainable parameter count.
PUBLISHED_BASE_LOG10_THETA = {"unet": 7.492, "fcn": 7.552, "cumedvision": 6.887}


def _build_profiles() -> dict[str, ComplexityProfile]:
    table: dict[str, ComplexityProfile] = {}
    for slug, aliases, count, j, b in _PROFILE_ROWS:
        profile = ComplexityProfile(
            dataset_name=slug,
            image_count=count,
            energy=None,
            edge=None,
            jpeg_j=j,
            blob_b=b,
        )
        table[slug] = profile
        for alias in aliases:
            table[alias] = profile
    return table


_PROFILES = _build_profiles()

_MODELS = {f"{m.architecture}-{m.metric.lower()}": m for m in paper_fixture_models()}

PROFILE_FIXTURE_NAMES = tuple(slug for slug, _, _, _, _ in _PROFILE_ROWS)
MODEL_FIXTURE_NAMES = tuple(sorted(_MODELS))


def fixture_profile(name: str) -> ComplexityProfile:
    try:
        return _PROFILES[name.lower()]
    except KeyError:
        raise PresetLookupError(
            f"unknown profile fixture {name!r}; available: "
            f"{', '.join(PROFILE_FIXTURE_NAMES)}"
        ) from None


def fixture_model(name: str) -> DegradationModel:
    try:
        return _MODELS[name.lower()]
    except KeyError:
        raise PresetLookupError(
            f"unknown model fixture {name!r}; available: {', '.join(MODEL_FIXTURE_NAMES)}"
        ) from None


def train_profiles() -> list[ComplexityProfile]:
    return [_PROFILES[name] for name in TRAIN_PROFILE_NAMES]


def resolve_profile(ref: str | Path) -> ComplexityProfile:
    """fixtures:<name> or a profile JSON path."""
    ref = str(ref)
    if ref.startswith(FIXTURE_PREFIX):
        return fixture_profile(ref[len(FIXTURE_PREFIX):])
    return load_profile(ref)


def resolve_model(ref: str | Path) -> DegradationModel:
    """fixtures:<name> or a model JSON path."""
    ref = str(ref)
    if ref.startswith(FIXTURE_PREFIX):
        return fixture_model(ref[len(FIXTURE_PREFIX):])
    return load_model(ref)
