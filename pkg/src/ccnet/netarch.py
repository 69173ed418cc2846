"""Declarative CNN architecture model with exact accounting.

An architecture is an ordered list of layers: conv (with output width,
filter size, and an optional skip concatenation from an earlier layer),
pool (halves spatial dims, floor), and upsample (doubles them). Conv
input widths are derived, never stored: predecessor output channels plus
the skip source's channels. Counting conventions:

* trainable weights per conv = in_maps * fh * fw * out_maps (biases
  excluded by default; include_bias=True adds out_maps per conv),
* MACs per conv = out_h * out_w * weights under 'same' padding,
* activation bytes = sum over all layer outputs of
  out_h * out_w * channels * bytes_per_activation.

Uniform width scaling multiplies every scalable conv width by alpha and
rounds; the classifier conv and the input channels never change.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field, replace
from pathlib import Path

from .errors import ArchValidationError, DomainError, PresetLookupError

ROUNDING_MODES = ("ceil", "floor", "nearest")

# The calibration sweep grid; its minimum doubles as the solver clamp.
ALPHA_GRID = (1.0, 0.75, 0.5, 0.25, 0.1875, 0.125, 0.0625, 0.03125)
ALPHA_MIN_DEFAULT = 0.03125


@dataclass(frozen=True)
class LayerSpec:
    kind: str
    out_maps: int | None = None
    filter: tuple[int, int] | None = None
    scalable: bool = True
    skip_from: int | None = None

    def is_conv(self) -> bool:
        return self.kind == "conv"


def conv(out_maps: int, filter=(3, 3), scalable=True, skip_from=None) -> LayerSpec:
    return LayerSpec("conv", out_maps, (int(filter[0]), int(filter[1])), scalable, skip_from)


def pool() -> LayerSpec:
    return LayerSpec("pool")


def upsample() -> LayerSpec:
    return LayerSpec("upsample")


@dataclass(frozen=True)
class ArchSpec:
    name: str
    input_channels: int
    num_classes: int
    input_size: tuple[int, int]
    layers: tuple[LayerSpec, ...] = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "layers", tuple(self.layers))
        object.__setattr__(self, "input_size", tuple(int(v) for v in self.input_size))
        validate_arch(self)


@dataclass(frozen=True)
class ParamAccount:
    theta: int
    log10_theta: float
    per_layer: tuple[tuple[int, int], ...]
    macs: int
    activation_bytes: int


def validate_arch(arch: ArchSpec) -> None:
    if arch.input_channels < 1:
        raise ArchValidationError(f"{arch.name}: input_channels must be >= 1")
    if arch.num_classes < 1:
        raise ArchValidationError(f"{arch.name}: num_classes must be >= 1")
    if len(arch.input_size) != 2 or min(arch.input_size) < 1:
        raise ArchValidationError(f"{arch.name}: input_size must be two positive ints")
    if not arch.layers:
        raise ArchValidationError(f"{arch.name}: needs at least one layer")
    last_conv = None
    for i, layer in enumerate(arch.layers):
        if layer.kind not in ("conv", "pool", "upsample"):
            raise ArchValidationError(f"{arch.name}: layer {i} has unknown kind {layer.kind!r}")
        if layer.kind == "conv":
            if layer.out_maps is None or layer.out_maps < 1:
                raise ArchValidationError(f"{arch.name}: layer {i} width must be >= 1")
            if layer.filter is None or min(layer.filter) < 1:
                raise ArchValidationError(f"{arch.name}: layer {i} filter must be >= 1x1")
            if layer.skip_from is not None and not 0 <= layer.skip_from < i:
                raise ArchValidationError(
                    f"{arch.name}: layer {i} skip_from={layer.skip_from} must point to an "
                    f"earlier layer"
                )
            last_conv = i
        elif layer.out_maps is not None or layer.skip_from is not None:
            raise ArchValidationError(
                f"{arch.name}: layer {i} ({layer.kind}) takes no width or skip"
            )
    if last_conv is None:
        raise ArchValidationError(f"{arch.name}: needs a classifier conv")
    classifier = arch.layers[last_conv]
    if classifier.out_maps != arch.num_classes:
        raise ArchValidationError(
            f"{arch.name}: terminal conv width {classifier.out_maps} != num_classes "
            f"{arch.num_classes}"
        )
    if classifier.scalable:
        raise ArchValidationError(f"{arch.name}: terminal classifier conv must not be scalable")


def resolve_channels(arch: ArchSpec) -> tuple[list[int | None], list[int]]:
    """Per layer: derived conv input channels (None for pool/upsample) and
    output channels."""
    in_maps: list[int | None] = []
    out_ch: list[int] = []
    current = arch.input_channels
    for layer in arch.layers:
        if layer.kind == "conv":
            cin = current
            if layer.skip_from is not None:
                cin += out_ch[layer.skip_from]
            in_maps.append(cin)
            current = layer.out_maps
        else:
            in_maps.append(None)
        out_ch.append(current)
    return in_maps, out_ch


def param_count(arch: ArchSpec, include_bias: bool = False,
                bytes_per_activation: int = 4) -> ParamAccount:
    """Exact weight, MAC, and activation-memory accounting at input_size."""
    in_maps, out_ch = resolve_channels(arch)
    h, w = arch.input_size
    theta = 0
    macs = 0
    act_bytes = 0
    per_layer = []
    for i, layer in enumerate(arch.layers):
        if layer.kind == "conv":
            weights = in_maps[i] * layer.filter[0] * layer.filter[1] * layer.out_maps
            if include_bias:
                weights += layer.out_maps
            macs += h * w * in_maps[i] * layer.filter[0] * layer.filter[1] * layer.out_maps
        elif layer.kind == "pool":
            weights = 0
            h, w = h // 2, w // 2
        else:
            weights = 0
            h, w = h * 2, w * 2
        if h < 1 or w < 1:
            raise ArchValidationError(
                f"{arch.name}: spatial size collapses to zero at layer {i} "
                f"for input_size {arch.input_size}"
            )
        theta += weights
        per_layer.append((i, weights))
        act_bytes += h * w * out_ch[i] * bytes_per_activation
    return ParamAccount(
        theta=theta,
        log10_theta=math.log10(theta),
        per_layer=tuple(per_layer),
        macs=macs,
        activation_bytes=act_bytes,
    )


def _round_width(x: float, mode: str) -> int:
    # 1e-9 guards absorb float noise in alpha * width for dyadic alphas.
    if mode == "ceil":
        return math.ceil(x - 1e-9)
    if mode == "floor":
        return math.floor(x + 1e-9)
    if mode == "nearest":
        return math.floor(x + 0.5)
    raise DomainError(f"rounding must be one of {ROUNDING_MODES}, got {mode!r}")


def scale_arch(arch: ArchSpec, alpha: float, rounding: str = "ceil") -> ArchSpec:
    """Scale every scalable conv width by alpha, clamped to >= 1."""
    if not 0.0 < alpha <= 1.0:
        raise DomainError(f"alpha must lie in (0, 1], got {alpha}")
    if rounding not in ROUNDING_MODES:
        raise DomainError(f"rounding must be one of {ROUNDING_MODES}, got {rounding!r}")
    layers = []
    for layer in arch.layers:
        if layer.kind == "conv" and layer.scalable:
            new_w = max(1, _round_width(alpha * layer.out_maps, rounding))
            layers.append(replace(layer, out_maps=new_w))
        else:
            layers.append(layer)
    return replace(arch, layers=tuple(layers))


def reduction_ratios(base: ParamAccount, compressed: ParamAccount) -> tuple[float, float]:
    """(parameter reduction, latency-reduction proxy via MAC counts)."""
    if compressed.theta < 1:
        raise DomainError("compressed network has no parameters")
    return base.theta / compressed.theta, base.macs / compressed.macs


# ---------------------------------------------------------------------------
# Serialization

def arch_to_dict(arch: ArchSpec) -> dict:
    layers = []
    for layer in arch.layers:
        if layer.kind == "conv":
            layers.append(
                {
                    "kind": "conv",
                    "out_maps": layer.out_maps,
                    "filter": list(layer.filter),
                    "scalable": layer.scalable,
                    "skip_from": layer.skip_from,
                }
            )
        else:
            layers.append({"kind": layer.kind})
    return {
        "name": arch.name,
        "input_channels": arch.input_channels,
        "num_classes": arch.num_classes,
        "input_size": list(arch.input_size),
        "layers": layers,
    }


def arch_from_dict(raw: dict) -> ArchSpec:
    try:
        layers = []
        for entry in raw["layers"]:
            kind = entry["kind"]
            if kind == "conv":
                layers.append(
                    LayerSpec(
                        "conv",
                        out_maps=int(entry["out_maps"]),
                        filter=tuple(int(v) for v in entry["filter"]),
                        scalable=bool(entry.get("scalable", True)),
                        skip_from=entry.get("skip_from"),
                    )
                )
            else:
                layers.append(LayerSpec(kind))
        return ArchSpec(
            name=str(raw["name"]),
            input_channels=int(raw["input_channels"]),
            num_classes=int(raw["num_classes"]),
            input_size=tuple(int(v) for v in raw["input_size"]),
            layers=tuple(layers),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise ArchValidationError(f"malformed architecture description: {exc}") from exc


def parse_arch(path: str | Path) -> ArchSpec:
    path = Path(path)
    try:
        raw = json.loads(path.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise ArchValidationError(f"{path}: cannot read architecture file ({exc})") from exc
    return arch_from_dict(raw)


def save_arch(arch: ArchSpec, path: str | Path) -> None:
    Path(path).write_text(json.dumps(arch_to_dict(arch), indent=2) + "\n", encoding="utf-8")


# ---------------------------------------------------------------------------
# Built-in presets
#
# U-Net is the classic 64-1024 encoder/decoder with skip concatenations.
# The fcn and cumedvision tables approximate their published block
# diagrams; head widths were fixed once against the published parameter
# totals (log10 within 0.05) and are frozen here.

def _unet() -> ArchSpec:
    layers: list[LayerSpec] = []
    skips: list[int] = []
    for width in (64, 128, 256, 512):
        layers += [conv(width), conv(width)]
        skips.append(len(layers) - 1)
        layers.append(pool())
    layers += [conv(1024), conv(1024)]
    for width, src in zip((512, 256, 128, 64), reversed(skips)):
        layers += [upsample(), conv(width, skip_from=src), conv(width)]
    layers.append(conv(2, filter=(1, 1), scalable=False))
    return ArchSpec("unet", 1, 2, (512, 512), tuple(layers))


def _fcn() -> ArchSpec:
    layers: list[LayerSpec] = []
    for width, reps in ((64, 2), (128, 2), (256, 3), (512, 3), (512, 3)):
        layers += [conv(width) for _ in range(reps)]
        layers.append(pool())
    layers.append(conv(800, filter=(7, 7)))
    layers.append(conv(800, filter=(1, 1)))
    layers.append(conv(2, filter=(1, 1), scalable=False))
    layers += [upsample()] * 5
    return ArchSpec("fcn", 1, 2, (512, 512), tuple(layers))


def _cumedvision() -> ArchSpec:
    layers: list[LayerSpec] = []
    for width, reps in ((64, 2), (128, 2), (256, 3)):
        layers += [conv(width) for _ in range(reps)]
        layers.append(pool())
    layers += [conv(512) for _ in range(3)]
    layers += [upsample(), conv(64), upsample(), upsample()]
    layers.append(conv(2, filter=(1, 1), scalable=False))
    return ArchSpec("cumedvision", 1, 2, (512, 512), tuple(layers))


_PRESETS = {"unet": _unet, "fcn": _fcn, "cumedvision": _cumedvision}

PRESET_NAMES = tuple(sorted(_PRESETS))


def preset(name: str) -> ArchSpec:
    """Built-in architecture by name: unet, fcn, or cumedvision."""
    try:
        builder = _PRESETS[name.lower()]
    except KeyError:
        raise PresetLookupError(
            f"unknown preset {name!r}; available: {', '.join(PRESET_NAMES)}"
        ) from None
    return builder()
