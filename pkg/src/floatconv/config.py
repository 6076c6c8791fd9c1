"""Strict JSON run-configuration parsing for the CLI.

Key names carry unit suffixes (_m, _n, _deg) to keep the SI-internal /
mm-deg-export split explicit. Parsing is strict: unknown keys and missing
required keys are rejected by full dotted path, so a typo never silently
falls back to a default.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .characteristics import ForceCharacteristic
from .errors import ValidationError
from .pulley import (
    CounterElement,
    PulleyProfile,
    synthesize_spring_counter,
    synthesize_weight_counter,
)


@dataclass(frozen=True)
class GripperSettings:
    stage_travel_m: float
    stage_step_m: float
    latch: bool
    actuator_cap_n: float
    object_position_m: float


@dataclass(frozen=True)
class RunConfig:
    spring: ForceCharacteristic
    circular_radius_m: float
    theta_max_rad: float | None
    samples: int
    r_min_m: float | None
    r_max_m: float | None
    counter: CounterElement
    friction_mu: float
    friction_f0_n: float
    gap_x_m: float
    gripper: GripperSettings | None

    @property
    def truncation_bounds(self) -> tuple[float, float] | None:
        if self.r_min_m is None:
            return None
        return (self.r_min_m, self.r_max_m if self.r_max_m is not None else math.inf)


def _check_keys(section: dict, path: str, required: tuple[str, ...], optional: tuple[str, ...]):
    if not isinstance(section, dict):
        raise ValidationError(f"config: {path or 'top level'} must be an object")
    allowed = set(required) | set(optional)
    for key in section:
        if key not in allowed:
            full = f"{path}.{key}" if path else key
            raise ValidationError(f"config: unknown key '{full}'")
    for key in required:
        if key not in section:
            full = f"{path}.{key}" if path else key
            raise ValidationError(f"config: missing required key '{full}'")


def _number(section: dict, path: str, key: str, default=None) -> float:
    if key not in section:
        return default
    value = section[key]
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ValidationError(f"config: '{path}.{key}' must be a number")
    return float(value)


def _integer(section: dict, path: str, key: str, default=None) -> int:
    if key not in section:
        return default
    value = section[key]
    if isinstance(value, bool) or not isinstance(value, int):
        raise ValidationError(f"config: '{path}.{key}' must be an integer")
    return value


def _boolean(section: dict, path: str, key: str) -> bool:
    value = section[key]
    if not isinstance(value, bool):
        raise ValidationError(f"config: '{path}.{key}' must be true or false")
    return value


def parse_characteristic(section: dict, path: str = "spring") -> ForceCharacteristic:
    if not isinstance(section, dict) or "type" not in section:
        raise ValidationError(f"config: missing required key '{path}.type'")
    kind = section["type"]
    if kind == "linear":
        _check_keys(section, path, ("type", "k_n_per_m", "max_extension_m"), ())
        return ForceCharacteristic.linear(
            k=_number(section, path, "k_n_per_m"),
            x_max=_number(section, path, "max_extension_m"),
        )
    if kind == "constant":
        _check_keys(section, path, ("type", "f0_n", "max_extension_m"), ())
        return ForceCharacteristic.constant(
            f0=_number(section, path, "f0_n"),
            x_max=_number(section, path, "max_extension_m"),
        )
    if kind == "power_law":
        _check_keys(section, path, ("type", "c", "d_m", "p", "max_extension_m"), ())
        return ForceCharacteristic.power_law(
            c=_number(section, path, "c"),
            d=_number(section, path, "d_m"),
            p=_number(section, path, "p"),
            x_max=_number(section, path, "max_extension_m"),
        )
    if kind == "tabulated":
        _check_keys(section, path, ("type", "points_m_n"), ("max_extension_m",))
        points = section["points_m_n"]
        if not isinstance(points, list) or any(
            not isinstance(pt, list) or len(pt) != 2 for pt in points
        ):
            raise ValidationError(
                f"config: '{path}.points_m_n' must be a list of [x_m, force_n] pairs"
            )
        return ForceCharacteristic.tabulated(
            points, x_max=_number(section, path, "max_extension_m", default=None)
        )
    if kind == "negated":
        _check_keys(section, path, ("type", "inner"), ())
        return ForceCharacteristic.negated(
            parse_characteristic(section["inner"], path=f"{path}.inner")
        )
    raise ValidationError(f"config: unknown characteristic type '{kind}' at '{path}.type'")


def parse_counter(section: dict, path: str = "counter") -> CounterElement:
    if not isinstance(section, dict) or "type" not in section:
        raise ValidationError(f"config: missing required key '{path}.type'")
    kind = section["type"]
    if kind == "weight":
        _check_keys(section, path, ("type", "load_n"), ())
        return CounterElement.weight(_number(section, path, "load_n"))
    if kind == "spring":
        _check_keys(section, path, ("type", "t0_n", "k2_n_per_m"), ())
        return CounterElement.spring(
            t0=_number(section, path, "t0_n"),
            k2=_number(section, path, "k2_n_per_m"),
        )
    raise ValidationError(f"config: unknown counter type '{kind}' at '{path}.type'")


def parse_config(data: dict) -> RunConfig:
    _check_keys(
        data,
        "",
        ("spring", "pulley", "counter"),
        ("friction", "gap_x_m", "gripper"),
    )
    spring = parse_characteristic(data["spring"])
    counter = parse_counter(data["counter"])

    pulley = data["pulley"]
    _check_keys(
        pulley,
        "pulley",
        ("circular_radius_m",),
        ("theta_max_deg", "samples", "r_min_m", "r_max_m"),
    )
    radius = _number(pulley, "pulley", "circular_radius_m")
    theta_max_deg = _number(pulley, "pulley", "theta_max_deg", default=None)
    samples = _integer(pulley, "pulley", "samples", default=512)
    r_min = _number(pulley, "pulley", "r_min_m", default=None)
    r_max = _number(pulley, "pulley", "r_max_m", default=None)
    if (r_min is None) != (r_max is None):
        raise ValidationError(
            "config: 'pulley.r_min_m' and 'pulley.r_max_m' must be given together"
        )

    friction_mu, friction_f0 = 0.0, 0.0
    if "friction" in data:
        fr = data["friction"]
        _check_keys(fr, "friction", (), ("mu", "offset_n"))
        friction_mu = _number(fr, "friction", "mu", default=0.0)
        friction_f0 = _number(fr, "friction", "offset_n", default=0.0)

    gap_x = _number(data, "", "gap_x_m", default=0.0)

    gripper = None
    if "gripper" in data:
        g = data["gripper"]
        _check_keys(
            g,
            "gripper",
            (
                "stage_travel_m",
                "stage_step_m",
                "latch",
                "actuator_cap_n",
                "object_position_m",
            ),
            (),
        )
        gripper = GripperSettings(
            stage_travel_m=_number(g, "gripper", "stage_travel_m"),
            stage_step_m=_number(g, "gripper", "stage_step_m"),
            latch=_boolean(g, "gripper", "latch"),
            actuator_cap_n=_number(g, "gripper", "actuator_cap_n"),
            object_position_m=_number(g, "gripper", "object_position_m"),
        )

    return RunConfig(
        spring=spring,
        circular_radius_m=radius,
        theta_max_rad=math.radians(theta_max_deg) if theta_max_deg is not None else None,
        samples=samples,
        r_min_m=r_min,
        r_max_m=r_max,
        counter=counter,
        friction_mu=friction_mu,
        friction_f0_n=friction_f0,
        gap_x_m=gap_x,
        gripper=gripper,
    )


def synthesize_from_config(cfg: RunConfig) -> PulleyProfile:
    """Build the configured pulley, applying truncation bounds when present."""
    if cfg.counter.kind == "weight":
        profile = synthesize_weight_counter(
            cfg.spring,
            circular_radius=cfg.circular_radius_m,
            load=cfg.counter.load,
            n_samples=cfg.samples,
            theta_max=cfg.theta_max_rad,
        )
    else:
        profile = synthesize_spring_counter(
            cfg.spring,
            circular_radius=cfg.circular_radius_m,
            counter=cfg.counter,
            n_steps=max(cfg.samples - 1, 1),
            theta_max=cfg.theta_max_rad,
        )
    bounds = cfg.truncation_bounds
    if bounds is not None:
        profile = profile.truncated(*bounds)
    return profile
