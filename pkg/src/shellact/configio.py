"""YAML config schemas for cross-sections, actuator specs, brace layouts
and gait schedules.

Schema summary (all keys lowercase):

cross-section::

    kind: circle | equilateral_triangle | square | rectangle | rounded_rectangle
    radius_mm / side_mm / width_mm, height_mm / + corner_radius_mm

loss model::

    form: linear            |  form: exponential
    slope_per_kpa: -0.005   |  amplitude: 0.993
    intercept: 0.522        |  decay_per_kpa: 0.07
    valid_range_kpa: [30, 60]

actuator spec::

    cross_section: {...}
    loss_model: {...}
    max_pressure_kpa: 60
    stroke_mm: 5

shapes file: ``shapes: {<shape_id>: <cross-section>, ...}``
layout file: ``actuators: [{id, site, side, lever_arm_m, direction, spec}, ...]``
schedule file: ``phases: [{name, fraction, pressures: {<id>: kPa}}, ...]``
"""

from __future__ import annotations

from typing import Any

import yaml

from .brace import (
    ActuatorPlacement,
    BraceLayout,
    ForceDirection,
    GaitPhase,
    GaitSchedule,
    Side,
    Site,
)
from .geometry import (
    Circle,
    CrossSection,
    EquilateralTriangle,
    Rectangle,
    RoundedRectangle,
    Square,
)
from .loss import ActuatorSpec, ExponentialLoss, LinearLoss, LossModel


class ConfigError(ValueError):
    """Config file is malformed or names an unknown kind/form."""


def cross_section_from_dict(d: dict[str, Any]) -> CrossSection:
    try:
        kind = d["kind"]
        if kind == "circle":
            return Circle(float(d["radius_mm"]))
        if kind == "equilateral_triangle":
            return EquilateralTriangle(float(d["side_mm"]))
        if kind == "square":
            return Square(float(d["side_mm"]))
        if kind == "rectangle":
            return Rectangle(float(d["width_mm"]), float(d["height_mm"]))
        if kind == "rounded_rectangle":
            return RoundedRectangle(
                float(d["width_mm"]), float(d["height_mm"]), float(d["corner_radius_mm"])
            )
    except KeyError as exc:
        raise ConfigError(f"cross-section config missing key {exc}") from exc
    raise ConfigError(f"unknown cross-section kind {d.get('kind')!r}")


def cross_section_to_dict(cs: CrossSection) -> dict[str, Any]:
    if isinstance(cs, Circle):
        return {"kind": "circle", "radius_mm": cs.radius_mm}
    if isinstance(cs, EquilateralTriangle):
        return {"kind": "equilateral_triangle", "side_mm": cs.side_mm}
    if isinstance(cs, Square):
        return {"kind": "square", "side_mm": cs.side_mm}
    if isinstance(cs, Rectangle):
        return {"kind": "rectangle", "width_mm": cs.width_mm, "height_mm": cs.height_mm}
    if isinstance(cs, RoundedRectangle):
        return {
            "kind": "rounded_rectangle",
            "width_mm": cs.width_mm,
            "height_mm": cs.height_mm,
            "corner_radius_mm": cs.corner_radius_mm,
        }
    raise TypeError(f"not a cross-section: {cs!r}")


def loss_model_from_dict(d: dict[str, Any]) -> LossModel:
    try:
        form = d["form"]
        rng = tuple(float(x) for x in d["valid_range_kpa"])
        if form == "linear":
            return LinearLoss(float(d["slope_per_kpa"]), float(d["intercept"]), rng)
        if form == "exponential":
            return ExponentialLoss(float(d["amplitude"]), float(d["decay_per_kpa"]), rng)
    except KeyError as exc:
        raise ConfigError(f"loss model config missing key {exc}") from exc
    raise ConfigError(f"unknown loss model form {d.get('form')!r}")


def loss_model_to_dict(m: LossModel) -> dict[str, Any]:
    if isinstance(m, LinearLoss):
        return {
            "form": "linear",
            "slope_per_kpa": m.slope_per_kpa,
            "intercept": m.intercept,
            "valid_range_kpa": list(m.valid_range_kpa),
        }
    return {
        "form": "exponential",
        "amplitude": m.amplitude,
        "decay_per_kpa": m.decay_per_kpa,
        "valid_range_kpa": list(m.valid_range_kpa),
    }


def actuator_spec_from_dict(d: dict[str, Any]) -> ActuatorSpec:
    try:
        return ActuatorSpec(
            cross_section=cross_section_from_dict(d["cross_section"]),
            loss_model=loss_model_from_dict(d["loss_model"]),
            max_pressure_kpa=float(d.get("max_pressure_kpa", 60.0)),
            stroke_mm=float(d.get("stroke_mm", 5.0)),
            allow_extrapolation=bool(d.get("allow_extrapolation", False)),
        )
    except KeyError as exc:
        raise ConfigError(f"actuator spec config missing key {exc}") from exc


def actuator_spec_to_dict(spec: ActuatorSpec) -> dict[str, Any]:
    return {
        "cross_section": cross_section_to_dict(spec.cross_section),
        "loss_model": loss_model_to_dict(spec.loss_model),
        "max_pressure_kpa": spec.max_pressure_kpa,
        "stroke_mm": spec.stroke_mm,
        "allow_extrapolation": spec.allow_extrapolation,
    }


def load_yaml(path: str) -> dict[str, Any]:
    with open(path, encoding="utf-8") as fh:
        data = yaml.safe_load(fh)
    if not isinstance(data, dict):
        raise ConfigError(f"{path}: top level must be a mapping")
    return data


def load_actuator_spec(path: str) -> ActuatorSpec:
    return actuator_spec_from_dict(load_yaml(path))


def load_shapes(path: str) -> dict[str, CrossSection]:
    data = load_yaml(path)
    shapes = data.get("shapes")
    if not isinstance(shapes, dict) or not shapes:
        raise ConfigError(f"{path}: expected a non-empty 'shapes' mapping")
    return {str(sid): cross_section_from_dict(d) for sid, d in shapes.items()}


def load_layout(path: str) -> BraceLayout:
    data = load_yaml(path)
    entries = data.get("actuators")
    if not isinstance(entries, list):
        raise ConfigError(f"{path}: expected an 'actuators' list")
    placements = []
    for d in entries:
        try:
            placements.append(
                ActuatorPlacement(
                    actuator_id=str(d["id"]),
                    site=Site(d["site"]),
                    side=Side(d["side"]),
                    spec=actuator_spec_from_dict(d["spec"]),
                    lever_arm_m=float(d["lever_arm_m"]),
                    direction=_direction(d["direction"]),
                )
            )
        except KeyError as exc:
            raise ConfigError(f"{path}: actuator entry missing key {exc}") from exc
        except ValueError as exc:
            raise ConfigError(f"{path}: {exc}") from exc
    return BraceLayout(tuple(placements))


def _direction(name: str) -> ForceDirection:
    try:
        return {
            "medial_to_lateral": ForceDirection.MEDIAL_TO_LATERAL,
            "lateral_to_medial": ForceDirection.LATERAL_TO_MEDIAL,
        }[name]
    except KeyError:
        raise ConfigError(f"unknown force direction {name!r}") from None


def load_schedule(path: str) -> GaitSchedule:
    data = load_yaml(path)
    entries = data.get("phases")
    if not isinstance(entries, list):
        raise ConfigError(f"{path}: expected a 'phases' list")
    phases = []
    for d in entries:
        try:
            pressures = {str(k): float(v) for k, v in (d.get("pressures") or {}).items()}
            phases.append(GaitPhase(str(d["name"]), float(d["fraction"]), pressures))
        except KeyError as exc:
            raise ConfigError(f"{path}: phase entry missing key {exc}") from exc
    return GaitSchedule(tuple(phases))


def layout_to_dict(layout: BraceLayout) -> dict[str, Any]:
    return {
        "actuators": [
            {
                "id": a.actuator_id,
                "site": a.site.value,
                "side": a.side.value,
                "lever_arm_m": a.lever_arm_m,
                "direction": (
                    "medial_to_lateral"
                    if a.direction is ForceDirection.MEDIAL_TO_LATERAL
                    else "lateral_to_medial"
                ),
                "spec": actuator_spec_to_dict(a.spec),
            }
            for a in layout.actuators
        ]
    }


def schedule_to_dict(schedule: GaitSchedule) -> dict[str, Any]:
    return {
        "phases": [
            {"name": ph.name, "fraction": ph.fraction, "pressures": dict(ph.pressures_kpa)}
            for ph in schedule.phases
        ]
    }


def dump_yaml(data: dict[str, Any], path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        yaml.safe_dump(data, fh, sort_keys=False)
