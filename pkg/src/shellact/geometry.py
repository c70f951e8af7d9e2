"""Cross-section geometry and the ideal pressure-force-area relation.

Unit system (locked package-wide):
- pressure: kilopascal (kPa)
- length: millimetre (mm)
- area: mm^2
- force: newton (N)

The single kPa*mm^2 -> N conversion (factor 1e-3) lives in
:func:`ideal_force`; no other function converts units.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

#: Default supply-pressure cap in kPa. The characterization rig uses 3D
#: printed parts that are not rated beyond this.
DEFAULT_SAFETY_CAP_KPA = 60.0

#: kPa * mm^2 -> N
_KPA_MM2_TO_N = 1e-3


class DimensionError(ValueError):
    """A cross-section dimension is non-positive or geometrically invalid."""


class SafetyCapError(ValueError):
    """A pressure exceeds the configured safety cap."""


def check_pressure(pressure_kpa: float, cap_kpa: float = DEFAULT_SAFETY_CAP_KPA) -> float:
    """Validate a supply pressure: finite, non-negative, within the cap."""
    if not math.isfinite(pressure_kpa) or pressure_kpa < 0.0:
        raise ValueError(f"pressure must be a finite non-negative kPa value, got {pressure_kpa!r}")
    if pressure_kpa > cap_kpa:
        raise SafetyCapError(f"pressure {pressure_kpa} kPa exceeds safety cap {cap_kpa} kPa")
    return pressure_kpa


def _require_positive(name: str, value: float) -> None:
    if not (math.isfinite(value) and value > 0.0):
        raise DimensionError(f"{name} must be positive and finite, got {value!r}")


@dataclass(frozen=True)
class Circle:
    radius_mm: float

    def __post_init__(self) -> None:
        _require_positive("radius_mm", self.radius_mm)


@dataclass(frozen=True)
class EquilateralTriangle:
    side_mm: float

    def __post_init__(self) -> None:
        _require_positive("side_mm", self.side_mm)


@dataclass(frozen=True)
class Square:
    side_mm: float

    def __post_init__(self) -> None:
        _require_positive("side_mm", self.side_mm)


@dataclass(frozen=True)
class Rectangle:
    width_mm: float
    height_mm: float

    def __post_init__(self) -> None:
        _require_positive("width_mm", self.width_mm)
        _require_positive("height_mm", self.height_mm)


@dataclass(frozen=True)
class RoundedRectangle:
    width_mm: float
    height_mm: float
    corner_radius_mm: float

    def __post_init__(self) -> None:
        _require_positive("width_mm", self.width_mm)
        _require_positive("height_mm", self.height_mm)
        if not (math.isfinite(self.corner_radius_mm) and self.corner_radius_mm >= 0.0):
            raise DimensionError(f"corner_radius_mm must be >= 0, got {self.corner_radius_mm!r}")
        if self.corner_radius_mm > min(self.width_mm, self.height_mm) / 2.0:
            raise DimensionError(
                "corner_radius_mm must not exceed half the shorter side: "
                f"r={self.corner_radius_mm}, w={self.width_mm}, h={self.height_mm}"
            )


CrossSection = Circle | EquilateralTriangle | Square | Rectangle | RoundedRectangle


def area(cs: CrossSection) -> float:
    """Exact analytic area of a cross-section in mm^2."""
    if isinstance(cs, Circle):
        return math.pi * cs.radius_mm**2
    if isinstance(cs, EquilateralTriangle):
        return math.sqrt(3.0) / 4.0 * cs.side_mm**2
    if isinstance(cs, Square):
        return cs.side_mm**2
    if isinstance(cs, Rectangle):
        return cs.width_mm * cs.height_mm
    if isinstance(cs, RoundedRectangle):
        # full rectangle minus the four corner cutouts (square minus quarter circle)
        return cs.width_mm * cs.height_mm - (4.0 - math.pi) * cs.corner_radius_mm**2
    raise TypeError(f"not a cross-section: {cs!r}")


def equal_area_family(
    reference_radius_mm: float, rectangle_aspect: float = 2.0
) -> list[CrossSection]:
    """Circle, equilateral triangle, square and rectangle of identical area.

    The common area is that of a circle with ``reference_radius_mm``; the
    rectangle has width/height equal to ``rectangle_aspect`` (>= 1, so the
    aspect-1 rectangle coincides with the square).
    """
    _require_positive("reference_radius_mm", reference_radius_mm)
    if not (math.isfinite(rectangle_aspect) and rectangle_aspect >= 1.0):
        raise ValueError(f"rectangle_aspect must be >= 1, got {rectangle_aspect!r}")
    target = math.pi * reference_radius_mm**2
    height = math.sqrt(target / rectangle_aspect)
    return [
        Circle(reference_radius_mm),
        EquilateralTriangle(math.sqrt(4.0 * target / math.sqrt(3.0))),
        Square(math.sqrt(target)),
        Rectangle(rectangle_aspect * height, height),
    ]


def ideal_force(
    pressure_kpa: float,
    cs: CrossSection,
    safety_cap_kpa: float = DEFAULT_SAFETY_CAP_KPA,
) -> float:
    """Lossless force P*A in newtons for a supply pressure and a cross-section."""
    check_pressure(pressure_kpa, safety_cap_kpa)
    return pressure_kpa * area(cs) * _KPA_MM2_TO_N
