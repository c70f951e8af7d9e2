"""Force-loss models and force prediction for shell-constrained actuators.

The measured output force of the actuator is the ideal pressure*area force
scaled by ``1 - loss``, where the loss is a dimensionless fraction in
[0, 1]. Two parametric loss curves are supported: a linear fit valid over
the upper half of the pressure sweep (balloon prototype) and an
exponentially decaying loss (molded actuator).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .geometry import CrossSection, ideal_force


class OverPressureError(ValueError):
    """Commanded pressure exceeds the actuator's maximum pressure."""


class ZeroPressureError(ValueError):
    """Loss back-calculation requires a strictly positive pressure."""


def _check_valid_range(valid_range_kpa: tuple[float, float]) -> None:
    lo, hi = valid_range_kpa
    if not (math.isfinite(lo) and math.isfinite(hi) and 0.0 <= lo < hi):
        raise ValueError(f"valid_range_kpa must satisfy 0 <= lo < hi, got {valid_range_kpa!r}")


@dataclass(frozen=True)
class LinearLoss:
    """loss(P) = clamp(slope*P + intercept, 0, 1)."""

    slope_per_kpa: float
    intercept: float
    valid_range_kpa: tuple[float, float] = (30.0, 60.0)

    def __post_init__(self) -> None:
        _check_valid_range(self.valid_range_kpa)

    def raw(self, pressure_kpa: float) -> float:
        return self.slope_per_kpa * pressure_kpa + self.intercept


@dataclass(frozen=True)
class ExponentialLoss:
    """loss(P) = clamp(amplitude * exp(-decay*P), 0, 1)."""

    amplitude: float
    decay_per_kpa: float
    valid_range_kpa: tuple[float, float] = (5.0, 50.0)

    def __post_init__(self) -> None:
        _check_valid_range(self.valid_range_kpa)

    def raw(self, pressure_kpa: float) -> float:
        return self.amplitude * math.exp(-self.decay_per_kpa * pressure_kpa)


LossModel = LinearLoss | ExponentialLoss

#: Linear loss fitted to the balloon prototype sweep over [30, 60] kPa.
BALLOON_LOSS = LinearLoss(slope_per_kpa=-0.005, intercept=0.522)

#: Exponential loss of the molded actuator, anchored at loss(5)=0.70 and
#: loss(50)=0.03. Defaults only; a fit can replace them.
ENGINEERED_LOSS = ExponentialLoss(amplitude=0.9930, decay_per_kpa=0.0700)


@dataclass(frozen=True)
class LossValue:
    """Evaluated loss fraction plus an out-of-validity-range flag."""

    fraction: float
    extrapolated: bool


def loss_fraction(pressure_kpa: float, model: LossModel) -> LossValue:
    """Evaluate the loss fraction, clamped to [0, 1].

    Pressures outside the model's validity range are evaluated anyway but
    flagged as extrapolated.
    """
    lo, hi = model.valid_range_kpa
    fraction = min(1.0, max(0.0, model.raw(pressure_kpa)))
    return LossValue(fraction, extrapolated=not lo <= pressure_kpa <= hi)


def efficiency(pressure_kpa: float, model: LossModel) -> LossValue:
    """Complement of the loss fraction (1 - loss), same extrapolation flag."""
    lv = loss_fraction(pressure_kpa, model)
    return LossValue(1.0 - lv.fraction, lv.extrapolated)


@dataclass(frozen=True)
class ActuatorSpec:
    """A cross-section paired with its loss model and operating limits."""

    cross_section: CrossSection
    loss_model: LossModel
    max_pressure_kpa: float = 60.0
    stroke_mm: float = 5.0
    allow_extrapolation: bool = field(default=False)

    def __post_init__(self) -> None:
        if not (math.isfinite(self.max_pressure_kpa) and self.max_pressure_kpa > 0.0):
            raise ValueError(f"max_pressure_kpa must be positive, got {self.max_pressure_kpa!r}")
        if not (math.isfinite(self.stroke_mm) and self.stroke_mm > 0.0):
            raise ValueError(f"stroke_mm must be positive, got {self.stroke_mm!r}")
        if self.max_pressure_kpa > self.loss_model.valid_range_kpa[1] and not self.allow_extrapolation:
            raise ValueError(
                f"max_pressure_kpa {self.max_pressure_kpa} exceeds the loss model's "
                f"validity range {self.loss_model.valid_range_kpa}; "
                "set allow_extrapolation=True to accept"
            )


#: Balloon prototype: radius-25 mm circular interaction area, linear loss.
def balloon_spec(cross_section: CrossSection | None = None) -> ActuatorSpec:
    from .geometry import Circle

    return ActuatorSpec(
        cross_section=cross_section if cross_section is not None else Circle(25.0),
        loss_model=BALLOON_LOSS,
        max_pressure_kpa=60.0,
        allow_extrapolation=False,
    )


#: Molded actuator: rounded-rectangle interaction area, exponential loss.
def engineered_spec() -> ActuatorSpec:
    from .geometry import RoundedRectangle

    return ActuatorSpec(
        cross_section=RoundedRectangle(60.0, 40.0, 8.0),
        loss_model=ENGINEERED_LOSS,
        max_pressure_kpa=50.0,
    )


def predicted_force(pressure_kpa: float, spec: ActuatorSpec) -> float:
    """Model force in newtons: ideal_force * (1 - loss)."""
    if pressure_kpa > spec.max_pressure_kpa:
        raise OverPressureError(
            f"pressure {pressure_kpa} kPa exceeds actuator max {spec.max_pressure_kpa} kPa"
        )
    ideal = ideal_force(pressure_kpa, spec.cross_section, safety_cap_kpa=spec.max_pressure_kpa)
    return ideal * (1.0 - loss_fraction(pressure_kpa, spec.loss_model).fraction)


def loss_from_measurement(
    pressure_kpa: float, cs: CrossSection, measured_force_n: float
) -> float:
    """Back-calculate the loss fraction from a measured force.

    The result is deliberately not clamped: a measurement above the ideal
    force yields a negative loss, which flags bad data instead of hiding it.
    """
    if pressure_kpa <= 0.0:
        raise ZeroPressureError("loss is undefined at zero pressure")
    if measured_force_n < 0.0:
        raise ValueError(f"measured force must be >= 0, got {measured_force_n!r}")
    return 1.0 - measured_force_n / ideal_force(pressure_kpa, cs, safety_cap_kpa=math.inf)
