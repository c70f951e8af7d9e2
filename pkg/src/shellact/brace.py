"""Six-actuator knee brace simulation.

The brace carries one actuator on each side (medial/lateral) of the thigh,
knee and shank. A gait schedule selects which actuators are pressurized
during each phase of the cycle; supply pressure follows a first-order lag
toward the commanded value, forces come from each actuator's loss model,
and the force system is reduced to a net medio-lateral force plus the
corrective varus/valgus moment about the knee.

Sign conventions:
- force direction medial->lateral is positive, lateral->medial negative;
- lever arms are signed distances along the leg axis from the knee joint
  (thigh positive, shank negative, knee ~0);
- the corrective moment is the relative bending moment between femur and
  tibia: thigh and knee contributions enter as signed_force * lever_arm,
  shank contributions with the opposite sign, so a classic three-point
  force system (two side pushes plus an opposing center push) corrects
  rather than cancels.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .loss import ActuatorSpec, predicted_force


class Site(Enum):
    THIGH = "thigh"
    KNEE = "knee"
    SHANK = "shank"


class Side(Enum):
    MEDIAL = "medial"
    LATERAL = "lateral"


class ForceDirection(Enum):
    MEDIAL_TO_LATERAL = 1
    LATERAL_TO_MEDIAL = -1


class LayoutError(ValueError):
    """Brace layout violates the one-actuator-per-(site, side) rule."""


class ScheduleError(ValueError):
    """Gait schedule is inconsistent with the layout or actuator limits."""


@dataclass(frozen=True)
class ActuatorPlacement:
    actuator_id: str
    site: Site
    side: Side
    spec: ActuatorSpec
    lever_arm_m: float
    direction: ForceDirection


@dataclass(frozen=True)
class BraceLayout:
    actuators: tuple[ActuatorPlacement, ...]

    def __post_init__(self) -> None:
        if len(self.actuators) != 6:
            raise LayoutError(f"a brace has exactly 6 actuators, got {len(self.actuators)}")
        slots = {(a.site, a.side) for a in self.actuators}
        if len(slots) != 6:
            raise LayoutError("each (site, side) slot must hold exactly one actuator")
        ids = {a.actuator_id for a in self.actuators}
        if len(ids) != 6:
            raise LayoutError("actuator ids must be unique")

    def by_id(self) -> dict[str, ActuatorPlacement]:
        return {a.actuator_id: a for a in self.actuators}


def corrective_moment(
    layout: BraceLayout, forces_n: dict[str, float]
) -> tuple[float, float]:
    """Net medio-lateral force (N) and corrective moment (N*m) about the knee.

    ``forces_n`` maps actuator id to force magnitude; inactive actuators
    must be present with 0.
    """
    placements = layout.by_id()
    missing = set(placements) - set(forces_n)
    if missing:
        raise ScheduleError(f"forces missing for actuators: {sorted(missing)}")
    net = 0.0
    moment = 0.0
    for actuator_id, placement in placements.items():
        f = forces_n[actuator_id]
        if f < 0.0:
            raise ValueError(f"force magnitudes must be >= 0, got {f} for {actuator_id!r}")
        signed = placement.direction.value * f
        net += signed
        segment = -1.0 if placement.site is Site.SHANK else 1.0
        moment += segment * signed * placement.lever_arm_m
    return net, moment


def step_pressure(actual_kpa: float, commanded_kpa: float, dt_s: float, tau_s: float) -> float:
    """Exact discrete step of the first-order supply-line lag; never overshoots."""
    if dt_s <= 0.0 or tau_s <= 0.0:
        raise ValueError("dt_s and tau_s must be > 0")
    return actual_kpa + (commanded_kpa - actual_kpa) * (1.0 - math.exp(-dt_s / tau_s))


@dataclass(frozen=True)
class GaitPhase:
    name: str
    fraction: float
    pressures_kpa: dict[str, float]  # active actuator id -> commanded pressure


@dataclass(frozen=True)
class GaitSchedule:
    phases: tuple[GaitPhase, ...]

    def __post_init__(self) -> None:
        if not self.phases:
            raise ScheduleError("schedule needs at least one phase")
        total = math.fsum(ph.fraction for ph in self.phases)
        if abs(total - 1.0) > 1e-9:
            raise ScheduleError(f"phase fractions must sum to 1, got {total}")
        for ph in self.phases:
            if ph.fraction <= 0.0:
                raise ScheduleError(f"phase {ph.name!r} has non-positive fraction")

    def validate_against(self, layout: BraceLayout) -> None:
        placements = layout.by_id()
        for ph in self.phases:
            for actuator_id, p in ph.pressures_kpa.items():
                if actuator_id not in placements:
                    raise ScheduleError(
                        f"phase {ph.name!r} commands unknown actuator {actuator_id!r}"
                    )
                cap = placements[actuator_id].spec.max_pressure_kpa
                if p < 0.0 or p > cap:
                    raise ScheduleError(
                        f"phase {ph.name!r} commands {p} kPa on {actuator_id!r}, "
                        f"outside [0, {cap}]"
                    )

    def phase_at(self, cycle_position: float) -> GaitPhase:
        """Phase active at a position in [0, 1); transitions at exact cumulative fractions."""
        pos = cycle_position % 1.0
        cumulative = 0.0
        for ph in self.phases:
            cumulative += ph.fraction
            if pos < cumulative - 1e-15:
                return ph
        return self.phases[-1]


@dataclass(frozen=True)
class TraceStep:
    t_s: float
    commanded_kpa: dict[str, float]
    actual_kpa: dict[str, float]
    force_n: dict[str, float]
    net_force_n: float
    moment_nm: float


@dataclass(frozen=True)
class SimulationTrace:
    steps: tuple[TraceStep, ...]
    actuator_ids: tuple[str, ...]


def run_gait_cycle(
    layout: BraceLayout,
    schedule: GaitSchedule,
    cycle_duration_s: float,
    dt_s: float,
    tau_s: float = 0.2,
    n_cycles: int = 1,
) -> SimulationTrace:
    """Simulate n gait cycles from a depressurized start.

    Deterministic: the trace is a pure function of the arguments.
    """
    if cycle_duration_s <= 0.0 or dt_s <= 0.0:
        raise ValueError("cycle_duration_s and dt_s must be > 0")
    shortest = min(ph.fraction for ph in schedule.phases) * cycle_duration_s
    if dt_s >= shortest:
        raise ScheduleError(
            f"dt {dt_s} s must be shorter than the shortest phase ({shortest:g} s)"
        )
    schedule.validate_against(layout)
    placements = layout.by_id()
    ids = tuple(sorted(placements))
    actual = {aid: 0.0 for aid in ids}
    steps = []
    n_steps = int(round(n_cycles * cycle_duration_s / dt_s))
    for k in range(1, n_steps + 1):
        t = k * dt_s
        # phase is held over the step interval [t - dt, t)
        phase = schedule.phase_at(((k - 1) * dt_s) / cycle_duration_s)
        commanded = {aid: phase.pressures_kpa.get(aid, 0.0) for aid in ids}
        actual = {
            aid: step_pressure(actual[aid], commanded[aid], dt_s, tau_s) for aid in ids
        }
        forces = {aid: predicted_force(actual[aid], placements[aid].spec) for aid in ids}
        net, moment = corrective_moment(layout, forces)
        steps.append(TraceStep(t, commanded, actual, forces, net, moment))
    return SimulationTrace(tuple(steps), ids)


def default_layout(spec: ActuatorSpec | None = None) -> BraceLayout:
    """Six molded actuators, one per (site, side), each pushing inward from its side.

    Lever arms: thigh +0.15 m, knee 0.0 m, shank -0.15 m.
    """
    from .loss import engineered_spec

    if spec is None:
        spec = engineered_spec()
    arms = {Site.THIGH: 0.15, Site.KNEE: 0.0, Site.SHANK: -0.15}
    placements = []
    for site in (Site.THIGH, Site.KNEE, Site.SHANK):
        for side in (Side.MEDIAL, Side.LATERAL):
            direction = (
                ForceDirection.MEDIAL_TO_LATERAL
                if side is Side.MEDIAL
                else ForceDirection.LATERAL_TO_MEDIAL
            )
            placements.append(
                ActuatorPlacement(
                    actuator_id=f"{site.value}_{side.value}",
                    site=site,
                    side=side,
                    spec=spec,
                    lever_arm_m=arms[site],
                    direction=direction,
                )
            )
    return BraceLayout(tuple(placements))


def default_valgus_schedule() -> GaitSchedule:
    """Illustrative valgus-correction schedule: a three-point force system
    (medial knee vs lateral thigh and shank) engaged through stance.
    """
    trio = ("knee_medial", "thigh_lateral", "shank_lateral")

    def at(p: float) -> dict[str, float]:
        return {aid: p for aid in trio}

    return GaitSchedule(
        (
            GaitPhase("heel_strike", 0.10, at(30.0)),
            GaitPhase("mid_stance", 0.30, at(50.0)),
            GaitPhase("toe_off", 0.20, at(40.0)),
            GaitPhase("swing", 0.40, {}),
        )
    )


TRACE_HEADER = ["t_s", "actuator_id", "commanded_kpa", "actual_kpa", "force_n", "moment_nm"]


def write_trace_csv(trace: SimulationTrace) -> str:
    """One row per (time step, actuator); moment repeats the step's value."""
    lines = [",".join(TRACE_HEADER)]
    for step in trace.steps:
        for aid in trace.actuator_ids:
            lines.append(
                f"{step.t_s:.4f},{aid},{step.commanded_kpa[aid]:.4f},"
                f"{step.actual_kpa[aid]:.4f},{step.force_n[aid]:.4f},{step.moment_nm:.4f}"
            )
    return "\n".join(lines) + "\n"
