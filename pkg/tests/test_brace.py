import math

import numpy as np
import pytest

from shellact.brace import (
    ActuatorPlacement,
    BraceLayout,
    ForceDirection,
    GaitPhase,
    GaitSchedule,
    LayoutError,
    ScheduleError,
    Side,
    Site,
    corrective_moment,
    default_layout,
    default_valgus_schedule,
    run_gait_cycle,
    step_pressure,
    write_trace_csv,
)


def zero_forces(layout):
    return {a.actuator_id: 0.0 for a in layout.actuators}


def mirrored(layout):
    """Swap medial/lateral sides and flip each push direction."""
    flipped = []
    for a in layout.actuators:
        flipped.append(
            ActuatorPlacement(
                actuator_id=a.actuator_id,
                site=a.site,
                side=Side.LATERAL if a.side is Side.MEDIAL else Side.MEDIAL,
                spec=a.spec,
                lever_arm_m=a.lever_arm_m,
                direction=(
                    ForceDirection.LATERAL_TO_MEDIAL
                    if a.direction is ForceDirection.MEDIAL_TO_LATERAL
                    else ForceDirection.MEDIAL_TO_LATERAL
                ),
            )
        )
    return BraceLayout(tuple(flipped))


class TestLayout:
    def test_default_layout_valid(self):
        layout = default_layout()
        assert len(layout.actuators) == 6
        assert {(a.site, a.side) for a in layout.actuators} == {
            (site, side) for site in Site for side in Side
        }

    def test_wrong_count_rejected(self):
        with pytest.raises(LayoutError):
            BraceLayout(default_layout().actuators[:5])

    def test_duplicate_slot_rejected(self):
        a = default_layout().actuators
        dup = a[:5] + (
            ActuatorPlacement("extra", a[0].site, a[0].side, a[0].spec, 0.1, a[0].direction),
        )
        with pytest.raises(LayoutError):
            BraceLayout(dup)


class TestCorrectiveMoment:
    def test_three_force_valgus_example(self):
        # 100 N at the knee opposed by two 50 N side pushes 0.15 m away
        layout = default_layout()
        forces = zero_forces(layout)
        forces["knee_lateral"] = 100.0
        forces["thigh_medial"] = 50.0
        forces["shank_medial"] = 50.0
        net, moment = corrective_moment(layout, forces)
        assert net == 0.0
        assert moment == 15.0

    def test_all_zero(self):
        layout = default_layout()
        assert corrective_moment(layout, zero_forces(layout)) == (0.0, 0.0)

    def test_mirroring_negates_moment(self):
        layout = default_layout()
        forces = zero_forces(layout)
        forces["knee_lateral"] = 80.0
        forces["thigh_medial"] = 30.0
        forces["shank_lateral"] = 20.0
        net, moment = corrective_moment(layout, forces)
        mnet, mmoment = corrective_moment(mirrored(layout), forces)
        assert mnet == pytest.approx(-net)
        assert mmoment == pytest.approx(-moment)

    def test_bilinearity(self):
        layout = default_layout()
        rng = np.random.default_rng(11)
        forces = {a.actuator_id: float(rng.uniform(0, 100)) for a in layout.actuators}
        net, moment = corrective_moment(layout, forces)
        net2, moment2 = corrective_moment(
            layout, {k: 2.5 * v for k, v in forces.items()}
        )
        assert net2 == pytest.approx(2.5 * net)
        assert moment2 == pytest.approx(2.5 * moment)
        # additivity over singleton force sets
        parts = []
        for aid in forces:
            single = zero_forces(layout)
            single[aid] = forces[aid]
            parts.append(corrective_moment(layout, single))
        assert sum(m for _, m in parts) == pytest.approx(moment)
        assert sum(n for n, _ in parts) == pytest.approx(net)

    def test_against_resummation_oracle(self):
        # independent recomputation of the signed sums on random configurations
        layout = default_layout()
        placements = layout.by_id()
        rng = np.random.default_rng(2024)
        for _ in range(1000):
            forces = {aid: float(rng.uniform(0.0, 120.0)) for aid in placements}
            net, moment = corrective_moment(layout, forces)
            oracle_net = math.fsum(
                placements[aid].direction.value * f for aid, f in forces.items()
            )
            oracle_moment = math.fsum(
                (-1.0 if placements[aid].site is Site.SHANK else 1.0)
                * placements[aid].direction.value
                * f
                * placements[aid].lever_arm_m
                for aid, f in forces.items()
            )
            assert abs(net - oracle_net) < 1e-12
            assert abs(moment - oracle_moment) < 1e-12

    def test_missing_force_rejected(self):
        layout = default_layout()
        forces = zero_forces(layout)
        del forces["knee_medial"]
        with pytest.raises(ScheduleError):
            corrective_moment(layout, forces)

    def test_negative_force_rejected(self):
        layout = default_layout()
        forces = zero_forces(layout)
        forces["knee_medial"] = -1.0
        with pytest.raises(ValueError):
            corrective_moment(layout, forces)


class TestStepPressure:
    def test_analytic_value(self):
        assert step_pressure(0.0, 50.0, 0.2, 0.2) == pytest.approx(50.0 * (1 - math.exp(-1)))
        assert step_pressure(0.0, 50.0, 0.2, 0.2) == pytest.approx(31.61, abs=0.01)

    def test_fixed_point(self):
        assert step_pressure(50.0, 50.0, 0.01, 0.2) == 50.0

    def test_never_overshoots(self):
        p = 0.0
        for _ in range(500):
            p = step_pressure(p, 50.0, 0.05, 0.2)
            assert p <= 50.0
        assert p == pytest.approx(50.0, abs=1e-9)

    def test_gap_non_increasing(self):
        p, prev_gap = 10.0, None
        for _ in range(100):
            p = step_pressure(p, 45.0, 0.02, 0.2)
            gap = abs(45.0 - p)
            if prev_gap is not None:
                assert gap <= prev_gap
            prev_gap = gap

    def test_bad_args(self):
        with pytest.raises(ValueError):
            step_pressure(0.0, 50.0, 0.0, 0.2)
        with pytest.raises(ValueError):
            step_pressure(0.0, 50.0, 0.1, -0.2)


class TestSchedule:
    def test_fractions_must_sum_to_one(self):
        with pytest.raises(ScheduleError):
            GaitSchedule((GaitPhase("a", 0.5, {}), GaitPhase("b", 0.4, {})))

    def test_over_cap_command_rejected_at_validation(self):
        layout = default_layout()  # engineered spec, max 50 kPa
        schedule = GaitSchedule((GaitPhase("hold", 1.0, {"knee_medial": 55.0}),))
        with pytest.raises(ScheduleError):
            schedule.validate_against(layout)

    def test_unknown_actuator_rejected(self):
        schedule = GaitSchedule((GaitPhase("hold", 1.0, {"nope": 10.0}),))
        with pytest.raises(ScheduleError):
            schedule.validate_against(default_layout())

    def test_phase_lookup_at_exact_boundaries(self):
        schedule = default_valgus_schedule()
        assert schedule.phase_at(0.0).name == "heel_strike"
        assert schedule.phase_at(0.1).name == "mid_stance"
        assert schedule.phase_at(0.4).name == "toe_off"
        assert schedule.phase_at(0.6).name == "swing"
        assert schedule.phase_at(0.999).name == "swing"


class TestRunGaitCycle:
    def test_empty_schedule_gives_zero_trace(self):
        layout = default_layout()
        schedule = GaitSchedule((GaitPhase("idle", 1.0, {}),))
        trace = run_gait_cycle(layout, schedule, 1.0, 0.01)
        assert len(trace.steps) == 100
        for step in trace.steps:
            assert step.net_force_n == 0.0
            assert step.moment_nm == 0.0
            assert all(v == 0.0 for v in step.force_n.values())

    def test_steady_state_knee_pair_force(self):
        layout = default_layout()
        schedule = GaitSchedule(
            (GaitPhase("hold", 1.0, {"knee_medial": 50.0, "knee_lateral": 50.0}),)
        )
        tau = 0.2
        trace = run_gait_cycle(layout, schedule, 2.0, 0.01, tau_s=tau)  # 10 tau
        last = trace.steps[-1]
        assert last.force_n["knee_medial"] == pytest.approx(113.7, abs=1.0)
        assert last.force_n["knee_lateral"] == pytest.approx(113.7, abs=1.0)

    def test_moment_matches_recomputation_every_step(self):
        layout = default_layout()
        trace = run_gait_cycle(layout, default_valgus_schedule(), 1.2, 0.01)
        for step in trace.steps:
            net, moment = corrective_moment(layout, step.force_n)
            assert abs(step.moment_nm - moment) < 1e-12
            assert abs(step.net_force_n - net) < 1e-12

    def test_determinism(self):
        layout = default_layout()
        t1 = run_gait_cycle(layout, default_valgus_schedule(), 1.2, 0.01)
        t2 = run_gait_cycle(layout, default_valgus_schedule(), 1.2, 0.01)
        assert write_trace_csv(t1) == write_trace_csv(t2)

    def test_pressures_within_bounds(self):
        layout = default_layout()
        trace = run_gait_cycle(layout, default_valgus_schedule(), 1.2, 0.01)
        for step in trace.steps:
            for aid, actual in step.actual_kpa.items():
                assert 0.0 <= actual <= layout.by_id()[aid].spec.max_pressure_kpa

    def test_time_strictly_increasing(self):
        trace = run_gait_cycle(default_layout(), default_valgus_schedule(), 1.2, 0.01)
        ts = [s.t_s for s in trace.steps]
        assert all(b > a for a, b in zip(ts, ts[1:]))

    def test_dt_longer_than_shortest_phase_rejected(self):
        with pytest.raises(ScheduleError):
            run_gait_cycle(default_layout(), default_valgus_schedule(), 1.0, 0.2)

    def test_trace_csv_header(self):
        trace = run_gait_cycle(default_layout(), default_valgus_schedule(), 1.2, 0.01)
        assert write_trace_csv(trace).splitlines()[0] == (
            "t_s,actuator_id,commanded_kpa,actual_kpa,force_n,moment_nm"
        )
