"""Command-line interface.

Subcommands:
  geometry   equal-area cross-section family table
  predict    force table for an actuator spec over a pressure list
  generate   deterministic synthetic sweep dataset (CSV)
  fit        validate a sweep CSV, fit the linear loss model, emit reports
  simulate   run the six-actuator brace over gait cycles

Exit codes: 0 success, 1 usage error, 2 data/validation error. All CSV
numbers are written with 4 decimal places so repeated runs are
byte-comparable.
"""

from __future__ import annotations

import argparse
import os
import sys

from . import brace, configio, rig, sweep
from .geometry import CrossSection, DimensionError, area, equal_area_family, ideal_force
from .loss import (
    ActuatorSpec,
    OverPressureError,
    balloon_spec,
    loss_fraction,
    predicted_force,
)
from .svgchart import line_chart_svg

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad flags; the CLI contract reserves 2 for
    # data errors, so remap to a catchable exception.
    def error(self, message: str) -> None:  # type: ignore[override]
        raise _UsageError(message)


def _fmt(x: float) -> str:
    return f"{x:.4f}"


def _shape_label(cs: CrossSection) -> str:
    d = configio.cross_section_to_dict(cs)
    kind = d.pop("kind")
    dims = ", ".join(f"{k}={v:.4f}" for k, v in d.items())
    return f"{kind}({dims})"


def _write(path: str, content: str) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(content)


def _out_path(out_dir: str, name: str) -> str:
    os.makedirs(out_dir, exist_ok=True)
    return os.path.join(out_dir, name)


# --- subcommands -----------------------------------------------------------


def cmd_geometry(args: argparse.Namespace) -> int:
    if args.aspect < 1.0:
        print(f"error: --aspect must be >= 1, got {args.aspect}", file=sys.stderr)
        return EXIT_USAGE
    if args.radius <= 0.0:
        print(f"error: --radius must be > 0, got {args.radius}", file=sys.stderr)
        return EXIT_USAGE
    family = equal_area_family(args.radius, args.aspect)
    lines = ["shape,area_mm2"]
    for cs in family:
        lines.append(f'"{_shape_label(cs)}",{_fmt(area(cs))}')
    table = "\n".join(lines) + "\n"
    print(table, end="")
    if args.out:
        _write(_out_path(args.out, "geometry.csv"), table)
    return EXIT_OK


def _parse_pressures(text: str) -> list[float]:
    try:
        return [float(tok) for tok in text.split(",") if tok.strip()]
    except ValueError as exc:
        raise _UsageError(f"bad --pressures value: {exc}") from exc


def cmd_predict(args: argparse.Namespace) -> int:
    spec = configio.load_actuator_spec(args.spec) if args.spec else balloon_spec()
    pressures = _parse_pressures(args.pressures)
    lines = ["pressure_kpa,ideal_force_n,predicted_force_n,loss_fraction,extrapolated"]
    for p in pressures:
        ideal = ideal_force(p, spec.cross_section, safety_cap_kpa=spec.max_pressure_kpa)
        lv = loss_fraction(p, spec.loss_model)
        force = predicted_force(p, spec)
        lines.append(f"{_fmt(p)},{_fmt(ideal)},{_fmt(force)},{_fmt(lv.fraction)},{int(lv.extrapolated)}")
    table = "\n".join(lines) + "\n"
    print(table, end="")
    if args.out:
        _write(_out_path(args.out, "predict.csv"), table)
    return EXIT_OK


def _balloon_ground_truth() -> dict[str, ActuatorSpec]:
    family = equal_area_family(25.0, 2.0)
    names = ["circle", "triangle", "square", "rectangle"]
    return {name: balloon_spec(cs) for name, cs in zip(names, family)}


def cmd_generate(args: argparse.Namespace) -> int:
    protocol = sweep.SweepProtocol(trials=args.trials)
    ground_truth = _balloon_ground_truth()
    sigma = (
        args.noise_sigma
        if args.noise_sigma is not None
        else rig.default_noise_sigma_n(ground_truth, protocol)
    )
    cfg = rig.RigConfig(
        ground_truth=ground_truth,
        protocol=protocol,
        noise_sigma_n=sigma,
        seed=args.seed,
    )
    csv_text = rig.generate_sweep_csv(cfg)
    out = _out_path(args.out, "measurements.csv")
    _write(out, csv_text)
    print(f"wrote {out}")
    return EXIT_OK


def cmd_fit(args: argparse.Namespace) -> int:
    try:
        with open(args.input, encoding="utf-8") as fh:
            ds = sweep.read_measurements_csv(fh.read())
        shapes = (
            configio.load_shapes(args.shapes)
            if args.shapes
            else {
                name: cs
                for name, cs in zip(
                    ["circle", "triangle", "square", "rectangle"], equal_area_family(25.0, 2.0)
                )
            }
        )
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    violations = sweep.validate_sweep(ds, sweep.SweepProtocol(trials=args.trials))
    if violations:
        for v in violations:
            print(f"protocol violation: {v}", file=sys.stderr)
        return EXIT_DATA
    try:
        window = (args.window[0], args.window[1])
        series = sweep.compute_loss_series(ds, shapes)
        fit_lines = ["shape_id,window_min_kpa,window_max_kpa,slope_per_kpa,intercept,r_squared"]
        reports = {}
        for shape_id in sorted(series):
            rep = sweep.fit_linear_loss(series[shape_id], window)
            reports[shape_id] = rep
            fit_lines.append(
                f"{shape_id},{_fmt(window[0])},{_fmt(window[1])},"
                f"{rep.slope_per_kpa:.6f},{rep.intercept:.6f},{_fmt(rep.r_squared)}"
            )
        fit_csv = "\n".join(fit_lines) + "\n"
    except (sweep.FitError, sweep.UnknownShapeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    print(fit_csv, end="")
    if args.format in ("csv", "both"):
        _write(_out_path(args.out, "fit_report.csv"), fit_csv)
        # comparison table against the pooled fit of the first shape id
        pooled = sweep.fit_linear_loss(
            [pt for s in series.values() for pt in s], window
        ).as_model()
        _write(
            _out_path(args.out, "comparison.csv"),
            sweep.write_report_csv(sweep.comparison_report(ds, shapes, pooled)),
        )
    if args.format in ("svg", "both"):
        _write(
            _out_path(args.out, "loss_vs_pressure.svg"),
            line_chart_svg(
                {sid: series[sid] for sid in sorted(series)},
                "Force loss vs supply pressure",
                "pressure (kPa)",
                "loss fraction",
            ),
        )
    return EXIT_OK


def cmd_simulate(args: argparse.Namespace) -> int:
    try:
        layout = configio.load_layout(args.layout) if args.layout else brace.default_layout()
        schedule = (
            configio.load_schedule(args.schedule)
            if args.schedule
            else brace.default_valgus_schedule()
        )
    except (OSError, configio.ConfigError, brace.LayoutError, brace.ScheduleError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    try:
        schedule.validate_against(layout)
    except brace.ScheduleError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    try:
        trace = brace.run_gait_cycle(
            layout, schedule, args.duration, args.dt, tau_s=args.tau, n_cycles=args.cycles
        )
    except (brace.ScheduleError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    csv_text = brace.write_trace_csv(trace)
    if args.format in ("csv", "both"):
        _write(_out_path(args.out, "trace.csv"), csv_text)
    if args.format in ("svg", "both"):
        force_series = {
            aid: [(s.t_s, s.force_n[aid]) for s in trace.steps] for aid in trace.actuator_ids
        }
        _write(
            _out_path(args.out, "trace.svg"),
            line_chart_svg(
                force_series, "Actuator forces over the gait cycle", "time (s)", "force (N)"
            ),
        )
    if trace.steps:
        last = trace.steps[-1]
        print(f"steps: {len(trace.steps)}")
        print(f"final moment_nm: {_fmt(last.moment_nm)}")
        print(f"final net_force_n: {_fmt(last.net_force_n)}")
    return EXIT_OK


# --- parser ----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="shellact", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("geometry", help="equal-area cross-section family")
    g.add_argument("--radius", type=float, required=True, help="reference circle radius (mm)")
    g.add_argument("--aspect", type=float, default=2.0, help="rectangle width/height (>= 1)")
    g.add_argument("--out", default=None, help="also write geometry.csv here")
    g.set_defaults(func=cmd_geometry)

    p = sub.add_parser("predict", help="force table for an actuator spec")
    p.add_argument("--spec", default=None, help="actuator spec YAML (default: balloon)")
    p.add_argument("--pressures", required=True, help="comma-separated kPa values")
    p.add_argument("--out", default=None, help="also write predict.csv here")
    p.set_defaults(func=cmd_predict)

    gen = sub.add_parser("generate", help="synthetic sweep dataset")
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--trials", type=int, default=3)
    gen.add_argument("--noise-sigma", type=float, default=None, help="force noise std dev (N)")
    gen.add_argument("--out", required=True, help="output directory")
    gen.set_defaults(func=cmd_generate)

    f = sub.add_parser("fit", help="fit the linear loss model to a sweep CSV")
    f.add_argument("--input", required=True, help="measurement CSV")
    f.add_argument("--shapes", default=None, help="shapes YAML (default: balloon family)")
    f.add_argument("--window", type=float, nargs=2, default=[30.0, 60.0], metavar=("LO", "HI"))
    f.add_argument("--trials", type=int, default=3, help="expected trials per step")
    f.add_argument("--out", required=True, help="output directory")
    f.add_argument("--format", choices=["csv", "svg", "both"], default="both")
    f.set_defaults(func=cmd_fit)

    s = sub.add_parser("simulate", help="six-actuator brace gait simulation")
    s.add_argument("--layout", default=None, help="layout YAML (default: built-in brace)")
    s.add_argument("--schedule", default=None, help="schedule YAML (default: valgus example)")
    s.add_argument("--duration", type=float, default=1.2, help="gait cycle duration (s)")
    s.add_argument("--dt", type=float, default=0.01, help="time step (s)")
    s.add_argument("--tau", type=float, default=0.2, help="pressure lag time constant (s)")
    s.add_argument("--cycles", type=int, default=1)
    s.add_argument("--out", required=True, help="output directory")
    s.add_argument("--format", choices=["csv", "svg", "both"], default="both")
    s.set_defaults(func=cmd_simulate)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DimensionError, OverPressureError, configio.ConfigError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
