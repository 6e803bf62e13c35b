"""Command line interface.

Subcommands: run, sweep, certify, compare. Exit codes: 0 success, 2 usage
error, 3 validation or parse failure, 4 numerical blow-up, 5 I/O failure.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from dataclasses import replace
from typing import Dict, List, Optional, Tuple

from .errors import (
    CertificateMismatch,
    DegenerateGamma,
    DegenerateStart,
    InitialCollision,
    InvalidGeometry,
    InvalidSpeedRatio,
    NonFiniteState,
    ParseError,
    ValidationError,
    ZeroBaseline,
    ZeroVector,
)
from .gain_design import GainCertificate, design_certificate
from .guidance import MCPG, PPNG, Exact, stability_step_cap
from .metrics import check_envelope, compute_metrics
from .scenario_io import (
    KNOWN_KEYS,
    TERMINATION_CAPTURE,
    TERMINATION_NON_FINITE,
    ScenarioConfig,
    TrajectoryRecord,
    emit_figure_svg,
    emit_overlay_svg,
    initial_range,
    initial_state,
    parse_scenario_with_overrides,
    scaled_law,
    with_law,
    write_summary_json,
    write_trajectory_csv,
)
from .simulation import simulate

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_VALIDATION = 3
EXIT_NUMERICAL = 4
EXIT_IO = 5

#: Gamma level marking the end of the transient for sweep peak measurement.
SWEEP_TRANSIENT_GAMMA = -0.9
SWEEP_SETTLE_FRACTION = 0.05

#: Epsilon target used by the certify subcommand.
DEFAULT_EPSILON_TARGET = 0.01

_VALIDATION_ERRORS = (
    ParseError,
    ValidationError,
    InvalidSpeedRatio,
    DegenerateStart,
    InvalidGeometry,
    CertificateMismatch,
    DegenerateGamma,
    InitialCollision,
    ZeroVector,
    ZeroBaseline,
)


class _UsageError(Exception):
    pass


def _f17(v: float) -> str:
    return f"{v:.17g}"


def _overrides(args) -> Dict[str, str]:
    out: Dict[str, str] = {}
    for item in args.set or []:
        if "=" not in item:
            raise _UsageError(f"--set expects key=value, got {item!r}")
        key, value = item.split("=", 1)
        key = key.strip()
        if key not in KNOWN_KEYS:
            raise _UsageError(f"--set: unknown scenario key {key!r}")
        out[key] = value.strip()
    return out


def _load_scenario(args) -> ScenarioConfig:
    with open(args.scenario, "r", encoding="utf-8") as f:
        text = f.read()
    return parse_scenario_with_overrides(text, _overrides(args))


def _open_out(outdir: str, name: str):
    os.makedirs(outdir, exist_ok=True)
    return open(os.path.join(outdir, name), "w", encoding="utf-8", newline="\n")


def _write_outputs(
    record: TrajectoryRecord,
    outdir: str,
    figure: bool,
    cert: Optional[GainCertificate] = None,
    envelope_ok: Optional[bool] = None,
) -> None:
    with _open_out(outdir, "trajectory.csv") as f:
        write_trajectory_csv(record, f)
    with _open_out(outdir, "summary.json") as f:
        write_summary_json(record, f, cert=cert, envelope_ok=envelope_ok)
    if figure:
        with _open_out(outdir, "figure.svg") as f:
            emit_figure_svg(record, f)


def _run_exit(records: List[TrajectoryRecord]) -> int:
    if any(r.termination == TERMINATION_NON_FINITE for r in records):
        return EXIT_NUMERICAL
    return EXIT_OK


def _cmd_run(args) -> int:
    config = _load_scenario(args)
    record = simulate(config)
    _write_outputs(record, args.out, args.figure)
    print(
        f"run: termination={record.termination} samples={record.n_samples} "
        f"final_gamma={_f17(record.gamma[-1]) if record.gamma else 'n/a'} out={args.out}"
    )
    return _run_exit([record])


def _post_transient_peak(gamma: List[float]) -> Optional[float]:
    """Largest gamma + 1 once the run has settled.

    The transient is taken as over when gamma first closes 95 percent of the
    gap between its starting value and the deepest value it ever reaches, so
    the measurement scales with the run instead of a fixed threshold. A run
    that never gets below the sweep threshold reports None.
    """
    floor = min(gamma)
    if floor > SWEEP_TRANSIENT_GAMMA:
        return None
    settle = floor + SWEEP_SETTLE_FRACTION * (gamma[0] - floor)
    for i, g in enumerate(gamma):
        if g <= settle:
            return max(gamma[i:]) + 1.0
    return None


def _gain_of(law) -> float:
    return law.N if isinstance(law, PPNG) else law.mu


def _parse_gains(spec: str) -> List[float]:
    parts = [p.strip() for p in spec.split(",")]
    if not parts or any(not p for p in parts):
        raise _UsageError(f"--gains expects comma-separated multipliers, got {spec!r}")
    try:
        vals = [float(p) for p in parts]
    except ValueError:
        raise _UsageError(f"--gains expects comma-separated multipliers, got {spec!r}") from None
    for v in vals:
        if not (math.isfinite(v) and v > 0.0):
            raise _UsageError(f"--gains multipliers must be finite and positive, got {v}")
    return vals


def _cmd_sweep(args) -> int:
    config = _load_scenario(args)
    multipliers = _parse_gains(args.gains)
    records: List[TrajectoryRecord] = []
    rows: List[str] = ["multiplier,gain,peak_gamma_excess,ratio_vs_prev"]
    prev_peak: Optional[float] = None
    for m in multipliers:
        cfg = with_law(config, scaled_law(config.pursuer_law, m))
        record = simulate(cfg)
        records.append(record)
        _write_outputs(record, os.path.join(args.out, f"gain_x{m:g}"), args.figure)
        peak = _post_transient_peak(record.gamma)
        ratio = None
        if prev_peak is not None and peak is not None and peak > 0.0:
            ratio = prev_peak / peak
        rows.append(
            ",".join(
                (
                    _f17(m),
                    _f17(_gain_of(cfg.pursuer_law)),
                    _f17(peak) if peak is not None else "",
                    _f17(ratio) if ratio is not None else "",
                )
            )
        )
        prev_peak = peak
    with _open_out(args.out, "sweep.csv") as f:
        f.write("\n".join(rows) + "\n")
    print(f"sweep: {len(multipliers)} runs out={args.out}")
    return _run_exit(records)


def _certificate_dict(cert: GainCertificate) -> dict:
    return {
        "nu": cert.nu,
        "u_e_max": cert.u_e_max,
        "gamma0": cert.gamma0,
        "r_init": cert.r_init,
        "r0": cert.r0,
        "epsilon": cert.epsilon,
        "c1": cert.c1,
        "c2": cert.c2,
        "mu": cert.mu,
        "T": cert.T,
        "met_at_start": cert.met_at_start,
    }


def _cmd_certify(args) -> int:
    config = _load_scenario(args)
    if not isinstance(config.pursuer_law, MCPG):
        raise ValidationError("certify requires pursuer_law.variant = mcpg")
    sample = compute_metrics(initial_state(config), config.nu)
    cert = design_certificate(
        nu=config.nu,
        u_e_max=config.evader_program.max_abs_control(),
        gamma0=sample.gamma,
        r_init=sample.baseline_len,
        epsilon_target=DEFAULT_EPSILON_TARGET,
        r0_choice=args.r0,
    )
    payload: dict = {"schema": 1, "certificate": _certificate_dict(cert)}
    records: List[TrajectoryRecord] = []
    if args.verify:
        law = MCPG(cert.mu)
        cap = stability_step_cap(law, config.nu, config.capture_radius)
        step = min(config.step_size, cap)
        sample_interval = step * config.sample_stride
        cfg = replace(
            config,
            pursuer_law=law,
            step_size=step,
            t_max=1.02 * cert.T + sample_interval,
        )
        record = simulate(cfg)
        records.append(record)
        threshold = -1.0 + cert.epsilon
        t1 = next(
            (record.t[i] for i in range(record.n_samples) if record.gamma[i] <= threshold),
            None,
        )
        captured_aligned = (
            record.termination == TERMINATION_CAPTURE
            and record.n_samples > 0
            and record.gamma[-1] <= -1.0 + math.sqrt(cert.epsilon)
        )
        achieved = (t1 is not None and t1 <= cert.T) or captured_aligned
        envelope_ok = check_envelope(record, cert)
        payload["verification"] = {
            "achieved": achieved,
            "t1": t1,
            "T": cert.T,
            "termination": record.termination,
            "final_gamma": record.gamma[-1] if record.gamma else None,
            "envelope_ok": envelope_ok,
            "step_size": step,
        }
        _write_outputs(record, args.out, args.figure, cert=cert, envelope_ok=envelope_ok)
    with _open_out(args.out, "certificate.json") as f:
        json.dump(payload, f, indent=2, sort_keys=True)
        f.write("\n")
    print(
        f"certify: mu={_f17(cert.mu)} T={_f17(cert.T)} epsilon={_f17(cert.epsilon)} "
        f"out={args.out}"
    )
    return _run_exit(records)


def _cmd_compare(args) -> int:
    config = _load_scenario(args)
    base = config.pursuer_law
    if not isinstance(base, (MCPG, Exact)):
        raise ValidationError("compare requires an mcpg or exact scenario to supply mu")
    mu = base.mu
    r_init = initial_range(config)
    r0 = args.r0 if args.r0 is not None else r_init / 100.0
    if not (math.isfinite(r0) and 0.0 < r0 < r_init):
        raise ValidationError(f"--r0 must lie strictly between 0 and the initial range: {r0}")
    laws: List[Tuple[str, object]] = [
        ("mcpg", MCPG(mu)),
        ("exact", Exact(mu)),
        ("ppng", PPNG(mu * r0)),
    ]
    records: List[TrajectoryRecord] = []
    names: List[str] = []
    rows = ["law,step_size,termination,capture_time,final_gamma,peak_residual,peak_abs_u_p"]
    for name, law in laws:
        cap = stability_step_cap(law, config.nu, config.capture_radius)
        cfg = replace(config, pursuer_law=law, step_size=min(config.step_size, cap))
        record = simulate(cfg)
        records.append(record)
        names.append(name)
        _write_outputs(record, os.path.join(args.out, name), args.figure)
        rows.append(
            ",".join(
                (
                    name,
                    _f17(cfg.step_size),
                    record.termination,
                    _f17(record.capture_time) if record.capture_time is not None else "",
                    _f17(record.gamma[-1]) if record.gamma else "",
                    _f17(max(record.residual)) if record.residual else "",
                    _f17(max(abs(v) for v in record.u_p)) if record.u_p else "",
                )
            )
        )
    with _open_out(args.out, "comparison.csv") as f:
        f.write("\n".join(rows) + "\n")
    with _open_out(args.out, "overlay.svg") as f:
        emit_overlay_svg(records, names, f)
    print(f"compare: mu={_f17(mu)} ppng_gain={_f17(mu * r0)} out={args.out}")
    return _run_exit(records)


def _add_common(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--scenario", required=True, help="path to a scenario file")
    sub.add_argument("--out", default=".", help="output directory (default: current)")
    sub.add_argument(
        "--set",
        action="append",
        metavar="KEY=VALUE",
        help="override a scenario key; repeatable",
    )


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mcpursuit",
        description="Planar pursuit simulation with motion-camouflage feedback laws",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    p_run = subs.add_parser("run", help="simulate one scenario")
    _add_common(p_run)
    p_run.add_argument("--figure", action="store_true", help="also write figure.svg")
    p_run.set_defaults(func=_cmd_run)

    p_sweep = subs.add_parser("sweep", help="rerun a scenario across gain multipliers")
    _add_common(p_sweep)
    p_sweep.add_argument(
        "--gains", required=True, help="comma-separated gain multipliers, e.g. 1,3,9"
    )
    p_sweep.add_argument("--figure", action="store_true", help="also write per-run figures")
    p_sweep.set_defaults(func=_cmd_sweep)

    p_cert = subs.add_parser("certify", help="design a certified gain for a scenario")
    _add_common(p_cert)
    p_cert.add_argument("--r0", type=float, help="standoff range (default: r_init / 100)")
    p_cert.add_argument(
        "--verify",
        action="store_true",
        help="rerun the scenario at the certified gain and check the envelope",
    )
    p_cert.add_argument("--figure", action="store_true", help="with --verify, write figure.svg")
    p_cert.set_defaults(func=_cmd_certify)

    p_cmp = subs.add_parser("compare", help="run the guidance law family side by side")
    _add_common(p_cmp)
    p_cmp.add_argument("--r0", type=float, help="standoff used for the ppng gain")
    p_cmp.add_argument("--figure", action="store_true", help="also write per-law figures")
    p_cmp.set_defaults(func=_cmd_compare)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return args.func(args)
    except _UsageError as exc:
        print(f"mcpursuit: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except _VALIDATION_ERRORS as exc:
        print(f"mcpursuit: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except NonFiniteState as exc:
        print(f"mcpursuit: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except OSError as exc:
        print(f"mcpursuit: {exc}", file=sys.stderr)
        return EXIT_IO


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
