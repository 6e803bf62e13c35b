"""Scenario files, trajectory records, and every on-disk format.

Scenario grammar: flat ``key = value`` lines. Blank lines and lines starting
with ``#`` are ignored; keys use dots to reach into sub-records; the value is
everything after the first ``=``, stripped. Example::

    label = crossing demo
    nu = 0.9
    pursuer_init.x = 100.0
    pursuer_init.y = 0.0
    pursuer_init.heading = 3.0
    evader_init.x = 0.0
    evader_init.y = 0.0
    evader_init.heading = 1.9
    pursuer_law.variant = mcpg
    pursuer_law.mu = 40.0
    evader_program.variant = sinusoid
    evader_program.amplitude = 0.2
    evader_program.angular_freq = 0.4
    evader_program.phase = 0.0
    step_size = 0.001
    t_max = 200.0
    capture_radius = 0.05
    sample_stride = 1

Law variants: ``mcpg`` and ``exact`` take ``pursuer_law.mu``; ``ppng`` takes
``pursuer_law.N``. Program variants: ``zero`` (default, no parameters),
``constant`` (``c``), ``sinusoid`` (``amplitude``, ``angular_freq``, optional
``phase``), ``piecewise_random`` (``seed``, ``dwell``, ``u_max``).

Defaults when a key is omitted: ``label`` empty, ``evader_program.variant``
zero, ``capture_radius`` 0.05, ``sample_stride`` 1, ``t_max`` twice the
initial range divided by (1 - nu), and ``step_size`` the stability cap
0.1/(g*(1+nu)) for the law's effective gain g (g = mu for mcpg/exact,
N/capture_radius for ppng).

Trajectory CSV columns, in order:
t,px,py,ptheta,ex,ey,etheta,u_p,u_e,r_norm,gamma,w,los_rate,residual
with every number printed to 17 significant digits so parsing the file back
recovers bit-identical doubles.

Summary files are JSON with ``"schema": 1``. Figures are self-contained
SVG 1.1: solid dark pursuer path, dashed dark evader path, light gray
baseline segments at evenly spaced sample indices, auto-fitted viewBox with
a 5 percent margin.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field, replace
from typing import Dict, Iterator, List, Optional, TextIO, Tuple

from .dynamics import EngagementState, ParticleState
from .errors import ParseError, ValidationError
from .geometry import PlanarVector
from .guidance import (
    MCPG,
    PPNG,
    Constant,
    EvaderProgram,
    Exact,
    PiecewiseRandom,
    PursuerLaw,
    Sinusoid,
    Zero,
    stability_step_cap,
)
from .metrics import MetricSample, metric_values

TERMINATION_CAPTURE = "capture"
TERMINATION_TIME_LIMIT = "time_limit"
TERMINATION_NON_FINITE = "non_finite"

CSV_COLUMNS = (
    "t", "px", "py", "ptheta", "ex", "ey", "etheta",
    "u_p", "u_e", "r_norm", "gamma", "w", "los_rate", "residual",
)

#: Relative tolerance applied to the stability cap so a step size computed as
#: exactly the cap is never rejected for a rounding hair.
_CAP_SLOP = 1e-9

KNOWN_KEYS = frozenset(
    {
        "label",
        "nu",
        "pursuer_init.x",
        "pursuer_init.y",
        "pursuer_init.heading",
        "evader_init.x",
        "evader_init.y",
        "evader_init.heading",
        "pursuer_law.variant",
        "pursuer_law.mu",
        "pursuer_law.N",
        "evader_program.variant",
        "evader_program.c",
        "evader_program.amplitude",
        "evader_program.angular_freq",
        "evader_program.phase",
        "evader_program.seed",
        "evader_program.dwell",
        "evader_program.u_max",
        "step_size",
        "t_max",
        "capture_radius",
        "sample_stride",
    }
)


@dataclass(frozen=True)
class ScenarioConfig:
    """Fully resolved description of one engagement run."""

    nu: float
    pursuer_init: ParticleState
    evader_init: ParticleState
    pursuer_law: PursuerLaw
    evader_program: EvaderProgram
    step_size: float
    t_max: float
    capture_radius: float
    sample_stride: int
    label: str = ""


def initial_state(config: ScenarioConfig) -> EngagementState:
    return EngagementState(pursuer=config.pursuer_init, evader=config.evader_init, time=0.0)


def initial_range(config: ScenarioConfig) -> float:
    dx = config.pursuer_init.position.x - config.evader_init.position.x
    dy = config.pursuer_init.position.y - config.evader_init.position.y
    return math.sqrt(dx * dx + dy * dy)


def build_scenario(
    nu: float,
    pursuer_init: ParticleState,
    evader_init: ParticleState,
    pursuer_law: PursuerLaw,
    evader_program: EvaderProgram = Zero(),
    step_size: Optional[float] = None,
    t_max: Optional[float] = None,
    capture_radius: float = 0.05,
    sample_stride: int = 1,
    label: str = "",
    validate: bool = True,
) -> ScenarioConfig:
    """Construct a ScenarioConfig, filling the documented defaults.

    step_size defaults to the stability cap for the law; t_max to twice the
    initial range over (1 - nu).
    """
    if step_size is None:
        step_size = stability_step_cap(pursuer_law, nu, capture_radius)
    if t_max is None:
        dx = pursuer_init.position.x - evader_init.position.x
        dy = pursuer_init.position.y - evader_init.position.y
        t_max = 2.0 * math.sqrt(dx * dx + dy * dy) / (1.0 - nu)
    config = ScenarioConfig(
        nu=nu,
        pursuer_init=pursuer_init,
        evader_init=evader_init,
        pursuer_law=pursuer_law,
        evader_program=evader_program,
        step_size=step_size,
        t_max=t_max,
        capture_radius=capture_radius,
        sample_stride=sample_stride,
        label=label,
    )
    if validate:
        validate_scenario(config)
    return config


def validate_scenario(config: ScenarioConfig) -> None:
    """Raise ValidationError naming the first violated invariant."""
    if not 0.0 <= config.nu < 1.0:
        raise ValidationError(f"nu out of [0, 1): {config.nu}")
    for name, p in (("pursuer_init", config.pursuer_init), ("evader_init", config.evader_init)):
        if not math.isfinite(p.heading):
            raise ValidationError(f"{name}.heading is not finite: {p.heading}")
    if not (math.isfinite(config.step_size) and config.step_size > 0.0):
        raise ValidationError(f"step_size must be finite and positive: {config.step_size}")
    if not (math.isfinite(config.t_max) and config.t_max >= 0.0):
        raise ValidationError(f"t_max must be finite and nonnegative: {config.t_max}")
    if not (math.isfinite(config.capture_radius) and config.capture_radius > 0.0):
        raise ValidationError(f"capture_radius must be finite and positive: {config.capture_radius}")
    if not (isinstance(config.sample_stride, int) and config.sample_stride >= 1):
        raise ValidationError(f"sample_stride must be an integer >= 1: {config.sample_stride}")
    if initial_range(config) == 0.0:
        raise ValidationError("coincident initial positions: the baseline has zero length")
    bound = config.evader_program.max_abs_control()
    if not math.isfinite(bound):
        raise ValidationError("evader program has an unbounded curvature declaration")
    cap = stability_step_cap(config.pursuer_law, config.nu, config.capture_radius)
    if config.step_size > cap * (1.0 + _CAP_SLOP):
        raise ValidationError(
            f"step size violates stability cap: step_size={config.step_size}, cap={cap}"
        )


# ---------------------------------------------------------------------------
# scenario text format


def _parse_entries(text: str) -> Dict[str, Tuple[str, int]]:
    entries: Dict[str, Tuple[str, int]] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ParseError(f"line {lineno}: expected 'key = value', got {raw!r}")
        key, value = line.split("=", 1)
        key = key.strip()
        if not key:
            raise ParseError(f"line {lineno}: empty key")
        if key not in KNOWN_KEYS:
            raise ParseError(f"line {lineno}: unknown key {key!r}")
        if key in entries:
            raise ParseError(f"line {lineno}: duplicate key {key!r}")
        entries[key] = (value.strip(), lineno)
    return entries


class _EntryReader:
    """Typed, consumed-key-tracking access to the raw key/value map."""

    def __init__(self, entries: Dict[str, Tuple[str, int]]):
        self.entries = entries
        self.used: set = set()

    def raw(self, key: str) -> Optional[str]:
        if key in self.entries:
            self.used.add(key)
            return self.entries[key][0]
        return None

    def _convert(self, key: str, kind, kindname: str):
        value, lineno = self.entries[key]
        self.used.add(key)
        try:
            return kind(value)
        except ValueError:
            where = f"line {lineno}: " if lineno > 0 else ""
            raise ParseError(f"{where}key {key!r}: expected {kindname}, got {value!r}") from None

    def number(self, key: str, default: Optional[float] = None) -> Optional[float]:
        if key not in self.entries:
            return default
        return self._convert(key, float, "a number")

    def integer(self, key: str, default: Optional[int] = None) -> Optional[int]:
        if key not in self.entries:
            return default
        return self._convert(key, int, "an integer")

    def require(self, key: str) -> float:
        if key not in self.entries:
            raise ValidationError(f"missing required key {key!r}")
        return self._convert(key, float, "a number")

    def unused(self):
        return sorted(set(self.entries) - self.used)


def _config_from_entries(entries: Dict[str, Tuple[str, int]]) -> ScenarioConfig:
    r = _EntryReader(entries)
    label = r.raw("label") or ""
    nu = r.require("nu")

    pursuer = ParticleState(
        PlanarVector(r.require("pursuer_init.x"), r.require("pursuer_init.y")),
        r.require("pursuer_init.heading"),
    )
    evader = ParticleState(
        PlanarVector(r.require("evader_init.x"), r.require("evader_init.y")),
        r.require("evader_init.heading"),
    )

    variant = r.raw("pursuer_law.variant")
    if variant is None:
        raise ValidationError("missing required key 'pursuer_law.variant'")
    try:
        if variant == "mcpg":
            law: PursuerLaw = MCPG(r.require("pursuer_law.mu"))
        elif variant == "exact":
            law = Exact(r.require("pursuer_law.mu"))
        elif variant == "ppng":
            law = PPNG(r.require("pursuer_law.N"))
        else:
            raise ValidationError(f"unknown pursuer_law.variant {variant!r}")
    except ValueError as exc:
        raise ValidationError(f"invalid pursuer law: {exc}") from exc

    pvariant = r.raw("evader_program.variant") or "zero"
    try:
        if pvariant == "zero":
            program: EvaderProgram = Zero()
        elif pvariant == "constant":
            program = Constant(r.require("evader_program.c"))
        elif pvariant == "sinusoid":
            program = Sinusoid(
                amplitude=r.require("evader_program.amplitude"),
                angular_freq=r.require("evader_program.angular_freq"),
                phase=r.number("evader_program.phase", 0.0),
            )
        elif pvariant == "piecewise_random":
            seed = r.integer("evader_program.seed")
            if seed is None:
                raise ValidationError("missing required key 'evader_program.seed'")
            program = PiecewiseRandom(
                seed=seed,
                dwell=r.require("evader_program.dwell"),
                u_max=r.require("evader_program.u_max"),
            )
        else:
            raise ValidationError(f"unknown evader_program.variant {pvariant!r}")
    except ValueError as exc:
        raise ValidationError(f"invalid evader program: {exc}") from exc

    step_size = r.number("step_size")
    t_max = r.number("t_max")
    capture_radius = r.number("capture_radius", 0.05)
    sample_stride = r.integer("sample_stride", 1)

    leftovers = r.unused()
    if leftovers:
        key = leftovers[0]
        lineno = entries[key][1]
        where = f"line {lineno}: " if lineno > 0 else ""
        raise ValidationError(f"{where}key {key!r} does not apply to the selected variants")

    if not 0.0 <= nu < 1.0:
        raise ValidationError(f"nu out of [0, 1): {nu}")
    return build_scenario(
        nu=nu,
        pursuer_init=pursuer,
        evader_init=evader,
        pursuer_law=law,
        evader_program=program,
        step_size=step_size,
        t_max=t_max,
        capture_radius=capture_radius,
        sample_stride=sample_stride,
        label=label,
    )


def parse_scenario(text: str) -> ScenarioConfig:
    """Parse scenario text, apply defaults, validate, and return the config."""
    return _config_from_entries(_parse_entries(text))


def parse_scenario_with_overrides(text: str, overrides: Dict[str, str]) -> ScenarioConfig:
    """Parse scenario text with key = value overrides applied on top.

    Override keys must be members of KNOWN_KEYS; callers are expected to check
    membership first so they can report unknown keys as usage errors.
    """
    entries = _parse_entries(text)
    for key, value in overrides.items():
        if key not in KNOWN_KEYS:
            raise ParseError(f"unknown override key {key!r}")
        entries[key] = (value, 0)
    return _config_from_entries(entries)


def _format_value(v) -> str:
    if isinstance(v, float):
        return repr(v)
    return str(v)


def write_scenario(config: ScenarioConfig) -> str:
    """Serialize a config to scenario text; parse_scenario inverts it exactly."""
    lines: List[str] = []
    if config.label:
        lines.append(f"label = {config.label}")
    lines.append(f"nu = {_format_value(config.nu)}")
    for prefix, p in (("pursuer_init", config.pursuer_init), ("evader_init", config.evader_init)):
        lines.append(f"{prefix}.x = {_format_value(p.position.x)}")
        lines.append(f"{prefix}.y = {_format_value(p.position.y)}")
        lines.append(f"{prefix}.heading = {_format_value(p.heading)}")
    law = config.pursuer_law
    if isinstance(law, MCPG):
        lines.append("pursuer_law.variant = mcpg")
        lines.append(f"pursuer_law.mu = {_format_value(law.mu)}")
    elif isinstance(law, Exact):
        lines.append("pursuer_law.variant = exact")
        lines.append(f"pursuer_law.mu = {_format_value(law.mu)}")
    elif isinstance(law, PPNG):
        lines.append("pursuer_law.variant = ppng")
        lines.append(f"pursuer_law.N = {_format_value(law.N)}")
    else:
        raise ValidationError(f"unknown pursuer law {law!r}")
    program = config.evader_program
    if isinstance(program, Zero):
        lines.append("evader_program.variant = zero")
    elif isinstance(program, Constant):
        lines.append("evader_program.variant = constant")
        lines.append(f"evader_program.c = {_format_value(program.c)}")
    elif isinstance(program, Sinusoid):
        lines.append("evader_program.variant = sinusoid")
        lines.append(f"evader_program.amplitude = {_format_value(program.amplitude)}")
        lines.append(f"evader_program.angular_freq = {_format_value(program.angular_freq)}")
        lines.append(f"evader_program.phase = {_format_value(program.phase)}")
    elif isinstance(program, PiecewiseRandom):
        lines.append("evader_program.variant = piecewise_random")
        lines.append(f"evader_program.seed = {program.seed}")
        lines.append(f"evader_program.dwell = {_format_value(program.dwell)}")
        lines.append(f"evader_program.u_max = {_format_value(program.u_max)}")
    else:
        raise ValidationError(f"unknown evader program {program!r}")
    lines.append(f"step_size = {_format_value(config.step_size)}")
    lines.append(f"t_max = {_format_value(config.t_max)}")
    lines.append(f"capture_radius = {_format_value(config.capture_radius)}")
    lines.append(f"sample_stride = {config.sample_stride}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# trajectory records


@dataclass
class TrajectoryRecord:
    """Columnar record of one simulation; one row per sample instant.

    Treated as immutable once the simulation returns it. Sample times are
    k * step_size * sample_stride for consecutive k starting at 0.
    """

    scenario: ScenarioConfig
    termination: str
    t: List[float] = field(default_factory=list)
    px: List[float] = field(default_factory=list)
    py: List[float] = field(default_factory=list)
    ptheta: List[float] = field(default_factory=list)
    ex: List[float] = field(default_factory=list)
    ey: List[float] = field(default_factory=list)
    etheta: List[float] = field(default_factory=list)
    u_p: List[float] = field(default_factory=list)
    u_e: List[float] = field(default_factory=list)
    r_norm: List[float] = field(default_factory=list)
    gamma: List[float] = field(default_factory=list)
    w: List[float] = field(default_factory=list)
    los_rate: List[float] = field(default_factory=list)
    residual: List[float] = field(default_factory=list)

    @property
    def n_samples(self) -> int:
        return len(self.t)

    @property
    def capture_time(self) -> Optional[float]:
        if self.termination == TERMINATION_CAPTURE and self.t:
            return self.t[-1]
        return None

    def state_at(self, i: int) -> EngagementState:
        return EngagementState(
            pursuer=ParticleState(PlanarVector(self.px[i], self.py[i]), self.ptheta[i]),
            evader=ParticleState(PlanarVector(self.ex[i], self.ey[i]), self.etheta[i]),
            time=self.t[i],
        )

    def metric_at(self, i: int) -> MetricSample:
        rx = self.px[i] - self.ex[i]
        ry = self.py[i] - self.ey[i]
        nu = self.scenario.nu
        drx = math.cos(self.ptheta[i]) - nu * math.cos(self.etheta[i])
        dry = math.sin(self.ptheta[i]) - nu * math.sin(self.etheta[i])
        rn, _, g, w, los, residual = metric_values(rx, ry, drx, dry)
        return MetricSample(
            baseline=PlanarVector(rx, ry),
            baseline_len=rn,
            rel_vel=PlanarVector(drx, dry),
            gamma=g,
            w_signed=w,
            los_rate=los,
            residual=residual,
        )

    def samples(self) -> Iterator[Tuple[float, ParticleState, ParticleState, float, float, MetricSample]]:
        for i in range(self.n_samples):
            s = self.state_at(i)
            yield self.t[i], s.pursuer, s.evader, self.u_p[i], self.u_e[i], self.metric_at(i)


def _f17(v: float) -> str:
    return f"{v:.17g}"


def write_trajectory_csv(record: TrajectoryRecord, sink: TextIO) -> None:
    """Write the record as CSV; numbers carry 17 significant digits."""
    sink.write(",".join(CSV_COLUMNS) + "\n")
    cols = (
        record.t, record.px, record.py, record.ptheta,
        record.ex, record.ey, record.etheta,
        record.u_p, record.u_e, record.r_norm,
        record.gamma, record.w, record.los_rate, record.residual,
    )
    for i in range(record.n_samples):
        sink.write(",".join(_f17(c[i]) for c in cols) + "\n")


def read_trajectory_csv(source: TextIO) -> Dict[str, List[float]]:
    """Parse a trajectory CSV back into columns keyed by the header names."""
    header = source.readline().rstrip("\n")
    names = tuple(header.split(","))
    if names != CSV_COLUMNS:
        raise ParseError(f"line 1: unexpected CSV header {header!r}")
    columns: Dict[str, List[float]] = {name: [] for name in names}
    for lineno, line in enumerate(source, start=2):
        line = line.rstrip("\n")
        if not line:
            continue
        cells = line.split(",")
        if len(cells) != len(names):
            raise ParseError(f"line {lineno}: expected {len(names)} cells, got {len(cells)}")
        try:
            for name, cell in zip(names, cells):
                columns[name].append(float(cell))
        except ValueError:
            raise ParseError(f"line {lineno}: non-numeric cell") from None
    return columns


# ---------------------------------------------------------------------------
# summary JSON


def summary_dict(record: TrajectoryRecord, cert=None, envelope_ok: Optional[bool] = None) -> dict:
    out: dict = {
        "schema": 1,
        "label": record.scenario.label,
        "termination": record.termination,
        "n_samples": record.n_samples,
        "capture_time": record.capture_time,
        "final_time": record.t[-1] if record.t else None,
        "final_r_norm": record.r_norm[-1] if record.r_norm else None,
        "gamma_min": min(record.gamma) if record.gamma else None,
        "gamma_max": max(record.gamma) if record.gamma else None,
        "gamma_final": record.gamma[-1] if record.gamma else None,
        "peak_residual": max(record.residual) if record.residual else None,
        "peak_abs_u_p": max(abs(v) for v in record.u_p) if record.u_p else None,
    }
    if cert is not None:
        out["certificate"] = {
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
    if envelope_ok is not None:
        out["envelope_ok"] = envelope_ok
    return out


def write_summary_json(
    record: TrajectoryRecord, sink: TextIO, cert=None, envelope_ok: Optional[bool] = None
) -> None:
    json.dump(summary_dict(record, cert, envelope_ok), sink, indent=2, sort_keys=True)
    sink.write("\n")


# ---------------------------------------------------------------------------
# SVG figures


def _fmt(v: float) -> str:
    return f"{v:.6g}"


def _svg_open(xs: List[float], ys: List[float]) -> Tuple[List[str], float]:
    xmin, xmax = min(xs), max(xs)
    ymin, ymax = min(ys), max(ys)
    extent = max(xmax - xmin, ymax - ymin, 1e-9)
    margin = 0.05 * extent
    w = (xmax - xmin) + 2.0 * margin
    h = (ymax - ymin) + 2.0 * margin
    view = f"{_fmt(xmin - margin)} {_fmt(ymin - margin)} {_fmt(w)} {_fmt(h)}"
    sw = 0.004 * max(w, h)
    lines = [
        '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'viewBox="{view}">',
    ]
    return lines, sw


def _polyline(xs: List[float], ys: List[float], style: str) -> str:
    pts = " ".join(f"{_fmt(x)},{_fmt(y)}" for x, y in zip(xs, ys))
    return f'<polyline fill="none" {style} points="{pts}"/>'


def _baseline_indices(n: int, count: int) -> List[int]:
    if count <= 0 or n == 0:
        return []
    if count == 1 or n == 1:
        return [0]
    seen = []
    last = None
    for k in range(count):
        i = round(k * (n - 1) / (count - 1))
        if i != last:
            seen.append(i)
            last = i
    return seen


def emit_figure_svg(record: TrajectoryRecord, sink: TextIO, baseline_count: int = 12) -> None:
    """Render one engagement as SVG: paths plus light baseline segments.

    The y axis is flipped so the figure reads in the usual orientation.
    Output depends only on the record and baseline_count.
    """
    pxs = record.px
    pys = [-v for v in record.py]
    exs = record.ex
    eys = [-v for v in record.ey]
    lines, sw = _svg_open(pxs + exs, pys + eys)
    n = record.n_samples
    for i in _baseline_indices(n, baseline_count):
        lines.append(
            f'<line x1="{_fmt(pxs[i])}" y1="{_fmt(pys[i])}" '
            f'x2="{_fmt(exs[i])}" y2="{_fmt(eys[i])}" '
            f'stroke="#c9c9c9" stroke-width="{_fmt(0.6 * sw)}"/>'
        )
    if n == 1:
        r = _fmt(2.0 * sw)
        lines.append(f'<circle cx="{_fmt(pxs[0])}" cy="{_fmt(pys[0])}" r="{r}" fill="#111111"/>')
        lines.append(f'<circle cx="{_fmt(exs[0])}" cy="{_fmt(eys[0])}" r="{r}" fill="#444444"/>')
    else:
        lines.append(
            _polyline(
                exs, eys,
                f'stroke="#333333" stroke-width="{_fmt(sw)}" '
                f'stroke-dasharray="{_fmt(3.0 * sw)} {_fmt(2.0 * sw)}"',
            )
        )
        lines.append(_polyline(pxs, pys, f'stroke="#111111" stroke-width="{_fmt(sw)}"'))
    lines.append("</svg>")
    sink.write("\n".join(lines) + "\n")


_OVERLAY_STYLES = (
    'stroke="#111111"',
    'stroke="#555555" stroke-dasharray="{d1} {d2}"',
    'stroke="#999999" stroke-dasharray="{d3} {d3}"',
)


def emit_overlay_svg(records: List[TrajectoryRecord], labels: List[str], sink: TextIO) -> None:
    """Overlay several pursuer paths over a shared evader path."""
    if not records:
        raise ValidationError("overlay needs at least one record")
    evader_src = max(records, key=lambda r: r.n_samples)
    all_x: List[float] = list(evader_src.ex)
    all_y: List[float] = [-v for v in evader_src.ey]
    for rec in records:
        all_x.extend(rec.px)
        all_y.extend(-v for v in rec.py)
    lines, sw = _svg_open(all_x, all_y)
    lines.append(
        _polyline(
            list(evader_src.ex), [-v for v in evader_src.ey],
            f'stroke="#bb4444" stroke-width="{_fmt(sw)}" '
            f'stroke-dasharray="{_fmt(3.0 * sw)} {_fmt(2.0 * sw)}"',
        )
    )
    for idx, rec in enumerate(records):
        style = _OVERLAY_STYLES[idx % len(_OVERLAY_STYLES)].format(
            d1=_fmt(5.0 * sw), d2=_fmt(2.5 * sw), d3=_fmt(1.5 * sw)
        )
        lines.append(
            _polyline(list(rec.px), [-v for v in rec.py], f'{style} stroke-width="{_fmt(sw)}"')
        )
    lines.append("</svg>")
    sink.write("\n".join(lines) + "\n")


def scaled_law(law: PursuerLaw, multiplier: float) -> PursuerLaw:
    """The same law with its gain scaled; used by gain sweeps."""
    if multiplier <= 0.0 or not math.isfinite(multiplier):
        raise ValidationError(f"gain multiplier must be finite and positive: {multiplier}")
    if isinstance(law, MCPG):
        return MCPG(law.mu * multiplier)
    if isinstance(law, Exact):
        return Exact(law.mu * multiplier)
    if isinstance(law, PPNG):
        return PPNG(law.N * multiplier)
    raise ValidationError(f"unknown pursuer law {law!r}")


def with_law(config: ScenarioConfig, law: PursuerLaw) -> ScenarioConfig:
    """Copy of the config running a different pursuer law (not revalidated)."""
    return replace(config, pursuer_law=law)
