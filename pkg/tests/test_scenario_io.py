"""Scenario text format, trajectory CSV, summary JSON, and SVG output."""

import io
import json
import math
import xml.etree.ElementTree as ET

import pytest

from mcpursuit.dynamics import ParticleState
from mcpursuit.errors import ParseError, ValidationError
from mcpursuit.geometry import PlanarVector
from mcpursuit.guidance import (
    MCPG,
    PPNG,
    Constant,
    Exact,
    PiecewiseRandom,
    Sinusoid,
    Zero,
    stability_step_cap,
)
from mcpursuit.scenario_io import (
    CSV_COLUMNS,
    TERMINATION_TIME_LIMIT,
    TrajectoryRecord,
    build_scenario,
    emit_figure_svg,
    emit_overlay_svg,
    initial_range,
    parse_scenario,
    parse_scenario_with_overrides,
    read_trajectory_csv,
    scaled_law,
    summary_dict,
    validate_scenario,
    with_law,
    write_scenario,
    write_summary_json,
    write_trajectory_csv,
)

BASE_TEXT = """\
# demo engagement
nu = 0.5
pursuer_init.x = 10.0
pursuer_init.y = 0.0
pursuer_init.heading = 1.5
evader_init.x = 0.0
evader_init.y = 0.0
evader_init.heading = 0.25

pursuer_law.variant = mcpg
pursuer_law.mu = 3.0
"""


def _state(x, y, heading):
    return ParticleState(PlanarVector(x, y), heading)


def test_parse_minimal_scenario_fills_defaults():
    config = parse_scenario(BASE_TEXT)
    assert config.nu == 0.5
    assert config.pursuer_law == MCPG(3.0)
    assert config.evader_program == Zero()
    assert config.capture_radius == 0.05
    assert config.sample_stride == 1
    assert config.label == ""
    assert config.step_size == stability_step_cap(MCPG(3.0), 0.5, 0.05)
    assert config.t_max == 2.0 * 10.0 / (1.0 - 0.5)


def test_parse_full_scenario():
    text = BASE_TEXT + (
        "label = demo\n"
        "evader_program.variant = sinusoid\n"
        "evader_program.amplitude = 0.4\n"
        "evader_program.angular_freq = 2.0\n"
        "step_size = 0.001\n"
        "t_max = 12.0\n"
        "capture_radius = 0.02\n"
        "sample_stride = 4\n"
    )
    config = parse_scenario(text)
    assert config.label == "demo"
    assert config.evader_program == Sinusoid(amplitude=0.4, angular_freq=2.0, phase=0.0)
    assert config.step_size == 0.001
    assert config.t_max == 12.0
    assert config.capture_radius == 0.02
    assert config.sample_stride == 4


@pytest.mark.parametrize(
    "line,fragment",
    [
        ("just words", "line 3"),
        ("= 1.0", "empty key"),
        ("mystery_key = 1.0", "unknown key"),
        ("nu = 0.7", "duplicate key"),
    ],
)
def test_parse_errors_carry_line_numbers(line, fragment):
    text = "label = x\nnu = 0.5\n" + line + "\n"
    with pytest.raises(ParseError, match=fragment):
        parse_scenario(text)


def test_non_numeric_value_is_rejected_with_the_line():
    text = BASE_TEXT.replace("nu = 0.5", "nu = fast")
    with pytest.raises(ParseError, match="line 2"):
        parse_scenario(text)


def test_missing_required_keys_are_reported():
    with pytest.raises(ValidationError, match="pursuer_law.variant"):
        parse_scenario(BASE_TEXT.replace("pursuer_law.variant = mcpg\n", ""))
    with pytest.raises(ValidationError, match="pursuer_law.mu"):
        parse_scenario(BASE_TEXT.replace("pursuer_law.mu = 3.0\n", ""))
    with pytest.raises(ValidationError, match="nu"):
        parse_scenario(BASE_TEXT.replace("nu = 0.5\n", ""))


def test_keys_for_other_variants_are_rejected():
    text = BASE_TEXT + "evader_program.variant = constant\nevader_program.c = 0.2\n"
    bad = text + "evader_program.amplitude = 0.4\n"
    with pytest.raises(ValidationError, match="does not apply"):
        parse_scenario(bad)
    with pytest.raises(ValidationError, match="pursuer_law.N"):
        parse_scenario(BASE_TEXT + "pursuer_law.N = 4.0\n")


def test_unknown_variants_are_rejected():
    with pytest.raises(ValidationError, match="pursuit"):
        parse_scenario(BASE_TEXT.replace("mcpg", "pursuit"))
    with pytest.raises(ValidationError, match="waltz"):
        parse_scenario(BASE_TEXT + "evader_program.variant = waltz\n")


def test_piecewise_random_seed_must_be_an_integer():
    text = BASE_TEXT + (
        "evader_program.variant = piecewise_random\n"
        "evader_program.seed = 1.5\n"
        "evader_program.dwell = 0.5\n"
        "evader_program.u_max = 0.3\n"
    )
    with pytest.raises(ParseError, match="integer"):
        parse_scenario(text)


def test_overrides_replace_and_extend_entries():
    config = parse_scenario_with_overrides(
        BASE_TEXT, {"nu": "0.25", "t_max": "7.5", "label": "patched"}
    )
    assert config.nu == 0.25
    assert config.t_max == 7.5
    assert config.label == "patched"


def test_validate_rejects_bad_configs():
    good = parse_scenario(BASE_TEXT)
    import dataclasses

    with pytest.raises(ValidationError, match="nu"):
        validate_scenario(dataclasses.replace(good, nu=1.0))
    with pytest.raises(ValidationError, match="step_size"):
        validate_scenario(dataclasses.replace(good, step_size=0.0))
    with pytest.raises(ValidationError, match="stability cap"):
        validate_scenario(dataclasses.replace(good, step_size=good.step_size * 2.0))
    with pytest.raises(ValidationError, match="sample_stride"):
        validate_scenario(dataclasses.replace(good, sample_stride=0))
    with pytest.raises(ValidationError, match="coincident"):
        validate_scenario(
            dataclasses.replace(good, pursuer_init=good.evader_init)
        )
    with pytest.raises(ValidationError, match="t_max"):
        validate_scenario(dataclasses.replace(good, t_max=-1.0))
    with pytest.raises(ValidationError, match="heading"):
        build_scenario(
            nu=0.5,
            pursuer_init=_state(1.0, 0.0, math.nan),
            evader_init=_state(0.0, 0.0, 0.0),
            pursuer_law=MCPG(2.0),
        )


ROUND_TRIP_CONFIGS = [
    build_scenario(
        nu=0.5,
        pursuer_init=_state(10.0, -2.0, 1.5),
        evader_init=_state(0.0, 0.5, 0.25),
        pursuer_law=MCPG(3.0),
        label="mcpg zero",
    ),
    build_scenario(
        nu=0.7,
        pursuer_init=_state(-4.0, 3.0, -0.5),
        evader_init=_state(1.0, 1.0, 2.0),
        pursuer_law=Exact(2.5),
        evader_program=Constant(0.3),
        t_max=15.0,
        sample_stride=3,
    ),
    build_scenario(
        nu=0.3,
        pursuer_init=_state(0.0, 8.0, 0.1),
        evader_init=_state(0.0, 0.0, 0.0),
        pursuer_law=PPNG(4.0),
        evader_program=Sinusoid(amplitude=0.2, angular_freq=1.5, phase=0.75),
        capture_radius=0.1,
    ),
    build_scenario(
        nu=0.9,
        pursuer_init=_state(30.0, 0.0, 3.0),
        evader_init=_state(0.0, 0.0, 1.0),
        pursuer_law=MCPG(40.0),
        evader_program=PiecewiseRandom(seed=11, dwell=0.5, u_max=0.3),
        label="random weave",
    ),
]


@pytest.mark.parametrize("config", ROUND_TRIP_CONFIGS, ids=lambda c: type(c.evader_program).__name__)
def test_write_then_parse_recovers_the_config(config):
    text = write_scenario(config)
    again = parse_scenario(text)
    assert again == config
    assert write_scenario(again) == text


def test_written_floats_survive_exactly():
    config = build_scenario(
        nu=1.0 / 3.0,
        pursuer_init=_state(0.1, 1e-300, math.pi),
        evader_init=_state(-1e12, 2.0 / 3.0, -math.pi),
        pursuer_law=MCPG(1.0 / 7.0),
        step_size=0.0001,
        t_max=1e6,
    )
    assert parse_scenario(write_scenario(config)) == config


def _small_record():
    config = build_scenario(
        nu=0.5,
        pursuer_init=_state(2.0, 0.0, 1.0),
        evader_init=_state(0.0, 0.0, 0.0),
        pursuer_law=MCPG(2.0),
        t_max=1.0,
    )
    values = [0.0, 0.1, -0.0, 1.0 / 3.0, 5e-324, -1e308, 123456.789012345678, 2.0]
    cols = {name: list(values) for name in CSV_COLUMNS}
    cols["t"] = [0.125 * i for i in range(8)]
    return TrajectoryRecord(scenario=config, termination=TERMINATION_TIME_LIMIT, **cols)


def test_trajectory_csv_round_trip_is_bit_exact():
    record = _small_record()
    sink = io.StringIO()
    write_trajectory_csv(record, sink)
    columns = read_trajectory_csv(io.StringIO(sink.getvalue()))
    assert set(columns) == set(CSV_COLUMNS)
    for name in CSV_COLUMNS:
        got = columns[name]
        want = getattr(record, name)
        assert len(got) == len(want)
        for g, w in zip(got, want):
            assert math.copysign(1.0, g) == math.copysign(1.0, w)
            assert g == w


def test_trajectory_csv_rejects_malformed_input():
    with pytest.raises(ParseError, match="line 1"):
        read_trajectory_csv(io.StringIO("t,px\n1,2\n"))
    header = ",".join(CSV_COLUMNS)
    with pytest.raises(ParseError, match="line 2"):
        read_trajectory_csv(io.StringIO(header + "\n1,2,3\n"))
    row = ",".join(["1.0"] * (len(CSV_COLUMNS) - 1) + ["oops"])
    with pytest.raises(ParseError, match="line 3"):
        read_trajectory_csv(io.StringIO(header + "\n" + ",".join(["0"] * 14) + "\n" + row + "\n"))


def test_summary_json_shape_and_determinism():
    record = _small_record()
    sink = io.StringIO()
    write_summary_json(record, sink)
    text = sink.getvalue()
    assert text.endswith("\n")
    data = json.loads(text)
    assert data["schema"] == 1
    assert data["termination"] == TERMINATION_TIME_LIMIT
    assert data["n_samples"] == 8
    assert data["capture_time"] is None
    assert data["gamma_min"] == min(record.gamma)
    assert data["peak_abs_u_p"] == 1e308
    assert "certificate" not in data
    assert "envelope_ok" not in data
    again = io.StringIO()
    write_summary_json(record, again)
    assert again.getvalue() == text


def test_summary_json_with_certificate_block():
    from mcpursuit.gain_design import design_certificate

    cert = design_certificate(nu=0.5, u_e_max=0.1, gamma0=0.2, r_init=50.0)
    data = summary_dict(_small_record(), cert=cert, envelope_ok=True)
    assert data["certificate"]["mu"] == cert.mu
    assert data["certificate"]["met_at_start"] is False
    assert data["envelope_ok"] is True


def _parse_svg(text):
    root = ET.fromstring(text)
    assert root.tag.endswith("svg")
    return root


def test_figure_svg_is_well_formed():
    record = _small_record()
    sink = io.StringIO()
    emit_figure_svg(record, sink)
    root = _parse_svg(sink.getvalue())
    tags = [child.tag.split("}")[-1] for child in root]
    assert tags.count("polyline") == 2
    assert tags.count("line") >= 2


def test_single_sample_figure_uses_markers():
    record = _small_record()
    import dataclasses

    one = dataclasses.replace(
        record, **{name: [getattr(record, name)[0]] for name in CSV_COLUMNS}
    )
    sink = io.StringIO()
    emit_figure_svg(one, sink)
    root = _parse_svg(sink.getvalue())
    tags = [child.tag.split("}")[-1] for child in root]
    assert tags.count("circle") == 2


def test_overlay_svg_draws_one_pursuer_path_per_record():
    records = [_small_record(), _small_record(), _small_record()]
    sink = io.StringIO()
    emit_overlay_svg(records, ["a", "b", "c"], sink)
    root = _parse_svg(sink.getvalue())
    tags = [child.tag.split("}")[-1] for child in root]
    # Three pursuer paths plus the shared evader path.
    assert tags.count("polyline") == 4


def test_scaled_law_multiplies_the_gain():
    assert scaled_law(MCPG(3.0), 2.0) == MCPG(6.0)
    assert scaled_law(Exact(1.5), 3.0) == Exact(4.5)
    assert scaled_law(PPNG(4.0), 0.5) == PPNG(2.0)


def test_with_law_swaps_only_the_law():
    config = ROUND_TRIP_CONFIGS[0]
    swapped = with_law(config, PPNG(9.0))
    assert swapped.pursuer_law == PPNG(9.0)
    assert swapped.nu == config.nu
    assert swapped.evader_program == config.evader_program
    assert initial_range(swapped) == initial_range(config)
