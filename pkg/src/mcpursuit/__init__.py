"""Planar pursuit-evasion with motion-camouflage feedback laws.

The package simulates a unit-speed pursuer chasing a slower evader in the
plane, both steered by curvature controls. It provides the motion-camouflage
proportional guidance family, a gain design routine that certifies alignment
within a stated horizon, engagement metrics, deterministic scenario and
trajectory file formats, and a command line front end.
"""

from .dynamics import (
    EngagementState,
    EngagementStateRate,
    ParticleState,
    SystemParams,
    derivatives,
    frame_of,
    step,
)
from .errors import (
    CertificateMismatch,
    DegenerateGamma,
    DegenerateStart,
    InitialCollision,
    InvalidGeometry,
    InvalidSpeedRatio,
    McpursuitError,
    NonFiniteState,
    ParseError,
    ValidationError,
    ZeroBaseline,
    ZeroVector,
)
from .gain_design import (
    GainCertificate,
    choose_epsilon,
    compute_c1,
    design_certificate,
    ppng_equivalent_gain,
    required_c2,
)
from .geometry import PlanarVector, cross, dot, norm, perp, unit
from .guidance import (
    MCPG,
    PPNG,
    Constant,
    Exact,
    PiecewiseRandom,
    Sinusoid,
    Zero,
    evader_control,
    exact_control,
    mcpg_control,
    ppng_control,
    random_level,
    stability_step_cap,
)
from .metrics import (
    BaselineTrace,
    MetricSample,
    camouflage_test,
    check_envelope,
    compute_metrics,
    gamma_envelope,
)
from .scenario_io import (
    ScenarioConfig,
    TrajectoryRecord,
    build_scenario,
    initial_range,
    initial_state,
    parse_scenario,
    read_trajectory_csv,
    validate_scenario,
    write_scenario,
    write_trajectory_csv,
)
from .simulation import simulate

__version__ = "0.1.0"

__all__ = [
    "BaselineTrace",
    "CertificateMismatch",
    "Constant",
    "DegenerateGamma",
    "DegenerateStart",
    "EngagementState",
    "EngagementStateRate",
    "Exact",
    "GainCertificate",
    "InitialCollision",
    "InvalidGeometry",
    "InvalidSpeedRatio",
    "MCPG",
    "McpursuitError",
    "MetricSample",
    "NonFiniteState",
    "PPNG",
    "ParseError",
    "ParticleState",
    "PiecewiseRandom",
    "PlanarVector",
    "ScenarioConfig",
    "Sinusoid",
    "SystemParams",
    "TrajectoryRecord",
    "ValidationError",
    "Zero",
    "ZeroBaseline",
    "ZeroVector",
    "build_scenario",
    "camouflage_test",
    "check_envelope",
    "choose_epsilon",
    "compute_c1",
    "compute_metrics",
    "cross",
    "derivatives",
    "design_certificate",
    "dot",
    "evader_control",
    "exact_control",
    "frame_of",
    "gamma_envelope",
    "initial_range",
    "initial_state",
    "mcpg_control",
    "norm",
    "parse_scenario",
    "perp",
    "ppng_control",
    "ppng_equivalent_gain",
    "random_level",
    "read_trajectory_csv",
    "simulate",
    "stability_step_cap",
    "step",
    "unit",
    "validate_scenario",
    "write_scenario",
    "write_trajectory_csv",
]
