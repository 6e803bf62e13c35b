"""Unit-speed particle models and the fixed-step RK4 integrator.

Both vehicles are planar particles steered by curvature: the pursuer moves at
unit speed with heading rate u_p, the evader at speed nu (0 <= nu < 1) with
heading rate nu * u_e, so u_e is the evader's path curvature. Headings are in
radians, unwrapped and unbounded.

Controls are re-evaluated at every RK4 stage with the stage's intermediate
state and stage time. The step update is written as x + h*((k1 + 2*(k2+k3) +
k4)/6) so a constant unit rate advances a coordinate by exactly h.

Internal scalar control convention (used by the fast integration loop and by
:func:`step`): the pursuer callable receives

    (t, px, py, pth, cp, sp, ex, ey, eth, ce, se, u_e_now)

where (cp, sp) and (ce, se) are the cos/sin of the two headings, already
computed for the stage; the evader callable receives the stage time only.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Tuple

from .errors import NonFiniteState
from .geometry import PlanarVector, perp

_cos = math.cos
_sin = math.sin


@dataclass(frozen=True)
class ParticleState:
    """Position plus heading angle of one vehicle."""

    position: PlanarVector
    heading: float


@dataclass(frozen=True)
class EngagementState:
    """Joint pursuer/evader state at one instant."""

    pursuer: ParticleState
    evader: ParticleState
    time: float


@dataclass(frozen=True)
class EngagementStateRate:
    """Time derivative of an EngagementState under given controls."""

    pursuer_velocity: PlanarVector
    pursuer_heading_rate: float
    evader_velocity: PlanarVector
    evader_heading_rate: float


@dataclass(frozen=True)
class SystemParams:
    """Integration parameters: speed ratio, step size, capture radius."""

    nu: float
    step_size: float
    capture_radius: float = 0.05

    def __post_init__(self) -> None:
        if not 0.0 <= self.nu < 1.0:
            raise ValueError(f"nu out of [0, 1): {self.nu}")
        if not self.step_size > 0.0:
            raise ValueError(f"step_size must be positive: {self.step_size}")
        if not self.capture_radius > 0.0:
            raise ValueError(f"capture_radius must be positive: {self.capture_radius}")


def frame_of(p: ParticleState) -> Tuple[PlanarVector, PlanarVector]:
    """Natural frame of a particle: unit tangent and its counterclockwise normal."""
    tangent = PlanarVector(_cos(p.heading), _sin(p.heading))
    return tangent, perp(tangent)


def derivatives(s: EngagementState, u_p: float, u_e: float, nu: float) -> EngagementStateRate:
    """State rates under curvature controls u_p (pursuer) and u_e (evader).

    The pursuer translates along its unit tangent; the evader along nu times
    its tangent. Heading rates are u_p and nu*u_e respectively, which is the
    curvature steering model expressed in heading-angle coordinates.
    """
    pt = _cos(s.pursuer.heading)
    ps = _sin(s.pursuer.heading)
    et = _cos(s.evader.heading)
    es = _sin(s.evader.heading)
    return EngagementStateRate(
        pursuer_velocity=PlanarVector(pt, ps),
        pursuer_heading_rate=u_p,
        evader_velocity=PlanarVector(nu * et, nu * es),
        evader_heading_rate=nu * u_e,
    )


def rk4_step_scalars(
    t: float,
    px: float,
    py: float,
    pth: float,
    ex: float,
    ey: float,
    eth: float,
    h: float,
    nu: float,
    pursuer: Callable[..., float],
    evader: Callable[[float], float],
) -> Tuple[float, float, float, float, float, float]:
    """One classical RK4 step on the six scalar state components.

    Low-level primitive shared by :func:`step` and the simulation loop; the
    callables follow the scalar control convention in the module docstring.
    Returns the state at t + h. Raises nothing of its own; trig of an infinite
    heading surfaces as ValueError, which callers convert to NonFiniteState.
    """
    half = 0.5 * h

    # stage 1 at t
    cp1 = _cos(pth)
    sp1 = _sin(pth)
    ce1 = _cos(eth)
    se1 = _sin(eth)
    ue1 = evader(t)
    a1 = pursuer(t, px, py, pth, cp1, sp1, ex, ey, eth, ce1, se1, ue1)
    b1 = nu * ue1

    # stage 2 at t + h/2
    t2 = t + half
    pth2 = pth + half * a1
    eth2 = eth + half * b1
    cp2 = _cos(pth2)
    sp2 = _sin(pth2)
    ce2 = _cos(eth2)
    se2 = _sin(eth2)
    px2 = px + half * cp1
    py2 = py + half * sp1
    ex2 = ex + half * (nu * ce1)
    ey2 = ey + half * (nu * se1)
    ue2 = evader(t2)
    a2 = pursuer(t2, px2, py2, pth2, cp2, sp2, ex2, ey2, eth2, ce2, se2, ue2)
    b2 = nu * ue2

    # stage 3, also at t + h/2 (the evader control is a pure function of time,
    # so its stage-2 value is reused)
    pth3 = pth + half * a2
    eth3 = eth + half * b2
    cp3 = _cos(pth3)
    sp3 = _sin(pth3)
    ce3 = _cos(eth3)
    se3 = _sin(eth3)
    px3 = px + half * cp2
    py3 = py + half * sp2
    ex3 = ex + half * (nu * ce2)
    ey3 = ey + half * (nu * se2)
    a3 = pursuer(t2, px3, py3, pth3, cp3, sp3, ex3, ey3, eth3, ce3, se3, ue2)
    b3 = b2

    # stage 4 at t + h
    t4 = t + h
    pth4 = pth + h * a3
    eth4 = eth + h * b3
    cp4 = _cos(pth4)
    sp4 = _sin(pth4)
    ce4 = _cos(eth4)
    se4 = _sin(eth4)
    px4 = px + h * cp3
    py4 = py + h * sp3
    ex4 = ex + h * (nu * ce3)
    ey4 = ey + h * (nu * se3)
    ue4 = evader(t4)
    a4 = pursuer(t4, px4, py4, pth4, cp4, sp4, ex4, ey4, eth4, ce4, se4, ue4)
    b4 = nu * ue4

    return (
        px + h * ((cp1 + 2.0 * (cp2 + cp3) + cp4) / 6.0),
        py + h * ((sp1 + 2.0 * (sp2 + sp3) + sp4) / 6.0),
        pth + h * ((a1 + 2.0 * (a2 + a3) + a4) / 6.0),
        ex + h * (nu * ((ce1 + 2.0 * (ce2 + ce3) + ce4) / 6.0)),
        ey + h * (nu * ((se1 + 2.0 * (se2 + se3) + se4) / 6.0)),
        eth + h * ((b1 + 2.0 * (b2 + b3) + b4) / 6.0),
    )


def step(
    s: EngagementState,
    pursuer_control: Callable[[EngagementState, float], float],
    evader_control: Callable[[float], float],
    params: SystemParams,
) -> EngagementState:
    """Advance the engagement by one RK4 step of length params.step_size.

    ``pursuer_control(state, u_e_now)`` is a feedback law evaluated at each
    stage with the stage's intermediate state; ``evader_control(t)`` is the
    evader's open-loop steering program. Raises NonFiniteState if any state
    component fails to stay finite.
    """

    def scalar_pursuer(t, px, py, pth, cp, sp, ex, ey, eth, ce, se, ue):
        stage = EngagementState(
            pursuer=ParticleState(PlanarVector(px, py), pth),
            evader=ParticleState(PlanarVector(ex, ey), eth),
            time=t,
        )
        return pursuer_control(stage, ue)

    try:
        px, py, pth, ex, ey, eth = rk4_step_scalars(
            s.time,
            s.pursuer.position.x,
            s.pursuer.position.y,
            s.pursuer.heading,
            s.evader.position.x,
            s.evader.position.y,
            s.evader.heading,
            params.step_size,
            params.nu,
            scalar_pursuer,
            evader_control,
        )
    except (ValueError, OverflowError) as exc:
        raise NonFiniteState(f"state left the finite domain during a step: {exc}") from exc

    for v in (px, py, pth, ex, ey, eth):
        if not math.isfinite(v):
            raise NonFiniteState(f"non-finite state component after step at t={s.time}")

    return EngagementState(
        pursuer=ParticleState(PlanarVector(px, py), pth),
        evader=ParticleState(PlanarVector(ex, ey), eth),
        time=s.time + params.step_size,
    )
