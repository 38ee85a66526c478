"""Growth-powered rolling robot simulator.

Sprouts mounted around a wheel push the ground as they elongate.  While a
sprout is engaged, the wheel turns by theta = (L - L_s) / R where L_s is
the sprout's length when it first touched the ground, and the horizontal
travel is d = R * theta.  Once a sprout has contributed one spacing angle
(45 degrees by default) the next sprout takes over with its own angle reset
to zero.  Motion at each step additionally requires the engaged sprout's
pushing force (from its force-stroke profile, at stroke L - L_s) to exceed
the rolling resistance mu_R * N.

Engagement rule: a sprout starts contributing at the first time step where
it is the active sprout and its length has reached ``contact_length`` (it
cannot push before it is long enough to touch the ground).  Its L_s is
snapshotted from its modelled length at that moment, so every sprout starts
its phase at angle zero.  If the incoming sprout is still too short at
handover, the wheel waits (angle frozen, still "rolling") until it reaches
contact length.

A failed force gate is terminal ("stalled"): without rotation the next
sprout can never engage, so waiting cannot recover.  After the last sprout
finishes its phase the status becomes "exhausted".  Both are absorbing;
states keep being emitted on the fixed grid with motion frozen so
trajectories always cover [0, t_end].
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Literal, NamedTuple, Sequence

import numpy as np

from ._io import Destination, open_out
from .actuation import (
    DARK_FORCE_PROFILE,
    G_TO_KG,
    ForcePoint,
    ForceProfile,
    force_at,
)
from .errors import DomainError, InputError, ParameterError
from .growth import DARK_GROWTH, GrowthParams, length_at, time_to_length

__all__ = [
    "ROLLING",
    "STALLED",
    "EXHAUSTED",
    "RoverConfig",
    "RoverState",
    "Trajectory",
    "rolling_resistance",
    "simulate_rover",
    "predict_displacement",
    "staggered_offsets",
    "default_rover_config",
    "summarize_trajectory",
    "rover_config_from_dict",
    "rover_config_to_dict",
    "load_rover_config",
    "write_trajectory_csv",
    "read_trajectory_csv",
]

ROLLING = "rolling"
STALLED = "stalled"
EXHAUSTED = "exhausted"
Status = Literal["rolling", "stalled", "exhausted"]

GRAVITY = 9.81  # m/s^2

TRAJECTORY_HEADER = ("t_h", "theta_rad", "d_mm", "active_sprout", "status")


@dataclass(frozen=True)
class RoverConfig:
    """Geometry, sprout schedule and environment of the rolling robot.

    radius in mm, spacing in radians (angle each sprout contributes before
    handover), robot_mass in grams, contact_length in mm (minimum sprout
    length for ground contact), germination_offsets in hours per sprout
    (non-decreasing; a sprout's growth clock starts at its offset).
    """

    growth: GrowthParams
    profile: ForceProfile
    germination_offsets: tuple[float, ...]
    radius: float = 12.5
    sprout_count: int = 4
    spacing: float = math.pi / 4
    robot_mass: float = 5.0
    mu_r: float = 0.01
    gravity: float = GRAVITY
    contact_length: float | None = None

    def __post_init__(self) -> None:
        if self.contact_length is None:
            object.__setattr__(self, "contact_length", self.growth.L0)
        object.__setattr__(self, "germination_offsets", tuple(self.germination_offsets))
        checks = [
            ("radius", self.radius, self.radius > 0),
            ("sprout_count", self.sprout_count, self.sprout_count >= 1),
            ("spacing", self.spacing, self.spacing > 0),
            ("robot_mass", self.robot_mass, self.robot_mass > 0),
            ("mu_r", self.mu_r, self.mu_r >= 0),
            ("gravity", self.gravity, self.gravity > 0),
            ("contact_length", self.contact_length, self.contact_length >= 0),
        ]
        for name, value, ok in checks:
            if not (ok and math.isfinite(value)):
                raise ParameterError(f"rover config field {name} invalid: {value!r}")
        offs = self.germination_offsets
        if len(offs) != self.sprout_count:
            raise ParameterError(
                f"need one germination offset per sprout: {len(offs)} != {self.sprout_count}"
            )
        if any(not (math.isfinite(o) and o >= 0) for o in offs):
            raise ParameterError("germination offsets must be finite and >= 0")
        if any(b < a for a, b in zip(offs, offs[1:])):
            raise ParameterError("germination offsets must be non-decreasing")

    def resistance_force_mn(self) -> float:
        """Rolling resistance gate in mN: mu_R * m * g."""
        return rolling_resistance(self.mu_r, self.robot_mass * G_TO_KG * self.gravity) * 1e3


@dataclass(frozen=True)
class RoverState:
    """Snapshot of the rover at one time step.

    d = radius * theta_total always holds.  sprout_lengths are the modelled
    lengths of all sprouts (0.0 before germination).
    """

    t: float
    theta_total: float
    d: float
    active_index: int
    sprout_lengths: tuple[float, ...]
    status: Status


Trajectory = list[RoverState]


def rolling_resistance(mu_r: float, normal_force: float) -> float:
    """Rolling resistance force in N: mu_R * N."""
    if not (math.isfinite(mu_r) and mu_r >= 0):
        raise DomainError(f"rolling resistance coefficient must be >= 0, got {mu_r!r}")
    if not (math.isfinite(normal_force) and normal_force >= 0):
        raise DomainError(f"normal force must be >= 0, got {normal_force!r}")
    return mu_r * normal_force


def _sprout_lengths(config: RoverConfig, times: np.ndarray) -> np.ndarray:
    """Modelled length of every sprout at every grid time; 0 before germination."""
    lengths = np.zeros((config.sprout_count, len(times)))
    for i, offset in enumerate(config.germination_offsets):
        clock = times - offset
        alive = clock >= 0
        lengths[i, alive] = length_at(config.growth, clock[alive])
    return lengths


def simulate_rover(config: RoverConfig, t_end: float, dt: float = 0.1) -> Trajectory:
    """Run the rover on a fixed time grid and return its state trajectory.

    Parameters
    ----------
    config : RoverConfig
        Geometry, growth law, force profile and sprout schedule.
    t_end : hours
        Simulation horizon; the grid is 0, dt, ..., floor(t_end/dt)*dt.
    dt : hours
        Fixed step, 0 < dt <= 0.5.  Growth is slow and closed-form, so an
        explicit fixed step is sufficient.

    Returns
    -------
    list of RoverState
        One state per grid time, t = 0 included.  Statuses only ever move
        rolling -> stalled or rolling -> exhausted, and motion is frozen
        from that point on.
    """
    if not (math.isfinite(t_end) and t_end > 0):
        raise DomainError(f"t_end must be > 0, got {t_end!r}")
    if not (math.isfinite(dt) and 0 < dt <= 0.5):
        raise DomainError(f"dt must satisfy 0 < dt <= 0.5, got {dt!r}")

    n_steps = int(math.floor(t_end / dt + 1e-9))
    times = np.arange(n_steps + 1, dtype=float) * dt
    lengths = _sprout_lengths(config, times)
    resistance_mn = config.resistance_force_mn()

    theta = 0.0
    active = 0
    engaged = False
    engage_length = 0.0
    status: Status = ROLLING

    def try_engage(step: int) -> None:
        nonlocal engaged, engage_length
        if not engaged and lengths[active, step] >= config.contact_length:
            engaged = True
            engage_length = float(lengths[active, step])

    def gate_open(step: int) -> bool:
        stroke = lengths[active, step] - engage_length
        return force_at(config.profile, stroke) >= resistance_mn

    # Status of the initial state: a config whose first engaged sprout
    # cannot beat the resistance is stalled from the start.
    try_engage(0)
    if engaged and not gate_open(0):
        status = STALLED

    def snapshot(step: int) -> RoverState:
        return RoverState(
            t=float(times[step]),
            theta_total=theta,
            d=config.radius * theta,
            active_index=active,
            sprout_lengths=tuple(float(v) for v in lengths[:, step]),
            status=status,
        )

    states = [snapshot(0)]
    for k in range(n_steps):
        if status == ROLLING:
            try_engage(k)
            if engaged:
                if not gate_open(k):
                    status = STALLED
                else:
                    theta += float(lengths[active, k + 1] - lengths[active, k]) / config.radius
                    if (lengths[active, k + 1] - engage_length) / config.radius >= config.spacing:
                        engaged = False
                        if active + 1 >= config.sprout_count:
                            status = EXHAUSTED
                        else:
                            active += 1
        states.append(snapshot(k + 1))
    return states


def predict_displacement(config: RoverConfig, t: float) -> float:
    """Closed-form horizontal displacement in mm at time ``t``, assuming no stall.

    Sums radius * spacing for every completed phase plus the in-progress
    arc of the currently engaged sprout, using the same engagement rules as
    :func:`simulate_rover` but in continuous time.  Matches the simulated d
    up to time-step resolution.
    """
    if not (math.isfinite(t) and t >= 0):
        raise DomainError(f"t must be finite and >= 0, got {t!r}")
    growth = config.growth
    quantum = config.radius * config.spacing

    if config.contact_length <= growth.L0:
        t_reach = 0.0
    elif config.contact_length < growth.K:
        t_reach = float(time_to_length(growth, config.contact_length))
    else:
        t_reach = math.inf  # never long enough to touch the ground

    prev_complete = 0.0
    for i in range(config.sprout_count):
        offset = config.germination_offsets[i]
        engage_t = max(prev_complete, offset + t_reach)
        if t <= engage_t:
            return i * quantum
        engage_length = float(length_at(growth, engage_t - offset))
        target = engage_length + quantum
        if target >= growth.K:
            complete_t = math.inf  # bounded growth: this phase never finishes
        else:
            complete_t = offset + float(time_to_length(growth, target))
        if t < complete_t:
            return i * quantum + (float(length_at(growth, t - offset)) - engage_length)
        prev_complete = complete_t
    return config.sprout_count * quantum


def staggered_offsets(
    growth: GrowthParams,
    count: int,
    radius: float = 12.5,
    spacing: float = math.pi / 4,
    contact_length: float | None = None,
) -> tuple[float, ...]:
    """Germination offsets that chain phases seamlessly.

    Each sprout reaches contact length exactly when its predecessor
    completes its spacing angle, so the offsets are multiples of one phase
    duration.
    """
    if count < 1:
        raise ParameterError(f"count must be >= 1, got {count}")
    contact = growth.L0 if contact_length is None else contact_length
    if contact >= growth.K:
        raise ParameterError("contact length must be below the growth ceiling K")
    t_reach = 0.0 if contact <= growth.L0 else float(time_to_length(growth, contact))
    engage_length = max(contact, growth.L0)
    target = engage_length + radius * spacing
    if target >= growth.K:
        raise ParameterError(
            f"one phase needs {radius * spacing:.3f} mm of growth past engagement, "
            f"but the ceiling K = {growth.K} mm is too low"
        )
    phase_duration = float(time_to_length(growth, target)) - t_reach
    return tuple(i * phase_duration for i in range(count))


def default_rover_config(
    growth: GrowthParams = DARK_GROWTH,
    profile: ForceProfile = DARK_FORCE_PROFILE,
    sprout_count: int = 4,
    radius: float = 12.5,
    spacing: float = math.pi / 4,
    robot_mass: float = 5.0,
    mu_r: float = 0.01,
    contact_length: float | None = None,
) -> RoverConfig:
    """The documented default rover: 25 mm wheel, 5 g, four sprouts at 45 degrees.

    Contact length defaults to the growth law's L0 so the first sprout
    engages at t = 0; offsets are staggered so each sprout is ready exactly
    at its predecessor's handover.
    """
    offsets = staggered_offsets(growth, sprout_count, radius, spacing, contact_length)
    return RoverConfig(
        growth=growth,
        profile=profile,
        germination_offsets=offsets,
        radius=radius,
        sprout_count=sprout_count,
        spacing=spacing,
        robot_mass=robot_mass,
        mu_r=mu_r,
        contact_length=contact_length,
    )


def summarize_trajectory(states: Sequence[RoverState]) -> dict:
    """Final displacement, completed phase count and status of a run."""
    if not states:
        raise InputError("empty trajectory")
    last = states[-1]
    phases = len(last.sprout_lengths) if last.status == EXHAUSTED else last.active_index
    return {
        "t_end_h": last.t,
        "final_d_mm": last.d,
        "final_theta_rad": last.theta_total,
        "phases_completed": phases,
        "status": last.status,
    }


# --- JSON config and CSV trajectory formats -------------------------------

_GROWTH_KEYS = {"r_per_h", "k_mm", "l0_mm"}
_CONFIG_KEYS = {
    "radius_mm",
    "sprout_count",
    "spacing_rad",
    "robot_mass_g",
    "mu_r",
    "gravity_m_s2",
    "contact_length_mm",
    "germination_offsets_h",
    "growth",
    "profile",
}


def _growth_from_dict(doc: dict) -> GrowthParams:
    unknown = set(doc) - _GROWTH_KEYS
    if unknown:
        raise InputError(f"unknown growth keys: {sorted(unknown)}")
    try:
        return GrowthParams(r=doc["r_per_h"], K=doc["k_mm"], L0=doc["l0_mm"])
    except (KeyError, TypeError) as exc:
        raise InputError(f"growth document needs keys {sorted(_GROWTH_KEYS)}") from exc


def _profile_from_dict(doc: dict) -> ForceProfile:
    try:
        xs, fs = doc["displacement_mm"], doc["force_mn"]
        points = tuple(ForcePoint(float(x), float(f)) for x, f in zip(xs, fs, strict=True))
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(
            "profile document needs equal-length arrays displacement_mm and force_mn"
        ) from exc
    return ForceProfile(points=points)


def rover_config_from_dict(doc: dict) -> RoverConfig:
    """Build a RoverConfig from its JSON document form (missing keys default)."""
    unknown = set(doc) - _CONFIG_KEYS
    if unknown:
        raise InputError(f"unknown rover config keys: {sorted(unknown)}")
    growth = _growth_from_dict(doc["growth"]) if "growth" in doc else DARK_GROWTH
    profile = _profile_from_dict(doc["profile"]) if "profile" in doc else DARK_FORCE_PROFILE
    sprout_count = int(doc.get("sprout_count", 4))
    radius = float(doc.get("radius_mm", 12.5))
    spacing = float(doc.get("spacing_rad", math.pi / 4))
    contact = doc.get("contact_length_mm")
    if "germination_offsets_h" in doc:
        offsets = tuple(float(o) for o in doc["germination_offsets_h"])
    else:
        offsets = staggered_offsets(growth, sprout_count, radius, spacing, contact)
    try:
        return RoverConfig(
            growth=growth,
            profile=profile,
            germination_offsets=offsets,
            radius=radius,
            sprout_count=sprout_count,
            spacing=spacing,
            robot_mass=float(doc.get("robot_mass_g", 5.0)),
            mu_r=float(doc.get("mu_r", 0.01)),
            gravity=float(doc.get("gravity_m_s2", GRAVITY)),
            contact_length=None if contact is None else float(contact),
        )
    except ParameterError as exc:
        raise InputError(f"invalid rover config: {exc}") from exc


def rover_config_to_dict(config: RoverConfig) -> dict:
    """Serialize a RoverConfig to its JSON document form."""
    return {
        "radius_mm": config.radius,
        "sprout_count": config.sprout_count,
        "spacing_rad": config.spacing,
        "robot_mass_g": config.robot_mass,
        "mu_r": config.mu_r,
        "gravity_m_s2": config.gravity,
        "contact_length_mm": config.contact_length,
        "germination_offsets_h": list(config.germination_offsets),
        "growth": {
            "r_per_h": config.growth.r,
            "k_mm": config.growth.K,
            "l0_mm": config.growth.L0,
        },
        "profile": {
            "displacement_mm": [p.displacement for p in config.profile.points],
            "force_mn": [p.force for p in config.profile.points],
        },
    }


def load_rover_config(path: str | Path) -> RoverConfig:
    """Read a RoverConfig from a JSON file."""
    path = Path(path)
    try:
        doc = json.loads(path.read_text(encoding="utf-8"))
    except OSError as exc:
        raise InputError(f"cannot read rover config {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"rover config {path} is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise InputError(f"rover config {path} must be a JSON object")
    return rover_config_from_dict(doc)


class TrajectoryRow(NamedTuple):
    t: float
    theta: float
    d: float
    active_sprout: int
    status: str


def write_trajectory_csv(dest: Destination, states: Sequence[RoverState]) -> None:
    """Write `t_h,theta_rad,d_mm,active_sprout,status` rows (LF, 6 sig digits)."""
    with open_out(dest) as fh:
        fh.write(",".join(TRAJECTORY_HEADER) + "\n")
        for s in states:
            fh.write(f"{s.t:.6g},{s.theta_total:.6g},{s.d:.6g},{s.active_index},{s.status}\n")


def read_trajectory_csv(path: str | Path) -> list[TrajectoryRow]:
    """Read rows written by :func:`write_trajectory_csv`."""
    path = Path(path)
    try:
        with path.open(newline="", encoding="utf-8") as fh:
            rows = [row for row in csv.reader(fh) if row and not row[0].startswith("#")]
    except OSError as exc:
        raise InputError(f"cannot read trajectory CSV {path}: {exc}") from exc
    if not rows or tuple(h.strip() for h in rows[0]) != TRAJECTORY_HEADER:
        raise InputError(f"trajectory CSV {path} must start with header {','.join(TRAJECTORY_HEADER)}")
    out = []
    for lineno, row in enumerate(rows[1:], start=2):
        try:
            out.append(
                TrajectoryRow(float(row[0]), float(row[1]), float(row[2]), int(row[3]), row[4])
            )
        except (ValueError, IndexError) as exc:
            raise InputError(f"{path}:{lineno}: bad trajectory row {row!r}") from exc
    return out
