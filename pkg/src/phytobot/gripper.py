"""Phototropic gripper simulator: plant fingers steered by timed light.

Fingers are planar segment chains that elongate by the logistic growth law
and bend toward the active light direction.  The turn law is the simplest
smooth rule with the right fixed point: per step the tip heading changes by

    kappa * delta_growth * sin(light_azimuth - heading)

clamped so it never overshoots alignment, and darkness leaves the heading
unchanged.  Schedule targets may be absolute azimuths (radians) or the
symbolic targets "inner" (from the fingertip toward the object center, the
finger-closing direction) and "outer" (its opposite), resolved per finger
per step.

Grasp and release are geometric events: a grasp when every fingertip is
within ``grasp_epsilon`` of the object surface, a release when afterwards
every fingertip is farther than ``grasp_epsilon + release_hysteresis`` from
it.  Object mass and contact mechanics are not modelled.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Literal, Sequence

import numpy as np

from ._io import Destination, open_out
from .errors import DomainError, InputError, ParameterError
from .growth import LIGHT_GROWTH, GrowthParams, length_at

__all__ = [
    "LedInterval",
    "LedSchedule",
    "Finger",
    "GripperConfig",
    "GripperEvent",
    "GripperTrajectory",
    "tropism_step",
    "simulate_gripper",
    "bend_angle",
    "default_gripper_config",
    "default_led_schedule",
    "gripper_config_from_dict",
    "gripper_config_to_dict",
    "load_gripper_config",
    "read_schedule_csv",
    "write_schedule_csv",
    "write_gripper_trajectory_csv",
    "write_events_csv",
    "read_events_csv",
]

INNER = "inner"
OUTER = "outer"

SCHEDULE_HEADER = ("t_start_h", "t_end_h", "target")
GRIPPER_TRAJECTORY_HEADER = ("t_h", "finger", "tip_x_mm", "tip_y_mm", "heading_rad")
EVENTS_HEADER = ("t_h", "kind")


@dataclass(frozen=True)
class LedInterval:
    """One illumination window: [t_start, t_end) hours, target azimuth or inner/outer."""

    t_start: float
    t_end: float
    target: float | str

    def __post_init__(self) -> None:
        if not (math.isfinite(self.t_start) and math.isfinite(self.t_end)):
            raise InputError("interval times must be finite")
        if not self.t_start < self.t_end:
            raise InputError(f"interval must satisfy t_start < t_end, got [{self.t_start}, {self.t_end})")
        if isinstance(self.target, str):
            if self.target not in (INNER, OUTER):
                raise InputError(f"symbolic target must be 'inner' or 'outer', got {self.target!r}")
        elif not math.isfinite(self.target):
            raise InputError(f"numeric target azimuth must be finite, got {self.target!r}")


@dataclass(frozen=True)
class LedSchedule:
    """Ordered, non-overlapping LED intervals; gaps mean darkness."""

    intervals: tuple[LedInterval, ...]

    def __post_init__(self) -> None:
        intervals = tuple(self.intervals)
        object.__setattr__(self, "intervals", intervals)
        for a, b in zip(intervals, intervals[1:]):
            if b.t_start < a.t_end:
                raise InputError(
                    f"intervals overlap or are out of order: [{a.t_start},{a.t_end}) then [{b.t_start},{b.t_end})"
                )

    def target_at(self, t: float) -> float | str | None:
        """Active target at time t, or None in darkness."""
        for interval in self.intervals:
            if interval.t_start <= t < interval.t_end:
                return interval.target
        return None


@dataclass
class Finger:
    """A planar segment chain: base point plus (length, heading) segments.

    ``growth_clock_offset`` is the finger's age in hours at simulation
    t = 0, so its growth clock during a run is offset + t.
    """

    base: tuple[float, float]
    segments: list[tuple[float, float]]
    growth_clock_offset: float = 0.0

    def __post_init__(self) -> None:
        self.base = (float(self.base[0]), float(self.base[1]))
        self.segments = [(float(L), float(h)) for L, h in self.segments]
        if not self.segments:
            raise ParameterError("a finger needs at least one segment")
        if any(L <= 0 for L, _ in self.segments):
            raise ParameterError("segment lengths must be > 0")
        if not (math.isfinite(self.growth_clock_offset) and self.growth_clock_offset >= 0):
            raise ParameterError(
                f"growth clock offset must be finite and >= 0, got {self.growth_clock_offset!r}"
            )

    @property
    def total_length(self) -> float:
        return sum(L for L, _ in self.segments)

    @property
    def tip(self) -> tuple[float, float]:
        x, y = self.base
        for L, h in self.segments:
            x += L * math.cos(h)
            y += L * math.sin(h)
        return (x, y)

    @property
    def tip_heading(self) -> float:
        return self.segments[-1][1]

    def copy(self) -> "Finger":
        return Finger(self.base, list(self.segments), self.growth_clock_offset)


@dataclass(frozen=True)
class GripperConfig:
    """Finger chains, growth law, tropic gain and grasp geometry."""

    fingers: tuple[Finger, ...]
    growth: GrowthParams = LIGHT_GROWTH
    kappa: float = 0.11
    object_center: tuple[float, float] = (0.0, 9.0)
    object_radius: float = 2.0
    grasp_epsilon: float = 0.75
    release_hysteresis: float = 0.75

    def __post_init__(self) -> None:
        object.__setattr__(self, "fingers", tuple(self.fingers))
        object.__setattr__(
            self, "object_center", (float(self.object_center[0]), float(self.object_center[1]))
        )
        if not self.fingers:
            raise ParameterError("gripper needs at least one finger")
        if not (math.isfinite(self.kappa) and self.kappa >= 0):
            raise ParameterError(f"kappa must be finite and >= 0, got {self.kappa!r}")
        if not (math.isfinite(self.object_radius) and self.object_radius > 0):
            raise ParameterError(f"object radius must be > 0, got {self.object_radius!r}")
        if not (math.isfinite(self.grasp_epsilon) and self.grasp_epsilon > 0):
            raise ParameterError(f"grasp epsilon must be > 0, got {self.grasp_epsilon!r}")
        if not (math.isfinite(self.release_hysteresis) and self.release_hysteresis >= 0):
            raise ParameterError(
                f"release hysteresis must be >= 0, got {self.release_hysteresis!r}"
            )


@dataclass(frozen=True)
class GripperEvent:
    """A grasp or release, detected at a grid time."""

    t: float
    kind: Literal["grasp", "release"]


@dataclass(frozen=True)
class GripperTrajectory:
    """Fingertip tracks over a run: arrays indexed (finger, time)."""

    t: np.ndarray = field(repr=False)
    tip_x: np.ndarray = field(repr=False)
    tip_y: np.ndarray = field(repr=False)
    heading: np.ndarray = field(repr=False)
    fingers: tuple[Finger, ...] = field(repr=False)


def tropism_step(heading: float, light_azimuth: float, delta_growth: float, kappa: float) -> float:
    """New tip heading after ``delta_growth`` mm of growth under light.

    Turns by kappa * delta_growth * sin(misalignment) toward the light,
    clamped to the misalignment itself so the heading never overshoots.
    """
    if not (math.isfinite(delta_growth) and delta_growth >= 0):
        raise DomainError(f"delta_growth must be finite and >= 0, got {delta_growth!r}")
    if not (math.isfinite(kappa) and kappa >= 0):
        raise DomainError(f"kappa must be finite and >= 0, got {kappa!r}")
    if not (math.isfinite(heading) and math.isfinite(light_azimuth)):
        raise DomainError("heading and azimuth must be finite")
    misalignment = math.remainder(light_azimuth - heading, math.tau)
    turn = kappa * delta_growth * math.sin(misalignment)
    if abs(turn) > abs(misalignment):
        turn = misalignment
    return heading + turn


def _resolve_azimuth(target: float | str, tip: tuple[float, float], center: tuple[float, float]) -> float:
    if isinstance(target, str):
        azimuth = math.atan2(center[1] - tip[1], center[0] - tip[0])
        if target == OUTER:
            azimuth += math.pi
        return azimuth
    return float(target)


def _surface_distance(tip: tuple[float, float], config: GripperConfig) -> float:
    dx = tip[0] - config.object_center[0]
    dy = tip[1] - config.object_center[1]
    return abs(math.hypot(dx, dy) - config.object_radius)


def simulate_gripper(
    config: GripperConfig,
    schedule: LedSchedule,
    t_end: float,
    dt: float = 0.1,
) -> tuple[GripperTrajectory, list[GripperEvent]]:
    """Grow the fingers under the LED schedule and detect grasp/release events.

    Each step appends one segment to every finger: its length is the exact
    growth increment length_at(clock + dt) - length_at(clock) on the
    finger's own clock (so arc length always equals modelled growth), and
    its heading comes from :func:`tropism_step` with the interval active at
    the step's start; darkness keeps the heading.

    Parameters
    ----------
    config : GripperConfig
    schedule : LedSchedule
    t_end : hours, > 0
    dt : hours, 0 < dt <= 0.5

    Returns
    -------
    (GripperTrajectory, list[GripperEvent])
        Tip tracks on the fixed grid (t = 0 included) and the alternating
        grasp/release events.
    """
    if not (math.isfinite(t_end) and t_end > 0):
        raise DomainError(f"t_end must be > 0, got {t_end!r}")
    if not (math.isfinite(dt) and 0 < dt <= 0.5):
        raise DomainError(f"dt must satisfy 0 < dt <= 0.5, got {dt!r}")
    if not isinstance(schedule, LedSchedule):
        raise InputError("schedule must be a LedSchedule")

    n_steps = int(math.floor(t_end / dt + 1e-9))
    times = np.arange(n_steps + 1, dtype=float) * dt
    fingers = [f.copy() for f in config.fingers]
    n_fingers = len(fingers)

    tip_x = np.zeros((n_fingers, n_steps + 1))
    tip_y = np.zeros((n_fingers, n_steps + 1))
    heading = np.zeros((n_fingers, n_steps + 1))
    events: list[GripperEvent] = []
    grasped = False

    def record(step: int) -> None:
        for i, f in enumerate(fingers):
            tip_x[i, step], tip_y[i, step] = f.tip
            heading[i, step] = f.tip_heading

    def detect(t: float) -> None:
        nonlocal grasped
        distances = [_surface_distance(f.tip, config) for f in fingers]
        if not grasped and all(d <= config.grasp_epsilon for d in distances):
            events.append(GripperEvent(t=t, kind="grasp"))
            grasped = True
        elif grasped and all(
            d > config.grasp_epsilon + config.release_hysteresis for d in distances
        ):
            events.append(GripperEvent(t=t, kind="release"))
            grasped = False

    record(0)
    detect(0.0)
    for k in range(n_steps):
        t = float(times[k])
        target = schedule.target_at(t)
        for f in fingers:
            clock = f.growth_clock_offset + t
            grown = float(length_at(config.growth, clock + dt)) - float(
                length_at(config.growth, clock)
            )
            if grown <= 0.0:
                continue  # growth underflow at extreme clock values
            tip_heading = f.tip_heading
            if target is not None:
                azimuth = _resolve_azimuth(target, f.tip, config.object_center)
                tip_heading = tropism_step(tip_heading, azimuth, grown, config.kappa)
            f.segments.append((grown, tip_heading))
        record(k + 1)
        detect(float(times[k + 1]))

    trajectory = GripperTrajectory(
        t=times, tip_x=tip_x, tip_y=tip_y, heading=heading, fingers=tuple(fingers)
    )
    return trajectory, events


def bend_angle(finger: Finger) -> float:
    """Total bend in radians: |first segment heading - last segment heading|."""
    if not isinstance(finger, Finger) or not finger.segments:
        raise InputError("bend_angle needs a finger with at least one segment")
    return abs(finger.segments[-1][1] - finger.segments[0][1])


def default_gripper_config() -> GripperConfig:
    """Two opposed upright fingers flanking a 2 mm-radius object.

    Stubs of 6 mm at x = -3 and +3 mm, already 20 h into their growth so the
    demonstration window catches the fast part of the curve.  With the
    documented kappa = 0.11 rad/mm this closes on the object in about 7 h
    of inner light and lets go again a few hours into outer light.
    """
    return GripperConfig(
        fingers=(
            Finger(base=(-3.0, 0.0), segments=[(6.0, math.pi / 2)], growth_clock_offset=20.0),
            Finger(base=(3.0, 0.0), segments=[(6.0, math.pi / 2)], growth_clock_offset=20.0),
        ),
        growth=LIGHT_GROWTH,
        kappa=0.11,
        object_center=(0.0, 9.0),
        object_radius=2.0,
        grasp_epsilon=0.75,
        release_hysteresis=0.75,
    )


def default_led_schedule() -> LedSchedule:
    """The demonstration timeline: inner light 0-11 h, outer light 11-21 h."""
    return LedSchedule(
        intervals=(
            LedInterval(t_start=0.0, t_end=11.0, target=INNER),
            LedInterval(t_start=11.0, t_end=21.0, target=OUTER),
        )
    )


# --- JSON config, schedule CSV and output CSV formats ---------------------

_GRIPPER_KEYS = {
    "growth",
    "kappa_rad_per_mm",
    "object_center_mm",
    "object_radius_mm",
    "grasp_epsilon_mm",
    "release_hysteresis_mm",
    "fingers",
}
_FINGER_KEYS = {"base_mm", "initial_length_mm", "initial_heading_rad", "growth_clock_offset_h"}


def gripper_config_from_dict(doc: dict) -> GripperConfig:
    """Build a GripperConfig from its JSON document form (missing keys default)."""
    unknown = set(doc) - _GRIPPER_KEYS
    if unknown:
        raise InputError(f"unknown gripper config keys: {sorted(unknown)}")
    defaults = default_gripper_config()
    growth = defaults.growth
    if "growth" in doc:
        g = doc["growth"]
        try:
            growth = GrowthParams(r=g["r_per_h"], K=g["k_mm"], L0=g["l0_mm"])
        except (KeyError, TypeError) as exc:
            raise InputError("growth document needs keys r_per_h, k_mm, l0_mm") from exc
    fingers = defaults.fingers
    if "fingers" in doc:
        parsed = []
        for i, fdoc in enumerate(doc["fingers"]):
            unknown = set(fdoc) - _FINGER_KEYS
            if unknown:
                raise InputError(f"finger {i}: unknown keys {sorted(unknown)}")
            try:
                parsed.append(
                    Finger(
                        base=(float(fdoc["base_mm"][0]), float(fdoc["base_mm"][1])),
                        segments=[
                            (float(fdoc["initial_length_mm"]), float(fdoc["initial_heading_rad"]))
                        ],
                        growth_clock_offset=float(fdoc.get("growth_clock_offset_h", 0.0)),
                    )
                )
            except (KeyError, TypeError, IndexError) as exc:
                raise InputError(
                    f"finger {i} needs base_mm, initial_length_mm, initial_heading_rad"
                ) from exc
        fingers = tuple(parsed)
    center = doc.get("object_center_mm", defaults.object_center)
    try:
        return GripperConfig(
            fingers=fingers,
            growth=growth,
            kappa=float(doc.get("kappa_rad_per_mm", defaults.kappa)),
            object_center=(float(center[0]), float(center[1])),
            object_radius=float(doc.get("object_radius_mm", defaults.object_radius)),
            grasp_epsilon=float(doc.get("grasp_epsilon_mm", defaults.grasp_epsilon)),
            release_hysteresis=float(
                doc.get("release_hysteresis_mm", defaults.release_hysteresis)
            ),
        )
    except ParameterError as exc:
        raise InputError(f"invalid gripper config: {exc}") from exc


def gripper_config_to_dict(config: GripperConfig) -> dict:
    """Serialize a GripperConfig to its JSON document form.

    Fingers are stored as single initial stubs, so this is only faithful
    for configs whose fingers have not grown yet (library users needing
    multi-segment fingers construct them directly).
    """
    return {
        "growth": {
            "r_per_h": config.growth.r,
            "k_mm": config.growth.K,
            "l0_mm": config.growth.L0,
        },
        "kappa_rad_per_mm": config.kappa,
        "object_center_mm": list(config.object_center),
        "object_radius_mm": config.object_radius,
        "grasp_epsilon_mm": config.grasp_epsilon,
        "release_hysteresis_mm": config.release_hysteresis,
        "fingers": [
            {
                "base_mm": list(f.base),
                "initial_length_mm": f.segments[0][0],
                "initial_heading_rad": f.segments[0][1],
                "growth_clock_offset_h": f.growth_clock_offset,
            }
            for f in config.fingers
        ],
    }


def load_gripper_config(path: str | Path) -> GripperConfig:
    """Read a GripperConfig from a JSON file."""
    path = Path(path)
    try:
        doc = json.loads(path.read_text(encoding="utf-8"))
    except OSError as exc:
        raise InputError(f"cannot read gripper config {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"gripper config {path} is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise InputError(f"gripper config {path} must be a JSON object")
    return gripper_config_from_dict(doc)


def read_schedule_csv(path: str | Path) -> LedSchedule:
    """Read a LED schedule from a `t_start_h,t_end_h,target` CSV."""
    path = Path(path)
    try:
        with path.open(newline="", encoding="utf-8") as fh:
            rows = [row for row in csv.reader(fh) if row and not row[0].startswith("#")]
    except OSError as exc:
        raise InputError(f"cannot read schedule CSV {path}: {exc}") from exc
    if not rows or tuple(h.strip() for h in rows[0]) != SCHEDULE_HEADER:
        raise InputError(f"schedule CSV {path} must start with header {','.join(SCHEDULE_HEADER)}")
    intervals = []
    for lineno, row in enumerate(rows[1:], start=2):
        try:
            raw = row[2].strip()
            target: float | str = raw if raw in (INNER, OUTER) else float(raw)
            intervals.append(LedInterval(t_start=float(row[0]), t_end=float(row[1]), target=target))
        except (ValueError, IndexError) as exc:
            raise InputError(f"{path}:{lineno}: bad schedule row {row!r}") from exc
    return LedSchedule(intervals=tuple(intervals))


def write_schedule_csv(dest: Destination, schedule: LedSchedule) -> None:
    """Write a LED schedule as a `t_start_h,t_end_h,target` CSV."""
    with open_out(dest) as fh:
        fh.write(",".join(SCHEDULE_HEADER) + "\n")
        for iv in schedule.intervals:
            target = iv.target if isinstance(iv.target, str) else f"{iv.target:.6g}"
            fh.write(f"{iv.t_start:.6g},{iv.t_end:.6g},{target}\n")


def write_gripper_trajectory_csv(dest: Destination, trajectory: GripperTrajectory) -> None:
    """Write `t_h,finger,tip_x_mm,tip_y_mm,heading_rad` rows (LF, 6 sig digits)."""
    with open_out(dest) as fh:
        fh.write(",".join(GRIPPER_TRAJECTORY_HEADER) + "\n")
        for k, t in enumerate(trajectory.t):
            for i in range(len(trajectory.fingers)):
                fh.write(
                    f"{t:.6g},{i},{trajectory.tip_x[i, k]:.6g},"
                    f"{trajectory.tip_y[i, k]:.6g},{trajectory.heading[i, k]:.6g}\n"
                )


def write_events_csv(dest: Destination, events: Sequence[GripperEvent]) -> None:
    """Write `t_h,kind` event rows (LF, 6 sig digits)."""
    with open_out(dest) as fh:
        fh.write(",".join(EVENTS_HEADER) + "\n")
        for e in events:
            fh.write(f"{e.t:.6g},{e.kind}\n")


def read_events_csv(path: str | Path) -> list[GripperEvent]:
    """Read rows written by :func:`write_events_csv`."""
    path = Path(path)
    try:
        with path.open(newline="", encoding="utf-8") as fh:
            rows = [row for row in csv.reader(fh) if row and not row[0].startswith("#")]
    except OSError as exc:
        raise InputError(f"cannot read events CSV {path}: {exc}") from exc
    if not rows or tuple(h.strip() for h in rows[0]) != EVENTS_HEADER:
        raise InputError(f"events CSV {path} must start with header {','.join(EVENTS_HEADER)}")
    events = []
    for lineno, row in enumerate(rows[1:], start=2):
        try:
            kind = row[1].strip()
            if kind not in ("grasp", "release"):
                raise ValueError(f"unknown event kind {kind!r}")
            events.append(GripperEvent(t=float(row[0]), kind=kind))
        except (ValueError, IndexError) as exc:
            raise InputError(f"{path}:{lineno}: bad event row {row!r}") from exc
    return events
