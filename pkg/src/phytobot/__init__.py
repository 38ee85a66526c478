"""phytobot: growing plants as actuators.

Logistic growth kinetics and fitting, force-stroke actuation metrics, and
simulators for two growth-powered robots: a sprout-driven rolling rover and
a phototropic gripper.
"""

__version__ = "0.1.0"

from .actuation import (
    DARK_FORCE_PROFILE,
    LIGHT_FORCE_PROFILE,
    ForcePoint,
    ForceProfile,
    SeedSpec,
    end_force_from_energy,
    energy_density,
    force_at,
    power_density,
    read_profile_csv,
    write_profile_csv,
)
from .audit import DISCREPANCIES, format_notes
from .errors import DomainError, InputError, ParameterError, PhytobotError
from .fitting import (
    FitOptions,
    FitReport,
    fit_logistic,
    read_samples_csv,
    synth_series,
    write_samples_csv,
)
from .gripper import (
    Finger,
    GripperConfig,
    GripperEvent,
    GripperTrajectory,
    LedInterval,
    LedSchedule,
    bend_angle,
    default_gripper_config,
    default_led_schedule,
    simulate_gripper,
    tropism_step,
)
from .growth import (
    DARK_GROWTH,
    LIGHT_GROWTH,
    GrowthParams,
    GrowthSample,
    PeakRate,
    length_at,
    peak_rate,
    rate_at,
    time_grid,
    time_to_length,
)
from .rover import (
    EXHAUSTED,
    ROLLING,
    STALLED,
    RoverConfig,
    RoverState,
    default_rover_config,
    predict_displacement,
    rolling_resistance,
    simulate_rover,
    staggered_offsets,
    summarize_trajectory,
)

__all__ = [
    "__version__",
    # errors
    "PhytobotError",
    "ParameterError",
    "DomainError",
    "InputError",
    # growth kinetics
    "GrowthParams",
    "GrowthSample",
    "PeakRate",
    "DARK_GROWTH",
    "LIGHT_GROWTH",
    "length_at",
    "rate_at",
    "peak_rate",
    "time_to_length",
    "time_grid",
    # fitting
    "FitOptions",
    "FitReport",
    "fit_logistic",
    "synth_series",
    "read_samples_csv",
    "write_samples_csv",
    # actuation
    "ForcePoint",
    "ForceProfile",
    "SeedSpec",
    "DARK_FORCE_PROFILE",
    "LIGHT_FORCE_PROFILE",
    "force_at",
    "power_density",
    "energy_density",
    "end_force_from_energy",
    "read_profile_csv",
    "write_profile_csv",
    # rover
    "RoverConfig",
    "RoverState",
    "ROLLING",
    "STALLED",
    "EXHAUSTED",
    "rolling_resistance",
    "simulate_rover",
    "predict_displacement",
    "staggered_offsets",
    "default_rover_config",
    "summarize_trajectory",
    # gripper
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
    # audit
    "DISCREPANCIES",
    "format_notes",
]
