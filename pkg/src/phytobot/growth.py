"""Closed-form logistic growth kinetics.

A growing hypocotyl follows the bounded S-curve

    L(t) = K / (1 + ((K - L0) / L0) * exp(-r * t))

with intrinsic elongation rate ``r`` (1/h), length ceiling ``K`` (mm) and
initial length ``L0`` (mm).  Everything in this module is a pure function of
those three numbers: length, growth rate, the peak-rate point, and the
analytic inversion time-to-length.  Units are hours and millimetres
throughout; unit conversion to SI happens only in :mod:`phytobot.actuation`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, ParameterError

__all__ = [
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
]

ArrayLike = float | np.ndarray


@dataclass(frozen=True)
class GrowthParams:
    """Logistic triple (r, K, L0) defining a plant's length-vs-time law.

    r is the intrinsic elongation rate in 1/h, K the maximum length in mm,
    L0 the length at t = 0 in mm.  Requires r > 0, K > 0 and 0 < L0 < K,
    all finite.
    """

    r: float
    K: float
    L0: float

    def __post_init__(self) -> None:
        for name, value in (("r", self.r), ("K", self.K), ("L0", self.L0)):
            if not math.isfinite(value):
                raise ParameterError(f"growth parameter {name} must be finite, got {value!r}")
        if self.r <= 0:
            raise ParameterError(f"growth rate r must be > 0, got {self.r}")
        if self.K <= 0:
            raise ParameterError(f"length ceiling K must be > 0, got {self.K}")
        if not 0 < self.L0 < self.K:
            raise ParameterError(
                f"initial length L0 must satisfy 0 < L0 < K, got L0={self.L0}, K={self.K}"
            )


@dataclass(frozen=True)
class GrowthSample:
    """One displacement measurement: elapsed time in hours, length in mm."""

    t: float
    length: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.t) and self.t >= 0):
            raise ParameterError(f"sample time must be finite and >= 0, got {self.t!r}")
        if not (math.isfinite(self.length) and self.length > 0):
            raise ParameterError(f"sample length must be finite and > 0, got {self.length!r}")


@dataclass(frozen=True)
class PeakRate:
    """The fastest-growth point of a logistic curve.

    rate = r*K/4 in mm/h, reached at length K/2; time_at_peak is where the
    curve crosses that length.
    """

    rate: float
    length_at_peak: float
    time_at_peak: float


# Default parameter sets for the two cultivation environments.  r and K are
# the published fit values; L0 is not published and is the documented default
# obtained by inverting the growth law at the 40-hour anchor lengths
# (46.4 mm dark, 16.3 mm light).
DARK_GROWTH = GrowthParams(r=0.0792, K=105.0, L0=3.3865)
LIGHT_GROWTH = GrowthParams(r=0.0500, K=65.1, L0=2.8156)


def _check_times(t: np.ndarray) -> None:
    if not np.all(np.isfinite(t)):
        raise DomainError("time values must be finite")
    if np.any(t < 0):
        raise DomainError("time values must be >= 0")


def _maybe_scalar(value: np.ndarray, like) -> ArrayLike:
    if np.ndim(like) == 0:
        return float(value)
    return value


def length_at(params: GrowthParams, t: ArrayLike) -> ArrayLike:
    """Length in mm at elapsed time ``t`` hours (scalar or array).

    Strictly increasing in t, bounded in [L0, K); length_at(params, 0)
    returns L0 exactly.
    """
    t_arr = np.asarray(t, dtype=float)
    _check_times(t_arr)
    ratio = (params.K - params.L0) / params.L0
    value = params.K / (1.0 + ratio * np.exp(-params.r * t_arr))
    # The algebra only reproduces L0 at t=0 up to rounding: pin t=0 exactly
    # and clamp the lower bound (the curve never dips below L0 for t >= 0).
    value = np.where(t_arr == 0.0, params.L0, np.maximum(value, params.L0))
    return _maybe_scalar(value, t)


def rate_at(params: GrowthParams, t: ArrayLike) -> ArrayLike:
    """Growth rate dL/dt in mm/h at elapsed time ``t`` hours.

    Equals r * L * (1 - L/K), the derivative of the growth law.
    """
    length = np.asarray(length_at(params, t), dtype=float)
    value = params.r * length * (1.0 - length / params.K)
    return _maybe_scalar(value, t)


def peak_rate(params: GrowthParams) -> PeakRate:
    """The maximum-speed point: rate r*K/4 at length K/2.

    time_at_peak = ln((K - L0)/L0) / r, negative when L0 > K/2 (the curve
    started past its inflection)."""
    return PeakRate(
        rate=params.r * params.K / 4.0,
        length_at_peak=params.K / 2.0,
        time_at_peak=math.log((params.K - params.L0) / params.L0) / params.r,
    )


def time_to_length(params: GrowthParams, length: ArrayLike) -> ArrayLike:
    """Hours until the plant reaches ``length`` mm (analytic inversion).

    Defined for L0 < length < K only; inverse of :func:`length_at`.
    """
    L = np.asarray(length, dtype=float)
    if not np.all(np.isfinite(L)):
        raise DomainError("target length must be finite")
    if np.any(L <= params.L0) or np.any(L >= params.K):
        raise DomainError(
            f"target length must lie strictly inside (L0, K) = ({params.L0}, {params.K})"
        )
    ratio = (params.K - params.L0) / params.L0
    value = np.log(ratio * L / (params.K - L)) / params.r
    return _maybe_scalar(value, length)


def time_grid(dt: float, t_end: float) -> np.ndarray:
    """Sampling grid 0, dt, 2*dt, ... with t_end appended when off-grid.

    The final point is t_end itself unless it already coincides with the
    last multiple of dt (to within 1e-9 * dt), so the grid always covers
    [0, t_end] and never duplicates the endpoint.
    """
    if not (math.isfinite(dt) and dt > 0):
        raise DomainError(f"dt must be finite and > 0, got {dt!r}")
    if not (math.isfinite(t_end) and t_end > 0):
        raise DomainError(f"t_end must be finite and > 0, got {t_end!r}")
    n = int(math.floor(t_end / dt + 1e-9))
    grid = np.arange(n + 1, dtype=float) * dt
    if t_end - grid[-1] > 1e-9 * dt:
        grid = np.append(grid, t_end)
    return grid
