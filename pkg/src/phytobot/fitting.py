"""Estimate logistic growth parameters from a displacement time series.

The fitter is a small damped (Levenberg-Marquardt style) least-squares loop
with an analytic Jacobian: damping is raised multiplicatively on rejected
steps and lowered on accepted ones, and parameters are projected back onto
their invariants (r > 0, 0 < L0 < K) after every step.  Three well-scaled
parameters and a few hundred samples need nothing heavier.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

import numpy as np

from ._io import Destination, open_out
from .errors import InputError
from .growth import GrowthParams, GrowthSample, length_at, time_grid

__all__ = [
    "FitOptions",
    "FitReport",
    "fit_logistic",
    "synth_series",
    "read_samples_csv",
    "write_samples_csv",
]

_EPS = 1e-9
_DAMPING_UP = 10.0
_DAMPING_DOWN = 10.0
_DAMPING_MAX = 1e12

SAMPLES_HEADER = ("t_h", "length_mm")


@dataclass(frozen=True)
class FitOptions:
    """Termination and damping controls for :func:`fit_logistic`."""

    max_iterations: int = 200
    step_tolerance: float = 1e-8
    damping_init: float = 1e-3

    def __post_init__(self) -> None:
        if self.max_iterations <= 0:
            raise InputError("max_iterations must be positive")
        if not (math.isfinite(self.step_tolerance) and self.step_tolerance > 0):
            raise InputError("step_tolerance must be positive and finite")
        if not (math.isfinite(self.damping_init) and self.damping_init > 0):
            raise InputError("damping_init must be positive and finite")


@dataclass(frozen=True)
class FitReport:
    """Recovered parameters plus residual diagnostics.

    residuals[i] = observed length - modelled length at sample i, in mm;
    rmse = sqrt(mean(residuals**2)).  converged is True only when the last
    accepted parameter step fell below step_tolerance (relative).
    """

    params: GrowthParams
    rmse: float
    iterations: int
    converged: bool
    residuals: np.ndarray = field(repr=False)


def _model(p: np.ndarray, t: np.ndarray) -> np.ndarray:
    r, K, L0 = p
    value = K / (1.0 + ((K - L0) / L0) * np.exp(-r * t))
    return np.where(t == 0.0, L0, value)


def _jacobian(p: np.ndarray, t: np.ndarray) -> np.ndarray:
    r, K, L0 = p
    E = np.exp(-r * t)
    A = (K - L0) / L0
    D = 1.0 + A * E
    d_r = K * A * t * E / D**2
    d_K = 1.0 / D - K * E / (L0 * D**2)
    d_L0 = K**2 * E / (L0**2 * D**2)
    return np.column_stack([d_r, d_K, d_L0])


def _project(p: np.ndarray) -> np.ndarray:
    r, K, L0 = p
    r = max(r, _EPS)
    K = max(K, _EPS)
    L0 = min(max(L0, _EPS * K), K * (1.0 - 1e-12))
    return np.array([r, K, L0])


def _initial_guess(t: np.ndarray, y: np.ndarray) -> np.ndarray:
    K = 1.05 * float(np.max(y))
    while np.any(y >= K):
        K *= 1.5
    L0 = float(y[np.argmin(t)])
    # The logit of L/K is linear in t with slope r.
    z = np.log(y / (K - y))
    slope = float(np.polyfit(t, z, 1)[0])
    r = slope if slope > 0 else 1.0 / (float(np.ptp(t)) + _EPS)
    return _project(np.array([r, K, L0]))


def _validate_samples(samples: Sequence[GrowthSample]) -> tuple[np.ndarray, np.ndarray]:
    if len(samples) < 4:
        raise InputError(f"need at least 4 samples to fit 3 parameters, got {len(samples)}")
    t = np.array([s.t for s in samples], dtype=float)
    y = np.array([s.length for s in samples], dtype=float)
    if not (np.all(np.isfinite(t)) and np.all(np.isfinite(y))):
        raise InputError("samples contain non-finite values")
    if np.any(y <= 0):
        raise InputError("all sample lengths must be > 0")
    if len(np.unique(t)) < 3:
        raise InputError("need at least 3 distinct sample times")
    if np.ptp(y) == 0.0:
        raise InputError("constant-length series cannot constrain growth parameters")
    return t, y


def fit_logistic(
    samples: Sequence[GrowthSample],
    options: FitOptions | None = None,
    init: GrowthParams | None = None,
) -> FitReport:
    """Fit the logistic growth law to a displacement series.

    Minimizes the sum of squared length residuals by damped least squares.
    Initialization (unless ``init`` is given): K from 1.05 * max length
    (inflated by 1.5x while any sample still exceeds it), L0 from the
    earliest sample, r from a linear regression of the logit ln(L/(K-L))
    against t.

    Parameters
    ----------
    samples : sequence of GrowthSample
        At least 4 samples with 3 distinct times, all lengths positive.
    options : FitOptions, optional
        Iteration cap, step tolerance and initial damping.
    init : GrowthParams, optional
        Warm start; replaces the initialization heuristics.

    Returns
    -------
    FitReport
        Fitted parameters and residual diagnostics.  Non-convergence
        within ``max_iterations`` is reported via ``converged=False``,
        not raised.

    Raises
    ------
    InputError
        Too few samples, non-finite data, non-positive lengths, or a
        constant-length series.
    """
    opts = options or FitOptions()
    t, y = _validate_samples(samples)

    if init is not None:
        p = _project(np.array([init.r, init.K, init.L0]))
    else:
        p = _initial_guess(t, y)
    residuals = y - _model(p, t)
    sse = float(residuals @ residuals)

    damping = opts.damping_init
    converged = False
    iterations = 0
    while iterations < opts.max_iterations:
        iterations += 1
        J = _jacobian(p, t)
        JtJ = J.T @ J
        gradient = J.T @ residuals
        scale = np.diag(np.diag(JtJ))
        try:
            step = np.linalg.solve(JtJ + damping * scale, gradient)
        except np.linalg.LinAlgError:
            damping *= _DAMPING_UP
            continue
        p_new = _project(p + step)
        residuals_new = y - _model(p_new, t)
        sse_new = float(residuals_new @ residuals_new)
        if sse_new < sse:
            relative_step = float(np.linalg.norm(p_new - p) / (np.linalg.norm(p) + _EPS))
            p, residuals, sse = p_new, residuals_new, sse_new
            damping = max(damping / _DAMPING_DOWN, 1e-12)
            if relative_step < opts.step_tolerance:
                converged = True
                break
        else:
            damping *= _DAMPING_UP
            if damping > _DAMPING_MAX:
                break

    return FitReport(
        params=GrowthParams(r=float(p[0]), K=float(p[1]), L0=float(p[2])),
        rmse=float(np.sqrt(sse / len(y))),
        iterations=iterations,
        converged=converged,
        residuals=residuals,
    )


def synth_series(
    params: GrowthParams,
    dt: float,
    t_end: float,
    noise_amp: float = 0.0,
    seed: int = 0,
) -> list[GrowthSample]:
    """Generate a sampled growth series, optionally with seeded noise.

    Samples the growth law on :func:`phytobot.growth.time_grid` and adds
    uniform noise in [-noise_amp, +noise_amp] mm from a deterministic
    generator.  Lengths are floored at 1e-9 mm so samples stay valid even
    under large noise.  noise_amp = 0 reproduces length_at exactly.
    """
    if not (math.isfinite(noise_amp) and noise_amp >= 0):
        raise InputError(f"noise amplitude must be >= 0, got {noise_amp!r}")
    try:
        grid = time_grid(dt, t_end)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    lengths = np.asarray(length_at(params, grid), dtype=float)
    if noise_amp > 0:
        rng = np.random.default_rng(seed)
        lengths = lengths + rng.uniform(-noise_amp, noise_amp, size=lengths.shape)
        lengths = np.maximum(lengths, 1e-9)
    return [GrowthSample(t=float(t), length=float(L)) for t, L in zip(grid, lengths)]


def read_samples_csv(path: str | Path) -> list[GrowthSample]:
    """Read a displacement series from a `t_h,length_mm` CSV."""
    path = Path(path)
    try:
        with path.open(newline="", encoding="utf-8") as fh:
            rows = [row for row in csv.reader(fh) if row and not row[0].startswith("#")]
    except OSError as exc:
        raise InputError(f"cannot read samples CSV {path}: {exc}") from exc
    if not rows or tuple(h.strip() for h in rows[0]) != SAMPLES_HEADER:
        raise InputError(f"samples CSV {path} must start with header {','.join(SAMPLES_HEADER)}")
    samples = []
    for lineno, row in enumerate(rows[1:], start=2):
        try:
            t, length = (float(cell) for cell in row)
            samples.append(GrowthSample(t=t, length=length))
        except ValueError as exc:
            raise InputError(f"{path}:{lineno}: bad sample row {row!r}") from exc
    if not samples:
        raise InputError(f"samples CSV {path} contains no data rows")
    return samples


def write_samples_csv(dest: Destination, samples: Sequence[GrowthSample]) -> None:
    """Write a displacement series as a `t_h,length_mm` CSV (LF, 6 sig digits)."""
    with open_out(dest) as fh:
        fh.write(",".join(SAMPLES_HEADER) + "\n")
        for s in samples:
            fh.write(f"{s.t:.6g},{s.length:.6g}\n")
