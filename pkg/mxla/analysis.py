import logging
import math
from typing import Optional

import numpy as np
from scipy.signal import find_peaks

from errors import DomainError, InsufficientDataError, UndefinedRingError
from models import ArrayConfig, LobeReport, PatternSweep, PolarPoint, SweepVariable
from patterns import pattern_upw_closed

logger = logging.getLogger(__name__)

# physical range of sinθ - sinθ'
VISIBLE_LIMIT = 2.0
DEFAULT_MIN_LEVEL = 0.05


# ============================================================
# ANALYTIC LOBE STRUCTURE
# ============================================================

def grating_period(config: ArrayConfig) -> float:
    """1/(Γd̄)"""
    return 1 / (config.module_separation_factor * config.normalized_spacing)


def default_min_separation(config: ArrayConfig) -> float:
    return grating_period(config) / 2


def resolution_compare(config: ArrayConfig) -> tuple[float, float]:
    """(2/(ΓNd̄), 2/(MNd̄)): modular vs collocated null-to-null width."""
    width = 2 / (config.num_modules * config.normalized_spacing)
    return width / config.module_separation_factor, width / config.antennas_per_module


def lobe_report_upw(config: ArrayConfig, k_max: int) -> LobeReport:
    """
    Main lobe and grating lobes of the far-field pattern. Lobe k sits at
    Δθ = k/(Γd̄) where the sparse factor is exactly 1, so its level is the
    collocated envelope |H_{M,d̄}| there. Lobes outside |Δθ| <= 2 are dropped.
    """
    if k_max < 0:
        raise DomainError(f"k_max must be >= 0, got {k_max}")

    period = grating_period(config)
    modular, _ = resolution_compare(config)
    lobes = []
    for k in range(-k_max, k_max + 1):
        location = k * period
        if abs(location) > VISIBLE_LIMIT:
            continue
        lobes.append((location, float(pattern_upw_closed(config, location))))

    return LobeReport(
        main_lobe_null_to_null=modular,
        angular_resolution_sparse=modular,
        angular_resolution_collocated_factor=2 / (config.antennas_per_module * config.normalized_spacing),
        grating_lobe_period=period,
        grating_lobes=lobes,
    )


def distance_ring(point: PolarPoint) -> float:
    """ξ = r / cos²θ; points with equal ξ have δ = 0."""
    if math.isclose(abs(point.angle), math.pi / 2, rel_tol=0, abs_tol=1e-12):
        raise UndefinedRingError(f"distance ring is undefined at θ = {point.angle:+.6f} rad (endfire)")
    return point.distance / point.cos ** 2


# ============================================================
# SAMPLED SWEEPS
# ============================================================

def _parabolic_vertex(x: np.ndarray, y: np.ndarray) -> tuple[float, float]:
    # vertex of y = a t² + b t + y1 through three samples, t = x - x1 (any spacing)
    (x0, x1, x2), (y0, y1, y2) = x, y
    t0, t2 = x0 - x1, x2 - x1
    denom = t0 * t2 * (t0 - t2)
    a = (t2 * (y0 - y1) - t0 * (y2 - y1)) / denom
    b = (t0 ** 2 * (y2 - y1) - t2 ** 2 * (y0 - y1)) / denom
    if a >= 0:
        return float(x1), float(y1)
    vertex = -b / (2 * a)
    if not t0 <= vertex <= t2:
        return float(x1), float(y1)
    return float(x1 + vertex), float(y1 - b ** 2 / (4 * a))


def sweep_peaks(sweep: PatternSweep, min_level: float = DEFAULT_MIN_LEVEL,
                min_separation: Optional[float] = None) -> list[tuple[float, float]]:
    """
    Local maxima of a sweep above `min_level`, refined by 3-point parabolic
    interpolation. Peaks closer than `min_separation` to a stronger kept peak
    are dropped. Returned by ascending location.

    `min_separation` defaults to half the grating period on Δθ sweeps and to 0
    on distance and angle sweeps, whose abscissae are not spatial frequencies.
    """
    x, y = sweep.x, sweep.gains
    if len(x) < 3:
        raise InsufficientDataError(f"peak search needs at least 3 samples, got {len(x)}")
    if min_separation is None:
        dtheta = sweep.spec.variable is SweepVariable.SPATIAL_FREQ_DIFF
        min_separation = default_min_separation(sweep.config) if dtheta else 0.0

    indices, _ = find_peaks(y, height=min_level)
    candidates = [_parabolic_vertex(x[i - 1:i + 2], y[i - 1:i + 2]) for i in indices]

    kept = []
    for location, level in sorted(candidates, key=lambda p: p[1], reverse=True):
        if all(abs(location - other) >= min_separation for other, _ in kept):
            kept.append((location, level))

    logger.debug(f"{sweep.name}: {len(indices)} local maxima, {len(kept)} kept")
    return sorted(kept)


def main_lobe_width(sweep: PatternSweep) -> float:
    """
    Null-to-null width around the strongest sample: distance between the first
    local minimum on each side. Sample resolution; no interpolation.
    """
    y = sweep.gains
    if len(y) < 3:
        raise InsufficientDataError(f"main lobe search needs at least 3 samples, got {len(y)}")

    top = int(np.argmax(y))
    left = top
    while left > 0 and y[left - 1] < y[left]:
        left -= 1
    right = top
    while right < len(y) - 1 and y[right + 1] < y[right]:
        right += 1
    if left == 0 or right == len(y) - 1:
        raise InsufficientDataError(f"{sweep.name}: main lobe is not bracketed by the sweep window")
    return float(sweep.x[right] - sweep.x[left])
