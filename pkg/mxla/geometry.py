"""
Array layout, exact element/module distances and propagation-region boundaries.

The array lies on the y-axis, symmetric about the origin. Element (n, m) sits at
y = (nΓ + m)d with n, m on the symmetric grids {-(K-1)/2, ..., (K-1)/2}; a point
q = [r cosθ, r sinθ] is described by its distance r from the array centre and
its angle θ from the broadside x-axis.
"""

import logging
import math

import numpy as np

from errors import DomainError, InvalidIndexError, SingularGeometryError
from models import ArrayConfig, ElementIndex, PolarPoint, Regime, RegionReport

logger = logging.getLogger(__name__)

INDEX_TOLERANCE = 1e-9


def _check_grid_index(value: float, count: int, label: str):
    offset = value + (count - 1) / 2
    if not (-INDEX_TOLERANCE <= offset <= count - 1 + INDEX_TOLERANCE) or abs(offset - round(offset)) > INDEX_TOLERANCE:
        raise InvalidIndexError(
            f"{label} index {value} is not on the symmetric grid of {count} "
            f"(-{(count - 1) / 2} .. {(count - 1) / 2}, unit step)"
        )


def validate_index(config: ArrayConfig, idx: ElementIndex):
    _check_grid_index(idx.module, config.num_modules, "module")
    _check_grid_index(idx.antenna, config.antennas_per_module, "antenna")


# ============================================================
# POSITIONS
# ============================================================

def element_position(config: ArrayConfig, idx: ElementIndex) -> float:
    """y_{n,m} = (nΓ + m)d"""
    validate_index(config, idx)
    return (idx.module * config.module_separation_factor + idx.antenna) * config.element_spacing


def element_positions(config: ArrayConfig) -> np.ndarray:
    """All y_{n,m}, module-major."""
    n = config.module_indices[:, None]
    m = config.antenna_indices[None, :]
    return ((n * config.module_separation_factor + m) * config.element_spacing).ravel()


def module_positions(config: ArrayConfig) -> np.ndarray:
    """Module centres y_n = nΓd (the virtual centre when M is even)."""
    return config.module_indices * config.module_separation_factor * config.element_spacing


# ============================================================
# DISTANCES AND LOCAL ANGLES
# ============================================================

def _distance_to(point: PolarPoint, y):
    # |q - w| for w = [0, y]; algebraically sqrt(r² - 2ry sinθ + y²)
    x_q, y_q = point.cartesian
    return np.hypot(x_q, y_q - y)


def element_distance(config: ArrayConfig, idx: ElementIndex, point: PolarPoint) -> float:
    return float(_distance_to(point, element_position(config, idx)))


def element_distances(config: ArrayConfig, point: PolarPoint) -> np.ndarray:
    return _distance_to(point, element_positions(config))


def module_reference_distance(config: ArrayConfig, n: float, point: PolarPoint) -> float:
    _check_grid_index(n, config.num_modules, "module")
    return float(_distance_to(point, n * config.module_separation_factor * config.element_spacing))


def module_reference_distances(config: ArrayConfig, point: PolarPoint) -> np.ndarray:
    return _distance_to(point, module_positions(config))


def _local_sines(point: PolarPoint, y_n: np.ndarray, r_n: np.ndarray) -> np.ndarray:
    if np.any(r_n == 0):
        raise SingularGeometryError(f"point {point} coincides with a module reference element")
    sines = np.clip((point.distance * point.sin - y_n) / r_n, -1.0, 1.0)
    # the centre module sees the array angle itself
    return np.where(y_n == 0, point.sin, sines)


def module_local_angle(config: ArrayConfig, n: float, point: PolarPoint) -> float:
    """sinθ_n = (r sinθ - y_n) / r_n"""
    _check_grid_index(n, config.num_modules, "module")
    y_n = np.array([n * config.module_separation_factor * config.element_spacing])
    return float(_local_sines(point, y_n, _distance_to(point, y_n))[0])


def module_local_angles(config: ArrayConfig, point: PolarPoint) -> np.ndarray:
    y_n = module_positions(config)
    return _local_sines(point, y_n, _distance_to(point, y_n))


# ============================================================
# PROPAGATION REGIONS
# ============================================================

def region_boundaries(config: ArrayConfig) -> RegionReport:
    S = config.module_aperture
    D = config.total_aperture
    lam = config.wavelength
    return RegionReport(
        amplitude_uniform_bound=1.2 * D,
        module_rayleigh=2 * S ** 2 / lam,
        extended_far_field_bound=max(5 * D, 4 * S * D / lam),
        array_rayleigh=2 * D ** 2 / lam,
    )


def classify_region(config: ArrayConfig, r: float) -> RegionReport:
    """
    Finest-validity model for an observer at distance r.

    Windows are half-open [lower, upper) and checked far-to-near, so overlapping
    windows resolve to the farthest model whose lower bound r has reached:
    UPW at r >= 2D²/λ, common angle at r >= max{5D, 4SD/λ}, different angles at
    r >= max{2S²/λ, 1.2D}, plain USW at r >= 1.2D, NUSW below.
    """
    if not math.isfinite(r) or r <= 0:
        raise DomainError(f"distance must be positive and finite, got {r}")

    bounds = region_boundaries(config)
    if r >= bounds.array_rayleigh:
        regime = Regime.UPW_FAR_FIELD
    elif r >= bounds.extended_far_field_bound:
        regime = Regime.SUBARRAY_COMMON_ANGLE
    elif r >= bounds.module_rayleigh and r >= bounds.amplitude_uniform_bound:
        regime = Regime.SUBARRAY_DIFFERENT_ANGLES
    elif r >= bounds.amplitude_uniform_bound:
        regime = Regime.USW_EXACT
    else:
        regime = Regime.NUSW_REQUIRED

    logger.debug(f"r={r:.4g} m classified as {regime.value}")
    return RegionReport(
        amplitude_uniform_bound=bounds.amplitude_uniform_bound,
        module_rayleigh=bounds.module_rayleigh,
        extended_far_field_bound=bounds.extended_far_field_bound,
        array_rayleigh=bounds.array_rayleigh,
        regime=regime,
        distance=r,
    )


def common_angle_phase_error(config: ArrayConfig, point: PolarPoint) -> float:
    """
    Worst-case phase dropped by replacing every θ_n with θ:
    max over n, m of (2π/λ)|m d (sinθ_n - sinθ)|.
    """
    max_m = (config.antennas_per_module - 1) / 2
    if max_m == 0:
        return 0.0
    deviation = np.max(np.abs(module_local_angles(config, point) - point.sin))
    return float(config.wavenumber * max_m * config.element_spacing * deviation)
