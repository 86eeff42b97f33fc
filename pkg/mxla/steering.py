"""
Steering/channel vectors of the modular ULA under the five channel models.

Entries are module-major: the M antennas of module n (m ascending), then module
n + 1. Vectors keep their absolute phases (including the e^{-jkr} term of the
plane-wave model); anything that compares two vectors works on phase differences.
"""

import logging
import math
from typing import Union

import numpy as np

from errors import NotFactorizableError, SingularGeometryError
from geometry import element_distances, module_local_angles, module_reference_distances
from models import ArrayConfig, ChannelParams, Model, PolarPoint, SteeringVector

logger = logging.getLogger(__name__)

RECONSTRUCTION_TOLERANCE = 1e-12

VectorLike = Union[SteeringVector, np.ndarray]


def _wrap(config: ArrayConfig, point: PolarPoint, model: Model, entries: np.ndarray) -> SteeringVector:
    return SteeringVector(
        entries=entries,
        model=model,
        source=point,
        num_modules=config.num_modules,
        antennas_per_module=config.antennas_per_module,
    )


# ============================================================
# FACTOR VECTORS
# ============================================================

def collocated_factor(config: ArrayConfig, sin_theta: float) -> np.ndarray:
    """b(θ) = [e^{j(2π/λ) m d sinθ}]_m, the M-element collocated far-field response."""
    return np.exp(1j * config.wavenumber * config.antenna_indices * config.element_spacing * sin_theta)


def sparse_far_field_factor(config: ArrayConfig, sin_theta: float) -> np.ndarray:
    """p(θ) = [e^{j(2π/λ) nΓd sinθ}]_n, the N-element sparse far-field response."""
    spacing = config.module_separation_factor * config.element_spacing
    return np.exp(1j * config.wavenumber * config.module_indices * spacing * sin_theta)


def sparse_near_field_factor(config: ArrayConfig, point: PolarPoint) -> np.ndarray:
    """e(r,θ) = [e^{-j(2π/λ) r_n}]_n, spherical phase at the module references."""
    return np.exp(-1j * config.wavenumber * module_reference_distances(config, point))


# ============================================================
# CONSTRUCTORS
# ============================================================

def steer_nusw(config: ArrayConfig, point: PolarPoint) -> SteeringVector:
    """Entries (r / r_{n,m}) e^{-j(2π/λ) r_{n,m}}: exact amplitude and phase."""
    distances = element_distances(config, point)
    if np.any(distances == 0):
        raise SingularGeometryError(f"point {point} coincides with an array element")
    entries = (point.distance / distances) * np.exp(-1j * config.wavenumber * distances)
    return _wrap(config, point, Model.NUSW, entries)


def channel_vector(config: ArrayConfig, point: PolarPoint, params: ChannelParams) -> np.ndarray:
    """h(r,θ) = (√β₀ / r) a(r,θ) with a the NUSW response."""
    scale = math.sqrt(params.reference_gain) / point.distance
    return scale * steer_nusw(config, point).entries


def steer_usw(config: ArrayConfig, point: PolarPoint) -> SteeringVector:
    """Entries e^{-j(2π/λ) r_{n,m}}: exact phase, uniform amplitude."""
    entries = np.exp(-1j * config.wavenumber * element_distances(config, point))
    return _wrap(config, point, Model.USW, entries)


def steer_upw(config: ArrayConfig, point: PolarPoint) -> SteeringVector:
    """e^{-j(2π/λ) r} p(θ) ⊗ b(θ); valid for r >= 2D²/λ but constructible anywhere."""
    entries = np.exp(-1j * config.wavenumber * point.distance) * np.kron(
        sparse_far_field_factor(config, point.sin), collocated_factor(config, point.sin)
    )
    return _wrap(config, point, Model.UPW, entries)


def steer_subarray_diff(config: ArrayConfig, point: PolarPoint) -> SteeringVector:
    """Block n: e^{-j(2π/λ) r_n} b(θ_n), exact r_n and per-module angle θ_n."""
    sines = module_local_angles(config, point)
    blocks = sparse_near_field_factor(config, point)[:, None] * np.exp(
        1j * config.wavenumber * config.element_spacing * np.outer(sines, config.antenna_indices)
    )
    return _wrap(config, point, Model.SUBARRAY_DIFF, blocks.ravel())


def steer_subarray_common(config: ArrayConfig, point: PolarPoint) -> SteeringVector:
    """e(r,θ) ⊗ b(θ): spherical across modules, planar (common angle) within."""
    entries = np.kron(sparse_near_field_factor(config, point), collocated_factor(config, point.sin))
    return _wrap(config, point, Model.SUBARRAY_COMMON, entries)


CONSTRUCTORS = {
    Model.NUSW: steer_nusw,
    Model.USW: steer_usw,
    Model.UPW: steer_upw,
    Model.SUBARRAY_DIFF: steer_subarray_diff,
    Model.SUBARRAY_COMMON: steer_subarray_common,
}


def steer(config: ArrayConfig, point: PolarPoint, model: Model) -> SteeringVector:
    return CONSTRUCTORS[Model(model)](config, point)


# ============================================================
# FACTORISATION & COMPARISON
# ============================================================

def reshaped_singular_ratio(v: SteeringVector) -> float:
    """σ₂/σ₁ of the N×M reshaping; 0 for a rank-1 (Kronecker) vector."""
    sv = np.linalg.svd(v.as_matrix(), compute_uv=False)
    if len(sv) < 2 or sv[0] == 0:
        return 0.0
    return float(sv[1] / sv[0])


def _centre_phase(row: np.ndarray) -> float:
    c = len(row) // 2
    if len(row) % 2:
        return float(np.angle(row[c]))
    # virtual centre between the two middle elements
    return float(np.angle(row[c - 1]) + np.angle(row[c] * np.conj(row[c - 1])) / 2)


def kronecker_factor(v: SteeringVector) -> tuple[np.ndarray, np.ndarray]:
    """
    Split a UPW or common-angle vector into (sparse factor, collocated factor),
    length N and M, with sparse ⊗ collocated == v. The collocated factor is
    normalised to zero phase at the module centre.
    """
    if v.model not in (Model.UPW, Model.SUBARRAY_COMMON):
        ratio = reshaped_singular_ratio(v)
        raise NotFactorizableError(
            f"{v.model.value} vectors are not Kronecker products (σ₂/σ₁ = {ratio:.3e})", ratio
        )

    matrix = v.as_matrix()
    row = matrix[int(np.argmax(np.linalg.norm(matrix, axis=1)))]
    collocated = row * np.exp(-1j * _centre_phase(row))
    collocated = collocated / np.abs(collocated)
    sparse = matrix @ np.conj(collocated) / v.antennas_per_module

    error = float(np.max(np.abs(np.kron(sparse, collocated) - v.entries)))
    if error > RECONSTRUCTION_TOLERANCE:
        ratio = reshaped_singular_ratio(v)
        raise NotFactorizableError(f"reconstruction error {error:.3e} (σ₂/σ₁ = {ratio:.3e})", ratio)
    logger.debug(f"{v.model.value} vector factored, reconstruction error {error:.2e}")
    return sparse, collocated


def phase_discrepancy(v1: VectorLike, v2: VectorLike) -> float:
    """
    Largest per-entry phase difference between two vectors once the global
    offset minimising it (mid-range of the wrapped differences) is removed.
    """
    e1 = v1.entries if isinstance(v1, SteeringVector) else np.asarray(v1)
    e2 = v2.entries if isinstance(v2, SteeringVector) else np.asarray(v2)
    diff = np.angle(e1 * np.conj(e2))
    relative = np.angle(np.exp(1j * (diff - diff[0])))
    offset = (relative.max() + relative.min()) / 2
    return float(np.max(np.abs(relative - offset)))
