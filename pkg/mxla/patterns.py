"""
Beam-focusing gain between an intended focus (r', θ') and an observation point
(r, θ): the exact normalised inner product of two steering vectors, and the
closed forms it reduces to under the far-field and sub-array models.
"""

import logging
import math

import numpy as np
from numpy.typing import ArrayLike

from models import ArrayConfig, ClosedFormTerms, FocusSpec, Model, PatternKind
from geometry import module_local_angles, module_reference_distances
from special import dirichlet_kernel, fresnel_complex
from steering import steer

logger = logging.getLogger(__name__)

# |ν| below this is handled as a point on the intended distance ring
NU_EPSILON = 1e-14

DB_FLOOR_GAIN = 1e-5


def to_db(gain: ArrayLike):
    """20·log10 of an amplitude gain, floored at -100 dB."""
    db = 20 * np.log10(np.maximum(np.asarray(gain, dtype=float), DB_FLOOR_GAIN))
    if np.ndim(db) == 0:
        return float(db)
    return db


def pattern_exact(config: ArrayConfig, spec: FocusSpec, model: Model) -> float:
    """G = |a(r', θ')ᴴ a(r, θ)| / (MN) under one steering model."""
    intended = steer(config, spec.intended, model)
    observed = steer(config, spec.observed, model)
    return float(abs(np.vdot(intended.entries, observed.entries))) / config.num_elements


# ============================================================
# FAR FIELD
# ============================================================

def pattern_upw_closed(config: ArrayConfig, delta_theta: ArrayLike):
    """|H_{N,Γd̄}(Δθ)| · |H_{M,d̄}(Δθ)|; depends on Δθ only."""
    d_bar = config.normalized_spacing
    sparse = dirichlet_kernel(config.num_modules, config.module_separation_factor * d_bar, delta_theta)
    collocated = dirichlet_kernel(config.antennas_per_module, d_bar, delta_theta)
    return np.abs(sparse) * np.abs(collocated)


def pattern_collocated_closed(config: ArrayConfig, delta_theta: ArrayLike):
    """|H_{MN,d̄}(Δθ)|: the unbroken MN-element array with the same d and λ."""
    return np.abs(dirichlet_kernel(config.num_elements, config.normalized_spacing, delta_theta))


# ============================================================
# SUB-ARRAY MODELS
# ============================================================

def _module_phase_terms(config: ArrayConfig, spec: FocusSpec) -> np.ndarray:
    # e^{-j(2π/λ)(r_n - r'_n)} for every module
    delta_r = (module_reference_distances(config, spec.observed)
               - module_reference_distances(config, spec.intended))
    return np.exp(-1j * config.wavenumber * delta_r)


def pattern_subarray_diff(config: ArrayConfig, spec: FocusSpec) -> float:
    """(1/N)|Σ_n e^{-j(2π/λ)Δ_{r,n}} H_{M,d̄}(Δ_{θ,n})| with per-module angles."""
    delta_theta_n = module_local_angles(config, spec.observed) - module_local_angles(config, spec.intended)
    kernel = dirichlet_kernel(config.antennas_per_module, config.normalized_spacing, delta_theta_n)
    total = np.sum(_module_phase_terms(config, spec) * kernel)
    return float(abs(total)) / config.num_modules


def pattern_subarray_common(config: ArrayConfig, spec: FocusSpec) -> float:
    """(1/N)|Σ_n e^{-j(2π/λ)Δ_{r,n}}| · |H_{M,d̄}(Δθ)|"""
    sparse = abs(np.sum(_module_phase_terms(config, spec))) / config.num_modules
    collocated = abs(dirichlet_kernel(config.antennas_per_module, config.normalized_spacing, spec.delta_theta))
    return float(sparse * collocated)


# ============================================================
# FRESNEL CLOSED FORM
# ============================================================

def _nu(config: ArrayConfig, factor: float, delta_ring: float) -> float:
    return -math.pi * config.normalized_spacing * factor ** 2 * config.element_spacing * delta_ring


def closed_form_terms(config: ArrayConfig, spec: FocusSpec) -> ClosedFormTerms:
    """
    ν = -π d̄ Γ² d δ, μ = 2π d̄ Γ Δθ and δ = cos²θ/r - cos²θ'/r'.

    With them the sparse-factor sum is Σ_n e^{j(ν n² + μ n)} up to a global phase.
    """
    delta_ring = (spec.observed.cos ** 2 / spec.observed.distance
                  - spec.intended.cos ** 2 / spec.intended.distance)
    gamma = config.module_separation_factor
    return ClosedFormTerms(
        nu=_nu(config, gamma, delta_ring),
        mu=2 * math.pi * config.normalized_spacing * gamma * spec.delta_theta,
        delta_ring=delta_ring,
    )


def pattern_fresnel_closed(config: ArrayConfig, spec: FocusSpec) -> float:
    """
    Large-N approximation of the common-angle pattern:
    |F(A + B) + F(A - B)| / (√|ν| N) · |H_{M,d̄}(Δθ)| with A = √|ν|N/2, B = μ/(2√|ν|).

    A negative ν gives the conjugate integral with B negated; the magnitude is
    symmetric in B, so one expression covers both signs. Points on the intended
    distance ring (δ = 0) fall back to the far-field pattern.
    """
    terms = closed_form_terms(config, spec)
    if terms.delta_ring == 0 or abs(terms.nu) < NU_EPSILON:
        logger.debug(f"δ={terms.delta_ring:.3e}: distance-ring branch")
        return float(pattern_upw_closed(config, spec.delta_theta))

    root = math.sqrt(abs(terms.nu))
    a = root * config.num_modules / 2
    b = terms.mu / (2 * root)
    chirp = abs(np.sum(fresnel_complex([a + b, a - b]))) / (root * config.num_modules)
    collocated = abs(dirichlet_kernel(config.antennas_per_module, config.normalized_spacing, spec.delta_theta))
    return float(chirp * collocated)


def fresnel_alias_margin(config: ArrayConfig, spec: FocusSpec) -> float:
    """
    Largest per-module phase step of the sparse-factor chirp, in units of π:
    max(|νN + μ|, |νN - μ|) / π. The Fresnel form tracks the module sum only
    while this stays below 1.
    """
    terms = closed_form_terms(config, spec)
    edge = terms.nu * config.num_modules
    return max(abs(edge + terms.mu), abs(edge - terms.mu)) / math.pi


def same_direction_gain(config: ArrayConfig, r: float, r_prime: float, theta: float,
                        collocated: bool = False) -> float:
    """
    G₀ (modular) or G₁ (collocated, Γ -> M) along a fixed direction:
    |F(x)| / x with x = √|ν_r| N / 2.
    """
    if r == r_prime:
        return 1.0
    delta_ring = math.cos(theta) ** 2 * (1 / r - 1 / r_prime)
    factor = config.antennas_per_module if collocated else config.module_separation_factor
    nu = _nu(config, factor, delta_ring)
    if abs(nu) < NU_EPSILON:
        return 1.0
    x = math.sqrt(abs(nu)) * config.num_modules / 2
    return min(1.0, float(abs(fresnel_complex(x))) / x)


# ============================================================
# DISPATCH
# ============================================================

def evaluate(config: ArrayConfig, spec: FocusSpec, kind: PatternKind) -> float:
    kind = PatternKind(kind)
    if kind.steering_model is not None:
        return pattern_exact(config, spec, kind.steering_model)
    if kind is PatternKind.UPW_CLOSED:
        return float(pattern_upw_closed(config, spec.delta_theta))
    if kind is PatternKind.COLLOCATED_CLOSED:
        return float(pattern_collocated_closed(config, spec.delta_theta))
    if kind is PatternKind.SUBARRAY_DIFF_CLOSED:
        return pattern_subarray_diff(config, spec)
    if kind is PatternKind.SUBARRAY_COMMON_CLOSED:
        return pattern_subarray_common(config, spec)
    return pattern_fresnel_closed(config, spec)
