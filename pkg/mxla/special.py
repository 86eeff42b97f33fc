"""
Fresnel integrals and Dirichlet kernels.

Fresnel integrals use the unnormalised convention C(x) = ∫₀ˣ cos t² dt,
S(x) = ∫₀ˣ sin t² dt, F = C + jS. scipy implements the π/2-normalised pair
C_π(z) = ∫₀ᶻ cos(πt²/2) dt, so C(x) = √(π/2)·C_π(x√(2/π)) and likewise for S.
"""

import logging
import math

import numpy as np
from numpy.typing import ArrayLike
from scipy import special as sp

from errors import DomainError
from models import FresnelValue

logger = logging.getLogger(__name__)

_ARG_SCALE = math.sqrt(2 / math.pi)
_VALUE_SCALE = math.sqrt(math.pi / 2)

# F(x) -> (1 + j)·½√(π/2) as x -> +inf
FRESNEL_LIMIT = 0.5 * _VALUE_SCALE

# |sin(π d̃ Δ)| below this is treated as a kernel singularity
SINGULAR_WINDOW = 1e-9


def fresnel_integrals(x: ArrayLike) -> tuple[np.ndarray, np.ndarray]:
    """(C(x), S(x)) elementwise. Evaluated on |x| and sign-copied, so both are exactly odd."""
    x = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(x)):
        raise DomainError("Fresnel integrals need finite arguments")
    s_pi, c_pi = sp.fresnel(np.abs(x) * _ARG_SCALE)
    return np.copysign(_VALUE_SCALE * c_pi, x), np.copysign(_VALUE_SCALE * s_pi, x)


def fresnel_complex(x: ArrayLike) -> np.ndarray:
    """F(x) = C(x) + jS(x)"""
    c, s = fresnel_integrals(x)
    return c + 1j * s


def fresnel(x: float) -> FresnelValue:
    if not math.isfinite(x):
        raise DomainError(f"Fresnel integrals need a finite argument, got {x}")
    c, s = fresnel_integrals(x)
    c, s = float(c), float(s)
    return FresnelValue(c=c, s=s, f_magnitude=math.hypot(c, s))


def dirichlet_kernel(count: float, spacing: float, delta: ArrayLike):
    """
    H_{M̃,d̃}(Δ) = sin(πM̃d̃Δ) / (M̃ sin(πd̃Δ)), the normalised array factor of an
    M̃-element ULA with spacing d̃ wavelengths. Vectorised over `delta`.

    Singular points d̃Δ = k take their limit (-1)^{k(M̃-1)}. For integer counts the
    argument is first reduced to f = d̃Δ - k, |f| <= ½, which keeps the ratio
    accurate right next to the grating lobes.
    """
    if not count >= 1:
        raise DomainError(f"kernel count must be >= 1, got {count}")
    u = spacing * np.asarray(delta, dtype=float)

    if float(count).is_integer():
        k = np.round(u)
        f = u - k
        sign = np.where(np.mod(k * (count - 1), 2) == 0, 1.0, -1.0)
        numerator = np.sin(math.pi * count * f)
        denominator = np.sin(math.pi * f)
        limit = np.ones_like(u)
    else:
        sign = np.ones_like(u)
        numerator = np.sin(math.pi * count * u)
        denominator = np.sin(math.pi * u)
        limit = np.cos(math.pi * count * u) / np.cos(math.pi * u)

    singular = np.abs(denominator) < SINGULAR_WINDOW
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = numerator / (count * np.where(singular, 1.0, denominator))
    result = np.clip(sign * np.where(singular, limit, ratio), -1.0, 1.0)

    if np.ndim(result) == 0:
        return float(result)
    return result
