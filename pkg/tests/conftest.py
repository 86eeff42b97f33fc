import cmath
import math

import numpy as np
import pytest

from models import ArrayConfig, PolarPoint
from presets.figures import FIG3_ARRAY, FIG4_ARRAY

WAVELENGTH = 0.1256


@pytest.fixture
def fig3_config() -> ArrayConfig:
    return FIG3_ARRAY


@pytest.fixture
def fig4_config() -> ArrayConfig:
    return FIG4_ARRAY


@pytest.fixture
def rng():
    return np.random.default_rng(20240917)


@pytest.fixture
def make_config():
    """Random config factory: integer N, M in the given ranges, Γ in [M, 3M]."""

    def _make(rng, n_range=(1, 9), m_range=(1, 8), spacing_ratio=None, integer_gamma=False) -> ArrayConfig:
        n = int(rng.integers(n_range[0], n_range[1] + 1))
        m = int(rng.integers(m_range[0], m_range[1] + 1))
        gamma = float(rng.integers(m, 3 * m + 1)) if integer_gamma else float(rng.uniform(m, 3 * m))
        ratio = spacing_ratio if spacing_ratio is not None else float(rng.uniform(0.25, 1.0))
        return ArrayConfig(num_modules=n, antennas_per_module=m, module_separation_factor=gamma,
                           element_spacing=ratio * WAVELENGTH, wavelength=WAVELENGTH)

    return _make


@pytest.fixture
def make_point():
    def _make(rng, r_range=(5.0, 2000.0), max_angle=1.3) -> PolarPoint:
        return PolarPoint(distance=float(rng.uniform(*r_range)), angle=float(rng.uniform(-max_angle, max_angle)))

    return _make


# ============================================================
# BRUTE-FORCE ORACLES (plain loops, independent of the numpy paths)
# ============================================================

def half_indices(count):
    return [i - (count - 1) / 2 for i in range(count)]


def oracle_distance(r, theta, y):
    # law-of-cosines form, not the hypot used by the library
    return math.sqrt(r * r - 2 * r * y * math.sin(theta) + y * y)


def oracle_vector(config: ArrayConfig, point: PolarPoint, model: str) -> list:
    k = 2 * math.pi / config.wavelength
    d = config.element_spacing
    gamma = config.module_separation_factor
    r, theta = point.distance, point.angle
    out = []
    for n in half_indices(config.num_modules):
        y_n = n * gamma * d
        r_n = oracle_distance(r, theta, y_n)
        sin_n = (r * math.sin(theta) - y_n) / r_n
        for m in half_indices(config.antennas_per_module):
            y = (n * gamma + m) * d
            if model == "USW":
                out.append(cmath.exp(-1j * k * oracle_distance(r, theta, y)))
            elif model == "NUSW":
                r_nm = oracle_distance(r, theta, y)
                out.append(r / r_nm * cmath.exp(-1j * k * r_nm))
            elif model == "UPW":
                out.append(cmath.exp(-1j * k * r) * cmath.exp(1j * k * y * math.sin(theta)))
            elif model == "SUBARRAY_DIFF":
                out.append(cmath.exp(-1j * k * r_n) * cmath.exp(1j * k * m * d * sin_n))
            elif model == "SUBARRAY_COMMON":
                out.append(cmath.exp(-1j * k * r_n) * cmath.exp(1j * k * m * d * math.sin(theta)))
            else:
                raise ValueError(model)
    return out


def oracle_gain(config: ArrayConfig, intended: PolarPoint, observed: PolarPoint, model: str) -> float:
    a = oracle_vector(config, intended, model)
    b = oracle_vector(config, observed, model)
    total = 0j
    for x, y in zip(a, b):
        total += x.conjugate() * y
    return abs(total) / (config.num_modules * config.antennas_per_module)


def oracle_dirichlet(count, spacing, delta):
    total = 0j
    for n in half_indices(count):
        total += cmath.exp(2j * math.pi * spacing * delta * n)
    return abs(total) / count
