import math

import numpy as np
import pytest
from pydantic import ValidationError

from conftest import WAVELENGTH, half_indices
from errors import DomainError, InvalidIndexError
from geometry import (
    classify_region,
    common_angle_phase_error,
    element_distance,
    element_distances,
    element_position,
    element_positions,
    module_local_angle,
    module_local_angles,
    module_reference_distance,
    region_boundaries,
)
from models import ArrayConfig, ElementIndex, PolarPoint, Regime


def _config(n, m, gamma, d=0.0628, lam=WAVELENGTH) -> ArrayConfig:
    return ArrayConfig(num_modules=n, antennas_per_module=m, module_separation_factor=gamma,
                       element_spacing=d, wavelength=lam)


# ============================================================
# CONFIG
# ============================================================

def test_config_rejects_gamma_below_m():
    with pytest.raises(ValidationError):
        _config(4, 4, 3.5)


def test_config_derived_quantities(fig4_config):
    assert fig4_config.normalized_spacing == pytest.approx(0.5)
    assert fig4_config.module_aperture == pytest.approx(0.1884)
    assert fig4_config.total_aperture == pytest.approx(25.4968)
    assert not fig4_config.is_collocated
    collocated = fig4_config.collocated()
    assert collocated.is_collocated
    assert collocated.total_aperture == pytest.approx((32 * 4 - 1) * 0.0628)


def test_single_module_aperture():
    config = _config(1, 5, 9)
    assert config.total_aperture == pytest.approx(config.module_aperture)


# ============================================================
# POSITIONS
# ============================================================

@pytest.mark.parametrize(
    "n_modules, m, gamma, idx, expected",
    [
        (4, 4, 13, ElementIndex(module=0.5, antenna=0.5), 0.4396),
        (3, 3, 13, ElementIndex(module=0, antenna=0), 0.0),
        (3, 3, 13, ElementIndex(module=1, antenna=1), 0.8792),
    ],
)
def test_element_position_examples(n_modules, m, gamma, idx, expected):
    assert element_position(_config(n_modules, m, gamma), idx) == pytest.approx(expected, abs=1e-12)


def test_element_position_symmetry(fig4_config):
    for n in half_indices(32):
        for m in half_indices(4):
            plus = element_position(fig4_config, ElementIndex(module=n, antenna=m))
            minus = element_position(fig4_config, ElementIndex(module=-n, antenna=-m))
            assert plus == -minus


def test_positions_are_module_major(fig3_config):
    expected = [element_position(fig3_config, ElementIndex(module=n, antenna=m))
                for n in half_indices(4) for m in half_indices(4)]
    np.testing.assert_allclose(element_positions(fig3_config), expected, rtol=0, atol=1e-15)


@pytest.mark.parametrize("idx", [ElementIndex(module=0, antenna=0.5), ElementIndex(module=2, antenna=0.5),
                                 ElementIndex(module=0.5, antenna=1.5 + 1)])
def test_invalid_index(fig3_config, idx):
    with pytest.raises(InvalidIndexError):
        element_position(fig3_config, idx)


# ============================================================
# DISTANCES
# ============================================================

def test_element_distance_broadside(fig4_config):
    point = PolarPoint(distance=200, angle=0)
    idx = ElementIndex(module=15.5, antenna=1.5)
    y = element_position(fig4_config, idx)
    assert element_distance(fig4_config, idx, point) == pytest.approx(math.sqrt(200 ** 2 + y ** 2), rel=1e-14)


def test_element_distance_euclidean(fig4_config):
    point = PolarPoint(distance=200, angle=math.pi / 6)
    idx = ElementIndex(module=15.5, antenna=1.5)
    y = element_position(fig4_config, idx)
    qx, qy = 200 * math.cos(math.pi / 6), 200 * math.sin(math.pi / 6)
    assert element_distance(fig4_config, idx, point) == pytest.approx(math.sqrt(qx ** 2 + (qy - y) ** 2), rel=1e-13)


def test_element_distance_matches_law_of_cosines(rng, make_config, make_point):
    for _ in range(1000):
        config = make_config(rng)
        point = make_point(rng)
        n = float(rng.choice(half_indices(config.num_modules)))
        m = float(rng.choice(half_indices(config.antennas_per_module)))
        y = (n * config.module_separation_factor + m) * config.element_spacing
        expected = math.sqrt(point.distance ** 2 - 2 * point.distance * y * point.sin + y ** 2)
        got = element_distance(config, ElementIndex(module=n, antenna=m), point)
        assert got == pytest.approx(expected, rel=1e-12)


def test_module_reference_distance(fig3_config):
    point = PolarPoint(distance=200, angle=0)
    assert module_reference_distance(fig3_config, 0.5, point) == pytest.approx(math.sqrt(200 ** 2 + 0.4082 ** 2))
    odd = _config(3, 3, 13)
    assert module_reference_distance(odd, 1, point) == element_distance(odd, ElementIndex(module=1, antenna=0), point)


def test_module_local_angle(fig4_config):
    point = PolarPoint(distance=200, angle=0)
    y_n = 15.5 * 13 * 0.0628
    assert module_local_angle(fig4_config, 15.5, point) == pytest.approx(-y_n / math.sqrt(200 ** 2 + y_n ** 2))
    tilted = PolarPoint(distance=200, angle=0.4)
    odd = _config(5, 3, 7)
    assert module_local_angle(odd, 0, tilted) == tilted.sin


def test_local_angles_converge_in_far_field(fig4_config):
    point = PolarPoint(distance=1e9, angle=0.3)
    np.testing.assert_allclose(module_local_angles(fig4_config, point), point.sin, atol=1e-7)


def test_fraunhofer_phase_criterion(rng, make_config):
    for _ in range(200):
        config = make_config(rng, n_range=(4, 9))
        bounds = region_boundaries(config)
        point = PolarPoint(distance=float(rng.uniform(1.05, 10)) * bounds.array_rayleigh,
                           angle=float(rng.uniform(-1.4, 1.4)))
        first_order = point.distance - element_positions(config) * point.sin
        assert np.max(np.abs(element_distances(config, point) - first_order)) <= config.wavelength / 16


# ============================================================
# REGIONS
# ============================================================

def test_region_boundaries_fig4(fig4_config):
    bounds = region_boundaries(fig4_config)
    assert bounds.amplitude_uniform_bound == pytest.approx(30.60, rel=5e-3)
    assert bounds.module_rayleigh == pytest.approx(0.5652, rel=1e-3)
    assert bounds.extended_far_field_bound == pytest.approx(152.98, rel=1e-3)
    assert bounds.array_rayleigh == pytest.approx(10351.3, rel=1e-3)
    assert bounds.regime is None


def test_region_boundaries_scale_with_aperture(fig3_config, fig4_config):
    small, large = region_boundaries(fig3_config), region_boundaries(fig4_config)
    assert small.amplitude_uniform_bound < large.amplitude_uniform_bound
    assert small.extended_far_field_bound < large.extended_far_field_bound
    assert small.array_rayleigh < large.array_rayleigh
    assert small.module_rayleigh == pytest.approx(large.module_rayleigh)


@pytest.mark.parametrize(
    "r, regime",
    [
        (0.5, Regime.NUSW_REQUIRED),
        (20.0, Regime.NUSW_REQUIRED),
        (100.0, Regime.SUBARRAY_DIFFERENT_ANGLES),
        (200.0, Regime.SUBARRAY_COMMON_ANGLE),
        (20000.0, Regime.UPW_FAR_FIELD),
    ],
)
def test_classify_region_fig4(fig4_config, r, regime):
    report = classify_region(fig4_config, r)
    assert report.regime is regime
    assert report.distance == r


def test_far_field_boundary_is_inclusive(fig4_config):
    edge = region_boundaries(fig4_config).array_rayleigh
    assert classify_region(fig4_config, edge).regime is Regime.UPW_FAR_FIELD


def test_usw_exact_window():
    # one long module: 2S²/λ lies far beyond 1.2D
    config = _config(1, 64, 64)
    bounds = region_boundaries(config)
    assert bounds.amplitude_uniform_bound < 100 < bounds.module_rayleigh
    assert classify_region(config, 100).regime is Regime.USW_EXACT


def test_classify_region_is_monotone(fig3_config, fig4_config):
    for config in (fig3_config, fig4_config, _config(1, 64, 64)):
        ranks = [classify_region(config, r).regime.rank for r in np.geomspace(0.01, 1e6, 400)]
        assert ranks == sorted(ranks)


@pytest.mark.parametrize("r", [0.0, -3.0, math.inf, math.nan])
def test_classify_region_rejects_bad_distance(fig4_config, r):
    with pytest.raises(DomainError):
        classify_region(fig4_config, r)


def test_boundary_ordering_guarantee(rng):
    for _ in range(200):
        m = int(rng.choice(range(5, 16, 2)))
        n = int(rng.choice(range(11, 42, 2)))
        config = _config(n, m, float(rng.uniform(m, 3 * m)), d=WAVELENGTH / 2)
        bounds = region_boundaries(config)
        assert bounds.module_rayleigh < bounds.extended_far_field_bound < bounds.array_rayleigh
        assert bounds.amplitude_uniform_bound < bounds.array_rayleigh


# ============================================================
# COMMON-ANGLE PHASE ERROR
# ============================================================

def test_common_angle_error_single_module():
    assert common_angle_phase_error(_config(1, 5, 5), PolarPoint(distance=3, angle=0.7)) == 0.0


def test_common_angle_error_vanishes_far_away(fig4_config):
    assert common_angle_phase_error(fig4_config, PolarPoint(distance=1e9, angle=0.2)) < 1e-6


def test_common_angle_error_at_fig4_boundary(fig4_config):
    error = common_angle_phase_error(fig4_config, PolarPoint(distance=152.98, angle=0))
    assert error == pytest.approx(math.pi / 8, rel=0.02)
    assert error <= math.pi / 8 * 1.10


def test_common_angle_criterion(rng):
    for _ in range(200):
        m = int(rng.choice(range(5, 16, 2)))
        n = int(rng.choice(range(11, 42, 2)))
        config = _config(n, m, float(rng.uniform(m, 3 * m)), d=WAVELENGTH / 2)
        r = region_boundaries(config).extended_far_field_bound
        point = PolarPoint(distance=r, angle=float(rng.uniform(-1.4, 1.4)))
        assert common_angle_phase_error(config, point) <= math.pi / 8 * 1.10
