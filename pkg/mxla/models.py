import math
from dataclasses import dataclass, field
from enum import Enum
from typing import NamedTuple, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator


class Model(str, Enum):
    """Channel/steering models, nearest-field first."""
    NUSW = "NUSW"
    USW = "USW"
    SUBARRAY_DIFF = "SUBARRAY_DIFF"
    SUBARRAY_COMMON = "SUBARRAY_COMMON"
    UPW = "UPW"


UNIT_MAGNITUDE_MODELS = (Model.USW, Model.UPW, Model.SUBARRAY_DIFF, Model.SUBARRAY_COMMON)


class Regime(str, Enum):
    NUSW_REQUIRED = "NUSW_REQUIRED"
    USW_EXACT = "USW_EXACT"
    SUBARRAY_DIFFERENT_ANGLES = "SUBARRAY_DIFFERENT_ANGLES"
    SUBARRAY_COMMON_ANGLE = "SUBARRAY_COMMON_ANGLE"
    UPW_FAR_FIELD = "UPW_FAR_FIELD"

    @property
    def rank(self) -> int:
        # 0 = nearest field
        return list(Regime).index(self)


class PatternKind(str, Enum):
    """Ways to evaluate a beam-focusing gain: exact inner products or closed forms."""
    NUSW = "NUSW"
    USW = "USW"
    UPW = "UPW"
    SUBARRAY_DIFF = "SUBARRAY_DIFF"
    SUBARRAY_COMMON = "SUBARRAY_COMMON"
    UPW_CLOSED = "UPW_CLOSED"
    COLLOCATED_CLOSED = "COLLOCATED_CLOSED"
    SUBARRAY_DIFF_CLOSED = "SUBARRAY_DIFF_CLOSED"
    SUBARRAY_COMMON_CLOSED = "SUBARRAY_COMMON_CLOSED"
    FRESNEL_CLOSED = "FRESNEL_CLOSED"

    @property
    def steering_model(self) -> Optional[Model]:
        try:
            return Model(self.value)
        except ValueError:
            return None


class SweepVariable(str, Enum):
    SPATIAL_FREQ_DIFF = "dtheta"
    DISTANCE = "distance"
    ANGLE = "angle"


class FigureName(str, Enum):
    FIG3 = "FIG3"
    FIG4A = "FIG4A"
    FIG4B = "FIG4B"
    FIG4C = "FIG4C"


def symmetric_indices(count: int) -> np.ndarray:
    """{-(K-1)/2, ..., +(K-1)/2} with unit step; half-integers when K is even."""
    return np.arange(count, dtype=float) - (count - 1) / 2


# ============================================================
# ARRAY GEOMETRY
# ============================================================

class ArrayConfig(BaseModel):
    """Modular ULA: N modules of M elements, module references Γd apart."""

    model_config = ConfigDict(frozen=True)

    num_modules: int = Field(gt=0)
    antennas_per_module: int = Field(gt=0)
    module_separation_factor: float = Field(allow_inf_nan=False)
    element_spacing: float = Field(gt=0, allow_inf_nan=False)
    wavelength: float = Field(gt=0, allow_inf_nan=False)

    @model_validator(mode="after")
    def _check_separation(self):
        if self.module_separation_factor < self.antennas_per_module:
            raise ValueError(
                f"module_separation_factor ({self.module_separation_factor}) must be >= "
                f"antennas_per_module ({self.antennas_per_module})"
            )
        return self

    @property
    def normalized_spacing(self) -> float:
        return self.element_spacing / self.wavelength

    @property
    def wavenumber(self) -> float:
        return 2 * math.pi / self.wavelength

    @property
    def module_aperture(self) -> float:
        """S = (M-1)d"""
        return (self.antennas_per_module - 1) * self.element_spacing

    @property
    def total_aperture(self) -> float:
        """D = [(N-1)Γ + (M-1)]d"""
        return ((self.num_modules - 1) * self.module_separation_factor
                + (self.antennas_per_module - 1)) * self.element_spacing

    @property
    def num_elements(self) -> int:
        return self.num_modules * self.antennas_per_module

    @property
    def is_collocated(self) -> bool:
        return self.module_separation_factor == self.antennas_per_module

    @property
    def module_indices(self) -> np.ndarray:
        return symmetric_indices(self.num_modules)

    @property
    def antenna_indices(self) -> np.ndarray:
        return symmetric_indices(self.antennas_per_module)

    def collocated(self) -> "ArrayConfig":
        """Same N, M, d, λ with the gaps closed (Γ = M)."""
        return self.model_copy(update={"module_separation_factor": float(self.antennas_per_module)})


class ElementIndex(BaseModel):
    model_config = ConfigDict(frozen=True)

    module: float
    antenna: float


class PolarPoint(BaseModel):
    """Location (r, θ) in the array frame; θ from the array broadside (x-axis)."""

    model_config = ConfigDict(frozen=True)

    distance: float = Field(gt=0, allow_inf_nan=False)
    angle: float = Field(ge=-math.pi / 2, le=math.pi / 2, allow_inf_nan=False)

    @classmethod
    def from_degrees(cls, distance: float, degrees: float) -> "PolarPoint":
        return cls(distance=distance, angle=math.radians(degrees))

    @property
    def sin(self) -> float:
        return math.sin(self.angle)

    @property
    def cos(self) -> float:
        return math.cos(self.angle)

    @property
    def cartesian(self) -> tuple[float, float]:
        return self.distance * self.cos, self.distance * self.sin


@dataclass(frozen=True)
class RegionReport:
    amplitude_uniform_bound: float
    module_rayleigh: float
    extended_far_field_bound: float
    array_rayleigh: float
    regime: Optional[Regime] = None
    distance: Optional[float] = None


# ============================================================
# STEERING
# ============================================================

class ChannelParams(BaseModel):
    model_config = ConfigDict(frozen=True)

    reference_gain: float = Field(gt=0, allow_inf_nan=False)


@dataclass(frozen=True, eq=False)
class SteeringVector:
    """Length N·M response vector, module-major (all m of module n, n ascending)."""

    entries: np.ndarray
    model: Model
    source: PolarPoint
    num_modules: int
    antennas_per_module: int

    def __post_init__(self):
        if self.entries.shape != (self.num_modules * self.antennas_per_module,):
            raise ValueError(
                f"expected {self.num_modules * self.antennas_per_module} entries, got shape {self.entries.shape}"
            )
        self.entries.setflags(write=False)

    def __len__(self):
        return len(self.entries)

    def as_matrix(self) -> np.ndarray:
        """N×M view: row n holds module n."""
        return self.entries.reshape(self.num_modules, self.antennas_per_module)


# ============================================================
# SPECIAL FUNCTIONS / PATTERNS / ANALYSIS
# ============================================================

@dataclass(frozen=True)
class FresnelValue:
    c: float
    s: float
    f_magnitude: float


class FocusSpec(BaseModel):
    """Beam designed for `intended` (r', θ'), observed at `observed` (r, θ)."""

    model_config = ConfigDict(frozen=True)

    intended: PolarPoint
    observed: PolarPoint

    @property
    def delta_theta(self) -> float:
        return self.observed.sin - self.intended.sin

    @property
    def delta_r(self) -> float:
        return self.observed.distance - self.intended.distance


@dataclass(frozen=True)
class ClosedFormTerms:
    nu: float
    mu: float
    delta_ring: float


@dataclass(frozen=True)
class LobeReport:
    main_lobe_null_to_null: float
    angular_resolution_sparse: float
    angular_resolution_collocated_factor: float
    grating_lobe_period: float
    # (delta_theta, level_linear); k = 0 entry is the main lobe
    grating_lobes: list[tuple[float, float]] = field(default_factory=list)


# ============================================================
# SWEEPS
# ============================================================

class SweepSpec(BaseModel):
    model_config = ConfigDict(frozen=True)

    variable: SweepVariable
    start: float = Field(allow_inf_nan=False)
    stop: float = Field(allow_inf_nan=False)
    steps: int = Field(ge=2)
    fixed_focus: PolarPoint
    # used by SPATIAL_FREQ_DIFF and ANGLE; defaults to the focus distance
    fixed_observation_distance: Optional[float] = Field(default=None, gt=0)
    # used by DISTANCE; defaults to the focus angle
    fixed_observation_angle: Optional[float] = Field(default=None, ge=-math.pi / 2, le=math.pi / 2)

    @model_validator(mode="after")
    def _check_bounds(self):
        if not self.start < self.stop:
            raise ValueError(f"sweep start ({self.start}) must be below stop ({self.stop})")
        return self

    @property
    def observation_distance(self) -> float:
        return self.fixed_observation_distance or self.fixed_focus.distance

    @property
    def observation_angle(self) -> float:
        if self.fixed_observation_angle is None:
            return self.fixed_focus.angle
        return self.fixed_observation_angle

    def grid(self) -> np.ndarray:
        return np.linspace(self.start, self.stop, self.steps)


class SweepSample(NamedTuple):
    x: float
    gain_linear: float
    gain_db: float


@dataclass(frozen=True)
class PatternSweep:
    spec: SweepSpec
    model: PatternKind
    config: ArrayConfig
    samples: list[SweepSample]
    label: str = ""

    @property
    def name(self) -> str:
        return self.label or self.model.value

    @property
    def x(self) -> np.ndarray:
        return np.array([s.x for s in self.samples])

    @property
    def gains(self) -> np.ndarray:
        return np.array([s.gain_linear for s in self.samples])
