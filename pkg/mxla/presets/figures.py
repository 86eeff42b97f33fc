import logging
from dataclasses import dataclass, field
from typing import Optional

from pydantic import ValidationError

from config import get_settings
from errors import ConfigError
from models import ArrayConfig, FigureName, PatternKind, PolarPoint, SweepSpec, SweepVariable

logger = logging.getLogger(__name__)

WAVELENGTH_M = 0.1256
ELEMENT_SPACING_M = 0.0628  # λ/2
FOCUS = PolarPoint(distance=200.0, angle=0.0)

FIG3_ARRAY = ArrayConfig(num_modules=4, antennas_per_module=4, module_separation_factor=13,
                         element_spacing=ELEMENT_SPACING_M, wavelength=WAVELENGTH_M)
FIG4_ARRAY = ArrayConfig(num_modules=32, antennas_per_module=4, module_separation_factor=13,
                         element_spacing=ELEMENT_SPACING_M, wavelength=WAVELENGTH_M)

SPATIAL_FREQ_WINDOW = (-0.5, 0.5)
DISTANCE_WINDOW_M = (150.0, 1600.0)
FIG4C_OBSERVATION_M = 800.0

NEAR_FIELD_KINDS = [
    PatternKind.USW,
    PatternKind.SUBARRAY_DIFF_CLOSED,
    PatternKind.SUBARRAY_COMMON_CLOSED,
]


@dataclass(frozen=True)
class FigurePreset:
    name: FigureName
    modular: ArrayConfig
    sweep: SweepSpec
    kinds: list[PatternKind] = field(default_factory=list)

    @property
    def collocated(self) -> ArrayConfig:
        return self.modular.collocated()

    @property
    def configs(self) -> dict[str, ArrayConfig]:
        return {"modular": self.modular, "collocated": self.collocated}


def _spatial_freq_sweep(steps: int, observation_distance: Optional[float] = None) -> SweepSpec:
    return SweepSpec(
        variable=SweepVariable.SPATIAL_FREQ_DIFF,
        start=SPATIAL_FREQ_WINDOW[0],
        stop=SPATIAL_FREQ_WINDOW[1],
        steps=steps,
        fixed_focus=FOCUS,
        fixed_observation_distance=observation_distance,
    )


def figure_preset(name, steps: Optional[int] = None) -> FigurePreset:
    """Configuration, sweep window and pattern kinds of one published figure."""
    try:
        figure = FigureName(str(getattr(name, "value", name)).upper())
    except ValueError:
        raise ConfigError(f"unknown figure {name!r}; choose from {', '.join(f.value for f in FigureName)}") from None
    steps = steps if steps is not None else get_settings().default_steps
    try:
        preset = _build_preset(figure, steps)
    except ValidationError as e:
        raise ConfigError(f"invalid sweep for {figure.value}: {e}") from e

    logger.debug(f"{figure.value}: {len(preset.kinds)} kinds, {preset.sweep.variable.value} sweep")
    return preset


def _build_preset(figure: FigureName, steps: int) -> FigurePreset:
    if figure is FigureName.FIG3:
        preset = FigurePreset(figure, FIG3_ARRAY, _spatial_freq_sweep(steps),
                              [PatternKind.UPW, PatternKind.UPW_CLOSED])
    elif figure is FigureName.FIG4A:
        preset = FigurePreset(figure, FIG4_ARRAY, _spatial_freq_sweep(steps),
                              NEAR_FIELD_KINDS + [PatternKind.UPW_CLOSED])
    elif figure is FigureName.FIG4B:
        sweep = SweepSpec(
            variable=SweepVariable.DISTANCE,
            start=DISTANCE_WINDOW_M[0],
            stop=DISTANCE_WINDOW_M[1],
            steps=steps,
            fixed_focus=FOCUS,
        )
        preset = FigurePreset(figure, FIG4_ARRAY, sweep, NEAR_FIELD_KINDS + [PatternKind.FRESNEL_CLOSED])
    else:
        preset = FigurePreset(figure, FIG4_ARRAY, _spatial_freq_sweep(steps, FIG4C_OBSERVATION_M),
                              NEAR_FIELD_KINDS + [PatternKind.FRESNEL_CLOSED])
    return preset
