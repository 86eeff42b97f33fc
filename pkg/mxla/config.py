import logging
from functools import lru_cache
from pathlib import Path

from pydantic import ValidationError
from pydantic_settings import BaseSettings, SettingsConfigDict

from errors import ConfigError
from models import ArrayConfig

logger = logging.getLogger(__name__)


class Settings(BaseSettings):
    """Runtime knobs, read from MXLA_* environment variables."""

    model_config = SettingsConfigDict(env_prefix="MXLA_")

    log_level: str = "INFO"
    default_steps: int = 2001
    sweep_workers: int = 4
    output_dir: Path = Path(".")


@lru_cache
def get_settings() -> Settings:
    return Settings()


# config-file key -> ArrayConfig field
CONFIG_KEYS = {
    "n_modules": "num_modules",
    "antennas_per_module": "antennas_per_module",
    "gamma": "module_separation_factor",
    "element_spacing_m": "element_spacing",
    "wavelength_m": "wavelength",
}


def parse_config_text(text: str, source: str = "<config>") -> ArrayConfig:
    """Parse flat `key = value` lines (with `#` comments) into an ArrayConfig."""
    values = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{source}:{lineno}: expected 'key = value', got {raw.strip()!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        if key not in CONFIG_KEYS:
            raise ConfigError(f"{source}:{lineno}: unknown key {key!r}")
        if CONFIG_KEYS[key] in values:
            raise ConfigError(f"{source}:{lineno}: duplicate key {key!r}")
        try:
            values[CONFIG_KEYS[key]] = float(value)
        except ValueError:
            raise ConfigError(f"{source}:{lineno}: {key} is not a number: {value!r}") from None

    missing = [key for key, field in CONFIG_KEYS.items() if field not in values]
    if missing:
        raise ConfigError(f"{source}: missing keys {', '.join(missing)}")

    for field in ("num_modules", "antennas_per_module"):
        if not values[field].is_integer():
            raise ConfigError(f"{source}: {field} must be an integer, got {values[field]}")
        values[field] = int(values[field])

    try:
        return ArrayConfig(**values)
    except ValidationError as e:
        raise ConfigError(f"{source}: invalid array configuration: {e}") from e


def load_config(path) -> ArrayConfig:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise ConfigError(f"cannot read config file {path}: {e}") from e
    config = parse_config_text(text, source=str(path))
    logger.info(f"Loaded array config from {path}: N={config.num_modules}, M={config.antennas_per_module}, "
                f"Γ={config.module_separation_factor}")
    return config
