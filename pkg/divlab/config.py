"""
Runtime configuration for divlab.

Settings come from three layers, later layers winning:

    1. dataclass defaults below
    2. a JSON file (config/divlab.json next to the package, or an explicit path)
    3. the DIVLAB_CAP environment variable, which overrides every enumeration cap

The CLI applies its own --cap flag on top through ``with_cap``.

Example:
    >>> cfg = load_config()
    >>> cfg.closure_cap
    1000000
"""

import json
import logging
import os
from dataclasses import asdict, dataclass, fields, replace
from pathlib import Path
from typing import Any, Dict, Optional, Union

from divlab.errors import ConfigError

logger = logging.getLogger(__name__)

DEFAULT_CONFIG_PATH = Path(__file__).resolve().parent.parent / "config" / "divlab.json"
CAP_ENV_VAR = "DIVLAB_CAP"

_LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


@dataclass(frozen=True)
class DivLabConfig:
    """Caps and defaults shared by every module."""
    closure_cap: int = 1_000_000
    max_group_order: int = 64
    max_modulus: int = 32
    cocycle_candidate_cap: int = 1 << 24
    thm22_cap: int = 10_000
    precision_cap: int = 1 << 14
    enumeration_log_cap: float = 30.0
    sweep_workers: int = 1
    float_digits: int = 12
    log_level: str = "WARNING"

    def validate(self) -> bool:
        """Validate configuration parameters"""
        for name in ("closure_cap", "max_group_order", "max_modulus",
                     "cocycle_candidate_cap", "thm22_cap", "precision_cap"):
            value = getattr(self, name)
            if not isinstance(value, int) or value < 1:
                raise ConfigError(f"{name} must be a positive integer, got {value!r}")

        if self.enumeration_log_cap <= 0:
            raise ConfigError("enumeration_log_cap must be positive")

        if self.sweep_workers < 1 or self.sweep_workers > 256:
            raise ConfigError("sweep_workers must be between 1 and 256")

        if self.float_digits < 1 or self.float_digits > 17:
            raise ConfigError("float_digits must be between 1 and 17")

        if self.log_level.upper() not in _LOG_LEVELS:
            raise ConfigError(f"log_level must be one of {', '.join(_LOG_LEVELS)}")

        return True

    def with_cap(self, cap: Optional[int]) -> "DivLabConfig":
        """Copy with every enumeration cap replaced by ``cap``."""
        if cap is None:
            return self
        if cap < 1:
            raise ConfigError(f"cap must be positive, got {cap}")
        return replace(
            self,
            closure_cap=cap,
            cocycle_candidate_cap=cap,
            thm22_cap=cap,
        )

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


def _read_json(path: Path) -> Dict[str, Any]:
    try:
        with open(path, "r", encoding="utf-8") as f:
            data = json.load(f)
    except json.JSONDecodeError as e:
        raise ConfigError(f"Invalid JSON in {path}: {e}")
    if not isinstance(data, dict):
        raise ConfigError(f"{path} must contain a JSON object")
    return data


def load_config(path: Optional[Union[str, Path]] = None,
                env: Optional[Dict[str, str]] = None) -> DivLabConfig:
    """
    Build the effective configuration.

    Args:
        path: explicit JSON file; defaults to config/divlab.json when present
        env: environment mapping (defaults to os.environ)

    Raises:
        ConfigError: unknown keys, bad values, unreadable file
    """
    env = os.environ if env is None else env
    known = {f.name for f in fields(DivLabConfig)}
    values: Dict[str, Any] = {}

    if path is not None:
        config_path = Path(path)
        if not config_path.exists():
            raise ConfigError(f"Config not found: {config_path}")
    else:
        config_path = DEFAULT_CONFIG_PATH

    if config_path.exists():
        data = _read_json(config_path)
        data.pop("$comment", None)
        unknown = set(data) - known
        if unknown:
            raise ConfigError(f"Unknown config keys in {config_path}: {sorted(unknown)}")
        values.update(data)
        logger.debug(f"Loaded config from {config_path}")

    config = DivLabConfig(**values)

    raw_cap = env.get(CAP_ENV_VAR)
    if raw_cap:
        try:
            cap = int(raw_cap)
        except ValueError:
            raise ConfigError(f"{CAP_ENV_VAR} must be an integer, got {raw_cap!r}")
        config = config.with_cap(cap)
        logger.info(f"{CAP_ENV_VAR}={cap} overrides enumeration caps")

    config.validate()
    return config
