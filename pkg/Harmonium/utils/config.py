import logging
import os
from dataclasses import dataclass, fields, replace
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, Mapping, Optional, Union

from .validation import ConfigError

logger = logging.getLogger(__name__)

CONFIG_ENV_VAR = "HARMONIUM_CONFIG"

REFERENCE_NOTE = Fraction(132)
REFERENCE_TIME = Fraction(4)
SAMPLE_RATE = 44100
DEFAULT_CADENCE_BUDGET = 10 ** 7
DEFAULT_CONSONANCE_BUDGET = 10 ** 7

_CONSTRUCTIONS = ("chain", "block")


@dataclass(frozen=True)
class Config:
    """
    Run-time settings shared by the library and the command line.

    Attributes:
        reference_note (Fraction): Frequency in Hz of pitch class 0.
        reference_time (Fraction): Seconds of a semibreve.
        sample_rate (int): WAV sample rate in Hz.
        cadence_budget (int): Largest number of harmonic words a cadence search may test.
        consonance_budget (int): Largest number of index vectors a consonance sum may visit.
        ramp_ms (float): Linear fade at both ends of each rendered event, 0 disables it.
        pyt_construction (str): "chain" or "block", how Pythagorean letters get frequencies.
    """
    reference_note: Fraction = REFERENCE_NOTE
    reference_time: Fraction = REFERENCE_TIME
    sample_rate: int = SAMPLE_RATE
    cadence_budget: int = DEFAULT_CADENCE_BUDGET
    consonance_budget: int = DEFAULT_CONSONANCE_BUDGET
    ramp_ms: float = 0.0
    pyt_construction: str = "chain"

    def __post_init__(self):
        self._validate()

    def _validate(self):
        for name in ("reference_note", "reference_time", "sample_rate",
                     "cadence_budget", "consonance_budget"):
            if not getattr(self, name) > 0:
                raise ConfigError(f"{name} must be positive, got {getattr(self, name)}")
        if self.ramp_ms < 0:
            raise ConfigError(f"ramp_ms must be non-negative, got {self.ramp_ms}")
        if self.pyt_construction not in _CONSTRUCTIONS:
            raise ConfigError(
                f"pyt_construction must be one of {_CONSTRUCTIONS}, got {self.pyt_construction!r}"
            )

    def with_overrides(self, **overrides: Any) -> "Config":
        """Returns a copy where every non-None override replaces the stored value."""
        values = {k: _coerce(k, v) for k, v in overrides.items() if v is not None}
        return replace(self, **values)


_PARSERS = {
    "reference_note": Fraction,
    "reference_time": Fraction,
    "sample_rate": int,
    "cadence_budget": int,
    "consonance_budget": int,
    "ramp_ms": float,
    "pyt_construction": str,
}


def _coerce(key: str, value: Any) -> Any:
    if key not in _PARSERS:
        raise ConfigError(f"unknown configuration key {key!r}")
    try:
        return _PARSERS[key](value.strip() if isinstance(value, str) else value)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"bad value {value!r} for {key}") from exc


def parse_config_text(text: str, source: str = "<string>") -> Dict[str, Any]:
    """
    Parses a flat ``key = value`` file.

    Blank lines and everything after ``#`` are ignored.

    Parameters:
    text : str
        Contents of the file.
    source : str
        Name used in error messages.

    Returns:
    Dict[str, Any]
        Typed values keyed by Config field name.
    """
    values: Dict[str, Any] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{source}:{lineno}: expected key = value, got {raw!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        key = key.replace("-", "_")
        try:
            values[key] = _coerce(key, value)
        except ConfigError as exc:
            raise ConfigError(f"{source}:{lineno}: {exc}") from exc
    return values


def load_config(path: Optional[Union[str, Path]] = None,
                environ: Optional[Mapping[str, str]] = None,
                overrides: Optional[Mapping[str, Any]] = None) -> Config:
    """
    Builds a Config from defaults, an optional file and explicit overrides.

    When ``path`` is None the file named by the HARMONIUM_CONFIG environment
    variable is read, if that variable is set.

    Parameters:
    path : str or Path, optional
        Configuration file to read.
    environ : Mapping[str, str], optional
        Environment to consult (default is os.environ).
    overrides : Mapping[str, Any], optional
        Values that win over the file; None entries are skipped.

    Returns:
    Config
        The merged configuration.
    """
    environ = os.environ if environ is None else environ
    if path is None and environ.get(CONFIG_ENV_VAR):
        path = environ[CONFIG_ENV_VAR]

    values: Dict[str, Any] = {}
    if path is not None:
        path = Path(path)
        try:
            text = path.read_text(encoding="utf-8")
        except OSError as exc:
            raise ConfigError(f"cannot read config file {path}: {exc}") from exc
        values.update(parse_config_text(text, source=str(path)))
        logger.info("loaded %d settings from %s", len(values), path)

    config = Config(**values)
    if overrides:
        config = config.with_overrides(**overrides)
    return config


def config_keys():
    """Names accepted in a configuration file."""
    return tuple(f.name for f in fields(Config))
