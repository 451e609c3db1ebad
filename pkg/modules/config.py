"""
ImsetMind - Imset Toolkit for Graphical Models
License: GNU GPL v3

Run configuration: guards, output mode and seed, read from the
environment (a .env file is honoured) and overridable per call.
"""
import logging
import os
from dataclasses import dataclass, replace
from typing import Optional

from dotenv import find_dotenv, load_dotenv

from .errors import ConfigError

logger = logging.getLogger(__name__)

OUTPUT_MODES = ("text", "kv")
LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


@dataclass(frozen=True)
class RunConfig:
    max_universe: int = 10
    max_triangulations: int = 10_000
    max_product: int = 1_000_000
    output: str = "text"
    seed: Optional[int] = None
    log_level: str = "WARNING"
    results_dir: str = "results"

    def __post_init__(self):
        for name in ("max_universe", "max_triangulations", "max_product"):
            value = getattr(self, name)
            if not isinstance(value, int) or value <= 0:
                raise ConfigError(f"{name} must be a positive integer, got {value!r}")
        if self.output not in OUTPUT_MODES:
            raise ConfigError(f"output must be one of {OUTPUT_MODES}, got {self.output!r}")
        if self.log_level.upper() not in LOG_LEVELS:
            raise ConfigError(f"log level must be one of {LOG_LEVELS}, got {self.log_level!r}")

    @classmethod
    def from_env(cls, environ=None, dotenv: bool = True) -> "RunConfig":
        if environ is None:
            if dotenv:
                load_dotenv(find_dotenv(usecwd=True))
            environ = os.environ

        def integer(var, default):
            raw = environ.get(var)
            if raw is None or raw.strip() == "":
                return default
            try:
                return int(raw)
            except ValueError:
                raise ConfigError(f"{var}={raw!r} is not an integer") from None

        def positive(var, default):
            value = integer(var, default)
            if value <= 0:
                raise ConfigError(f"{var}={value} must be positive")
            return value

        return cls(
            max_universe=positive("IMSETMIND_MAX_UNIVERSE", cls.max_universe),
            max_triangulations=positive("IMSETMIND_MAX_TRIANGULATIONS", cls.max_triangulations),
            max_product=positive("IMSETMIND_MAX_PRODUCT", cls.max_product),
            output=environ.get("IMSETMIND_OUTPUT", cls.output).strip().lower() or cls.output,
            seed=integer("IMSETMIND_SEED", None),
            log_level=environ.get("IMSETMIND_LOG_LEVEL", cls.log_level).strip().upper() or cls.log_level,
            results_dir=environ.get("IMSETMIND_RESULTS_DIR", cls.results_dir),
        )

    def override(self, **changes) -> "RunConfig":
        """Copy with the non-None values of changes applied."""
        return replace(self, **{k: v for k, v in changes.items() if v is not None})
