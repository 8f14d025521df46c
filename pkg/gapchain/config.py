"""Pipeline configuration: defaults, optional YAML file and command-line overrides."""
from dataclasses import asdict, dataclass, fields, replace
from fractions import Fraction
from typing import Any, Dict, Optional, Union

from gapchain import log
from gapchain.exceptions import ConfigInvalidException
from gapchain.ff import is_prime
from gapchain.gapchain_globals import (
    BUDGET_ENUM,
    BUDGET_MATERIALIZE,
    BUDGET_ORACLE,
    DEFAULT_PRIME,
    MAX_RETRIES,
    MONTECARLO_TRIALS,
)
from gapchain.utilities import find_cfg_file, load_yaml_file

MODES = ("exact", "montecarlo")
PRODUCTS = ("walk", "tensor")
SEED_BITS = 64


def as_fraction(value: Union[int, float, str, Fraction]) -> Fraction:
    """Exact rational from a YAML/CLI value; floats go through their shortest repr."""
    if isinstance(value, float):
        return Fraction(repr(value))
    return Fraction(value)


@dataclass(frozen=True)
class PipelineConfig:
    seed: int = 0
    k: int = 2
    t: int = 1
    ell: Optional[int] = None
    p: int = DEFAULT_PRIME
    eps: Fraction = Fraction(1, 2)
    r: Optional[int] = None
    c_log_k: Fraction = Fraction(1)
    log_base: int = 2
    degree: int = 3
    budget_enum: int = BUDGET_ENUM
    budget_materialize: int = BUDGET_MATERIALIZE
    budget_oracle: int = BUDGET_ORACLE
    mode: str = "exact"
    trials: int = MONTECARLO_TRIALS
    max_retries: int = MAX_RETRIES
    workers: int = 1
    product: str = "walk"
    disperser_cap: bool = False

    def validate(self) -> "PipelineConfig":
        """Raise ConfigInvalidException on the first bad field; returns self."""
        if not 0 <= self.seed < 1 << SEED_BITS:
            raise ConfigInvalidException(f"seed must be a {SEED_BITS}-bit integer")
        for name in ("budget_enum", "budget_materialize", "budget_oracle", "trials"):
            if getattr(self, name) <= 0:
                raise ConfigInvalidException(f"{name} must be positive")
        if not is_prime(self.p):
            raise ConfigInvalidException(f"field size {self.p} is not prime")
        if not 0 < self.eps < 1:
            raise ConfigInvalidException(f"eps must lie in (0, 1), got {self.eps}")
        if self.t < 1:
            raise ConfigInvalidException("t must be at least 1")
        if self.k < 1:
            raise ConfigInvalidException("k must be at least 1")
        if self.ell is not None and self.ell < 1:
            raise ConfigInvalidException("ell must be positive")
        if self.r is not None and self.r < 1:
            raise ConfigInvalidException("r must be positive")
        if self.c_log_k <= 0 or self.log_base < 2:
            raise ConfigInvalidException("c_log_k must be positive and log_base at least 2")
        if self.degree < 1 or self.max_retries < 1 or self.workers < 1:
            raise ConfigInvalidException("degree, max_retries and workers must be positive")
        if self.mode not in MODES:
            raise ConfigInvalidException(f"mode must be one of {MODES}, got {self.mode!r}")
        if self.product not in PRODUCTS:
            raise ConfigInvalidException(f"product must be one of {PRODUCTS}")
        return self

    def as_dict(self) -> Dict[str, Any]:
        return asdict(self)


def _coerce(raw: Dict[str, Any], source: str) -> Dict[str, Any]:
    known = {f.name for f in fields(PipelineConfig)}
    unknown = sorted(set(raw) - known)
    if unknown:
        raise ConfigInvalidException(f"unknown configuration keys in {source}: {unknown}")
    out: Dict[str, Any] = {}
    for key, value in raw.items():
        if value is None:
            continue
        try:
            if key in ("eps", "c_log_k"):
                out[key] = as_fraction(value)
            elif key in ("mode", "product"):
                out[key] = str(value)
            elif key == "disperser_cap":
                if not isinstance(value, bool):
                    raise ValueError(value)
                out[key] = value
            else:
                out[key] = int(value)
        except (TypeError, ValueError, ZeroDivisionError):
            raise ConfigInvalidException(f"bad value for {key} in {source}: {value!r}")
    return out


def load(cfg_file: Optional[str] = None, **overrides: Any) -> PipelineConfig:
    """
    Defaults, then the YAML file (explicit path, GAPCHAIN_CFG, current directory, home
    directory), then `overrides`. Overrides set to None are ignored.
    """
    data: Dict[str, Any] = {}
    try:
        path = find_cfg_file(cfg_file)
    except IOError:
        if cfg_file:
            raise ConfigInvalidException(f"configuration file {cfg_file} not found")
        path = None
    if path is not None:
        raw = load_yaml_file(path) or {}
        if not isinstance(raw, dict):
            raise ConfigInvalidException(f"{path!r} does not hold a mapping")
        data.update(_coerce(raw, str(path)))
        log.debug(f"configuration loaded from {path!r}")
    data.update(_coerce({k: v for k, v in overrides.items() if v is not None}, "overrides"))
    return replace(PipelineConfig(), **data).validate()
