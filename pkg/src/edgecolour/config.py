"""
Engine and Run Configuration

Every tunable constant lives here:
- PartitionConfig: fixed-threshold engine (d, beta, level count k)
- GroupedConfig: level groups of size L with per-group caps 2^g
- RunSettings: harness defaults from environment or configs/edgecolour.env

Presets:
- default: d = 4 * alpha_max, beta = 5
- epsilon: d = ceil((2 + eps) * alpha_max), beta = 2 + 3 * eps
"""

import math
import os
from dataclasses import dataclass
from typing import Dict, Optional

from .errors import ConfigError

DEFAULT_BETA = 5.0
DEFAULT_CONFIG_PATH = os.path.join(
    os.path.dirname(__file__),
    '../../configs/edgecolour.env'
)


def _log2_ceil(n: int) -> int:
    """ceil(log2 n) for n >= 1."""
    return (n - 1).bit_length() if n > 1 else 0


def _resolve_beta(epsilon: Optional[float], beta: Optional[float]) -> float:
    if epsilon is not None and epsilon <= 0:
        raise ConfigError(f"epsilon must be > 0, got {epsilon}")
    if beta is None:
        beta = 2 + 3 * epsilon if epsilon is not None else DEFAULT_BETA
    if beta < 2:
        raise ConfigError(f"beta must be >= 2, got {beta}")
    return float(beta)


@dataclass(frozen=True)
class PartitionConfig:
    """Thresholds for the fixed-d engine."""
    capacity: int                 # declared vertex count n
    d: int                        # lower bound on down-degree
    beta: float                   # out-degree slack factor
    k: int                        # number of levels
    alpha_max: int
    delta_max: int = 0            # only sizes palettes
    epsilon: Optional[float] = None

    def __post_init__(self):
        if self.capacity < 1:
            raise ConfigError(f"capacity must be >= 1, got {self.capacity}")
        if self.d < 1:
            raise ConfigError(f"d must be >= 1, got {self.d}")
        if self.k < 1:
            raise ConfigError(f"k must be >= 1, got {self.k}")
        if self.beta < 2:
            raise ConfigError(f"beta must be >= 2, got {self.beta}")

    @property
    def out_bound(self) -> float:
        """
        Invariant 1 threshold: beta * d, with the unrounded (2 + eps) * alpha
        standing in for d under the epsilon preset.
        """
        if self.epsilon is not None:
            return self.beta * (2 + self.epsilon) * self.alpha_max
        return self.beta * self.d

    @property
    def colour_bound(self) -> float:
        """Worst colour the engine may hand out: delta_max + beta * d."""
        return self.delta_max + self.out_bound

    @classmethod
    def for_alpha(
        cls,
        capacity: int,
        alpha_max: int,
        delta_max: Optional[int] = None,
        epsilon: Optional[float] = None,
        beta: Optional[float] = None,
    ) -> "PartitionConfig":
        """Build the default or epsilon preset for a declared arboricity."""
        if alpha_max < 1:
            raise ConfigError(f"alpha_max must be >= 1, got {alpha_max}")
        if capacity < 1:
            raise ConfigError(f"capacity must be >= 1, got {capacity}")
        resolved_beta = _resolve_beta(epsilon, beta)

        if epsilon is None:
            d = 4 * alpha_max
            k = 1 + _log2_ceil(capacity)
        else:
            d = math.ceil((2 + epsilon) * alpha_max)
            shrink = math.log((2 + epsilon) / 2)
            k = 1 + math.ceil(math.log(capacity) / shrink) if capacity > 1 else 1

        return cls(
            capacity=capacity,
            d=d,
            beta=resolved_beta,
            k=k,
            alpha_max=alpha_max,
            delta_max=delta_max if delta_max is not None else 0,
            epsilon=epsilon,
        )


@dataclass(frozen=True)
class GroupedConfig:
    """Level groups for the arboricity-adaptive engine."""
    capacity: int
    group_size: int               # L
    groups: int                   # ceil(log2 n), at least 1
    beta: float
    epsilon: Optional[float] = None

    def __post_init__(self):
        if self.capacity < 1:
            raise ConfigError(f"capacity must be >= 1, got {self.capacity}")
        if self.group_size < 1 or self.groups < 1:
            raise ConfigError("group size and group count must be >= 1")
        if self.beta < 2:
            raise ConfigError(f"beta must be >= 2, got {self.beta}")

    @property
    def k(self) -> int:
        return self.group_size * self.groups

    def group_of(self, level: int) -> int:
        """ceil(level / L), clamped to [1, groups]."""
        if level < 1:
            raise ConfigError(f"levels start at 1, got {level}")
        return min(self.groups, -(-level // self.group_size))

    def cap(self, level: int) -> int:
        """d(v) for a vertex at this level."""
        return 2 ** self.group_of(level)

    @classmethod
    def for_capacity(
        cls,
        capacity: int,
        epsilon: Optional[float] = None,
        beta: Optional[float] = None,
    ) -> "GroupedConfig":
        if capacity < 1:
            raise ConfigError(f"capacity must be >= 1, got {capacity}")
        resolved_beta = _resolve_beta(epsilon, beta)
        log_n = _log2_ceil(capacity)
        if epsilon is None:
            group_size = 1 + log_n
        else:
            group_size = math.ceil(1 + (2 / epsilon) * math.log2(capacity))
        return cls(
            capacity=capacity,
            group_size=max(1, group_size),
            groups=max(1, log_n),
            beta=resolved_beta,
            epsilon=epsilon,
        )


@dataclass
class RunSettings:
    """Harness defaults. CLI flags override these."""
    beta: Optional[float] = None
    epsilon: Optional[float] = None
    verify_every: int = 100
    db_path: Optional[str] = None
    metrics_dir: Optional[str] = None


_ENV_KEYS = {
    'EDGECOLOUR_BETA': ('beta', float),
    'EDGECOLOUR_EPSILON': ('epsilon', float),
    'EDGECOLOUR_VERIFY_EVERY': ('verify_every', int),
    'EDGECOLOUR_DB_PATH': ('db_path', str),
    'EDGECOLOUR_METRICS_DIR': ('metrics_dir', str),
}


def _read_env_file(config_path: str) -> Dict[str, str]:
    """Parse KEY=value lines, skipping comments and an optional 'export '."""
    values = {}
    if not os.path.exists(config_path):
        return values
    with open(config_path) as f:
        for line in f:
            line = line.strip()
            if line and not line.startswith('#') and '=' in line:
                if line.startswith('export '):
                    line = line[7:]
                key, value = line.split('=', 1)
                values[key.strip()] = value.strip().strip('"').strip("'")
    return values


def load_settings(config_path: Optional[str] = None,
                  environ: Optional[Dict[str, str]] = None) -> RunSettings:
    """
    Resolve run settings.

    Environment variables win; the config file fills whatever is unset.
    """
    environ = os.environ if environ is None else environ
    file_values = _read_env_file(config_path or DEFAULT_CONFIG_PATH)

    settings = RunSettings()
    for key, (field_name, cast) in _ENV_KEYS.items():
        raw = environ.get(key) or file_values.get(key)
        if not raw:
            continue
        try:
            setattr(settings, field_name, cast(raw))
        except ValueError:
            raise ConfigError(f"{key}={raw!r} is not a valid {cast.__name__}")
    return settings
