"""
Campaign configuration: defaults, an optional INI file and command-line
overrides, in that order of precedence.
"""

import configparser
import logging
import os
from dataclasses import dataclass, field, fields, replace
from typing import Dict, List, Optional, Tuple

from current import CurrentParams, HighestWeight, gauge_algebra
from errors import ConfigError, ParseError
from scalar import GaussianRational, ZERO, parse_scalar
from verify import CHECKS, ProbeSpec

logger = logging.getLogger(__name__)

# INI section -> {key: Config attribute}
SECTIONS: Dict[str, Dict[str, str]] = {
    'probe': {'N': 'N', 'deg': 'deg', 'freq': 'freq', 'D': 'D', 'W': 'W', 'seed': 'seed',
              'args': 'args', 'kmax': 'kmax', 'K': 'K', 'trials': 'trials', 'window': 'window',
              'draws': 'draws', 'max_pairs': 'max_pairs'},
    'module': {'kind': 'module', 'c': 'c', 'k0': 'k0', 'k1': 'k1', 'k2': 'k2', 'h': 'h', 'lambda': 'lam'},
    'gauge': {'algebra': 'gauge', 'level': 'level', 'g': 'g', 'gprime': 'gprime', 'mu': 'mu'},
    'checks': {'run': 'checks'},
    'output': {'out': 'out', 'timings': 'timings'},
}

INT_FIELDS = ('N', 'deg', 'freq', 'D', 'W', 'seed', 'args', 'kmax', 'K', 'trials', 'window', 'draws', 'max_pairs')
SCALAR_FIELDS = ('c', 'k0', 'k1', 'k2', 'h', 'lam', 'level')
LIST_FIELDS = ('g', 'gprime', 'mu')


@dataclass
class Config:
    N: int = 2
    deg: int = 2
    freq: int = 2
    D: int = 4
    W: int = 4
    seed: int = 0
    args: int = 2
    kmax: int = 50
    K: int = 2
    trials: int = 20
    window: int = 3
    draws: int = 5
    max_pairs: int = 0
    module: str = ''  # empty: verma when any module data is set, else trivial
    c: str = '0'
    k0: str = '0'
    k1: str = '0'
    k2: str = '0'
    h: str = '0'
    lam: str = '0'
    gauge: str = 'none'
    level: str = '0'
    g: str = ''
    gprime: str = ''
    mu: str = ''
    checks: List[str] = field(default_factory=list)
    out: Optional[str] = None
    timings: bool = False

    def scalar(self, name: str) -> GaussianRational:
        try:
            return parse_scalar(getattr(self, name))
        except ParseError as e:
            raise ConfigError(f"{name}: {e}") from e

    def scalars(self, name: str) -> Tuple[GaussianRational, ...]:
        text = getattr(self, name).strip()
        if not text:
            return ()
        try:
            return tuple(parse_scalar(part) for part in text.split(','))
        except ParseError as e:
            raise ConfigError(f"{name}: {e}") from e

    def current_params(self) -> CurrentParams:
        try:
            return CurrentParams(self.N, self.scalar('c'), self.scalar('k0'), self.scalar('k1'),
                                 self.scalar('k2'), self.scalar('level'), gauge_algebra(self.gauge),
                                 self.scalars('g'), self.scalars('gprime'))
        except ConfigError:
            raise
        except ValueError as e:
            raise ConfigError(str(e)) from e

    def module_kind(self) -> str:
        if self.module:
            return self.module
        data = [self.c, self.k0, self.k1, self.k2, self.h, self.lam, self.level, self.g, self.gprime, self.mu]
        given = any(value.strip() not in ('', '0') for value in data) or self.gauge not in ('none', '')
        return 'verma' if given else 'trivial'

    def probe_spec(self) -> ProbeSpec:
        params = self.current_params()
        mu = self.scalars('mu') or (ZERO,) * params.gauge.dim
        try:
            return ProbeSpec(N=self.N, deg=self.deg, freq=self.freq, D=self.D, W=self.W, params=params,
                             weight=HighestWeight(self.scalar('h'), self.scalar('lam'), mu),
                             module=self.module_kind(), seed=self.seed, args=self.args, kmax=self.kmax, K=self.K,
                             trials=self.trials, window=self.window, draws=self.draws, max_pairs=self.max_pairs)
        except ConfigError:
            raise
        except ValueError as e:
            raise ConfigError(str(e)) from e

    def validate(self):
        for name in self.checks:
            if name != 'all' and name not in CHECKS:
                raise ConfigError(f"unknown check {name!r}; known: all, {', '.join(CHECKS)}")
        if self.module not in ('', 'trivial', 'verma'):
            raise ConfigError(f"module must be trivial or verma, got {self.module!r}")
        self.probe_spec()


def _convert(name: str, value: str):
    if name in INT_FIELDS:
        try:
            return int(value)
        except ValueError:
            raise ConfigError(f"{name} must be an integer, got {value!r}")
    if name == 'checks':
        return [part.strip() for part in value.replace(' ', ',').split(',') if part.strip()]
    if name == 'timings':
        if value.strip().lower() in ('1', 'true', 'yes', 'on'):
            return True
        if value.strip().lower() in ('0', 'false', 'no', 'off', ''):
            return False
        raise ConfigError(f"timings must be a boolean, got {value!r}")
    return value.strip()


def load_file(path: str, config: Optional[Config] = None) -> Config:
    """Read an INI file over config; unknown sections and keys are rejected."""
    config = config or Config()
    if not os.path.exists(path):
        raise ConfigError(f"config file {path} not found")
    parser = configparser.ConfigParser()
    parser.optionxform = str
    try:
        parser.read(path)
    except configparser.Error as e:
        raise ConfigError(f"cannot parse {path}: {e}") from e
    updates = {}
    for section in parser.sections():
        if section not in SECTIONS:
            raise ConfigError(f"unknown section [{section}] in {path}")
        for key, value in parser.items(section):
            if key not in SECTIONS[section]:
                raise ConfigError(f"unknown key {key!r} in section [{section}] of {path}")
            name = SECTIONS[section][key]
            updates[name] = _convert(name, value)
    logger.info(f"Loaded {len(updates)} settings from {path}")
    return replace(config, **updates)


def apply_overrides(config: Config, overrides: Dict[str, object]) -> Config:
    """Command-line values override; None means not given."""
    known = {f.name for f in fields(Config)}
    updates = {}
    for name, value in overrides.items():
        if value is None:
            continue
        if name not in known:
            raise ConfigError(f"unknown setting {name!r}")
        updates[name] = value
    return replace(config, **updates)


def workers_from_env() -> int:
    """DIFFEXT_WORKERS, defaulting to one worker per CPU."""
    default = str(os.cpu_count() or 1)
    value = os.getenv('DIFFEXT_WORKERS', default).strip() or default
    try:
        workers = int(value)
    except ValueError:
        raise ConfigError(f"DIFFEXT_WORKERS must be an integer, got {value!r}")
    if workers < 1:
        raise ConfigError(f"DIFFEXT_WORKERS must be >= 1, got {workers}")
    return workers
