# Validated payloads for solver runs: the key=value run file and the per-solver config
from typing import Literal, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from app import app
from app.Models.ProblemModel import BcMode, ProblemSpec, constant_coefficient, paper_coefficient
from app.Utils.errors import ConfigError

Scheme = Literal['ref', 'hmm', 'emm']
MacroUpdate = Literal['duhamel', 'direct']


def parse_coefficient(value):
    """'paper' (alias 'benchmark') or 'constant:<value>' to a DiffusionField."""
    value = value.strip()
    if value in ('paper', 'benchmark'):
        return paper_coefficient()
    kind, _, level = value.partition(':')
    try:
        level = float(level)
    except ValueError:
        level = None
    if kind != 'constant' or level is None:
        raise ConfigError(f"coeff must be 'paper' or 'constant:<value>', got {value!r}")
    return constant_coefficient(level)


def default_dt_factor(scheme):
    return app.config['REF_DT_FACTOR'] if scheme == 'ref' else app.config['MACRO_DT_FACTOR']


class SolverConfig(BaseModel):
    model_config = ConfigDict(extra='forbid')

    scheme: Scheme
    n_x: int = Field(ge=4)
    n_y: int = Field(default=16, ge=4)
    t_end: float = Field(gt=0.0)
    epsilon: float = Field(gt=0.0, le=1.0)
    # dt = dt_factor * dx**2
    dt_factor: Optional[float] = Field(default=None, gt=0.0)
    macro_update: MacroUpdate = 'duhamel'
    output_times: Tuple[float, ...] = ()

    @field_validator('n_y')
    @classmethod
    def even_cell_points(cls, value):
        if value % 2:
            raise ValueError('n_y must be even')
        return value

    @field_validator('output_times')
    @classmethod
    def sorted_times(cls, value):
        if any(t < 0.0 for t in value):
            raise ValueError('output times must be nonnegative')
        return tuple(sorted(value))

    @model_validator(mode='after')
    def fill_dt_factor(self):
        if self.dt_factor is None:
            self.dt_factor = default_dt_factor(self.scheme)
        return self

    @property
    def dt(self):
        return self.dt_factor / (self.n_x * self.n_x)


class RunConfig(BaseModel):
    """Contents of a run file; keys mirror the file format."""
    model_config = ConfigDict(extra='forbid')

    epsilon: float = Field(gt=0.0, le=1.0)
    nx: Optional[int] = Field(default=None, ge=4)
    ny: int = 16
    t_end: float = Field(default=1.0, gt=0.0)
    scheme: Scheme = 'emm'
    coeff: str = 'paper'
    bc: BcMode = BcMode.DIRICHLET_CORRECTOR
    dt_factor: Optional[float] = Field(default=None, gt=0.0)
    output: str = 'run'
    macro_update: MacroUpdate = 'duhamel'

    @field_validator('coeff')
    @classmethod
    def known_coefficient(cls, value):
        parse_coefficient(value)
        return value.strip()

    @model_validator(mode='after')
    def fill_nx(self):
        if self.nx is None:
            self.nx = app.config['REF_NX'] if self.scheme == 'ref' else app.config['EMM_NX']
        return self

    def coefficient(self):
        return parse_coefficient(self.coeff)

    def problem(self):
        return ProblemSpec(coefficient=self.coefficient(), initial=lambda x: np.sin(2.0 * np.pi * x),
                           epsilon=self.epsilon, t_end=self.t_end, bc_mode=self.bc)

    def solver_config(self):
        return make_solver_config(scheme=self.scheme, n_x=self.nx, n_y=self.ny, t_end=self.t_end,
                                  epsilon=self.epsilon, dt_factor=self.dt_factor,
                                  macro_update=self.macro_update)


def make_solver_config(**values):
    try:
        return SolverConfig(**values)
    except ValidationError as e:
        raise ConfigError(f'Invalid solver configuration: {e}') from e


def parse_run_config(text, source='<string>'):
    values = {}
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split('#', 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition('=')
        key = key.strip()
        if not sep or not key:
            raise ConfigError(f'{source}:{number}: expected key=value, got {raw.strip()!r}')
        if key in values:
            raise ConfigError(f'{source}:{number}: duplicate key {key!r}')
        values[key] = value.strip()
    try:
        return RunConfig(**values)
    except ValidationError as e:
        raise ConfigError(f'{source}: invalid run configuration: {e}') from e


def load_run_config(path):
    try:
        with open(path) as handle:
            text = handle.read()
    except OSError as e:
        raise ConfigError(f'Cannot read run configuration {path}: {e}') from e
    return parse_run_config(text, source=str(path))
