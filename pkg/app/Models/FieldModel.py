from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from app.Utils.errors import NumericalInstabilityError


def _finite(values, kind):
    values = np.asarray(values, dtype=float)
    if not np.all(np.isfinite(values)):
        raise NumericalInstabilityError(f'{kind} holds NaN or Inf entries')
    return values


@dataclass(frozen=True)
class MacroField:
    """Values at the N_x cell centers (F, u0, u_REF)."""
    values: np.ndarray

    def __post_init__(self):
        values = _finite(self.values, 'MacroField')
        if values.ndim != 1:
            raise ValueError(f'MacroField expects a 1D array, got shape {values.shape}')
        object.__setattr__(self, 'values', values)

    @property
    def n_x(self):
        return self.values.shape[0]

    def lift(self, n_y):
        return MicroField(np.repeat(self.values[:, None], n_y, axis=1))

    def __add__(self, other):
        return MacroField(self.values + other.values)

    def __sub__(self, other):
        return MacroField(self.values - other.values)

    def __mul__(self, scalar):
        return MacroField(scalar * self.values)

    __rmul__ = __mul__


@dataclass(frozen=True)
class MicroField:
    """Values on the N_x x N_y tensor grid, periodic in y (G, U, u1)."""
    values: np.ndarray

    def __post_init__(self):
        values = _finite(self.values, 'MicroField')
        if values.ndim != 2:
            raise ValueError(f'MicroField expects a 2D array, got shape {values.shape}')
        object.__setattr__(self, 'values', values)

    @property
    def shape(self):
        return self.values.shape

    def y_mean(self):
        return self.values.mean(axis=1)

    def is_zero_mean(self, tolerance):
        scale = np.max(np.abs(self.values), initial=0.0)
        return bool(np.all(np.abs(self.y_mean()) <= tolerance * scale))

    def __add__(self, other):
        return MicroField(self.values + other.values)

    def __sub__(self, other):
        return MicroField(self.values - other.values)

    def __mul__(self, scalar):
        return MicroField(scalar * self.values)

    __rmul__ = __mul__


@dataclass(frozen=True)
class BoundaryData:
    """Dirichlet traces at x=0 and x=1: scalars for F, per-y arrays for G."""
    macro_left: float = 0.0
    macro_right: float = 0.0
    micro_left: Optional[np.ndarray] = None
    micro_right: Optional[np.ndarray] = None

    @classmethod
    def homogeneous(cls):
        return cls()

    def macro(self):
        return BoundaryData(self.macro_left, self.macro_right)

    def micro(self):
        return BoundaryData(micro_left=self.micro_left, micro_right=self.micro_right)

    def traces(self, n_y):
        """Total trace F_b + G_b(y) on both sides as per-y arrays."""
        left = np.full(n_y, self.macro_left, dtype=float)
        right = np.full(n_y, self.macro_right, dtype=float)
        if self.micro_left is not None:
            left = left + self.micro_left
        if self.micro_right is not None:
            right = right + self.micro_right
        return left, right


@dataclass(frozen=True)
class EmmState:
    F: MacroField
    G: MicroField
    t: float = 0.0
    step: int = 0
    boundary: BoundaryData = field(default_factory=BoundaryData)


@dataclass
class Trajectory:
    """Snapshots at requested output times, snapped to completed steps."""
    times: list = field(default_factory=list)
    snapshots: list = field(default_factory=list)
    n_steps: int = 0
    dt: float = 0.0

    def record(self, t, snapshot):
        self.times.append(t)
        self.snapshots.append(snapshot)

    @property
    def final(self):
        return self.snapshots[-1]
