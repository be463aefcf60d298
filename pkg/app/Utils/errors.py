class ApmmError(Exception):
    """Base class for every failure raised by the solver suite."""
    exit_code = 1


class ConfigError(ApmmError, ValueError):
    exit_code = 2


class MeshError(ConfigError):
    pass


class EllipticityError(ConfigError):
    """A sampled diffusion coefficient left the ellipticity bounds."""


class MeanConstraintError(ApmmError, ValueError):
    """solve_L was handed data with a nonzero y-mean."""


class NumericalInstabilityError(ApmmError, ArithmeticError):
    pass
