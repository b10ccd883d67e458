"""Exception hierarchy shared by the library and the command line."""


class ConfigError(ValueError):
    """Malformed or incomplete run configuration."""


class ParameterError(ValueError):
    """Physical parameters outside the domain where the formulas are defined."""


class PhysicsError(RuntimeError):
    """The requested quantity does not exist for these parameters."""


class AmplificationRegimeError(PhysicsError):
    pass


class HeatingRegimeError(PhysicsError):
    pass


class UnstableModelError(PhysicsError):
    pass


class FixedPointError(PhysicsError):
    pass


class RegimeWarning(UserWarning):
    """A validity assumption of the adiabatic/resolved-sideband treatment is violated."""
