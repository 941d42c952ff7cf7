"""Exception hierarchy shared by the physics core and the command line."""


class AmplifierError(Exception):
    pass


class ConfigError(AmplifierError):
    """Malformed configuration, override or table."""

    def __init__(self, message: str, *, field: str | None = None, line: int | None = None) -> None:
        self.field = field
        self.line = line
        prefix = ""
        if line is not None:
            prefix += f"line {line}: "
        if field:
            prefix += f"{field}: "
        super().__init__(prefix + message)


class ParameterError(AmplifierError):
    """Physically invalid parameter set."""

    def __init__(self, message: str, *, field: str | None = None) -> None:
        self.field = field
        super().__init__(f"{field}: {message}" if field else message)


class NonPositiveRate(ParameterError):
    pass


class GainExceedsLoss(ParameterError):
    pass


class ExternalExceedsTotal(ParameterError):
    pass


class NegativePower(ParameterError):
    pass


class NumericsError(AmplifierError):
    pass


class DegenerateAllZero(NumericsError):
    pass


class NoConvergence(NumericsError):
    pass


class SingularMatrix(NumericsError):
    pass


class PhysicsError(AmplifierError):
    pass


class NonPositiveNonlinearity(PhysicsError):
    pass


class InconsistentRoot(PhysicsError):
    pass


class RegimeViolation(PhysicsError):
    pass


class NoAmplification(PhysicsError):
    pass


class NoAmplificationPossible(PhysicsError):
    pass


class ZeroSignal(PhysicsError):
    pass


class UnstableBranch(PhysicsError):
    pass
