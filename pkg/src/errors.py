"""Exception hierarchy. Every error carries the CLI exit code it maps to."""


class MdimLabError(Exception):
    exit_code = 1


class ConfigError(MdimLabError, ValueError):
    exit_code = 2


class MissingArtifactError(ConfigError):
    pass


class InvalidScheduleError(ConfigError):
    pass


class ConstructionError(MdimLabError, ValueError):
    exit_code = 3


class ResolutionError(ConstructionError):
    pass


class InfeasibleCoverError(ConstructionError):
    pass


class StrategyInfeasibleError(ConstructionError):
    pass


class CapExceededError(ConstructionError):
    pass


class UncoverableError(ConstructionError):
    pass


class BracketNotFoundError(ConstructionError):
    pass


class EmptyDeviationError(ConstructionError):
    pass


class InadmissiblePlanError(ConstructionError):
    pass


class BudgetExceededError(ConstructionError):
    pass


class SampledModeError(ConstructionError):
    pass


class CertificateError(MdimLabError):
    exit_code = 4


class BoundViolatedError(CertificateError):
    pass
