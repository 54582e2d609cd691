"""Exceptions raised by fpbandit, each mapped to a stable CLI exit code"""


class FpBanditError(Exception):
    """Base class for all fpbandit errors"""

    exit_code = 1


class InstanceError(FpBanditError, ValueError):
    """A bandit instance violates one of the model invariants"""

    exit_code = 3


class UnknownPolicyError(FpBanditError, KeyError):
    """
    Raised for a policy identifier that is not registered

    :param name: the requested identifier
    :param valid_names: the registered identifiers
    """

    exit_code = 4

    def __init__(self, name: str, valid_names) -> None:
        self.name = name
        self.valid_names = tuple(valid_names)
        super().__init__(name)

    def __str__(self) -> str:
        return f"unknown policy '{self.name}', valid names are: {', '.join(self.valid_names)}"


class DegenerateLowerBoundError(FpBanditError, ArithmeticError):
    """Some confusion parameter cannot be told apart from the true one on any explorable arm"""

    exit_code = 5
