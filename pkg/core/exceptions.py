"""Exception hierarchy shared by every npverify app."""


class NPVerifyError(Exception):
    """Base class for all toolkit errors."""


class InvalidOrderingError(NPVerifyError, ValueError):
    pass


class InvalidRestrictionError(NPVerifyError, ValueError):
    pass


class SpecMismatchError(NPVerifyError, ValueError):
    pass


class PreconditionError(NPVerifyError, ValueError):
    pass


class DomainCapExceeded(NPVerifyError):
    """Raised when an enumeration would exceed a configured cap."""

    def __init__(self, cap_name, cap_value, requested):
        self.cap_name = cap_name
        self.cap_value = cap_value
        self.requested = requested
        super().__init__(
            f"{cap_name}={cap_value} exceeded (requested {requested}); "
            f"raise the setting or pass override_caps"
        )


class ProfileParseError(NPVerifyError, ValueError):
    """Raised for malformed profile text; `position` is the 1-based token."""

    def __init__(self, message, position=None):
        self.position = position
        if position is not None:
            message = f"token {position}: {message}"
        super().__init__(message)


class ProfileNotInDomain(NPVerifyError, KeyError):
    OUTSIDE_NP = 'outside NP'
    OUTSIDE_DOMAIN = 'outside this domain'

    def __init__(self, profile, reason):
        self.profile = profile
        self.reason = reason
        super().__init__(f"{profile} is {reason}")

    def __str__(self):
        return self.args[0]


class UndefinedOnDomain(NPVerifyError):
    pass


class RuleNotStrategyProof(NPVerifyError):
    def __init__(self, witness, message=None):
        self.witness = witness
        super().__init__(message or f"rule is manipulable: {witness}")


class PathConstructionError(NPVerifyError):
    pass


class ConstructionError(NPVerifyError):
    pass


class SolverSoundnessError(NPVerifyError):
    pass


class RuleFileError(NPVerifyError, ValueError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
