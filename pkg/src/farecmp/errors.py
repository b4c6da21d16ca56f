"""Typed errors shared across the package.

Every domain failure raises a subclass of :class:`FareCmpError` so callers
(CLI, API) can map them to exit codes / HTTP statuses in one place.
"""

from __future__ import annotations


class FareCmpError(Exception):
    """Base class for all domain errors."""


class UnknownArea(FareCmpError):
    """Area name not present in the registry (typo or missing coverage)."""

    def __init__(self, name: str):
        super().__init__(f"unknown area: {name!r}")
        self.name = name


class InvalidCircuity(FareCmpError):
    def __init__(self, circuity: float):
        super().__init__(f"circuity factor must be >= 1, got {circuity}")
        self.circuity = circuity


class DuplicateArea(FareCmpError):
    def __init__(self, name: str):
        super().__init__(f"duplicate area after normalization: {name!r}")
        self.name = name


class ParseError(FareCmpError):
    """Malformed line in a data file. ``line`` is 1-based."""

    def __init__(self, path: str, line: int, reason: str):
        super().__init__(f"{path}:{line}: {reason}")
        self.path = path
        self.line = line
        self.reason = reason


class NonPositive(FareCmpError):
    """A field that must be > 0 was not. ``line`` is 1-based."""

    def __init__(self, field: str, line: int):
        super().__init__(f"line {line}: {field} must be > 0")
        self.field = field
        self.line = line


class NegativeInput(FareCmpError):
    def __init__(self, what: str, value: float):
        super().__init__(f"{what} must be >= 0, got {value}")
        self.what = what
        self.value = value


class TooManyPassengers(FareCmpError):
    """No offered vehicle class above 6 passengers."""

    def __init__(self, passengers: int):
        super().__init__(f"no vehicle class for {passengers} passengers (max 6)")
        self.passengers = passengers


class DegenerateData(FareCmpError):
    """All trip distances equal: no identifiable slope."""


class InvalidRequest(FareCmpError):
    """Quote request violates an invariant (pickup = drop, passenger range...)."""


class NoQuotes(FareCmpError):
    """Operation requires at least one successful quote."""


class TooFewQuotes(FareCmpError):
    """Savings need at least two quotes to compare against."""


class ChosenMissing(FareCmpError):
    def __init__(self, provider: str):
        super().__init__(f"chosen provider {provider!r} has no quote")
        self.provider = provider


class AllProvidersFailed(FareCmpError):
    """Every enabled provider failed. Carries the full outcome map."""

    def __init__(self, outcomes):
        kinds = ", ".join(f"{p.value}={f.kind.value}" for p, f in sorted(outcomes.items(), key=lambda kv: kv[0].value))
        super().__init__(f"all providers failed ({kinds})")
        self.outcomes = outcomes


class ConfigError(FareCmpError):
    """Service/config file failed to load; startup must fail fast."""
