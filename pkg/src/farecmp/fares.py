"""Per-provider fare and ETA models.

Three pricing strategies live here: a rate-card formula (Ola style), a
parametric distance/passengers/time-of-day model (Uber style), and a
data-fitted linear model (Rapido style, fitted by :mod:`farecmp.ingestion`).

Money is handled in integer paise; intermediate fare math runs in rupee
floats and is rounded half-up to a whole rupee exactly once, at the end.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from datetime import datetime
from enum import Enum
from typing import Mapping

from .errors import NegativeInput, TooManyPassengers

MAX_PASSENGERS = 6


class TrafficLevel(str, Enum):
    LOW = "low"
    MEDIUM = "medium"
    HIGH = "high"


@dataclass(frozen=True)
class Money:
    """Non-negative INR amount in integer paise."""

    amount: int
    currency: str = "INR"

    def __post_init__(self):
        if not isinstance(self.amount, int):
            raise ValueError(f"amount must be integer paise, got {self.amount!r}")
        if self.amount < 0:
            raise ValueError(f"amount must be >= 0, got {self.amount}")
        if self.currency != "INR":
            raise ValueError(f"only INR is supported, got {self.currency!r}")

    @classmethod
    def from_rupees(cls, rupees: float) -> "Money":
        return cls(int(round(rupees * 100)))

    @property
    def rupees(self) -> float:
        return self.amount / 100.0

    @property
    def whole_rupees(self) -> int:
        """Amount as whole rupees. Only valid on rounded final fares."""
        if self.amount % 100:
            raise ValueError(f"not a whole-rupee amount: {self.amount} paise")
        return self.amount // 100

    def __add__(self, other: "Money") -> "Money":
        return Money(self.amount + other.amount)


def round_rupees_half_up(rupees: float) -> Money:
    """Round a non-negative rupee value half-up to a whole rupee."""
    if rupees < 0:
        raise NegativeInput("fare", rupees)
    return Money(int(math.floor(rupees + 0.5)) * 100)


HourWindow = tuple[int, int]


def hour_in_window(hour: int, window: HourWindow) -> bool:
    """Half-open [start, end) membership; windows may wrap midnight.

    [23, 5) means 23:00-24:00 union 00:00-05:00. start == end is empty.
    """
    start, end = window
    if start == end:
        return False
    if start < end:
        return start <= hour < end
    return hour >= start or hour < end


def _check_window(window: HourWindow, name: str) -> None:
    start, end = window
    if not (0 <= start <= 23 and 0 <= end <= 24):
        raise ValueError(f"{name} hours out of range: {window}")


@dataclass(frozen=True)
class RateCard:
    """Ola-style rate card: base fare covering an included distance, then
    per-km and per-minute charges, a min-fare floor, a night multiplier over
    an hour window, and a booking fee added after rounding."""

    base_fare: Money
    base_distance_km: float
    per_km: Money
    per_min: Money
    booking_fee: Money
    min_fare: Money
    night_multiplier: float
    night_window: HourWindow

    def __post_init__(self):
        if self.base_distance_km < 0:
            raise ValueError("base_distance_km must be >= 0")
        if self.night_multiplier < 1.0:
            raise ValueError("night_multiplier must be >= 1")
        _check_window(self.night_window, "night_window")
        if self.booking_fee.amount % 100:
            # added after the final rounding step, so it must not reintroduce paise
            raise ValueError("booking_fee must be a whole-rupee amount")


@dataclass(frozen=True)
class UberParams:
    """Parametric model over distance, passenger count and time of day."""

    base_fare: Money
    per_km: Money
    min_fare: Money
    peak_windows: tuple[HourWindow, ...]
    peak_multiplier: float
    xl_multiplier: float
    xl_threshold: int

    def __post_init__(self):
        if self.peak_multiplier < 1.0 or self.xl_multiplier < 1.0:
            raise ValueError("multipliers must be >= 1")
        if self.xl_threshold < 1:
            raise ValueError("xl_threshold must be >= 1")
        for w in self.peak_windows:
            _check_window(w, "peak_window")


@dataclass(frozen=True)
class LinearFareModel:
    """Rapido-style fare line fitted from trip data: intercept + slope * km."""

    intercept: Money
    slope: Money
    min_fare: Money


@dataclass(frozen=True)
class EtaParams:
    """Traffic-dependent travel speeds (shared) and per-provider pickup waits,
    keyed by provider wire name."""

    speed_kmh: Mapping[TrafficLevel, float]
    pickup_wait_min: Mapping[str, float] = field(default_factory=dict)

    def __post_init__(self):
        for level in TrafficLevel:
            if level not in self.speed_kmh:
                raise ValueError(f"missing speed for traffic level {level.value!r}")
            if self.speed_kmh[level] <= 0:
                raise ValueError(f"speed for {level.value!r} must be > 0")
        if not (self.speed_kmh[TrafficLevel.LOW] > self.speed_kmh[TrafficLevel.MEDIUM] > self.speed_kmh[TrafficLevel.HIGH]):
            raise ValueError("speeds must decrease with congestion: low > medium > high")
        for name, wait in self.pickup_wait_min.items():
            if wait < 0:
                raise ValueError(f"pickup wait for {name!r} must be >= 0")


def _require_non_negative(what: str, value: float) -> None:
    if value < 0:
        raise NegativeInput(what, value)


def ola_fare(distance_km: float, duration_min: float, departure: datetime, card: RateCard) -> Money:
    """Rate-card fare: base + per-km beyond the included distance + per-minute,
    floored at min_fare, night-multiplied, rounded, then booking fee."""
    _require_non_negative("distance_km", distance_km)
    _require_non_negative("duration_min", duration_min)
    ride = (
        card.base_fare.rupees
        + card.per_km.rupees * max(0.0, distance_km - card.base_distance_km)
        + card.per_min.rupees * duration_min
    )
    ride = max(ride, card.min_fare.rupees)
    if hour_in_window(departure.hour, card.night_window):
        ride *= card.night_multiplier
    return round_rupees_half_up(ride) + card.booking_fee


def uber_fare(distance_km: float, passengers: int, departure: datetime, p: UberParams) -> Money:
    """Parametric fare with XL tier above the passenger threshold and a
    peak-hour multiplier, floored at min_fare."""
    _require_non_negative("distance_km", distance_km)
    if passengers < 1:
        raise NegativeInput("passengers", passengers)
    if passengers > MAX_PASSENGERS:
        raise TooManyPassengers(passengers)
    ride = p.base_fare.rupees + p.per_km.rupees * distance_km
    if passengers > p.xl_threshold:
        ride *= p.xl_multiplier
    if any(hour_in_window(departure.hour, w) for w in p.peak_windows):
        ride *= p.peak_multiplier
    return round_rupees_half_up(max(ride, p.min_fare.rupees))


def rapido_fare(distance_km: float, m: LinearFareModel) -> Money:
    """Fitted linear fare, floored at min_fare."""
    _require_non_negative("distance_km", distance_km)
    return round_rupees_half_up(max(m.intercept.rupees + m.slope.rupees * distance_km, m.min_fare.rupees))


def trip_duration_min(distance_km: float, traffic: TrafficLevel, p: EtaParams) -> float:
    """Unrounded travel time in minutes; feeds the per-minute fare term."""
    _require_non_negative("distance_km", distance_km)
    return distance_km / p.speed_kmh[traffic] * 60.0


def eta_minutes(distance_km: float, traffic: TrafficLevel, pickup_wait_min: float, p: EtaParams) -> int:
    """Pickup wait plus travel time, rounded half-up to whole minutes."""
    _require_non_negative("distance_km", distance_km)
    _require_non_negative("pickup_wait_min", pickup_wait_min)
    minutes = pickup_wait_min + trip_duration_min(distance_km, traffic, p)
    return int(math.floor(minutes + 0.5))
