"""Shared fixtures: the reference parameter set used by the worked examples,
plus a tiny synthetic registry whose first pair sits exactly 10 km apart."""

from __future__ import annotations

import pytest

from farecmp.fares import (
    EtaParams,
    LinearFareModel,
    Money,
    RateCard,
    TrafficLevel,
    UberParams,
)
from farecmp.geo import Area, AreaRegistry, GeoPoint
from farecmp.providers import ProviderModels

# one degree of longitude on the equator, km
DEG_KM = 6371.0 * 3.141592653589793 / 180.0


def rupees(x) -> Money:
    return Money.from_rupees(x)


@pytest.fixture
def rate_card() -> RateCard:
    return RateCard(
        base_fare=rupees(50),
        base_distance_km=2.0,
        per_km=rupees(12),
        per_min=rupees(1.5),
        booking_fee=rupees(5),
        min_fare=rupees(60),
        night_multiplier=1.25,
        night_window=(23, 5),
    )


@pytest.fixture
def uber_params() -> UberParams:
    return UberParams(
        base_fare=rupees(40),
        per_km=rupees(11),
        min_fare=rupees(55),
        peak_windows=((8, 11), (17, 21)),
        peak_multiplier=1.2,
        xl_multiplier=1.5,
        xl_threshold=4,
    )


@pytest.fixture
def rapido_model() -> LinearFareModel:
    return LinearFareModel(intercept=rupees(20), slope=rupees(8), min_fare=rupees(25))


@pytest.fixture
def eta_params() -> EtaParams:
    return EtaParams(
        speed_kmh={TrafficLevel.LOW: 30.0, TrafficLevel.MEDIUM: 20.0, TrafficLevel.HIGH: 12.0},
        pickup_wait_min={"ola": 5.0, "uber": 3.0, "rapido": 4.0},
    )


@pytest.fixture
def models(rate_card, uber_params, rapido_model, eta_params) -> ProviderModels:
    # circuity 1 so distances equal the great-circle values below
    return ProviderModels(rate_card=rate_card, uber=uber_params, rapido=rapido_model, eta=eta_params, circuity=1.0)


@pytest.fixture
def registry() -> AreaRegistry:
    # equatorial points: Alpha->Beta is 10 km, Alpha->Gamma 5 km
    return AreaRegistry(
        [
            Area("Alpha", GeoPoint(0.0, 0.0)),
            Area("Beta", GeoPoint(0.0, 10.0 / DEG_KM)),
            Area("Gamma", GeoPoint(0.0, 5.0 / DEG_KM)),
        ]
    )
