"""Fare and ETA models against the worked hand-arithmetic examples, plus the
monotonicity / floor / window-dominance properties."""

from __future__ import annotations

import random
from datetime import datetime

import pytest

from farecmp.errors import NegativeInput, TooManyPassengers
from farecmp.fares import (
    EtaParams,
    LinearFareModel,
    Money,
    RateCard,
    TrafficLevel,
    UberParams,
    eta_minutes,
    hour_in_window,
    ola_fare,
    rapido_fare,
    round_rupees_half_up,
    trip_duration_min,
    uber_fare,
)

NOON = datetime(2025, 1, 15, 12, 0)
NIGHT = datetime(2025, 1, 15, 23, 30)


def rupees(x):
    return Money.from_rupees(x)


class TestMoney:
    def test_paise_integer_only(self):
        with pytest.raises(ValueError):
            Money(10.5)  # type: ignore[arg-type]
        with pytest.raises(ValueError):
            Money(-1)

    def test_from_rupees(self):
        assert Money.from_rupees(1.5).amount == 150
        assert Money.from_rupees(13).amount == 1300

    def test_whole_rupees_guard(self):
        assert Money(500).whole_rupees == 5
        with pytest.raises(ValueError):
            Money(550).whole_rupees

    def test_round_half_up(self):
        assert round_rupees_half_up(151.5).amount == 15200
        assert round_rupees_half_up(151.49).amount == 15100
        assert round_rupees_half_up(0.0).amount == 0

    def test_rounding_idempotent(self):
        rng = random.Random(3)
        for _ in range(200):
            x = rng.uniform(0, 500)
            once = round_rupees_half_up(x)
            assert round_rupees_half_up(once.rupees) == once
            assert once.amount % 100 == 0


class TestHourWindow:
    def test_plain_window(self):
        assert hour_in_window(8, (8, 11))
        assert not hour_in_window(11, (8, 11))

    def test_wrapping_window(self):
        # [23, 5) means 23:00-24:00 plus 00:00-05:00
        assert hour_in_window(23, (23, 5))
        assert hour_in_window(0, (23, 5))
        assert hour_in_window(4, (23, 5))
        assert not hour_in_window(5, (23, 5))
        assert not hour_in_window(12, (23, 5))

    def test_empty_window(self):
        assert not hour_in_window(10, (10, 10))


class TestOlaFare:
    def test_zero_trip_hits_min_fare_floor(self, rate_card):
        assert ola_fare(0, 0, NOON, rate_card) == rupees(65)

    def test_day_trip(self, rate_card):
        assert ola_fare(8, 20, NOON, rate_card) == rupees(157)

    def test_night_multiplier(self, rate_card):
        assert ola_fare(8, 20, NIGHT, rate_card) == rupees(195)

    def test_negative_inputs(self, rate_card):
        with pytest.raises(NegativeInput):
            ola_fare(-1, 0, NOON, rate_card)
        with pytest.raises(NegativeInput):
            ola_fare(1, -0.1, NOON, rate_card)

    def test_fractional_booking_fee_rejected(self):
        with pytest.raises(ValueError):
            RateCard(
                base_fare=rupees(50), base_distance_km=2, per_km=rupees(12), per_min=rupees(1.5),
                booking_fee=Money(550), min_fare=rupees(60), night_multiplier=1.25, night_window=(23, 5),
            )


class TestUberFare:
    def test_plain_trip(self, uber_params):
        assert uber_fare(10, 2, datetime(2025, 1, 15, 14, 0), uber_params) == rupees(150)

    def test_xl_tier(self, uber_params):
        assert uber_fare(10, 5, datetime(2025, 1, 15, 14, 0), uber_params) == rupees(225)

    def test_min_fare_floor(self, uber_params):
        assert uber_fare(0, 1, datetime(2025, 1, 15, 14, 0), uber_params) == rupees(55)

    def test_peak_window(self, uber_params):
        # 150 * 1.2 inside [17, 21)
        assert uber_fare(10, 2, datetime(2025, 1, 15, 18, 0), uber_params) == rupees(180)

    def test_too_many_passengers(self, uber_params):
        with pytest.raises(TooManyPassengers):
            uber_fare(10, 7, NOON, uber_params)
        with pytest.raises(NegativeInput):
            uber_fare(10, 0, NOON, uber_params)


class TestRapidoFare:
    def test_linear(self, rapido_model):
        assert rapido_fare(5, rapido_model) == rupees(60)

    def test_floor_binds_at_zero(self, rapido_model):
        assert rapido_fare(0, rapido_model) == rupees(25)

    def test_floor_exactly_met(self, rapido_model):
        assert rapido_fare(0.625, rapido_model) == rupees(25)


class TestEta:
    def test_zero_distance_is_wait(self, eta_params):
        for traffic in TrafficLevel:
            assert eta_minutes(0, traffic, 3, eta_params) == 3

    def test_medium_traffic(self, eta_params):
        assert eta_minutes(10, TrafficLevel.MEDIUM, 3, eta_params) == 33

    def test_high_traffic(self, eta_params):
        assert eta_minutes(10, TrafficLevel.HIGH, 3, eta_params) == 53

    def test_trip_duration_examples(self, eta_params):
        assert trip_duration_min(0, TrafficLevel.MEDIUM, eta_params) == 0
        assert trip_duration_min(20, TrafficLevel.MEDIUM, eta_params) == pytest.approx(60.0, rel=1e-12)
        assert trip_duration_min(5, TrafficLevel.LOW, eta_params) == pytest.approx(10.0, rel=1e-12)

    def test_strictly_increasing_in_distance_nonincreasing_in_speed(self, eta_params):
        rng = random.Random(5)
        for _ in range(100):
            d1 = rng.uniform(0.5, 40)
            d2 = d1 + rng.uniform(1.0, 10)  # >= 1 km: survives whole-minute rounding at every speed
            for traffic in TrafficLevel:
                assert eta_minutes(d2, traffic, 3, eta_params) > eta_minutes(d1, traffic, 3, eta_params)
                assert trip_duration_min(d2, traffic, eta_params) > trip_duration_min(d1, traffic, eta_params)
            low = eta_minutes(d1, TrafficLevel.LOW, 3, eta_params)
            med = eta_minutes(d1, TrafficLevel.MEDIUM, 3, eta_params)
            high = eta_minutes(d1, TrafficLevel.HIGH, 3, eta_params)
            assert low <= med <= high

    def test_speed_ordering_enforced(self):
        with pytest.raises(ValueError):
            EtaParams(speed_kmh={TrafficLevel.LOW: 10.0, TrafficLevel.MEDIUM: 20.0, TrafficLevel.HIGH: 12.0})


def random_rate_card(rng: random.Random) -> RateCard:
    return RateCard(
        base_fare=Money(rng.randrange(0, 10000)),
        base_distance_km=rng.uniform(0, 4),
        per_km=Money(rng.randrange(100, 3000)),
        per_min=Money(rng.randrange(0, 300)),
        booking_fee=Money(rng.randrange(0, 10) * 100),
        min_fare=Money(rng.randrange(0, 12000)),
        night_multiplier=rng.uniform(1.0, 1.6),
        night_window=(23, 5),
    )


def random_uber_params(rng: random.Random) -> UberParams:
    return UberParams(
        base_fare=Money(rng.randrange(0, 8000)),
        per_km=Money(rng.randrange(100, 3000)),
        min_fare=Money(rng.randrange(0, 9000)),
        peak_windows=((8, 11), (17, 21)),
        peak_multiplier=rng.uniform(1.0, 1.5),
        xl_multiplier=rng.uniform(1.0, 1.8),
        xl_threshold=rng.randrange(1, 5),
    )


def random_linear_model(rng: random.Random) -> LinearFareModel:
    return LinearFareModel(
        intercept=Money(rng.randrange(0, 6000)),
        slope=Money(rng.randrange(0, 2000)),
        min_fare=Money(rng.randrange(0, 7000)),
    )


DISTANCE_GRID = [x * 0.5 for x in range(101)]  # 0, 0.5, ..., 50


class TestFareProperties:
    def test_monotone_in_distance_over_grid(self, eta_params):
        rng = random.Random(20250115)
        for _ in range(100):
            card = random_rate_card(rng)
            uber = random_uber_params(rng)
            lin = random_linear_model(rng)
            pax = rng.randrange(1, 7)
            hour = rng.randrange(24)
            when = datetime(2025, 1, 15, hour, 0)
            traffic = rng.choice(list(TrafficLevel))
            prev = (None, None, None)
            for d in DISTANCE_GRID:
                duration = trip_duration_min(d, traffic, eta_params)
                now = (
                    ola_fare(d, duration, when, card).amount,
                    uber_fare(d, pax, when, uber).amount,
                    rapido_fare(d, lin).amount,
                )
                if prev[0] is not None:
                    assert now[0] >= prev[0]
                    assert now[1] >= prev[1]
                    assert now[2] >= prev[2]
                prev = now

    def test_floors_always_respected(self, eta_params):
        rng = random.Random(99)
        when = datetime(2025, 1, 15, 14, 0)
        for _ in range(100):
            card = random_rate_card(rng)
            uber = random_uber_params(rng)
            lin = random_linear_model(rng)
            d = rng.uniform(0, 30)
            duration = trip_duration_min(d, TrafficLevel.MEDIUM, eta_params)
            assert ola_fare(d, duration, when, card).amount >= round_rupees_half_up(card.min_fare.rupees).amount + card.booking_fee.amount
            assert uber_fare(d, 2, when, uber).amount >= round_rupees_half_up(uber.min_fare.rupees).amount
            assert rapido_fare(d, lin).amount >= round_rupees_half_up(lin.min_fare.rupees).amount

    def test_window_multiplier_dominance(self, rate_card, uber_params):
        rng = random.Random(17)
        for _ in range(100):
            d = rng.uniform(0, 30)
            t = rng.uniform(0, 90)
            inside = ola_fare(d, t, NIGHT, rate_card)
            outside = ola_fare(d, t, NOON, rate_card)
            assert inside.amount >= outside.amount
            peak = uber_fare(d, 2, datetime(2025, 1, 15, 18, 0), uber_params)
            off = uber_fare(d, 2, datetime(2025, 1, 15, 14, 0), uber_params)
            assert peak.amount >= off.amount

    def test_outputs_whole_rupees(self, rate_card, uber_params, rapido_model, eta_params):
        rng = random.Random(31)
        for _ in range(200):
            d = rng.uniform(0, 40)
            t = trip_duration_min(d, TrafficLevel.MEDIUM, eta_params)
            when = datetime(2025, 1, 15, rng.randrange(24), 0)
            assert ola_fare(d, t, when, rate_card).amount % 100 == 0
            assert uber_fare(d, rng.randrange(1, 7), when, uber_params).amount % 100 == 0
            assert rapido_fare(d, rapido_model).amount % 100 == 0
