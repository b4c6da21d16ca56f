"""Trip loading and the least-squares fit.

The fit under test is a closed-form implementation; numpy's lstsq serves as
the independent oracle on random datasets.
"""

from __future__ import annotations

import math
import random

import numpy as np
import pytest

from farecmp.errors import DegenerateData, NonPositive, ParseError, UnknownArea
from farecmp.fares import LinearFareModel, Money
from farecmp.geo import route_distance
from farecmp.ingestion import (
    TripDataset,
    TripRecord,
    fit_linear_model,
    fit_rmse,
    load_model,
    load_trips,
    ols_fit,
    save_model,
)


def rupees(x):
    return Money.from_rupees(x)


def make_dataset(points):
    return TripDataset(
        records=tuple(
            TripRecord(from_area="a", to_area="b", distance_km=d, fare=rupees(f)) for d, f in points
        ),
        source_path="<memory>",
    )


class TestLoadTrips:
    def test_passthrough_distances(self, tmp_path, registry):
        p = tmp_path / "trips.csv"
        p.write_text("from,to,distance_km,fare\nAlpha,Beta,10.0,150\nAlpha,Gamma,5.0,80\nBeta,Gamma,5.0,75\n")
        ds = load_trips(p, registry)
        assert len(ds) == 3
        assert [r.distance_km for r in ds.records] == [10.0, 5.0, 5.0]
        assert ds.records[0].fare == rupees(150)

    def test_blank_distance_backfilled_from_registry(self, tmp_path, registry):
        p = tmp_path / "trips.csv"
        p.write_text("from,to,distance_km,fare\nAlpha,Beta,,150\n")
        ds = load_trips(p, registry, circuity=1.3)
        expected = route_distance(registry.resolve("Alpha"), registry.resolve("Beta"), 1.3)
        assert ds.records[0].distance_km == pytest.approx(expected, rel=1e-12)

    def test_backfill_with_unknown_area_fails(self, tmp_path, registry):
        p = tmp_path / "trips.csv"
        p.write_text("from,to,distance_km,fare\nAtlantis,Beta,,150\n")
        with pytest.raises(UnknownArea):
            load_trips(p, registry)

    def test_zero_fare_rejected_with_line(self, tmp_path, registry):
        p = tmp_path / "trips.csv"
        p.write_text("from,to,distance_km,fare\nAlpha,Beta,10.0,150\nAlpha,Gamma,5.0,0\n")
        with pytest.raises(NonPositive) as exc:
            load_trips(p, registry)
        assert exc.value.field == "fare"
        assert exc.value.line == 3

    def test_nonpositive_distance_rejected(self, tmp_path, registry):
        p = tmp_path / "trips.csv"
        p.write_text("from,to,distance_km,fare\nAlpha,Beta,-2,150\n")
        with pytest.raises(NonPositive):
            load_trips(p, registry)

    def test_bad_header_and_bad_row(self, tmp_path, registry):
        p = tmp_path / "trips.csv"
        p.write_text("a,b,c,d\n")
        with pytest.raises(ParseError):
            load_trips(p, registry)
        p.write_text("from,to,distance_km,fare\nAlpha,Beta,ten,150\n")
        with pytest.raises(ParseError):
            load_trips(p, registry)

    def test_preserves_file_order_and_count(self, tmp_path, registry):
        p = tmp_path / "trips.csv"
        rows = [f"Alpha,Beta,{i + 1}.0,{50 + i}" for i in range(20)]
        p.write_text("from,to,distance_km,fare\n" + "\n".join(rows) + "\n")
        ds = load_trips(p, registry)
        assert len(ds) == 20
        assert [r.distance_km for r in ds.records] == [float(i + 1) for i in range(20)]


class TestOlsFit:
    def test_collinear_exact(self):
        ds = make_dataset([(1, 28), (2, 36), (3, 44)])
        m = fit_linear_model(ds, rupees(25))
        assert m.intercept == rupees(20)
        assert m.slope == rupees(8)
        assert fit_rmse(ds, m) == pytest.approx(0.0, abs=1e-9)

    def test_two_point_closed_form(self):
        m = fit_linear_model(make_dataset([(2, 30), (6, 70)]), rupees(25))
        assert m.intercept == rupees(10)
        assert m.slope == rupees(10)

    def test_degenerate_distances(self):
        with pytest.raises(DegenerateData):
            fit_linear_model(make_dataset([(5, 40), (5, 60)]), rupees(25))
        with pytest.raises(DegenerateData):
            ols_fit([3.0], [10.0])

    def test_collinear_recovery_random_lines(self):
        rng = random.Random(41)
        for _ in range(50):
            a = rng.uniform(0, 80)
            b = rng.uniform(0, 20)
            xs = sorted(rng.uniform(0.5, 30) for _ in range(rng.randrange(2, 30)))
            if max(xs) - min(xs) < 1e-3:
                continue
            ys = [a + b * x for x in xs]
            a_hat, b_hat = ols_fit(xs, ys)
            assert a_hat == pytest.approx(a, rel=1e-9, abs=1e-9)
            assert b_hat == pytest.approx(b, rel=1e-9, abs=1e-9)

    def test_matches_numpy_lstsq_oracle(self):
        rng = random.Random(4242)
        for _ in range(50):
            n = rng.randrange(3, 60)
            xs = [rng.uniform(0.5, 30) for _ in range(n)]
            ys = [40 + 12 * x + rng.gauss(0, 8) for x in xs]
            a_hat, b_hat = ols_fit(xs, ys)
            design = np.column_stack([np.ones(n), np.array(xs)])
            (a_np, b_np), *_ = np.linalg.lstsq(design, np.array(ys), rcond=None)
            assert a_hat == pytest.approx(float(a_np), rel=1e-8, abs=1e-8)
            assert b_hat == pytest.approx(float(b_np), rel=1e-8, abs=1e-8)

    def test_residual_orthogonality(self):
        rng = random.Random(77)
        for _ in range(50):
            n = rng.randrange(3, 60)
            xs = [rng.uniform(0.5, 30) for _ in range(n)]
            ys = [30 + 9 * x + rng.gauss(0, 5) for x in xs]
            a_hat, b_hat = ols_fit(xs, ys)
            residuals = [y - (a_hat + b_hat * x) for x, y in zip(xs, ys)]
            assert abs(math.fsum(residuals)) < 1e-6
            assert abs(math.fsum(r * x for r, x in zip(residuals, xs))) < 1e-6

    def test_permutation_invariance_exact(self):
        rng = random.Random(13)
        xs = [rng.uniform(0.5, 30) for _ in range(40)]
        ys = [25 + 7 * x + rng.gauss(0, 4) for x in xs]
        base = ols_fit(xs, ys)
        for _ in range(10):
            idx = list(range(len(xs)))
            rng.shuffle(idx)
            assert ols_fit([xs[i] for i in idx], [ys[i] for i in idx]) == base

    def test_negative_slope_clamped_with_warning(self, caplog):
        ds = make_dataset([(1, 100), (2, 80), (3, 60)])
        with caplog.at_level("WARNING"):
            m = fit_linear_model(ds, rupees(25))
        assert m.slope == rupees(0)
        assert m.intercept == rupees(80)  # mean fare under the zero-slope constraint
        assert any("clamp" in r.message for r in caplog.records)


class TestModelRoundTrip:
    def test_save_load_identity(self, tmp_path):
        m = LinearFareModel(intercept=Money(4372), slope=Money(1303), min_fare=Money(4000))
        path = tmp_path / "model.json"
        save_model(m, path)
        assert load_model(path) == m

    def test_missing_file(self, tmp_path):
        with pytest.raises(FileNotFoundError):
            load_model(tmp_path / "nope.json")

    def test_malformed_file(self, tmp_path):
        p = tmp_path / "model.json"
        p.write_text("{not json")
        with pytest.raises(ParseError):
            load_model(p)
        p.write_text('{"intercept_rupees": 1.0}')
        with pytest.raises(ParseError):
            load_model(p)
