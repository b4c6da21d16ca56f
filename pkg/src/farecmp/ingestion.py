"""Trip-record ingestion and the least-squares fit behind the Rapido model.

Fitting runs in rupee floats using exactly-rounded sums (math.fsum), which
makes the result independent of record order; coefficients are converted to
paise only when the fitted line is packaged into a LinearFareModel.
"""

from __future__ import annotations

import json
import logging
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from .errors import DegenerateData, NonPositive, ParseError
from .fares import LinearFareModel, Money
from .geo import DEFAULT_CIRCUITY, AreaRegistry, iter_csv_rows, route_distance

logger = logging.getLogger(__name__)

TRIPS_HEADER = ["from", "to", "distance_km", "fare"]


@dataclass(frozen=True)
class TripRecord:
    from_area: str
    to_area: str
    distance_km: float
    fare: Money


@dataclass(frozen=True)
class TripDataset:
    records: tuple[TripRecord, ...]
    source_path: str

    def __len__(self) -> int:
        return len(self.records)


def load_trips(path: str | Path, registry: AreaRegistry, circuity: float = DEFAULT_CIRCUITY) -> TripDataset:
    """Load a ``from,to,distance_km,fare`` CSV, preserving file order.

    A blank distance is back-filled from the registry centroids via
    route_distance. Strict: any malformed row raises (ParseError, NonPositive
    or UnknownArea) rather than being skipped.
    """
    path = Path(path)
    rows = iter_csv_rows(path)
    try:
        header_line, header = next(rows)
    except StopIteration:
        raise ParseError(str(path), 1, "missing header 'from,to,distance_km,fare'") from None
    if [h.strip().lower() for h in header] != TRIPS_HEADER:
        raise ParseError(str(path), header_line, f"expected header 'from,to,distance_km,fare', got {','.join(header)!r}")

    records = []
    for lineno, fields in rows:
        if len(fields) != 4:
            raise ParseError(str(path), lineno, f"expected 4 fields, got {len(fields)}")
        from_area, to_area, distance_s, fare_s = (f.strip() for f in fields)
        if not from_area or not to_area:
            raise ParseError(str(path), lineno, "empty area name")
        try:
            fare_rupees = float(fare_s)
        except ValueError:
            raise ParseError(str(path), lineno, f"bad fare {fare_s!r}") from None
        if fare_rupees <= 0:
            raise NonPositive("fare", lineno)
        if distance_s:
            try:
                distance_km = float(distance_s)
            except ValueError:
                raise ParseError(str(path), lineno, f"bad distance {distance_s!r}") from None
            if distance_km <= 0:
                raise NonPositive("distance", lineno)
        else:
            distance_km = route_distance(registry.resolve(from_area), registry.resolve(to_area), circuity)
        records.append(
            TripRecord(from_area=from_area, to_area=to_area, distance_km=distance_km, fare=Money.from_rupees(fare_rupees))
        )
    return TripDataset(records=tuple(records), source_path=str(path))


def ols_fit(distances_km: Sequence[float], fares_rupees: Sequence[float]) -> tuple[float, float]:
    """Closed-form least squares (intercept, slope) in rupee floats.

    Uses math.fsum throughout, so the fit is exactly invariant under record
    permutation. Raises DegenerateData when all distances are equal.
    """
    n = len(distances_km)
    if n < 2 or len(fares_rupees) != n:
        raise DegenerateData(f"need >= 2 paired records, got {n}")
    x_mean = math.fsum(distances_km) / n
    y_mean = math.fsum(fares_rupees) / n
    sxx = math.fsum((x - x_mean) ** 2 for x in distances_km)
    if sxx == 0.0:
        raise DegenerateData("all distances equal: slope is unidentifiable")
    sxy = math.fsum((x - x_mean) * (y - y_mean) for x, y in zip(distances_km, fares_rupees))
    slope = sxy / sxx
    intercept = y_mean - slope * x_mean
    return intercept, slope


def fit_linear_model(ds: TripDataset, min_fare: Money) -> LinearFareModel:
    """Fit the fare-vs-distance line and package it with the given floor.

    A negative fitted slope is clamped to 0 (fare decreasing in distance is
    economically invalid) and the intercept refit to the mean fare; a warning
    is logged when that happens.
    """
    distances = [r.distance_km for r in ds.records]
    fares = [r.fare.rupees for r in ds.records]
    intercept, slope = ols_fit(distances, fares)
    if slope < 0:
        logger.warning("fitted slope %.6f is negative; clamping to 0", slope)
        slope = 0.0
        intercept = math.fsum(fares) / len(fares)
    return LinearFareModel(
        intercept=Money.from_rupees(intercept),
        slope=Money.from_rupees(slope),
        min_fare=min_fare,
    )


def fit_rmse(ds: TripDataset, m: LinearFareModel) -> float:
    """Root mean squared residual of the model line over the dataset, in rupees."""
    residuals = (r.fare.rupees - (m.intercept.rupees + m.slope.rupees * r.distance_km) for r in ds.records)
    return math.sqrt(math.fsum(res**2 for res in residuals) / len(ds.records))


def save_model(m: LinearFareModel, path: str | Path) -> None:
    payload = {
        "intercept_rupees": m.intercept.rupees,
        "slope_rupees_per_km": m.slope.rupees,
        "min_fare_rupees": m.min_fare.rupees,
    }
    Path(path).write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")


def load_model(path: str | Path) -> LinearFareModel:
    path = Path(path)
    try:
        payload = json.loads(path.read_text(encoding="utf-8"))
        return LinearFareModel(
            intercept=Money.from_rupees(payload["intercept_rupees"]),
            slope=Money.from_rupees(payload["slope_rupees_per_km"]),
            min_fare=Money.from_rupees(payload["min_fare_rupees"]),
        )
    except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        raise ParseError(str(path), 1, f"bad model file: {exc}") from exc
