"""Area registry and distances.

Named places map to lat/lon centroids; every distance in the system comes
from the great-circle distance between two centroids, optionally scaled by
a circuity factor to approximate road distance.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Iterator

from .errors import DuplicateArea, InvalidCircuity, ParseError, UnknownArea

EARTH_RADIUS_KM = 6371.0

# Typical urban detour ratio: road distance over straight line.
DEFAULT_CIRCUITY = 1.3


@dataclass(frozen=True)
class GeoPoint:
    lat: float
    lon: float

    def __post_init__(self):
        if not -90.0 <= self.lat <= 90.0:
            raise ValueError(f"latitude out of range [-90, 90]: {self.lat}")
        if not -180.0 <= self.lon <= 180.0:
            raise ValueError(f"longitude out of range [-180, 180]: {self.lon}")


@dataclass(frozen=True)
class Area:
    """A named place. ``name`` keeps its display casing."""

    name: str
    centroid: GeoPoint

    def __post_init__(self):
        if not self.name.strip():
            raise ValueError("area name must be non-empty")


def normalize_name(name: str) -> str:
    return name.strip().lower()


class AreaRegistry:
    """Immutable lookup of areas keyed by normalized name."""

    def __init__(self, areas: Iterable[Area]):
        self._areas: dict[str, Area] = {}
        for area in areas:
            key = normalize_name(area.name)
            if key in self._areas:
                raise DuplicateArea(key)
            self._areas[key] = area

    def resolve(self, name: str) -> GeoPoint:
        """Centroid for ``name``, insensitive to case and surrounding whitespace."""
        try:
            return self._areas[normalize_name(name)].centroid
        except KeyError:
            raise UnknownArea(name) from None

    def __contains__(self, name: str) -> bool:
        return normalize_name(name) in self._areas

    def __len__(self) -> int:
        return len(self._areas)

    def __iter__(self) -> Iterator[Area]:
        return iter(self._areas.values())

    def names(self) -> list[str]:
        """Display names, sorted case-insensitively."""
        return sorted((a.name for a in self._areas.values()), key=str.casefold)


def resolve_area(name: str, registry: AreaRegistry) -> GeoPoint:
    return registry.resolve(name)


def haversine_distance(a: GeoPoint, b: GeoPoint) -> float:
    """Great-circle distance in km on a sphere of radius 6371.0 km."""
    lat1, lat2 = math.radians(a.lat), math.radians(b.lat)
    dlat = lat2 - lat1
    dlon = math.radians(b.lon - a.lon)
    h = math.sin(dlat / 2.0) ** 2 + math.cos(lat1) * math.cos(lat2) * math.sin(dlon / 2.0) ** 2
    return 2.0 * EARTH_RADIUS_KM * math.asin(min(1.0, math.sqrt(h)))


def route_distance(src: GeoPoint, dst: GeoPoint, circuity: float = DEFAULT_CIRCUITY) -> float:
    """Approximate road distance: great-circle distance scaled by ``circuity``."""
    if circuity < 1.0:
        raise InvalidCircuity(circuity)
    return haversine_distance(src, dst) * circuity


def iter_csv_rows(path: str | Path) -> Iterator[tuple[int, list[str]]]:
    """Yield (1-based physical line number, fields) skipping blanks and # comments."""
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            yield lineno, next(csv.reader([line]))


def load_areas(path: str | Path) -> AreaRegistry:
    """Load an area registry from a ``name,lat,lon`` CSV.

    Raises ParseError with the offending 1-based line number on any malformed
    row (wrong arity, non-numeric or out-of-range coordinates, empty name),
    and DuplicateArea when two rows collide after name normalization.
    """
    path = Path(path)
    rows = iter_csv_rows(path)
    try:
        header_line, header = next(rows)
    except StopIteration:
        raise ParseError(str(path), 1, "missing header 'name,lat,lon'") from None
    if [h.strip().lower() for h in header] != ["name", "lat", "lon"]:
        raise ParseError(str(path), header_line, f"expected header 'name,lat,lon', got {','.join(header)!r}")

    areas = []
    seen: set[str] = set()
    for lineno, fields in rows:
        if len(fields) != 3:
            raise ParseError(str(path), lineno, f"expected 3 fields, got {len(fields)}")
        name, lat_s, lon_s = fields
        if not name.strip():
            raise ParseError(str(path), lineno, "empty area name")
        try:
            point = GeoPoint(lat=float(lat_s), lon=float(lon_s))
        except ValueError as exc:
            raise ParseError(str(path), lineno, str(exc)) from None
        key = normalize_name(name)
        if key in seen:
            raise DuplicateArea(key)
        seen.add(key)
        areas.append(Area(name=name.strip(), centroid=point))
    return AreaRegistry(areas)
