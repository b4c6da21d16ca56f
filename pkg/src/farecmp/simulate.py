"""Seeded desk-scale simulation of the savings a comparison user sees.

Request distribution (the savings figure depends on it): pickup/drop are an
ordered pair of distinct areas drawn uniformly from the registry, passengers
uniform over 1..6, departure hour uniform over 0..23 and minute over 0..59
on a fixed date, traffic uniform over low/medium/high. All draws come from
one random.Random(seed), so a seed fully determines the report.
"""

from __future__ import annotations

import math
import random
import statistics
from dataclasses import dataclass
from datetime import datetime

from .comparison import compare
from .config import Runtime
from .errors import AllProvidersFailed
from .fares import TrafficLevel
from .providers import QuoteRequest, fan_out

SIMULATION_DATE = (2025, 1, 15)

# savings band the shipped default configuration is calibrated to reproduce
DEFAULT_BAND = (10.0, 15.0)


@dataclass(frozen=True)
class SimulationReport:
    n: int
    mean_savings_pct: float
    median_savings_pct: float
    p90_savings_pct: float
    fastest_wins: dict[str, int]


def generate_requests(n: int, seed: int, registry) -> list[QuoteRequest]:
    """The seeded request sample; replayable independently of the simulation."""
    rng = random.Random(seed)
    names = registry.names()
    year, month, day = SIMULATION_DATE
    requests = []
    for _ in range(n):
        pickup, drop = rng.sample(names, 2)
        passengers = rng.randint(1, 6)
        hour = rng.randint(0, 23)
        minute = rng.randint(0, 59)
        traffic = rng.choice((TrafficLevel.LOW, TrafficLevel.MEDIUM, TrafficLevel.HIGH))
        requests.append(
            QuoteRequest(
                pickup=pickup,
                drop=drop,
                passengers=passengers,
                departure=datetime(year, month, day, hour, minute),
                traffic=traffic,
            )
        )
    return requests


def percentile_nearest_rank(values: list[float], pct: float) -> float:
    """Nearest-rank percentile over a non-empty sample."""
    ordered = sorted(values)
    rank = max(1, math.ceil(pct / 100.0 * len(ordered)))
    return ordered[rank - 1]


def run_simulation(requests: list[QuoteRequest], runtime: Runtime) -> SimulationReport:
    """Compare every request and aggregate savings (vs. the cheapest quote)
    and fastest-provider win counts."""
    savings: list[float] = []
    wins: dict[str, int] = {}
    for req in requests:
        try:
            outcomes = fan_out(req, runtime.config.fanout, runtime.transport)
        except AllProvidersFailed as exc:
            outcomes = exc.outcomes
        result = compare(outcomes, runtime.config.weights)
        if result.savings_pct is not None:
            savings.append(result.savings_pct)
        if result.fastest is not None:
            wins[result.fastest.value] = wins.get(result.fastest.value, 0) + 1
    if not savings:
        raise AllProvidersFailed({})
    return SimulationReport(
        n=len(requests),
        mean_savings_pct=math.fsum(savings) / len(savings),
        median_savings_pct=statistics.median(savings),
        p90_savings_pct=percentile_nearest_rank(savings, 90.0),
        fastest_wins=wins,
    )


def render_report(report: SimulationReport, band: tuple[float, float] | None) -> tuple[str, bool]:
    """Human report plus the machine-readable trailer line.

    Returns (text, within_band); within_band is True when no band is checked.
    """
    lines = [
        f"simulated requests: {report.n}",
        f"savings vs cheapest (pct): mean={report.mean_savings_pct:.4f} "
        f"median={report.median_savings_pct:.4f} p90={report.p90_savings_pct:.4f}",
    ]
    total = sum(report.fastest_wins.values())
    for name in sorted(report.fastest_wins):
        count = report.fastest_wins[name]
        lines.append(f"fastest wins: {name}={count} ({100.0 * count / total:.1f}%)")
    within = True
    if band is not None:
        lo, hi = band
        within = lo <= report.mean_savings_pct <= hi
        verdict = "within" if within else "OUTSIDE"
        lines.append(
            f"expected savings band: [{lo:g}, {hi:g}] -> measured mean {report.mean_savings_pct:.4f} ({verdict})"
        )
    lines.append(f"mean_savings_pct={report.mean_savings_pct!r}")
    return "\n".join(lines), within
