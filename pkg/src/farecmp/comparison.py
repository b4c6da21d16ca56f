"""Ranking of provider outcomes: cheapest, fastest, weighted best, savings.

All tie-breaks are lexicographic on the provider wire name so results are
reproducible byte for byte.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping, Optional, Sequence

from .errors import ChosenMissing, NoQuotes, TooFewQuotes
from .providers import Outcome, ProviderFailure, ProviderId, ProviderQuote


@dataclass(frozen=True)
class ScoreWeights:
    """Relative weight of fare vs ETA in the best-option score."""

    w_fare: float = 0.7
    w_eta: float = 0.3

    def __post_init__(self):
        if not (0.0 <= self.w_fare <= 1.0 and 0.0 <= self.w_eta <= 1.0):
            raise ValueError("weights must be in [0, 1]")
        if abs(self.w_fare + self.w_eta - 1.0) > 1e-9:
            raise ValueError(f"weights must sum to 1, got {self.w_fare + self.w_eta}")


@dataclass(frozen=True)
class ComparisonResult:
    quotes: tuple[ProviderQuote, ...]
    failures: tuple[ProviderFailure, ...]
    cheapest: Optional[ProviderId]
    fastest: Optional[ProviderId]
    best: Optional[ProviderId]
    savings_pct: Optional[float]


def rank_by_fare(quotes: Sequence[ProviderQuote]) -> list[ProviderQuote]:
    """Ascending by fare, ties broken by provider name ascending."""
    return sorted(quotes, key=lambda q: (q.fare.amount, q.provider.value))


def fastest_provider(quotes: Sequence[ProviderQuote]) -> ProviderId:
    """Lowest ETA; ties go to the lower fare, then the name (this keeps the
    designation consistent with best_option under a pure-ETA weighting)."""
    if not quotes:
        raise NoQuotes("no quotes to pick the fastest from")
    return min(quotes, key=lambda q: (q.eta_min, q.fare.amount, q.provider.value)).provider


def score_quotes(quotes: Sequence[ProviderQuote], w: ScoreWeights) -> dict[ProviderId, float]:
    """Min-max normalized weighted score per provider; lower is better.

    When all fares (or ETAs) are equal the normalized term is 0 for everyone.
    """
    if not quotes:
        raise NoQuotes("no quotes to score")
    fares = [q.fare.amount for q in quotes]
    etas = [q.eta_min for q in quotes]
    f_min, f_max = min(fares), max(fares)
    e_min, e_max = min(etas), max(etas)

    def norm(value: float, lo: float, hi: float) -> float:
        return 0.0 if hi == lo else (value - lo) / (hi - lo)

    return {
        q.provider: w.w_fare * norm(q.fare.amount, f_min, f_max) + w.w_eta * norm(q.eta_min, e_min, e_max)
        for q in quotes
    }


def best_option(quotes: Sequence[ProviderQuote], w: ScoreWeights) -> ProviderId:
    """Provider with the lowest weighted score; ties go to the lowest fare,
    then the lexicographically first name."""
    scores = score_quotes(quotes, w)
    return min(quotes, key=lambda q: (scores[q.provider], q.fare.amount, q.provider.value)).provider


def savings_pct(quotes: Sequence[ProviderQuote], chosen: ProviderId) -> float:
    """100 * (mean fare - chosen fare) / mean fare, unrounded."""
    if len(quotes) < 2:
        raise TooFewQuotes(f"need >= 2 quotes, got {len(quotes)}")
    by_provider = {q.provider: q for q in quotes}
    if chosen not in by_provider:
        raise ChosenMissing(chosen.value)
    mean_rupees = math.fsum(q.fare.rupees for q in quotes) / len(quotes)
    return 100.0 * (mean_rupees - by_provider[chosen].fare.rupees) / mean_rupees


def compare(outcomes: Mapping[ProviderId, Outcome], weights: ScoreWeights) -> ComparisonResult:
    """Assemble the full comparison from a fan-out outcome map.

    Designations are present iff at least one quote exists; savings (relative
    to the cheapest quote) iff at least two.
    """
    quotes = rank_by_fare([o for o in outcomes.values() if isinstance(o, ProviderQuote)])
    failures = sorted(
        (o for o in outcomes.values() if isinstance(o, ProviderFailure)), key=lambda f: f.provider.value
    )
    cheapest = quotes[0].provider if quotes else None
    fastest = fastest_provider(quotes) if quotes else None
    best = best_option(quotes, weights) if quotes else None
    savings = savings_pct(quotes, cheapest) if len(quotes) >= 2 else None
    return ComparisonResult(
        quotes=tuple(quotes),
        failures=tuple(failures),
        cheapest=cheapest,
        fastest=fastest,
        best=best,
        savings_pct=savings,
    )
