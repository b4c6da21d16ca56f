"""Provider quote computation and concurrent fan-out.

Each provider's model sits behind the same quote surface: an embedded
transport computes in-process, an HTTP transport speaks the provider quote
protocol (POST /v1/quote). fan_out queries all enabled providers
concurrently with per-provider deadlines and returns partial results as
typed failures instead of blocking the comparison.
"""

from __future__ import annotations

import logging
import time
from concurrent.futures import ThreadPoolExecutor
from concurrent.futures import TimeoutError as FutureTimeoutError
from dataclasses import dataclass
from datetime import datetime, timezone
from enum import Enum
from typing import Mapping, Protocol, Union

import httpx

from .errors import AllProvidersFailed, FareCmpError, InvalidRequest, UnknownArea
from .fares import (
    EtaParams,
    LinearFareModel,
    Money,
    RateCard,
    TrafficLevel,
    UberParams,
    eta_minutes,
    ola_fare,
    rapido_fare,
    trip_duration_min,
    uber_fare,
)
from .geo import DEFAULT_CIRCUITY, AreaRegistry, normalize_name, route_distance

logger = logging.getLogger(__name__)

DEPARTURE_FORMAT = "%Y-%m-%dT%H:%M"


class ProviderId(str, Enum):
    OLA = "ola"
    UBER = "uber"
    RAPIDO = "rapido"


class FailureKind(str, Enum):
    TIMEOUT = "timeout"
    UNAVAILABLE = "unavailable"
    BAD_REQUEST = "bad_request"
    INTERNAL = "internal"


RETRYABLE_KINDS = frozenset({FailureKind.TIMEOUT, FailureKind.UNAVAILABLE})


@dataclass(frozen=True)
class QuoteRequest:
    pickup: str
    drop: str
    passengers: int
    departure: datetime
    traffic: TrafficLevel = TrafficLevel.MEDIUM

    def __post_init__(self):
        if not self.pickup.strip() or not self.drop.strip():
            raise InvalidRequest("pickup and drop must be non-empty")
        if normalize_name(self.pickup) == normalize_name(self.drop):
            raise InvalidRequest("pickup and drop must differ")
        if not 1 <= self.passengers <= 6:
            raise InvalidRequest(f"passengers must be in [1, 6], got {self.passengers}")

    def wire_body(self) -> dict:
        return {
            "pickup": self.pickup,
            "drop": self.drop,
            "passengers": self.passengers,
            "departure": self.departure.strftime(DEPARTURE_FORMAT),
            "traffic": self.traffic.value,
        }


def parse_departure(text: str) -> datetime:
    """ISO 8601 at minute precision; seconds are accepted and truncated."""
    try:
        parsed = datetime.fromisoformat(text)
    except ValueError:
        raise InvalidRequest(f"bad departure {text!r}, expected ISO 8601 like 2025-01-15T09:30") from None
    return parsed.replace(second=0, microsecond=0)


@dataclass(frozen=True)
class ProviderQuote:
    provider: ProviderId
    fare: Money
    eta_min: int
    distance_km: float
    computed_at: datetime

    def __post_init__(self):
        if self.eta_min < 0:
            raise ValueError("eta_min must be >= 0")


@dataclass(frozen=True)
class ProviderFailure:
    provider: ProviderId
    kind: FailureKind
    detail: str


Outcome = Union[ProviderQuote, ProviderFailure]
OutcomeMap = dict[ProviderId, Outcome]


@dataclass(frozen=True)
class FanoutConfig:
    per_provider_timeout_ms: float = 800.0
    retry_once_on: frozenset[FailureKind] = RETRYABLE_KINDS
    providers_enabled: frozenset[ProviderId] = frozenset(ProviderId)

    def __post_init__(self):
        if self.per_provider_timeout_ms <= 0:
            raise ValueError("per_provider_timeout_ms must be > 0")


@dataclass(frozen=True)
class ProviderModels:
    """Everything needed to compute a quote in-process."""

    rate_card: RateCard
    uber: UberParams
    rapido: LinearFareModel
    eta: EtaParams
    circuity: float = DEFAULT_CIRCUITY


def provider_quote(p: ProviderId, req: QuoteRequest, models: ProviderModels, registry: AreaRegistry) -> ProviderQuote:
    """Distance, fare and ETA for one provider; raises UnknownArea or a model error."""
    src = registry.resolve(req.pickup)
    dst = registry.resolve(req.drop)
    distance = route_distance(src, dst, models.circuity)
    if p is ProviderId.OLA:
        duration = trip_duration_min(distance, req.traffic, models.eta)
        fare = ola_fare(distance, duration, req.departure, models.rate_card)
    elif p is ProviderId.UBER:
        fare = uber_fare(distance, req.passengers, req.departure, models.uber)
    else:
        fare = rapido_fare(distance, models.rapido)
    eta = eta_minutes(distance, req.traffic, models.eta.pickup_wait_min[p.value], models.eta)
    return ProviderQuote(
        provider=p,
        fare=fare,
        eta_min=eta,
        distance_km=distance,
        computed_at=datetime.now(timezone.utc),
    )


class TransportFailure(FareCmpError):
    """One provider call failed; ``kind`` drives the retry policy."""

    def __init__(self, kind: FailureKind, detail: str):
        super().__init__(detail)
        self.kind = kind
        self.detail = detail


class Transport(Protocol):
    def fetch_quote(self, p: ProviderId, req: QuoteRequest, timeout_s: float) -> ProviderQuote: ...


class EmbeddedTransport:
    """Runs the provider models in-process; the default for dev and tests."""

    def __init__(self, models: ProviderModels, registry: AreaRegistry):
        self.models = models
        self.registry = registry

    def fetch_quote(self, p: ProviderId, req: QuoteRequest, timeout_s: float) -> ProviderQuote:
        try:
            return provider_quote(p, req, self.models, self.registry)
        except (UnknownArea, FareCmpError) as exc:
            raise TransportFailure(FailureKind.BAD_REQUEST, str(exc)) from exc


class HttpTransport:
    """Speaks the provider quote protocol against per-provider endpoint URLs.

    Holds one pooled httpx client (thread-safe) so concurrent fan-outs reuse
    connections. Failure details are normalized to stable strings so that
    responses stay byte-deterministic under fault injection.
    """

    def __init__(self, endpoints: Mapping[ProviderId, str]):
        self.endpoints = dict(endpoints)
        self._client = httpx.Client(limits=httpx.Limits(max_connections=24, max_keepalive_connections=12))

    def close(self) -> None:
        self._client.close()

    def fetch_quote(self, p: ProviderId, req: QuoteRequest, timeout_s: float) -> ProviderQuote:
        url = self.endpoints[p].rstrip("/") + "/v1/quote"
        try:
            resp = self._client.post(url, json=req.wire_body(), timeout=timeout_s)
        except httpx.TimeoutException:
            raise TransportFailure(FailureKind.TIMEOUT, f"timed out after {int(timeout_s * 1000)}ms") from None
        except httpx.TransportError:
            raise TransportFailure(FailureKind.UNAVAILABLE, "connection failed") from None
        if resp.status_code == 200:
            return self._parse_quote(p, resp)
        if resp.status_code == 400:
            detail = self._error_detail(resp)
            raise TransportFailure(FailureKind.BAD_REQUEST, detail)
        if resp.status_code == 503:
            raise TransportFailure(FailureKind.UNAVAILABLE, "provider returned 503")
        raise TransportFailure(FailureKind.INTERNAL, f"unexpected status {resp.status_code}")

    @staticmethod
    def _error_detail(resp: httpx.Response) -> str:
        try:
            return str(resp.json().get("detail", "bad request"))
        except ValueError:
            return "bad request"

    @staticmethod
    def _parse_quote(p: ProviderId, resp: httpx.Response) -> ProviderQuote:
        try:
            body = resp.json()
            return ProviderQuote(
                provider=ProviderId(body["provider"]),
                fare=Money(int(body["fare_rupees"]) * 100),
                eta_min=int(body["eta_min"]),
                distance_km=float(body["distance_km"]),
                computed_at=datetime.now(timezone.utc),
            )
        except (ValueError, KeyError, TypeError) as exc:
            raise TransportFailure(FailureKind.INTERNAL, f"malformed provider response: {exc}") from exc


def _call_with_retry(transport: Transport, p: ProviderId, req: QuoteRequest, cfg: FanoutConfig) -> Outcome:
    timeout_s = cfg.per_provider_timeout_ms / 1000.0
    attempts = 0
    while True:
        attempts += 1
        try:
            return transport.fetch_quote(p, req, timeout_s)
        except TransportFailure as exc:
            if attempts == 1 and exc.kind in cfg.retry_once_on:
                logger.debug("retrying %s after %s", p.value, exc.kind.value)
                continue
            return ProviderFailure(provider=p, kind=exc.kind, detail=exc.detail)
        except Exception as exc:  # defensive: a transport bug must not sink the fan-out
            logger.exception("unexpected transport error for %s", p.value)
            return ProviderFailure(provider=p, kind=FailureKind.INTERNAL, detail=str(exc))


def fan_out(req: QuoteRequest, cfg: FanoutConfig, transport: Transport) -> OutcomeMap:
    """Query all enabled providers concurrently.

    Returns exactly one outcome (quote or typed failure) per enabled provider.
    Raises AllProvidersFailed, carrying the complete map, when no provider
    answered with a quote.
    """
    enabled = sorted(cfg.providers_enabled, key=lambda p: p.value)
    if not enabled:
        raise ValueError("at least one provider must be enabled")
    # backstop for a transport that ignores its deadline: attempt budget plus margin
    deadline = time.monotonic() + cfg.per_provider_timeout_ms / 1000.0 * 2 + 2.0
    outcomes: OutcomeMap = {}
    pool = ThreadPoolExecutor(max_workers=len(enabled), thread_name_prefix="fanout")
    try:
        futures = {p: pool.submit(_call_with_retry, transport, p, req, cfg) for p in enabled}
        for p, future in futures.items():
            try:
                outcomes[p] = future.result(timeout=max(0.0, deadline - time.monotonic()))
            except FutureTimeoutError:
                outcomes[p] = ProviderFailure(
                    provider=p, kind=FailureKind.TIMEOUT, detail="transport missed its deadline"
                )
    finally:
        # do not block on a hung transport thread
        pool.shutdown(wait=False)
    if all(isinstance(o, ProviderFailure) for o in outcomes.values()):
        raise AllProvidersFailed(outcomes)
    return outcomes
