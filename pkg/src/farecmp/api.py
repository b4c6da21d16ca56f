"""HTTP service: quote comparison, area listing, health.

Request bodies are validated by hand (not by framework models) so every
client error comes back as 400 {"error": ..., "detail": ...} with the exact
field names the UI depends on.
"""

from __future__ import annotations

import socket
from urllib.parse import urlparse

from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from .comparison import ComparisonResult, compare
from .config import Runtime
from .errors import AllProvidersFailed, InvalidRequest, UnknownArea
from .fares import TrafficLevel
from .providers import QuoteRequest, fan_out, parse_departure


def comparison_to_json(result: ComparisonResult) -> dict:
    """Wire form of a comparison. Designation keys appear only when set."""
    body: dict = {
        "quotes": [
            {
                "provider": q.provider.value,
                "fare_rupees": q.fare.whole_rupees,
                "eta_min": q.eta_min,
                "distance_km": round(q.distance_km, 2),
            }
            for q in result.quotes
        ],
        "failures": [
            {"provider": f.provider.value, "kind": f.kind.value, "detail": f.detail}
            for f in result.failures
        ],
    }
    if result.cheapest is not None:
        body["cheapest"] = result.cheapest.value
        body["fastest"] = result.fastest.value
        body["best"] = result.best.value
    if result.savings_pct is not None:
        body["savings_pct"] = result.savings_pct
    return body


def _bad_request(detail: str) -> JSONResponse:
    return JSONResponse(status_code=400, content={"error": "bad_request", "detail": detail})


def parse_quote_request(body: dict, runtime: Runtime) -> QuoteRequest:
    """Build a validated QuoteRequest from a JSON body; InvalidRequest on any problem."""
    if not isinstance(body, dict):
        raise InvalidRequest("body must be a JSON object")
    for field_name in ("pickup", "drop", "passengers", "departure"):
        if field_name not in body:
            raise InvalidRequest(f"missing field {field_name!r}")
    try:
        passengers = int(body["passengers"])
    except (TypeError, ValueError):
        raise InvalidRequest(f"passengers must be an integer, got {body['passengers']!r}") from None
    try:
        traffic = TrafficLevel(body.get("traffic", "medium"))
    except ValueError:
        raise InvalidRequest(f"traffic must be one of low/medium/high, got {body.get('traffic')!r}") from None
    req = QuoteRequest(
        pickup=str(body["pickup"]),
        drop=str(body["drop"]),
        passengers=passengers,
        departure=parse_departure(str(body["departure"])),
        traffic=traffic,
    )
    # resolve areas up front so a typo is a 400, not a per-provider failure
    runtime.registry.resolve(req.pickup)
    runtime.registry.resolve(req.drop)
    return req


def _probe_tcp(url: str, timeout_s: float = 0.5) -> bool:
    parsed = urlparse(url)
    host = parsed.hostname or "127.0.0.1"
    port = parsed.port or (443 if parsed.scheme == "https" else 80)
    try:
        with socket.create_connection((host, port), timeout=timeout_s):
            return True
    except OSError:
        return False


def create_app(runtime: Runtime) -> FastAPI:
    app = FastAPI(title="farecmp", docs_url=None, redoc_url=None)
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"]
    )

    @app.post("/v1/compare")
    async def compare_endpoint(request: Request):
        try:
            body = await request.json()
        except Exception:
            return _bad_request("body is not valid JSON")
        try:
            req = parse_quote_request(body, runtime)
        except (InvalidRequest, UnknownArea) as exc:
            return _bad_request(str(exc))
        try:
            outcomes = fan_out(req, runtime.config.fanout, runtime.transport)
        except AllProvidersFailed as exc:
            failed = compare(exc.outcomes, runtime.config.weights)
            return JSONResponse(
                status_code=502,
                content={
                    "error": "all_providers_failed",
                    "detail": str(exc),
                    "failures": comparison_to_json(failed)["failures"],
                },
            )
        return comparison_to_json(compare(outcomes, runtime.config.weights))

    @app.get("/v1/areas")
    async def areas_endpoint():
        return runtime.registry.names()

    @app.get("/v1/health")
    async def health_endpoint():
        enabled = sorted(runtime.config.fanout.providers_enabled, key=lambda p: p.value)
        if runtime.config.providers == "embedded":
            reachable = {p.value: True for p in enabled}
        else:
            reachable = {p.value: _probe_tcp(runtime.config.providers[p]) for p in enabled}
        return {"status": "ok", "providers": reachable}

    return app
