"""Mock provider endpoints with deterministic fault injection.

Stands in for the real provider apps: each server speaks the provider quote
protocol (POST /v1/quote) over a thread-served HTTP listener and can inject
latency, seeded random failures, a hard-down mode, or an exact number of
initial failures (for retry tests). Call counts are recorded.
"""

from __future__ import annotations

import json
import random
import threading
import time
from dataclasses import dataclass
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer

from .errors import FareCmpError
from .geo import AreaRegistry
from .providers import ProviderId, ProviderModels, QuoteRequest, parse_departure, provider_quote
from .fares import TrafficLevel


class _QuoteHTTPServer(ThreadingHTTPServer):
    daemon_threads = True
    # stop() must not wait for request threads parked in injected latency sleeps
    block_on_close = False


@dataclass
class MockBehavior:
    latency_ms: float = 0.0
    failure_rate: float = 0.0
    hard_fail: bool = False
    fail_first: int = 0
    seed: int = 0


class MockProviderServer:
    """One provider endpoint on 127.0.0.1 with configurable behavior.

    Behavior may be swapped between requests (a plain attribute write); the
    seeded RNG restarts whenever a new behavior object is installed, so a
    given (behavior, request sequence) is reproducible.
    """

    def __init__(self, provider: ProviderId, models: ProviderModels, registry: AreaRegistry,
                 behavior: MockBehavior | None = None, port: int = 0):
        self.provider = provider
        self.models = models
        self.registry = registry
        self._behavior = behavior or MockBehavior()
        self._rng = random.Random(self._behavior.seed)
        self._remaining_fail_first = self._behavior.fail_first
        self._lock = threading.Lock()
        self.call_count = 0
        self._server = _QuoteHTTPServer(("127.0.0.1", port), _make_handler(self))
        self._thread = threading.Thread(target=self._server.serve_forever, daemon=True)

    @property
    def behavior(self) -> MockBehavior:
        return self._behavior

    @behavior.setter
    def behavior(self, value: MockBehavior) -> None:
        with self._lock:
            self._behavior = value
            self._rng = random.Random(value.seed)
            self._remaining_fail_first = value.fail_first

    @property
    def port(self) -> int:
        return self._server.server_address[1]

    @property
    def base_url(self) -> str:
        return f"http://127.0.0.1:{self.port}"

    def start(self) -> "MockProviderServer":
        self._thread.start()
        return self

    def stop(self) -> None:
        self._server.shutdown()
        self._server.server_close()

    def __enter__(self) -> "MockProviderServer":
        return self.start()

    def __exit__(self, *exc) -> None:
        self.stop()

    def reset_calls(self) -> None:
        with self._lock:
            self.call_count = 0

    def _decide(self) -> tuple[float, bool]:
        """Returns (latency_s, should_fail) for the next request."""
        with self._lock:
            self.call_count += 1
            b = self._behavior
            if b.hard_fail:
                return b.latency_ms / 1000.0, True
            if self._remaining_fail_first > 0:
                self._remaining_fail_first -= 1
                return b.latency_ms / 1000.0, True
            fail = b.failure_rate > 0 and self._rng.random() < b.failure_rate
            return b.latency_ms / 1000.0, fail


def _make_handler(mock: MockProviderServer):
    class Handler(BaseHTTPRequestHandler):
        def log_message(self, *args):  # keep test output quiet
            pass

        def _send(self, status: int, payload: dict) -> None:
            body = json.dumps(payload).encode("utf-8")
            self.send_response(status)
            self.send_header("Content-Type", "application/json")
            self.send_header("Content-Length", str(len(body)))
            self.end_headers()
            self.wfile.write(body)

        def do_POST(self):
            if self.path != "/v1/quote":
                self._send(404, {"error": "not_found"})
                return
            latency_s, fail = mock._decide()
            if latency_s:
                time.sleep(latency_s)
            if fail:
                self._send(503, {"error": "unavailable"})
                return
            try:
                length = int(self.headers.get("Content-Length", "0"))
                body = json.loads(self.rfile.read(length))
                req = QuoteRequest(
                    pickup=str(body["pickup"]),
                    drop=str(body["drop"]),
                    passengers=int(body["passengers"]),
                    departure=parse_departure(str(body["departure"])),
                    traffic=TrafficLevel(body.get("traffic", "medium")),
                )
                quote = provider_quote(mock.provider, req, mock.models, mock.registry)
            except (FareCmpError, KeyError, ValueError, TypeError, json.JSONDecodeError) as exc:
                self._send(400, {"error": "bad_request", "detail": str(exc)})
                return
            self._send(200, {
                "provider": quote.provider.value,
                "fare_rupees": quote.fare.whole_rupees,
                "eta_min": quote.eta_min,
                "distance_km": round(quote.distance_km, 2),
            })

    return Handler


def mock_provider_server(p: ProviderId, models: ProviderModels, registry: AreaRegistry,
                         behavior: MockBehavior | None = None, port: int = 0) -> MockProviderServer:
    """Start a mock endpoint for ``p``; caller owns stop()."""
    return MockProviderServer(p, models, registry, behavior, port).start()
