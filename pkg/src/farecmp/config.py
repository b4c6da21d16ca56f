"""Service configuration and runtime assembly.

A service config JSON names the data files (areas CSV, rate cards, fitted
rapido model), fan-out settings, score weights and the provider mode
("embedded" runs models in-process; a URL map fans out over HTTP). Relative
paths resolve against the config file's directory. Any load problem raises
ConfigError so startup fails fast.

The packaged defaults under ``farecmp/data`` are calibrated so that the
default simulation reproduces the expected savings band; they are synthetic
calibration values, not real provider price lists.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Mapping, Optional, Union

from .comparison import ScoreWeights
from .errors import ConfigError, FareCmpError
from .fares import EtaParams, Money, RateCard, TrafficLevel, UberParams
from .geo import DEFAULT_CIRCUITY, AreaRegistry, load_areas
from .ingestion import load_model
from .providers import (
    EmbeddedTransport,
    FailureKind,
    FanoutConfig,
    HttpTransport,
    ProviderId,
    ProviderModels,
    Transport,
)

ENV_CONFIG = "FARECMP_CONFIG"

ProviderEndpoints = Mapping[ProviderId, str]


@dataclass(frozen=True)
class ServiceConfig:
    listen_port: int
    areas_csv: Path
    rate_config: Path
    rapido_model: Path
    circuity: float
    weights: ScoreWeights
    fanout: FanoutConfig
    providers: Union[str, dict[ProviderId, str]]  # "embedded" or endpoint URLs


@dataclass(frozen=True)
class Runtime:
    """Everything the API/CLI needs, immutable after startup."""

    config: ServiceConfig
    registry: AreaRegistry
    models: ProviderModels
    transport: Transport


def default_config_path() -> Path:
    return Path(str(resources.files("farecmp").joinpath("data/service_config.json")))


def _resolve(base: Path, value: str) -> Path:
    p = Path(value)
    return p if p.is_absolute() else base / p


def _parse_window(raw) -> tuple[int, int]:
    if not (isinstance(raw, (list, tuple)) and len(raw) == 2):
        raise ConfigError(f"hour window must be [start, end], got {raw!r}")
    return int(raw[0]), int(raw[1])


def load_rate_config(path: Path) -> tuple[RateCard, UberParams, EtaParams]:
    """Parse the per-provider rate-card file (money values in rupee units)."""
    try:
        raw = json.loads(path.read_text(encoding="utf-8"))
        ola = raw["ola"]
        card = RateCard(
            base_fare=Money.from_rupees(ola["base_fare"]),
            base_distance_km=float(ola["base_distance_km"]),
            per_km=Money.from_rupees(ola["per_km"]),
            per_min=Money.from_rupees(ola["per_min"]),
            booking_fee=Money.from_rupees(ola["booking_fee"]),
            min_fare=Money.from_rupees(ola["min_fare"]),
            night_multiplier=float(ola["night_multiplier"]),
            night_window=_parse_window(ola["night_window"]),
        )
        uber = raw["uber"]
        params = UberParams(
            base_fare=Money.from_rupees(uber["base_fare"]),
            per_km=Money.from_rupees(uber["per_km"]),
            min_fare=Money.from_rupees(uber["min_fare"]),
            peak_windows=tuple(_parse_window(w) for w in uber["peak_windows"]),
            peak_multiplier=float(uber["peak_multiplier"]),
            xl_multiplier=float(uber["xl_multiplier"]),
            xl_threshold=int(uber["xl_threshold"]),
        )
        eta_raw = raw["eta"]
        eta = EtaParams(
            speed_kmh={TrafficLevel(k): float(v) for k, v in eta_raw["speed_kmh"].items()},
            pickup_wait_min={str(k): float(v) for k, v in eta_raw["pickup_wait_min"].items()},
        )
        for provider in ProviderId:
            if provider.value not in eta.pickup_wait_min:
                raise ConfigError(f"missing pickup wait for provider {provider.value!r}")
        return card, params, eta
    except ConfigError:
        raise
    except FileNotFoundError as exc:
        raise ConfigError(f"rate config not found: {path}") from exc
    except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"bad rate config {path}: {exc}") from exc


def load_service_config(path: Optional[Union[str, Path]] = None) -> ServiceConfig:
    path = Path(path) if path is not None else default_config_path()
    try:
        raw = json.loads(path.read_text(encoding="utf-8"))
    except FileNotFoundError as exc:
        raise ConfigError(f"config file not found: {path}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config file {path} is not valid JSON: {exc}") from exc

    base = path.parent
    try:
        weights_raw = raw.get("score_weights", {})
        weights = ScoreWeights(
            w_fare=float(weights_raw.get("w_fare", 0.7)),
            w_eta=float(weights_raw.get("w_eta", 0.3)),
        )
        fanout_raw = raw.get("fanout", {})
        fanout = FanoutConfig(
            per_provider_timeout_ms=float(fanout_raw.get("per_provider_timeout_ms", 800)),
            retry_once_on=frozenset(FailureKind(k) for k in fanout_raw.get("retry_once_on", ["timeout", "unavailable"])),
            providers_enabled=frozenset(ProviderId(p) for p in fanout_raw.get("providers_enabled", [p.value for p in ProviderId])),
        )
        providers_raw = raw.get("providers", "embedded")
        if providers_raw == "embedded":
            providers: Union[str, dict[ProviderId, str]] = "embedded"
        elif isinstance(providers_raw, dict):
            providers = {ProviderId(k): str(v) for k, v in providers_raw.items()}
            missing = [p.value for p in fanout.providers_enabled if p not in providers]
            if missing:
                raise ConfigError(f"no endpoint URL for enabled providers: {', '.join(sorted(missing))}")
        else:
            raise ConfigError(f"providers must be 'embedded' or a URL map, got {providers_raw!r}")
        return ServiceConfig(
            listen_port=int(raw.get("listen_port", 8000)),
            areas_csv=_resolve(base, raw["areas_csv"]),
            rate_config=_resolve(base, raw["rate_config"]),
            rapido_model=_resolve(base, raw["rapido_model"]),
            circuity=float(raw.get("circuity", DEFAULT_CIRCUITY)),
            weights=weights,
            fanout=fanout,
            providers=providers,
        )
    except ConfigError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"bad config {path}: {exc}") from exc


def build_runtime(cfg: ServiceConfig) -> Runtime:
    """Load all referenced files and wire the transport; fails fast on any problem."""
    try:
        registry = load_areas(cfg.areas_csv)
        card, uber, eta = load_rate_config(cfg.rate_config)
        rapido = load_model(cfg.rapido_model)
    except ConfigError:
        raise
    except FileNotFoundError as exc:
        raise ConfigError(str(exc)) from exc
    except FareCmpError as exc:
        raise ConfigError(f"failed to load data: {exc}") from exc
    if len(registry) < 2:
        raise ConfigError(f"area registry needs >= 2 areas, got {len(registry)}")
    models = ProviderModels(rate_card=card, uber=uber, rapido=rapido, eta=eta, circuity=cfg.circuity)
    if cfg.providers == "embedded":
        transport: Transport = EmbeddedTransport(models, registry)
    else:
        transport = HttpTransport(cfg.providers)
    return Runtime(config=cfg, registry=registry, models=models, transport=transport)


def load_runtime(path: Optional[Union[str, Path]] = None) -> Runtime:
    return build_runtime(load_service_config(path))
