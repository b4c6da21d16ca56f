"""Operator entry point: serve the API, run one-off quotes, fit the Rapido
model, list areas, and run the savings simulation.

Exit codes: 0 success, 1 runtime/domain failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import os
import sys
from datetime import datetime

from .comparison import compare
from .config import ENV_CONFIG, load_runtime
from .errors import AllProvidersFailed, FareCmpError
from .fares import Money, TrafficLevel
from .ingestion import fit_linear_model, fit_rmse, load_trips, save_model
from .providers import QuoteRequest, fan_out, parse_departure
from .simulate import generate_requests, render_report, run_simulation


def _config_path(args: argparse.Namespace) -> str | None:
    return args.config or os.environ.get(ENV_CONFIG) or None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="farecmp", description="Multi-provider ride fare comparison")
    sub = parser.add_subparsers(dest="command", required=True)

    serve = sub.add_parser("serve", help="run the comparison API")
    serve.add_argument("--port", type=int, default=None, help="override the configured listen port")
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--config", default=None, help=f"service config path (or ${ENV_CONFIG})")

    quote = sub.add_parser("quote", help="compare fares for one trip")
    quote.add_argument("--from", dest="pickup", required=True, metavar="AREA")
    quote.add_argument("--to", dest="drop", required=True, metavar="AREA")
    quote.add_argument("--passengers", type=int, default=1)
    quote.add_argument("--time", default=None, help="departure, ISO 8601 minute precision (default: now)")
    quote.add_argument("--traffic", choices=[t.value for t in TrafficLevel], default="medium")
    quote.add_argument("--config", default=None)

    fit = sub.add_parser("fit", help="fit the linear fare model from a trips CSV")
    fit.add_argument("--input", required=True, help="trips CSV (from,to,distance_km,fare)")
    fit.add_argument("--out", required=True, help="where to write the model JSON")
    fit.add_argument("--min-fare", type=float, default=25.0, help="floor attached to the model, rupees")
    fit.add_argument("--config", default=None, help="config supplying the area registry for distance back-fill")

    areas = sub.add_parser("areas", help="list known area names")
    areas.add_argument("--areas", dest="areas_csv", default=None, help="areas CSV (default: configured registry)")
    areas.add_argument("--config", default=None)

    sim = sub.add_parser("simulate", help="estimate savings over random requests")
    sim.add_argument("--n", type=int, default=1000)
    sim.add_argument("--seed", type=int, default=42)
    sim.add_argument("--config", default=None)
    sim.add_argument("--band", default="10:15", metavar="LO:HI",
                     help="acceptable mean-savings band; exit 1 when the measured mean falls outside")
    sim.add_argument("--no-band-check", action="store_true", help="report only, never fail on the band")
    return parser


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .api import create_app

    runtime = load_runtime(_config_path(args))
    app = create_app(runtime)
    port = args.port if args.port is not None else runtime.config.listen_port
    uvicorn.run(app, host=args.host, port=port, log_level="warning")
    return 0


def _quote_request(args: argparse.Namespace) -> QuoteRequest:
    if args.time is None:
        departure = datetime.now().replace(second=0, microsecond=0)
    else:
        departure = parse_departure(args.time)
    return QuoteRequest(
        pickup=args.pickup,
        drop=args.drop,
        passengers=args.passengers,
        departure=departure,
        traffic=TrafficLevel(args.traffic),
    )


def cmd_quote(args: argparse.Namespace) -> int:
    runtime = load_runtime(_config_path(args))
    req = _quote_request(args)
    runtime.registry.resolve(req.pickup)
    runtime.registry.resolve(req.drop)
    outcomes = fan_out(req, runtime.config.fanout, runtime.transport)
    result = compare(outcomes, runtime.config.weights)

    rows = []
    for q in result.quotes:
        badges = [
            label
            for label, designated in (
                ("CHEAPEST", result.cheapest), ("FASTEST", result.fastest), ("BEST", result.best),
            )
            if designated == q.provider
        ]
        rows.append((q.provider.value, f"{q.fare.whole_rupees}", f"{q.eta_min}", " ".join(badges)))
    for f in result.failures:
        rows.append((f.provider.value, "-", "-", f"FAILED({f.kind.value})"))

    print(f"{'provider':<10} {'fare(INR)':>10} {'eta(min)':>9}  flags")
    for provider, fare, eta, flags in rows:
        print(f"{provider:<10} {fare:>10} {eta:>9}  {flags}")
    if result.savings_pct is not None:
        print(f"choosing {result.cheapest.value} saves {result.savings_pct:.2f}% vs the average quote")
    return 0


def cmd_fit(args: argparse.Namespace) -> int:
    runtime = load_runtime(_config_path(args))
    dataset = load_trips(args.input, runtime.registry, runtime.models.circuity)
    model = fit_linear_model(dataset, Money.from_rupees(args.min_fare))
    save_model(model, args.out)
    rmse = fit_rmse(dataset, model)
    print(f"fitted {len(dataset)} trips from {dataset.source_path}")
    print(f"intercept_rupees={model.intercept.rupees} slope_rupees_per_km={model.slope.rupees} rmse_rupees={rmse:.4f}")
    print(f"model written to {args.out}")
    return 0


def cmd_areas(args: argparse.Namespace) -> int:
    if args.areas_csv is not None:
        from .geo import load_areas

        registry = load_areas(args.areas_csv)
    else:
        registry = load_runtime(_config_path(args)).registry
    for name in registry.names():
        print(name)
    return 0


def _parse_band(text: str) -> tuple[float, float]:
    try:
        lo_s, hi_s = text.split(":")
        lo, hi = float(lo_s), float(hi_s)
    except ValueError:
        raise FareCmpError(f"--band must look like LO:HI, got {text!r}") from None
    if lo > hi:
        raise FareCmpError(f"--band lower bound exceeds upper: {text!r}")
    return lo, hi


def cmd_simulate(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    if args.n <= 0:
        parser.error("--n must be >= 1")
    runtime = load_runtime(_config_path(args))
    band = None if args.no_band_check else _parse_band(args.band)
    requests = generate_requests(args.n, args.seed, runtime.registry)
    report = run_simulation(requests, runtime)
    text, within = render_report(report, band)
    print(text)
    return 0 if within else 1


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "serve":
            return cmd_serve(args)
        if args.command == "quote":
            return cmd_quote(args)
        if args.command == "fit":
            return cmd_fit(args)
        if args.command == "areas":
            return cmd_areas(args)
        if args.command == "simulate":
            return cmd_simulate(args, parser)
        parser.error(f"unknown command {args.command!r}")
    except AllProvidersFailed as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except FareCmpError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 2


if __name__ == "__main__":
    raise SystemExit(main())
