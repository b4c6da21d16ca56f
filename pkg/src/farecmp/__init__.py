"""Multi-provider ride fare comparison: pricing models, quote fan-out,
ranking, an HTTP API and a CLI."""

__version__ = "0.1.0"
