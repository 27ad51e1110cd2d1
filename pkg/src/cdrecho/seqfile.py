"""JSON pulse-sequence files.

External units are experiment-friendly: times and durations in microseconds,
ensemble width in Hz, areas in units of pi. Parsing converts to the internal
SI units (seconds, rad/s, radians). Example:

    {
      "pulses": [
        {"channel": "optical12", "area_pi": 0.1, "t_start": 0.0, "duration": 0.0}
      ],
      "ensemble": {"sigma_hz": 1e6, "n_atoms": 201, "span": 5.0},
      "grid": {"t_end": 45.0, "dt": 0.005}
    }

"pulses" is required (may be empty); "ensemble" and "grid" fall back to the
defaults below. Default t_end is twice the last pulse end; default dt
resolves the fastest comb beat with 40 samples per period.
"""

from __future__ import annotations

import json
import math

from .ensemble import DEFAULT_N_ATOMS, DEFAULT_SIGMA, DEFAULT_SPAN, EnsembleSpec
from .states import Channel, Pulse, PulseSequence

__all__ = [
    "GridConfig",
    "SequenceFileError",
    "parse_sequence_file",
    "serialize_sequence_file",
    "default_dt",
]

from dataclasses import dataclass

US = 1e-6
TWO_PI = 2.0 * math.pi

_CHANNELS = {c.value: c for c in Channel}


class SequenceFileError(ValueError):
    """Parse or validation failure with a machine-readable code."""

    def __init__(self, code: str, message: str):
        super().__init__(f"{code}: {message}")
        self.code = code


@dataclass(frozen=True)
class GridConfig:
    """Trace window: end time and sample step, both seconds."""

    t_end: float
    dt: float

    def __post_init__(self):
        if not math.isfinite(self.t_end) or self.t_end < 0:
            raise ValueError("t_end must be finite and >= 0")
        if not math.isfinite(self.dt) or self.dt <= 0:
            raise ValueError("dt must be positive")


def default_dt(spec: EnsembleSpec) -> float:
    """40 samples per period of the largest comb detuning, in seconds."""
    edge_hz = spec.span * spec.sigma / TWO_PI
    if edge_hz <= 0:
        return 1e-7
    return 1.0 / (40.0 * edge_hz)


def _require(obj: dict, key: str, where: str):
    if key not in obj:
        raise SequenceFileError("MISSING_REQUIRED_FIELD", f"{where} is missing {key!r}")
    return obj[key]


def _number(value, where: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise SequenceFileError("INVALID_VALUE", f"{where} must be a number, got {value!r}")
    if not math.isfinite(float(value)):
        raise SequenceFileError("INVALID_VALUE", f"{where} must be finite")
    return float(value)


def parse_sequence_file(text: str) -> tuple[PulseSequence, EnsembleSpec, GridConfig]:
    """Parse JSON text into a sequence, ensemble spec and sample grid."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SequenceFileError(
            "SYNTAX_ERROR", f"line {exc.lineno} column {exc.colno}: {exc.msg}"
        ) from exc
    if not isinstance(doc, dict):
        raise SequenceFileError("SYNTAX_ERROR", "top level must be an object")

    raw_pulses = _require(doc, "pulses", "sequence")
    if not isinstance(raw_pulses, list):
        raise SequenceFileError("INVALID_VALUE", "'pulses' must be a list")
    pulses = []
    for k, entry in enumerate(raw_pulses):
        where = f"pulses[{k}]"
        if not isinstance(entry, dict):
            raise SequenceFileError("INVALID_VALUE", f"{where} must be an object")
        chan_name = _require(entry, "channel", where)
        if chan_name not in _CHANNELS:
            raise SequenceFileError(
                "UNKNOWN_CHANNEL",
                f"{where} channel {chan_name!r} is not one of {sorted(_CHANNELS)}",
            )
        area = _number(_require(entry, "area_pi", where), f"{where}.area_pi") * math.pi
        t_start = _number(_require(entry, "t_start", where), f"{where}.t_start") * US
        duration = _number(entry.get("duration", 0.0), f"{where}.duration") * US
        try:
            pulses.append(
                Pulse(
                    channel=_CHANNELS[chan_name],
                    area=area,
                    t_start=t_start,
                    duration=duration,
                )
            )
        except ValueError as exc:
            raise SequenceFileError("INVALID_VALUE", f"{where}: {exc}") from exc

    ens_doc = doc.get("ensemble", {})
    if not isinstance(ens_doc, dict):
        raise SequenceFileError("INVALID_VALUE", "'ensemble' must be an object")
    sigma_hz = _number(ens_doc.get("sigma_hz", DEFAULT_SIGMA / TWO_PI), "ensemble.sigma_hz")
    n_atoms = ens_doc.get("n_atoms", DEFAULT_N_ATOMS)
    if isinstance(n_atoms, bool) or not isinstance(n_atoms, int):
        raise SequenceFileError("INVALID_VALUE", "ensemble.n_atoms must be an integer")
    span = _number(ens_doc.get("span", DEFAULT_SPAN), "ensemble.span")
    try:
        spec = EnsembleSpec(sigma=TWO_PI * sigma_hz, n_atoms=n_atoms, span=span)
    except ValueError as exc:
        raise SequenceFileError("INVALID_VALUE", f"ensemble: {exc}") from exc

    pulses.sort(key=lambda p: p.t_start)  # files may list pulses in any order

    grid_doc = doc.get("grid", {})
    if not isinstance(grid_doc, dict):
        raise SequenceFileError("INVALID_VALUE", "'grid' must be an object")
    last_end = max((p.t_end for p in pulses), default=0.0)
    t_end = (
        _number(grid_doc["t_end"], "grid.t_end") * US
        if "t_end" in grid_doc
        else 2.0 * last_end
    )
    dt = (
        _number(grid_doc["dt"], "grid.dt") * US
        if "dt" in grid_doc
        else default_dt(spec)
    )
    try:
        grid = GridConfig(t_end=t_end, dt=dt)
        seq = PulseSequence(pulses=tuple(pulses), t_end=t_end)
    except ValueError as exc:
        code = "OVERLAPPING_PULSES" if "overlap" in str(exc) else "INVALID_VALUE"
        raise SequenceFileError(code, str(exc)) from exc
    return seq, spec, grid


def serialize_sequence_file(
    seq: PulseSequence, spec: EnsembleSpec, grid: GridConfig
) -> str:
    """Inverse of parse_sequence_file, emitting the external units."""
    doc = {
        "pulses": [
            {
                "channel": p.channel.value,
                "area_pi": p.area / math.pi,
                "t_start": p.t_start / US,
                "duration": p.duration / US,
            }
            for p in seq.pulses
        ],
        "ensemble": {
            "sigma_hz": spec.sigma / TWO_PI,
            "n_atoms": spec.n_atoms,
            "span": spec.span,
        },
        "grid": {"t_end": grid.t_end / US, "dt": grid.dt / US},
    }
    return json.dumps(doc, indent=2) + "\n"
