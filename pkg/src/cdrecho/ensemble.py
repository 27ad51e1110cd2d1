"""Inhomogeneous-ensemble polarization traces and echo bookkeeping.

A discrete Gaussian comb of detunings stands in for the inhomogeneous line.
The ensemble polarization P(t) is the weighted sum of rho12 over the comb;
it collapses by dephasing after each optical pulse and revives wherever the
per-atom phases realign. Echo times follow a simple phase ledger: the
optical phase slope is +1 per unit time, every odd-pi optical pulse negates
the accumulated phase, and the phase stands still while the coherence is
shelved on the spin level between the two control pulses.

Sign convention: Im P < 0 is an absorptive signal, Im P > 0 emissive.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from types import SimpleNamespace

import numpy as np

from .integrator import _rhs_elements
from .states import AtomParams, Channel, DensityMatrix, PulseSequence
from .unitary import pulse_unitary

__all__ = [
    "DEFAULT_SIGMA",
    "DEFAULT_N_ATOMS",
    "DEFAULT_SPAN",
    "EnsembleSpec",
    "EchoEvent",
    "EchoReport",
    "EnsembleTrace",
    "build_ensemble",
    "time_grid",
    "simulate_ensemble",
    "simulate_polarization",
    "predict_echo_times",
    "detect_echoes",
]

TWO_PI = 2.0 * math.pi

DEFAULT_SIGMA = TWO_PI * 1.0e6  # rad/s, 1 MHz Gaussian width
DEFAULT_N_ATOMS = 201
DEFAULT_SPAN = 5.0

_ODD_PI_TOL = 1e-6


@dataclass(frozen=True)
class EnsembleSpec:
    """Gaussian detuning comb: width sigma (rad/s), n_atoms odd grid points
    spanning [-span*sigma, +span*sigma]."""

    sigma: float = DEFAULT_SIGMA
    n_atoms: int = DEFAULT_N_ATOMS
    span: float = DEFAULT_SPAN

    def __post_init__(self):
        if not math.isfinite(self.sigma) or self.sigma <= 0:
            raise ValueError("sigma must be positive")
        if self.n_atoms < 3 or self.n_atoms % 2 == 0:
            raise ValueError("n_atoms must be odd and >= 3")
        if not math.isfinite(self.span) or self.span < 0:
            raise ValueError("span must be finite and >= 0")


def build_ensemble(spec: EnsembleSpec) -> list[tuple[AtomParams, float]]:
    """Detuning grid members with Gaussian weights normalized to sum 1."""
    deltas, weights = _grid(spec)
    return [
        (AtomParams(delta=float(d)), float(w)) for d, w in zip(deltas, weights)
    ]


def _grid(spec: EnsembleSpec) -> tuple[np.ndarray, np.ndarray]:
    half = spec.span * spec.sigma
    deltas = np.linspace(-half, half, spec.n_atoms)
    weights = np.exp(-(deltas**2) / (2.0 * spec.sigma**2))
    weights /= weights.sum()
    return deltas, weights


def time_grid(t_end: float, dt: float) -> np.ndarray:
    """Uniform sample times 0..t_end inclusive with step dt."""
    if dt <= 0 or t_end < 0:
        raise ValueError("need dt > 0 and t_end >= 0")
    n = max(1, round(t_end / dt))
    return np.linspace(0.0, n * dt, n + 1)


def _readonly(arr: np.ndarray) -> np.ndarray:
    arr = np.ascontiguousarray(arr)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class EnsembleTrace:
    """Sampled ensemble observables: complex P(t) and mean level populations."""

    times: np.ndarray
    polarization: np.ndarray
    pop_ground: np.ndarray
    pop_excited: np.ndarray
    pop_spin: np.ndarray

    def __post_init__(self):
        for name in ("times", "polarization", "pop_ground", "pop_excited", "pop_spin"):
            object.__setattr__(self, name, _readonly(getattr(self, name)))

    def population_at(self, t: float) -> tuple[float, float, float]:
        """Mean populations at the sample nearest to t."""
        i = int(np.argmin(np.abs(self.times - t)))
        return (
            float(self.pop_ground[i]),
            float(self.pop_excited[i]),
            float(self.pop_spin[i]),
        )


@dataclass(frozen=True)
class EchoEvent:
    time: float
    amplitude: float
    im_sign: int
    label: str


@dataclass(frozen=True)
class EchoReport:
    events: tuple[EchoEvent, ...]
    times: np.ndarray
    polarization: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "times", _readonly(self.times))
        object.__setattr__(self, "polarization", _readonly(self.polarization))

    def labeled(self, label: str) -> tuple[EchoEvent, ...]:
        return tuple(e for e in self.events if e.label == label)


def _hard_trace(
    seq: PulseSequence,
    deltas: np.ndarray,
    delta_s: np.ndarray,
    weights: np.ndarray,
    times: np.ndarray,
) -> tuple[np.ndarray, np.ndarray]:
    """Piecewise-exact evolution of the whole comb through a hard sequence."""
    n = deltas.size
    n_t = times.size
    rho = np.zeros((n, 3, 3), dtype=complex)
    rho[:, 0, 0] = 1.0
    lam = np.column_stack([np.zeros(n), deltas, delta_s])  # per-level phase rates
    diag = (np.arange(3), np.arange(3))

    pol = np.empty(n_t, dtype=complex)
    pops = np.empty((n_t, 3))
    idx = 0
    now = 0.0

    def emit_before(limit: float):
        nonlocal idx
        j = int(np.searchsorted(times, limit, side="left"))
        if j > idx:
            span = times[idx:j] - now
            phase = np.exp(1j * np.outer(span, deltas))  # rho12 advances at +delta
            pol[idx:j] = phase @ (weights * rho[:, 0, 1])
            pops[idx:j] = weights @ rho[:, diag[0], diag[1]].real
            idx = j

    for p in seq.pulses:
        emit_before(p.t_start)
        gap = p.t_start - now
        if gap != 0.0:
            u = np.exp(-1j * lam * gap)
            rho = u[:, :, None] * rho * np.conj(u)[:, None, :]
        now = p.t_start
        full = pulse_unitary(p.channel, p.area)
        rho = np.einsum("ab,nbc,dc->nad", full, rho, np.conj(full))
    emit_before(np.inf)
    return pol, pops


def _ode_trace(
    seq: PulseSequence,
    deltas: np.ndarray,
    delta_s: np.ndarray,
    weights: np.ndarray,
    times: np.ndarray,
    ode_dt: float | None,
) -> tuple[np.ndarray, np.ndarray]:
    """Batched RK4 evolution of the comb through a finite-duration sequence."""
    durations = [p.duration for p in seq.pulses]
    if any(d == 0.0 for d in durations):
        raise ValueError("ode engine requires finite pulse durations")
    if ode_dt is None:
        ode_dt = math.inf
        if durations:
            ode_dt = min(ode_dt, min(durations) / 200.0)
        dmax = float(np.abs(deltas).max(initial=0.0))
        if dmax > 0:
            ode_dt = min(ode_dt, 0.02 / dmax)
        if not math.isfinite(ode_dt):
            ode_dt = times[-1] / 1000.0 if times[-1] > 0 else 1.0
    if ode_dt <= 0:
        raise ValueError("ode_dt must be positive")

    n = deltas.size
    rho = np.zeros((n, 3, 3), dtype=complex)
    rho[:, 0, 0] = 1.0
    batch = SimpleNamespace(delta=deltas, delta_s=delta_s, gamma=(0.0, 0.0, 0.0))
    diag = (np.arange(3), np.arange(3))

    edges = {0.0, float(times[-1])}
    for p in seq.pulses:
        edges.add(p.t_start)
        edges.add(p.t_end)
    cuts = sorted(e for e in edges if e <= times[-1] + 1e-30)
    checkpoints = np.unique(np.concatenate([times, np.array(cuts)]))

    def drive_at(t: float):
        oj = ok = 0.0
        for p in seq.pulses:
            if p.t_start <= t < p.t_end:
                if p.channel is Channel.OPTICAL12:
                    oj = p.rabi_frequency
                else:
                    ok = p.rabi_frequency
        return SimpleNamespace(omega_j=oj, omega_k=ok)

    pol = np.empty(times.size, dtype=complex)
    pops = np.empty((times.size, 3))
    idx = 0
    now = checkpoints[0]
    for target in checkpoints:
        span = target - now
        if span > 0:
            drive = drive_at(now + 0.5 * span)
            steps = max(1, math.ceil(span / ode_dt - 1e-9))
            h = span / steps
            for _ in range(steps):
                k1 = _rhs_elements(rho, drive, batch)
                k2 = _rhs_elements(rho + 0.5 * h * k1, drive, batch)
                k3 = _rhs_elements(rho + 0.5 * h * k2, drive, batch)
                k4 = _rhs_elements(rho + h * k3, drive, batch)
                rho = rho + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
                rho = 0.5 * (rho + np.conj(np.swapaxes(rho, -1, -2)))
            now = target
        # every sample time is itself a checkpoint, so emit on exact arrival
        while idx < times.size and times[idx] <= target:
            pol[idx] = np.sum(weights * rho[:, 0, 1])
            pops[idx] = weights @ rho[:, diag[0], diag[1]].real
            idx += 1
    return pol, pops


def simulate_ensemble(
    seq: PulseSequence,
    spec: EnsembleSpec,
    times: np.ndarray,
    engine: str = "hard",
    ode_dt: float | None = None,
) -> EnsembleTrace:
    """Sample P(t) and mean populations for the whole comb.

    engine="hard" treats every pulse as an instantaneous rotation (requires
    zero durations); engine="ode" integrates square envelopes with RK4
    (requires finite durations).
    """
    times = np.asarray(times, dtype=float)
    if times.ndim != 1 or times.size == 0:
        raise ValueError("times must be a non-empty 1-d array")
    if np.any(np.diff(times) <= 0) or times[0] < 0:
        raise ValueError("times must be strictly increasing and >= 0")
    deltas, weights = _grid(spec)
    delta_s = np.zeros_like(deltas)
    if engine == "hard":
        if any(not p.is_hard for p in seq.pulses):
            raise ValueError("hard engine requires zero-duration pulses")
        pol, pops = _hard_trace(seq, deltas, delta_s, weights, times)
    elif engine == "ode":
        pol, pops = _ode_trace(seq, deltas, delta_s, weights, times, ode_dt)
    else:
        raise ValueError(f"unknown engine {engine!r}")
    return EnsembleTrace(
        times=times,
        polarization=pol,
        pop_ground=pops[:, 0],
        pop_excited=pops[:, 1],
        pop_spin=pops[:, 2],
    )


def simulate_polarization(
    seq: PulseSequence,
    spec: EnsembleSpec,
    times: np.ndarray,
    engine: str = "hard",
    ode_dt: float | None = None,
) -> np.ndarray:
    """Complex ensemble polarization P(t) on the given sample times."""
    return simulate_ensemble(seq, spec, times, engine, ode_dt).polarization


def _is_odd_pi(area: float) -> bool:
    k = area / math.pi
    r = round(k)
    return abs(k - r) < _ODD_PI_TOL and r % 2 == 1


def predict_echo_times(seq: PulseSequence) -> list[float]:
    """Echo times from the phase ledger, in order, within [0, t_end].

    The ledger starts at the first optical pulse (coherence birth). Slope is
    +1 on the optical transition and 0 while shelved between odd-pi control
    pulses; every later odd-pi optical pulse negates the ledger. An echo is
    each upward zero crossing after the first such negation. Finite-duration
    pulses count from their centers. No optical pulses means no echoes.
    """
    centers = [(p.t_start + 0.5 * p.duration, p) for p in seq.pulses]
    optical = [(t, p) for t, p in centers if p.channel is Channel.OPTICAL12]
    if not optical:
        return []
    t0, data_pulse = optical[0]

    s = 0.0
    slope = 1.0
    shelved = False
    seen_flip = False
    prev = t0
    echoes: list[float] = []

    def advance(to: float):
        nonlocal s, prev
        s_new = s + slope * (to - prev)
        if seen_flip and slope > 0.0 and s < 0.0 <= s_new:
            echoes.append(prev - s)
        s = s_new
        prev = to

    for tc, p in centers:
        if p is data_pulse or tc < t0:
            continue
        advance(tc)
        if p.channel is Channel.OPTICAL12 and _is_odd_pi(p.area):
            s = -s
            seen_flip = True
        elif p.channel is Channel.CONTROL23 and _is_odd_pi(p.area):
            shelved = not shelved
            slope = 0.0 if shelved else 1.0
    if seen_flip and slope > 0.0 and s < 0.0:
        t_cross = prev - s
        if t_cross <= seq.t_end:
            echoes.append(t_cross)
    return echoes


def detect_echoes(
    times: np.ndarray,
    polarization: np.ndarray,
    seq: PulseSequence,
    threshold_fraction: float = 0.2,
) -> EchoReport:
    """Label local |P| maxima outside pulse intervals as echo events.

    A sample is a peak if it tops both neighbors (ties broken leftward),
    clears threshold_fraction of the largest out-of-pulse |P|, and sits more
    than one grid step from every pulse interval. Peaks within three grid
    steps of a ledger prediction are labeled E1/E2 by prediction order,
    anything else "other". im_sign is the sign of Im P at the peak.
    """
    times = np.asarray(times, dtype=float)
    pol = np.asarray(polarization, dtype=complex)
    if times.shape != pol.shape or times.ndim != 1:
        raise ValueError("times and polarization must be matching 1-d arrays")
    if not 0.0 < threshold_fraction <= 1.0:
        raise ValueError("threshold_fraction must be in (0, 1]")
    if times.size < 3:
        return EchoReport((), times, pol)

    dt = float(np.median(np.diff(times)))
    pad = dt * (1.0 + 1e-9)
    excluded = np.zeros(times.size, dtype=bool)
    for p in seq.pulses:
        excluded |= (times >= p.t_start - pad) & (times <= p.t_end + pad)

    mag = np.abs(pol)
    open_mag = mag[~excluded]
    if open_mag.size == 0:
        return EchoReport((), times, pol)
    ref = float(open_mag.max())
    if ref == 0.0:
        return EchoReport((), times, pol)
    thr = threshold_fraction * ref

    predicted = predict_echo_times(seq)
    events = []
    for i in range(1, times.size - 1):
        if excluded[i] or mag[i] < thr:
            continue
        if not (mag[i] > mag[i - 1] and mag[i] >= mag[i + 1]):
            continue
        label = "other"
        if predicted:
            j = int(np.argmin([abs(t - times[i]) for t in predicted]))
            if abs(predicted[j] - times[i]) <= 3.0 * dt + 1e-12:
                label = "E1" if j == 0 else ("E2" if j == 1 else "other")
        im = pol[i].imag
        events.append(
            EchoEvent(
                time=float(times[i]),
                amplitude=float(mag[i]),
                im_sign=1 if im >= 0 else -1,
                label=label,
            )
        )
    return EchoReport(tuple(events), times, pol)
