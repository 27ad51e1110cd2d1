"""Fixed-step RK4 integration of the driven three-level master equation.

The right-hand side is written out element by element from the rate
equations rather than assembled as a matrix commutator, so tests can pin it
against an independently built commutator oracle. Fixed-step classical RK4
keeps trajectories bit-reproducible across runs; adaptive steppers are
deliberately not used.
"""

from __future__ import annotations

import math
from collections.abc import Callable
from dataclasses import dataclass

import numpy as np

from .states import AtomParams, Channel, DensityMatrix, PulseSequence

__all__ = ["DriveSample", "rhs", "rk4_step", "integrate_sequence"]


@dataclass(frozen=True)
class DriveSample:
    """Instantaneous Rabi frequencies (rad/s) on the two channels."""

    omega_j: float = 0.0
    omega_k: float = 0.0

    def __post_init__(self):
        if not math.isfinite(self.omega_j) or not math.isfinite(self.omega_k):
            raise ValueError("drive amplitudes must be finite")


def _rhs_elements(rho: np.ndarray, drive: DriveSample, atom: AtomParams) -> np.ndarray:
    """Elementwise master-equation derivative; broadcasts over leading axes."""
    oj = 0.5j * drive.omega_j
    ok = 0.5j * drive.omega_k
    d = atom.delta
    ds = atom.delta_s
    g1, g2, g3 = atom.gamma

    r11 = rho[..., 0, 0]
    r12 = rho[..., 0, 1]
    r13 = rho[..., 0, 2]
    r21 = rho[..., 1, 0]
    r22 = rho[..., 1, 1]
    r23 = rho[..., 1, 2]
    r31 = rho[..., 2, 0]
    r32 = rho[..., 2, 1]
    r33 = rho[..., 2, 2]

    out = np.empty_like(rho)
    out[..., 0, 0] = -oj * (r12 - r21) - g1 * r11
    out[..., 1, 1] = -oj * (r21 - r12) - ok * (r23 - r32) - g2 * r22
    out[..., 2, 2] = -ok * (r32 - r23) - g3 * r33
    out[..., 0, 1] = -oj * (r11 - r22) - ok * r13 + 1j * d * r12 - 0.5 * (g1 + g2) * r12
    out[..., 0, 2] = -ok * r12 + oj * r23 + 1j * ds * r13 - 0.5 * (g1 + g3) * r13
    out[..., 1, 2] = (
        -ok * (r22 - r33) + oj * r13 + 1j * (ds - d) * r23 - 0.5 * (g2 + g3) * r23
    )
    out[..., 1, 0] = oj * (r11 - r22) + ok * r31 - 1j * d * r21 - 0.5 * (g1 + g2) * r21
    out[..., 2, 0] = ok * r21 - oj * r32 - 1j * ds * r31 - 0.5 * (g1 + g3) * r31
    out[..., 2, 1] = (
        ok * (r22 - r33) - oj * r31 - 1j * (ds - d) * r32 - 0.5 * (g2 + g3) * r32
    )
    return out


def rhs(rho: DensityMatrix, drive: DriveSample, atom: AtomParams) -> np.ndarray:
    """d(rho)/dt for the given instantaneous drive and atom parameters."""
    return _rhs_elements(rho.elements, drive, atom)


def _rk4_elements(
    rho: np.ndarray,
    t: float,
    dt: float,
    drive_fn: Callable[[float], DriveSample],
    atom: AtomParams,
) -> np.ndarray:
    k1 = _rhs_elements(rho, drive_fn(t), atom)
    d_mid = drive_fn(t + 0.5 * dt)
    k2 = _rhs_elements(rho + 0.5 * dt * k1, d_mid, atom)
    k3 = _rhs_elements(rho + 0.5 * dt * k2, d_mid, atom)
    k4 = _rhs_elements(rho + dt * k3, drive_fn(t + dt), atom)
    nxt = rho + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
    # re-symmetrize to stop roundoff from drifting rho off Hermitian
    nxt = 0.5 * (nxt + np.conj(np.swapaxes(nxt, -1, -2)))
    if not np.all(np.isfinite(nxt.view(float))):
        raise FloatingPointError("integration produced non-finite state")
    return nxt


def rk4_step(
    rho: DensityMatrix,
    t: float,
    dt: float,
    drive_fn: Callable[[float], DriveSample],
    atom: AtomParams,
) -> DensityMatrix:
    """One classical RK4 step from t to t + dt."""
    if dt <= 0 or not math.isfinite(dt):
        raise ValueError("dt must be positive and finite")
    return DensityMatrix(_rk4_elements(rho.elements, t, dt, drive_fn, atom))


def _segments(seq: PulseSequence) -> list[tuple[float, float, DriveSample]]:
    """Split [0, t_end] at pulse edges; drive is constant on each segment."""
    edges = {0.0, seq.t_end}
    for p in seq.pulses:
        edges.add(p.t_start)
        edges.add(p.t_end)
    cuts = sorted(edges)
    segs = []
    for a, b in zip(cuts, cuts[1:]):
        mid = 0.5 * (a + b)
        oj = ok = 0.0
        for p in seq.pulses:
            if p.t_start <= mid < p.t_end:
                if p.channel is Channel.OPTICAL12:
                    oj = p.rabi_frequency
                else:
                    ok = p.rabi_frequency
        segs.append((a, b, DriveSample(oj, ok)))
    return segs


def integrate_sequence(
    rho0: DensityMatrix,
    seq: PulseSequence,
    atom: AtomParams,
    dt: float,
    sample_stride: int = 1,
) -> list[tuple[float, DensityMatrix]]:
    """Integrate a finite-duration pulse sequence over [0, t_end].

    Requires every pulse duration > 0 and dt no coarser than a hundredth of
    the shortest pulse. Segment lengths are divided into whole steps, so the
    trajectory lands exactly on every pulse edge. Emits (t, state) every
    sample_stride steps plus all segment edges; starts with (0, rho0).
    """
    if dt <= 0 or not math.isfinite(dt):
        raise ValueError("dt must be positive and finite")
    if sample_stride < 1:
        raise ValueError("sample_stride must be >= 1")
    durations = [p.duration for p in seq.pulses]
    if any(d == 0.0 for d in durations):
        raise ValueError("integrate_sequence requires finite pulse durations")
    if durations and dt > min(durations) / 100.0:
        raise ValueError(
            f"dt={dt} too coarse; need <= {min(durations) / 100.0} "
            "(shortest pulse / 100)"
        )

    rho = rho0.elements.copy()
    out: list[tuple[float, DensityMatrix]] = [(0.0, DensityMatrix(rho))]
    for a, b, drive in _segments(seq):
        span = b - a
        if span <= 0:
            continue
        n = max(1, math.ceil(span / dt - 1e-9))
        h = span / n
        fn = lambda _t, _d=drive: _d
        for i in range(n):
            t = a + i * h
            rho = _rk4_elements(rho, t, h, fn, atom)
            if (i + 1) % sample_stride == 0 or i == n - 1:
                # land exactly on the segment edge despite float accumulation
                t_emit = b if i == n - 1 else a + (i + 1) * h
                out.append((t_emit, DensityMatrix(rho)))
    return out
