"""Hard-pulse rotations and free evolution as exact 3x3 unitaries.

A hard pulse of area phi on a channel is the zero-duration limit of a square
resonant pulse: a rotation by phi in the driven two-level subspace, identity
on the spectator level. Free evolution only rotates coherence phases; the
optical level carries delta, the spin level carries delta_s, so a coherence
parked on |1>-|3> stands still when delta_s = 0.
"""

from __future__ import annotations

from collections.abc import Iterable

import numpy as np

from .states import AtomParams, Channel, DensityMatrix, PulseSequence

__all__ = [
    "pulse_unitary",
    "free_evolution_unitary",
    "apply_unitary",
    "run_sequence_hard",
]


def pulse_unitary(channel: Channel, area: float) -> np.ndarray:
    """Unitary for a hard pulse of the given area (radians) on a channel.

    The driven 2x2 block is [[cos(a/2), i sin(a/2)], [i sin(a/2), cos(a/2)]];
    this sign puts a fresh ground-state coherence at rho12 = -(i/2) sin(a).
    """
    c = np.cos(area / 2.0)
    s = 1j * np.sin(area / 2.0)
    u = np.eye(3, dtype=complex)
    if channel is Channel.OPTICAL12:
        u[0, 0] = c
        u[0, 1] = s
        u[1, 0] = s
        u[1, 1] = c
    elif channel is Channel.CONTROL23:
        u[1, 1] = c
        u[1, 2] = s
        u[2, 1] = s
        u[2, 2] = c
    else:
        raise ValueError(f"unknown channel {channel!r}")
    return u


def free_evolution_unitary(atom: AtomParams, dt: float) -> np.ndarray:
    """Phase evolution over dt with no drive: diag(1, e^{-i delta dt}, e^{-i delta_s dt})."""
    return np.diag(
        [
            1.0 + 0.0j,
            np.exp(-1j * atom.delta * dt),
            np.exp(-1j * atom.delta_s * dt),
        ]
    )


def apply_unitary(rho: DensityMatrix, u: np.ndarray) -> DensityMatrix:
    """Conjugate a state: rho -> u rho u^dagger."""
    m = u @ rho.elements @ u.conj().T
    return DensityMatrix(m)


def run_sequence_hard(
    rho0: DensityMatrix,
    seq: PulseSequence,
    atom: AtomParams,
    sample_times: Iterable[float] = (),
) -> list[tuple[float, DensityMatrix]]:
    """Evolve rho0 through a hard-pulse sequence starting at t = 0.

    Emits (time, state) at every requested sample time and at every pulse
    instant; the entry at a pulse instant is the post-pulse state, and a
    sample landing exactly on a pulse instant is merged into that entry.
    Decay is ignored here; use the integrator for damped dynamics.
    """
    for p in seq.pulses:
        if not p.is_hard:
            raise ValueError("run_sequence_hard requires zero-duration pulses")
    samples = sorted(float(t) for t in sample_times)
    if samples and samples[0] < 0:
        raise ValueError("sample times must be >= 0")

    out: list[tuple[float, DensityMatrix]] = []
    rho = rho0.elements.copy()
    now = 0.0
    idx = 0

    def free(m: np.ndarray, span: float) -> np.ndarray:
        if span == 0.0:
            return m
        u = free_evolution_unitary(atom, span)
        return u @ m @ u.conj().T

    for p in seq.pulses:
        while idx < len(samples) and samples[idx] < p.t_start:
            t = samples[idx]
            out.append((t, DensityMatrix(free(rho, t - now))))
            idx += 1
        rho = free(rho, p.t_start - now)
        now = p.t_start
        u = pulse_unitary(p.channel, p.area)
        rho = u @ rho @ u.conj().T
        while idx < len(samples) and samples[idx] == now:
            idx += 1
        out.append((now, DensityMatrix(rho)))
    while idx < len(samples):
        t = samples[idx]
        out.append((t, DensityMatrix(free(rho, t - now))))
        idx += 1
    return out
