"""Closed-form resonant states after each pulse of the echo protocols.

The protocols act on a ground-state atom with a weak data pulse D, optical
rephasing pulses R1/R2, and a control pair C1/C2 that shelves the excited
amplitude on the spin level between rephasings. On resonance each stage has
an exact solution parametrized only by accumulated pulse areas:

* consecutive pulses on one channel add their areas,
* the control pair scales the optical coherence by cos((c1+c2)/2), which is
  -1 for two pi pulses and is what flips absorption into emission,
* the final rephasing mixes the optical block while leaving the shelved
  population untouched.

Every function returns the full 3x3 state, including the spin coherences
produced by composing the control stage with the final optical rotation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .states import DensityMatrix

__all__ = [
    "StageAreas",
    "after_data",
    "after_r1",
    "after_r2_dr",
    "after_c1",
    "after_c2",
    "after_r2_cdr",
    "stage_chain",
    "STAGE_LABELS",
]

STAGE_LABELS = ("D", "R1", "C1", "C2", "R2")


@dataclass(frozen=True)
class StageAreas:
    """Pulse areas (radians) for the five-pulse protocol, in firing order."""

    phi_d: float = 0.0
    phi_r1: float = 0.0
    phi_c1: float = 0.0
    phi_c2: float = 0.0
    phi_r2: float = 0.0

    def __post_init__(self):
        for name in ("phi_d", "phi_r1", "phi_c1", "phi_c2", "phi_r2"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")


def _hermitian(
    r11: float,
    r22: float,
    r33: float,
    r12: complex,
    r13: complex,
    r23: complex,
) -> DensityMatrix:
    m = np.array(
        [
            [r11, r12, r13],
            [np.conj(r12), r22, r23],
            [np.conj(r13), np.conj(r23), r33],
        ],
        dtype=complex,
    )
    return DensityMatrix(m)


def _optical_block(theta: float) -> DensityMatrix:
    # state after total optical area theta applied to the ground state
    return _hermitian(
        np.cos(theta / 2.0) ** 2,
        np.sin(theta / 2.0) ** 2,
        0.0,
        -0.5j * np.sin(theta),
        0.0,
        0.0,
    )


def _shelved(theta: float, control_total: float) -> DensityMatrix:
    # optical preparation of area theta followed by control area control_total
    half = control_total / 2.0
    return _hermitian(
        np.cos(theta / 2.0) ** 2,
        np.cos(half) ** 2 * np.sin(theta / 2.0) ** 2,
        np.sin(half) ** 2 * np.sin(theta / 2.0) ** 2,
        -0.5j * np.cos(half) * np.sin(theta),
        -0.5 * np.sin(half) * np.sin(theta),
        -0.5j * np.sin(control_total) * np.sin(theta / 2.0) ** 2,
    )


def after_data(phi_d: float) -> DensityMatrix:
    """Ground state hit by the data pulse: rho12 = -(i/2) sin(phi_d)."""
    return _optical_block(phi_d)


def after_r1(phi_d: float, phi_r1: float) -> DensityMatrix:
    """After the first rephasing pulse; optical areas simply add."""
    return _optical_block(phi_d + phi_r1)


def after_r2_dr(phi_d: float, phi_r1: float, phi_r2: float) -> DensityMatrix:
    """Double-rephasing protocol without control pulses: one optical rotation
    of total area phi_d + phi_r1 + phi_r2."""
    return _optical_block(phi_d + phi_r1 + phi_r2)


def after_c1(phi_d: float, phi_r1: float, phi_c1: float) -> DensityMatrix:
    """First control pulse: scales rho12 by cos(phi_c1/2) and moves the rest
    of the excited amplitude onto the spin level."""
    return _shelved(phi_d + phi_r1, phi_c1)


def after_c2(phi_d: float, phi_r1: float, phi_c1: float, phi_c2: float) -> DensityMatrix:
    """Second control pulse; control areas add, so a pi-pi pair gives the
    coherence scale cos(pi) = -1 and restores the excited population."""
    return _shelved(phi_d + phi_r1, phi_c1 + phi_c2)


def after_r2_cdr(
    phi_d: float,
    phi_r1: float,
    phi_c1: float,
    phi_c2: float,
    phi_r2: float,
) -> DensityMatrix:
    """Full controlled-double-rephasing state after the final optical pulse.

    Composes the post-C2 state with an optical rotation of area phi_r2. The
    shelved population sin^2((c1+c2)/2) sin^2(theta/2) is untouched; the
    spin coherences mix as (rho13, rho23) -> (c rho13 + i s rho23,
    i s rho13 + c rho23) with c = cos(phi_r2/2), s = sin(phi_r2/2).
    """
    theta = phi_d + phi_r1
    half_c = (phi_c1 + phi_c2) / 2.0
    c = np.cos(phi_r2 / 2.0)
    s = np.sin(phi_r2 / 2.0)
    ct, st = np.cos(theta / 2.0), np.sin(theta / 2.0)
    cosh_c = np.cos(half_c)

    r11 = (c * ct - s * cosh_c * st) ** 2
    r22 = (s * ct + c * cosh_c * st) ** 2
    r33 = np.sin(half_c) ** 2 * st**2
    im12 = -0.5 * (
        cosh_c * np.sin(theta) * np.cos(phi_r2)
        + np.sin(phi_r2) * (ct**2 - cosh_c**2 * st**2)
    )
    r13_prev = -0.5 * np.sin(half_c) * np.sin(theta)
    i23_prev = -0.5 * np.sin(2.0 * half_c) * st**2
    r13 = c * r13_prev - s * i23_prev
    i23 = s * r13_prev + c * i23_prev
    return _hermitian(r11, r22, r33, 1j * im12, r13, 1j * i23)


def stage_chain(areas: StageAreas) -> list[tuple[str, DensityMatrix]]:
    """States after each of D, R1, C1, C2, R2 in firing order."""
    d, r1, c1, c2, r2 = (
        areas.phi_d,
        areas.phi_r1,
        areas.phi_c1,
        areas.phi_c2,
        areas.phi_r2,
    )
    return [
        ("D", after_data(d)),
        ("R1", after_r1(d, r1)),
        ("C1", after_c1(d, r1, c1)),
        ("C2", after_c2(d, r1, c1, c2)),
        ("R2", after_r2_cdr(d, r1, c1, c2, r2)),
    ]
