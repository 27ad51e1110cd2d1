"""Cross-validation suite wired to the `verify` CLI subcommand.

Each check pits one implementation route against an independent one (closed
forms vs unitary composition vs RK4, elementwise rate equations vs a matrix
commutator, numeric area propagation vs the weak-pulse decay law) and
reports the worst deviation against a fixed tolerance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .area import PropagationConfig, propagate_area
from .integrator import DriveSample, integrate_sequence, rhs
from .stages import StageAreas, after_c2, after_r1, stage_chain
from .states import (
    AtomParams,
    Channel,
    DensityMatrix,
    Pulse,
    PulseSequence,
    ground_state,
    max_element_distance,
    purity,
)
from .unitary import run_sequence_hard

__all__ = ["Check", "run_checks", "CHECK_NAMES"]

PI = math.pi

CANONICAL = StageAreas(
    phi_d=0.1 * PI, phi_r1=PI, phi_c1=PI, phi_c2=PI, phi_r2=PI
)
HALF_PI = StageAreas(phi_d=0.5 * PI, phi_r1=PI, phi_c1=PI, phi_c2=PI, phi_r2=PI)


@dataclass(frozen=True)
class Check:
    name: str
    ok: bool
    deviation: float
    tolerance: float
    note: str = ""

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        extra = f" {self.note}" if self.note else ""
        return (
            f"{status} {self.name}: deviation {self.deviation:.3e}"
            f" (tol {self.tolerance:.1e}){extra}"
        )


def _chain_im12(areas: StageAreas) -> list[float]:
    return [float(state.elements[0, 1].imag) for _, state in stage_chain(areas)]


def check_weak_chain() -> Check:
    """Stage coherences for the weak data pulse against their exact values."""
    a = 0.5 * math.sin(0.1 * PI)
    expected = [-a, +a, 0.0, -a, +a]
    got = _chain_im12(CANONICAL)
    final = stage_chain(CANONICAL)[-1][1]
    devs = [abs(g - e) for g, e in zip(got, expected)]
    devs.append(abs(final.population(3) - 0.0))
    devs.append(abs(final.population(2) - math.sin(0.05 * PI) ** 2))
    dev = max(devs)
    return Check("weak-data-chain", dev <= 1e-9, dev, 1e-9)


def check_half_pi_chain() -> Check:
    """Stage coherences for a pi/2 data pulse: -1/2, +1/2, 0, -1/2, +1/2."""
    expected = [-0.5, +0.5, 0.0, -0.5, +0.5]
    got = _chain_im12(HALF_PI)
    dev = max(abs(g - e) for g, e in zip(got, expected))
    return Check("half-pi-chain", dev <= 1e-9, dev, 1e-9)


def check_control_recovery() -> Check:
    """A 4pi control total restores the pre-control state; 2pi negates rho12."""
    base = after_r1(0.1 * PI, PI)
    restored = after_c2(0.1 * PI, PI, 2.0 * PI, 2.0 * PI)
    dev4 = max_element_distance(restored, base)

    negated = base.elements.copy()
    negated[0, 1] *= -1.0
    negated[1, 0] *= -1.0
    flipped = after_c2(0.1 * PI, PI, PI, PI)
    dev2 = max_element_distance(flipped, DensityMatrix(negated))
    dev = max(dev4, dev2)
    return Check("control-recovery", dev <= 1e-12, dev, 1e-12)


def _hard_sequence(areas: StageAreas, starts: list[float], t_end: float) -> PulseSequence:
    order = [
        (Channel.OPTICAL12, areas.phi_d),
        (Channel.OPTICAL12, areas.phi_r1),
        (Channel.CONTROL23, areas.phi_c1),
        (Channel.CONTROL23, areas.phi_c2),
        (Channel.OPTICAL12, areas.phi_r2),
    ]
    pulses = tuple(
        Pulse(channel=c, area=a, t_start=t) for (c, a), t in zip(order, starts)
    )
    return PulseSequence(pulses=pulses, t_end=t_end)


def check_engine_agreement() -> Check:
    """Closed forms, hard-pulse unitaries and RK4 give one final state."""
    analytic = stage_chain(CANONICAL)[-1][1]
    atom = AtomParams()

    starts = [0.0, 2e-6, 4e-6, 6e-6, 8e-6]
    hard = _hard_sequence(CANONICAL, starts, t_end=1e-5)
    hard_final = run_sequence_hard(ground_state(), hard, atom)[-1][1]

    duration = 1e-6
    order = [
        (Channel.OPTICAL12, CANONICAL.phi_d),
        (Channel.OPTICAL12, CANONICAL.phi_r1),
        (Channel.CONTROL23, CANONICAL.phi_c1),
        (Channel.CONTROL23, CANONICAL.phi_c2),
        (Channel.OPTICAL12, CANONICAL.phi_r2),
    ]
    finite = PulseSequence(
        pulses=tuple(
            Pulse(channel=c, area=a, t_start=t, duration=duration)
            for (c, a), t in zip(order, starts)
        ),
        t_end=1e-5,
    )
    traj = integrate_sequence(ground_state(), finite, atom, dt=1e-9, sample_stride=50)
    ode_final = traj[-1][1]

    dev = max(
        max_element_distance(analytic, hard_final),
        max_element_distance(analytic, ode_final),
    )
    drift = max(
        max(abs(state.trace() - 1.0) for _, state in traj),
        max(abs(purity(state) - 1.0) for _, state in traj),
    )
    ok = dev <= 1e-8 and drift <= 1e-9
    return Check(
        "engine-agreement", ok, dev, 1e-8, note=f"trace/purity drift {drift:.1e}"
    )


def _commutator_oracle(rho: np.ndarray, oj: float, ok_: float) -> np.ndarray:
    h = -0.5 * np.array(
        [[0.0, oj, 0.0], [oj, 0.0, ok_], [0.0, ok_, 0.0]], dtype=complex
    )
    return -1j * (h @ rho - rho @ h)


def check_rate_equations() -> Check:
    """Elementwise derivatives equal the commutator built from the coupling
    matrix, on 100 random valid states."""
    rng = np.random.default_rng(20260815)
    atom = AtomParams()
    worst = 0.0
    for _ in range(100):
        a = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
        m = a @ a.conj().T
        m /= m.trace()
        oj, ok_ = rng.uniform(-2.0, 2.0, size=2)
        got = rhs(DensityMatrix(m), DriveSample(omega_j=oj, omega_k=ok_), atom)
        want = _commutator_oracle(m, oj, ok_)
        worst = max(worst, float(np.abs(got - want).max()))
    return Check("rate-equations-vs-commutator", worst <= 1e-14, worst, 1e-14)


def check_area_propagation() -> Check:
    """Weak areas follow exp(-alpha z / 2); a pi area does not move."""
    weak = propagate_area(PropagationConfig(phi0=0.01, alpha=1.0, z_max=2.0, dz=1e-3))
    expected = 0.01 * math.exp(-1.0)
    rel = abs(weak[-1, 1] - expected) / expected

    stat = propagate_area(PropagationConfig(phi0=PI, alpha=1.0, z_max=2.0, dz=1e-3))
    drift = float(np.abs(stat[:, 1] - PI).max())
    ok = rel <= 1e-2 and drift <= 1e-12
    return Check(
        "area-propagation", ok, rel, 1e-2, note=f"pi-area drift {drift:.1e}"
    )


CHECKS = (
    check_weak_chain,
    check_half_pi_chain,
    check_control_recovery,
    check_engine_agreement,
    check_rate_equations,
    check_area_propagation,
)

CHECK_NAMES = tuple(fn.__name__.removeprefix("check_") for fn in CHECKS)


def run_checks() -> list[Check]:
    return [fn() for fn in CHECKS]
