"""Area sweeps over the closed-form stages and the canonical figure datasets.

A sweep varies one pulse area across a grid while the others stay fixed and
tabulates Im rho12, Re rho13 and the three populations. The figure datasets
are fourteen preset sweeps: coherence and population views of each protocol
stage at a weak data area, plus coherence views at phi_d = pi/2. All preset
grids run 0..4pi in steps of pi/100.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, replace

import numpy as np

from .csvio import Table
from .stages import (
    StageAreas,
    after_c1,
    after_c2,
    after_data,
    after_r1,
    after_r2_cdr,
    after_r2_dr,
)
from .states import DensityMatrix

__all__ = ["SweepSpec", "FigureId", "run_sweep", "figure_dataset", "STAGES", "AREA_NAMES"]

AREA_NAMES = ("phi_d", "phi_r1", "phi_c1", "phi_c2", "phi_r2")

# stage name -> (solver, area names consumed, in call order)
STAGES: dict[str, tuple] = {
    "data": (after_data, ("phi_d",)),
    "r1": (after_r1, ("phi_d", "phi_r1")),
    "r2_dr": (after_r2_dr, ("phi_d", "phi_r1", "phi_r2")),
    "c1": (after_c1, ("phi_d", "phi_r1", "phi_c1")),
    "c2": (after_c2, ("phi_d", "phi_r1", "phi_c1", "phi_c2")),
    "r2_cdr": (after_r2_cdr, AREA_NAMES),
}

_COLUMNS = ("im_rho12", "re_rho13", "rho11", "rho22", "rho33")


@dataclass(frozen=True)
class SweepSpec:
    """One-dimensional area sweep of a named stage.

    varying must be one of the stage's area names; lo/hi are radians and the
    grid has `steps` evenly spaced points including both ends.
    """

    stage: str
    varying: str
    lo: float
    hi: float
    steps: int
    fixed: StageAreas = StageAreas()

    def __post_init__(self):
        if self.stage not in STAGES:
            raise ValueError(f"unknown stage {self.stage!r}; choose from {sorted(STAGES)}")
        _, names = STAGES[self.stage]
        if self.varying not in names:
            raise ValueError(
                f"stage {self.stage!r} has no area {self.varying!r}; it takes {names}"
            )
        if not (math.isfinite(self.lo) and math.isfinite(self.hi)) or self.hi <= self.lo:
            raise ValueError("need finite lo < hi")
        if self.steps < 2:
            raise ValueError("steps must be >= 2")


def _observables(rho: DensityMatrix) -> tuple[float, float, float, float, float]:
    m = rho.elements
    return (
        float(m[0, 1].imag),
        float(m[0, 2].real),
        float(m[0, 0].real),
        float(m[1, 1].real),
        float(m[2, 2].real),
    )


def run_sweep(spec: SweepSpec) -> Table:
    """Evaluate the stage across the grid; one row per grid point."""
    solver, names = STAGES[spec.stage]
    grid = np.linspace(spec.lo, spec.hi, spec.steps)
    rows = np.empty((spec.steps, 1 + len(_COLUMNS)))
    for i, x in enumerate(grid):
        areas = replace(spec.fixed, **{spec.varying: float(x)})
        state = solver(*(getattr(areas, n) for n in names))
        rows[i, 0] = x
        rows[i, 1:] = _observables(state)
    meta = [("stage", spec.stage), ("varying", spec.varying)]
    for n in names:
        if n != spec.varying:
            meta.append((f"{n}_pi", format(getattr(spec.fixed, n) / math.pi, ".12g")))
    return Table(
        columns=(f"{spec.varying}_rad", *_COLUMNS),
        rows=rows,
        meta=tuple(meta),
    )


class FigureId(enum.Enum):
    """The fourteen canonical sweep datasets."""

    FIG2A = "fig2a"
    FIG2B = "fig2b"
    FIG2C = "fig2c"
    FIG2D = "fig2d"
    FIG3A = "fig3a"
    FIG3B = "fig3b"
    FIG3C = "fig3c"
    FIG3D = "fig3d"
    FIG4A = "fig4a"
    FIG4B = "fig4b"
    FIG5A = "fig5a"
    FIG5B = "fig5b"
    FIG5C = "fig5c"
    FIG5D = "fig5d"


_WEAK = StageAreas(phi_d=0.1 * math.pi, phi_r1=math.pi, phi_c1=math.pi, phi_c2=math.pi)
_HALF = StageAreas(phi_d=0.5 * math.pi, phi_r1=math.pi, phi_c1=math.pi, phi_c2=math.pi)

_COHERENCE = ("im_rho12",)
_COHERENCE13 = ("im_rho12", "re_rho13")
_POPS2 = ("rho11", "rho22")
_POPS3 = ("rho11", "rho22", "rho33")

# figure -> (stage, varying area, fixed areas, emitted columns)
_FIGURES: dict[FigureId, tuple[str, str, StageAreas, tuple[str, ...]]] = {
    FigureId.FIG2A: ("r1", "phi_r1", _WEAK, _COHERENCE),
    FigureId.FIG2B: ("r1", "phi_r1", _WEAK, _POPS2),
    FigureId.FIG2C: ("r2_dr", "phi_r2", _WEAK, _COHERENCE),
    FigureId.FIG2D: ("r2_dr", "phi_r2", _WEAK, _POPS2),
    FigureId.FIG3A: ("c1", "phi_c1", _WEAK, _COHERENCE13),
    FigureId.FIG3B: ("c1", "phi_c1", _WEAK, _POPS3),
    FigureId.FIG3C: ("c2", "phi_c2", _WEAK, _COHERENCE),
    FigureId.FIG3D: ("c2", "phi_c2", _WEAK, _POPS3),
    FigureId.FIG4A: ("r2_cdr", "phi_r2", _WEAK, _COHERENCE),
    FigureId.FIG4B: ("r2_cdr", "phi_r2", _WEAK, _POPS3),
    FigureId.FIG5A: ("r1", "phi_r1", _HALF, _COHERENCE),
    FigureId.FIG5B: ("c1", "phi_c1", _HALF, _COHERENCE),
    FigureId.FIG5C: ("c2", "phi_c2", _HALF, _COHERENCE),
    FigureId.FIG5D: ("r2_cdr", "phi_r2", _HALF, _COHERENCE),
}

FIGURE_GRID_STEPS = 401  # 0..4pi in pi/100 steps


def figure_dataset(figure: FigureId) -> Table:
    """The preset sweep for one figure, trimmed to its published columns."""
    stage, varying, fixed, wanted = _FIGURES[figure]
    sweep = SweepSpec(
        stage=stage,
        varying=varying,
        lo=0.0,
        hi=4.0 * math.pi,
        steps=FIGURE_GRID_STEPS,
        fixed=fixed,
    )
    full = run_sweep(sweep)
    keep = (f"{varying}_rad", *wanted)
    cols = [full.columns.index(c) for c in keep]
    meta = (("figure", figure.value), *full.meta)
    return Table(columns=keep, rows=full.rows[:, cols], meta=meta)
