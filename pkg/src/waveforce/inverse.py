"""Reduction of the identification problem to a dense linear system, and
plain least squares on it.

The discrete map from a force profile to a boundary flux series is affine:
flux(data, f) = flux(data, 0) + (linear response to f). Assembly therefore
builds the system column by column from unit-force solves with homogeneous
data, and moves the data contribution to the right-hand side:

    column k of A ~ flux response to the unit profile e_k,
    b ~ measured flux - background flux (zero-force solve with true data).

Row convention: each row is stated in cleared-denominator stencil units,
i.e. both the columns and b carry a factor 2*dx relative to raw flux units.
In these units row j of the single-source system is literally the identity
3u[0,j] - 4u[1,j] + u[2,j] = 2*dx*q(t_j) with unit coefficients, which is
the form the eliminated global FDM system takes. Least-squares solutions,
condition numbers, and normalized singular values are invariant to this
uniform row scale; the Tikhonov lambda axis is stated in these units.

A dual measurement (both ends observed, two unknown profiles) stacks left
flux rows then right flux rows, and first-component columns then
second-component columns.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .errors import (
    DimensionMismatch,
    RankDeficient,
    UnderdeterminedSystem,
    WaveforceError,
)
from .fdm import flux, solve_direct
from .model import (
    LEFT,
    RIGHT,
    BoundaryData,
    DualSource,
    FluxSeries,
    ForceVector,
    GridSpec,
    InitialData,
    SingleSource,
    WaveProblem,
)
from .noise import NoiseSpec, add_noise

#: singular values below RANK_TOL * sv(1) count as zero in rank decisions
RANK_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class InverseSystem:
    """Dense system A f = b plus the metadata needed to rebuild or audit it.

    A has N rows and M-1 columns for a single-source identification,
    2N rows and 2(M-1) columns for a dual one. `background` holds the
    zero-force flux series (left, and right for dual) in raw flux units.
    `noise` records the perturbation applied to the measurement, if any.
    """

    A: np.ndarray
    b: np.ndarray
    grid: GridSpec
    background: tuple
    source: SingleSource | DualSource
    noise: NoiseSpec | None = None

    def __post_init__(self):
        A = np.asarray(self.A, dtype=float)
        b = np.asarray(self.b, dtype=float).reshape(-1)
        if A.ndim != 2 or A.shape[0] != b.size:
            raise DimensionMismatch(f"A is {A.shape} but b has {b.size} entries")
        A.setflags(write=False)
        b.setflags(write=False)
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "b", b)

    @property
    def components(self):
        return self.source.unknowns

    @property
    def n_unknowns(self):
        return self.A.shape[1]

    def with_measurement(self, measured, measured_right=None, noise=None):
        """New system sharing this one's A and backgrounds, with b rebuilt
        from a different measurement (and optional noise).

        Avoids re-running the unit-force solves when sweeping seeds or
        swapping data on a fixed problem.
        """
        scale = 2.0 * self.grid.dx
        if self.components == 1:
            if measured_right is not None:
                raise DimensionMismatch("single-source system takes one measured series")
            measured = _checked(measured, LEFT, self.grid.N)
            if noise is not None:
                measured = add_noise(measured, noise)
            b = scale * (measured.values - self.background[0].values)
        else:
            if measured_right is None:
                raise DimensionMismatch("dual-source system needs both measured series")
            left = _checked(measured, LEFT, self.grid.N)
            right = _checked(measured_right, RIGHT, self.grid.N)
            if noise is not None:
                left = add_noise(left, noise)
                right = add_noise(right, noise)
            b = scale * np.concatenate([left.values - self.background[0].values,
                                        right.values - self.background[1].values])
        return replace(self, b=b, noise=noise)


def _checked(series, end, N):
    if not isinstance(series, FluxSeries):
        series = FluxSeries(end, series)
    if series.end != end:
        raise DimensionMismatch(f"expected a {end} flux series, got {series.end}")
    if series.values.size != N:
        raise DimensionMismatch(f"measured series has {series.values.size} samples, grid needs {N}")
    return series


def _homogeneous(problem):
    return WaveProblem(problem.grid, InitialData.zero(problem.grid),
                       BoundaryData.zero(problem.grid), problem.source)


def assemble_single(problem: WaveProblem, measured, noise: NoiseSpec | None = None) -> InverseSystem:
    """Build the single-source system from a left-end flux measurement.

    Parameters
    ----------
    problem : WaveProblem
        Must carry a SingleSource. Its initial/boundary data are the true
        data of the experiment.
    measured : FluxSeries or array of length N
        Observed left flux at t_1..t_N.
    noise : NoiseSpec, optional
        Perturbation applied to the measurement before assembly.

    Returns
    -------
    InverseSystem
        N x (M-1), rows in cleared-denominator units (see module docstring).

    Raises
    ------
    UnderdeterminedSystem
        When N < M-1.
    """
    if not isinstance(problem.source, SingleSource):
        raise WaveforceError("assemble_single needs a problem with a SingleSource")
    g = problem.grid
    if g.N < g.M - 1:
        raise UnderdeterminedSystem(f"N={g.N} observations cannot determine M-1={g.M - 1} unknowns")
    measured = _checked(measured, LEFT, g.N)
    if noise is not None:
        measured = add_noise(measured, noise)

    background = flux(solve_direct(problem.with_force(np.zeros(g.M - 1))), LEFT)
    hom = _homogeneous(problem)
    scale = 2.0 * g.dx
    A = np.empty((g.N, g.M - 1))
    e = np.zeros(g.M - 1)
    for k in range(g.M - 1):
        e[k] = 1.0
        A[:, k] = scale * flux(solve_direct(hom.with_force(e)), LEFT).values
        e[k] = 0.0
    b = scale * (measured.values - background.values)
    return InverseSystem(A, b, g, (background,), problem.source, noise)


def assemble_dual(problem: WaveProblem, measured_left, measured_right,
                  noise: NoiseSpec | None = None) -> InverseSystem:
    """Build the dual-source system from flux measurements at both ends.

    Row order: left flux rows then right flux rows. Column order: first
    component block then second component block.

    Returns
    -------
    InverseSystem
        2N x 2(M-1).
    """
    if not isinstance(problem.source, DualSource):
        raise WaveforceError("assemble_dual needs a problem with a DualSource")
    g = problem.grid
    if g.N < g.M - 1:
        raise UnderdeterminedSystem(f"N={g.N} observations cannot determine M-1={g.M - 1} unknowns")
    left = _checked(measured_left, LEFT, g.N)
    right = _checked(measured_right, RIGHT, g.N)
    if noise is not None:
        left = add_noise(left, noise)
        right = add_noise(right, noise)

    zeros = np.zeros(g.M - 1)
    bg_field = solve_direct(problem.with_force(zeros, zeros))
    bg_left = flux(bg_field, LEFT)
    bg_right = flux(bg_field, RIGHT)
    hom = _homogeneous(problem)
    scale = 2.0 * g.dx
    m = g.M - 1
    A = np.empty((2 * g.N, 2 * m))
    e = np.zeros(m)
    for k in range(m):
        e[k] = 1.0
        fld = solve_direct(hom.with_force(e, zeros))
        A[: g.N, k] = scale * flux(fld, LEFT).values
        A[g.N:, k] = scale * flux(fld, RIGHT).values
        fld = solve_direct(hom.with_force(zeros, e))
        A[: g.N, m + k] = scale * flux(fld, LEFT).values
        A[g.N:, m + k] = scale * flux(fld, RIGHT).values
        e[k] = 0.0
    b = scale * np.concatenate([left.values - bg_left.values,
                                right.values - bg_right.values])
    return InverseSystem(A, b, g, (bg_left, bg_right), problem.source, noise)


def least_squares(sys: InverseSystem) -> ForceVector:
    """Minimizer of ||A f - b||_2 via a stable orthogonal factorization.

    Raises
    ------
    RankDeficient
        When any singular value falls below RANK_TOL * sv(1).
    """
    sol, _, _, sv = np.linalg.lstsq(sys.A, sys.b, rcond=None)
    if sv.size == 0 or sv[-1] <= RANK_TOL * sv[0]:
        raise RankDeficient(
            f"columns are numerically dependent (sv ratio {sv[-1] / sv[0]:.3e})"
            if sv.size else "empty system"
        )
    return ForceVector(sol, sys.components)
