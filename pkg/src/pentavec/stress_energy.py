"""Energy-momentum and angular-momentum currents as one five-tensor field.

The inputs are a stress-energy field Theta^mu_alpha and a spin current
Sigma^mu_(alpha beta) sampled over a Lorentz chart.  Together with the
orbital moment x_alpha Theta^mu_beta - x_beta Theta^mu_alpha they fill a
single five-indexed current

    M^mu_(alpha beta) = orbital + spin        (four-block)
    M^mu_(5 alpha)    = Theta^mu_alpha        (fifth row, minus on the column)
    M^mu_(5 5)        = 0

whose components above are taken in the parallel-frame dual basis.  In
the orthonormal dual basis the four-block reduces to the spin current
alone.  Conservation of the whole object in either frame is equivalent to
the two familiar statements: Theta is divergence-free and the divergence
of the spin current balances the antisymmetric part of Theta.

Sample arrays carry grid axes first: Theta is ``(..., 4, 4)`` indexed
[mu][alpha] (upper index first), Sigma ``(..., 4, 4, 4)`` indexed
[mu][alpha][beta], and the assembled current ``(..., 4, 5, 5)``.

The transport constant enters only through the frame normalization: for
any nonzero kappa the fifth frame vector is rescaled to absorb it, so the
formulas here carry unit factors, while kappa = 0 degenerates the two
frames into one and the five-tensor packaging loses its invariance.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import ETA4
from .connection import flat_coefficients
from .errors import BasisMismatch, GridMismatch, NotAntisymmetric
from .grids import FieldOnGrid, Grid, partial_derivative, scheme_width
from .numerics import max_norm
from .poincare import PoincareTransform


def _lowered_coords(grid: Grid) -> np.ndarray:
    return np.einsum("ab,...b->...a", ETA4, grid.coords())


def _frame_factor(kappa: float) -> float:
    # The moment machinery works in the frame normalization where the
    # fifth vector absorbs the transport constant, so any nonzero kappa
    # contributes a unit factor; kappa = 0 is the degenerate case where
    # the parallel and orthonormal frames coincide.
    return 0.0 if kappa == 0.0 else 1.0


def assemble_moment_field(theta: np.ndarray, sigma: np.ndarray, grid: Grid) -> FieldOnGrid:
    """Pack stress-energy and spin samples into the five-tensor current.

    Components come out in the parallel-frame dual basis, where the
    four-block is the full moment x_alpha Theta^mu_beta - x_beta
    Theta^mu_alpha + Sigma^mu_(alpha beta).
    """
    theta = np.asarray(theta, dtype=float)
    sigma = np.asarray(sigma, dtype=float)
    if theta.shape != grid.shape + (4, 4):
        raise GridMismatch(f"theta shape {theta.shape} does not match grid {grid.shape} + (4, 4)")
    if sigma.shape != grid.shape + (4, 4, 4):
        raise GridMismatch(f"sigma shape {sigma.shape} does not match grid {grid.shape} + (4, 4, 4)")
    anti = sigma + np.swapaxes(sigma, -1, -2)
    if max_norm(anti) > 1e-12 * max(max_norm(sigma), 1.0):
        raise NotAntisymmetric("spin current must be antisymmetric in its lower indices")

    x_low = _lowered_coords(grid)
    orbital = np.einsum("...a,...mb->...mab", x_low, theta) - np.einsum(
        "...b,...ma->...mab", x_low, theta
    )
    values = np.zeros(grid.shape + (4, 5, 5))
    values[..., :4, :4] = orbital + sigma
    values[..., 4, :4] = theta
    values[..., :4, 4] = -theta
    return FieldOnGrid(grid=grid, values=values, basis="P")


def moment_to_orthonormal(m: FieldOnGrid, kappa: float = 1.0) -> FieldOnGrid:
    """Re-express the current in the orthonormal dual basis.

    The fifth dual form changes by -kappa x_alpha times the four-forms, so
    the mixed blocks survive unchanged while the four-block drops its
    orbital part; at the standard normalization kappa = 1 it becomes the
    spin current alone.
    """
    return _convert(m, kappa, "P", "O")


def moment_to_parallel(m: FieldOnGrid, kappa: float = 1.0) -> FieldOnGrid:
    return _convert(m, kappa, "O", "P")


def _convert(m: FieldOnGrid, kappa: float, src: str, dst: str) -> FieldOnGrid:
    if m.basis != src:
        raise BasisMismatch(f"expected a {src}-frame current, got {m.basis!r}")
    if m.values.shape[4:] != (4, 5, 5):
        raise GridMismatch(f"expected current samples (4, 5, 5), got {m.values.shape[4:]}")
    x_low = _lowered_coords(m.grid)
    sign = -1.0 if dst == "O" else 1.0
    change = np.zeros(m.grid.shape + (5, 5))
    change[...] = np.eye(5)
    change[..., 4, :4] = sign * _frame_factor(kappa) * x_low
    out = np.einsum("...mcd,...ce,...df->...mef", m.values, change, change)
    return FieldOnGrid(grid=m.grid, values=out, basis=dst, boundary_width=m.boundary_width)


def transform_moment_field(m: FieldOnGrid, t: PoincareTransform, kappa: float = 1.0) -> FieldOnGrid:
    """Blockwise chart-change law for a parallel-frame current field.

    Theta' = Lambda Theta Lambda^-1 on the mixed blocks, and the
    four-block picks up translation terms a_alpha Theta'_beta -
    a_beta Theta'_alpha on top of its Lambda conjugation.  Samples stay at
    the same physical points; their coordinates in the new chart are
    t applied to the old grid coordinates.
    """
    if m.basis != "P":
        raise BasisMismatch(f"expected a P-frame current, got {m.basis!r}")
    lam = t.lam
    lam_inv = np.linalg.inv(lam)
    a_low = ETA4 @ t.a
    theta = m.values[..., 4, :4]
    four = m.values[..., :4, :4]
    theta_new = np.einsum("mn,...nb,bt->...mt", lam, theta, lam_inv)
    four_new = np.einsum("mn,...nst,sa,tb->...mab", lam, four, lam_inv, lam_inv)
    four_new += _frame_factor(kappa) * (
        np.einsum("a,...mb->...mab", a_low, theta_new)
        - np.einsum("b,...ma->...mab", a_low, theta_new)
    )
    values = np.zeros_like(m.values)
    values[..., :4, :4] = four_new
    values[..., 4, :4] = theta_new
    values[..., :4, 4] = -theta_new
    return FieldOnGrid(grid=m.grid, values=values, basis="P", boundary_width=m.boundary_width)


@dataclass(frozen=True)
class ConservationReport:
    """Interior residuals of the five-tensor conservation law.

    ``momentum_residual`` covers the mixed (fifth-index) block, whose
    vanishing is stress-energy conservation; ``angular_residual`` covers
    the four-block, whose vanishing is angular-momentum conservation.
    """

    momentum_residual: float
    angular_residual: float
    scheme: str
    basis: str

    def worst(self) -> float:
        return max(self.momentum_residual, self.angular_residual)


def conservation_report(m: FieldOnGrid, kappa: float = 1.0, scheme: str = "central2") -> ConservationReport:
    """Covariant divergence residuals of a current field.

    In the parallel frame the transport coefficients vanish and the
    divergence is the plain derivative sum.  In the orthonormal frame the
    flat coefficients contribute the correction terms that trade the
    orbital moment for the stress-energy blocks; with kappa = 0 the two
    frames coincide and both reduce to the plain divergence.
    """
    if m.basis not in ("O", "P"):
        raise BasisMismatch(f"current must be in the 'O' or 'P' frame, got {m.basis!r}")
    if m.values.shape[4:] != (4, 5, 5):
        raise GridMismatch(f"expected current samples (4, 5, 5), got {m.values.shape[4:]}")

    div = np.zeros(m.grid.shape + (5, 5))
    for mu in range(4):
        div += partial_derivative(m.values[..., mu, :, :], m.grid, mu, scheme)

    if m.basis == "O" and kappa != 0.0:
        # Unit transport factor: the frame normalization that makes the
        # current's blocks chart-tensors absorbs kappa.
        g = flat_coefficients(1.0).values
        div -= np.einsum("cam,...mcb->...ab", g, m.values)
        div -= np.einsum("cbm,...mac->...ab", g, m.values)

    sel = m.grid.interior(scheme_width(scheme))
    interior = div[sel]
    return ConservationReport(
        momentum_residual=max_norm(interior[..., 4, :4]),
        angular_residual=max_norm(interior[..., :4, :4]),
        scheme=scheme,
        basis=m.basis,
    )


def constant_stress_samples(theta0, grid: Grid) -> tuple[np.ndarray, np.ndarray]:
    """Uniform stress-energy with zero spin current, for exactness checks."""
    theta0 = np.asarray(theta0, dtype=float)
    if theta0.shape != (4, 4):
        raise GridMismatch(f"expected a (4, 4) matrix, got {theta0.shape}")
    theta = np.broadcast_to(theta0, grid.shape + (4, 4)).copy()
    sigma = np.zeros(grid.shape + (4, 4, 4))
    return theta, sigma


def plane_wave_stress_samples(k, grid: Grid, amplitude: float = 1.0) -> tuple[np.ndarray, np.ndarray]:
    """Stress-energy of a free massless scalar plane wave, zero spin current.

    For phi = amplitude cos(k.x) with a null wave vector the gradient is
    null, the Lagrangian term drops out, and Theta^mu_alpha =
    k^mu k_alpha (amplitude sin(k.x))^2, which is divergence-free exactly.
    """
    k = np.asarray(k, dtype=float)
    if k.shape != (4,):
        raise GridMismatch(f"expected a four-component wave vector, got {k.shape}")
    k_low = ETA4 @ k
    null_resid = abs(float(k @ k_low))
    if null_resid > 1e-9 * max(float(k @ k), 1.0):
        raise ValueError(f"wave vector must be null, k.k = {float(k @ k_low):.3e}")
    phase = np.einsum("...a,a->...", grid.coords(), k_low)
    envelope = (amplitude * np.sin(phase)) ** 2
    theta = np.einsum("...,m,a->...ma", envelope, k, k_low)
    sigma = np.zeros(grid.shape + (4, 4, 4))
    return theta, sigma
