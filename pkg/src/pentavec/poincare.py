"""Poincare transformations acting on five-vector components.

A transformation t = (Lambda, a) relates two Lorentz charts through
x' = Lambda x + a.  Five-vector components respond differently in the two
distinguished frames:

  * orthonormal frame: the four-block rotates with Lambda and the fifth
    component is untouched;
  * parallel frame: the frame itself is built from the chart, so the fifth
    component mixes with the four-block through the translation.

Covariant coordinate quintuples (x_alpha, 1/kappa) transform by one 5x5
matrix per transformation (``homogeneous_rep``), which is also the
parallel-frame change matrix; this is what turns chart-dependent
coordinate data into five-tensor components.  ``ParamTensor`` and
``GeneratorTensor`` package the parameters of a finite respectively
infinitesimal transformation as five-tensors of that kind.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import ETA4, FiveForm, FiveVector
from .errors import NotAntisymmetric, ShapeMismatch
from .numerics import DEFAULT_TOL, Tolerance, as_array, invert, max_norm

def _check_lorentz(lam: np.ndarray, tol: Tolerance) -> None:
    resid = max_norm(lam.T @ ETA4 @ lam - ETA4)
    if resid > tol.bound(max_norm(lam) ** 2):
        raise ValueError(f"matrix does not preserve the four-metric (residual {resid:.3e})")


@dataclass(frozen=True)
class PoincareTransform:
    """Chart map x' = lam x + a with lam preserving diag(+ - - -)."""

    lam: np.ndarray
    a: np.ndarray

    def __post_init__(self):
        lam = as_array(self.lam, shape=(4, 4))
        a = as_array(self.a, shape=(4,))
        _check_lorentz(lam, DEFAULT_TOL)
        object.__setattr__(self, "lam", lam)
        object.__setattr__(self, "a", a)

    def apply(self, x) -> np.ndarray:
        return self.lam @ np.asarray(x, dtype=float) + self.a

    def compose(self, other: "PoincareTransform") -> "PoincareTransform":
        """self after other: (self.compose(other)).apply == self.apply(other.apply(.))."""
        return PoincareTransform(self.lam @ other.lam, self.lam @ other.a + self.a)

    def inverse(self) -> "PoincareTransform":
        lam_inv = invert(self.lam)
        return PoincareTransform(lam_inv, -(lam_inv @ self.a))

    @classmethod
    def identity(cls) -> "PoincareTransform":
        return cls(np.eye(4), np.zeros(4))


def compose(t1: PoincareTransform, t2: PoincareTransform) -> PoincareTransform:
    return t1.compose(t2)


def _lower(x) -> np.ndarray:
    return ETA4 @ np.asarray(x, dtype=float)


def homogeneous_rep(t: PoincareTransform, kappa: float = 1.0) -> np.ndarray:
    """5x5 matrix carrying covariant coordinate quintuples, acting on rows.

    Quintuples (x_alpha, 1/kappa) transform as x'_A = x_B L^B_A.  The same
    matrix is the parallel-frame change for t, so covariant five-vector
    components transform with it too.  Composition reverses order:
    rep(t1 compose t2) = rep(t2) @ rep(t1).
    """
    m = np.zeros((5, 5))
    m[:4, :4] = invert(t.lam)
    m[4, :4] = kappa * _lower(t.a)
    m[4, 4] = 1.0
    return m


def transform_orthonormal(obj, t: PoincareTransform):
    """Component law in the orthonormal frame.

    Vectors: v'^alpha = Lambda^alpha_beta v^beta, fifth untouched.  Forms
    contract with the inverse, fifth untouched.
    """
    if isinstance(obj, FiveVector):
        out = np.empty(5)
        out[:4] = t.lam @ obj.components[:4]
        out[4] = obj.components[4]
        return FiveVector(out, basis_id=obj.basis_id)
    if isinstance(obj, FiveForm):
        out = np.empty(5)
        out[:4] = obj.components[:4] @ invert(t.lam)
        out[4] = obj.components[4]
        return FiveForm(out, basis_id=obj.basis_id)
    raise ShapeMismatch(f"expected FiveVector or FiveForm, got {type(obj).__name__}")


def transform_parallel(obj, t: PoincareTransform, kappa: float = 1.0):
    """Component law in the parallel frame.

    The translation enters through the frame itself: for vectors
    v'^5 = v^5 - kappa a_alpha Lambda^alpha_beta v^beta, and for forms
    w'_alpha picks up kappa a_alpha w_5.  At a = 0 this reduces to the
    orthonormal law.
    """
    a_low = _lower(t.a)
    if isinstance(obj, FiveVector):
        out = np.empty(5)
        out[:4] = t.lam @ obj.components[:4]
        out[4] = obj.components[4] - kappa * float(a_low @ out[:4])
        return FiveVector(out, basis_id=obj.basis_id)
    if isinstance(obj, FiveForm):
        out = np.empty(5)
        out[:4] = obj.components[:4] @ invert(t.lam) + kappa * a_low * obj.components[4]
        out[4] = obj.components[4]
        return FiveForm(out, basis_id=obj.basis_id)
    raise ShapeMismatch(f"expected FiveVector or FiveForm, got {type(obj).__name__}")


@dataclass(frozen=True)
class LorentzChart:
    """Inertial chart reached from the reference chart by x = lam x_ref + a."""

    lam: np.ndarray
    a: np.ndarray
    kappa: float = 1.0

    def __post_init__(self):
        lam = as_array(self.lam, shape=(4, 4))
        a = as_array(self.a, shape=(4,))
        _check_lorentz(lam, DEFAULT_TOL)
        object.__setattr__(self, "lam", lam)
        object.__setattr__(self, "a", a)

    @classmethod
    def reference(cls, kappa: float = 1.0) -> "LorentzChart":
        return cls(np.eye(4), np.zeros(4), kappa)


def chart_relation(c1: LorentzChart, c2: LorentzChart) -> PoincareTransform:
    """Transformation carrying chart-1 coordinates to chart-2 coordinates."""
    lam1_inv = invert(c1.lam)
    lam = c2.lam @ lam1_inv
    return PoincareTransform(lam, c2.a - lam @ c1.a)


@dataclass(frozen=True)
class CoordinateForm:
    """Components of the covariant coordinate form at one sample point.

    ``p_dual`` are the parallel-frame dual components (x_alpha, 1), and
    ``o_dual`` the orthonormal-frame ones.  The fifth frame vector is
    scaled so the transport constant drops out of these components; with
    that convention the form is the same geometric object in every chart,
    which shows up as o_dual = (0, 0, 0, 0, 1) independent of the point.
    """

    p_dual: np.ndarray
    o_dual: np.ndarray


def coordinate_form(chart: LorentzChart, x) -> CoordinateForm:
    """Chart-covariant completion of the coordinate functions at x.

    ``x`` is the sample point in the chart's own coordinates.  For
    kappa = 0 the parallel and orthonormal frames coincide and no
    chart-invariant completion exists; the components are still returned
    but are chart-dependent in that degenerate case.
    """
    x_low = _lower(as_array(x, shape=(4,)))
    p_dual = np.append(x_low, 1.0)
    factor = 1.0 if chart.kappa != 0.0 else 0.0
    o_dual = np.append(x_low - factor * x_low, 1.0)
    return CoordinateForm(p_dual=p_dual, o_dual=o_dual)


def coordinate_form_derivative(chart: LorentzChart, x) -> np.ndarray:
    """Covariant derivative of the coordinate form, parallel-frame dual.

    Row mu holds (eta_mu_alpha, 0): the derivative is the four-metric seen
    as a form-valued object, with no fifth component.  ``x`` never enters
    (the derivative is uniform), but is accepted for interface symmetry.
    """
    as_array(x, shape=(4,))
    out = np.zeros((4, 5))
    out[:, :4] = ETA4
    return out


@dataclass(frozen=True)
class ParamTensor:
    """Finite-transformation parameters packaged as a (1,1) five-tensor.

    Blocks: the 4x4 matrix parameter, a shift row, a zero column, and a
    unit corner.  Under a chart change the matrix block conjugates and the
    shift row mixes with the chart translation.
    """

    matrix: np.ndarray

    def __post_init__(self):
        m = as_array(self.matrix, shape=(5, 5))
        if max_norm(m[:4, 4]) != 0.0 or m[4, 4] != 1.0:
            raise ShapeMismatch("parameter tensor needs a zero fifth column and unit corner")
        object.__setattr__(self, "matrix", m)

    @property
    def matrix_block(self) -> np.ndarray:
        return self.matrix[:4, :4]

    @property
    def shift(self) -> np.ndarray:
        return self.matrix[4, :4]


def build_param_tensor(matrix4, shift) -> ParamTensor:
    m = np.zeros((5, 5))
    m[:4, :4] = as_array(matrix4, shape=(4, 4))
    m[4, :4] = as_array(shift, shape=(4,))
    m[4, 4] = 1.0
    return ParamTensor(m)


def transform_param_tensor(pt: ParamTensor, t: PoincareTransform) -> ParamTensor:
    """Parameter-tensor law under a chart change by t.

    matrix' = Lambda matrix Lambda^-1
    shift'  = shift Lambda^-1 + a_low - a_low Lambda matrix Lambda^-1

    which is exactly conjugation of the 5x5 block matrix by the
    homogeneous representation of t.
    """
    lam_inv = invert(t.lam)
    a_low = _lower(t.a)
    matrix4 = t.lam @ pt.matrix_block @ lam_inv
    shift = pt.shift @ lam_inv + a_low - a_low @ matrix4
    return build_param_tensor(matrix4, shift)


@dataclass(frozen=True)
class GeneratorTensor:
    """Infinitesimal-transformation parameters as an antisymmetric five-tensor.

    The four-block holds the rotation generator omega^(mu nu) and the
    fifth row/column the translation generator b^mu.
    """

    matrix: np.ndarray

    def __post_init__(self):
        m = as_array(self.matrix, shape=(5, 5))
        if max_norm(m + m.T) > 1e-12 * max(max_norm(m), 1.0):
            raise NotAntisymmetric("generator tensor must be antisymmetric")
        object.__setattr__(self, "matrix", m)

    @property
    def omega(self) -> np.ndarray:
        return self.matrix[:4, :4]

    @property
    def translation(self) -> np.ndarray:
        return self.matrix[:4, 4]


def build_generator_tensor(omega, b) -> GeneratorTensor:
    omega = as_array(omega, shape=(4, 4))
    b = as_array(b, shape=(4,))
    m = np.zeros((5, 5))
    m[:4, :4] = omega
    m[:4, 4] = b
    m[4, :4] = -b
    return GeneratorTensor(m)


def transform_generator_tensor(gt: GeneratorTensor, t: PoincareTransform) -> GeneratorTensor:
    """Generator law under a chart change by t.

    omega' = Lambda omega Lambda^T
    b'^mu  = Lambda^mu_nu (b^nu - a_alpha Lambda^alpha_beta omega^(nu beta))
    """
    a_low = _lower(t.a)
    omega = t.lam @ gt.omega @ t.lam.T
    inner = gt.translation - gt.omega @ (t.lam.T @ a_low)
    return build_generator_tensor(omega, t.lam @ inner)
