"""Five-dimensional bases, basis changes, and basis construction.

A basis is standard when its fifth vector points along the designated
directional vector of the wedge space (here the reference fifth axis).
Changes between standard bases are exactly those with a vanishing
top-right column block, and they factor uniquely into a scaling of the
fifth vector (U), a shear adding multiples of the fifth vector to the
first four (P), and a pure four-space map (M).

The two constructors at the bottom build five-bases out of four-vector
data given as simple bivectors: ``orthonormal_basis_for`` requires the
input wedges to be orthonormal and returns an orthonormal five-basis,
unique up to an overall sign; ``regular_basis_for`` accepts any
independent spanning set and returns a basis whose fifth vector is unit
and orthogonal to the other four.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import (
    ETA4,
    Bivector5,
    MetricH,
    _vec_pairs,
    bivector_inner,
    directional_vector,
)
from .errors import (
    DegenerateInducedMetric,
    DimensionTooSmall,
    NoCommonDirection,
    NotMaximalSpace,
    NotOrthonormalInput,
    NotSimple,
    NotStandard,
    SingularBlock,
)
from .numerics import DEFAULT_TOL, Tolerance, as_array, invert, max_norm


@dataclass(frozen=True)
class BasisFlags:
    standard: bool
    regular: bool
    orthonormal: bool


@dataclass(frozen=True)
class Basis5:
    """Five basis vectors, stored as columns against a reference basis."""

    matrix: np.ndarray
    id: str = "basis"
    reference_id: str = "reference"
    flags: BasisFlags | None = None

    def __post_init__(self):
        m = as_array(self.matrix, shape=(5, 5))
        invert(m)  # basis vectors must be independent
        object.__setattr__(self, "matrix", m)

    def vector(self, label: int) -> np.ndarray:
        from .algebra import label_to_slot

        return self.matrix[:, label_to_slot(label)]

    def is_standard(self, tol: Tolerance = DEFAULT_TOL) -> bool:
        # Fifth column proportional to the reference directional axis.
        col = self.matrix[:, 4]
        return max_norm(col[:4]) <= tol.bound(max_norm(col))


REFERENCE_BASIS = Basis5(np.eye(5), id="reference")


def classify_basis(basis: Basis5, h: MetricH, tol: Tolerance = DEFAULT_TOL) -> BasisFlags:
    gram = basis.matrix.T @ h.matrix @ basis.matrix
    scale = max_norm(gram)
    regular = (
        abs(gram[4, 4] - 1.0) <= tol.bound(scale)
        and max_norm(gram[:4, 4]) <= tol.bound(scale)
    )
    eta = np.diag([1.0, -1.0, -1.0, -1.0, 1.0])
    orthonormal = max_norm(gram - eta) <= tol.bound(scale)
    return BasisFlags(standard=basis.is_standard(tol), regular=regular, orthonormal=orthonormal)


def with_flags(basis: Basis5, h: MetricH, tol: Tolerance = DEFAULT_TOL) -> Basis5:
    return Basis5(
        basis.matrix,
        id=basis.id,
        reference_id=basis.reference_id,
        flags=classify_basis(basis, h, tol),
    )


def is_regular(basis: Basis5, h: MetricH, tol: Tolerance = DEFAULT_TOL) -> bool:
    """Unit fifth vector, h-orthogonal to the first four."""
    return classify_basis(basis, h, tol).regular


@dataclass(frozen=True)
class BasisChange:
    """Invertible matrix L with new basis vectors e'_A = e_B L^B_A."""

    matrix: np.ndarray

    def __post_init__(self):
        m = as_array(self.matrix, shape=(5, 5))
        invert(m)
        object.__setattr__(self, "matrix", m)

    def inverse(self) -> "BasisChange":
        return BasisChange(invert(self.matrix))


def apply_change(basis: Basis5, change: BasisChange, new_id: str = "changed") -> Basis5:
    return Basis5(basis.matrix @ change.matrix, id=new_id, reference_id=basis.reference_id)


def is_standard_change(change: BasisChange, tol: Tolerance = DEFAULT_TOL) -> bool:
    """True when the change maps standard bases to standard bases.

    The criterion is a vanishing upper-right block: the new fifth vector
    may pick up no component along the first four.
    """
    m = change.matrix
    return max_norm(m[:4, 4]) <= tol.bound(max_norm(m))


def induced_four_map(change: BasisChange, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """Map induced on wedge four-vectors by a standard basis change.

    The wedges transform with the four-block of L scaled by the fifth
    diagonal entry: Lambda^nu_mu = L^5_5 L^nu_mu.
    """
    if not is_standard_change(change, tol):
        raise NotStandard("only standard changes act on the wedge four-space")
    m = change.matrix
    return m[4, 4] * m[:4, :4]


@dataclass(frozen=True)
class UPMDecomposition:
    """Factors of a standard change L = U(a) P(p) M(t)."""

    a: float
    p: np.ndarray
    t: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "p", as_array(self.p, shape=(4,)))
        object.__setattr__(self, "t", as_array(self.t, shape=(4, 4)))


def u_transformation(a: float) -> BasisChange:
    """Scale the fifth vector by a and the other four by 1/a."""
    if a == 0.0:
        raise SingularBlock("scaling factor must be nonzero")
    m = np.eye(5) / a
    m[4, 4] = a
    return BasisChange(m)


def p_transformation(p) -> BasisChange:
    """Shear each of the first four vectors by a multiple of the fifth."""
    p = as_array(p, shape=(4,))
    m = np.eye(5)
    m[4, :4] = p
    return BasisChange(m)


def m_transformation(t) -> BasisChange:
    """Map the first four vectors among themselves, fifth untouched."""
    t = as_array(t, shape=(4, 4))
    m = np.eye(5)
    m[:4, :4] = t
    return BasisChange(m)


def decompose_upm(change: BasisChange, tol: Tolerance = DEFAULT_TOL) -> UPMDecomposition:
    """Unique factorization of a standard change into U(a) P(p) M(t).

    Reading the blocks of the product U P M gives a = L^5_5, t = a times
    the four-block, and p from the bottom row against t.
    """
    if not is_standard_change(change, tol):
        raise NotStandard("only standard changes admit the U P M factorization")
    m = change.matrix
    a = float(m[4, 4])
    t = a * m[:4, :4]
    try:
        t_inv = invert(t, tol)
    except Exception as exc:
        raise SingularBlock("four-block of the change is singular") from exc
    p = (m[4, :4] @ t_inv) / a
    return UPMDecomposition(a=a, p=p, t=t)


def compose_upm(d: UPMDecomposition) -> BasisChange:
    prod = u_transformation(d.a).matrix @ p_transformation(d.p).matrix @ m_transformation(d.t).matrix
    return BasisChange(prod)


@dataclass(frozen=True)
class OrientationTensor:
    """Totally antisymmetric five-index symbol, fixed by its (0,1,2,3,5) entry."""

    sign: int = 1

    def __post_init__(self):
        if self.sign not in (-1, 1):
            raise ValueError("orientation sign must be +1 or -1")

    def array(self) -> np.ndarray:
        from .algebra import EPS5

        return self.sign * EPS5


def orientation_sign(basis: Basis5, orientation: OrientationTensor = OrientationTensor()) -> int:
    """Orientation of a basis: the sign of the epsilon-volume of its vectors."""
    det = float(np.linalg.det(basis.matrix))
    if det == 0.0:
        raise SingularBlock("degenerate basis has no orientation")
    return int(np.sign(det)) * orientation.sign


def _wedge_map_for(w: np.ndarray) -> np.ndarray:
    """Matrix of u -> components of u ^ w over the 10 independent pair slots."""
    from .algebra import _PAIRS

    rows = np.zeros((len(_PAIRS), 5))
    for r, (i, j) in enumerate(_PAIRS):
        # (u ^ w)^{ij} = u^i w^j - u^j w^i
        rows[r, i] += w[j]
        rows[r, j] -= w[i]
    return rows


def orthonormal_basis_for(
    wedges,
    h: MetricH,
    tol: Tolerance = DEFAULT_TOL,
    negate_direction: bool = False,
) -> Basis5:
    """Orthonormal five-basis whose wedge four-basis reproduces the input.

    The four input bivectors must be orthonormal under the induced inner
    product with the spacetime pattern (+ - - -).  The output satisfies
    e_mu ^ e_5 = input_mu and has five-metric diag(+ - - - +); it is unique
    up to negating all five vectors at once, an ambiguity resolved here by
    a deterministic sign rule on the extracted direction
    (``negate_direction`` selects the other representative).
    """
    wedges = list(wedges)
    if len(wedges) != 4:
        raise NotOrthonormalInput(f"need exactly four bivectors, got {len(wedges)}")
    gram = np.array([[bivector_inner(a, b, h) for b in wedges] for a in wedges])
    if max_norm(gram - ETA4) > tol.bound(max(max_norm(gram), 1.0)):
        raise NotOrthonormalInput("induced inner products do not match diag(+ - - -)")

    try:
        w = directional_vector(wedges, tol).components
    except NotSimple as exc:
        raise NotOrthonormalInput(str(exc)) from exc
    except (NotMaximalSpace, DimensionTooSmall) as exc:
        raise NoCommonDirection(str(exc)) from exc
    if negate_direction:
        w = -w

    wedge_map = _wedge_map_for(w)
    raw = np.zeros((5, 4))
    for mu, b in enumerate(wedges):
        target = _vec_pairs(b.matrix)
        sol, *_ = np.linalg.lstsq(wedge_map, target, rcond=None)
        if max_norm(wedge_map @ sol - target) > tol.bound(max_norm(b.matrix)):
            raise NoCommonDirection("input bivector is not a wedge with the common direction")
        raw[:, mu] = sol

    h55 = h.dot(w, w)
    if h55 <= 0.0:
        raise NoCommonDirection("common direction has non-positive norm")
    root = np.sqrt(h55)
    cols = np.zeros((5, 5))
    for mu in range(4):
        mixed = h.dot(raw[:, mu], w)
        cols[:, mu] = root * (raw[:, mu] - (mixed / h55) * w)
    cols[:, 4] = w / root

    basis = Basis5(cols, id="orthonormal")
    flags = classify_basis(basis, h, tol)
    if not flags.orthonormal:
        raise NotOrthonormalInput("constructed basis failed the orthonormality check")
    return Basis5(cols, id="orthonormal", flags=flags)


def regular_basis_for(
    wedges,
    h: MetricH,
    tol: Tolerance = DEFAULT_TOL,
    negate_direction: bool = False,
) -> Basis5:
    """Regular five-basis reproducing four independent input wedges.

    The induced inner product of the inputs may be any metric of spacetime
    signature (one positive, three negative directions); it is diagonalized
    to orthonormal combinations, those are lifted with
    ``orthonormal_basis_for``, and the four-space part is mapped back.  The
    result keeps e_mu ^ e_5 = input_mu with a unit fifth vector orthogonal
    to the first four.
    """
    wedges = list(wedges)
    if len(wedges) != 4:
        raise DegenerateInducedMetric(f"need exactly four bivectors, got {len(wedges)}")
    gram = np.array([[bivector_inner(a, b, h) for b in wedges] for a in wedges])
    eigs, vecs = np.linalg.eigh(gram)
    if np.min(np.abs(eigs)) <= tol.rel * np.max(np.abs(eigs)):
        raise DegenerateInducedMetric("induced metric is numerically degenerate")
    if int(np.sum(eigs > 0)) != 1 or int(np.sum(eigs < 0)) != 3:
        raise DegenerateInducedMetric("induced metric must have signature (+ - - -)")

    # Columns ordered positive first so the diagonalized gram is diag(+ - - -).
    order = list(np.argsort(-eigs))
    lam = np.zeros((4, 4))
    for new, old in enumerate(order):
        lam[:, new] = vecs[:, old] / np.sqrt(abs(eigs[old]))

    rotated = []
    for alpha in range(4):
        combo = sum(lam[beta, alpha] * wedges[beta].matrix for beta in range(4))
        rotated.append(Bivector5(combo, basis_id=wedges[0].basis_id))

    ortho = orthonormal_basis_for(rotated, h, tol, negate_direction=negate_direction)
    lam_inv = invert(lam, tol)
    cols = np.zeros((5, 5))
    cols[:, :4] = ortho.matrix[:, :4] @ lam_inv
    cols[:, 4] = ortho.matrix[:, 4]

    basis = Basis5(cols, id="regular")
    flags = classify_basis(basis, h, tol)
    if not flags.regular:
        raise DegenerateInducedMetric("constructed basis failed the regularity check")
    return Basis5(cols, id="regular", flags=flags)
