"""Bivector algebra over a real five-dimensional vector space.

Index labels run over (0, 1, 2, 3, 5): the fifth component slot carries
label 5, so ``components[4]`` is the label-5 entry.  The reference inner
product has signature (+ - - - +).

The central operation is ``directional_vector``: every maximal space of
simple bivectors in five dimensions consists of wedges ``u ^ w`` with a
shared vector w, unique up to scale, and this module recovers w from a
spanning set.  When w has positive norm the wedges behave like spacetime
four-vectors, with their inner product induced by ``bivector_inner``.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass

import numpy as np

from .errors import (
    BasisMismatch,
    DimensionTooSmall,
    NotAntisymmetric,
    NotInMaximalSpace,
    NotMaximalSpace,
    NotSimple,
    NotStandard,
    ZeroVector,
)
from .numerics import DEFAULT_TOL, Tolerance, as_array, max_norm, matrix_rank, null_space

INDEX_LABELS = (0, 1, 2, 3, 5)

ETA5 = as_array(np.diag([1.0, -1.0, -1.0, -1.0, 1.0]))
ETA4 = as_array(np.diag([1.0, -1.0, -1.0, -1.0]))


def label_to_slot(label: int) -> int:
    if label not in INDEX_LABELS:
        raise ValueError(f"index label must be one of {INDEX_LABELS}, got {label}")
    return 4 if label == 5 else label


def slot_to_label(slot: int) -> int:
    if not 0 <= slot <= 4:
        raise ValueError(f"slot must be 0..4, got {slot}")
    return INDEX_LABELS[slot]


def _levi_civita_5() -> np.ndarray:
    eps = np.zeros((5,) * 5)
    for perm in itertools.permutations(range(5)):
        sign = 1
        for i in range(5):
            for j in range(i + 1, 5):
                if perm[i] > perm[j]:
                    sign = -sign
        eps[perm] = sign
    eps.setflags(write=False)
    return eps


EPS5 = _levi_civita_5()


@dataclass(frozen=True)
class MetricH:
    """Symmetric five-dimensional inner product with signature (+ - - - +).

    Signature is validated by eigenvalue signs (two positive, three
    negative); the ordering of the plus and minus directions is a basis
    convention, not a property of the metric itself.
    """

    matrix: np.ndarray

    def __post_init__(self):
        m = as_array(self.matrix, shape=(5, 5))
        if max_norm(m - m.T) > 1e-12 * max(max_norm(m), 1.0):
            raise ValueError("metric matrix must be symmetric")
        eigs = np.linalg.eigvalsh(m)
        if np.min(np.abs(eigs)) <= 1e-12 * np.max(np.abs(eigs)):
            raise ValueError("metric matrix is degenerate")
        if int(np.sum(eigs > 0)) != 2 or int(np.sum(eigs < 0)) != 3:
            raise ValueError("metric signature must have two positive and three negative directions")
        object.__setattr__(self, "matrix", m)

    @classmethod
    def reference(cls) -> "MetricH":
        return cls(ETA5)

    def dot(self, u, v) -> float:
        return float(np.asarray(u) @ self.matrix @ np.asarray(v))


@dataclass(frozen=True)
class FiveVector:
    components: np.ndarray
    basis_id: str = "reference"

    def __post_init__(self):
        object.__setattr__(self, "components", as_array(self.components, shape=(5,)))


@dataclass(frozen=True)
class FiveForm:
    """Covariant counterpart of FiveVector; pairs with vectors by plain contraction."""

    components: np.ndarray
    basis_id: str = "reference"

    def __post_init__(self):
        object.__setattr__(self, "components", as_array(self.components, shape=(5,)))

    def pair(self, v: FiveVector) -> float:
        if self.basis_id != v.basis_id:
            raise BasisMismatch(f"form in {self.basis_id!r}, vector in {v.basis_id!r}")
        return float(self.components @ v.components)


@dataclass(frozen=True)
class FourVector:
    components: np.ndarray
    basis_id: str = "reference"

    def __post_init__(self):
        object.__setattr__(self, "components", as_array(self.components, shape=(4,)))


@dataclass(frozen=True)
class Bivector5:
    """Antisymmetric rank-2 contravariant tensor on the five-space."""

    matrix: np.ndarray
    basis_id: str = "reference"

    def __post_init__(self):
        m = as_array(self.matrix, shape=(5, 5))
        if max_norm(m + m.T) > 1e-12 * max(max_norm(m), 1.0):
            raise NotAntisymmetric("bivector matrix must be antisymmetric")
        object.__setattr__(self, "matrix", m)


def wedge(u: FiveVector, v: FiveVector) -> Bivector5:
    """Antisymmetrized tensor product of two five-vectors."""
    if u.basis_id != v.basis_id:
        raise BasisMismatch(f"operands live in {u.basis_id!r} and {v.basis_id!r}")
    a, b = u.components, v.components
    return Bivector5(np.outer(a, b) - np.outer(b, a), basis_id=u.basis_id)


def _wedge_square_dual(b: np.ndarray) -> np.ndarray:
    # The antisymmetrized square of a 2-form is a 4-form; in five dimensions
    # that is captured completely by its contraction with the Levi-Civita
    # symbol, a plain five-component vector.
    return np.einsum("abcde,ab,cd->e", EPS5, b, b)


def is_simple(b: Bivector5, tol: Tolerance = DEFAULT_TOL) -> bool:
    """True when b is a single wedge u ^ v, detected by b ^ b = 0."""
    scale = max_norm(b.matrix) ** 2
    return max_norm(_wedge_square_dual(b.matrix)) <= tol.bound(scale)


_TRIPLES = list(itertools.combinations(range(5), 3))
_PAIRS = list(itertools.combinations(range(5), 2))


def _vec_pairs(b: np.ndarray) -> np.ndarray:
    return np.array([b[i, j] for i, j in _PAIRS])


def _wedge_with_vector_map(b: np.ndarray) -> np.ndarray:
    """Matrix of w -> b ^ w, rows indexed by the 10 independent 3-form slots."""
    rows = np.zeros((len(_TRIPLES), 5))
    for r, (i, j, k) in enumerate(_TRIPLES):
        # (b ^ w)^{ijk} = b^{ij} w^k + b^{jk} w^i + b^{ki} w^j
        rows[r, k] += b[i, j]
        rows[r, i] += b[j, k]
        rows[r, j] += b[k, i]
    return rows


def directional_vector(bivectors, tol: Tolerance = DEFAULT_TOL) -> FiveVector:
    """Shared direction w of a spanning set of a maximal simple-bivector space.

    Every input must be simple, the inputs must span at least four
    dimensions, and all of them must annihilate a single common direction
    under the wedge.  The result is unit length in the Euclidean sense with
    its first significant component positive, making the sign deterministic.
    """
    bivectors = list(bivectors)
    if not bivectors:
        raise DimensionTooSmall("need a spanning set, got no bivectors")
    basis_id = bivectors[0].basis_id
    for b in bivectors:
        if b.basis_id != basis_id:
            raise BasisMismatch("bivectors expressed against different bases")
        if not is_simple(b, tol):
            raise NotSimple("input bivector is not simple")

    span = np.array([_vec_pairs(b.matrix) for b in bivectors])
    if matrix_rank(span, tol) < 4:
        raise DimensionTooSmall("bivectors span fewer than four dimensions")

    constraints = np.vstack([_wedge_with_vector_map(b.matrix) for b in bivectors])
    kernel = null_space(constraints, tol)
    if len(kernel) != 1:
        raise NotMaximalSpace(
            f"common-direction space has dimension {len(kernel)}, expected 1"
        )
    w = kernel[0]
    wmax = np.max(np.abs(w))
    for entry in w:
        if abs(entry) > 1e-8 * wmax:
            if entry < 0:
                w = -w
            break
    return FiveVector(w, basis_id=basis_id)


def bivector_inner(b1: Bivector5, b2: Bivector5, h: MetricH) -> float:
    """Inner product induced on bivectors by the five-metric.

    For simple arguments sharing a directional vector w this reduces to
    h(u, v) h(w, w) - h(u, w) h(v, w), the metric that makes a maximal
    simple-bivector space behave as a spacetime of four-vectors.
    """
    return 0.5 * float(np.einsum("ac,bd,ab,cd->", h.matrix, h.matrix, b1.matrix, b2.matrix))


class DirectionalClass(enum.Enum):
    POSITIVE = "positive"
    NULL = "null"
    NEGATIVE = "negative"


def classify_directional(w: FiveVector, h: MetricH, tol: Tolerance = DEFAULT_TOL) -> DirectionalClass:
    """Sign class of h(w, w), with a tolerance band around zero.

    Positive norm gives a Lorentzian wedge space, negative norm flips two
    metric signs, and a null direction degenerates the induced metric.
    """
    wmax = max_norm(w.components)
    if wmax <= tol.abs:
        raise ZeroVector("cannot classify the zero vector")
    norm = h.dot(w.components, w.components)
    band = tol.bound(max_norm(h.matrix) * wmax * wmax)
    if abs(norm) <= band:
        return DirectionalClass.NULL
    return DirectionalClass.POSITIVE if norm > 0 else DirectionalClass.NEGATIVE


def bivector_from_four(u: FourVector, basis) -> Bivector5:
    """Embed a four-vector into the wedge space of a standard basis."""
    if u.basis_id != basis.id:
        raise BasisMismatch(f"four-vector in {u.basis_id!r}, basis is {basis.id!r}")
    cols = basis.matrix
    b = np.zeros((5, 5))
    for mu in range(4):
        b += u.components[mu] * (np.outer(cols[:, mu], cols[:, 4]) - np.outer(cols[:, 4], cols[:, mu]))
    return Bivector5(b, basis_id=basis.reference_id)


def four_from_bivector(b: Bivector5, basis, tol: Tolerance = DEFAULT_TOL) -> FourVector:
    """Components of b against the wedge basis e_mu ^ e_5 of a standard basis.

    Raises NotInMaximalSpace when b has a residual outside that span.
    """
    if not basis.is_standard(tol):
        raise NotStandard("basis must be standard (fifth vector along the directional vector)")
    if b.basis_id != basis.reference_id:
        raise BasisMismatch(f"bivector in {b.basis_id!r}, basis columns in {basis.reference_id!r}")
    cols = basis.matrix
    stack = np.zeros((len(_PAIRS), 4))
    for mu in range(4):
        w = np.outer(cols[:, mu], cols[:, 4]) - np.outer(cols[:, 4], cols[:, mu])
        stack[:, mu] = _vec_pairs(w)
    target = _vec_pairs(b.matrix)
    coeffs, *_ = np.linalg.lstsq(stack, target, rcond=None)
    residual = max_norm(stack @ coeffs - target)
    if residual > tol.bound(max_norm(b.matrix)):
        raise NotInMaximalSpace(f"residual {residual:.3e} outside the wedge span")
    return FourVector(coeffs, basis_id=basis.id)
