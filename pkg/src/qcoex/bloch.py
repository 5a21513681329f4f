"""Qubit effects in Bloch form: validation, complements, sharpness, pair reduction.

A qubit effect is an operator E with 0 <= E <= 1, written throughout as
E = (alpha * I + avec . sigma) / 2 for a real trace coefficient alpha and a
real 3-vector avec.  Validity of E is equivalent to
||avec|| <= alpha <= 2 - ||avec||.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "BlochEffect",
    "InvalidEffectError",
    "PAULI_X",
    "PAULI_Y",
    "PAULI_Z",
    "ReductionReport",
    "RelativePair",
    "complement",
    "effect_from_bloch",
    "effect_from_matrix",
    "effect_to_matrix",
    "relative_pair",
    "sharpness",
    "sharpness_scalar",
]

HERMITICITY_TOL = 1e-10
EIGENVALUE_TOL = 1e-10
VALIDITY_TOL = 1e-12

PAULI_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
PAULI_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
PAULI_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)


class InvalidEffectError(ValueError):
    """Raised when parameters or a matrix do not describe a qubit effect."""


@dataclass(frozen=True, eq=False)
class BlochEffect:
    """Qubit effect (alpha * I + avec . sigma) / 2.

    Plain immutable container; use :func:`effect_from_bloch` or
    :func:`effect_from_matrix` when the input needs validation.
    """

    alpha: float
    avec: np.ndarray

    def __post_init__(self) -> None:
        vec = np.array(self.avec, dtype=float).reshape(3)
        vec.setflags(write=False)
        object.__setattr__(self, "alpha", float(self.alpha))
        object.__setattr__(self, "avec", vec)

    @property
    def a(self) -> float:
        """Length of the Bloch vector."""
        return float(np.linalg.norm(self.avec))

    def validity_residual(self) -> float:
        """Largest violation of ||avec|| <= alpha <= 2 - ||avec|| (<= 0 when valid)."""
        a = self.a
        return max(a - self.alpha, self.alpha - (2.0 - a))


def effect_from_bloch(alpha: float, avec, tol: float = VALIDITY_TOL) -> BlochEffect:
    """Validated effect from its trace coefficient and Bloch vector.

    Raises:
        InvalidEffectError: naming the bound that failed, when the parameters
            violate ||avec|| <= alpha <= 2 - ||avec|| beyond ``tol``.
    """
    effect = BlochEffect(alpha, avec)
    if not math.isfinite(effect.alpha) or not np.all(np.isfinite(effect.avec)):
        raise InvalidEffectError("effect parameters must be finite")
    a = effect.a
    if effect.alpha < a - tol:
        raise InvalidEffectError(
            f"lower bound failed: alpha={effect.alpha!r} is below ||avec||={a!r}"
        )
    if effect.alpha > 2.0 - a + tol:
        raise InvalidEffectError(
            f"upper bound failed: alpha={effect.alpha!r} exceeds 2 - ||avec||={2.0 - a!r}"
        )
    return effect


def complement(e: BlochEffect) -> BlochEffect:
    """Complementary effect 1 - E, i.e. (2 - alpha, -avec); involutive."""
    return BlochEffect(2.0 - e.alpha, -e.avec)


def effect_to_matrix(e: BlochEffect) -> np.ndarray:
    """2x2 complex matrix (alpha * I + avec . sigma) / 2."""
    ax, ay, az = e.avec
    return 0.5 * np.array(
        [
            [e.alpha + az, ax - 1j * ay],
            [ax + 1j * ay, e.alpha - az],
        ],
        dtype=complex,
    )


def effect_from_matrix(m) -> BlochEffect:
    """Effect from a 2x2 matrix via its Pauli expansion.

    The matrix must be Hermitian within ``HERMITICITY_TOL`` and have
    eigenvalues in [0, 1] within ``EIGENVALUE_TOL``.  Round trip with
    :func:`effect_to_matrix` is the identity to better than 1e-12 per entry.

    Raises:
        InvalidEffectError: for non-Hermitian input or an eigenvalue outside
            the operator bounds.
    """
    mat = np.asarray(m, dtype=complex)
    if mat.shape != (2, 2):
        raise InvalidEffectError(f"expected a 2x2 matrix, got shape {mat.shape}")
    herm_defect = float(np.abs(mat - mat.conj().T).max())
    if herm_defect > HERMITICITY_TOL:
        raise InvalidEffectError(
            f"matrix is not Hermitian: max |M - M^dagger| = {herm_defect:.3e}"
        )
    h = 0.5 * (mat + mat.conj().T)
    evals = np.linalg.eigvalsh(h)
    if evals[0] < -EIGENVALUE_TOL:
        raise InvalidEffectError(f"eigenvalue {evals[0]!r} below 0")
    if evals[-1] > 1.0 + EIGENVALUE_TOL:
        raise InvalidEffectError(f"eigenvalue {evals[-1]!r} above 1")
    alpha = float((h[0, 0] + h[1, 1]).real)
    ax = float((h[0, 1] + h[1, 0]).real)
    ay = float((h[1, 0] - h[0, 1]).imag)
    az = float((h[0, 0] - h[1, 1]).real)
    return BlochEffect(alpha, (ax, ay, az))


def sharpness_scalar(alpha: float, a: float) -> float:
    """Sharpness of an effect from its trace coefficient and Bloch length.

    Returns a value in [0, 1]: 1 exactly for non-trivial projections
    (alpha = a = 1), 0 exactly for trivial effects (a = 0).  The square-root
    argument is a product of differences of near-equal squares close to
    a = alpha, so tiny negatives are clamped to zero.
    """
    if a == 0.0:
        return 0.0
    arg = (alpha * alpha - a * a) * ((2.0 - alpha) ** 2 - a * a)
    if arg < -1e-10:
        raise InvalidEffectError(f"sharpness arguments out of range: alpha={alpha!r}, a={a!r}")
    s = 0.5 * (a * a + alpha * (2.0 - alpha) - math.sqrt(max(arg, 0.0)))
    if -1e-12 <= s < 0.0:
        return 0.0
    if 1.0 < s <= 1.0 + 1e-12:
        return 1.0
    return s


def sharpness(e: BlochEffect) -> float:
    """Sharpness of the effect; invariant under complement and rotations."""
    return sharpness_scalar(e.alpha, e.a)


@dataclass(frozen=True)
class RelativePair:
    """Canonical relative coordinates of an effect pair.

    ``alpha`` and ``a`` describe the first effect, ``beta`` the second;
    ``bx`` is the component of the second Bloch vector along the first and
    ``by`` (>= 0) the length of its perpendicular part.  After reduction
    alpha and beta are at most 1, and bx^2 + by^2 <= beta^2.
    """

    alpha: float
    a: float
    beta: float
    bx: float
    by: float

    @property
    def b(self) -> float:
        """Length of the second Bloch vector."""
        return math.hypot(self.bx, self.by)


@dataclass(frozen=True)
class ReductionReport:
    """How a pair was canonicalized, so verdicts and witnesses map back.

    ``complemented_a`` / ``complemented_b`` record replacement by 1 - E when
    the trace coefficient exceeded 1.  The trivial flags mark effects that
    are multiples of the identity (zero Bloch vector), where the relative
    direction is undefined and ``bx`` carries the +1 sign convention.
    """

    complemented_a: bool
    complemented_b: bool
    a_trivial: bool
    b_trivial: bool


def relative_pair(A: BlochEffect, B: BlochEffect) -> tuple[RelativePair, ReductionReport]:
    """Reduce two effects to canonical relative coordinates.

    Effects with a trace coefficient above 1 are replaced by their
    complements (coexistence is unchanged), then only the relative angle
    between the Bloch vectors is kept.  The output is invariant under a
    simultaneous rotation of both vectors.
    """
    comp_a = A.alpha > 1.0
    comp_b = B.alpha > 1.0
    first = complement(A) if comp_a else A
    second = complement(B) if comp_b else B
    a = first.a
    b = second.a
    if a > 0.0:
        bx = float(np.dot(first.avec, second.avec)) / a
        by = math.sqrt(max(b * b - bx * bx, 0.0))
    else:
        bx = b
        by = 0.0
    pair = RelativePair(first.alpha, a, second.alpha, bx, by)
    report = ReductionReport(comp_a, comp_b, a == 0.0, b == 0.0)
    return pair, report
