"""Coexistence decision for qubit effect pairs: three disjoint regimes.

A pair in canonical coordinates falls into regime C1 (the second effect is
unsharp enough to coexist with anything), C2 (its direction lies outside the
restricted interval) or C3 (restricted direction, where the perpendicular
component is capped).  Commuting pairs short-circuit to TrivialParallel.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .bloch import BlochEffect, RelativePair, relative_pair, sharpness_scalar

__all__ = [
    "ARC_CIRCLE",
    "ARC_CURVE",
    "C1",
    "C2",
    "C3",
    "TRIVIAL_PARALLEL",
    "BoundaryCurve",
    "SpecialCaseVerdict",
    "Verdict",
    "boundary_curve",
    "by_max",
    "classify",
    "is_coexistent",
    "special_case_verdict",
]

C1 = "C1"
C2 = "C2"
C3 = "C3"
TRIVIAL_PARALLEL = "TrivialParallel"

ARC_CIRCLE = "circle"
ARC_CURVE = "curve"

# Absolute tolerance for regime comparisons on reduced quantities.  The
# allowed region is closed, so equalities count as coexistent.
BOUNDARY_TOL = 1e-12
_DOMAIN_TOL = 1e-12


@dataclass(frozen=True)
class Verdict:
    """Coexistence decision for a canonical pair.

    ``b0`` and ``w`` (center and half-width of the direction interval that
    carries a nontrivial length restriction) are present exactly when
    beta > 1 - S(A) and a > 0; ``by_max`` only in regime C3.
    ``discriminant`` is the quantity under the square root defining ``w``.
    """

    coexistent: bool
    regime: str
    sharpness_a: float
    b0: float | None = None
    w: float | None = None
    by_max: float | None = None
    discriminant: float | None = None


def _discriminant(alpha: float, a: float, beta: float) -> float:
    d = (1.0 - alpha) ** 2 - beta * ((1.0 - alpha) ** 2 + 1.0 - a * a) + beta * beta
    if d < -1e-10:
        # analytically impossible once beta exceeds the unsharpness threshold
        raise ArithmeticError(
            f"negative discriminant {d!r} for alpha={alpha!r}, a={a!r}, beta={beta!r}"
        )
    return max(d, 0.0)


def classify(p: RelativePair) -> Verdict:
    """Classify a canonical pair into TrivialParallel / C1 / C2 / C3.

    Expects the output of :func:`qcoex.bloch.relative_pair` (so
    0 <= alpha, beta <= 1 and by >= 0).  Parallel or trivial pairs commute
    and are always coexistent; otherwise the decision follows the regime
    conditions, with boundary equalities counting as coexistent.
    """
    s = sharpness_scalar(p.alpha, p.a)
    b0 = w = disc = None
    if p.beta > 1.0 - s + BOUNDARY_TOL and p.a > 0.0:
        disc = _discriminant(p.alpha, p.a, p.beta)
        b0 = (1.0 - p.alpha) * (1.0 - p.beta) / p.a
        w = math.sqrt(disc) / p.a
    if p.a == 0.0 or p.by == 0.0:
        return Verdict(True, TRIVIAL_PARALLEL, s, b0, w, None, disc)
    if b0 is None or w is None:
        return Verdict(True, C1, s)
    if abs(p.bx - b0) >= w - BOUNDARY_TOL:
        return Verdict(True, C2, s, b0, w, None, disc)
    cap = by_max(p.alpha, p.a, p.beta, p.bx)
    return Verdict(p.by <= cap + BOUNDARY_TOL, C3, s, b0, w, cap, disc)


def is_coexistent(A: BlochEffect, B: BlochEffect) -> bool:
    """Whether the two effects can be events of one observable; symmetric."""
    pair, _ = relative_pair(A, B)
    return classify(pair).coexistent


def by_max(alpha: float, a: float, beta: float, bx: float) -> float:
    """Largest allowed perpendicular component at direction component ``bx``.

    Defined on the restricted regime: beta > 1 - S(alpha, a), a > 0 and
    |bx - b0| <= w (the closed interval; at the endpoints the value meets
    the full-length circle, sqrt(bx^2 + by_max^2) = beta).

    Raises:
        ValueError: when a precondition fails, naming it.
    """
    if a <= 0.0:
        raise ValueError("by_max requires a > 0")
    s = sharpness_scalar(alpha, a)
    if beta <= 1.0 - s - _DOMAIN_TOL:
        raise ValueError(
            f"by_max requires beta > 1 - S: beta={beta!r}, 1 - S={1.0 - s!r}"
        )
    disc = _discriminant(alpha, a, beta)
    b0 = (1.0 - alpha) * (1.0 - beta) / a
    w = math.sqrt(disc) / a
    if abs(bx - b0) > w + _DOMAIN_TOL:
        raise ValueError(
            f"bx={bx!r} outside the restricted interval [{b0 - w!r}, {b0 + w!r}]"
        )
    t = a * (bx - b0)
    q1 = ((2.0 - alpha) ** 2 - a * a) * (a * a - (t + (1.0 - beta)) ** 2)
    q2 = (alpha * alpha - a * a) * (a * a - (t - (1.0 - beta)) ** 2)
    if min(q1, q2) < -1e-9:
        raise ArithmeticError(
            f"square-root argument out of range: q1={q1!r}, q2={q2!r}"
        )
    return (math.sqrt(max(q1, 0.0)) + math.sqrt(max(q2, 0.0))) / (2.0 * a)


@dataclass(frozen=True, eq=False)
class BoundaryCurve:
    """Sampled boundary of the allowed region for fixed (alpha, a, beta).

    ``r[i]`` is the largest allowed vector length at direction component
    ``bx[i]``; the tag is ``"circle"`` on the full-length arc (r = beta
    exactly) and ``"curve"`` strictly inside the restricted interval.
    ``b0`` and ``w`` are None when the whole circle is allowed.
    """

    alpha: float
    a: float
    beta: float
    bx: np.ndarray
    r: np.ndarray
    regime: tuple[str, ...]
    b0: float | None
    w: float | None


def boundary_curve(
    alpha: float, a: float, beta: float, n_samples: int = 256
) -> BoundaryCurve:
    """Sample the allowed-region boundary over bx in [-beta, beta].

    The junction points b0 +/- w are always inserted exactly when they fall
    inside the sampling range, so continuity across them is observable in
    the output.
    """
    if not 0.0 < alpha <= 1.0:
        raise ValueError(f"alpha must be in (0, 1], got {alpha!r}")
    if not 0.0 < beta <= 1.0:
        raise ValueError(f"beta must be in (0, 1], got {beta!r}")
    if not 0.0 <= a <= alpha + _DOMAIN_TOL:
        raise ValueError(f"a must be in [0, alpha], got a={a!r}, alpha={alpha!r}")
    if n_samples < 16:
        raise ValueError(f"n_samples must be at least 16, got {n_samples!r}")

    s = sharpness_scalar(alpha, a)
    xs = np.linspace(-beta, beta, n_samples)
    restricted = beta > 1.0 - s + BOUNDARY_TOL and a > 0.0
    b0 = w = None
    if restricted:
        disc = _discriminant(alpha, a, beta)
        b0 = (1.0 - alpha) * (1.0 - beta) / a
        w = math.sqrt(disc) / a
        junctions = [x for x in (b0 - w, b0 + w) if -beta < x < beta]
        if junctions:
            xs = np.unique(np.concatenate([xs, np.asarray(junctions)]))

    rs = np.full(xs.shape, float(beta))
    tags = [ARC_CIRCLE] * xs.size
    if restricted:
        for i, x in enumerate(xs):
            if abs(x - b0) < w - BOUNDARY_TOL:
                rs[i] = math.hypot(x, by_max(alpha, a, beta, float(x)))
                tags[i] = ARC_CURVE
    rs.setflags(write=False)
    xs.setflags(write=False)
    return BoundaryCurve(alpha, a, beta, xs, rs, tuple(tags), b0, w)


@dataclass(frozen=True)
class SpecialCaseVerdict:
    """Closed-form verdict from one of the historically known regimes."""

    which: str  # "busch" | "liu" | "molnar"
    coexistent: bool


def special_case_verdict(p: RelativePair) -> SpecialCaseVerdict | None:
    """Independent closed-form checkers on their special domains.

    Applies the two-projection-smearing criterion when alpha = beta = 1
    ("busch"), the orthogonal full-sharpness criterion when beta = 1 and
    bx = 0 ("liu"), and the scaled-projection criterion when a = alpha and
    b = beta ("molnar").  Returns None when no special domain matches.
    """
    b = p.b
    if abs(p.alpha - 1.0) <= _DOMAIN_TOL and abs(p.beta - 1.0) <= _DOMAIN_TOL:
        total = math.hypot(p.a + p.bx, p.by) + math.hypot(p.a - p.bx, p.by)
        return SpecialCaseVerdict("busch", total <= 2.0 + BOUNDARY_TOL)
    if abs(p.beta - 1.0) <= _DOMAIN_TOL and abs(p.bx) <= _DOMAIN_TOL:
        limit = 0.5 * math.sqrt(max((2.0 - p.alpha) ** 2 - p.a * p.a, 0.0)) + 0.5 * math.sqrt(
            max(p.alpha * p.alpha - p.a * p.a, 0.0)
        )
        return SpecialCaseVerdict("liu", b <= limit + BOUNDARY_TOL)
    if abs(p.a - p.alpha) <= _DOMAIN_TOL and abs(b - p.beta) <= _DOMAIN_TOL:
        parallel = p.bx >= p.beta - BOUNDARY_TOL
        dot_bound = p.a * p.bx <= 2.0 - 2.0 * p.alpha - 2.0 * p.beta + p.alpha * p.beta + BOUNDARY_TOL
        return SpecialCaseVerdict("molnar", parallel or dot_bound)
    return None
