"""Seeded verification suites shared by the CLI self-test and the test suite."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .bloch import BlochEffect, RelativePair, complement
from .coexist import classify, is_coexistent, special_case_verdict
from .oracle import (
    BOUNDARY_BAND,
    DEFAULT_GRID,
    oracle_agreement_sweep,
    random_effect,
    random_effect_pair,
)

__all__ = [
    "SuiteResult",
    "run_all",
    "suite_complement_invariance",
    "suite_convex_combination",
    "suite_oracle_agreement",
    "suite_rotation_invariance",
    "suite_scaling",
    "suite_special_cases",
]

SPECIAL_CASE_BAND = 1e-9


@dataclass(frozen=True)
class SuiteResult:
    """One verification suite: instances checked, skipped, and violations.

    ``worst`` is the smallest absolute decision margin among compared
    instances (infinity when the suite has no margin notion).
    """

    name: str
    checked: int
    violations: int
    skipped: int = 0
    worst: float = math.inf

    @property
    def passed(self) -> bool:
        return self.violations == 0


def random_rotation(rng: np.random.Generator) -> np.ndarray:
    """Proper rotation matrix, uniform via QR of a Gaussian matrix."""
    q, r = np.linalg.qr(rng.normal(size=(3, 3)))
    q = q * np.sign(np.diag(r))
    if np.linalg.det(q) < 0.0:
        q[:, 0] = -q[:, 0]
    return q


def suite_complement_invariance(n: int, seed: int) -> SuiteResult:
    """Verdict is unchanged under complementing either or both effects."""
    rng = np.random.default_rng(seed)
    violations = 0
    for _ in range(n):
        A, B = random_effect_pair(rng)
        base = is_coexistent(A, B)
        variants = (
            is_coexistent(complement(A), B),
            is_coexistent(A, complement(B)),
            is_coexistent(complement(A), complement(B)),
        )
        if any(v != base for v in variants):
            violations += 1
    return SuiteResult("complement-invariance", n, violations)


def suite_rotation_invariance(n: int, seed: int) -> SuiteResult:
    """Verdict is unchanged under a simultaneous rotation of both Bloch vectors."""
    rng = np.random.default_rng(seed)
    violations = 0
    for _ in range(n):
        A, B = random_effect_pair(rng)
        rot = random_rotation(rng)
        A2 = BlochEffect(A.alpha, rot @ A.avec)
        B2 = BlochEffect(B.alpha, rot @ B.avec)
        if is_coexistent(A, B) != is_coexistent(A2, B2):
            violations += 1
    return SuiteResult("rotation-invariance", n, violations)


def suite_convex_combination(
    n: int, seed: int, n_lambdas: int = 10, max_draws_factor: int = 60
) -> SuiteResult:
    """A coexistent with B and C implies A coexistent with every mixture of B, C."""
    rng = np.random.default_rng(seed)
    lambdas = np.linspace(0.0, 1.0, n_lambdas)
    checked = 0
    skipped = 0
    violations = 0
    draws = 0
    while checked < n and draws < max_draws_factor * n:
        draws += 1
        A = random_effect(rng)
        B = random_effect(rng)
        C = random_effect(rng)
        if not (is_coexistent(A, B) and is_coexistent(A, C)):
            skipped += 1
            continue
        checked += 1
        for lam in lambdas:
            mixed = BlochEffect(
                lam * B.alpha + (1.0 - lam) * C.alpha,
                lam * B.avec + (1.0 - lam) * C.avec,
            )
            if not is_coexistent(A, mixed):
                violations += 1
                break
    return SuiteResult("convex-combination", checked, violations, skipped)


def suite_scaling(n: int, seed: int, n_lambdas: int = 10, max_draws_factor: int = 60) -> SuiteResult:
    """A coexistent with B implies A coexistent with every downscaling of B."""
    rng = np.random.default_rng(seed)
    lambdas = np.linspace(0.0, 1.0, n_lambdas)
    checked = 0
    skipped = 0
    violations = 0
    draws = 0
    while checked < n and draws < max_draws_factor * n:
        draws += 1
        A, B = random_effect_pair(rng)
        if not is_coexistent(A, B):
            skipped += 1
            continue
        checked += 1
        for lam in lambdas:
            scaled = BlochEffect(lam * B.alpha, lam * B.avec)
            if not is_coexistent(A, scaled):
                violations += 1
                break
    return SuiteResult("scaling", checked, violations, skipped)


def _busch_pair(rng: np.random.Generator) -> RelativePair:
    a = rng.random()
    b = rng.random()
    cos = rng.uniform(-1.0, 1.0)
    return RelativePair(1.0, a, 1.0, b * cos, b * math.sqrt(max(1.0 - cos * cos, 0.0)))


def _liu_pair(rng: np.random.Generator) -> RelativePair:
    alpha = 1.0 - rng.random()
    a = alpha * rng.random()
    return RelativePair(alpha, a, 1.0, 0.0, rng.random())


def _molnar_pair(rng: np.random.Generator) -> RelativePair:
    alpha = 1.0 - rng.random()
    beta = 1.0 - rng.random()
    cos = rng.uniform(-1.0, 1.0)
    return RelativePair(
        alpha, alpha, beta, beta * cos, beta * math.sqrt(max(1.0 - cos * cos, 0.0))
    )


def _special_margin(p: RelativePair) -> float:
    """Distance of the pair from the closed-form decision boundary of its domain."""
    b = p.b
    if abs(p.alpha - 1.0) <= 1e-12 and abs(p.beta - 1.0) <= 1e-12:
        return abs(2.0 - math.hypot(p.a + p.bx, p.by) - math.hypot(p.a - p.bx, p.by))
    if abs(p.beta - 1.0) <= 1e-12 and abs(p.bx) <= 1e-12:
        limit = 0.5 * math.sqrt(max((2.0 - p.alpha) ** 2 - p.a**2, 0.0)) + 0.5 * math.sqrt(
            max(p.alpha**2 - p.a**2, 0.0)
        )
        return abs(limit - b)
    margins = [abs(p.a * p.bx - (2.0 - 2.0 * p.alpha - 2.0 * p.beta + p.alpha * p.beta))]
    if p.bx >= p.beta:
        margins.append(abs(p.bx - p.beta))
    return min(margins)


def suite_special_cases(
    n: int, seed: int, band: float = SPECIAL_CASE_BAND
) -> SuiteResult:
    """Closed-form special-domain checkers agree with the general classification.

    Draws n pairs per domain; instances within ``band`` of a closed-form
    decision boundary are skipped (floating-point shimmer, not disagreement).
    """
    rng = np.random.default_rng(seed)
    checked = 0
    skipped = 0
    violations = 0
    worst = math.inf
    for make in (_busch_pair, _liu_pair, _molnar_pair):
        for _ in range(n):
            pair = make(rng)
            special = special_case_verdict(pair)
            assert special is not None
            margin = _special_margin(pair)
            if margin < band:
                skipped += 1
                continue
            checked += 1
            worst = min(worst, margin)
            if classify(pair).coexistent != special.coexistent:
                violations += 1
    return SuiteResult("special-cases", checked, violations, skipped, worst)


def suite_oracle_agreement(
    n: int, seed: int, grid: int = DEFAULT_GRID, band: float = BOUNDARY_BAND
) -> SuiteResult:
    """Brute-force oracle agrees with the classification outside the margin band."""
    report = oracle_agreement_sweep(n, seed, grid=grid, band=band)
    return SuiteResult(
        "oracle-agreement",
        report.compared,
        report.disagreements,
        report.boundary_band,
        report.min_abs_margin,
    )


def run_all(
    n: int,
    seed: int,
    oracle_n: int | None = None,
    oracle_grid: int = 2000,
) -> list[SuiteResult]:
    """All suites with per-suite seeds derived deterministically from ``seed``."""
    if oracle_n is None:
        oracle_n = max(50, n // 10)
    return [
        suite_complement_invariance(n, seed),
        suite_rotation_invariance(n, seed + 1),
        suite_convex_combination(n, seed + 2),
        suite_scaling(n, seed + 3),
        suite_special_cases(n, seed + 4),
        suite_oracle_agreement(oracle_n, seed + 5, grid=oracle_grid),
    ]
