"""Brute-force coexistence oracle: feasibility of four gamma-dependent disks.

A pair is coexistent exactly when, for some admissible gamma, the four planar
disks encoding the operator constraints on the shared first outcome have a
common point.  The feasibility test per gamma is exact and finite, so the
oracle is independent of the closed-form classification.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .bloch import BlochEffect, RelativePair, relative_pair
from .coexist import classify

__all__ = [
    "DiskSystem",
    "OracleResult",
    "SweepReport",
    "circle_intersection_points",
    "disks_at",
    "disks_feasible",
    "oracle_agreement_sweep",
    "oracle_coexistent",
    "oracle_scan",
    "point_violation",
    "random_effect",
    "random_effect_pair",
]

MEMBERSHIP_SLACK = 1e-12
BOUNDARY_BAND = 1e-6
ENDPOINT_TOL = 1e-10
DEFAULT_GRID = 10_000

_PAIRS = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))
_TRIPLES = ((0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3))
# Overlap brackets are widened so near-tangent candidate points are still
# generated; the membership slack remains the arbiter of feasibility.
_BRACKET_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class DiskSystem:
    """Planar feasibility system for the shared-outcome vector.

    Centers sit at the corners of the parallelogram spanned by the two
    reduced Bloch vectors: (0,0), (a,0), (bx,by), (a+bx,by).  Radii are
    (gamma, alpha-gamma, beta-gamma, 2+gamma-alpha-beta); a negative radius
    marks that disk as empty (the system is infeasible at this gamma).
    """

    centers: np.ndarray  # (4, 2)
    radii: np.ndarray  # (4,)
    gamma: float

    def __post_init__(self) -> None:
        centers = np.asarray(self.centers, dtype=float).reshape(4, 2)
        radii = np.asarray(self.radii, dtype=float).reshape(4)
        centers.setflags(write=False)
        radii.setflags(write=False)
        object.__setattr__(self, "centers", centers)
        object.__setattr__(self, "radii", radii)
        object.__setattr__(self, "gamma", float(self.gamma))


def disks_at(p: RelativePair, gamma: float) -> DiskSystem:
    """Disk system of a canonical pair at a given gamma."""
    centers = [
        (0.0, 0.0),
        (p.a, 0.0),
        (p.bx, p.by),
        (p.a + p.bx, p.by),
    ]
    radii = [gamma, p.alpha - gamma, p.beta - gamma, 2.0 + gamma - p.alpha - p.beta]
    return DiskSystem(np.array(centers), np.array(radii), gamma)


def circle_intersection_points(c0, r0: float, c1, r1: float) -> list[tuple[float, float]]:
    """Common points of two circles; tangency collapses to a single point."""
    dx = c1[0] - c0[0]
    dy = c1[1] - c0[1]
    d = math.hypot(dx, dy)
    if d == 0.0:
        return []
    if d > r0 + r1 + _BRACKET_TOL or d < abs(r0 - r1) - _BRACKET_TOL:
        return []
    t = (r0 * r0 - r1 * r1 + d * d) / (2.0 * d)
    h = math.sqrt(max(r0 * r0 - t * t, 0.0))
    mx = c0[0] + t * dx / d
    my = c0[1] + t * dy / d
    if h == 0.0:
        return [(mx, my)]
    ox = -dy / d * h
    oy = dx / d * h
    return [(mx + ox, my + oy), (mx - ox, my - oy)]


def point_violation(d: DiskSystem, point) -> float:
    """Largest membership violation of the point over the four disks (<= 0 inside)."""
    x, y = point
    worst = -math.inf
    for (cx, cy), r in zip(d.centers, d.radii):
        worst = max(worst, math.hypot(x - cx, y - cy) - r)
    return worst


def _candidate_points(d: DiskSystem):
    """Candidates deciding feasibility: disk centers and circle crossings."""
    for cx, cy in d.centers:
        yield (float(cx), float(cy))
    for i, j in _PAIRS:
        ri = float(d.radii[i])
        rj = float(d.radii[j])
        if ri < 0.0 or rj < 0.0:
            continue
        yield from circle_intersection_points(d.centers[i], ri, d.centers[j], rj)


def disks_feasible(d: DiskSystem) -> tuple[float, float] | None:
    """Exact finite feasibility test; returns the deepest candidate point if any.

    A nonempty intersection of disks whose boundary has vertices exposes a
    pairwise circle-intersection point; a vertex-free nonempty intersection
    is a full disk, whose center qualifies.  So checking the 4 centers and
    the <= 12 pairwise intersection points decides feasibility exactly.
    """
    best = None
    best_v = math.inf
    for pt in _candidate_points(d):
        v = point_violation(d, pt)
        if v < best_v:
            best_v = v
            best = pt
    if best is not None and best_v <= MEMBERSHIP_SLACK:
        return best
    return None


def _triple_points(centers, radii, i: int, j: int, k: int) -> list[tuple[float, float]]:
    """Points where three constraints have the same signed violation.

    Solving ||g - c|| - r = t for the three disks is linear in g given t and
    quadratic in t, the classical tangent-circle construction.
    """
    ci, cj, ck = centers[i], centers[j], centers[k]
    ri, rj, rk = float(radii[i]), float(radii[j]), float(radii[k])
    m00 = 2.0 * (cj[0] - ci[0])
    m01 = 2.0 * (cj[1] - ci[1])
    m10 = 2.0 * (ck[0] - ci[0])
    m11 = 2.0 * (ck[1] - ci[1])
    det = m00 * m11 - m01 * m10
    if abs(det) < 1e-14:
        return []
    u1 = (cj[0] ** 2 + cj[1] ** 2) - (ci[0] ** 2 + ci[1] ** 2) + ri * ri - rj * rj
    u2 = (ck[0] ** 2 + ck[1] ** 2) - (ci[0] ** 2 + ci[1] ** 2) + ri * ri - rk * rk
    v1 = 2.0 * (ri - rj)
    v2 = 2.0 * (ri - rk)
    g0 = ((m11 * u1 - m01 * u2) / det, (-m10 * u1 + m00 * u2) / det)
    g1 = ((m11 * v1 - m01 * v2) / det, (-m10 * v1 + m00 * v2) / det)
    w0 = (g0[0] - ci[0], g0[1] - ci[1])
    qa = g1[0] * g1[0] + g1[1] * g1[1] - 1.0
    qb = 2.0 * (w0[0] * g1[0] + w0[1] * g1[1] - ri)
    qc = w0[0] * w0[0] + w0[1] * w0[1] - ri * ri
    if abs(qa) < 1e-14:
        ts = [-qc / qb] if abs(qb) > 1e-14 else []
    else:
        disc = qb * qb - 4.0 * qa * qc
        if disc < 0.0:
            ts = []
        else:
            sq = math.sqrt(disc)
            ts = [(-qb + sq) / (2.0 * qa), (-qb - sq) / (2.0 * qa)]
    return [(g0[0] + t * g1[0], g0[1] + t * g1[1]) for t in ts]


def _margin_candidate_points(d: DiskSystem):
    """Stationary points of the max-violation function, on top of the
    feasibility candidates: pair balance points (two constraints active)
    and triple equalization points (three active).  Together with the
    centers these contain the minimizer of the per-gamma minimax."""
    yield from _candidate_points(d)
    for i, j in _PAIRS:
        ci = d.centers[i]
        cj = d.centers[j]
        dd = math.hypot(cj[0] - ci[0], cj[1] - ci[1])
        if dd == 0.0:
            continue
        s = (dd + float(d.radii[i]) - float(d.radii[j])) / 2.0
        yield (
            ci[0] + s * (cj[0] - ci[0]) / dd,
            ci[1] + s * (cj[1] - ci[1]) / dd,
        )
    for i, j, k in _TRIPLES:
        yield from _triple_points(d.centers, d.radii, i, j, k)


def _best_violation(p: RelativePair, gamma: float) -> float:
    """Minimum over candidate points of the max constraint violation."""
    d = disks_at(p, gamma)
    return min(point_violation(d, pt) for pt in _margin_candidate_points(d))


def _violation_profile(p: RelativePair, gammas: np.ndarray) -> np.ndarray:
    """Vectorized _best_violation over a gamma grid (same candidate geometry)."""
    m = gammas.size
    centers = np.array([[0.0, 0.0], [p.a, 0.0], [p.bx, p.by], [p.a + p.bx, p.by]])
    radii = np.empty((4, m))
    radii[0] = gammas
    radii[1] = p.alpha - gammas
    radii[2] = p.beta - gammas
    radii[3] = 2.0 + gammas - p.alpha - p.beta
    radii_t = radii.T  # (m, 4)

    best = np.full(m, np.inf)

    def consider(pts: np.ndarray, mask: np.ndarray | None = None) -> None:
        # pts: (m, 2) candidate per gamma
        dists = np.linalg.norm(pts[:, None, :] - centers[None, :, :], axis=2)
        viol = (dists - radii_t).max(axis=1)
        if mask is not None:
            viol = np.where(mask, viol, np.inf)
        viol = np.where(np.isfinite(viol), viol, np.inf)
        np.minimum(best, viol, out=best)

    dcc = np.linalg.norm(centers[:, None, :] - centers[None, :, :], axis=2)
    for k in range(4):
        viol = (dcc[:, k][:, None] - radii).max(axis=0)
        np.minimum(best, viol, out=best)

    for i, j in _PAIRS:
        ci = centers[i]
        cj = centers[j]
        d = float(np.linalg.norm(cj - ci))
        if d == 0.0:
            continue
        ri = radii[i]
        rj = radii[j]
        ex = (cj - ci) / d
        orth = np.array([-ex[1], ex[0]])
        # crossing points of the two circles
        ok = (
            (ri >= 0.0)
            & (rj >= 0.0)
            & (d <= ri + rj + _BRACKET_TOL)
            & (d >= np.abs(ri - rj) - _BRACKET_TOL)
        )
        if ok.any():
            t = (ri * ri - rj * rj + d * d) / (2.0 * d)
            h = np.sqrt(np.clip(ri * ri - t * t, 0.0, None))
            base = ci[None, :] + t[:, None] * ex[None, :]
            for sign in (1.0, -1.0):
                consider(base + sign * h[:, None] * orth[None, :], ok)
        # balance point where both signed violations coincide
        s = (d + ri - rj) / 2.0
        consider(ci[None, :] + s[:, None] * ex[None, :])

    for i, j, k in _TRIPLES:
        ci, cj, ck = centers[i], centers[j], centers[k]
        m00 = 2.0 * (cj[0] - ci[0])
        m01 = 2.0 * (cj[1] - ci[1])
        m10 = 2.0 * (ck[0] - ci[0])
        m11 = 2.0 * (ck[1] - ci[1])
        det = m00 * m11 - m01 * m10
        if abs(det) < 1e-14:
            continue
        ri, rj, rk = radii[i], radii[j], radii[k]
        u1 = float(cj @ cj - ci @ ci) + ri * ri - rj * rj
        u2 = float(ck @ ck - ci @ ci) + ri * ri - rk * rk
        v1 = 2.0 * (ri - rj)
        v2 = 2.0 * (ri - rk)
        g0 = np.stack([(m11 * u1 - m01 * u2) / det, (-m10 * u1 + m00 * u2) / det], axis=1)
        g1 = np.stack([(m11 * v1 - m01 * v2) / det, (-m10 * v1 + m00 * v2) / det], axis=1)
        w0 = g0 - ci[None, :]
        qa = (g1 * g1).sum(axis=1) - 1.0
        qb = 2.0 * ((w0 * g1).sum(axis=1) - ri)
        qc = (w0 * w0).sum(axis=1) - ri * ri
        with np.errstate(invalid="ignore", divide="ignore"):
            disc = qb * qb - 4.0 * qa * qc
            sq = np.sqrt(np.where(disc >= 0.0, disc, np.nan))
            linear = np.abs(qa) < 1e-14
            t_lin = np.where(np.abs(qb) > 1e-14, -qc / np.where(qb != 0.0, qb, 1.0), np.nan)
            for sign in (1.0, -1.0):
                t_quad = (-qb + sign * sq) / (2.0 * np.where(linear, 1.0, qa))
                t = np.where(linear, t_lin, t_quad)
                mask = np.isfinite(t)
                pts = g0 + np.where(mask, t, 0.0)[:, None] * g1
                consider(pts, mask)
    return best


def _refine_minimum(p: RelativePair, lo: float, hi: float) -> tuple[float, float]:
    """Golden-section refinement of the (convex) violation profile."""
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    c = hi - invphi * (hi - lo)
    d = lo + invphi * (hi - lo)
    fc = _best_violation(p, c)
    fd = _best_violation(p, d)
    for _ in range(120):
        if hi - lo < 1e-13:
            break
        if fc <= fd:
            hi, d, fd = d, c, fc
            c = hi - invphi * (hi - lo)
            fc = _best_violation(p, c)
        else:
            lo, c, fc = c, d, fd
            d = lo + invphi * (hi - lo)
            fd = _best_violation(p, d)
    return (c, fc) if fc <= fd else (d, fd)


def _bisect_edge(feasible, bad: float, good: float, tol: float = ENDPOINT_TOL) -> float:
    """Feasibility flips once between bad and good; locate the edge on the good side."""
    while abs(good - bad) > tol:
        mid = 0.5 * (bad + good)
        if feasible(mid):
            good = mid
        else:
            bad = mid
    return good


@dataclass(frozen=True)
class OracleResult:
    """Outcome of a gamma scan.

    ``margin`` is the minimum over gamma of the best max constraint
    violation: negative means feasible with that much slack, positive means
    infeasible by that much.  The certificate (gamma, point) and the refined
    feasible gamma interval are present when coexistent.
    """

    coexistent: bool
    margin: float
    gamma: float | None = None
    point: tuple[float, float] | None = None
    gamma_lo: float | None = None
    gamma_hi: float | None = None


def oracle_scan(p: RelativePair, grid: int = DEFAULT_GRID) -> OracleResult:
    """Scan gamma over [0, min(alpha, beta)] and decide feasibility.

    The grid scan locates the (interval-shaped) feasible gamma set; a
    golden-section refinement catches intervals thinner than the grid step.
    Endpoints are then sharpened by bisection on the exact per-gamma test.
    """
    if grid < 100:
        raise ValueError(f"grid must be at least 100, got {grid!r}")
    gmax = min(p.alpha, p.beta)
    if gmax <= 0.0:
        gammas = np.array([0.0])
    else:
        gammas = np.linspace(0.0, gmax, grid + 1)
    profile = _violation_profile(p, gammas)
    k = int(np.argmin(profile))
    margin = float(profile[k])
    g_best = float(gammas[k])
    if margin > MEMBERSHIP_SLACK and gammas.size > 1:
        lo = float(gammas[max(k - 1, 0)])
        hi = float(gammas[min(k + 1, gammas.size - 1)])
        g_ref, v_ref = _refine_minimum(p, lo, hi)
        if v_ref < margin:
            margin, g_best = float(v_ref), float(g_ref)
    if margin > MEMBERSHIP_SLACK:
        return OracleResult(False, margin)

    point = disks_feasible(disks_at(p, g_best))
    if point is None:
        # scalar and vector paths can disagree by roundoff right at the
        # slack edge; report infeasible with the near-zero margin
        return OracleResult(False, float(max(margin, _best_violation(p, g_best))))
    point = (float(point[0]), float(point[1]))
    if gammas.size == 1:
        return OracleResult(True, margin, g_best, point, g_best, g_best)

    def feasible(g: float) -> bool:
        return disks_feasible(disks_at(p, g)) is not None

    g_lo = 0.0 if feasible(0.0) else _bisect_edge(feasible, 0.0, g_best)
    g_hi = gmax if feasible(gmax) else _bisect_edge(feasible, gmax, g_best)
    return OracleResult(True, margin, g_best, point, float(g_lo), float(g_hi))


def oracle_coexistent(A: BlochEffect, B: BlochEffect, grid: int = DEFAULT_GRID) -> OracleResult:
    """Decide coexistence of two effects by brute-force disk feasibility."""
    pair, _ = relative_pair(A, B)
    return oracle_scan(pair, grid)


def random_effect(rng: np.random.Generator) -> BlochEffect:
    """Random valid effect: alpha uniform on (0, 1], Bloch length uniform on [0, alpha)."""
    alpha = 1.0 - rng.random()
    a = alpha * rng.random()
    v = rng.normal(size=3)
    v /= np.linalg.norm(v)
    return BlochEffect(alpha, a * v)


def random_effect_pair(rng: np.random.Generator) -> tuple[BlochEffect, BlochEffect]:
    """Two independent random effects; reproducible from the generator state."""
    return random_effect(rng), random_effect(rng)


@dataclass(frozen=True)
class SweepReport:
    """Aggregate of an oracle-vs-classification agreement sweep.

    Instances whose oracle margin is within ``band`` of zero are counted as
    ``boundary_band`` and excluded from the strict comparison.
    """

    n: int
    seed: int
    grid: int
    band: float
    compared: int
    boundary_band: int
    disagreements: int
    min_abs_margin: float
    examples: tuple = field(default=())


def oracle_agreement_sweep(
    n: int,
    seed: int,
    grid: int = DEFAULT_GRID,
    band: float = BOUNDARY_BAND,
) -> SweepReport:
    """Compare the oracle against the closed-form classification on random pairs."""
    if n < 1:
        raise ValueError(f"n must be at least 1, got {n!r}")
    rng = np.random.default_rng(seed)
    compared = 0
    boundary = 0
    disagreements = 0
    min_abs_margin = math.inf
    examples: list[tuple] = []
    for _ in range(n):
        A, B = random_effect_pair(rng)
        pair, _ = relative_pair(A, B)
        result = oracle_scan(pair, grid)
        verdict = classify(pair)
        if abs(result.margin) < band:
            boundary += 1
            continue
        compared += 1
        min_abs_margin = min(min_abs_margin, abs(result.margin))
        if result.coexistent != verdict.coexistent:
            disagreements += 1
            if len(examples) < 8:
                examples.append((pair, verdict.coexistent, result.coexistent, result.margin))
    return SweepReport(
        n=n,
        seed=seed,
        grid=grid,
        band=band,
        compared=compared,
        boundary_band=boundary,
        disagreements=disagreements,
        min_abs_margin=min_abs_margin,
        examples=tuple(examples),
    )
