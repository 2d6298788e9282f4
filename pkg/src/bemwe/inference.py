"""Maximum likelihood for (gamma1, gamma2, gamma3) with alpha, beta, lam held fixed.

Write ``G(x) = 1 - exp(-lam*alpha*(exp((x/alpha)**beta) - 1))``. Splitting the
sample into I1 (x1 < x2), I2 (x2 < x1) and I3 (ties), the log-likelihood is

    L = n1 log g2 + n1 log(g1+g3) + n2 log g1 + n2 log(g2+g3) + n3 log g3
        + (g1+g3) A1 + g2 A2 + g1 B1 + (g2+g3) B2 + (g1+g2+g3) C + K

with ``A1 = sum_I1 log G(x1)``, ``A2 = sum_I1 log G(x2)``, ``B1 = sum_I2 log G(x1)``,
``B2 = sum_I2 log G(x2)``, ``C = sum_I3 log G(x)`` and ``K`` collecting every term
free of the gammas. ``L`` is linear in the gammas apart from the log terms, so the
Hessian depends only on the counts.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.special import ndtri

from .bivariate import BivariateSample, Region, classify
from .emwe import EmweParams, emwe_log_g, emwe_logpdf
from .errors import ConvergenceError, DataError, DomainError

__all__ = [
    "FixedShape",
    "RegionPartition",
    "FitReport",
    "partition_sample",
    "log_likelihood",
    "score",
    "observed_information",
    "normal_quantile",
    "fit_mle",
]


@dataclass(frozen=True)
class FixedShape:
    alpha: float = 0.1
    beta: float = 0.3
    lam: float = 0.05

    def __post_init__(self):
        for name in ("alpha", "beta", "lam"):
            v = float(getattr(self, name))
            if not math.isfinite(v) or v <= 0:
                raise DomainError(f"{name} must be finite and > 0, got {v!r}")
            object.__setattr__(self, name, v)

    def emwe(self, gamma: float = 1.0) -> EmweParams:
        return EmweParams(gamma, self.alpha, self.beta, self.lam)


@dataclass(frozen=True)
class RegionPartition:
    idx1: np.ndarray
    idx2: np.ndarray
    idx3: np.ndarray
    A1: float
    A2: float
    B1: float
    B2: float
    C: float
    const: float
    fixed: FixedShape

    @property
    def n1(self) -> int:
        return int(self.idx1.size)

    @property
    def n2(self) -> int:
        return int(self.idx2.size)

    @property
    def n3(self) -> int:
        return int(self.idx3.size)

    @property
    def n(self) -> int:
        return self.n1 + self.n2 + self.n3

    @property
    def counts(self) -> tuple[int, int, int]:
        return (self.n1, self.n2, self.n3)


def _log_mwe_density(fixed: FixedShape, x: np.ndarray) -> np.ndarray:
    # gamma = 1 log density: the gamma-free part of every factor
    if x.size == 0:
        return x
    return np.asarray(emwe_logpdf(fixed.emwe(1.0), x), dtype=float)


def partition_sample(
    sample: BivariateSample, fixed: FixedShape = FixedShape(), tie_tol: float | None = None
) -> RegionPartition:
    """Split a sample into the three regions and precompute the sufficient sums.

    ``tie_tol`` defaults to the sample's own tolerance. A zero coordinate makes
    ``log G`` infinite and raises :class:`DataError` naming the row.
    """
    tol = sample.tie_tol if tie_tol is None else float(tie_tol)
    if tol < 0:
        raise DomainError("tie_tol must be >= 0")
    x1, x2 = sample.x1, sample.x2
    bad = np.flatnonzero((x1 <= 0) | (x2 <= 0))
    if bad.size:
        i = int(bad[0])
        raise DataError(f"row {i}: zero observation ({x1[i]!r}, {x2[i]!r}) has log-likelihood -inf")
    region = classify(x1, x2, tol)
    idx1 = np.flatnonzero(region == Region.X1_LESS)
    idx2 = np.flatnonzero(region == Region.X2_LESS)
    idx3 = np.flatnonzero(region == Region.DIAGONAL)
    p = fixed.emwe()

    def lg(x):
        return np.asarray(emwe_log_g(p, x), dtype=float)

    off = np.concatenate([idx1, idx2])
    const = (
        float(_log_mwe_density(fixed, x1[off]).sum() + _log_mwe_density(fixed, x2[off]).sum())
        + float(_log_mwe_density(fixed, x1[idx3]).sum())
        # the "-1" in each (shape - 1) * log G exponent
        - float(lg(x1[off]).sum() + lg(x2[off]).sum() + lg(x1[idx3]).sum())
    )
    sums = dict(
        A1=float(lg(x1[idx1]).sum()),
        A2=float(lg(x2[idx1]).sum()),
        B1=float(lg(x1[idx2]).sum()),
        B2=float(lg(x2[idx2]).sum()),
        C=float(lg(x1[idx3]).sum()),
    )
    if not all(math.isfinite(v) for v in sums.values()) or not math.isfinite(const):
        raise DataError("log-likelihood terms are not finite for this sample and fixed shape")
    return RegionPartition(idx1, idx2, idx3, const=const, fixed=fixed, **sums)


def _gammas(g) -> tuple[float, float, float]:
    g1, g2, g3 = (float(v) for v in g)
    if not (g1 > 0 and g2 > 0 and g3 > 0):
        raise DomainError(f"gammas must all be > 0, got {(g1, g2, g3)!r}")
    return g1, g2, g3


def _check_fixed(part: RegionPartition, fixed: FixedShape | None):
    if fixed is not None and fixed != part.fixed:
        raise ValueError("partition was built with a different fixed shape")


def log_likelihood(part: RegionPartition, g, fixed: FixedShape | None = None) -> float:
    """Full log-likelihood, including the gamma-free constant."""
    _check_fixed(part, fixed)
    g1, g2, g3 = _gammas(g)
    n1, n2, n3 = part.counts
    return (
        n1 * (math.log(g2) + math.log(g1 + g3))
        + n2 * (math.log(g1) + math.log(g2 + g3))
        + n3 * math.log(g3)
        + (g1 + g3) * part.A1
        + g2 * part.A2
        + g1 * part.B1
        + (g2 + g3) * part.B2
        + (g1 + g2 + g3) * part.C
        + part.const
    )


def score(part: RegionPartition, g, fixed: FixedShape | None = None) -> np.ndarray:
    _check_fixed(part, fixed)
    g1, g2, g3 = _gammas(g)
    n1, n2, n3 = part.counts
    return np.array(
        [
            n1 / (g1 + g3) + n2 / g1 + part.A1 + part.B1 + part.C,
            n1 / g2 + n2 / (g2 + g3) + part.A2 + part.B2 + part.C,
            n1 / (g1 + g3) + n2 / (g2 + g3) + n3 / g3 + part.A1 + part.B2 + part.C,
        ]
    )


def observed_information(part: RegionPartition, g) -> np.ndarray:
    """Negative Hessian of the log-likelihood (3x3, symmetric)."""
    g1, g2, g3 = _gammas(g)
    n1, n2, n3 = part.counts
    a = n1 / (g1 + g3) ** 2
    b = n2 / (g2 + g3) ** 2
    return np.array(
        [
            [a + n2 / g1**2, 0.0, a],
            [0.0, n1 / g2**2 + b, b],
            [a, b, a + b + n3 / g3**2],
        ]
    )


def normal_quantile(q: float) -> float:
    return float(ndtri(q))


@dataclass
class FitReport:
    estimates: tuple[float, float, float]
    loglik: float
    covariance: np.ndarray
    conf_intervals: tuple[tuple[float, float], ...]
    confidence: float
    iterations: int
    converged: bool
    fixed: FixedShape
    score: np.ndarray = None
    diagnostics: dict = field(default_factory=dict)

    @property
    def std_errors(self) -> np.ndarray:
        return np.sqrt(np.diag(self.covariance))


def wald_intervals(est, cov, confidence: float):
    """Symmetric normal intervals; returns (clamped, unclamped)."""
    z = normal_quantile(0.5 + confidence / 2.0) if confidence > 0 else 0.0
    se = np.sqrt(np.maximum(np.diag(cov), 0.0))
    raw = [(float(e - z * s), float(e + z * s)) for e, s in zip(est, se)]
    clamped = tuple((max(lo, 0.0), hi) for lo, hi in raw)
    return clamped, raw


def fit_mle(
    part: RegionPartition,
    init=(1.0, 1.0, 1.0),
    tol: float = 1e-8,
    max_iter: int = 100,
    confidence: float = 0.95,
) -> FitReport:
    """Newton-Raphson on the score with the analytic Hessian.

    A step that leaves the positive orthant or lowers the likelihood is halved
    (up to 60 times). Converged when ``max|score| < tol``. A component driven
    below ``1e-10`` with a negative score is held fixed there and Newton goes
    on over the rest. The report then has ``converged=False`` and
    ``diagnostics["boundary"]`` listing the held components, rather than raising.
    """
    if not (0.0 <= confidence < 1.0):
        raise DomainError("confidence must lie in [0, 1)")
    if part.n == 0:
        raise DataError("cannot fit an empty sample")
    g = np.array(_gammas(init))
    iterates = [g.copy()]
    ll = log_likelihood(part, g)
    converged = False
    pinned: list[int] = []
    for _ in range(max_iter):
        s = score(part, g)
        free = [k for k in range(3) if k not in pinned]
        if np.max(np.abs(s[free])) < tol:
            converged = not pinned
            break
        info = observed_information(part, g)[np.ix_(free, free)]
        try:
            sub = np.linalg.solve(info, s[free])
        except np.linalg.LinAlgError:
            sub = None
        if sub is None or not np.all(np.isfinite(sub)) or np.linalg.cond(info) > 1e14:
            raise ConvergenceError(
                f"singular observed information after {len(iterates) - 1} steps; "
                f"counts={part.counts}",
                iterates,
            )
        step = np.zeros(3)
        step[free] = sub
        t = 1.0
        for _ in range(60):
            cand = g + t * step
            if np.all(cand > 0) and log_likelihood(part, cand) >= ll - 1e-12 * abs(ll):
                break
            t *= 0.5
        else:
            break  # line search failed; report as not converged
        g = cand
        ll = log_likelihood(part, g)
        iterates.append(g.copy())
        s = score(part, g)
        # a component driven to 0 with the likelihood still rising towards 0 is held there
        pinned += [k for k in free if g[k] < 1e-10 and s[k] < 0]

    s = score(part, g)
    it = len(iterates) - 1
    info = observed_information(part, g)
    try:
        cov = np.linalg.inv(info)
    except np.linalg.LinAlgError:
        raise ConvergenceError("observed information is singular at the final iterate", iterates) from None
    cov = 0.5 * (cov + cov.T)
    cis, raw = wald_intervals(g, cov, confidence)
    diagnostics = {"unclamped_intervals": raw, "max_abs_score": float(np.max(np.abs(s)))}
    if pinned:
        diagnostics["boundary"] = sorted(pinned)
    return FitReport(
        estimates=tuple(float(v) for v in g),
        loglik=float(ll),
        covariance=cov,
        conf_intervals=cis,
        confidence=confidence,
        iterations=it,
        converged=converged,
        fixed=part.fixed,
        score=s,
        diagnostics=diagnostics,
    )
