"""Bivariate EMWE (BEMWE) distribution of Marshall-Olkin type.

With independent ``U_k ~ EMWE(gamma_k, alpha, beta, lam)``, ``k = 1, 2, 3``, the
pair is ``X1 = max(U1, U3)``, ``X2 = max(U2, U3)``. The shared shock ``U3`` puts
probability ``gamma3 / (gamma1 + gamma2 + gamma3)`` on the diagonal ``X1 == X2``,
so the joint law has an absolutely continuous part off the diagonal and a
singular part along it.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Iterator, NamedTuple

import numpy as np

from .emwe import (
    EmweParams,
    emwe_cdf,
    emwe_logcdf,
    emwe_logpdf,
    emwe_pdf,
    emwe_sample,
)
from .errors import ConditioningError, DomainError, OverflowSignal

__all__ = [
    "BemweParams",
    "BivariatePair",
    "BivariateSample",
    "Region",
    "DensityKind",
    "DensityValue",
    "classify",
    "joint_cdf",
    "joint_logpdf",
    "joint_pdf",
    "marginal_cdf",
    "marginal_pdf",
    "conditional_pdf",
    "joint_survival",
    "bivariate_hazard",
    "max_cdf",
    "min_cdf",
    "bemwe_sample",
]


@dataclass(frozen=True)
class BemweParams:
    """(gamma1, gamma2, gamma3) shock shapes with shared alpha, beta, lam."""

    gamma1: float
    gamma2: float
    gamma3: float
    alpha: float
    beta: float
    lam: float

    def __post_init__(self):
        for name in ("gamma1", "gamma2", "gamma3", "alpha", "beta", "lam"):
            v = getattr(self, name)
            try:
                v = float(v)
            except (TypeError, ValueError):
                raise DomainError(f"{name} must be a real number, got {v!r}") from None
            if not math.isfinite(v) or v <= 0.0:
                raise DomainError(f"{name} must be finite and > 0, got {v!r}")
            object.__setattr__(self, name, v)
        # component and composed EMWE laws, built once
        comps = {
            g: EmweParams(g, self.alpha, self.beta, self.lam)
            for g in (self.gamma1, self.gamma2, self.gamma3,
                      self.gamma13, self.gamma23, self.gamma_sum)
        }
        object.__setattr__(self, "_emwe_cache", comps)

    @property
    def gamma13(self) -> float:
        return self.gamma1 + self.gamma3

    @property
    def gamma23(self) -> float:
        return self.gamma2 + self.gamma3

    @property
    def gamma_sum(self) -> float:
        return self.gamma1 + self.gamma2 + self.gamma3

    @property
    def gammas(self) -> tuple[float, float, float]:
        return (self.gamma1, self.gamma2, self.gamma3)

    def emwe(self, gamma: float) -> EmweParams:
        """EMWE parameters with the shared (alpha, beta, lam) and the given shape."""
        cached = self._emwe_cache.get(gamma)
        return cached if cached is not None else EmweParams(gamma, self.alpha, self.beta, self.lam)

    def marginal(self, which: int) -> EmweParams:
        if which == 1:
            return self.emwe(self.gamma13)
        if which == 2:
            return self.emwe(self.gamma23)
        raise ValueError(f"which must be 1 or 2, got {which!r}")

    @classmethod
    def from_sequence(cls, values) -> "BemweParams":
        return cls(*values)


class BivariatePair(NamedTuple):
    x1: float
    x2: float


@dataclass(frozen=True)
class BivariateSample:
    """A collection of pairs stored column-wise, with the tie tolerance used to classify them."""

    x1: np.ndarray
    x2: np.ndarray
    tie_tol: float = 0.0

    def __post_init__(self):
        x1 = np.asarray(self.x1, dtype=float).reshape(-1)
        x2 = np.asarray(self.x2, dtype=float).reshape(-1)
        if x1.shape != x2.shape:
            raise DomainError("x1 and x2 must have the same length")
        if not (np.all(np.isfinite(x1)) and np.all(np.isfinite(x2))):
            raise DomainError("sample values must be finite")
        if np.any(x1 < 0) or np.any(x2 < 0):
            raise DomainError("sample values must be >= 0")
        if not (self.tie_tol >= 0):
            raise DomainError("tie_tol must be >= 0")
        object.__setattr__(self, "x1", x1)
        object.__setattr__(self, "x2", x2)

    @classmethod
    def from_pairs(cls, pairs, tie_tol: float = 0.0) -> "BivariateSample":
        arr = np.asarray(pairs, dtype=float).reshape(-1, 2)
        return cls(arr[:, 0], arr[:, 1], tie_tol)

    def __len__(self) -> int:
        return self.x1.size

    def __iter__(self) -> Iterator[BivariatePair]:
        for a, b in zip(self.x1, self.x2):
            yield BivariatePair(float(a), float(b))

    def as_array(self) -> np.ndarray:
        return np.column_stack([self.x1, self.x2])

    def regions(self) -> np.ndarray:
        return classify(self.x1, self.x2, self.tie_tol)

    def swapped(self) -> "BivariateSample":
        return BivariateSample(self.x2, self.x1, self.tie_tol)

    def scaled(self, factor: float) -> "BivariateSample":
        return BivariateSample(self.x1 * factor, self.x2 * factor, self.tie_tol)


class Region(enum.IntEnum):
    X1_LESS = 1
    X2_LESS = 2
    DIAGONAL = 3


class DensityKind(str, enum.Enum):
    DENSITY_2D = "density_2d"
    DENSITY_1D_SINGULAR = "density_1d_singular"


@dataclass(frozen=True)
class DensityValue:
    """A density tagged with the measure it is taken against.

    ``DIAGONAL`` values are densities along the line ``x1 == x2`` (1-D Lebesgue
    measure) and must not be added to the 2-D densities of the other regions.
    """

    region: Region
    value: float
    kind: DensityKind = field(default=None)

    def __post_init__(self):
        expected = (
            DensityKind.DENSITY_1D_SINGULAR
            if self.region == Region.DIAGONAL
            else DensityKind.DENSITY_2D
        )
        if self.kind is None:
            object.__setattr__(self, "kind", expected)
        elif DensityKind(self.kind) != expected:
            raise ValueError(f"region {self.region.name} requires kind {expected.value}")


def classify(x1, x2, tie_tol: float = 0.0):
    """Region code per pair: X1_LESS if x1 < x2 - tol, X2_LESS if x2 < x1 - tol, else DIAGONAL."""
    x1 = np.asarray(x1, dtype=float)
    x2 = np.asarray(x2, dtype=float)
    out = np.full(np.broadcast(x1, x2).shape, int(Region.DIAGONAL))
    out = np.where(x1 < x2 - tie_tol, int(Region.X1_LESS), out)
    out = np.where(x2 < x1 - tie_tol, int(Region.X2_LESS), out)
    return out


def _nonneg(*xs):
    for x in xs:
        x = np.asarray(x, dtype=float)
        if not np.all(np.isfinite(x)) or np.any(x < 0):
            raise DomainError("coordinates must be finite and >= 0")


def joint_cdf(p: BemweParams, x1, x2):
    """``P(X1 <= x1, X2 <= x2) = F(x1; g1) F(x2; g2) F(min(x1, x2); g3)``."""
    _nonneg(x1, x2)
    z = np.minimum(x1, x2)
    with np.errstate(invalid="ignore"):
        logf = (
            np.asarray(emwe_logcdf(p.emwe(p.gamma1), x1))
            + np.asarray(emwe_logcdf(p.emwe(p.gamma2), x2))
            + np.asarray(emwe_logcdf(p.emwe(p.gamma3), z))
        )
    out = np.exp(logf)
    return out[()] if out.ndim == 0 else out


def joint_logpdf(p: BemweParams, x1, x2, tie_tol: float = 0.0):
    """Vectorised log of the region-dispatched joint density.

    Returns ``(logvalue, region)``; arrays for array input, a ``(float, Region)``
    pair when both coordinates are Python floats. Diagonal entries are log
    densities with respect to 1-D measure on the diagonal.
    """
    if isinstance(x1, float) and isinstance(x2, float):
        return _scalar_joint_logpdf(p, x1, x2, tie_tol)
    x1 = np.asarray(x1, dtype=float)
    x2 = np.asarray(x2, dtype=float)
    if not (np.all(np.isfinite(x1)) and np.all(np.isfinite(x2))):
        raise DomainError("coordinates must be finite")
    if np.any(x1 <= 0) or np.any(x2 <= 0):
        raise DomainError("joint density needs x1, x2 > 0")
    x1, x2 = np.broadcast_arrays(x1, x2)
    region = classify(x1, x2, tie_tol)
    out = np.empty(x1.shape)
    m = region == Region.X1_LESS
    if np.any(m):
        out[m] = emwe_logpdf(p.emwe(p.gamma2), x2[m]) + emwe_logpdf(p.emwe(p.gamma13), x1[m])
    m = region == Region.X2_LESS
    if np.any(m):
        out[m] = emwe_logpdf(p.emwe(p.gamma1), x1[m]) + emwe_logpdf(p.emwe(p.gamma23), x2[m])
    m = region == Region.DIAGONAL
    if np.any(m):
        # within tolerance the pair is a tie; evaluate on the diagonal at x1
        out[m] = math.log(p.gamma3 / p.gamma_sum) + emwe_logpdf(p.emwe(p.gamma_sum), x1[m])
    return out, region


def _scalar_joint_logpdf(p, x1, x2, tie_tol):
    if not (x1 > 0 and x2 > 0 and math.isfinite(x1) and math.isfinite(x2)):
        raise DomainError("joint density needs finite x1, x2 > 0")
    if x1 < x2 - tie_tol:
        return emwe_logpdf(p.emwe(p.gamma2), x2) + emwe_logpdf(p.emwe(p.gamma13), x1), Region.X1_LESS
    if x2 < x1 - tie_tol:
        return emwe_logpdf(p.emwe(p.gamma1), x1) + emwe_logpdf(p.emwe(p.gamma23), x2), Region.X2_LESS
    return (
        math.log(p.gamma3 / p.gamma_sum) + emwe_logpdf(p.emwe(p.gamma_sum), x1),
        Region.DIAGONAL,
    )


def joint_pdf(p: BemweParams, x1: float, x2: float, tie_tol: float = 0.0) -> DensityValue:
    """Joint density at one point, tagged with its region.

    ``x1 < x2``: ``f(x2; g2) * f(x1; g1 + g3)``;
    ``x2 < x1``: ``f(x1; g1) * f(x2; g2 + g3)``;
    tie: ``g3 / (g1 + g2 + g3) * f(x; g1 + g2 + g3)`` on the diagonal.
    """
    x1 = float(x1)
    x2 = float(x2)
    if not (x1 > 0 and x2 > 0 and math.isfinite(x1) and math.isfinite(x2)):
        raise DomainError("joint density needs finite x1, x2 > 0")
    if x1 < x2 - tie_tol:
        return DensityValue(
            Region.X1_LESS,
            float(emwe_pdf(p.emwe(p.gamma2), x2) * emwe_pdf(p.emwe(p.gamma13), x1)),
        )
    if x2 < x1 - tie_tol:
        return DensityValue(
            Region.X2_LESS,
            float(emwe_pdf(p.emwe(p.gamma1), x1) * emwe_pdf(p.emwe(p.gamma23), x2)),
        )
    return DensityValue(
        Region.DIAGONAL,
        float(p.gamma3 / p.gamma_sum * emwe_pdf(p.emwe(p.gamma_sum), x1)),
    )


def marginal_cdf(p: BemweParams, which: int, x):
    return emwe_cdf(p.marginal(which), x)


def marginal_pdf(p: BemweParams, which: int, x):
    return emwe_pdf(p.marginal(which), x)


def conditional_pdf(
    p: BemweParams, i: int, xi: float, xj: float, tie_tol: float = 0.0
) -> DensityValue:
    """Conditional density of ``X_i`` given ``X_j = xj`` as ``joint / marginal_j``.

    Off the diagonal the value is a density in ``xi``. On the diagonal it is the
    probability of the atom ``X_i = xj`` under the conditional law (the diagonal
    density divided by the marginal density of ``X_j``).
    """
    if i not in (1, 2):
        raise ValueError(f"i must be 1 or 2, got {i!r}")
    j = 3 - i
    x1, x2 = (xi, xj) if i == 1 else (xj, xi)
    joint = joint_pdf(p, x1, x2, tie_tol)
    denom = float(marginal_pdf(p, j, xj))
    if not denom > 0.0:
        raise ConditioningError(f"marginal density of X{j} is numerically 0 at {xj!r}")
    return DensityValue(joint.region, joint.value / denom, joint.kind)


def joint_survival(p: BemweParams, x1, x2):
    """``P(X1 > x1, X2 > x2) = 1 - F1(x1) - F2(x2) + F(x1, x2)``."""
    _nonneg(x1, x2)
    s = 1.0 - marginal_cdf(p, 1, x1) - marginal_cdf(p, 2, x2) + joint_cdf(p, x1, x2)
    s = np.clip(s, 0.0, 1.0)
    return s[()] if isinstance(s, np.ndarray) and s.ndim == 0 else s


def bivariate_hazard(p: BemweParams, x1: float, x2: float, tie_tol: float = 0.0) -> float:
    """Bivariate failure rate ``f(x1, x2) / S(x1, x2)`` with the region-aware numerator."""
    s = float(joint_survival(p, x1, x2))
    if s <= 0.0:
        raise OverflowSignal(f"joint survival is numerically zero at ({x1!r}, {x2!r})")
    return joint_pdf(p, x1, x2, tie_tol).value / s


def max_cdf(p: BemweParams, y):
    """CDF of ``max(X1, X2)``, i.e. ``F(y, y)``; this is EMWE with shape g1 + g2 + g3."""
    return joint_cdf(p, y, y)


def min_cdf(p: BemweParams, w):
    """CDF of ``min(X1, X2)``: ``F1(w) + F2(w) - F(w, w)``."""
    return marginal_cdf(p, 1, w) + marginal_cdf(p, 2, w) - joint_cdf(p, w, w)


def bemwe_sample(
    p: BemweParams, rng: np.random.Generator, n: int, tie_tol: float = 0.0
) -> BivariateSample:
    """Shock-model sampler. Ties come out bit-identical whenever ``U3`` dominates."""
    if n < 0:
        raise DomainError("n must be >= 0")
    u1 = emwe_sample(p.emwe(p.gamma1), rng, n)
    u2 = emwe_sample(p.emwe(p.gamma2), rng, n)
    u3 = emwe_sample(p.emwe(p.gamma3), rng, n)
    return BivariateSample(np.maximum(u1, u3), np.maximum(u2, u3), tie_tol)
