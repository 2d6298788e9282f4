"""Univariate exponentiated modified Weibull extension (EMWE) distribution.

CDF::

    F(x) = [1 - exp(-lam * alpha * (exp((x/alpha)**beta) - 1))] ** gamma,   x >= 0

All evaluation goes through the log of the inner bracket, ``log G(x)``, so the
CDF is ``exp(gamma * log G)`` and the density is assembled in log space.
Functions accept scalars or arrays. Python floats take a pure-math path and
return a float; other scalars come back as numpy scalars.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .errors import DomainError, OverflowSignal

__all__ = [
    "EmweParams",
    "T_MAX",
    "log1mexp",
    "emwe_log_g",
    "emwe_logcdf",
    "emwe_cdf",
    "emwe_logsf",
    "emwe_survival",
    "emwe_logpdf",
    "emwe_pdf",
    "emwe_hazard",
    "emwe_quantile",
    "emwe_isf",
    "emwe_sample",
    "open_uniform",
]

# (x/alpha)**beta beyond this is treated as the far tail: cdf = 1, pdf = 0.
T_MAX = 700.0
# Below this, expm1(t) ~ t and log G is taken from its series to keep tiny x finite.
_T_SMALL = 1e-8
_LN2 = math.log(2.0)


@dataclass(frozen=True)
class EmweParams:
    """Shape exponent ``gamma``, scale ``alpha``, shape ``beta`` and rate ``lam``."""

    gamma: float
    alpha: float
    beta: float
    lam: float

    def __post_init__(self):
        for name in ("gamma", "alpha", "beta", "lam"):
            v = getattr(self, name)
            try:
                v = float(v)
            except (TypeError, ValueError):
                raise DomainError(f"{name} must be a real number, got {v!r}") from None
            if not math.isfinite(v) or v <= 0.0:
                raise DomainError(f"{name} must be finite and > 0, got {v!r}")
            object.__setattr__(self, name, v)

    def with_gamma(self, gamma: float) -> "EmweParams":
        return replace(self, gamma=gamma)


def log1mexp(a):
    """``log(1 - exp(-a))`` for ``a >= 0`` without cancellation."""
    a = np.asarray(a, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        return np.where(a < _LN2, np.log(-np.expm1(-a)), np.log1p(-np.exp(-a)))


def _out(a):
    return a[()] if isinstance(a, np.ndarray) and a.ndim == 0 else a


def _check_x(x, strict=False):
    x = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(x)):
        raise DomainError("x must be finite")
    if strict and np.any(x <= 0.0):
        raise DomainError("x must be > 0")
    if np.any(x < 0.0):
        raise DomainError("x must be >= 0")
    return x


def _terms(p: EmweParams, x):
    """Return ``t = (x/alpha)**beta``, ``H = lam*alpha*expm1(t)``, ``log G`` and the tail mask."""
    with np.errstate(divide="ignore"):
        # log x - log alpha: the quotient itself can underflow for subnormal x
        log_ratio = np.log(x) - math.log(p.alpha)
    t = np.exp(p.beta * log_ratio)
    tail = t > T_MAX
    ts = np.minimum(t, T_MAX)
    la = p.lam * p.alpha
    H = la * np.expm1(ts)
    small = ts < _T_SMALL
    with np.errstate(divide="ignore", invalid="ignore"):
        # log H = log(lam*alpha) + beta*log(x/alpha) + log(expm1(t)/t); log G = log H - H/2 + O(H^2)
        log_g_small = math.log(la) + p.beta * log_ratio + 0.5 * ts - 0.5 * H
    log_g = np.where(small, log_g_small, log1mexp(H))
    log_g = np.where(tail, 0.0, log_g)
    return t, H, log_g, tail


# Scalar fast path (quadrature and other per-point callers). Mirrors _terms.


def _is_scalar(x) -> bool:
    return isinstance(x, (float, int)) and not isinstance(x, bool)


def _scalar_x(x, strict=False) -> float:
    x = float(x)
    if not math.isfinite(x):
        raise DomainError("x must be finite")
    if strict and x <= 0.0:
        raise DomainError("x must be > 0")
    if x < 0.0:
        raise DomainError("x must be >= 0")
    return x


def _scalar_log_g(p: EmweParams, x: float, log_ratio: float, t: float) -> float:
    if x == 0.0:
        return -math.inf
    if t > T_MAX:
        return 0.0
    la = p.lam * p.alpha
    H = la * math.expm1(t)
    if t < _T_SMALL:
        return math.log(la) + p.beta * log_ratio + 0.5 * t - 0.5 * H
    return math.log(-math.expm1(-H)) if H < _LN2 else math.log1p(-math.exp(-H))


def _scalar_logpdf(p: EmweParams, x: float) -> float:
    log_ratio = math.log(x) - math.log(p.alpha)
    t = math.exp(p.beta * log_ratio)
    if t > T_MAX:
        return -math.inf
    H = p.lam * p.alpha * math.expm1(t)
    return (
        math.log(p.gamma * p.lam * p.beta)
        + t
        + (p.beta - 1.0) * log_ratio
        - H
        + (p.gamma - 1.0) * _scalar_log_g(p, x, log_ratio, t)
    )


def _scalar_logcdf(p: EmweParams, x: float) -> float:
    if x == 0.0:
        return -math.inf
    log_ratio = math.log(x) - math.log(p.alpha)
    return p.gamma * _scalar_log_g(p, x, log_ratio, math.exp(p.beta * log_ratio))


def emwe_log_g(p: EmweParams, x):
    """``log(1 - exp(-lam*alpha*(exp((x/alpha)**beta) - 1)))``; ``-inf`` at 0."""
    x = _check_x(x)
    return _out(_terms(p, x)[2])


def emwe_logcdf(p: EmweParams, x):
    if _is_scalar(x):
        return _scalar_logcdf(p, _scalar_x(x))
    x = _check_x(x)
    log_g = _terms(p, x)[2]
    with np.errstate(invalid="ignore"):
        return _out(p.gamma * log_g)


def emwe_cdf(p: EmweParams, x):
    """CDF of EMWE(p) at ``x >= 0``. Raises :class:`DomainError` on negative or non-finite x."""
    if _is_scalar(x):
        return math.exp(_scalar_logcdf(p, _scalar_x(x)))
    return _out(np.exp(np.asarray(emwe_logcdf(p, x))))


def emwe_logsf(p: EmweParams, x):
    logcdf = np.asarray(emwe_logcdf(p, x))
    return _out(log1mexp(-logcdf))


def emwe_survival(p: EmweParams, x):
    logcdf = np.asarray(emwe_logcdf(p, x))
    return _out(-np.expm1(logcdf))


def emwe_logpdf(p: EmweParams, x):
    """Log density for ``x > 0``."""
    if _is_scalar(x):
        return _scalar_logpdf(p, _scalar_x(x, strict=True))
    x = _check_x(x, strict=True)
    t, H, log_g, tail = _terms(p, x)
    val = (
        math.log(p.gamma * p.lam * p.beta)
        + t
        + (p.beta - 1.0) * (np.log(x) - math.log(p.alpha))
        - H
        + (p.gamma - 1.0) * log_g
    )
    return _out(np.where(tail, -np.inf, val))


def emwe_pdf(p: EmweParams, x):
    """Density of EMWE(p).

    Near the origin the density behaves like
    ``gamma*lam*beta*(lam*alpha)**(gamma-1) * (x/alpha)**(beta*gamma - 1)``, so the
    value at ``x = 0`` is taken as that limit: 0 when ``beta*gamma > 1``, the finite
    constant when ``beta*gamma == 1``, and a :class:`DomainError` (divergence) when
    ``beta*gamma < 1``.
    """
    if _is_scalar(x) and x != 0:
        return math.exp(_scalar_logpdf(p, _scalar_x(x, strict=True)))
    x = _check_x(x)
    zero = x == 0.0
    if not np.any(zero):
        return _out(np.exp(np.asarray(emwe_logpdf(p, x))))
    bg = p.beta * p.gamma
    if bg < 1.0:
        raise DomainError(
            f"density diverges at x = 0 for beta*gamma = {bg:g} < 1"
        )
    limit = (
        p.gamma * p.lam * p.beta * (p.lam * p.alpha) ** (p.gamma - 1.0) if bg == 1.0 else 0.0
    )
    out = np.full(x.shape, limit)
    if np.any(~zero):
        out[~zero] = np.exp(np.asarray(emwe_logpdf(p, x[~zero])))
    return _out(out)


def emwe_hazard(p: EmweParams, x):
    """``pdf / survival``; raises :class:`OverflowSignal` where survival is numerically 0."""
    x = _check_x(x, strict=True)
    logsf = np.asarray(emwe_logsf(p, x))
    if np.any(np.isneginf(logsf)):
        raise OverflowSignal("survival is numerically zero; hazard overflows")
    return _out(np.exp(np.asarray(emwe_logpdf(p, x)) - logsf))


def _x_from_log_g(p: EmweParams, log_g):
    # invert G: H = -log(1 - G), t = log1p(H/(lam*alpha)), x = alpha * t**(1/beta)
    H = -log1mexp(-log_g)
    t = np.log1p(H / (p.lam * p.alpha))
    return p.alpha * t ** (1.0 / p.beta)


def _check_prob(u, name):
    u = np.asarray(u, dtype=float)
    if not np.all((u > 0.0) & (u < 1.0)):
        raise DomainError(f"{name} must lie strictly inside (0, 1)")
    return u


def emwe_quantile(p: EmweParams, u):
    """Inverse CDF, in closed form.

    ``x = alpha * log(1 - log(1 - u**(1/gamma)) / (lam*alpha)) ** (1/beta)``, with
    ``u**(1/gamma)`` formed as ``exp(log(u)/gamma)``.
    """
    u = _check_prob(u, "u")
    return _out(_x_from_log_g(p, np.log(u) / p.gamma))


def emwe_isf(p: EmweParams, s):
    """Inverse survival function; accurate for survival probabilities near 0."""
    s = _check_prob(s, "s")
    return _out(_x_from_log_g(p, np.log1p(-s) / p.gamma))


def open_uniform(rng: np.random.Generator, n: int) -> np.ndarray:
    """``n`` uniforms on the open interval (0, 1) at 53-bit resolution."""
    return (rng.integers(0, 2**53, size=n, dtype=np.int64) + 0.5) / 2.0**53


def emwe_sample(p: EmweParams, rng: np.random.Generator, n: int) -> np.ndarray:
    """Draw ``n`` i.i.d. EMWE variates by inverse transform."""
    if n < 0:
        raise DomainError("n must be >= 0")
    if n == 0:
        return np.empty(0)
    return np.asarray(emwe_quantile(p, open_uniform(rng, n)), dtype=float).reshape(n)
