"""Acceptance checks. Each test prints one ``PASS``/``FAIL`` line and then asserts.

Run on its own with ``pytest tests/test_acceptance.py -v``; the verdict lines
are written straight to the terminal, past pytest's output capture.
"""
import math
import time

import numpy as np
import pytest
from scipy import integrate, stats

from bemwe.bivariate import (
    BemweParams,
    bemwe_sample,
    joint_cdf,
    joint_logpdf,
    joint_survival,
    marginal_cdf,
    max_cdf,
    min_cdf,
)
from bemwe.data import load_nfl
from bemwe.emwe import EmweParams, emwe_cdf, emwe_quantile
from bemwe.inference import (
    FixedShape,
    fit_mle,
    log_likelihood,
    observed_information,
    partition_sample,
    score,
)
from bemwe.moments import MomentRequest, marginal_moment

from oracles import bivariate_mass, grid_search_mle, log_range, ref_joint_survival, vector_loglik
from reference_values import (
    NFL_COUNTS,
    NFL_FIXED,
    NFL_REPORTED_CIS,
    NFL_REPORTED_COV_DIAG,
    NFL_REPORTED_GAMMAS,
    NFL_REPORTED_LOGLIK,
)

FIT_SHAPES = (0.041613, 0.253029, 0.520107)
SETS = [
    (*FIT_SHAPES, 0.1, 0.3, 0.05),
    (1.0, 1.0, 1.0, 1.0, 1.0, 1.0),
    (2.0, 0.5, 1.5, 1.0, 2.0, 0.5),
    (0.5, 3.0, 0.2, 2.0, 0.8, 0.1),
    (4.0, 4.0, 4.0, 0.5, 1.5, 2.0),
]


@pytest.fixture
def verdict(capsys):
    def report(label, ok, detail):
        with capsys.disabled():
            print(f"\n{'PASS' if ok else 'FAIL'}  {label}: {detail}")
        assert ok, f"{label}: {detail}"
    return report


def _golden_fit_check(scale):
    t = time.perf_counter()
    part = partition_sample(load_nfl(scale).sample(), NFL_FIXED)
    fit = fit_mle(part, confidence=0.95)
    elapsed = time.perf_counter() - t
    problems = []
    for k, (e, r) in enumerate(zip(fit.estimates, NFL_REPORTED_GAMMAS), start=1):
        if abs(e - r) > 0.005:
            problems.append(f"gamma{k}={e:.5g} vs {r}")
    if abs(fit.loglik - NFL_REPORTED_LOGLIK) > 0.5:
        problems.append(f"loglik={fit.loglik:.5g} vs {NFL_REPORTED_LOGLIK}")
    for k, (v, r) in enumerate(zip(np.diag(fit.covariance), NFL_REPORTED_COV_DIAG), start=1):
        if abs(v - r) > 0.05 * r:
            problems.append(f"var{k}={v:.3g} vs {r}")
    for k, ((lo, hi), (rlo, rhi)) in enumerate(zip(fit.conf_intervals, NFL_REPORTED_CIS), start=1):
        if abs(lo - rlo) > 0.005 or abs(hi - rhi) > 0.005:
            problems.append(f"CI{k}=({lo:.4g}, {hi:.4g}) vs ({rlo}, {rhi})")
    if elapsed >= 1.0:
        problems.append(f"runtime {elapsed:.2f}s")
    estimates = ", ".join(f"{v:.5g}" for v in fit.estimates)
    summary = f"gamma=({estimates}) loglik={fit.loglik:.5g} in {elapsed * 1e3:.1f} ms"
    return not problems, summary + ("; " + "; ".join(problems) if problems else "")


def test_c01_golden_reproduction_scale_100(verdict):
    ok, detail = _golden_fit_check(100.0)
    verdict("C1 golden NFL fit at scale 100", ok, detail)


def test_c01_golden_reproduction_unscaled_table(verdict):
    # companion: the same tolerances on the table values as printed
    ok, detail = _golden_fit_check(1.0)
    verdict("C1 companion, NFL fit at scale 1", ok, detail)


def test_c02_partition_counts(verdict):
    part = partition_sample(load_nfl(100.0).sample(), NFL_FIXED)
    ok = part.counts == NFL_COUNTS and part.n == 42
    verdict("C2 partition counts", ok, f"(n1, n2, n3)={part.counts}, n={part.n}")


def test_c03_normalisation(verdict):
    t = time.perf_counter()
    worst = 0.0
    for g in SETS:
        p = BemweParams(*g)
        m = bivariate_mass(*g, logdensity=lambda a, b, p=p: joint_logpdf(p, a, b)[0], eps=1e-10)
        worst = max(worst, abs(sum(m) - 1))
    elapsed = time.perf_counter() - t
    ok = worst < 1e-6 and elapsed < 30
    verdict("C3 total mass", ok, f"max |mass - 1| = {worst:.2e} over {len(SETS)} sets in {elapsed:.1f}s")


def test_c04_singular_mass(verdict):
    worst = 0.0
    for g in SETS:
        p = BemweParams(*g)
        lo, hi = log_range([p.gamma_sum], p.alpha, p.beta, p.lam)
        m3 = integrate.quad(lambda s: math.exp(joint_logpdf(p, math.exp(s), math.exp(s))[0] + s),
                            lo, hi, epsabs=1e-13, epsrel=1e-13, limit=200)[0]
        worst = max(worst, abs(m3 - p.gamma3 / p.gamma_sum))
    p = BemweParams(*SETS[0])
    n = 100_000
    s = bemwe_sample(p, np.random.default_rng(404), n)
    q = p.gamma3 / p.gamma_sum
    frac = float(np.mean(s.x1 == s.x2))
    z = abs(frac - q) / math.sqrt(q * (1 - q) / n)
    ok = worst < 1e-8 and z < 3
    verdict("C4 diagonal mass", ok, f"quadrature error {worst:.1e}; tie fraction {frac:.4f} vs {q:.4f} ({z:.2f} sd)")


def test_c05_distributional_identities(verdict):
    rng = np.random.default_rng(505)
    exact = True
    worst = 0.0
    for _ in range(1000):
        g = rng.uniform(0.1, 4, 3)
        a, b, l = rng.uniform(0.2, 3, 3)
        p = BemweParams(*g, a, b, l)
        x1, x2 = rng.uniform(0, 3, 2) * a
        exact &= max_cdf(p, x1) == joint_cdf(p, x1, x1)
        exact &= min_cdf(p, x2) == marginal_cdf(p, 1, x2) + marginal_cdf(p, 2, x2) - joint_cdf(p, x2, x2)
        worst = max(worst, abs(float(joint_survival(p, x1, x2)) - ref_joint_survival(x1, x2, *g, a, b, l)))
    ok = bool(exact) and worst < 1e-12
    verdict("C5 identities", ok, f"max/min exact={bool(exact)}; survival vs branch forms {worst:.1e}")


def test_c06_sampler_fidelity(verdict):
    rng = np.random.default_rng(606)
    pvals = []
    for g in SETS[1:4]:
        p = BemweParams(*g)
        s = bemwe_sample(p, rng, 10_000)
        for data, cdf in [
            (s.x1, lambda x, p=p: marginal_cdf(p, 1, x)),
            (s.x2, lambda x, p=p: marginal_cdf(p, 2, x)),
            (np.maximum(s.x1, s.x2), lambda x, p=p: max_cdf(p, x)),
            (np.minimum(s.x1, s.x2), lambda x, p=p: min_cdf(p, x)),
        ]:
            pvals.append(stats.kstest(data, cdf).pvalue)
    ok = min(pvals) > 0.01
    verdict("C6 KS tests", ok, f"{len(pvals)} tests, smallest p-value {min(pvals):.3f}")


def _fd_grad(f, g, h):
    out = np.empty(3)
    for k in range(3):
        e = np.zeros(3)
        e[k] = h[k]
        out[k] = (f(g + e) - f(g - e)) / (2 * h[k])
    return out


def test_c07_calculus(verdict):
    parts = {"nfl": partition_sample(load_nfl(100.0).sample(), NFL_FIXED)}
    for name, truth, shape, seed in [("sim-a", (0.8, 1.5, 0.6), (1.0, 1.2, 0.6), 1),
                                     ("sim-b", (2.5, 0.4, 1.2), (0.5, 0.9, 1.5), 2)]:
        s = bemwe_sample(BemweParams(*truth, *shape), np.random.default_rng(seed), 400)
        parts[name] = partition_sample(s, FixedShape(*shape))
    rng = np.random.default_rng(707)
    worst_s = worst_h = 0.0
    for part in parts.values():
        for _ in range(20):
            g = rng.uniform(0.05, 3.0, 3)
            h = 1e-5 * g
            s = score(part, g)
            fd = _fd_grad(lambda v: log_likelihood(part, v), g, h)
            worst_s = max(worst_s, float(np.max(np.abs(s - fd)) / np.max(np.abs(s))))
            H = np.column_stack([_fd_grad(lambda v, k=k: score(part, v)[k], g, h) for k in range(3)])
            info = observed_information(part, g)
            worst_h = max(worst_h, float(np.max(np.abs(info + H)) / np.max(np.abs(info))))
    ok = worst_s < 1e-6 and worst_h < 1e-6
    verdict("C7 score/information", ok, f"relative error score {worst_s:.1e}, information {worst_h:.1e}")


def test_c08_grid_search_equivalence(verdict):
    part = partition_sample(load_nfl(100.0).sample(), NFL_FIXED)
    best, step = grid_search_mle(vector_loglik(part), lo=1e-3, hi=2.0, final_resolution=1e-3)
    est = np.array(fit_mle(part).estimates)
    gap = float(np.max(np.abs(est - best)))
    ok = step <= 1e-3 and gap <= step
    verdict("C8 Newton vs grid", ok, f"max gap {gap:.1e} at grid spacing {step:.1e}")


def test_c09_moments(verdict):
    worst = 0.0
    for k, g in enumerate(SETS):
        p = BemweParams(*g)
        s = bemwe_sample(p, np.random.default_rng(900 + k), 1_000_000)
        for r in (1, 2, 3):
            v = s.x1 ** r
            se = v.std(ddof=1) / math.sqrt(v.size)
            q = marginal_moment(MomentRequest(p, 1, r))
            worst = max(worst, abs(q - v.mean()) / se)
    ok = worst < 4
    verdict("C9 moments", ok, f"largest quadrature-MC gap {worst:.2f} SE over {len(SETS)} sets, r=1..3")


def test_c10_quantile_round_trip(verdict):
    rng = np.random.default_rng(1010)
    u = np.concatenate([np.geomspace(1e-6, 0.5, 60), 1 - np.geomspace(0.5, 1e-6, 60)[1:]])
    worst = 0.0
    for _ in range(20):
        gamma, alpha, lam = np.exp(rng.uniform(math.log(0.1), math.log(10), 3))
        beta = math.exp(rng.uniform(math.log(0.2), math.log(5)))
        p = EmweParams(gamma, alpha, beta, lam)
        worst = max(worst, float(np.max(np.abs(emwe_cdf(p, emwe_quantile(p, u)) - u))))
    ok = worst < 1e-10
    verdict("C10 quantile round trip", ok, f"max |cdf(quantile(u)) - u| = {worst:.1e} over 20 sets")
