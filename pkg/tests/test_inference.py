import math
import time

import numpy as np
import pytest

from bemwe.bivariate import BemweParams, BivariateSample, bemwe_sample, joint_pdf
from bemwe.data import load_nfl
from bemwe.errors import ConvergenceError, DataError, DomainError
from bemwe.inference import (
    FixedShape,
    fit_mle,
    log_likelihood,
    normal_quantile,
    observed_information,
    partition_sample,
    score,
    wald_intervals,
)

from oracles import grid_search_mle, vector_loglik
from reference_values import (
    NFL_COUNTS,
    NFL_FIXED,
    NFL_REPORTED_CIS,
    NFL_REPORTED_COV,
    NFL_REPORTED_COV_DIAG,
    NFL_REPORTED_GAMMAS,
    NFL_REPORTED_LOGLIK,
    NFL_SCALE1_LOGLIK,
    NFL_SCALE1_MLE,
    NFL_SCALE100_LOGLIK,
    NFL_SCALE100_MLE,
)


def synthetic(seed, gammas, n, shape):
    p = BemweParams(*gammas, *shape)
    s = bemwe_sample(p, np.random.default_rng(seed), n)
    return partition_sample(s, FixedShape(*shape)), s


@pytest.fixture(scope="module")
def datasets():
    """(partition, sample) for the NFL table and two simulated sets."""
    raw = load_nfl(1.0).sample()
    return {
        "nfl": (partition_sample(raw, NFL_FIXED), raw),
        "a": synthetic(1, (0.8, 1.5, 0.6), 300, (1.0, 1.2, 0.6)),
        "b": synthetic(2, (2.5, 0.4, 1.2), 500, (0.5, 0.9, 1.5)),
    }


# partition -------------------------------------------------------------------


def test_nfl_counts(nfl_partition, nfl_raw_partition):
    assert nfl_partition.counts == NFL_COUNTS
    assert nfl_raw_partition.counts == NFL_COUNTS
    assert nfl_partition.n == 42


def test_partition_invariances():
    s = load_nfl(1.0).sample()
    assert partition_sample(s.swapped(), NFL_FIXED).counts == (2, 16, 24)
    assert partition_sample(s.scaled(3.7), NFL_FIXED).counts == NFL_COUNTS
    ties = BivariateSample([0.2, 0.5, 0.9], [0.2, 0.5, 0.9])
    assert partition_sample(ties).counts == (0, 0, 3)


def test_partition_rejects_zero_row():
    s = BivariateSample([0.5, 0.0, 1.0], [0.7, 0.3, 1.0])
    with pytest.raises(DataError, match="row 1"):
        partition_sample(s)


def test_partition_tie_tolerance_override():
    s = BivariateSample([1.0, 2.0], [1.05, 3.0], tie_tol=0.0)
    assert partition_sample(s, tie_tol=0.1).counts == (1, 0, 1)
    with pytest.raises(DomainError):
        partition_sample(s, tie_tol=-1)


# likelihood, score, information -----------------------------------------------


@pytest.mark.parametrize("which", ["nfl", "a", "b"])
def test_loglik_equals_sum_of_log_densities(which, datasets):
    part, sample = datasets[which]
    g = (0.3, 0.7, 0.9)
    p = BemweParams(*g, part.fixed.alpha, part.fixed.beta, part.fixed.lam)
    direct = sum(math.log(joint_pdf(p, a, b).value) for a, b in sample)
    assert log_likelihood(part, g) == pytest.approx(direct, abs=1e-10)


def _fd_gradient(f, g, h):
    g = np.asarray(g, float)
    out = np.empty(3)
    for k in range(3):
        e = np.zeros(3)
        e[k] = h[k]
        out[k] = (f(g + e) - f(g - e)) / (2 * h[k])
    return out


@pytest.mark.parametrize("which", ["nfl", "a", "b"])
def test_score_and_information_match_finite_differences(which, datasets):
    part = datasets[which][0]
    rng = np.random.default_rng(99)
    for _ in range(20):
        g = rng.uniform(0.05, 3.0, 3)
        h = 1e-5 * g
        fd = _fd_gradient(lambda v: log_likelihood(part, v), g, h)
        s = score(part, g)
        assert np.allclose(s, fd, rtol=1e-6, atol=1e-6 * np.max(np.abs(s)))
        H = np.column_stack([_fd_gradient(lambda v, k=k: score(part, v)[k], g, h) for k in range(3)])
        info = observed_information(part, g)
        assert np.allclose(-H, info, rtol=1e-6, atol=1e-6 * np.max(np.abs(info)))
        assert info[0, 1] == 0.0 and info[1, 0] == 0.0


def test_likelihood_rejects_bad_gammas(nfl_partition):
    with pytest.raises(DomainError):
        log_likelihood(nfl_partition, (0.1, 0.0, 0.2))
    with pytest.raises(ValueError):
        log_likelihood(nfl_partition, (0.1, 0.1, 0.2), fixed=FixedShape(1, 1, 1))


# fit: published figures --------------------------------------------------------


def test_fit_unscaled_table_matches_reported_figures(nfl_raw_partition):
    fit = fit_mle(nfl_raw_partition)
    assert fit.converged
    assert np.allclose(fit.estimates, NFL_SCALE1_MLE, rtol=1e-9)
    assert fit.loglik == pytest.approx(NFL_SCALE1_LOGLIK, abs=1e-9)
    assert np.allclose(fit.estimates, NFL_REPORTED_GAMMAS, atol=5e-3)
    assert fit.loglik == pytest.approx(NFL_REPORTED_LOGLIK, abs=0.5)
    assert np.allclose(np.diag(fit.covariance), NFL_REPORTED_COV_DIAG, rtol=0.05)
    for (lo, hi), (rlo, rhi) in zip(fit.conf_intervals, NFL_REPORTED_CIS):
        assert lo == pytest.approx(rlo, abs=5e-3) and hi == pytest.approx(rhi, abs=5e-3)
    assert fit.iterations < 20


def test_reported_covariance_is_inverse_information(nfl_raw_partition):
    cov = np.linalg.inv(observed_information(nfl_raw_partition, NFL_REPORTED_GAMMAS))
    # every printed entry, to the 2-3 significant digits shown
    assert np.allclose(cov, NFL_REPORTED_COV, rtol=1e-2, atol=0)


def test_score_near_zero_at_reported_estimates(nfl_raw_partition):
    assert np.max(np.abs(score(nfl_raw_partition, NFL_SCALE1_MLE))) < 1e-8
    # the printed estimates are rounded to 3-4 digits and the curvature is ~1e3
    assert np.max(np.abs(score(nfl_raw_partition, NFL_REPORTED_GAMMAS))) < 1.0


def test_fit_scaled_table(nfl_partition):
    fit = fit_mle(nfl_partition)
    assert fit.converged
    assert np.allclose(fit.estimates, NFL_SCALE100_MLE, rtol=1e-9)
    assert fit.loglik == pytest.approx(NFL_SCALE100_LOGLIK, abs=1e-9)


def test_closed_form_roots_at_boundary():
    # no reversals (n2 = 0) but some ties: the likelihood rises as gamma1 -> 0, and
    # with gamma1 held at 0 the other two score equations solve in closed form
    s = BivariateSample([0.2, 0.3, 0.5, 0.4, 0.6], [0.5, 0.4, 0.5, 0.9, 0.6])
    part = partition_sample(s)
    assert part.counts == (3, 0, 2)
    fit = fit_mle(part)
    assert not fit.converged
    assert fit.diagnostics["boundary"] == [0]
    assert fit.estimates[0] < 1e-10
    assert fit.estimates[1] == pytest.approx(-part.n1 / (part.A2 + part.C), rel=1e-8)
    assert fit.estimates[2] == pytest.approx(-(part.n1 + part.n3) / (part.A1 + part.C), rel=1e-8)
    assert abs(fit.score[1]) < 1e-8 and abs(fit.score[2]) < 1e-8


def test_fit_from_many_starts(nfl_raw_partition):
    rng = np.random.default_rng(5)
    for _ in range(25):
        init = np.exp(rng.uniform(math.log(1e-3), math.log(10), 3))
        fit = fit_mle(nfl_raw_partition, init=init)
        assert fit.converged
        assert np.allclose(fit.estimates, NFL_SCALE1_MLE, rtol=1e-7)


@pytest.mark.parametrize("scale", [1.0, 100.0])
def test_newton_agrees_with_grid_search(scale):
    part = partition_sample(load_nfl(scale).sample(), NFL_FIXED)
    best, step = grid_search_mle(vector_loglik(part), final_resolution=1e-3)
    assert step <= 1e-3
    assert np.all(np.abs(np.array(fit_mle(part).estimates) - best) <= step)


def test_fit_recovers_truth(datasets):
    fit = fit_mle(datasets["b"][0])
    assert fit.converged
    truth = np.array([2.5, 0.4, 1.2])
    assert np.all(np.abs(np.array(fit.estimates) - truth) < 4 * fit.std_errors)


def test_all_ties_has_singular_information():
    part = partition_sample(BivariateSample([0.2, 0.5, 0.9], [0.2, 0.5, 0.9]))
    with pytest.raises(ConvergenceError) as exc:
        fit_mle(part)
    assert len(exc.value.iterates) >= 1


def test_fit_validation(nfl_partition):
    with pytest.raises(DomainError):
        fit_mle(nfl_partition, confidence=1.0)
    with pytest.raises(DomainError):
        fit_mle(nfl_partition, init=(1.0, -1.0, 1.0))


def test_zero_confidence_gives_point_intervals(nfl_raw_partition):
    fit = fit_mle(nfl_raw_partition, confidence=0.0)
    for e, (lo, hi) in zip(fit.estimates, fit.conf_intervals):
        assert lo == hi == pytest.approx(e)


def test_interval_clamping():
    cis, raw = wald_intervals([0.01, 1.0], np.diag([1e-2, 1e-2]), 0.95)
    assert raw[0][0] < 0 and cis[0][0] == 0.0
    assert cis[1] == raw[1]
    assert normal_quantile(0.975) == pytest.approx(1.959963984540054, abs=1e-12)


def test_fit_is_fast(nfl_partition):
    t = time.perf_counter()
    fit_mle(partition_sample(load_nfl(100.0).sample(), NFL_FIXED))
    assert time.perf_counter() - t < 1.0
