import math

import numpy as np
import pytest
import scipy.linalg

from twosided.chebyshev import CHEBYSHEV, PolynomialCoefficients, eval_scalar, \
    interpolate
from twosided.hutchinson import (ProbeSequence, estimate_trace, exact_trace_f,
                                 rademacher)
from twosided.operators import DenseSymmetric, random_symmetric
from twosided.spectrum import SpectralInterval, scale_operator


class TestRademacher:
    def test_entries_are_signs(self):
        z = rademacher(ProbeSequence(42, 4), 0)
        assert np.all(np.abs(z) == 1.0)

    def test_determinism(self):
        seq = ProbeSequence(9, 100)
        assert np.array_equal(seq.vector(0), seq.vector(0))
        # a fresh sequence object gives the same vectors
        assert np.array_equal(seq.vector(7), ProbeSequence(9, 100).vector(7))

    def test_order_independence(self):
        seq = ProbeSequence(3, 50)
        later_first = seq.vector(5).copy()
        _ = [seq.vector(i) for i in range(5)]
        assert np.array_equal(seq.vector(5), later_first)

    def test_mean_concentration(self):
        z = rademacher(ProbeSequence(9, 10_000), 0)
        assert abs(np.mean(z)) <= 4 / math.sqrt(10_000)

    def test_negative_index_rejected(self):
        with pytest.raises(ValueError):
            ProbeSequence(0, 4).vector(-1)


class TestEstimateTrace:
    def test_identity_operator_is_exact(self):
        d = 17
        op = DenseSymmetric(np.eye(d))
        alpha = np.array([0.2, -0.7, 1.3, 0.4])
        p = PolynomialCoefficients(CHEBYSHEV, alpha)
        est = estimate_trace(op, p, "two_sided_chebyshev", m=5, seed=1)
        want = d * np.sum(alpha)  # T_j(1) = 1 for every j
        assert est.mean == pytest.approx(want, rel=1e-13)

    def test_diagonal_oracle_statistical(self):
        rng = np.random.default_rng(10)
        lams = rng.uniform(-1, 1, 100)
        op = DenseSymmetric(np.diag(lams))
        p = interpolate(lambda x: math.exp(10 * x), 20)
        est = estimate_trace(op, p, "two_sided_chebyshev", m=500, seed=7)
        exact = sum(eval_scalar(p, lam) for lam in lams)
        # diagonal operators make every probe value identical, so the
        # statistical band degenerates to roundoff; allow the serial-summation
        # roundoff bound m*eps*|total| as a floor
        tol = 4 * est.sample_stddev / math.sqrt(500) + 500 * np.finfo(float).eps * abs(exact)
        assert abs(est.mean - exact) <= tol

    def test_single_probe_cross_method(self):
        A = random_symmetric(60, 5)
        eigs = np.linalg.eigvalsh(A.entries)
        S = scale_operator(A, SpectralInterval(float(eigs[0]), float(eigs[-1]), 0.0))
        p = interpolate(lambda x: math.exp(10 * x), 20)
        one = estimate_trace(S, p, "one_sided_chebyshev", m=1, seed=3)
        two = estimate_trace(S, p, "two_sided_chebyshev", m=1, seed=3)
        assert abs(one.mean - two.mean) <= 1e-10 * abs(one.mean)

    def test_total_matvecs(self):
        op = random_symmetric(30, 1)
        p = interpolate(math.exp, 13)
        two = estimate_trace(op, p, "two_sided_chebyshev", m=9, seed=0)
        one = estimate_trace(op, p, "one_sided_chebyshev", m=9, seed=0)
        assert two.total_matvecs == 9 * 7
        assert one.total_matvecs == 9 * 13

    def test_stddev_absent_for_single_probe(self):
        op = random_symmetric(10, 0)
        p = PolynomialCoefficients(CHEBYSHEV, [1.0, 0.5])
        est = estimate_trace(op, p, "two_sided_chebyshev", m=1, seed=0)
        assert est.sample_stddev is None
        assert est.m == 1 and len(est.probe_values) == 1

    def test_mean_is_ordered_accumulation(self):
        op = random_symmetric(25, 4)
        p = interpolate(math.cos, 6)
        est = estimate_trace(op, p, "one_sided_chebyshev", m=20, seed=2)
        total = 0.0
        for v in est.probe_values:
            total += v
        assert est.mean == total / 20

    def test_serial_parallel_identical(self):
        op = random_symmetric(40, 6)
        p = interpolate(lambda x: math.exp(2 * x), 10)
        serial = estimate_trace(op, p, "two_sided_chebyshev", m=24, seed=11)
        parallel = estimate_trace(op, p, "two_sided_chebyshev", m=24, seed=11,
                                  max_workers=4)
        assert serial.mean == parallel.mean
        assert serial.probe_values == parallel.probe_values
        assert serial.total_matvecs == parallel.total_matvecs

    def test_invalid_m(self):
        op = random_symmetric(5, 0)
        p = PolynomialCoefficients(CHEBYSHEV, [1.0])
        with pytest.raises(ValueError):
            estimate_trace(op, p, "two_sided_chebyshev", m=0, seed=0)

    def test_unbiased_over_seeds(self):
        A = random_symmetric(40, 20)
        eigs = np.linalg.eigvalsh(A.entries)
        op = scale_operator(A, SpectralInterval(float(eigs[0]), float(eigs[-1]), 0.0))
        scaled_eigs = (2 * eigs - eigs[0] - eigs[-1]) / (eigs[-1] - eigs[0])
        p = interpolate(math.exp, 8)
        exact = sum(eval_scalar(p, lam) for lam in scaled_eigs)
        means = [estimate_trace(op, p, "two_sided_chebyshev", m=20, seed=s).mean
                 for s in range(200)]
        grand = np.mean(means)
        stderr = np.std(means, ddof=1) / math.sqrt(200)
        assert abs(grand - exact) <= 5 * stderr


class TestExactTrace:
    def test_plain_trace(self):
        A = DenseSymmetric(np.diag([1.0, 2.0, 3.0]))
        assert exact_trace_f(A, lambda x: x) == pytest.approx(6.0)

    def test_identity_exp(self):
        d = 12
        assert exact_trace_f(DenseSymmetric(np.eye(d)), math.exp) == \
            pytest.approx(d * math.e, rel=1e-14)

    def test_against_expm_oracle(self):
        A = random_symmetric(200, 5)
        eigs = np.linalg.eigvalsh(A.entries)
        M = (2 * A.entries - (eigs[0] + eigs[-1]) * np.eye(200)) / (eigs[-1] - eigs[0])
        scaled = DenseSymmetric((M + M.T) / 2)
        ours = exact_trace_f(scaled, lambda x: math.exp(10 * x))
        oracle = float(np.trace(scipy.linalg.expm(10 * scaled.entries)))
        assert abs(ours - oracle) <= 1e-8 * abs(oracle)
