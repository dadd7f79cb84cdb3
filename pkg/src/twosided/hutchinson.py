"""Hutchinson trace estimation over the quadratic-form evaluators, with
counter-based Rademacher probes and a dense exact-trace oracle."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .chebyshev import PolynomialCoefficients
from .operators import DenseSymmetric, SymmetricOperator
from .quadform import EVALUATORS

__all__ = [
    "ProbeSequence",
    "rademacher",
    "TraceEstimate",
    "estimate_trace",
    "exact_trace_f",
]

_SEED_MASK = (1 << 64) - 1


class ProbeSequence:
    """Index-addressable Rademacher probes in {-1, +1}^d.

    Probe i is a pure function of (seed, i, dim), so the sequence can be
    consumed out of order or concurrently without changing any vector.
    """

    def __init__(self, seed: int, dim: int):
        self.seed = int(seed) & _SEED_MASK
        self.dim = int(dim)

    def vector(self, i: int) -> np.ndarray:
        if i < 0:
            raise ValueError(f"probe index must be non-negative, got {i}")
        rng = np.random.default_rng(np.random.SeedSequence([self.seed, int(i)]))
        return 2.0 * rng.integers(0, 2, size=self.dim) - 1.0


def rademacher(seq: ProbeSequence, i: int) -> np.ndarray:
    return seq.vector(i)


@dataclass
class TraceEstimate:
    """Aggregate of m Hutchinson probes.

    ``mean`` is the probe values summed in index order divided by m;
    ``sample_stddev`` uses the m-1 denominator and is None for m = 1.
    """

    mean: float
    sample_stddev: float | None
    m: int
    total_matvecs: int
    probe_values: list[float] = field(default_factory=list)


def estimate_trace(op: SymmetricOperator, coeffs: PolynomialCoefficients,
                   evaluator, m: int, seed: int,
                   max_workers: int | None = None) -> TraceEstimate:
    """Hutchinson estimate of trace p(A) using ``m`` probes.

    ``evaluator`` is one of the four quadform evaluators, given as a name
    from :data:`twosided.quadform.EVALUATORS` or as the callable itself.
    Probes may be evaluated in parallel (``max_workers > 1``); results are
    reduced in probe-index order either way, so the estimate is a pure
    function of the arguments.
    """
    if m < 1:
        raise ValueError(f"number of probes must be >= 1, got m={m}")
    ev = EVALUATORS[evaluator] if isinstance(evaluator, str) else evaluator
    seq = ProbeSequence(seed, op.dim)

    def probe(i):
        return ev(op, seq.vector(i), coeffs)

    if max_workers is not None and max_workers > 1:
        with ThreadPoolExecutor(max_workers=max_workers) as pool:
            reports = list(pool.map(probe, range(m)))
    else:
        reports = [probe(i) for i in range(m)]

    values = [r.value for r in reports]
    total = 0.0
    for v in values:
        total += v
    mean = total / m
    stddev = float(np.std(values, ddof=1)) if m > 1 else None
    matvecs = sum(r.matvecs for r in reports)
    return TraceEstimate(mean, stddev, m, matvecs, values)


def exact_trace_f(A: DenseSymmetric, f) -> float:
    """Sum of f over all eigenvalues, via full symmetric eigendecomposition.

    Verification oracle for desk-scale matrices; not meant for production
    sizes.
    """
    eigs = np.linalg.eigvalsh(A.entries)
    return float(sum(float(f(lam)) for lam in eigs))
