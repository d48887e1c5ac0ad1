"""Ranking-weight search by Bayesian optimization.

A Gaussian-process surrogate with an RBF kernel models the objective over
the weight box; each iteration evaluates the point with the best expected
improvement among a deterministic batch of domain samples. Failed objective
evaluations are recorded as +inf and ignored by the surrogate, so the loop
is total. Everything is driven by one seeded generator: identical inputs
reproduce the trace bit for bit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.stats import qmc

HARMONIC_FLOOR = 1e-6

N_INITIAL = 20
N_ACQUISITION_SAMPLES = 1024
EI_XI = 0.01


def harmonic_mean(values) -> float:
    """Harmonic mean with a positivity floor of 1e-6 per value.

    The floor keeps the mean defined when a component (FKGL can go negative)
    drops to or below zero.
    """
    values = list(values)
    if not values:
        raise ValueError("harmonic_mean of empty sequence")
    clamped = [max(float(v), HARMONIC_FLOOR) for v in values]
    return len(clamped) / math.fsum(1.0 / v for v in clamped)


@dataclass(frozen=True)
class SearchDomain:
    """Per-dimension closed intervals of the weight box."""

    lower: tuple[float, ...] = (0.0, 0.0, 0.0, 0.0, 0.0)
    upper: tuple[float, ...] = (6.0, 6.0, 6.0, 6.0, 6.0)

    def __post_init__(self):
        if len(self.lower) != len(self.upper) or not self.lower:
            raise ValueError("domain bounds must be non-empty and aligned")
        if any(lo >= hi for lo, hi in zip(self.lower, self.upper)):
            raise ValueError("each lower bound must be below its upper bound")

    @property
    def dim(self) -> int:
        return len(self.lower)

    def contains(self, point) -> bool:
        return all(
            lo <= x <= hi for x, lo, hi in zip(point, self.lower, self.upper)
        )


@dataclass
class OptimizationTrace:
    iterations: list[tuple[tuple[float, ...], float]] = field(default_factory=list)
    best_point: tuple[float, ...] = ()
    best_value: float = math.inf
    seed: int = 0
    budget: int = 0


def _rbf_kernel(a: np.ndarray, b: np.ndarray, length_scale: float) -> np.ndarray:
    aa = np.sum(a**2, axis=1)[:, None]
    bb = np.sum(b**2, axis=1)[None, :]
    sq = np.maximum(aa + bb - 2.0 * a @ b.T, 0.0)
    return np.exp(-0.5 * sq / length_scale**2)


def _norm_pdf(z: np.ndarray) -> np.ndarray:
    return np.exp(-0.5 * z**2) / math.sqrt(2.0 * math.pi)


def _norm_cdf(z: np.ndarray) -> np.ndarray:
    return 0.5 * (1.0 + np.vectorize(math.erf)(z / math.sqrt(2.0)))


class _Surrogate:
    """GP regression on unit-cube inputs with standardized targets."""

    def __init__(self, x: np.ndarray, y: np.ndarray):
        self.x = x
        self.y_mean = float(np.mean(y))
        self.y_std = float(np.std(y)) or 1.0
        self.y = (y - self.y_mean) / self.y_std
        if len(x) > 1:
            diffs = x[:, None, :] - x[None, :, :]
            dists = np.sqrt(np.sum(diffs**2, axis=-1))
            positive = dists[dists > 0]
            self.length_scale = float(np.median(positive)) if positive.size else 0.3
        else:
            self.length_scale = 0.3
        self.length_scale = max(self.length_scale, 1e-3)
        kernel = _rbf_kernel(x, x, self.length_scale)
        jitter = 1e-8
        for _ in range(6):
            try:
                self.chol = np.linalg.cholesky(kernel + jitter * np.eye(len(x)))
                break
            except np.linalg.LinAlgError:
                jitter *= 100.0
        else:
            raise RuntimeError("surrogate covariance not positive definite")
        self.alpha = np.linalg.solve(
            self.chol.T, np.linalg.solve(self.chol, self.y)
        )

    def predict(self, points: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        k_star = _rbf_kernel(points, self.x, self.length_scale)
        mean = k_star @ self.alpha
        v = np.linalg.solve(self.chol, k_star.T)
        var = np.maximum(1.0 - np.sum(v**2, axis=0), 1e-12)
        return mean, np.sqrt(var)

    def expected_improvement(self, points: np.ndarray) -> np.ndarray:
        mean, std = self.predict(points)
        best = float(np.min(self.y))
        improvement = best - mean - EI_XI
        z = improvement / std
        return improvement * _norm_cdf(z) + std * _norm_pdf(z)


def optimize_weights(
    objective,
    domain: SearchDomain = SearchDomain(),
    budget: int = 200,
    seed: int = 0,
) -> OptimizationTrace:
    """Minimize ``objective`` over ``domain`` with a fixed evaluation budget.

    Starts from quasi-random points, then proposes by expected improvement
    maximized over a batch of uniform samples mixed with local perturbations
    of the incumbent. Returns the full evaluation trace.
    """
    if budget < 10:
        raise ValueError("budget must be >= 10")
    rng = np.random.default_rng(seed)
    lower = np.asarray(domain.lower)
    upper = np.asarray(domain.upper)
    width = upper - lower
    trace = OptimizationTrace(seed=seed, budget=budget)

    def evaluate(point: np.ndarray) -> float:
        coords = tuple(float(v) for v in point)
        try:
            value = float(objective(coords))
        except Exception:
            value = math.inf
        if math.isnan(value):
            value = math.inf
        trace.iterations.append((coords, value))
        if value < trace.best_value:
            trace.best_value = value
            trace.best_point = coords
        return value

    n_initial = min(N_INITIAL, budget)
    halton = qmc.Halton(d=domain.dim, scramble=True, seed=seed)
    initial = lower + halton.random(n_initial) * width
    for point in initial:
        evaluate(point)

    while len(trace.iterations) < budget:
        xs = np.array([p for p, v in trace.iterations if math.isfinite(v)])
        ys = np.array([v for _, v in trace.iterations if math.isfinite(v)])
        if len(xs) < 2:
            evaluate(lower + rng.random(domain.dim) * width)
            continue
        unit_x = (xs - lower) / width
        surrogate = _Surrogate(unit_x, ys)
        n_local = N_ACQUISITION_SAMPLES // 4
        uniform = rng.random((N_ACQUISITION_SAMPLES - n_local, domain.dim))
        incumbent = (np.asarray(trace.best_point) - lower) / width
        local = incumbent + 0.05 * rng.standard_normal((n_local, domain.dim))
        batch = np.clip(np.vstack([uniform, local]), 0.0, 1.0)
        ei = surrogate.expected_improvement(batch)
        best_idx = int(np.argmax(ei))
        evaluate(lower + batch[best_idx] * width)

    return trace
