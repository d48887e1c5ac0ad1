"""Paired significance testing for benchmark scores."""

from __future__ import annotations

import math


def _midranks(values: list[float]) -> list[float]:
    order = sorted(range(len(values)), key=lambda i: values[i])
    ranks = [0.0] * len(values)
    i = 0
    while i < len(values):
        j = i
        while j + 1 < len(values) and values[order[j + 1]] == values[order[i]]:
            j += 1
        rank = (i + j + 2) / 2.0  # average of 1-based positions i+1..j+1
        for k in range(i, j + 1):
            ranks[order[k]] = rank
        i = j + 1
    return ranks


def _exact_cdf_counts(doubled_ranks: list[int]) -> list[int]:
    """counts[s] = number of sign assignments whose doubled W+ equals s."""
    total = sum(doubled_ranks)
    counts = [0] * (total + 1)
    counts[0] = 1
    for r in doubled_ranks:
        for s in range(total, r - 1, -1):
            counts[s] += counts[s - r]
    return counts


def wilcoxon_signed_rank(x, y, method: str = "auto") -> float:
    """Two-sided Wilcoxon signed-rank p-value for paired samples.

    Zero differences are dropped; ties in |d| get midranks. The exact
    sign-flip distribution is used for n <= 25 (midranks included), a normal
    approximation with tie correction and continuity correction beyond that.
    ``method`` forces "exact" or "approx" (mainly for testing the
    approximation).
    """
    if len(x) != len(y):
        raise ValueError("paired samples must have equal length")
    diffs = [float(a) - float(b) for a, b in zip(x, y)]
    diffs = [d for d in diffs if d != 0.0]
    n = len(diffs)
    if n == 0:
        raise ValueError("all differences are zero; test undefined")
    if n < 5:
        raise ValueError("need at least 5 nonzero differences")
    ranks = _midranks([abs(d) for d in diffs])
    w_plus = sum(r for d, r in zip(diffs, ranks) if d > 0)

    if method not in ("auto", "exact", "approx"):
        raise ValueError(f"unknown method {method!r}")
    use_exact = method == "exact" or (method == "auto" and n <= 25)

    if use_exact:
        doubled = [int(round(2 * r)) for r in ranks]
        counts = _exact_cdf_counts(doubled)
        total = sum(doubled)
        observed = int(round(2 * w_plus))
        denom = 2.0**n
        p_low = sum(counts[: observed + 1]) / denom
        p_high = sum(counts[observed:]) / denom
        return min(1.0, 2.0 * min(p_low, p_high))

    # Normal approximation with continuity correction plus the Edgeworth
    # kurtosis term (the null distribution is symmetric, so no skew term).
    # W+ = sum r_i * Bernoulli(1/2): moments follow directly from the
    # midranks, which also absorbs the tie correction.
    mean = sum(ranks) / 2.0
    variance = sum(r * r for r in ranks) / 4.0
    if variance <= 0:
        raise ValueError("degenerate rank variance")
    if w_plus == mean:
        return 1.0
    kurt = -(sum(r**4 for r in ranks) / 8.0) / variance**2
    w_small = min(w_plus, 2.0 * mean - w_plus)
    z = (w_small - mean + 0.5) / math.sqrt(variance)
    phi = math.exp(-0.5 * z * z) / math.sqrt(2.0 * math.pi)
    cdf = 0.5 * math.erfc(-z / math.sqrt(2.0))
    cdf -= phi * (kurt / 24.0) * (z**3 - 3.0 * z)
    return min(1.0, max(2.0 * cdf, 1e-300))
