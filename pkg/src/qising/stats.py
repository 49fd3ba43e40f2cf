"""Numerical verifiers of the ergodic claims about the measure.

Exact enumeration wherever the word length permits; seeded sampling only
for claims that are inherently about long words (entropy, Birkhoff
deviations at large n).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from math import fsum

import numpy as np

from .ldp import Observable, deviation_probability
from .measure import mu, sample_many
from .params import ModelParams

MIXING_CAP = 12

__all__ = [
    "MixingDefectReport",
    "MarkovWitness",
    "EntropyEstimate",
    "mixing_defect",
    "markov_witness",
    "entropy_estimate",
    "birkhoff_table",
]


@dataclass
class MixingDefectReport:
    symbols: tuple          # (a, b, c, d)
    gap: int                # n: the middle block has n-1 free symbols
    exact_sum: float        # sum over middle words of mu(a b ... c d)
    product: float          # mu(a,b) * mu(c,d)
    defect: float
    predicted: float        # (-1)^n (beta_b - beta_a)(beta_c - beta_d) / 16


def mixing_defect(params: ModelParams, a: int, b: int, c: int, d: int,
                  n: int) -> MixingDefectReport:
    """Exact correlation defect between the cylinders (a,b) and (c,d).

    The sum over all intermediate words never decays to the product of the
    two cylinder masses: the defect is constant in |n| and only flips sign
    with the parity of n, which is why the measure is not mixing.
    """
    if not 2 <= n <= MIXING_CAP:
        raise ValueError(f"n must be in [2, {MIXING_CAP}]")
    terms = [mu(params, (a, b) + middle + (c, d))
             for middle in itertools.product((1, 2), repeat=n - 1)]
    exact = fsum(terms)
    product = mu(params, (a, b)) * mu(params, (c, d))
    predicted = (-1.0) ** n * (params.beta_of(b) - params.beta_of(a)) \
        * (params.beta_of(c) - params.beta_of(d)) / 16.0
    return MixingDefectReport(symbols=(a, b, c, d), gap=n, exact_sum=exact,
                              product=product, defect=exact - product,
                              predicted=predicted)


@dataclass
class MarkovWitness:
    cond_1: float       # mu(11)/mu(1)
    cond_11: float      # mu(111)/mu(11)
    cond_111: float     # mu(1111)/mu(111)


def markov_witness(params: ModelParams) -> MarkovWitness:
    """Conditional probabilities of 1 after contexts 1, 11, 111.

    They alternate between 2*gamma and 1/2, so no one- or two-step Markov
    chain reproduces the measure.
    """
    if params.degenerate:
        raise ValueError("witness undefined at the degenerate angle")
    w = MarkovWitness(
        cond_1=mu(params, (1, 1)) / mu(params, (1,)),
        cond_11=mu(params, (1, 1, 1)) / mu(params, (1, 1)),
        cond_111=mu(params, (1, 1, 1, 1)) / mu(params, (1, 1, 1)),
    )
    assert w.cond_1 != w.cond_11 and w.cond_11 != w.cond_111
    return w


@dataclass
class EntropyEstimate:
    mean: float
    half_width: float   # 3 sigma of the sample mean
    target: float       # -p log p - (1-p) log(1-p)


def entropy_estimate(params: ModelParams, seed: int, n: int,
                     num_samples: int) -> EntropyEstimate:
    """Shannon-McMillan-Breiman estimator -(1/n) log mu over sampled words."""
    if n < 50 or num_samples < 1000:
        raise ValueError("need n >= 50 and num_samples >= 1000")
    _, probs = sample_many(params, seed, n, num_samples)
    values = -np.log(probs) / n
    p = params.p
    if params.degenerate:
        target = 0.0
    else:
        target = -(p * math.log(p) + (1 - p) * math.log(1 - p))
    return EntropyEstimate(mean=float(values.mean()),
                           half_width=3.0 * float(values.std(ddof=1)) / math.sqrt(num_samples),
                           target=target)


def birkhoff_table(params: ModelParams, obs: Observable, seed: int,
                   n_list, epsilon: float, num_samples: int = 10_000):
    """Empirical large-deviation frequencies, with exact values where feasible.

    For each n: the fraction of sampled words whose Birkhoff average of the
    observable deviates from the mean by at least epsilon, paired with the
    exact enumerated probability when n <= 22.
    """
    mean = obs.mean()
    rows = []
    for task, n in enumerate(n_list):
        words, _ = sample_many(params, seed + task, n, num_samples)
        values = np.where(words == 1, obs.a1, obs.a2).mean(axis=1)
        freq = float(np.mean(np.abs(values - mean) >= epsilon))
        if n <= 22:
            exact = deviation_probability(params, obs, n, (-math.inf, mean - epsilon)) \
                + deviation_probability(params, obs, n, (mean + epsilon, math.inf))
        else:
            exact = None
        rows.append({"n": n, "empirical": freq, "exact": exact})
    return rows
