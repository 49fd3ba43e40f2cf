"""Moment sums, free energy and Legendre-transform rate function.

For an observable A depending on the first coordinate only, the moment
sum Q_n(t) = sum over length-(n+1) words of exp(t * sum A) mu(word)
obeys the two-step identity Q_{n+2} = (delta^2 - alpha^2)/4 * Q_n with

    delta(t) = e^{t A1} + e^{t A2},
    alpha(t) = beta1 (e^{t A1} - e^{t A2}),

so Q_n has a closed form and the free energy is

    c(t) = log(delta^2 - alpha^2)/2 - log 2.

The rate function I is the Legendre transform of c, computed by solving
c'(t) = s (c' is strictly increasing off the degenerate angle).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from math import fsum, inf

import numpy as np

from .measure import enumerate_cylinders
from .params import ModelParams

Q_DIRECT_CAP = 14
DEVIATION_CAP = 22

__all__ = [
    "Observable",
    "FreeEnergyCurve",
    "delta_alpha",
    "q_direct",
    "q_recursive",
    "q_theorem_sum",
    "log_q",
    "free_energy",
    "free_energy_prime",
    "free_energy_curve",
    "rate_function",
    "deviation_probability",
]


class DegenerateObservable(ValueError):
    """A1 == A2 gives a flat, non-invertible free energy."""


@dataclass(frozen=True)
class Observable:
    """Values (A(1), A(2)) of a function of the first coordinate."""

    a1: float
    a2: float

    @property
    def degenerate(self) -> bool:
        return self.a1 == self.a2

    def mean(self) -> float:
        return 0.5 * (self.a1 + self.a2)


def delta_alpha(params: ModelParams, obs: Observable, t: float):
    """(delta(t), alpha(t)); plain floats, may overflow for |t A| ~ 700."""
    e1, e2 = math.exp(t * obs.a1), math.exp(t * obs.a2)
    return e1 + e2, params.beta1 * (e1 - e2)


def _log_dsq_minus_asq(params: ModelParams, obs: Observable, t: float) -> float:
    """log(delta^2 - alpha^2) via its positive-term expansion.

    delta^2 - alpha^2 = (1-beta1^2)(e^{tA1} - e^{tA2})^2 + 4 e^{t(A1+A2)},
    a sum of nonnegative terms, so it is safe in log space for any t; at
    t = 0 only the second term survives and the value is log 4 exactly.
    """
    log_cross = math.log(4.0) + t * (obs.a1 + obs.a2)
    gap = t * (obs.a1 - obs.a2)
    b2 = params.beta1 ** 2
    if gap == 0.0 or b2 == 1.0:
        return log_cross
    # log(e^{tA1} - e^{tA2})^2 = 2 [t max(A) + log(1 - e^{-|gap|})]
    log_diff_sq = 2.0 * (t * obs.a1 if gap > 0 else t * obs.a2) \
        + 2.0 * math.log(-math.expm1(-abs(gap)))
    return float(np.logaddexp(math.log1p(-b2) + log_diff_sq, log_cross))


def _log_half_delta(obs: Observable, t: float) -> float:
    return float(np.logaddexp(t * obs.a1, t * obs.a2)) - math.log(2.0)


def free_energy(params: ModelParams, obs: Observable, t: float) -> float:
    """c(t) = log(delta^2 - alpha^2)/2 - log 2, stable for large |t|."""
    return 0.5 * _log_dsq_minus_asq(params, obs, t) - math.log(2.0)


def free_energy_prime(params: ModelParams, obs: Observable, t: float) -> float:
    """c'(t), a weighted average of A1, A2 and their midpoint."""
    b2 = params.beta1 ** 2
    exps = np.array([2 * t * obs.a1, 2 * t * obs.a2, t * (obs.a1 + obs.a2)])
    coefs = np.array([1.0 - b2, 1.0 - b2, 2.0 * (1.0 + b2)])
    slopes = np.array([obs.a1, obs.a2, 0.5 * (obs.a1 + obs.a2)])
    w = coefs * np.exp(exps - np.max(exps))
    return float(np.sum(w * slopes) / np.sum(w))


@dataclass
class FreeEnergyCurve:
    t: np.ndarray
    c: np.ndarray
    dc: np.ndarray


def free_energy_curve(params: ModelParams, obs: Observable, t_grid) -> FreeEnergyCurve:
    t = np.asarray(t_grid, dtype=float)
    c = np.array([free_energy(params, obs, ti) for ti in t])
    dc = np.array([free_energy_prime(params, obs, ti) for ti in t])
    return FreeEnergyCurve(t=t, c=c, dc=dc)


def q_direct(params: ModelParams, obs: Observable, n: int, t: float) -> float:
    """Q_n(t) summed exactly over all 2^{n+1} cylinders."""
    if n > Q_DIRECT_CAP:
        raise ValueError(f"q_direct capped at n={Q_DIRECT_CAP}, got {n}")
    table = enumerate_cylinders(params, n + 1)
    idx = np.arange(2 ** (n + 1), dtype=np.uint32)
    twos = np.bitwise_count(idx).astype(float)
    sum_a = (n + 1 - twos) * obs.a1 + twos * obs.a2
    terms = np.exp(t * sum_a) * table.probabilities
    return fsum(terms.tolist())


def log_q(params: ModelParams, obs: Observable, n: int, t: float) -> float:
    """log Q_n(t) from the closed form, safe for large n and |t|."""
    if n < 0:
        raise ValueError("n must be >= 0")
    log_r = _log_dsq_minus_asq(params, obs, t) - math.log(4.0)
    if n % 2 == 0:
        return (n // 2) * log_r + _log_half_delta(obs, t)
    return (n // 2 + 1) * log_r


def q_recursive(params: ModelParams, obs: Observable, n: int, t: float) -> float:
    """Q_n(t) via the closed form implied by the two-step identity.

    Q_0 = delta/2, Q_1 = (delta^2 - alpha^2)/4 and each +2 in n multiplies
    by (delta^2 - alpha^2)/4.
    """
    return math.exp(log_q(params, obs, n, t))


def q_theorem_sum(params: ModelParams, obs: Observable, n: int, t: float) -> float:
    """Q_n(t) via the full alternating recursion in all lower orders.

    Kept as an independent implementation; it must agree with the closed
    form (and does, because substituting the recursion into itself
    collapses it to the two-step identity).
    """
    delta, alpha = delta_alpha(params, obs, t)
    q = [0.5 * delta, (delta ** 2 - alpha ** 2) / 4.0,
         delta * (delta ** 2 - alpha ** 2) / 8.0]
    for m in range(3, n + 1):
        total = 0.5 * delta * q[m - 1]
        for k in range(2, m):
            total += (-1.0) ** (k + 1) * 2.0 ** (-k) * delta ** (k - 2) \
                * alpha ** 2 * q[m - k]
        q.append(total)
    return q[n]


def _solve_prime(params: ModelParams, obs: Observable, s: float,
                 tol: float = 1e-12) -> float:
    """Monotone bisection for c'(t) = s on an expanding bracket."""
    lo, hi = -1.0, 1.0
    while free_energy_prime(params, obs, lo) > s:
        lo *= 2.0
        if lo < -1e8:
            raise RuntimeError("failed to bracket c'(t) = s from below")
    while free_energy_prime(params, obs, hi) < s:
        hi *= 2.0
        if hi > 1e8:
            raise RuntimeError("failed to bracket c'(t) = s from above")
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        d = free_energy_prime(params, obs, mid)
        if abs(d - s) <= tol:
            return mid
        if d < s:
            lo = mid
        else:
            hi = mid
        if hi - lo <= 1e-15 * max(1.0, abs(lo), abs(hi)):
            break
    mid = 0.5 * (lo + hi)
    if abs(free_energy_prime(params, obs, mid) - s) > tol:
        raise RuntimeError("bisection for c'(t) = s did not converge")
    return mid


def _endpoint_limit(params: ModelParams, obs: Observable, s: float) -> float:
    """I at an endpoint of the support, as the limit of t s - c(t)."""
    sign = 1.0 if s == max(obs.a1, obs.a2) else -1.0
    prev = None
    for k in range(0, 18):
        t = sign * 10.0 ** k
        val = t * s - free_energy(params, obs, t)
        if prev is not None and abs(val - prev) < 1e-10:
            return val
        prev = val
    return prev


def rate_function(params: ModelParams, obs: Observable, s: float) -> float:
    """I(s) = sup_t (t s - c(t)); +inf outside [min A, max A]."""
    if obs.degenerate:
        raise DegenerateObservable("rate function needs A1 != A2")
    lo, hi = min(obs.a1, obs.a2), max(obs.a1, obs.a2)
    if s < lo or s > hi:
        return inf
    if params.degenerate:
        # c is linear: I is 0 at the mean and +inf elsewhere
        return 0.0 if s == obs.mean() else inf
    if s == lo or s == hi:
        return _endpoint_limit(params, obs, s)
    t_star = _solve_prime(params, obs, s)
    return t_star * s - free_energy(params, obs, t_star)


def deviation_probability(params: ModelParams, obs: Observable, n: int,
                          interval) -> float:
    """mu of the words of length n whose Birkhoff average lies in `interval`.

    `interval` is a closed interval (lo, hi); use -inf/inf for rays.
    Exact, by enumeration over all 2^n words.
    """
    if n > DEVIATION_CAP:
        raise ValueError(f"deviation_probability capped at n={DEVIATION_CAP}")
    lo, hi = interval
    table = enumerate_cylinders(params, n)
    idx = np.arange(2 ** n, dtype=np.uint32)
    twos = np.bitwise_count(idx).astype(float)
    means = ((n - twos) * obs.a1 + twos * obs.a2) / n
    mask = (means >= lo) & (means <= hi)
    return fsum(table.probabilities[mask].tolist())
