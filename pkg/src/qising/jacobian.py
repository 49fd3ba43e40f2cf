"""Finite-depth Jacobian ratios and the continued-fraction classifier.

The ratio J^n(x) = mu(x0..xn)/mu(x1..xn) obeys

    J^n = a(x0,x1) + b(x0,x1) / J^{n-1}(x1..xn)

and stays in [gamma, 1-gamma].  Truncating the nested expansion with the
value 1/2 in the last position reproduces the measure ratio exactly; when
the truncations converge the only possible limits are p and 1-p, which is
what the classifier detects.  On the constant sequence 1,1,1,... the
ratios alternate between 2*gamma and 1/2 forever, so no limit exists
there (the computable witness that the measure is not Gibbs).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .measure import extend_front, initial_state, mu
from .params import ModelParams, coeff_a, coeff_b, parse_word

__all__ = [
    "ClassLabel",
    "JacobianTrace",
    "jacobian_ratio",
    "jacobian_trace",
    "one_infinity_ratios",
    "continued_fraction",
    "classify",
    "classify_many",
    "fixed_points",
    "g_a",
    "g_b",
    "f1",
    "f2",
]


class UndefinedRatio(ZeroDivisionError):
    """Denominator cylinder has zero measure (degenerate angle only)."""


class DegenerateAngle(ValueError):
    """Operation requires gamma > 0."""


class ClassLabel(enum.Enum):
    A = "A"            # limit p
    B = "B"            # limit 1 - p
    UNRESOLVED = "Unresolved"


@dataclass
class JacobianTrace:
    word: tuple
    ratios: list


def jacobian_ratio(params: ModelParams, word) -> float:
    """mu(x0..xn) / mu(x1..xn) for a word of length n+1 >= 2."""
    word = parse_word(word)
    if len(word) < 2:
        raise ValueError("need at least two symbols")
    den = mu(params, word[1:])
    if den == 0.0:
        raise UndefinedRatio(f"mu{word[1:]} = 0")
    return mu(params, word) / den


def jacobian_trace(params: ModelParams, word) -> JacobianTrace:
    """All ratios J^1..J^N along the prefixes of `word`, in O(N).

    Growing the word at the back is a front extension of its reversal,
    which mu is invariant under, so two O(1) states suffice.
    """
    word = parse_word(word)
    if len(word) < 2:
        raise ValueError("need at least two symbols")
    full = initial_state(params, word[0])    # reversal of word[:k]
    tail = None                              # reversal of word[1:k]
    ratios = []
    for k in range(1, len(word)):
        full = extend_front(params, full, word[k])
        tail = extend_front(params, tail, word[k]) if tail else initial_state(params, word[k])
        if tail.mu_w == 0.0:
            raise UndefinedRatio("zero-measure denominator cylinder")
        ratios.append(full.mu_w / tail.mu_w)
    return JacobianTrace(word=word, ratios=ratios)


def one_infinity_ratios(params: ModelParams, big_n: int) -> list:
    """mu(1^{n+1})/mu(1^n) for n = 1..N; alternates 2*gamma (n odd), 1/2."""
    if big_n < 2:
        raise ValueError("N must be >= 2")
    if params.degenerate:
        raise DegenerateAngle("ratios undefined at gamma = 0")
    return jacobian_trace(params, (1,) * (big_n + 1)).ratios


def continued_fraction(params: ModelParams, word, seed: float = 0.5) -> float:
    """Finite nested expansion of the Jacobian, seeded in the last slot.

    With seed 1/2 this equals the measure ratio jacobian_ratio(word)
    exactly.  Intermediate values must stay within [gamma, 1-gamma];
    leaving it indicates numerical breakdown and raises.
    """
    word = parse_word(word)
    if len(word) < 2:
        raise ValueError("need at least two symbols")
    gamma = params.gamma
    value = seed
    for i in range(len(word) - 2, -1, -1):
        if not gamma - 1e-12 <= value <= 1.0 - gamma + 1e-12:
            raise ArithmeticError(f"truncation value {value} left [gamma, 1-gamma]")
        value = coeff_a(word[i], word[i + 1], params) \
            + coeff_b(word[i], word[i + 1], params) / value
    return value


def classify_many(params: ModelParams, words: np.ndarray, epsilon: float = 1e-6,
                  max_depth: int = 200, needed: int = 3):
    """Classify each row of `words` by its truncated-expansion limit.

    Returns (labels, depths): labels is int8 with 0 for limit p, 1 for
    limit 1-p and -1 for unresolved; depths is the depth at which the
    decision fired (or max_depth).  A label requires `needed` consecutive
    truncation depths within epsilon of the same fixed point.
    """
    if params.degenerate:
        raise DegenerateAngle("classification requires gamma > 0")
    words = np.asarray(words)
    count, length = words.shape
    gamma, p = params.gamma, params.p
    labels = np.full(count, -1, dtype=np.int8)
    depths = np.full(count, max_depth, dtype=np.int32)
    hits_a = np.zeros(count, dtype=np.int8)
    hits_b = np.zeros(count, dtype=np.int8)
    active = np.arange(count)
    limit = min(max_depth, length - 1)
    for depth in range(1, limit + 1):
        rows = words[active]
        value = np.full(len(active), 0.5)
        for i in range(depth - 1, -1, -1):
            eq = rows[:, i] == rows[:, i + 1]
            value = np.where(eq, gamma / value, 1.0 - gamma / value)
        near_a = np.abs(value - p) <= epsilon
        near_b = np.abs(value - (1.0 - p)) <= epsilon
        hits_a[active] = np.where(near_a, hits_a[active] + 1, 0)
        hits_b[active] = np.where(near_b, hits_b[active] + 1, 0)
        done_a = hits_a[active] >= needed
        done_b = hits_b[active] >= needed
        done = done_a | done_b
        if np.any(done):
            resolved = active[done]
            labels[resolved] = np.where(done_a[done], 0, 1)
            depths[resolved] = depth
            active = active[~done]
            if active.size == 0:
                break
    return labels, depths


def classify(params: ModelParams, word, epsilon: float = 1e-6,
             max_depth: int = 200) -> tuple:
    """(ClassLabel, depth_used) for a single word prefix."""
    word = parse_word(word)
    labels, depths = classify_many(params, np.array([word]), epsilon, max_depth)
    label = {0: ClassLabel.A, 1: ClassLabel.B, -1: ClassLabel.UNRESOLVED}[int(labels[0])]
    return label, int(depths[0])


def fixed_points(params: ModelParams) -> tuple:
    """(p, 1-p), the common fixed points of f1 and f2."""
    return params.p, 1.0 - params.p


def g_a(params: ModelParams, x):
    """One equal-pair step of the expansion: x -> gamma / x."""
    return params.gamma / x


def g_b(params: ModelParams, x):
    """One unequal-pair step of the expansion: x -> 1 - gamma / x."""
    return 1.0 - params.gamma / x


def f1(params: ModelParams, x):
    """Two-step map of a 'ba'-coded block; attracts to p on (1-p, p]."""
    return 1.0 - 1.0 / (1.0 / params.gamma - 1.0 / x)


def f2(params: ModelParams, x):
    """Two-step map of an 'ab'-coded block; attracts to 1-p on [1-p, p)."""
    return 1.0 / (1.0 / params.gamma - 1.0 / (1.0 - x))
