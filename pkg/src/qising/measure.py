"""Production evaluator of the zero-temperature cylinder measure.

The measure satisfies the two-term front-extension recursion

    mu(k0 k1 ... kn) = a(k0,k1) mu(k1 ... kn) + b(k0,k1) mu(k2 ... kn)

with mu(single symbol) = 1/2 and mu(empty word) = 1, so a word is
evaluated suffix-first in O(n).  The same recursion, vectorized over all
words of a given length, drives the table enumerator and the exact
sampler (words are grown at the front and reversed at the end, which is
measure-preserving because mu is reversal invariant).
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from math import fsum

import numpy as np

from .params import ModelParams, coeff_a, coeff_b, parse_word, word_str

ENUMERATION_CAP = 24

__all__ = [
    "MeasureState",
    "CylinderTable",
    "mu",
    "initial_state",
    "extend_front",
    "enumerate_cylinders",
    "sample",
    "sample_many",
]


@dataclass(frozen=True)
class MeasureState:
    """Pair (mu of the current word, mu of its first-symbol-dropped tail)."""

    mu_w: float
    mu_tail: float
    first: int
    length: int


def initial_state(params: ModelParams, symbol: int) -> MeasureState:
    return MeasureState(mu_w=0.5, mu_tail=1.0, first=symbol, length=1)


def extend_front(params: ModelParams, state: MeasureState, x: int) -> MeasureState:
    """Prepend symbol x in O(1)."""
    a = coeff_a(x, state.first, params)
    b = coeff_b(x, state.first, params)
    return MeasureState(mu_w=a * state.mu_w + b * state.mu_tail,
                        mu_tail=state.mu_w, first=x, length=state.length + 1)


def state_for(params: ModelParams, word) -> MeasureState:
    word = parse_word(word)
    state = initial_state(params, word[-1])
    for x in reversed(word[:-1]):
        state = extend_front(params, state, x)
    return state


def mu(params: ModelParams, word) -> float:
    """Probability of the cylinder given by `word`, in O(len(word))."""
    return state_for(params, word).mu_w


def _word_index(word) -> int:
    """Lexicographic index: symbol at position 0 is the most significant bit."""
    idx = 0
    for s in word:
        idx = (idx << 1) | (s - 1)
    return idx


def _index_word(idx: int, n: int) -> tuple:
    return tuple(((idx >> (n - 1 - i)) & 1) + 1 for i in range(n))


@dataclass
class CylinderTable:
    """All 2^n cylinder probabilities of length n, in lexicographic order."""

    length: int
    probabilities: np.ndarray

    def prob(self, word) -> float:
        word = parse_word(word)
        if len(word) != self.length:
            raise ValueError("word length does not match table")
        return float(self.probabilities[_word_index(word)])

    def items(self):
        for idx, value in enumerate(self.probabilities):
            yield _index_word(idx, self.length), float(value)

    def total(self) -> float:
        return fsum(self.probabilities.tolist())

    def to_csv(self, header_lines=()) -> str:
        buf = io.StringIO()
        for line in header_lines:
            buf.write(f"# {line}\n")
        writer = csv.writer(buf)
        writer.writerow(["word", "probability"])
        for word, value in self.items():
            writer.writerow([word_str(word), repr(value)])
        return buf.getvalue()

    def to_json(self, config=None) -> str:
        rows = {word_str(w): v for w, v in self.items()}
        payload = {"config": config or {}, "rows": rows}
        return json.dumps(payload, indent=2)


def enumerate_cylinders(params: ModelParams, n: int) -> CylinderTable:
    """Vectorized shared-suffix enumeration of all words of length n."""
    if not 1 <= n <= ENUMERATION_CAP:
        raise ValueError(f"n must be in [1, {ENUMERATION_CAP}], got {n}")
    gamma = params.gamma
    mu_w = np.array([0.5, 0.5])
    mu_tail = np.array([1.0, 1.0])
    for length in range(1, n):
        # suffix index layout: first symbol of the suffix is the top bit
        first_is_two = (np.arange(2 ** length) >> (length - 1)) & 1
        blocks = []
        for x in (1, 2):
            same = first_is_two == (x - 1)
            a = np.where(same, 0.0, 1.0)
            b = np.where(same, gamma, -gamma)
            blocks.append(a * mu_w + b * mu_tail)
        mu_tail = np.concatenate([mu_w, mu_w])
        mu_w = np.concatenate(blocks)
    return CylinderTable(length=n, probabilities=mu_w)


def sample_many(params: ModelParams, seed: int, n: int, count: int):
    """Draw `count` independent words of length n with law mu.

    Returns (words, probs): an int8 array of shape (count, n) over {1, 2}
    and the exact measure of each sampled word.  The first symbol is drawn
    uniformly; each further symbol is prepended with the conditional
    probability mu(x w)/mu(w) and the word is reversed at the end.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    rng = np.random.default_rng(seed)
    gamma = params.gamma
    words = np.empty((count, n), dtype=np.int8)
    first = rng.integers(1, 3, size=count, dtype=np.int8)
    words[:, 0] = first
    mu_w = np.full(count, 0.5)
    mu_tail = np.ones(count)
    for i in range(1, n):
        same1 = first == 1
        mu_1w = np.where(same1, 0.0, 1.0) * mu_w + np.where(same1, gamma, -gamma) * mu_tail
        take_one = rng.random(count) * mu_w < mu_1w
        x = np.where(take_one, 1, 2).astype(np.int8)
        new_mu = np.where(take_one, mu_1w, mu_w - mu_1w)
        if np.any(new_mu <= 0.0):
            raise RuntimeError("sampler reached a zero-probability state")
        mu_tail = mu_w
        mu_w = new_mu
        words[:, i] = x
        first = x
    return words[:, ::-1].copy(), mu_w


def sample(params: ModelParams, seed: int, n: int) -> tuple:
    """Single word of length n with law mu (deterministic under `seed`)."""
    words, _ = sample_many(params, seed, n, 1)
    return tuple(int(s) for s in words[0])
