"""Recoding pipeline onto the Bernoulli shift.

A symbol word k is recoded into an ab-word m of adjacent-pair equalities
(equal -> 'a', change -> 'b'), m is cut into two-letter blocks coded over
{alpha, beta} (aa -> nothing, ab -> alpha, ba -> beta, bb -> beta alpha),
and adjacent equal letters cancel, leaving one of the alternating normal
forms.  The conjugacy map sends a point to the binary sequence of the
limit classes of its shifts, which pushes the measure forward to the
independent (p, 1-p) coin.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .jacobian import classify_many
from .params import ModelParams, parse_word

ALPHA = "α"
BETA = "β"

__all__ = [
    "ALPHA",
    "BETA",
    "ConjugacyOutput",
    "to_ab",
    "from_ab",
    "to_alphabeta",
    "reduce_word",
    "conjugacy_h",
    "conjugacy_many",
]


def to_ab(word) -> str:
    """ab-word of adjacent pair equalities; length n-1."""
    word = parse_word(word)
    if len(word) < 2:
        raise ValueError("need at least two symbols")
    return "".join("a" if word[i] == word[i + 1] else "b"
                   for i in range(len(word) - 1))


def from_ab(m: str, k0: int) -> tuple:
    """Inverse of to_ab anchored at the first symbol k0."""
    if k0 not in (1, 2):
        raise ValueError("anchor symbol must be 1 or 2")
    out = [k0]
    for ch in m:
        if ch == "a":
            out.append(out[-1])
        elif ch == "b":
            out.append(3 - out[-1])
        else:
            raise ValueError(f"bad ab symbol {ch!r}")
    return tuple(out)


_BLOCKS = {"aa": "", "ab": ALPHA, "ba": BETA, "bb": BETA + ALPHA}


def to_alphabeta(m: str):
    """Blockwise alpha/beta code of an ab-word.

    Returns (w, leftover): the coded word and the unpaired trailing letter
    of an odd-length input ('' when none).
    """
    leftover = ""
    if len(m) % 2 == 1:
        m, leftover = m[:-1], m[-1]
    w = "".join(_BLOCKS[m[i:i + 2]] for i in range(0, len(m), 2))
    return w, leftover


def reduce_word(w: str) -> str:
    """Cancel adjacent equal letters until none remain (stack pass).

    The result strictly alternates, i.e. has one of the normal forms
    (alpha beta)^n [alpha] or (beta alpha)^n [beta].
    """
    stack = []
    for ch in w:
        if stack and stack[-1] == ch:
            stack.pop()
        else:
            stack.append(ch)
    return "".join(stack)


@dataclass
class ConjugacyOutput:
    """Leading coordinates of the conjugacy image of a word prefix.

    labels[j] is 0 for class A (Jacobian limit p), 1 for class B (limit
    1-p) and None when unresolved at the allowed depth or downgraded by
    the adjacent-label consistency pass.
    """

    word: tuple
    labels: list
    depths: list


def conjugacy_many(params: ModelParams, words: np.ndarray, num_coords: int,
                   epsilon: float = 1e-6, max_depth: int = 200):
    """Conjugacy coordinates c_0..c_{m-1} for each row of `words`.

    Each coordinate is classified independently on the shifted word; then
    resolved adjacent pairs must satisfy c_j = c_{j+1} xor (k_j == k_{j+1})
    and violating pairs are downgraded to unresolved (-1).
    """
    words = np.asarray(words)
    count, length = words.shape
    if num_coords > length - 1:
        raise ValueError("not enough symbols for the requested coordinates")
    labels = np.empty((count, num_coords), dtype=np.int8)
    depths = np.empty((count, num_coords), dtype=np.int32)
    for j in range(num_coords):
        lab, dep = classify_many(params, words[:, j:], epsilon, max_depth)
        labels[:, j] = lab
        depths[:, j] = dep
    for j in range(num_coords - 1):
        equal = words[:, j] == words[:, j + 1]
        expected = labels[:, j + 1] ^ equal.astype(np.int8)
        ok = (labels[:, j] == -1) | (labels[:, j + 1] == -1) | (labels[:, j] == expected)
        labels[~ok, j] = -1
        labels[~ok, j + 1] = -1
    return labels, depths


def conjugacy_h(params: ModelParams, word, epsilon: float = 1e-6,
                max_depth: int = 200, num_coords: int = None) -> ConjugacyOutput:
    """Conjugacy image of a single word prefix."""
    word = parse_word(word)
    if num_coords is None:
        num_coords = max(1, len(word) - max_depth)
    labels, depths = conjugacy_many(params, np.array([word]), num_coords,
                                    epsilon, max_depth)
    return ConjugacyOutput(
        word=word,
        labels=[None if v == -1 else int(v) for v in labels[0]],
        depths=[int(d) for d in depths[0]],
    )
