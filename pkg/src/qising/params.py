"""Model parameters for the zero-temperature spin-chain measure.

Everything downstream is a function of a single angle theta in (0, pi/2):
the observable's eigenbasis is rotated by theta, which fixes the trace
constant beta1 = sin(2*theta), the recursion weight gamma = (1 - beta1^2)/4
and the Bernoulli parameter p = (1 + beta1)/2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

SIGMA_X = np.array([[0.0, 1.0], [1.0, 0.0]])

__all__ = [
    "ModelParams",
    "new_params",
    "parse_theta",
    "parse_word",
    "word_str",
    "coeff_a",
    "coeff_b",
    "SIGMA_X",
]


class DomainError(ValueError):
    """Parameter outside its admissible range."""


@dataclass(frozen=True)
class ModelParams:
    """Immutable bundle of the constants derived from theta.

    ``degenerate`` is set when gamma is exactly zero (theta = pi/4), where
    the measure collapses onto the two alternating sequences and several
    ratios below stop being defined.
    """

    theta: float
    beta1: float
    gamma: float
    p: float
    degenerate: bool = field(default=False)

    def projectors(self):
        """Rank-one spectral projectors (P1, P2) of the site observable."""
        c, s = math.cos(self.theta), math.sin(self.theta)
        p1 = np.array([[c * c, c * s], [c * s, s * s]])
        p2 = np.array([[s * s, -c * s], [-c * s, c * c]])
        return p1, p2

    def beta_of(self, symbol: int) -> float:
        """Trace of sigma_x composed with the projector of `symbol`."""
        return self.beta1 if symbol == 1 else -self.beta1


def new_params(theta: float) -> ModelParams:
    """Build ModelParams, rejecting theta outside the open interval (0, pi/2)."""
    if not 0.0 < theta < math.pi / 2:
        raise DomainError(f"theta must lie in (0, pi/2), got {theta!r}")
    beta1 = math.sin(2.0 * theta)
    gamma = (1.0 - beta1 * beta1) / 4.0
    p = (1.0 + beta1) / 2.0
    return ModelParams(theta=theta, beta1=beta1, gamma=gamma, p=p,
                       degenerate=(gamma == 0.0))


_THETA_LITERALS = {
    "pi/6": math.pi / 6,
    "pi/4": math.pi / 4,
    "pi/3": math.pi / 3,
}


def parse_theta(text: str) -> float:
    """Parse a CLI theta argument: decimal radians or one of pi/6, pi/4, pi/3."""
    key = text.strip().lower().replace(" ", "")
    if key in _THETA_LITERALS:
        return _THETA_LITERALS[key]
    try:
        return float(text)
    except ValueError:
        raise DomainError(f"cannot parse theta {text!r}") from None


def parse_word(text) -> tuple:
    """Normalize a word to a tuple over {1, 2}.

    Accepts a string like "1121" or any iterable of ints/characters.
    """
    if isinstance(text, str):
        symbols = tuple(int(ch) for ch in text.strip())
    else:
        symbols = tuple(int(s) for s in text)
    if len(symbols) < 1:
        raise DomainError("word must have length >= 1")
    if any(s not in (1, 2) for s in symbols):
        raise DomainError(f"word symbols must be 1 or 2, got {symbols}")
    return symbols


def word_str(word) -> str:
    return "".join(str(s) for s in word)


def coeff_a(k0: int, k1: int, params: ModelParams) -> float:
    """Front-extension weight on the one-step-shorter cylinder.

    Equals (1 - beta_{k0}/beta_{k1})/2, which is 0 for equal symbols and 1
    otherwise because beta2 = -beta1.
    """
    return 0.0 if k0 == k1 else 1.0


def coeff_b(k0: int, k1: int, params: ModelParams) -> float:
    """Front-extension weight on the two-step-shorter cylinder.

    Equals beta_{k0} (1/beta_{k1} - beta_{k1})/4 = +gamma for equal symbols
    and -gamma otherwise.
    """
    return params.gamma if k0 == k1 else -params.gamma
