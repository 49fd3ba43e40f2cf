"""Zero-temperature spin-chain cylinder measure and its ergodic diagnostics."""

from .ldp import Observable
from .measure import enumerate_cylinders, mu, sample, sample_many
from .params import ModelParams, new_params, parse_theta, parse_word

__all__ = [
    "ModelParams",
    "Observable",
    "new_params",
    "parse_theta",
    "parse_word",
    "mu",
    "enumerate_cylinders",
    "sample",
    "sample_many",
]

__version__ = "0.1.0"
