"""Exact sizes of isogeny classes of abelian varieties over finite fields."""

from .census import (
    census_divisor_chain,
    census_even,
    census_sqrt_minus_p,
    census_sqrt_q,
)
from .exact_arith import DomainError, ExactRational, IntegralityError

__version__ = "0.1.0"

__all__ = [
    "DomainError",
    "ExactRational",
    "IntegralityError",
    "census_divisor_chain",
    "census_even",
    "census_sqrt_minus_p",
    "census_sqrt_q",
]
