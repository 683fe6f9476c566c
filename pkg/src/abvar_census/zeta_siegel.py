"""zeta_F(-1) for a real quadratic field F from a finite representation sum.

    zeta_F(-1) = 1/60 * sum of a over all (a, b, c) with b^2 + 4ac = d_F,
                 b in Z and a, c >= 1.
"""
from __future__ import annotations

from fractions import Fraction
from math import isqrt

from .exact_arith import DomainError, is_fundamental_discriminant


def _b_contribution(d: int, b: int) -> int:
    n = (d - b * b) // 4  # = a*c
    total = 0
    a = 1
    while a * a <= n:
        if n % a == 0:
            total += a
            if a * a != n:
                total += n // a
        a += 1
    return total


def siegel_sum(d: int, *, use_symmetry: bool = True) -> int:
    """The integer sum of a, i.e. 60 * zeta_F(-1)."""
    s = isqrt(d - 1)  # b^2 < d since c > 0
    if use_symmetry:
        total = _b_contribution(d, 0) if d % 2 == 0 else 0
        for b in range(2 - d % 2, s + 1, 2):
            total += 2 * _b_contribution(d, b)
        return total
    return sum(_b_contribution(d, b) for b in range(-s, s + 1) if (b - d) % 2 == 0)


def zeta_minus_one(d_F, *, use_symmetry: bool = True) -> Fraction:
    d = int(d_F)
    if d <= 0 or not is_fundamental_discriminant(d):
        raise DomainError(f"zeta_minus_one: {d} is not a positive fundamental discriminant")
    return Fraction(siegel_sum(d, use_symmetry=use_symmetry), 60)
