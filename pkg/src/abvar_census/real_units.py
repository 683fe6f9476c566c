"""Fundamental units of real quadratic fields from continued fractions.

Also derives the unit index of Z[sqrt(p)] in the maximal order and the two
symbols built from it (``varpi_p`` and ``beta_p``) used by the supersingular
surface counts.  ``varpi_p`` is read as ``3 / [O_F^x : Z[sqrt p]^x]`` with
F = Q(sqrt p), the real field; the imaginary field that sometimes appears in
print in this definition cannot be meant, since its unit group does not
contain Z[sqrt p]^x.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import isqrt

from .exact_arith import DomainError, is_prime, is_square, is_squarefree, kronecker_symbol


def pqa(P0: int, Q0: int, D: int):
    """Continued fraction of (P0 + sqrt(D)) / Q0.

    Yields ``(P_i, Q_i, a_i, G_i, B_i)`` forever, where
    G_i^2 - D*B_i^2 = (-1)^(i+1) * Q_{i+1} * Q0.  Requires Q0 | D - P0^2.
    """
    if D <= 0 or is_square(D):
        raise DomainError(f"pqa: D={D} must be a positive non-square")
    if Q0 == 0 or (D - P0 * P0) % Q0:
        raise DomainError("pqa: Q0 must divide D - P0^2")
    s = isqrt(D)
    P, Q = P0, Q0
    G2, G1 = -P0, Q0
    B2, B1 = 1, 0
    while True:
        # floor((P + sqrt D)/Q) with sqrt D irrational
        a = (P + s) // Q if Q > 0 else (P + s + 1) // Q
        G = a * G1 + G2
        B = a * B1 + B2
        yield P, Q, a, G, B
        P = a * Q - P
        Q = (D - P * P) // Q
        G2, G1 = G1, G
        B2, B1 = B1, B


def continued_fraction_sqrt(n: int) -> tuple[int, list[int]]:
    """Return ``(a0, period)`` for sqrt(n); the period ends at the first
    recurrence of the complete-quotient state."""
    if n < 2 or is_square(n):
        raise DomainError(f"continued_fraction_sqrt: {n} must be a non-square >= 2")
    it = pqa(0, 1, n)
    _, _, a0, _, _ = next(it)
    P1, Q1, a1, _, _ = next(it)
    period = [a1]
    for P, Q, a, _, _ in it:
        if (P, Q) == (P1, Q1):
            return a0, period
        period.append(a)


@dataclass(frozen=True)
class FundamentalUnit:
    """(x + y*sqrt(d)) / denom with (x^2 - d*y^2) / denom^2 = norm."""

    d: int
    x: int
    y: int
    denom: int
    norm: int

    def __post_init__(self):
        if self.x * self.x - self.d * self.y * self.y != self.norm * self.denom**2:
            raise ArithmeticError(f"{self} does not satisfy its norm equation")
        if self.denom == 2 and (self.d % 4 != 1 or (self.x - self.y) % 2):
            raise ArithmeticError(f"{self} is not in the maximal order")

    @property
    def in_sqrt_order(self) -> bool:
        """True if the unit lies in Z[sqrt d]."""
        return self.denom == 1

    def power(self, k: int) -> tuple[int, int, int]:
        """k-th power as ``(x, y, denom)`` in lowest terms (denom 1 or 2)."""
        x, y = 1, 0
        for _ in range(k):
            # (x + y w)(X + Y w), accumulated with denominator denom^j
            x, y = x * self.x + self.d * y * self.y, x * self.y + y * self.x
        den = self.denom**k
        while den > 1 and x % 2 == 0 and y % 2 == 0:
            x, y, den = x // 2, y // 2, den // 2
        return x, y, den

    def __str__(self):
        s = f"{self.x} + {self.y}*sqrt({self.d})"
        return f"({s})/{self.denom}" if self.denom != 1 else s


def fundamental_unit_of_field(d: int) -> FundamentalUnit:
    """Fundamental unit (> 1) of the maximal order of Q(sqrt d), d squarefree > 1."""
    if d < 2 or not is_squarefree(d):
        raise DomainError(f"fundamental_unit_of_field: {d} must be squarefree and > 1")
    Q0 = 2 if d % 4 == 1 else 1
    for i, (_, _, _, G, B) in enumerate(pqa(Q0 - 1, Q0, d)):
        # Q_{i+1} is recoverable from the norm relation; stop at its first return to Q0
        n = G * G - d * B * B
        if abs(n) == Q0 * Q0:
            sign = 1 if n > 0 else -1
            if Q0 == 2 and G % 2 == 0 and B % 2 == 0:
                return FundamentalUnit(d, G // 2, B // 2, 1, sign)
            return FundamentalUnit(d, G, B, Q0, sign)


def fundamental_unit(p: int) -> FundamentalUnit:
    if not is_prime(p):
        raise DomainError(f"fundamental_unit: {p} is not prime")
    return fundamental_unit_of_field(p)


def unit_index(p: int) -> int:
    """[O_F^x : Z[sqrt p]^x] for F = Q(sqrt p); always 1 or 3."""
    return 1 if fundamental_unit(p).in_sqrt_order else 3


@dataclass(frozen=True)
class UnitSymbols:
    varpi_p: int
    delta_1_varpi: int
    beta_p: int


def unit_symbols(p: int) -> UnitSymbols:
    if not is_prime(p) or p % 4 != 1:
        raise DomainError(f"unit_symbols: p={p} must be a prime = 1 mod 4")
    varpi = 3 // unit_index(p)
    return UnitSymbols(
        varpi_p=varpi,
        delta_1_varpi=1 if varpi == 1 else 0,
        beta_p=varpi * (2 - kronecker_symbol(2, p)),
    )
