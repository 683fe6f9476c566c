"""Class numbers of quadratic orders by enumerating reduced binary forms.

Definite forms: one reduced representative per SL2(Z) class.  Indefinite
forms: reduced forms fall into cycles under the right-neighbour operator and
each cycle is one narrow class.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt
from typing import NamedTuple

from .cache import CLASS_NUMBERS
from .exact_arith import (
    Discriminant,
    DomainError,
    as_integer,
    discriminant_of_field,
    factorize,
    is_fundamental_discriminant,
    is_square,
    kronecker_symbol,
)
from .real_units import fundamental_unit_of_field


class BinaryQuadraticForm(NamedTuple):
    a: int
    b: int
    c: int

    @property
    def discriminant(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    def is_primitive(self) -> bool:
        return gcd(gcd(self.a, self.b), self.c) == 1

    def is_reduced(self) -> bool:
        """Reduced predicate for positive-definite forms."""
        a, b, c = self
        if a <= 0 or not abs(b) <= a <= c:
            return False
        if b < 0 and (-b == a or a == c):
            return False
        return True

    def __call__(self, x: int, y: int) -> int:
        return self.a * x * x + self.b * x * y + self.c * y * y


@dataclass(frozen=True)
class ImaginaryOrderSpec:
    """The order of conductor ``conductor`` in the imaginary quadratic field
    of discriminant ``fundamental_discriminant``."""

    fundamental_discriminant: int
    conductor: int = 1

    def __post_init__(self):
        d0 = int(self.fundamental_discriminant)
        object.__setattr__(self, "fundamental_discriminant", d0)
        if d0 >= 0 or not is_fundamental_discriminant(d0):
            raise DomainError(f"{d0} is not a negative fundamental discriminant")
        if self.conductor < 1:
            raise DomainError(f"conductor must be positive, got {self.conductor}")

    @property
    def discriminant(self) -> int:
        return self.conductor**2 * self.fundamental_discriminant


def _check_negative(D) -> int:
    D = int(D)
    Discriminant(D)
    if D >= 0:
        raise DomainError(f"expected a negative discriminant, got {D}")
    return D


def reduced_forms(D) -> list[BinaryQuadraticForm]:
    """Reduced primitive positive-definite forms of discriminant D, sorted."""
    D = _check_negative(D)
    out = []
    bmax = isqrt(-D // 3)
    for b in range(D % 2, bmax + 1, 2):
        n = (b * b - D) // 4  # = a*c
        a = max(b, 1)
        while a * a <= n:
            if n % a == 0:
                c = n // a
                if gcd(gcd(a, b), c) == 1:
                    out.append(BinaryQuadraticForm(a, b, c))
                    if 0 < b < a < c:
                        out.append(BinaryQuadraticForm(a, -b, c))
            a += 1
    out.sort()
    return out


def reduce_definite(form: BinaryQuadraticForm) -> BinaryQuadraticForm:
    """The reduced form properly equivalent to a positive-definite ``form``."""
    a, b, c = form
    if a <= 0 or form.discriminant >= 0:
        raise DomainError(f"{form} is not positive definite")
    while True:
        # translate x -> x + k y to bring b into (-a, a]
        k = (a - b) // (2 * a)
        b, c = b + 2 * a * k, a * k * k + b * k + c
        if a > c:
            a, b, c = c, -b, a
            continue
        if b < 0 and (-b == a or a == c):
            b = -b
        return BinaryQuadraticForm(a, b, c)


def act(form: BinaryQuadraticForm, m: tuple[int, int, int, int]) -> BinaryQuadraticForm:
    """form(p x + q y, r x + s y) for m = (p, q, r, s)."""
    p, q, r, s = m
    a, b, c = form
    return BinaryQuadraticForm(
        a * p * p + b * p * r + c * r * r,
        2 * a * p * q + b * (p * s + q * r) + 2 * c * r * s,
        a * q * q + b * q * s + c * s * s,
    )


def class_number_imaginary(D) -> int:
    """Number of classes of primitive positive-definite forms of discriminant D."""
    D = _check_negative(D)
    h = CLASS_NUMBERS.get(D)
    if h is None:
        h = len(reduced_forms(D))
        CLASS_NUMBERS.put(D, h)
    return h


def imaginary_unit_count(D) -> int:
    """|O^x| for the imaginary quadratic order of discriminant D."""
    D = _check_negative(D)
    return {-3: 6, -4: 4}.get(D, 2)


def class_number_order(spec: ImaginaryOrderSpec) -> int:
    """h of a non-maximal imaginary quadratic order via the conductor formula."""
    d0, f = spec.fundamental_discriminant, spec.conductor
    h = Fraction(class_number_imaginary(d0) * f)
    for ell in factorize(f):
        h *= 1 - Fraction(kronecker_symbol(d0, ell), ell)
    if f > 1:
        h /= imaginary_unit_count(d0) // 2
    return as_integer(h, f"h(R_{f}) for D0={d0}")


# -- indefinite forms ------------------------------------------------------


def reduced_indefinite_forms(D: int) -> list[BinaryQuadraticForm]:
    """Reduced primitive forms of a positive non-square discriminant D:
    0 < b < sqrt D and sqrt D - b < 2|a| < sqrt D + b."""
    Discriminant(D)
    if D <= 0 or is_square(D):
        raise DomainError(f"expected a positive non-square discriminant, got {D}")
    s = isqrt(D)
    out = []
    for b in range(s, 0, -1):
        if (b - D) % 2:
            continue
        n = (D - b * b) // 4  # = -a*c
        for a in range(1, isqrt(n) + 1):
            if n % a:
                continue
            for m in {a, n // a}:
                if 2 * m + b > s and 2 * m - b <= s:
                    for sgn in (1, -1):
                        f = BinaryQuadraticForm(sgn * m, b, -sgn * (n // m))
                        if f.is_primitive():
                            out.append(f)
    out.sort()
    return out


def rho(form: BinaryQuadraticForm) -> BinaryQuadraticForm:
    """Right neighbour (c, b', c') with b' = -b mod 2|c| and sqrt D - 2|c| < b' < sqrt D."""
    a, b, c = form
    D = form.discriminant
    s = isqrt(D)
    m = 2 * abs(c)
    b2 = s - (s + b) % m
    return BinaryQuadraticForm(c, b2, (b2 * b2 - D) // (4 * c))


def indefinite_cycles(D: int) -> list[list[BinaryQuadraticForm]]:
    remaining = set(reduced_indefinite_forms(D))
    cycles = []
    while remaining:
        start = min(remaining)
        cyc = [start]
        f = rho(start)
        while f != start:
            if f not in remaining:
                raise ArithmeticError(f"rho left the reduced set at {f}")
            cyc.append(f)
            f = rho(f)
        remaining.difference_update(cyc)
        cycles.append(cyc)
    return cycles


def narrow_class_number(D: int) -> int:
    return len(indefinite_cycles(D))


def class_number_real(D) -> int:
    """Wide class number of the real quadratic field of fundamental discriminant D."""
    D = int(D)
    if D <= 0 or not is_fundamental_discriminant(D):
        raise DomainError(f"class_number_real: {D} is not a positive fundamental discriminant")
    h = CLASS_NUMBERS.get(D)
    if h is None:
        hplus = narrow_class_number(D)
        d = D if D % 4 == 1 else D // 4
        if fundamental_unit_of_field(d).norm == -1:
            h = hplus
        else:
            h = as_integer(Fraction(hplus, 2), f"h+({D})/2")
        CLASS_NUMBERS.put(D, h)
    return h


def h_sqrt(d: int) -> int:
    """Class number of Q(sqrt d) for squarefree d not in {0, 1}."""
    disc = discriminant_of_field(d).value
    return class_number_imaginary(disc) if disc < 0 else class_number_real(disc)


def class_number(D: int) -> int:
    """Class number dispatch on the sign of D (negative: any discriminant;
    positive: fundamental)."""
    return class_number_imaginary(D) if D < 0 else class_number_real(D)
