"""Exact rationals, Kronecker symbols and quadratic discriminants."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt

# Fraction normalizes on construction and every operation: denominator > 0,
# lowest terms, arbitrary-precision components.
ExactRational = Fraction


class DomainError(ValueError):
    """An input violates the documented precondition of an operation."""


class IntegralityError(ArithmeticError):
    """A quantity that must be an integer (or an internal identity) failed.

    Only raised when the arithmetic pipeline itself is inconsistent; never
    caused by user input.
    """


def as_integer(value: Fraction | int, what: str = "value") -> int:
    value = Fraction(value)
    if value.denominator != 1:
        raise IntegralityError(f"{what} is not integral: {value}")
    return value.numerator


def fmt_rational(value: Fraction | int) -> str:
    value = Fraction(value)
    return f"{value.numerator}/{value.denominator}"


def parse_rational(text: str) -> Fraction:
    return Fraction(text)


def factorize(n: int) -> dict[int, int]:
    """Prime factorization of |n| by trial division."""
    n = abs(n)
    if n == 0:
        raise DomainError("cannot factor 0")
    out: dict[int, int] = {}
    for p in (2, 3):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    d = 5
    while d * d <= n:
        for p in (d, d + 2):
            while n % p == 0:
                out[p] = out.get(p, 0) + 1
                n //= p
        d += 6
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0 or n % 3 == 0:
        return False
    d = 5
    while d * d <= n:
        if n % d == 0 or n % (d + 2) == 0:
            return False
        d += 6
    return True


def primes_up_to(n: int) -> list[int]:
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, isqrt(n) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(range(i * i, n + 1, i)))
    return [i for i in range(n + 1) if sieve[i]]


def is_squarefree(n: int) -> bool:
    return n != 0 and all(e == 1 for e in factorize(n).values())


def is_square(n: int) -> bool:
    return n >= 0 and isqrt(n) ** 2 == n


def divisors(n: int) -> list[int]:
    n = abs(n)
    divs = [1]
    for p, e in factorize(n).items():
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return sorted(divs)


def kronecker_symbol(a: int, n: int) -> int:
    """Kronecker symbol (a/n), with (a/2) = 0, 1, -1 for a even, a = ±1 mod 8,
    a = ±3 mod 8, and (a/-1) = sign(a)."""
    if n == 0:
        raise DomainError("kronecker_symbol: n must be nonzero")
    result = 1
    if n < 0:
        n = -n
        if a < 0:
            result = -result
    v = (n & -n).bit_length() - 1
    n >>= v
    if v:
        if a % 2 == 0:
            return 0
        if v % 2 and a % 8 in (3, 5):
            result = -result
    # Jacobi symbol (a/n) for odd n > 0
    a %= n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


@dataclass(frozen=True)
class Discriminant:
    value: int

    def __post_init__(self):
        if self.value == 0 or self.value % 4 not in (0, 1):
            raise DomainError(f"{self.value} is not a quadratic discriminant")

    @property
    def is_fundamental(self) -> bool:
        return is_fundamental_discriminant(self.value)

    def __int__(self):
        return self.value


def is_fundamental_discriminant(d: int) -> bool:
    if d in (0, 1):
        return False
    if d % 4 == 1:
        return is_squarefree(d)
    if d % 4 == 0:
        m = d // 4
        return m % 4 in (2, 3) and is_squarefree(m)
    return False


def fundamental_discriminant(d: int) -> Discriminant:
    """Wrap d after checking it is a fundamental discriminant."""
    if not is_fundamental_discriminant(d):
        raise DomainError(f"{d} is not a fundamental discriminant")
    return Discriminant(d)


def discriminant_of_field(d: int) -> Discriminant:
    """Discriminant of Q(sqrt(d)) for squarefree d not in {0, 1}."""
    if d in (0, 1) or not is_squarefree(d):
        raise DomainError(f"discriminant_of_field: {d} must be squarefree and not 0 or 1")
    return Discriminant(d if d % 4 == 1 else 4 * d)


def conductor_and_fundamental(d: int) -> tuple[int, int]:
    """Split a discriminant as d = f^2 * d0 with d0 fundamental."""
    Discriminant(d)
    f = 1
    for p, e in factorize(d).items():
        f *= p ** (e // 2)
    d0 = d // (f * f)
    # d0 is now the signed squarefree kernel; d = 0,1 mod 4 guarantees f is
    # even whenever the kernel is 2,3 mod 4
    if d0 % 4 != 1:
        d0 *= 4
        f //= 2
    return f, d0


__all__ = [
    "ExactRational",
    "DomainError",
    "IntegralityError",
    "Discriminant",
    "as_integer",
    "fmt_rational",
    "parse_rational",
    "kronecker_symbol",
    "discriminant_of_field",
    "fundamental_discriminant",
    "is_fundamental_discriminant",
    "conductor_and_fundamental",
    "factorize",
    "divisors",
    "is_prime",
    "primes_up_to",
    "is_squarefree",
    "is_square",
    "gcd",
]
