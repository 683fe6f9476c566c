"""Class numbers of the orders O_1, O_8, O_16 of the totally definite
quaternion algebra over Q(sqrt p) unramified at all finite places, and of
maximal orders in the definite quaternion algebra over Q ramified at p.

O_8 and O_16 (index 8 and 16 in O_1) only exist for p = 1 mod 4.  All
values are evaluated in exact rationals; a non-integral class number raises
IntegralityError.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exact_arith import DomainError, as_integer, is_prime, kronecker_symbol
from .quadratic_forms import (
    BinaryQuadraticForm,
    class_number_imaginary,
    h_sqrt,
    reduced_forms,
)
from .real_units import unit_symbols
from .zeta_siegel import zeta_minus_one

SMALL_PRIME_H_O1 = {2: 1, 3: 2, 5: 1}


def _require_prime(p, op):
    if not isinstance(p, int) or not is_prime(p):
        raise DomainError(f"{op}: {p} is not prime")


def _require_1_mod_4(p, op):
    _require_prime(p, op)
    if p % 4 != 1:
        raise DomainError(f"{op}: p={p} must be 1 mod 4 (O_8 and O_16 need p = 1 mod 4)")


def zeta_F(p: int) -> Fraction:
    """zeta_F(-1) for F = Q(sqrt p)."""
    return zeta_minus_one(p if p % 4 == 1 else 4 * p)


def h_maximal_terms(p: int) -> list[tuple[str, Fraction]]:
    """Additive terms of h(O_1) for p > 5, each already scaled by h(sqrt p)."""
    hp = h_sqrt(p)
    z = zeta_F(p)
    if p % 4 == 1:
        return [
            ("h(sqrt p)*zeta/2", hp * z / 2),
            ("h(sqrt p)*h(sqrt -p)/8", Fraction(hp * h_sqrt(-p), 8)),
            ("h(sqrt p)*h(sqrt -3p)/6", Fraction(hp * h_sqrt(-3 * p), 6)),
        ]
    coeff = Fraction(13, 8) - Fraction(5, 8) * kronecker_symbol(2, p)
    return [
        ("h(sqrt p)*zeta/2", hp * z / 2),
        ("h(sqrt p)*(13/8-5/8*(2/p))*h(sqrt -p)", hp * coeff * h_sqrt(-p)),
        ("h(sqrt p)*h(sqrt -2p)/4", Fraction(hp * h_sqrt(-2 * p), 4)),
        ("h(sqrt p)*h(sqrt -3p)/6", Fraction(hp * h_sqrt(-3 * p), 6)),
    ]


def h_maximal(p: int) -> int:
    _require_prime(p, "h_maximal")
    if p in SMALL_PRIME_H_O1:
        return SMALL_PRIME_H_O1[p]
    return as_integer(sum(v for _, v in h_maximal_terms(p)), f"h(O_1) at p={p}")


def h_O8_terms(p: int) -> list[tuple[str, Fraction]]:
    s = kronecker_symbol(2, p)
    u = unit_symbols(p)
    scale = u.varpi_p * h_sqrt(p)
    return [
        ("(4-(2/p))*zeta/2", scale * (4 - s) * zeta_F(p) / 2),
        ("(2-(2/p))*h(sqrt -p)/24", scale * Fraction((2 - s) * h_sqrt(-p), 24)),
        ("delta*h(sqrt -3p)/3", scale * Fraction(u.delta_1_varpi * h_sqrt(-3 * p), 3)),
    ]


def h_O8(p: int) -> int:
    _require_1_mod_4(p, "h_O8")
    return as_integer(sum(v for _, v in h_O8_terms(p)), f"h(O_8) at p={p}")


def h_O16_terms(p: int) -> list[tuple[str, Fraction]]:
    s = kronecker_symbol(2, p)
    scale = unit_symbols(p).varpi_p * h_sqrt(p)
    return [
        ("(3-2(2/p))*zeta", scale * (3 - 2 * s) * zeta_F(p)),
        ("(2-(2/p))*h(sqrt -p)/12", scale * Fraction((2 - s) * h_sqrt(-p), 12)),
        ("h(sqrt -3p)/6", scale * Fraction(h_sqrt(-3 * p), 6)),
    ]


def h_O16(p: int) -> int:
    _require_1_mod_4(p, "h_O16")
    return as_integer(sum(v for _, v in h_O16_terms(p)), f"h(O_16) at p={p}")


def superspecial_count(p: int) -> int:
    """Number of superspecial classes in the isogeny class of sqrt(p^a), a odd."""
    _require_prime(p, "superspecial_count")
    if p == 2 or p % 4 == 3:
        return h_maximal(p)
    total = h_maximal(p) + h_O8(p) + h_O16(p)
    if p == 5 and total != 3:
        raise ArithmeticError(f"h(O_1)+h(O_8)+h(O_16) at p=5 is {total}, expected 3")
    return total


def mass_superspecial(p: int) -> Fraction:
    """Sum over the superspecial classes of 1/[Aut : centre units], read off
    as the coefficient of (q - p) in the surface count."""
    _require_prime(p, "mass_superspecial")
    if p <= 5:
        raise DomainError("mass_superspecial: p must exceed 5 (use the closed forms for 2, 3, 5)")
    base = h_sqrt(p) * zeta_F(p) / 2
    if p % 4 == 3:
        return base
    return base * (1 + 5 * unit_symbols(p).beta_p)


def mass_superspecial_from_orders(p: int) -> Fraction:
    """The same mass assembled order by order: the mass term of each class
    number formula for O_1, O_8, O_16."""
    _require_prime(p, "mass_superspecial_from_orders")
    hp, z = h_sqrt(p), zeta_F(p)
    m1 = hp * z / 2
    if p == 2 or p % 4 == 3:
        return m1
    s = kronecker_symbol(2, p)
    varpi = unit_symbols(p).varpi_p
    m8 = varpi * hp * (4 - s) * z / 2
    m16 = varpi * hp * (3 - 2 * s) * z
    return m1 + m8 + m16


@dataclass(frozen=True)
class OrderClassNumbers:
    p: int
    h_O1: int
    h_O8: int | None
    h_O16: int | None
    mass_sp: Fraction | None

    def __post_init__(self):
        if (self.h_O8 is not None) != (self.p % 4 == 1):
            raise DomainError("h_O8/h_O16 are present exactly when p = 1 mod 4")


def order_class_numbers(p: int) -> OrderClassNumbers:
    _require_prime(p, "order_class_numbers")
    one_mod_4 = p % 4 == 1
    return OrderClassNumbers(
        p=p,
        h_O1=h_maximal(p),
        h_O8=h_O8(p) if one_mod_4 else None,
        h_O16=h_O16(p) if one_mod_4 else None,
        mass_sp=mass_superspecial(p) if p > 5 else None,
    )


# -- definite quaternion algebra over Q ramified at {p, oo} ----------------


def deuring_terms(p: int) -> list[tuple[str, Fraction]]:
    return [
        ("(p-1)/12", Fraction(p - 1, 12)),
        ("(1-(-3/p))/3", Fraction(1 - kronecker_symbol(-3, p), 3)),
        ("(1-(-4/p))/4", Fraction(1 - kronecker_symbol(-4, p), 4)),
    ]


def deuring_closed_form(p: int) -> int:
    _require_prime(p, "deuring_closed_form")
    return as_integer(sum(v for _, v in deuring_terms(p)), f"Deuring class number at p={p}")


def _unit_group_order(disc: int) -> int:
    """|B^x| counted as representations of 1 by the principal form."""
    principal = reduced_forms(disc)[0]
    a, b, c = principal
    # a x^2 + b x y + c y^2 = 1 forces |y| <= 2/sqrt(-disc) + 1 and |x| small
    return sum(
        1
        for x in range(-2, 3)
        for y in range(-2, 3)
        if BinaryQuadraticForm(a, b, c)(x, y) == 1
    )


def eichler_class_number_over_Q(p: int) -> int:
    """Class number of a maximal order in the definite quaternion algebra
    over Q ramified at p, from the general class number formula with A = Z:

        h = Mass + 1/2 * sum over CM orders B with w(B) > 1 of
            (2 - delta(B)) h(B) (1 - 1/w(B)) prod_l m_l(B)

    Mass counts 1/[O_i^x : Z^x] and equals (p-1)/12.  Over Q every quadratic
    order is stable under conjugation, so delta(B) = 1.  Local optimal
    embedding numbers are 1 away from p and 1 - (B/p) at p.
    """
    _require_prime(p, "eichler_class_number_over_Q")
    mass = Fraction(p - 1, 12)
    elliptic = Fraction(0)
    # an order of discriminant D < -4 has unit group {+-1}: the principal form
    # x^2 + bxy + cy^2 with c > 1 only represents 1 at (+-1, 0)
    for disc in (-3, -4):
        units = _unit_group_order(disc)
        w = units // 2
        if w <= 1:
            continue
        m_p = 1 - kronecker_symbol(disc, p)
        elliptic += Fraction(1, 2) * (2 - 1) * class_number_imaginary(disc) * (1 - Fraction(1, w)) * m_p
    return as_integer(mass + elliptic, f"Eichler class number over Q at p={p}")


def deuring_class_number(p: int) -> int:
    """Class number of a maximal order in the quaternion algebra over Q
    ramified at {p, oo}; both derivations must agree."""
    closed = deuring_closed_form(p)
    general = eichler_class_number_over_Q(p)
    if closed != general:
        raise ArithmeticError(f"Deuring class number mismatch at p={p}: {closed} != {general}")
    return closed
