"""Sizes of isogeny classes |A_pi| over F_q for the Weil numbers

* pi = +-sqrt(q), q = p^a with a odd (simple supersingular surfaces),
* pi = +-sqrt(q), a even (supersingular elliptic curves over Q-bar rational),
* pi = sqrt(-p) (supersingular elliptic curves over F_p),
* imaginary quadratic pi whose Tate-module lattices are classified by
  divisor chains of the prime-to-p conductor.
"""
from __future__ import annotations

from dataclasses import asdict, dataclass, field
from fractions import Fraction
from math import comb, gcd
from typing import Any

from .exact_arith import (
    DomainError,
    IntegralityError,
    as_integer,
    divisors,
    factorize,
    fmt_rational,
    is_fundamental_discriminant,
    is_prime,
    kronecker_symbol,
)
from .quadratic_forms import ImaginaryOrderSpec, class_number_order, h_sqrt
from .quaternion_orders import (
    deuring_class_number,
    deuring_terms,
    mass_superspecial,
    superspecial_count,
    zeta_F,
)
from .real_units import unit_symbols

# (superspecial classes, |rho(Aut)| for each) where rho is not injective
SMALL_PRIME_RHO_ORDERS = {2: (6,), 3: (24, 8)}


@dataclass
class CensusQuery:
    variant: str
    p: int
    a: int | None = None
    d0: int | None = None
    D: int | None = None
    n: int | None = None
    a_list: list[int] | None = None

    def as_dict(self) -> dict[str, Any]:
        return {k: v for k, v in asdict(self).items() if v is not None}


@dataclass
class CensusResult:
    query: CensusQuery
    count: int
    case: str
    breakdown: list[tuple[str, Fraction]] = field(default_factory=list)
    sp_count: int | None = None
    mass: Fraction | None = None

    def __post_init__(self):
        total = sum((v for _, v in self.breakdown), Fraction(0))
        if self.breakdown and total != self.count:
            raise IntegralityError(f"breakdown sums to {total}, count is {self.count}")
        if self.count < 1:
            raise IntegralityError(f"census count {self.count} is not positive")
        if self.sp_count is not None and self.mass is not None and self.query.a is not None:
            q = self.query.p**self.query.a
            if self.sp_count + (q - self.query.p) * self.mass != self.count:
                raise IntegralityError(
                    f"count {self.count} != |Sp| + (q-p)*Mass = "
                    f"{self.sp_count} + {q - self.query.p}*{self.mass}"
                )

    def to_record(self) -> dict[str, Any]:
        return {
            "query": self.query.as_dict(),
            "count": self.count,
            "sp_count": self.sp_count,
            "mass": None if self.mass is None else fmt_rational(self.mass),
            "breakdown": [{"label": k, "value": fmt_rational(v)} for k, v in self.breakdown],
            "case": self.case,
        }


def _check_prime(p):
    if not isinstance(p, int) or not is_prime(p):
        raise DomainError(f"p={p} is not prime")


def _finish(query, case, terms, sp=None, mass=None):
    count = as_integer(sum(v for _, v in terms), f"|A_pi| for {query}")
    return CensusResult(query, count, case, list(terms), sp, mass)


def census_sqrt_q(p: int, a: int) -> CensusResult:
    """|A_pi| for pi = sqrt(q), q = p^a with a odd."""
    _check_prime(p)
    if a < 1 or a % 2 == 0:
        raise DomainError(f"census_sqrt_q needs odd a >= 1, got a={a} (use census_even)")
    q = p**a
    query = CensusQuery("sqrt-q", p, a=a)
    if p == 2:
        terms = [("1", Fraction(1)), ("(q-2)/6", Fraction(q - 2, 6))]
        return _finish(query, "p=2", terms, sp=1, mass=Fraction(1, 6))
    if p == 3:
        terms = [("2", Fraction(2)), ("(q-3)/6", Fraction(q - 3, 6))]
        return _finish(query, "p=3", terms, sp=2, mass=Fraction(1, 6))
    if p == 5:
        terms = [("3", Fraction(3)), ("4(q-5)/15", Fraction(4 * (q - 5), 15))]
        return _finish(query, "p=5", terms, sp=3, mass=Fraction(4, 15))

    hp = h_sqrt(p)
    z = zeta_F(p)
    if p % 4 == 3:
        s = Fraction(13, 8) - Fraction(5, 8) * kronecker_symbol(2, p)
        terms = [
            ("h(sqrt p)*(q-p+1)*zeta/2", hp * (q - p + 1) * z / 2),
            ("h(sqrt p)*(13/8-5/8*(2/p))*h(sqrt -p)", hp * s * h_sqrt(-p)),
            ("h(sqrt p)*h(sqrt -2p)/4", Fraction(hp * h_sqrt(-2 * p), 4)),
            ("h(sqrt p)*h(sqrt -3p)/6", Fraction(hp * h_sqrt(-3 * p), 6)),
        ]
        case = "p>5, p=3 mod 4"
    else:
        beta = unit_symbols(p).beta_p
        terms = [
            ("h(sqrt p)*(q-p+1)(1+5beta)*zeta/2", hp * (q - p + 1) * (1 + 5 * beta) * z / 2),
            ("h(sqrt p)*(1+beta)*h(sqrt -p)/8", Fraction(hp * (1 + beta) * h_sqrt(-p), 8)),
            ("h(sqrt p)*2h(sqrt -3p)/3", Fraction(2 * hp * h_sqrt(-3 * p), 3)),
        ]
        case = "p>5, p=1 mod 4"
    return _finish(query, case, terms, sp=superspecial_count(p), mass=mass_superspecial(p))


def census_even(p: int, a: int) -> CensusResult:
    """|A_pi| for pi = sqrt(q), q = p^a with a even: the class number of a
    maximal order of the quaternion algebra over Q ramified at {p, oo}."""
    _check_prime(p)
    if a < 2 or a % 2:
        raise DomainError(f"census_even needs even a >= 2, got a={a}")
    query = CensusQuery("even", p, a=a)
    res = _finish(query, "a even", deuring_terms(p))
    if res.count != deuring_class_number(p):
        raise IntegralityError(f"Deuring display and general formula disagree at p={p}")
    return res


def sqrt_minus_p_multiplier(p: int) -> int:
    """N(pi) for pi = sqrt(-p): |A_pi| / h(Q(sqrt -p)), summed over the
    2-adic lattice types (one type unless p = 3 mod 4)."""
    _check_prime(p)
    if p == 2 or p % 4 == 1:
        return 1
    if p == 3 or p % 8 == 7:
        return 2
    return 4


def census_sqrt_minus_p(p: int) -> CensusResult:
    _check_prime(p)
    N = sqrt_minus_p_multiplier(p)
    h = h_sqrt(-p)
    query = CensusQuery("sqrt-minus-p", p)
    case = {1: "p=2 or p=1 mod 4", 2: "p=3 or p=7 mod 8", 4: "p=3 mod 8, p>3"}[N]
    return CensusResult(query, N * h, case, [(f"N(pi)={N} x h(sqrt -p)={h}", Fraction(N * h))])


def chains_above(d: int, D: int, n: int) -> int:
    """Number of chains d = d_n | d_{n-1} | ... | d_1 | D of positive integers."""
    if D % d:
        return 0
    total = 1
    for ell, e in factorize(D).items():
        k = 0
        dd = d
        while dd % ell == 0:
            dd //= ell
            k += 1
        # nondecreasing exponents k <= x_{n-1} <= ... <= x_1 <= e
        total *= comb(e - k + n - 1, n - 1)
    return total


def census_divisor_chain(p: int, d0: int, D: int, n: int, a_list: list[int]) -> CensusResult:
    """Sum over i of sum over divisor chains d_n | ... | d_1 | D of
    h(R_{p^{a_i} d_n}), R_f the order of conductor f in the field of
    discriminant d0.  The exponents a_i describe the Dieudonne-module side
    and are taken as input."""
    _check_prime(p)
    if d0 >= 0 or not is_fundamental_discriminant(d0):
        raise DomainError(f"d0={d0} must be a negative fundamental discriminant")
    if D < 1 or n < 1:
        raise DomainError("D and n must be positive")
    if gcd(p, D) != 1:
        raise DomainError(f"gcd(p, D) = gcd({p}, {D}) must be 1")
    if not a_list or any(a < 0 for a in a_list):
        raise DomainError("a_list must be a nonempty list of nonnegative integers")
    terms = []
    for ai in a_list:
        for dn in divisors(D):
            k = chains_above(dn, D, n)
            f = p**ai * dn
            h = class_number_order(ImaginaryOrderSpec(d0, f))
            terms.append((f"a={ai}, d_n={dn}: {k} chains x h(R_{f})", Fraction(k * h)))
    query = CensusQuery("chain", p, d0=d0, D=D, n=n, a_list=list(a_list))
    return _finish(query, "divisor chains", terms)


def fiber_size(q: int, p: int, rho_image_order: int) -> int:
    """Non-superspecial classes over one superspecial class A_0:
    (q - p) / |rho(Aut(A_0))|."""
    _check_prime(p)
    a, r = 0, q
    while r % p == 0:
        r //= p
        a += 1
    if r != 1 or a % 2 == 0:
        raise DomainError(f"q={q} must be an odd power of p={p}")
    if rho_image_order < 1 or (p * (p * p - 1)) % rho_image_order:
        raise DomainError(f"{rho_image_order} does not divide |PGL_2(F_{p})| = {p * (p * p - 1)}")
    if (q - p) % rho_image_order:
        raise DomainError(f"(q-p) = {q - p} is not divisible by {rho_image_order}")
    return (q - p) // rho_image_order


def census_sqrt_q_by_fibers(p: int, a: int) -> int:
    """|Sp| + sum of fiber sizes, for primes where the images of the
    automorphism groups are known individually (p = 2, 3)."""
    orders = SMALL_PRIME_RHO_ORDERS[p]
    q = p**a
    return len(orders) + sum(fiber_size(q, p, o) for o in orders)
