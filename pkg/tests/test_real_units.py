from math import isqrt

import pytest

from abvar_census.exact_arith import DomainError, is_prime, is_square, primes_up_to
from abvar_census.real_units import (
    continued_fraction_sqrt,
    fundamental_unit,
    fundamental_unit_of_field,
    unit_index,
    unit_symbols,
)


def brute_unit(d, ymax):
    """Smallest 0 < y <= ymax with x^2 - d y^2 = +-4 (d = 1 mod 4) or +-1; None if none."""
    k = 4 if d % 4 == 1 else 1
    for y in range(1, ymax + 1):
        for sign in (-1, 1):
            x2 = d * y * y + sign * k
            if x2 > 0 and is_square(x2):
                return isqrt(x2), y, sign
    return None


def cf_by_floats_free_recurrence(n, terms):
    """Partial quotients of sqrt(n) by exact comparison with (p + q sqrt n)/r."""
    out = []
    p, r = 0, 1  # current value (p + sqrt n) / r
    for _ in range(terms):
        a = 0
        while (a + 1) * r - p <= 0 or ((a + 1) * r - p) ** 2 <= n:
            a += 1
        out.append(a)
        # 1 / ((p + sqrt n)/r - a) = r / (p - a r + sqrt n)
        p2 = a * r - p
        r = (n - p2 * p2) // r
        p = p2
    return out


@pytest.mark.parametrize("n,a0,period", [(2, 1, [2]), (7, 2, [1, 1, 1, 4]), (13, 3, [1, 1, 1, 1, 6]), (3, 1, [1, 2]), (94, 9, [1, 2, 3, 1, 1, 5, 1, 8, 1, 5, 1, 1, 3, 2, 1, 18])])
def test_continued_fraction_examples(n, a0, period):
    assert continued_fraction_sqrt(n) == (a0, period)


def test_continued_fraction_rejects_squares():
    for n in (0, 1, 4, 49):
        with pytest.raises(DomainError):
            continued_fraction_sqrt(n)


def test_continued_fraction_shape():
    for n in range(2, 2000):
        if is_square(n):
            continue
        a0, period = continued_fraction_sqrt(n)
        assert a0 == isqrt(n)
        assert period[-1] == 2 * a0
        assert period[:-1] == period[-2::-1]
        assert cf_by_floats_free_recurrence(n, 1 + 2 * len(period)) == [a0] + period * 2


@pytest.mark.parametrize(
    "p,x,y,denom,norm",
    [(2, 1, 1, 1, -1), (5, 1, 1, 2, -1), (7, 8, 3, 1, 1), (13, 3, 1, 2, -1), (17, 4, 1, 1, -1), (3, 2, 1, 1, 1), (61, 39, 5, 2, -1)],
)
def test_fundamental_unit_examples(p, x, y, denom, norm):
    u = fundamental_unit(p)
    assert (u.x, u.y, u.denom, u.norm) == (x, y, denom, norm)


def test_fundamental_unit_rejects_composite():
    with pytest.raises(DomainError):
        fundamental_unit(15)


def test_fundamental_unit_matches_pell_brute_force():
    for d in range(2, 400):
        if is_square(d) or any(d % (k * k) == 0 for k in range(2, isqrt(d) + 1)):
            continue
        u = fundamental_unit_of_field(d)
        found = brute_unit(d, 20_000)
        if found is None:
            assert u.y * (2 // u.denom if d % 4 == 1 else 1) > 20_000
            continue
        x, y, sign = found
        assert u.norm == sign
        if d % 4 == 1:
            assert (u.x * (2 // u.denom), u.y * (2 // u.denom)) == (x, y), d
        else:
            assert (u.x, u.y) == (x, y), d


def test_units_norm_equation_and_cube():
    for p in primes_up_to(3000):
        u = fundamental_unit(p)
        assert u.x * u.x - p * u.y * u.y == u.norm * u.denom**2
        x, y, den = u.power(3)
        assert den == 1
        assert x * x - p * y * y == u.norm**3


def test_unit_index_values():
    assert unit_index(5) == 3
    assert unit_index(17) == 1
    assert unit_index(7) == 1


@pytest.mark.parametrize("p,varpi,delta,beta", [(5, 1, 1, 3), (13, 1, 1, 3), (17, 3, 0, 3), (41, 3, 0, 3), (29, 1, 1, 3)])
def test_unit_symbols_examples(p, varpi, delta, beta):
    s = unit_symbols(p)
    assert (s.varpi_p, s.delta_1_varpi, s.beta_p) == (varpi, delta, beta)


def test_unit_symbols_rejects():
    for p in (2, 3, 7, 9, 21):
        with pytest.raises(DomainError):
            unit_symbols(p)


def test_varpi_three_for_one_mod_eight():
    for p in primes_up_to(10_000):
        if p % 8 == 1:
            assert unit_symbols(p).varpi_p == 3, p


def test_symbol_invariants():
    from abvar_census.exact_arith import kronecker_symbol

    for p in primes_up_to(2000):
        if p % 4 != 1:
            continue
        s = unit_symbols(p)
        assert s.varpi_p in (1, 3)
        assert (s.delta_1_varpi == 1) == (s.varpi_p == 1)
        assert s.beta_p == s.varpi_p * (2 - kronecker_symbol(2, p))
        assert is_prime(p)
