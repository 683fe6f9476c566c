import json
from fractions import Fraction

import pytest

from abvar_census.census import (
    SMALL_PRIME_RHO_ORDERS,
    CensusQuery,
    CensusResult,
    census_divisor_chain,
    census_even,
    census_sqrt_minus_p,
    census_sqrt_q,
    census_sqrt_q_by_fibers,
    chains_above,
    fiber_size,
    sqrt_minus_p_multiplier,
)
from abvar_census.exact_arith import DomainError, IntegralityError, divisors, primes_up_to
from abvar_census.quadratic_forms import class_number_imaginary
from abvar_census.quaternion_orders import deuring_class_number, mass_superspecial, superspecial_count


@pytest.mark.parametrize("p,a,count", [(2, 3, 2), (3, 3, 6), (5, 3, 35), (2, 1, 1), (3, 1, 2), (5, 1, 3), (7, 3, 115)])
def test_sqrt_q_examples(p, a, count):
    assert census_sqrt_q(p, a).count == count


def test_sqrt_q_a1_is_superspecial_count():
    for p in primes_up_to(300):
        assert census_sqrt_q(p, 1).count == superspecial_count(p)


def test_structural_identity():
    for p in primes_up_to(200):
        if p <= 5:
            continue
        for a in (1, 3, 5):
            res = census_sqrt_q(p, a)
            q = p**a
            assert res.count == superspecial_count(p) + (q - p) * mass_superspecial(p)
            assert res.sp_count == superspecial_count(p)


def test_p13_a1_is_five():
    r = census_sqrt_q(13, 1)
    assert r.count == 5 == superspecial_count(13)
    assert r.case == "p>5, p=1 mod 4"


def test_small_prime_fiber_decomposition():
    for p in (2, 3):
        for a in (1, 3, 5, 7, 9):
            assert census_sqrt_q_by_fibers(p, a) == census_sqrt_q(p, a).count


@pytest.mark.parametrize("q,p,order,size", [(8, 2, 6, 1), (27, 3, 24, 1), (27, 3, 8, 3), (2, 2, 6, 0), (3, 3, 24, 0), (32, 2, 6, 5)])
def test_fiber_size(q, p, order, size):
    assert fiber_size(q, p, order) == size


def test_fiber_size_rejects():
    with pytest.raises(DomainError):
        fiber_size(9, 3, 8)  # even power
    with pytest.raises(DomainError):
        fiber_size(27, 3, 5)  # does not divide |PGL_2(F_3)|
    with pytest.raises(DomainError):
        fiber_size(12, 2, 6)


def test_rho_orders_divide_pgl2():
    for p, orders in SMALL_PRIME_RHO_ORDERS.items():
        for o in orders:
            assert (p * (p * p - 1)) % o == 0


def test_sqrt_q_rejects():
    with pytest.raises(DomainError):
        census_sqrt_q(4, 1)
    with pytest.raises(DomainError):
        census_sqrt_q(7, 2)
    with pytest.raises(DomainError):
        census_sqrt_q(7, 0)


def test_even_is_deuring_for_every_even_a():
    for p in primes_up_to(500):
        counts = {census_even(p, a).count for a in (2, 4, 6)}
        assert counts == {deuring_class_number(p)}
    with pytest.raises(DomainError):
        census_even(7, 3)


# -- pi = sqrt(-p) ------------------------------------------------------------


def trace_zero_classes(p):
    """F_p-isomorphism classes of y^2 = x^3 + a x + b with p + 1 points."""
    sq = [0] * p
    for y in range(p):
        sq[y * y % p] += 1
    units = range(1, p)
    seen = set()
    n = 0
    for a in range(p):
        for b in range(p):
            if (4 * a**3 + 27 * b * b) % p == 0 or (a, b) in seen:
                continue
            orbit = {(u**4 * a % p, u**6 * b % p) for u in units}
            seen |= orbit
            if 1 + sum(sq[(x**3 + a * x + b) % p] for x in range(p)) == p + 1:
                n += 1
    return n


@pytest.mark.parametrize("p,count", [(2, 1), (3, 2), (7, 2), (11, 4), (13, 2)])
def test_sqrt_minus_p_examples(p, count):
    assert census_sqrt_minus_p(p).count == count


def test_sqrt_minus_p_by_point_counting():
    for p in primes_up_to(90)[2:]:
        assert census_sqrt_minus_p(p).count == trace_zero_classes(p), p


def test_sqrt_minus_p_multiplier_cases():
    assert [sqrt_minus_p_multiplier(p) for p in (2, 3, 5, 7, 11, 13, 19, 23)] == [1, 2, 1, 2, 4, 1, 4, 2]


# -- divisor chains -----------------------------------------------------------


def all_chains(D, n):
    chains = [[D]]
    for _ in range(n):
        chains = [c + [d] for c in chains for d in divisors(c[-1])]
    return [c[1:] for c in chains]  # d_1, ..., d_n


def test_chains_above_by_enumeration():
    for D in range(1, 61):
        for n in range(1, 5):
            chains = all_chains(D, n)
            for d in divisors(D):
                assert chains_above(d, D, n) == sum(1 for c in chains if c[-1] == d), (D, n, d)
            assert chains_above(7, 12, n) == 0


def chain_oracle(p, d0, D, n, a_list):
    total = 0
    for ai in a_list:
        for c in all_chains(D, n):
            f = p**ai * c[-1]
            total += class_number_imaginary(f * f * d0)
    return total


@pytest.mark.parametrize(
    "p,d0,D,n,a_list",
    [(5, -4, 3, 2, [0]), (3, -7, 2, 1, [0, 1]), (7, -3, 10, 2, [0, 2]), (2, -23, 9, 3, [1]), (11, -8, 12, 2, [0, 1])],
)
def test_divisor_chain_matches_oracle(p, d0, D, n, a_list):
    assert census_divisor_chain(p, d0, D, n, a_list).count == chain_oracle(p, d0, D, n, a_list)


def test_divisor_chain_examples():
    assert census_divisor_chain(5, -4, 3, 2, [0]).count == 4
    assert census_divisor_chain(3, -7, 2, 1, [0, 1]).count == 10


@pytest.mark.parametrize(
    "args",
    [(5, -4, 5, 1, [0]), (5, -12, 3, 1, [0]), (5, -4, 0, 1, [0]), (5, -4, 3, 0, [0]), (5, -4, 3, 1, []), (5, -4, 3, 1, [-1]), (6, -4, 1, 1, [0])],
)
def test_divisor_chain_rejects(args):
    with pytest.raises(DomainError):
        census_divisor_chain(*args)


# -- result records -----------------------------------------------------------


def test_result_record_schema():
    rec = census_sqrt_q(13, 3).to_record()
    assert set(rec) == {"query", "count", "sp_count", "mass", "breakdown", "case"}
    assert rec["query"] == {"variant": "sqrt-q", "p": 13, "a": 3}
    assert sum(Fraction(t["value"]) for t in rec["breakdown"]) == rec["count"]
    assert rec["sp_count"] + (13**3 - 13) * Fraction(rec["mass"]) == rec["count"]
    assert json.loads(json.dumps(rec)) == rec


def test_result_invariants_enforced():
    q = CensusQuery("sqrt-q", 7, a=1)
    with pytest.raises(IntegralityError):
        CensusResult(q, 3, "x", [("a", Fraction(2))])
    with pytest.raises(IntegralityError):
        CensusResult(q, 0, "x")
    with pytest.raises(IntegralityError):
        CensusResult(CensusQuery("sqrt-q", 7, a=3), 5, "x", sp_count=3, mass=Fraction(1, 3))
