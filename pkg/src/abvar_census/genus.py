"""Principal genera of principally polarized abelian varieties whose
endomorphism algebra is a product of imaginary quadratic fields.

For K = K_1 x ... x K_r with maximal totally real subalgebra K+, the genus
of a principal member has

    h_K / h_K+ * 1 / (Q * 2^(t - r))

isomorphism classes, Q the Hasse unit index and t the number of finite
places of K+ ramified in K.  For imaginary quadratic K_i we have h_K+ = 1
and Q = 1, so the count is prod_i h(K_i) / 2^(t_i - 1).  Classical genus
theory of binary forms (``genus_partition_oracle``) gives an independent
count of the principal genus.

The count is the formula's value for any admissible K; nothing here checks
that a principally polarized variety with that endomorphism algebra exists.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .exact_arith import (
    DomainError,
    IntegralityError,
    as_integer,
    factorize,
    is_fundamental_discriminant,
    kronecker_symbol,
)
from .quadratic_forms import BinaryQuadraticForm, class_number_imaginary, reduced_forms


class GenusTheoryError(IntegralityError):
    pass


@dataclass(frozen=True)
class CMAlgebraSpec:
    factors: tuple[int, ...]

    def __post_init__(self):
        factors = tuple(int(d) for d in self.factors)
        object.__setattr__(self, "factors", factors)
        if not factors:
            raise DomainError("a CM algebra needs at least one factor")
        for d in factors:
            if d >= 0 or not is_fundamental_discriminant(d):
                raise DomainError(f"factor {d} is not a negative fundamental discriminant")

    @property
    def r(self) -> int:
        return len(self.factors)


def prime_discriminants(D: int) -> list[int]:
    """Factor a fundamental discriminant into prime discriminants
    (-4, 8, -8, and l* = (-1)^((l-1)/2) l for odd l)."""
    if not is_fundamental_discriminant(D):
        raise DomainError(f"{D} is not a fundamental discriminant")
    out = []
    rest = D
    for ell in sorted(factorize(D)):
        if ell == 2:
            continue
        star = ell if ell % 4 == 1 else -ell
        out.append(star)
        rest //= star
    if rest != 1:
        out.insert(0, rest)  # one of -4, 8, -8
    return out


def ramified_prime_count(D: int) -> int:
    return len(factorize(D))


def genus_count_formula(spec: CMAlgebraSpec) -> Fraction:
    h_K = 1
    t = 0
    for d in spec.factors:
        h_K *= class_number_imaginary(d)
        t += ramified_prime_count(d)
    h_K_plus = 1  # K+ = Q^r
    Q = 1  # O_K^x = mu_K for imaginary quadratic factors
    return Fraction(h_K, h_K_plus) / (Q * 2 ** (t - spec.r))


def principal_genus_count(spec: CMAlgebraSpec | list[int] | tuple[int, ...]) -> int:
    if not isinstance(spec, CMAlgebraSpec):
        spec = CMAlgebraSpec(tuple(spec))
    return as_integer(genus_count_formula(spec), f"principal genus count for {spec.factors}")


def represented_coprime(form: BinaryQuadraticForm, modulus: int) -> int:
    """A positive value of ``form`` coprime to ``modulus``."""
    bound = 1
    while True:
        best = None
        for x in range(-bound, bound + 1):
            for y in range(0, bound + 1):
                v = form(x, y)
                if v > 0 and gcd(v, modulus) == 1 and (best is None or v < best):
                    best = v
        if best is not None:
            return best
        bound *= 2
        if bound > 1 << 12:
            raise GenusTheoryError(f"{form} represents nothing coprime to {modulus}")


@dataclass
class GenusPartition:
    D: int
    prime_discriminants: list[int]
    characters: dict[BinaryQuadraticForm, tuple[int, ...]]
    genera: dict[tuple[int, ...], list[BinaryQuadraticForm]]

    @property
    def t(self) -> int:
        return len(self.prime_discriminants)

    @property
    def principal_genus(self) -> list[BinaryQuadraticForm]:
        principal = min(self.characters)  # (1, b, c) sorts first
        return self.genera[self.characters[principal]]

    def sizes(self) -> list[int]:
        return sorted(len(g) for g in self.genera.values())


def genus_partition_oracle(D: int) -> GenusPartition:
    """Partition the reduced forms of fundamental D < 0 by their assigned
    characters, evaluated on a represented value coprime to D."""
    if D >= 0 or not is_fundamental_discriminant(D):
        raise DomainError(f"{D} is not a negative fundamental discriminant")
    pds = prime_discriminants(D)
    characters = {}
    genera = defaultdict(list)
    for f in reduced_forms(D):
        m = represented_coprime(f, D)
        vec = tuple(kronecker_symbol(d, m) for d in pds)
        if 0 in vec or _prod(vec) != 1:
            raise GenusTheoryError(f"character vector {vec} of {f} violates (D/m) = 1")
        characters[f] = vec
        genera[vec].append(f)
    part = GenusPartition(D, pds, characters, dict(genera))
    h = len(characters)
    expected = 2 ** (part.t - 1)
    if len(part.genera) != expected:
        raise GenusTheoryError(f"D={D}: {len(part.genera)} genera, expected {expected}")
    if len(set(part.sizes())) != 1 or part.sizes()[0] * expected != h:
        raise GenusTheoryError(f"D={D}: genera have unequal sizes {part.sizes()}")
    return part


def _prod(xs):
    out = 1
    for x in xs:
        out *= x
    return out
