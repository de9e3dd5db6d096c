"""Gindikin Gamma function, multivariable Pochhammer symbols, the F-set,
and exact dimensions of the irreducible polynomial spaces.

All parameters are exact rationals; zero and pole detection is a
rational test, never a floating comparison. Magnitudes that overflow a
float are carried as sign plus log of the absolute value.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import ClassVar, Sequence

from symspec.domains import DomainParams
from symspec.partitions import Partition

TWO_PI = 2.0 * math.pi

Rational = Fraction | int


class GammaPoleError(ArithmeticError):
    """A Gindikin Gamma argument hit a pole of the classical Gamma factor."""

    def __init__(self, index: int, argument: Fraction):
        self.index = index
        self.argument = argument
        super().__init__(f"Gamma pole at factor j={index}: argument {argument} is a nonpositive integer")


@dataclass(frozen=True)
class SignedLogValue:
    """A real number stored as sign in {-1, 0, +1} and log|value|.

    Multiplication is componentwise; sign 0 absorbs. ``log_abs`` is
    meaningless when the sign is 0 (kept at -inf so exp() collapses to 0).
    """

    sign: int
    log_abs: float

    ZERO: ClassVar["SignedLogValue"]
    ONE: ClassVar["SignedLogValue"]

    @staticmethod
    def from_fraction(q: Rational) -> "SignedLogValue":
        q = Fraction(q)
        if q == 0:
            return SignedLogValue.ZERO
        sign = 1 if q > 0 else -1
        # math.log accepts arbitrarily large ints, so big rationals are safe
        return SignedLogValue(sign, math.log(abs(q.numerator)) - math.log(q.denominator))

    @staticmethod
    def from_float(x: float) -> "SignedLogValue":
        if x == 0.0:
            return SignedLogValue.ZERO
        return SignedLogValue(1 if x > 0 else -1, math.log(abs(x)))

    def __mul__(self, other: "SignedLogValue") -> "SignedLogValue":
        if self.sign == 0 or other.sign == 0:
            return SignedLogValue.ZERO
        return SignedLogValue(self.sign * other.sign, self.log_abs + other.log_abs)

    def __truediv__(self, other: "SignedLogValue") -> "SignedLogValue":
        if other.sign == 0:
            raise ZeroDivisionError("division by an exact-zero SignedLogValue")
        if self.sign == 0:
            return SignedLogValue.ZERO
        return SignedLogValue(self.sign * other.sign, self.log_abs - other.log_abs)

    def to_float(self) -> float:
        """May underflow to 0.0 or overflow to inf; the sign field is exact."""
        if self.sign == 0:
            return 0.0
        return self.sign * math.exp(self.log_abs)

    def abs_pow(self, p: float) -> float:
        """|value|**p as a float (0 for exact zero)."""
        if self.sign == 0:
            return 0.0
        return math.exp(p * self.log_abs)


SignedLogValue.ZERO = SignedLogValue(0, float("-inf"))
SignedLogValue.ONE = SignedLogValue(1, 0.0)


@dataclass(frozen=True)
class PochhammerValue:
    """Value of a multivariable Pochhammer product with exact-zero provenance.

    ``zero_witness`` records (j, t): factor j (1-based) hit the
    nonpositive integer -t, i.e. lambda - (a/2)(j-1) = -t with
    0 <= t <= m_j - 1.
    """

    value: SignedLogValue
    exact_zero: bool
    zero_witness: tuple[int, int] | None = None


@dataclass(frozen=True)
class FMembership:
    """Membership report for the F-set, with every witness (l, k)."""

    member: bool
    witnesses: tuple[tuple[int, int], ...]

    def __bool__(self) -> bool:
        return self.member


def _as_vector(domain: DomainParams, s: Rational | Sequence[Rational]) -> list[Fraction]:
    if isinstance(s, (int, Fraction)):
        return [Fraction(s)] * domain.r
    vec = [Fraction(x) for x in s]
    if len(vec) != domain.r:
        raise ValueError(f"argument vector has length {len(vec)}, domain rank is {domain.r}")
    return vec


def gamma_omega(domain: DomainParams, s: Rational | Sequence[Rational]) -> SignedLogValue:
    """Gindikin Gamma: (2*pi)^(a r(r-1)/4) * prod_j Gamma(s_j - (a/2)(j-1)).

    A scalar ``s`` means the replicated vector (s, ..., s). Raises
    GammaPoleError when any shifted argument is a nonpositive integer.
    """
    vec = _as_vector(domain, s)
    ha = domain.half_a()
    log_val = (domain.a * domain.r * (domain.r - 1) / 4.0) * math.log(TWO_PI)
    sign = 1
    for j, sj in enumerate(vec, start=1):
        arg = sj - ha * (j - 1)
        if arg.denominator == 1 and arg <= 0:
            raise GammaPoleError(j, arg)
        x = float(arg)
        if x > 0:
            log_val += math.lgamma(x)
        else:
            # reflection: Gamma(x) = pi / (sin(pi x) Gamma(1-x)); x is a
            # non-integer negative rational here, so sin(pi x) != 0
            log_val += math.log(math.pi) - _log_abs_sinpi(arg) - math.lgamma(1.0 - x)
            if _gamma_negative(arg):
                sign = -sign
    return SignedLogValue(sign, log_val)


def _log_abs_sinpi(q: Fraction) -> float:
    frac = q % 1  # in [0, 1)
    return math.log(abs(math.sin(math.pi * float(frac))))


def _gamma_negative(q: Fraction) -> bool:
    """Sign of Gamma at a negative non-integer: negative iff floor(q) is odd."""
    return math.floor(q) % 2 == 1


def pochhammer(domain: DomainParams, lam: Rational, m: Partition | Sequence[int]) -> PochhammerValue:
    """(lambda)_m = prod_j (lambda - (a/2)(j-1))_{m_j} in signed-log space.

    Exact zeros are detected by the rational factor test and carry a
    witness; the running product short-circuits at the first zero.
    """
    parts = tuple(m)
    lam = Fraction(lam)
    ha = domain.half_a()
    sign = 1
    log_abs = 0.0
    for j, mj in enumerate(parts, start=1):
        base = lam - ha * (j - 1)
        if mj > 0 and base.denominator == 1 and -(mj - 1) <= base <= 0:
            return PochhammerValue(SignedLogValue.ZERO, True, (j, int(-base)))
        for i in range(mj):
            factor = base + i
            if factor < 0:
                sign = -sign
            log_abs += math.log(abs(factor.numerator)) - math.log(factor.denominator)
    return PochhammerValue(SignedLogValue(sign, log_abs), False)


def in_F(domain: DomainParams, alpha: Rational) -> FMembership:
    """Is alpha = (a/2)(l-1) - k for some 1 <= l <= r, k in N? Lists all witnesses."""
    alpha = Fraction(alpha)
    ha = domain.half_a()
    witnesses = []
    for l in range(1, domain.r + 1):
        k = ha * (l - 1) - alpha
        if k.denominator == 1 and k >= 0:
            witnesses.append((l, int(k)))
    return FMembership(bool(witnesses), tuple(witnesses))


def _rising(x: Fraction, k: int) -> Fraction:
    out = Fraction(1)
    for i in range(k):
        out *= x + i
    return out


def _pochhammer_exact(domain: DomainParams, lam: Fraction, parts: tuple[int, ...]) -> Fraction:
    ha = domain.half_a()
    out = Fraction(1)
    for j, mj in enumerate(parts, start=1):
        out *= _rising(lam - ha * (j - 1), mj)
    return out


@lru_cache(maxsize=None)
def _dim_pm_cached(a: int, b: int, r: int, parts: tuple[int, ...]) -> int:
    domain = DomainParams(a=a, b=b, r=r)
    ha = domain.half_a()
    rho = domain.rho
    value = _pochhammer_exact(domain, rho, parts) / _pochhammer_exact(domain, rho - b, parts)
    for i in range(1, r + 1):
        for j in range(i + 1, r + 1):
            diff = parts[i - 1] - parts[j - 1]
            value *= (diff + ha * (j - i)) / (ha * (j - i))
            # the numerator carries the "+1" shift; without it the factor
            # vanishes whenever m_i = m_j, which contradicts the degree-sum rule
            value *= _rising(Fraction(diff + 1) + ha * (j - i - 1), a - 1) / _rising(
                1 + ha * (j - i - 1), a - 1
            )
    if value.denominator != 1 or value <= 0:
        raise ArithmeticError(f"dimension formula gave a non-positive-integer value {value} for m={parts}")
    return int(value)


def dim_pm(domain: DomainParams, m: Partition | Sequence[int]) -> int:
    """Exact dimension of the irreducible polynomial space indexed by m.

    Big-integer rational arithmetic throughout; the result is asserted
    to be a positive integer.
    """
    parts = tuple(m)
    if len(parts) != domain.r:
        raise ValueError(f"partition length {len(parts)} does not match rank {domain.r}")
    return _dim_pm_cached(domain.a, domain.b, domain.r, parts)


def dim_block_sum(domain: DomainParams, n: int) -> int:
    """Sum of dim over all partitions of weight n; equals C(n+d-1, d-1)."""
    from symspec.partitions import enumerate_by_weight

    return sum(dim_pm(domain, m) for m in enumerate_by_weight(domain.r, n))
