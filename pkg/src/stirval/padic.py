"""p-adic valuation primitives.

Provides v_p for integers and rationals, base-p digit sums, and the
Legendre formula for v_p(n!). Valuations are plain ints except for
v_p(0), which is the distinguished value INFINITE (math.inf); it
compares greater than every finite valuation, so min/max logic works
unchanged.

All functions validate that p is prime where the underlying identity
requires it, because the formulas silently produce wrong answers for
composite p.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Union

from .errors import DomainError

# Distinguished valuation of zero. Compares greater than any finite int.
INFINITE = math.inf

# Finite valuations are ints; INFINITE is the only non-int value.
Valuation = Union[int, float]

# Below this bound primality is settled by trial division; above it a
# Miller-Rabin round over _MR_BASES is exact for all inputs < 3.3e24.
_TRIAL_BOUND = 1 << 20
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_MR_EXACT_BOUND = 3317044064679887385961981


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p < _TRIAL_BOUND:
        if p < 4:
            return True
        if p % 2 == 0:
            return False
        for d in range(3, math.isqrt(p) + 1, 2):
            if p % d == 0:
                return False
        return True
    if p >= _MR_EXACT_BOUND:
        raise DomainError(f"primality check not supported for p = {p} (too large)")
    d = p - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_BASES:
        x = pow(a, d, p)
        if x == 1 or x == p - 1:
            continue
        for _ in range(r - 1):
            x = x * x % p
            if x == p - 1:
                break
        else:
            return False
    return True


def _require_prime(p: int) -> None:
    if not isinstance(p, int) or not _is_prime(p):
        raise DomainError(f"p must be a prime >= 2, got {p!r}")


def vp_int(p: int, x: int) -> Valuation:
    """Compute the p-adic valuation of an integer.

    Args:
        p: Prime base.
        x: Any integer; the sign is ignored.

    Returns:
        The largest r with p**r dividing x, or INFINITE for x = 0.

    Raises:
        DomainError: If p is not prime.
    """
    _require_prime(p)
    if x == 0:
        return INFINITE
    x = abs(int(x))
    if p == 2:
        # Lowest set bit; avoids looping over huge inputs bit by bit.
        return (x & -x).bit_length() - 1
    v = 0
    while True:
        q, r = divmod(x, p)
        if r:
            return v
        x = q
        v += 1


def vp_rat(p: int, x) -> Valuation:
    """Compute the p-adic valuation of a rational number.

    Defined as v_p(numerator) - v_p(denominator); the result does not
    depend on whether the fraction is reduced.

    Args:
        p: Prime base.
        x: A Fraction, an int, or a (numerator, denominator) pair. Any
            object with numerator/denominator attributes is accepted.

    Returns:
        Integer valuation (possibly negative), or INFINITE for x = 0.

    Raises:
        DomainError: If p is not prime or the denominator is zero.
    """
    _require_prime(p)
    if isinstance(x, tuple):
        num, den = x
    elif isinstance(x, int):
        num, den = x, 1
    else:
        num, den = x.numerator, x.denominator
    if den == 0:
        raise DomainError("rational with zero denominator")
    if num == 0:
        return INFINITE
    return vp_int(p, int(num)) - vp_int(p, int(den))


def digit_sum(p: int, n: int) -> int:
    """Sum the base-p digits of a nonnegative integer.

    Args:
        p: Base, any integer >= 2 (primality not required).
        n: Nonnegative integer.

    Returns:
        d_p(n); zero exactly when n = 0.

    Raises:
        DomainError: If p < 2 or n < 0.
    """
    if not isinstance(p, int) or p < 2:
        raise DomainError(f"base must be an integer >= 2, got {p!r}")
    if n < 0:
        raise DomainError(f"digit sum needs n >= 0, got {n}")
    total = 0
    while n:
        n, r = divmod(n, p)
        total += r
    return total


def factorial_valuation(p: int, n: int) -> int:
    """Evaluate v_p(n!) by the Legendre formula (n - d_p(n)) / (p - 1).

    Never computes n!, so it stays exact and fast for n up to 2**62
    and beyond.

    Args:
        p: Prime base.
        n: Nonnegative integer.

    Returns:
        v_p(n!) as a nonnegative int.

    Raises:
        DomainError: If p is not prime or n < 0.
    """
    _require_prime(p)
    if n < 0:
        raise DomainError(f"factorial valuation needs n >= 0, got {n}")
    num = n - digit_sum(p, n)
    v, rem = divmod(num, p - 1)
    if rem:
        raise AssertionError(f"Legendre numerator {num} not divisible by {p - 1}")
    return v
