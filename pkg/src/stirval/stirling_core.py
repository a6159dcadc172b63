"""Exact Stirling numbers of the first kind and their shifted variants.

Everything here is coefficient extraction from rising factorials: the
row s(n,0..n) lists the coefficients of (x)_n = x(x+1)...(x+n-1), and
the shifted row s_m(n,0..n) those of (x+m)_n. Two independent engines
build plain rows:

  recurrence    one row at a time via s(n+1,k) = n*s(n,k) + s(n,k-1),
                pure Python ints throughout
  product_tree  balanced divide-and-conquer product of the linear
                factors, with the single big multiply per node routed
                through gmpy2 when available

The engines share no multiplication code path, which is what makes
their agreement a meaningful cross-check. Coefficients reach hundreds
of kilobits near the configured cap, so rows are handled as flat lists
and multiplied via Kronecker substitution (pack the coefficients of a
polynomial into one giant integer, multiply once, slice the product
back apart).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from .errors import ConsistencyError, DomainError, ResourceLimitError

try:
    from gmpy2 import mpz as _mpz
except ImportError:  # pragma: no cover - gmpy2 is a declared dependency
    _mpz = int

# Rows above this n are refused; a full row at 2**13 is already tens of
# megabytes. Reassign (e.g. from the CLI --max-n flag) to move the cap.
ROW_CAP = 2 ** 13

# Shifts enter coefficient sizes only logarithmically, but keep them in
# a sane fixed-width range anyway.
SHIFT_CAP = 2 ** 62

# Below this many linear factors, balanced splitting loses to a plain
# sequential chain because the coefficients are still small.
_TREE_BASE = 16

# Schoolbook multiplication beats packing overhead when either operand
# has at most this many coefficients.
_SCHOOLBOOK_LEN = 8


@dataclass(frozen=True)
class StirlingRow:
    """One full row s(n,0..n), tagged with the engine that built it."""

    n: int
    coeffs: tuple[int, ...]
    engine: str


@dataclass(frozen=True)
class ShiftedRow:
    """One full shifted row s_m(n,0..n) for the shift m."""

    m: int
    n: int
    coeffs: tuple[int, ...]


def _check_row_args(n: int, shift: int = 0) -> None:
    if n < 0:
        raise DomainError(f"row index must be >= 0, got {n}")
    if n > ROW_CAP:
        raise ResourceLimitError(f"row index {n} exceeds cap {ROW_CAP}")
    if shift < 0:
        raise DomainError(f"shift must be >= 0, got {shift}")
    if shift > SHIFT_CAP:
        raise ResourceLimitError(f"shift {shift} exceeds cap {SHIFT_CAP}")


def row_recurrence(n: int) -> StirlingRow:
    """Build s(n,0..n) bottom-up from the two-term recurrence."""
    _check_row_args(n)
    row = [1]
    for i in range(n):
        # Row i+1 from row i: new[k] = i*old[k] + old[k-1]. The list
        # comprehensions keep the loop body in C.
        scaled = [i * c for c in row]
        row = [scaled[0]] + [s + c for s, c in zip(scaled[1:], row)] + [row[-1]]
    return StirlingRow(n, tuple(row), "recurrence")


def _poly_mul(a: list[int], b: list[int]) -> list[int]:
    # Exact product of two polynomials with nonnegative coefficients
    # (all inputs here come from products of (x+c) with c >= 0).
    if min(len(a), len(b)) <= _SCHOOLBOOK_LEN:
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return out
    # Kronecker substitution. Slot width must hold any coefficient of
    # the product: bits(max_a) + bits(max_b) + bits(#terms) suffice.
    slot_bits = max(a).bit_length() + max(b).bit_length() + min(len(a), len(b)).bit_length()
    width = (slot_bits + 7) // 8
    pa = b"".join(c.to_bytes(width, "little") for c in a)
    pb = b"".join(c.to_bytes(width, "little") for c in b)
    big = int(_mpz(int.from_bytes(pa, "little")) * _mpz(int.from_bytes(pb, "little")))
    out_len = len(a) + len(b) - 1
    raw = big.to_bytes(out_len * width + width, "little")
    return [
        int.from_bytes(raw[i * width : (i + 1) * width], "little")
        for i in range(out_len)
    ]


def _expand_chain(lo: int, hi: int) -> list[int]:
    # Sequential expansion of prod_{c in [lo, hi)} (x + c).
    coeffs = [1]
    for c in range(lo, hi):
        shifted = [c * v for v in coeffs]
        coeffs = [shifted[0]] + [s + v for s, v in zip(shifted[1:], coeffs)] + [coeffs[-1]]
    return coeffs


def _expand_range(lo: int, hi: int) -> list[int]:
    count = hi - lo
    if count < _TREE_BASE:
        return _expand_chain(lo, hi)
    mid = lo + count // 2
    return _poly_mul(_expand_range(lo, mid), _expand_range(mid, hi))


def row_product_tree(n: int) -> StirlingRow:
    """Build s(n,0..n) by balanced expansion of x(x+1)...(x+n-1)."""
    _check_row_args(n)
    return StirlingRow(n, tuple(_expand_range(0, n)), "product_tree")


def shifted_row_expand(m: int, n: int) -> ShiftedRow:
    """Expand (x+m)(x+m+1)...(x+m+n-1) into s_m(n,0..n)."""
    _check_row_args(n, m)
    return ShiftedRow(m, n, tuple(_expand_range(m, m + n)))


@lru_cache(maxsize=32)
def _cached_coeffs(engine: str, n: int, shift: int) -> tuple[int, ...]:
    # Memoized row storage keyed by (engine, n, shift). lru_cache gives
    # the single-writer/concurrent-reader safety the accessors need.
    if shift:
        return shifted_row_expand(shift, n).coeffs
    if engine == "recurrence":
        return row_recurrence(n).coeffs
    return row_product_tree(n).coeffs


def stirling(n: int, k: int) -> int:
    """Return s(n,k); zero outside 0 <= k <= n and for k = 0, n >= 1."""
    if n < 0:
        raise DomainError(f"row index must be >= 0, got {n}")
    if k < 0 or k > n:
        return 0
    return _cached_coeffs("product_tree", n, 0)[k]


def shifted_value_sum(m: int, n: int, k: int) -> int:
    """Evaluate s_m(n,k) as sum_{i=k}^{n} s(n,i) * C(i,i-k) * m**(i-k).

    Independent of shifted_row_expand, which makes the two routes a
    usable identity check against each other.
    """
    if k < 0:
        raise DomainError(f"need k >= 0, got {k}")
    _check_row_args(n, m)
    if k > n:
        return 0
    row = _cached_coeffs("product_tree", n, 0)
    return sum(row[i] * math.comb(i, i - k) * m ** (i - k) for i in range(k, n + 1))


def convolution_rhs(m: int, n: int, k: int) -> int:
    """Evaluate sum_{i=0}^{k} s(m,i) * s_m(n,k-i).

    Splitting (x)_{m+n} at position m shows this equals s(m+n,k).
    """
    if not 0 <= k <= m + n:
        raise DomainError(f"need 0 <= k <= m+n, got k={k}, m={m}, n={n}")
    _check_row_args(m)
    _check_row_args(n, m)
    left = _cached_coeffs("product_tree", m, 0)
    right = _cached_coeffs("product_tree", n, m) if m else _cached_coeffs("product_tree", n, 0)
    lo = max(0, k - n)
    hi = min(k, m)
    return sum(left[i] * right[k - i] for i in range(lo, hi + 1))


def lemma21_rhs(n: int, k: int) -> int:
    """Half-sum identity for s(n,k) when n + k is odd.

    Evaluates (1/2) * sum_{i=k+1}^{n} s(n,i) * C(i-1,i-k) * n**(i-k)
    * (-1)**(n-i) in pure integer arithmetic. The sum is provably even;
    an odd total means the implementation is broken, not the input.
    """
    if not 1 <= k <= n:
        raise DomainError(f"need 1 <= k <= n, got k={k}, n={n}")
    if (n + k) % 2 == 0:
        raise DomainError(f"n + k must be odd, got n={n}, k={k}")
    row = _cached_coeffs("product_tree", n, 0)
    total = 0
    for i in range(k + 1, n + 1):
        term = row[i] * math.comb(i - 1, i - k) * n ** (i - k)
        total += -term if (n - i) % 2 else term
    half, rem = divmod(total, 2)
    if rem:
        raise ConsistencyError(f"half-sum for (n={n}, k={k}) came out odd: {total}")
    return half


# Selectors for the closed-form columns; each maps n to (k, value).
_SPECIAL_MIN_N = {"1": 1, "2": 2, "n-2": 2, "n-1": 1, "n": 1}


def special_value(n: int, selector: str) -> int:
    """Closed-form s(n,k) for the columns k in {1, 2, n-2, n-1, n}.

    Selectors are the literal strings "1", "2", "n-2", "n-1", "n":
    (n-1)! for k=1, (n-1)! * (1 + 1/2 + ... + 1/(n-1)) for k=2,
    (3n-1)*C(n,3)/4 for k=n-2, C(n,2) for k=n-1, and 1 for k=n.
    """
    if selector not in _SPECIAL_MIN_N:
        raise DomainError(f"unknown selector {selector!r}")
    if n < _SPECIAL_MIN_N[selector]:
        raise DomainError(f"selector {selector!r} needs n >= {_SPECIAL_MIN_N[selector]}, got {n}")
    if selector == "1":
        return math.factorial(n - 1)
    if selector == "2":
        fact = math.factorial(n - 1)
        return sum(fact // j for j in range(1, n))
    if selector == "n-1":
        return math.comb(n, 2)
    if selector == "n":
        return 1
    value, rem = divmod((3 * n - 1) * math.comb(n, 3), 4)
    if rem:
        raise ConsistencyError(f"(3n-1)*C(n,3) not divisible by 4 at n={n}")
    return value
