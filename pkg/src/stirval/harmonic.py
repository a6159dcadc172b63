"""Elementary symmetric functions of 1, 1/2, ..., 1/n as exact rationals.

H(n,k) is the sum of products of k distinct reciprocals from the first
n. Tables are built by the one-variable-at-a-time recurrence
e_k <- e_k + (1/i) * e_{k-1}, folding in i = 1..n; every entry stays a
reduced rational after each update. The bridge to the rest of the
package is the identity n! * H(n,k) = s(n+1, k+1).

Construction cost is dominated by gcd reductions on ever-larger
rationals, so finished prefixes are cached: the recurrence state is
kept around and extended in place when a larger n is requested, and
every explicitly requested table is snapshotted. gmpy2's mpq is used
internally when available (same algorithm, faster normalization); the
public surface is always fractions.Fraction.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from fractions import Fraction

from .errors import ConsistencyError, DomainError, ResourceLimitError
from .padic import Valuation, vp_rat
from .stirling_core import stirling

try:
    from gmpy2 import mpq as _rat
except ImportError:  # pragma: no cover - gmpy2 is a declared dependency
    _rat = Fraction

# Tables above this n are refused. Reassign to move the cap.
TABLE_CAP = 2 ** 12

_lock = threading.Lock()
_frontier_n = 0
_frontier: list = [_rat(1)]
_snapshots: dict[int, tuple[Fraction, ...]] = {}


@dataclass(frozen=True)
class HarmonicTable:
    """All values H(n,0..n) for one n, with H(n,0) = 1."""

    n: int
    values: tuple[Fraction, ...]


def _fold(e: list, i: int) -> None:
    # Extend the elementary symmetric state by the variable 1/i. The
    # top entry is new; the rest update downward so each e[k-1] is
    # still the previous row's value when e[k] reads it.
    inv = _rat(1) / i
    e.append(e[-1] * inv)
    for k in range(len(e) - 2, 0, -1):
        e[k] = e[k] + e[k - 1] * inv


def _to_fraction(v) -> Fraction:
    if isinstance(v, Fraction):
        return v
    return Fraction(int(v.numerator), int(v.denominator))


def harmonic_table(n: int) -> HarmonicTable:
    """Build (or fetch) the full table H(n,0..n).

    Args:
        n: Table size, 1 <= n <= TABLE_CAP.

    Returns:
        HarmonicTable with n+1 reduced Fraction values.

    Raises:
        DomainError: If n < 1.
        ResourceLimitError: If n exceeds TABLE_CAP.
    """
    if n < 1:
        raise DomainError(f"table size must be >= 1, got {n}")
    if n > TABLE_CAP:
        raise ResourceLimitError(f"table size {n} exceeds cap {TABLE_CAP}")
    global _frontier_n
    with _lock:
        cached = _snapshots.get(n)
        if cached is not None:
            return HarmonicTable(n, cached)
        if n >= _frontier_n:
            e = _frontier
            for i in range(_frontier_n + 1, n + 1):
                _fold(e, i)
            _frontier_n = n
        else:
            # A smaller n than the frontier and no snapshot: rebuild
            # from scratch rather than storing every intermediate row.
            e = [_rat(1)]
            for i in range(1, n + 1):
                _fold(e, i)
        values = tuple(_to_fraction(v) for v in e)
        _snapshots[n] = values
    return HarmonicTable(n, values)


def identity_residual(n: int, k: int) -> int:
    """Return n! * H(n,k) - s(n+1,k+1); zero whenever both sides are right.

    The two sides come from unrelated code paths (rational recurrence
    versus polynomial expansion), so a nonzero residual pins a bug.
    """
    if not 1 <= k <= n:
        raise DomainError(f"need 1 <= k <= n, got k={k}, n={n}")
    lhs = math.factorial(n) * harmonic_table(n).values[k]
    if lhs.denominator != 1:
        raise ConsistencyError(f"n! * H({n},{k}) is not an integer: {lhs}")
    return int(lhs) - stirling(n + 1, k + 1)


def bound_margin(n: int, k: int) -> Valuation:
    """Return v2(H(2**n, k)) + n; the upper-bound claim says <= 0."""
    if n < 1:
        raise DomainError(f"need n >= 1, got {n}")
    if not 1 <= k <= 2 ** n:
        raise DomainError(f"need 1 <= k <= 2**{n}, got {k}")
    return vp_rat(2, harmonic_table(2 ** n).values[k]) + n


def conjecture_scan(p: int, k: int, n_max: int) -> list[tuple[int, Valuation, float]]:
    """Record (n, v_p(H(n,k)), -v_p(H(n,k))/ln n) for n = k..n_max.

    Purely observational: the logarithmic-decay conjecture this probes
    is open, so the scan asserts nothing. The ratio column uses the
    natural log; divide by ln of your preferred base to rescale. At
    n = 1 the ratio is reported as 0.0 (ln 1 = 0, and v_p(H(1,1)) = 0
    anyway).
    """
    if k < 1:
        raise DomainError(f"need k >= 1, got {k}")
    if n_max > TABLE_CAP:
        raise ResourceLimitError(f"scan bound {n_max} exceeds cap {TABLE_CAP}")
    # Only e_0..e_k are tracked; the full table is never built.
    e = [_rat(1)] + [_rat(0)] * k
    out = []
    for i in range(1, n_max + 1):
        inv = _rat(1) / i
        for j in range(min(i, k), 0, -1):
            e[j] = e[j] + e[j - 1] * inv
        if i >= k:
            v = vp_rat(p, e[k])
            ratio = 0.0 if i == 1 else -v / math.log(i)
            out.append((i, v, ratio))
    return out
