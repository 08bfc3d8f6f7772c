"""Stirling numbers of both kinds, exactly, plus the polynomials built from them.

Conventions
-----------
``stirling_first(n, k)`` is the *signed* number s(n, k): the coefficient of
t^k in the falling factorial t(t-1)...(t-n+1), so its sign is (-1)^(n-k).
``stirling_second(n, k)`` counts set partitions of an n-set into k blocks.
Both satisfy the usual triangular recurrences and both are cached in a
grow-only table (``StirlingCache``), guarded by a lock so that concurrent
readers can share one instance.

``falling_factorial_poly`` deliberately does *not* consult the cache: it
expands the product (t)(t-1)...(t-n+1) directly.  Its coefficients equaling
``stirling_first`` is therefore a genuine cross-check between two
independent computations, and the self-test relies on that.

``stirling_first_nonrecursive`` evaluates the closed form

    |s(n, m)| = (n-1)! * e_{m-1}(1, 1/2, ..., 1/(n-1))

where e_j is the elementary symmetric polynomial, using exact rationals.
A tempting nested-sum variant of this identity carries one summation
index too many and a spurious m!/(m-1)! factor and already fails at
(n, m) = (3, 2); the elementary-symmetric form above is the one that
holds, and the equality with the recurrence table is enforced by tests
over 1 <= m <= n <= 12.
"""

from __future__ import annotations

import threading
from fractions import Fraction
from math import factorial

from .errors import InternalConsistencyError
from .polynomial import IntPoly


class StirlingCache:
    """Grow-only triangular tables for both kinds of Stirling numbers.

    Row n holds entries k = 0..n.  Rows are appended under a lock; existing
    rows are never mutated, so lock-free reads of already grown rows are safe.
    """

    def __init__(self):
        self._first = [[1]]
        self._second = [[1]]
        self._lock = threading.Lock()

    def first(self, n: int, k: int) -> int:
        if n < 0:
            raise ValueError("n must be nonnegative")
        if k < 0 or k > n:
            return 0
        if n >= len(self._first):
            self._grow_first(n)
        return self._first[n][k]

    def second(self, n: int, k: int) -> int:
        if n < 0:
            raise ValueError("n must be nonnegative")
        if k < 0 or k > n:
            return 0
        if n >= len(self._second):
            self._grow_second(n)
        return self._second[n][k]

    def _grow_first(self, n):
        with self._lock:
            while len(self._first) <= n:
                m = len(self._first)
                prev = self._first[-1]
                row = [0] * (m + 1)
                for k in range(1, m + 1):
                    above = prev[k] if k < m else 0
                    row[k] = prev[k - 1] - (m - 1) * above
                self._first.append(row)

    def _grow_second(self, n):
        with self._lock:
            while len(self._second) <= n:
                m = len(self._second)
                prev = self._second[-1]
                row = [0] * (m + 1)
                for k in range(1, m + 1):
                    above = prev[k] if k < m else 0
                    row[k] = prev[k - 1] + k * above
                self._second.append(row)

    def _inject_fault(self):
        """Deliberately corrupt both tables.  Test hook for the self-test's
        negative control; never called in normal operation."""
        self.first(8, 3)
        self.second(8, 3)
        with self._lock:
            self._first[7][3] += 1
            self._second[7][3] += 1


_DEFAULT_CACHE = StirlingCache()


def default_cache() -> StirlingCache:
    return _DEFAULT_CACHE


def stirling_first(n: int, k: int, cache: StirlingCache | None = None) -> int:
    """Signed Stirling number of the first kind s(n, k)."""
    return (cache or _DEFAULT_CACHE).first(n, k)


def stirling_second(n: int, k: int, cache: StirlingCache | None = None) -> int:
    """Stirling number of the second kind S(n, k)."""
    return (cache or _DEFAULT_CACHE).second(n, k)


def stirling_first_nonrecursive(n: int, m: int) -> int:
    """s(n, m) by the corrected closed form, with exact rational arithmetic.

    Valid for 1 <= m <= n.  Intermediate values are Fractions (reduced at
    every step); the final value must be an integer or something is badly
    wrong.
    """
    if m < 1 or m > n:
        raise ValueError("need 1 <= m <= n")
    # e[j] accumulates e_j(1, 1/2, ..., 1/i) as i sweeps 1..n-1
    e = [Fraction(1)] + [Fraction(0)] * (m - 1)
    for i in range(1, n):
        x = Fraction(1, i)
        for j in range(min(i, m - 1), 0, -1):
            e[j] += x * e[j - 1]
    val = e[m - 1] * factorial(n - 1)
    if val.denominator != 1:
        raise InternalConsistencyError(f"nonintegral Stirling value at ({n}, {m}): {val}")
    sign = -1 if (n - m) % 2 else 1
    return sign * int(val)


def falling_factorial_poly(n: int) -> IntPoly:
    """The falling factorial t(t-1)...(t-n+1) as a polynomial, n >= 0.

    Expanded as a literal product, independently of the cached recurrences.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    p = IntPoly.one()
    for j in range(n):
        p = p * IntPoly((-j, 1))
    return p


def partition_char_poly(n: int) -> IntPoly:
    """Characteristic polynomial of the lattice of set partitions of an n-set.

    Equals the falling factorial on n letters divided by t, so its t^(k-1)
    coefficient is s(n, k).  Defined for n >= 1; n = 1 gives the constant 1.
    """
    if n < 1:
        raise ValueError("n must be positive")
    return falling_factorial_poly(n).shift_down()


def bell_number(n: int) -> int:
    """Number of set partitions of an n-set (row sum of the second kind)."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return sum(stirling_second(n, k) for k in range(n + 1))
