"""Constructors for the divisor-sum q-series.

Everything here is exact: coefficients are `Fraction`s and every series is a
:class:`~macmahon.series.Series` over the rationals, truncated at a caller
supplied order.

The series:

* ``eisenstein(k)``:  G_k = -B_k/(2*k!) + (1/(k-1)!) * sum_{m,n>=1} n^(k-1) q^(mn)
* ``eisenstein_odd(k)``:  G^o_k = G_k(q) - G_k(q^2), equivalently the same
  double sum restricted to odd m (no constant term)
* ``multiple_divisor_series(k_1,...,k_r)``:  nested double sum over
  m_1 > ... > m_r > 0 and n_1,...,n_r > 0 of
  prod_i n_i^(k_i - 1)/(k_i - 1)! * q^(m_1 n_1 + ... + m_r n_r)
* ``macmahon_a(r)`` / ``macmahon_c(r)``: MacMahon's generalized sums of
  divisors, i.e. sum over m_1 > ... > m_r > 0 (all odd, for C) of
  prod_i q^(m_i)/(1 - q^(m_i))^2

``macmahon_a(r)`` equals ``multiple_divisor_series((2,)*r)`` because
q^m/(1-q^m)^2 = sum_{n>0} n q^(mn); both are computed and cross-asserted.
``partition_oracle`` gives a third, series-free route to any single
coefficient by exhaustive enumeration.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from typing import Sequence

from .series import Series

_BERNOULLI_CACHE = [Fraction(1)]
_BERNOULLI_LOCK = threading.Lock()  # appends must not interleave


def bernoulli(k: int) -> Fraction:
    """k-th Bernoulli number via the defining recurrence, memoized.

    Convention: B_1 = -1/2, B_2 = 1/6, so that the Eisenstein constant term
    -B_2/(2*2!) comes out as -1/24.
    """
    if k < 0:
        raise ValueError("Bernoulli numbers need k >= 0")
    if len(_BERNOULLI_CACHE) <= k:
        with _BERNOULLI_LOCK:
            while len(_BERNOULLI_CACHE) <= k:
                m = len(_BERNOULLI_CACHE)
                # sum_{j=0}^{m} C(m+1, j) B_j = 0
                acc = sum(comb(m + 1, j) * _BERNOULLI_CACHE[j] for j in range(m))
                _BERNOULLI_CACHE.append(Fraction(-acc, m + 1))
    return _BERNOULLI_CACHE[k]


def divisor_power_sums(power: int, order: int) -> list:
    """Sieve of sigma_power(n) = sum_{d | n} d^power for n = 0..order (entry 0 is 0)."""
    out = [0] * (order + 1)
    for d in range(1, order + 1):
        dp = d**power
        for n in range(d, order + 1, d):
            out[n] += dp
    return out


def eisenstein(k: int, order: int) -> Series:
    """Eisenstein series G_k of weight k as a q-expansion up to ``order``."""
    if k < 2 or k % 2:
        raise ValueError("Eisenstein weight must be an even integer >= 2")
    if order < 0:
        raise ValueError("order must be >= 0")
    sig = divisor_power_sums(k - 1, order)
    fk = factorial(k - 1)
    coeffs = [Fraction(-bernoulli(k), 2 * factorial(k))]
    coeffs += [Fraction(sig[n], fk) for n in range(1, order + 1)]
    return Series(coeffs)


def _eisenstein_odd_direct(k: int, order: int) -> Series:
    # double sum over odd m >= 1, n >= 1 of n^(k-1) q^(mn) / (k-1)!
    out = [0] * (order + 1)
    for m in range(1, order + 1, 2):
        for n in range(1, order // m + 1):
            out[m * n] += n ** (k - 1)
    fk = factorial(k - 1)
    return Series([Fraction(c, fk) for c in out])


def eisenstein_odd(k: int, order: int) -> Series:
    """Odd Eisenstein series G^o_k = G_k(q) - G_k(q^2); no constant term.

    Computed both by the subtraction and by the direct odd-m double sum,
    which must agree coefficientwise.
    """
    g = eisenstein(k, order)
    sub = [g.coeffs[n] - (g.coeffs[n // 2] if n % 2 == 0 else 0) for n in range(order + 1)]
    # constant term cancels exactly
    sub[0] = Fraction(0)
    by_subtraction = Series(sub)
    direct = _eisenstein_odd_direct(k, order)
    assert by_subtraction == direct, f"odd Eisenstein routes disagree for k={k}"
    return direct


@dataclass(frozen=True)
class Index:
    """An integer composition (k_1, ..., k_r), the index of a nested sum."""

    parts: tuple

    def __init__(self, parts: Sequence[int]):
        parts = tuple(int(p) for p in parts)
        if not parts or any(p < 1 for p in parts):
            raise ValueError("an index needs at least one part, all parts >= 1")
        object.__setattr__(self, "parts", parts)

    @property
    def depth(self) -> int:
        return len(self.parts)

    @property
    def weight(self) -> int:
        return sum(self.parts)

    @property
    def admissible(self) -> bool:
        return self.parts[0] >= 2

    @property
    def all_geq_two(self) -> bool:
        return min(self.parts) >= 2


def _as_parts(index) -> tuple:
    if isinstance(index, Index):
        return index.parts
    if isinstance(index, int):
        return (index,)
    return Index(index).parts


def _nested_divisor_coeffs(parts: tuple, order: int, odd_m: bool) -> list:
    """Integer numerators of the nested sum, by bounded depth-first search.

    Enumerates every tuple m_1 > ... > m_r > 0 (odd if requested),
    n_1, ..., n_r > 0 with sum m_i n_i <= order, accumulating the weight
    prod n_i^(k_i - 1) at exponent sum m_i n_i.  Level i is entered with the
    smallest row first, so parts are consumed in reverse.
    """
    r = len(parts)
    coeffs = [0] * (order + 1)
    rev = parts[::-1]  # rev[i] is the exponent for the (i+1)-th smallest m
    step = 2 if odd_m else 1

    def recurse(level, m_floor, budget, weight, total):
        # minimal extra cost if we place the remaining rows as tightly as possible
        k = rev[level]
        m = m_floor + step
        remaining = r - level
        while True:
            min_cost = remaining * m + step * (remaining * (remaining - 1)) // 2
            if min_cost > budget:
                return
            tail_min = min_cost - m  # rows above this one, at their cheapest
            mn = m
            n = 1
            while mn + tail_min <= budget:
                w = weight * (n ** (k - 1))
                if level + 1 == r:
                    coeffs[total + mn] += w
                else:
                    recurse(level + 1, m, budget - mn, w, total + mn)
                n += 1
                mn += m
            m += step

    recurse(0, 1 - step, order, 1, 0)
    return coeffs


def multiple_divisor_series(index, order: int) -> Series:
    """The nested divisor-sum series g(k_1, ..., k_r) up to ``order``."""
    parts = _as_parts(index)
    if order < 0:
        raise ValueError("order must be >= 0")
    denom = 1
    for k in parts:
        denom *= factorial(k - 1)
    nums = _nested_divisor_coeffs(parts, order, odd_m=False)
    return Series([Fraction(c, denom) for c in nums])


def multiple_divisor_series_odd(index, order: int) -> Series:
    """Same nested sum restricted to odd m_1, ..., m_r."""
    parts = _as_parts(index)
    if order < 0:
        raise ValueError("order must be >= 0")
    denom = 1
    for k in parts:
        denom *= factorial(k - 1)
    nums = _nested_divisor_coeffs(parts, order, odd_m=True)
    return Series([Fraction(c, denom) for c in nums])


def _macmahon_product_coeffs(r: int, order: int, odd_m: bool) -> list:
    """Direct expansion of sum over m_1 > ... > m_r of prod q^(m_i)/(1-q^(m_i))^2.

    Dynamic programming over the part size m: each size contributes the
    factor q^m/(1-q^m)^2 = sum_{n>0} n q^(mn) at most once per chain slot.
    """
    rows = [[0] * (order + 1) for _ in range(r + 1)]
    rows[0][0] = 1
    start, step = (1, 2) if odd_m else (1, 1)
    for m in range(start, order + 1, step):
        for j in range(r, 0, -1):
            prev, cur = rows[j - 1], rows[j]
            for d0 in range(order - m + 1):
                c = prev[d0]
                if c:
                    n = 1
                    d = d0 + m
                    while d <= order:
                        cur[d] += c * n
                        n += 1
                        d += m
    return rows[r]


def macmahon_a(r: int, order: int) -> Series:
    """MacMahon's A_r: generalized sums of divisors over r distinct part sizes.

    Computed from the product formula and cross-checked against the nested
    divisor-sum enumeration of the same series.
    """
    if r < 1:
        raise ValueError("need r >= 1")
    if order < 0:
        raise ValueError("order must be >= 0")
    direct = Series([Fraction(c) for c in _macmahon_product_coeffs(r, order, odd_m=False)])
    assert direct == multiple_divisor_series((2,) * r, order), f"A_{r} routes disagree"
    return direct


def macmahon_c(r: int, order: int) -> Series:
    """MacMahon's C_r: the odd-part-size variant of A_r."""
    if r < 1:
        raise ValueError("need r >= 1")
    if order < 0:
        raise ValueError("order must be >= 0")
    direct = Series([Fraction(c) for c in _macmahon_product_coeffs(r, order, odd_m=True)])
    assert direct == multiple_divisor_series_odd((2,) * r, order), f"C_{r} routes disagree"
    return direct


def partition_oracle(r: int, n: int, odd: bool = False) -> int:
    """Coefficient of q^n in A_r (or C_r), with no series arithmetic at all.

    Exhaustively enumerates solutions of m_1 n_1 + ... + m_r n_r = n with
    m_1 > ... > m_r > 0 (odd m if requested) and n_i > 0, summing the
    weights prod n_i.
    """
    if r < 1:
        raise ValueError("need r >= 1")
    if n < 0:
        raise ValueError("need n >= 0")
    step = 2 if odd else 1

    def count(level, m_floor, remaining):
        # level = rows still to place, ordered smallest m first
        total = 0
        m = m_floor + step
        while True:
            min_cost = level * m + step * (level * (level - 1)) // 2
            if min_cost > remaining:
                return total
            tail_min = min_cost - m
            mn = m
            n_i = 1
            while mn + tail_min <= remaining:
                if level == 1:
                    if mn == remaining:
                        total += n_i
                else:
                    total += n_i * count(level - 1, m, remaining - mn)
                n_i += 1
                mn += m
            m += step

    return count(r, 1 - step, n)
