"""Power sums and binomial bases, used when products of unknown degrees
have to be pulled out of triton counts."""

from __future__ import annotations

from fractions import Fraction
from math import comb
from typing import Sequence


def product_from_power_sums(p1: int, p2: int, p3: int) -> Fraction:
    """xyz from the first three power sums of x, y, z."""
    return Fraction(p1 ** 3 - 3 * p1 * p2 + 2 * p3, 6)


def pair_product_from_power_sums(p1: int, p2: int) -> Fraction:
    return Fraction(p1 * p1 - p2, 2)


def power_in_binomials(k: int) -> list:
    """Coefficients c_0..c_k with z**k == sum c_i C(z, i), found by peeling
    off the leading coefficient (Stirling numbers of the second kind times i!)."""
    # work with values at z = 0..k: c_i = sum_j (-1)^(i-j) C(i,j) j^k
    return [sum((-1) ** (i - j) * comb(i, j) * j ** k for j in range(i + 1)) for i in range(k + 1)]


def binomial_expand(z: int, coeffs: Sequence[int]) -> int:
    return sum(c * comb(z, i) for i, c in enumerate(coeffs))


def square_square(a: int, b: int) -> int:
    return (2 * comb(a, 2) + a) * (2 * comb(b, 2) + b)


def cube_cube(a: int, b: int) -> int:
    return (6 * comb(a, 3) + 6 * comb(a, 2) + a) * (6 * comb(b, 3) + 6 * comb(b, 2) + b)


def square_fourth(a: int, b: int) -> int:
    return (2 * comb(a, 2) + a) * (24 * comb(b, 4) + 36 * comb(b, 3) + 14 * comb(b, 2) + b)


def power_sum_from_counts(counts, s: int, t: int, scale: int = 1) -> Fraction:
    """sum_i x_i^s y_i^t given counts[(u, v)] = scale * sum_i C(x_i,u) C(y_i,v)."""
    cs = power_in_binomials(s)
    ct = power_in_binomials(t)
    tot = 0
    for u, a in enumerate(cs):
        for v, b in enumerate(ct):
            if a and b:
                tot += a * b * counts[(u, v)]
    return Fraction(tot, scale)
