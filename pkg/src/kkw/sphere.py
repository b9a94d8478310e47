"""Exact integrals of tangential covector monomials over the unit sphere
S^m (m = n - 2) and their contraction into the symbols T and N."""

from __future__ import annotations

from enum import Enum
from fractions import Fraction
from typing import Sequence

from .coeffs import OMEGA, CoeffPoly, N, T

__all__ = ["Pattern", "UnsupportedDegree", "sphere_moment", "contract_pattern"]


class UnsupportedDegree(ValueError):
    pass


class Pattern(str, Enum):
    """Tangential weight multiplying a radial integrand.

    ``XY``  sum_{j,l<n} X_j Y_l xi_j xi_l
    ``XN``  sum_{j<n} X_j Y_n xi_j
    ``NY``  sum_{l<n} X_n Y_l xi_l
    ``NN``  X_n Y_n
    ``ONE`` no tangential weight
    ``ODD`` a term odd in xi' carrying connection data (A(X), A(Y), dY/dx)
    """

    XY = "XY"
    XN = "XN"
    NY = "NY"
    NN = "NN"
    ONE = "ONE"
    ODD = "ODD"

    def times(self, other: "Pattern") -> "Pattern":
        if self is Pattern.ONE:
            return other
        if other is Pattern.ONE:
            return self
        raise ValueError(f"pipeline never multiplies two weighted patterns ({self}, {other})")

    @property
    def odd(self) -> bool:
        return self in (Pattern.XN, Pattern.NY, Pattern.ODD)


def _double_factorial(k: int) -> int:
    out = 1
    while k > 1:
        out *= k
        k -= 2
    return out


def sphere_moment(alpha: Sequence[int], m: int) -> CoeffPoly:
    """``int_{S^m} xi^alpha dsigma`` with OMEGA(m) symbolic.

    ``alpha`` indexes the m+1 ambient coordinates (shorter tuples are padded
    with zeros).
    """
    if m < 1:
        raise ValueError("sphere dimension must be >= 1")
    alpha = tuple(alpha)
    if len(alpha) > m + 1:
        raise ValueError(f"multi-index {alpha} longer than ambient dimension {m + 1}")
    if any(a < 0 for a in alpha):
        raise ValueError("negative exponent in multi-index")
    if any(a % 2 for a in alpha):
        return CoeffPoly()
    deg = sum(alpha)
    if deg > 4:
        raise UnsupportedDegree(f"|alpha| = {deg} > 4")
    num = 1
    for a in alpha:
        num *= _double_factorial(a - 1)
    den = 1
    for r in range(deg // 2):
        den *= m + 1 + 2 * r
    return CoeffPoly.symbol(OMEGA(m), coeff=Fraction(num, den))


def contract_pattern(p: Pattern, m: int, alpha: Sequence[int] | None = None) -> CoeffPoly:
    """Sphere integral of a pattern weight, contracted to T / N."""
    if p is Pattern.XY:
        # int xi_j xi_l = delta_jl OMEGA/(m+1); sum_j X_j Y_j = T
        return sphere_moment((2,), m) * CoeffPoly.symbol(T)
    if p is Pattern.NN:
        return CoeffPoly.symbol(OMEGA(m)) * CoeffPoly.symbol(N)
    if p is Pattern.ONE:
        if alpha is not None:
            return sphere_moment(alpha, m)
        return CoeffPoly.symbol(OMEGA(m))
    return CoeffPoly()
