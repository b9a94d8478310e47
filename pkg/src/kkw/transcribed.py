"""Trace integrands as stated in the source derivation, one per case.

Each integrand is the xi_n-rational multiplying a tangential pattern after
the trace has been taken at |xi'| = 1. Mixed patterns are not recorded:
they integrate to zero over the sphere. Integrands written for the
integrated-by-parts form ``tr[d_xi F * G]`` carry ``by_parts=True``; their
effective prefactor is the negated master prefactor.

Literal readings applied while transcribing:
``xi`` for ``xi_n`` inside numerators, ``(1_5 x)`` as ``(1 - 5 x)``, and a
trace-of-identity factor replaced by the per-dimension value.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .clifford import TRACE_ID
from .coeffs import C0, HP, CoeffPoly, GaussianRational
from .sphere import Pattern
from .xi_rational import XiRational

__all__ = ["Transcription", "get_transcription", "TRANSCRIPTIONS"]


def z(re, im=0) -> CoeffPoly:
    return CoeffPoly.const(GaussianRational(Fraction(re), Fraction(im)))


def poly(*coeffs) -> XiRational:
    """Polynomial in xi_n, lowest degree first; entries are numbers or
    ``(re, im)`` pairs."""
    terms = {}
    for p, c in enumerate(coeffs):
        c = z(*c) if isinstance(c, tuple) else z(c)
        if c:
            terms[p] = c
    return XiRational(poly=terms)


def P(a: int, b: int = 0) -> XiRational:
    """1 / ((xi - i)^a (xi + i)^b)."""
    return XiRational.from_raw({0: z(1)}, a, b)


def Q(k: int) -> XiRational:
    """1 / (1 + xi^2)^k."""
    return P(k, k)


_X = poly(0, 1)
_HP = CoeffPoly.symbol(HP)
_A = poly(-1, 0, 5)          # 5 xi^2 - 1
_B = poly(0, -1, 0, 1)       # xi^3 - xi
_S = poly(1, 0, 1)           # 1 + xi^2
_XS = poly(0, 1, 0, 1)       # xi (1 + xi^2)
_X2S = poly(0, 0, 1, 0, 1)   # xi^2 (1 + xi^2)


@dataclass(frozen=True)
class Transcription:
    dim: int
    label: str
    integrands: dict
    by_parts: bool
    # prefactor the derivation itself places in front of the integral
    stated_prefactor: GaussianRational
    notes: tuple = field(default_factory=tuple)


def _n4() -> list[Transcription]:
    out = []
    out.append(Transcription(4, "aI", {}, False, GaussianRational(-1),
                             ("no integrand stated; the case vanishes with the tangential derivative",)))
    xy = (z(0, 8) * _A * P(5, 4) + (_A * z(4) + _B * z(0, 12)) * P(6, 4)) * _HP
    nn = ((poly(1, 0, -1) * z(4, -4) + _B * z(48)) * P(5, 4)
          - (_A * z(4) + _B * z(0, 12)) * P(6, 4)) * _HP
    out.append(Transcription(4, "aII", {Pattern.XY: xy, Pattern.NN: nn}, False,
                             GaussianRational(Fraction(1, 2))))
    xy = P(5, 2) * (_HP * -2)
    out.append(Transcription(4, "aIII", {Pattern.XY: xy, Pattern.NN: xy}, False,
                             GaussianRational(Fraction(1, 2))))
    c0 = CoeffPoly.symbol(C0)
    xy = (Q(2) * (c0 * z(0, -2))
          + poly(-2, (0, -1), 1) * P(1) * Q(2) * (_HP * Fraction(1, 2))
          - poly((0, 4), -1, (0, -1)) * P(3, 2) * (_HP * z(0, Fraction(-1, 8)) * TRACE_ID[4]))
    nn = ((poly(4, (0, -4)) - _S * z(3)) * P(4, 3)
          + (poly((0, 4), 4) - _S * z(0, 3)) * P(5, 3) * z(Fraction(1, 2))) * _HP
    out.append(Transcription(4, "b", {Pattern.XY: xy, Pattern.NN: nn}, True, GaussianRational(0, 1),
                             ("trace-of-identity factor appears in one term only",)))
    xy = poly((7, 6), (-20, 15), (-7, 6), (0, 15)) * P(5, 4) * _HP
    nn = (poly(0, 1, 0, -1) * z(-11, 3) - _X * z(0, 16) + _S * z(13, Fraction(7, 2)) - z(16)
          - _X2S * z(Fraction(15, 2))) * P(2, 4)
    out.append(Transcription(4, "c", {Pattern.XY: xy, Pattern.NN: nn}, True, GaussianRational(1),
                             ("normal-normal integrand is stated without the h'(0) factor",)))
    return out


def _n3() -> list[Transcription]:
    xy = -(poly((0, 1), -1) * P(4, 2))
    nn = poly(0, 0, 2, (0, 2)) * P(3, 2) * z(0, Fraction(-1, 2))
    return [Transcription(3, "single", {Pattern.XY: xy, Pattern.NN: nn}, True, GaussianRational(1),
                          ("integrand is stated without an h'(0) factor",))]


def _n6() -> list[Transcription]:
    out = [Transcription(6, "aI", {}, False, GaussianRational(-1),
                         ("no integrand stated; the case vanishes with the tangential derivative",))]
    xy = (_A * P(5, 4) * z(0, 24)
          + (poly(28, (0, 2)) * _A + _B * z(0, 24)) * P(6, 4)
          - (_A * z(32) + _B * z(96)) * P(7, 4)) * (_HP * z(0, -1))
    nn = ((_A * z(0, 46) - _B * z(216)) * P(5, 4)
          - (_A * z(26) + _B * z(0, 72)) * P(6, 4)
          - (_A * z(16) + _B * z(0, 48)) * P(7, 4) * z(0, -1)) * (_HP * z(0, 1))
    out.append(Transcription(6, "aII", {Pattern.XY: xy, Pattern.NN: nn}, False,
                             GaussianRational(Fraction(1, 2))))
    one_m5 = poly(1, 0, -5)
    xy = (_X * P(2) * Q(4) * z(0, 24) - _X * P(2) * Q(3) * z(0, 4)
          + (_X * z(48) - one_m5 * z(0, 8)) * P(3) * Q(4) - _X * P(3) * Q(3) * z(8)) * _HP
    nn = ((_X * z(0, 24) + one_m5 * z(8)) * P(2) * Q(4) - _X * P(2) * Q(3) * z(0, 4)
          - (_X * z(48) - one_m5 * z(0, 8)) * P(3) * Q(4) + _X * P(3) * Q(3) * z(8)) * _HP
    out.append(Transcription(6, "aIII", {Pattern.XY: xy, Pattern.NN: nn}, False,
                             GaussianRational(Fraction(1, 2))))
    e = (_XS * z(-22, 6) - _X * z(0, 32) + _S * z(26, -7) - z(32) - _X2S * z(0, 15))
    xy = ((_XS * z(-11, 3) - _X * z(0, 16)) * P(2) * Q(4) - e * P(3, 4) * z(0, 1)) * _HP
    nn = ((_XS * z(-11, -3) + _X * z(16) + _S * z(-14, 48) - z(0, 32) + _X2S * z(30)) * P(6, 4)
          + e * P(3, 4)) * (_HP * z(0, -1))
    out.append(Transcription(6, "b", {Pattern.XY: xy, Pattern.NN: nn}, True, GaussianRational(0, 1),
                             ("stated integrand names the degree -3 symbol where the degree -4 one is used",)))
    xy = (P(4, 3) * z(1, -9) - P(3, 2) * z(Fraction(6, 4), Fraction(-27, 4)) - P(5, 3) * z(27, 58)
          + _X * P(5, 3) * z(1, 5) + P(4, 2) * z(Fraction(81, 4), Fraction(174, 4))
          - P(6, 3) * z(10, -2) + _X * P(6, 3) * z(14, -1) + P(5, 2) * z(8, Fraction(-3, 2))
          + P(7, 3) * z(-12, 4) - _X * P(7, 3) * z(0, 16) + P(6, 2) * z(9, -3)) * _HP
    nn = (-(P(4, 3) * z(Fraction(72, 4), Fraction(25, 4))) + P(3, 2) * z(54, 8) - P(5, 3) * z(7, 43)
          + _X * P(5, 3) * z(22, Fraction(-9, 2)) + P(4, 2) * z(Fraction(21, 4), Fraction(129, 4))
          + P(6, 3) * z(22, -26) + _X * P(6, 3) * z(3) - P(6, 2) * z(Fraction(33, 2), Fraction(-39, 2))
          + P(7, 3) * z(0, 2) + _X * P(7, 3) * z(16) - P(6, 2) * z(0, Fraction(3, 2))) * _HP
    out.append(Transcription(6, "c", {Pattern.XY: xy, Pattern.NN: nn}, False, GaussianRational(0, -1)))
    return out


TRANSCRIPTIONS: dict[tuple[int, str], Transcription] = {
    (t.dim, t.label): t for t in _n3() + _n4() + _n6()
}


def get_transcription(n: int, label: str) -> Transcription:
    try:
        return TRANSCRIPTIONS[(n, label)]
    except KeyError:
        raise KeyError(f"no transcribed integrand for dimension {n}, case {label!r}")
