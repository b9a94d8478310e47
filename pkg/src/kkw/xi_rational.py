"""Rational functions of xi_n whose poles sit only at xi_n = +i and -i.

A value is stored in its (unique) partial-fraction form::

    f = sum_p P[p] xi^p + sum_k A[k] / (xi - i)^k + sum_k B[k] / (xi + i)^k

with coefficients in any ring that supports ``+``, ``*`` and scaling by
:class:`GaussianRational` (CoeffPoly for scalar integrands, CliffordExpr
before tracing). Ordering of coefficient products is preserved, so
non-commuting coefficients are safe. Because the form is canonical,
``pi_plus`` is simply the principal part at ``+i`` and the contour
integral over Gamma+ is ``2*pi*i`` times the ``1/(xi - i)`` coefficient.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Callable, Mapping

from .coeffs import CoeffPoly, GaussianRational, I, ONE, PI

__all__ = [
    "XiRational",
    "NonProperInput",
    "xi",
    "pole_plus",
    "pole_minus",
    "inv_norm2",
    "cauchy_residue",
]


class NonProperInput(ValueError):
    """The rational function has a polynomial part."""


_G = GaussianRational


def _binom_neg(b: int, r: int) -> int:
    # binomial(-b, r)
    return (-1) ** r * comb(b + r - 1, r) if b else (1 if r == 0 else 0)


def _shifted_numerator(p: int, center: GaussianRational) -> list:
    # coefficients of (center + t)^p in t
    return [_G(comb(p, s)) * center ** (p - s) for s in range(p + 1)]


def _inverse_power_series(b: int, d: GaussianRational, order: int) -> list:
    # (d + t)^(-b) = sum_r binom(-b, r) d^(-b-r) t^r, r < order
    return [_G(_binom_neg(b, r)) * d ** (-b - r) for r in range(order)]


@lru_cache(maxsize=None)
def _basis(p: int, a: int, b: int):
    """Partial fractions of xi^p / ((xi - i)^a (xi + i)^b) over Q(i)."""
    def laurent(center, other, own_order, other_order):
        num = _shifted_numerator(p, center)
        ser = _inverse_power_series(other_order, other, own_order)
        out = {}
        for u in range(own_order):
            acc = _G(0)
            for s in range(min(u, p) + 1):
                acc = acc + num[s] * ser[u - s]
            if acc:
                out[own_order - u] = acc
        return out

    at_i = laurent(I, 2 * I, a, b) if a else {}
    at_mi = laurent(-I, -2 * I, b, a) if b else {}
    poly = {}
    if p >= a + b:
        # long division of xi^p by (xi - i)^a (xi + i)^b
        den = [_G(1)]
        for root, times in ((I, a), (-I, b)):
            for _ in range(times):
                nxt = [_G(0)] * (len(den) + 1)
                for k, v in enumerate(den):
                    nxt[k + 1] = nxt[k + 1] + v
                    nxt[k] = nxt[k] - v * root
                den = nxt
        deg = len(den) - 1
        rem = [_G(0)] * p + [_G(1)]
        for q in range(p - deg, -1, -1):
            lead = rem[q + deg]
            if lead:
                poly[q] = lead
                for k, v in enumerate(den):
                    rem[q + k] = rem[q + k] - lead * v
    return (
        tuple(sorted(poly.items())),
        tuple(sorted(at_i.items())),
        tuple(sorted(at_mi.items())),
    )


def _add_into(target: dict, key, value):
    if key in target:
        v = target[key] + value
        if v:
            target[key] = v
        else:
            del target[key]
    elif value:
        target[key] = value


class XiRational:
    """Immutable rational function of xi_n in canonical partial-fraction form."""

    __slots__ = ("poly", "at_i", "at_mi")

    def __init__(self, poly: Mapping | None = None, at_i: Mapping | None = None,
                 at_mi: Mapping | None = None):
        object.__setattr__(self, "poly", {k: v for k, v in (poly or {}).items() if v})
        object.__setattr__(self, "at_i", {k: v for k, v in (at_i or {}).items() if v})
        object.__setattr__(self, "at_mi", {k: v for k, v in (at_mi or {}).items() if v})
        for k in list(self.at_i) + list(self.at_mi):
            if k < 1:
                raise ValueError("pole orders must be positive")

    def __setattr__(self, name, value):
        raise AttributeError("XiRational is immutable")

    # construction ---------------------------------------------------------
    @classmethod
    def const(cls, c) -> "XiRational":
        return cls(poly={0: c})

    @classmethod
    def from_raw(cls, numerator: Mapping[int, object], a: int, b: int) -> "XiRational":
        """``sum_p numerator[p] xi^p / ((xi - i)^a (xi + i)^b)``."""
        poly: dict = {}
        at_i: dict = {}
        at_mi: dict = {}
        for p, coef in numerator.items():
            if not coef:
                continue
            bp, bi, bm = _basis(p, a, b)
            for k, g in bp:
                _add_into(poly, k, coef * g)
            for k, g in bi:
                _add_into(at_i, k, coef * g)
            for k, g in bm:
                _add_into(at_mi, k, coef * g)
        return cls(poly, at_i, at_mi)

    def raw_terms(self):
        """Yield ``(numerator, a, b)`` triples whose sum is ``self``."""
        if self.poly:
            yield dict(self.poly), 0, 0
        for k, v in self.at_i.items():
            yield {0: v}, k, 0
        for k, v in self.at_mi.items():
            yield {0: v}, 0, k

    # predicates -----------------------------------------------------------
    def is_zero(self) -> bool:
        return not (self.poly or self.at_i or self.at_mi)

    def __bool__(self):
        return not self.is_zero()

    def is_proper(self) -> bool:
        return not self.poly

    def __eq__(self, other):
        if not isinstance(other, XiRational):
            return NotImplemented
        return self.poly == other.poly and self.at_i == other.at_i and self.at_mi == other.at_mi

    def __hash__(self):
        return hash((frozenset(self.poly.items()), frozenset(self.at_i.items()),
                     frozenset(self.at_mi.items())))

    # arithmetic -----------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, XiRational):
            other = XiRational.const(other)
        parts = []
        for mine, theirs in ((self.poly, other.poly), (self.at_i, other.at_i),
                             (self.at_mi, other.at_mi)):
            d = dict(mine)
            for k, v in theirs.items():
                _add_into(d, k, v)
            parts.append(d)
        return XiRational(*parts)

    __radd__ = __add__

    def __neg__(self):
        return self.scale(_G(-1))

    def __sub__(self, other):
        if not isinstance(other, XiRational):
            other = XiRational.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, s) -> "XiRational":
        """Right-multiply every coefficient by ``s``."""
        return self.map_coeffs(lambda v: v * s)

    def lscale(self, s) -> "XiRational":
        """Left-multiply every coefficient by ``s``."""
        return self.map_coeffs(lambda v: s * v)

    def __mul__(self, other):
        if not isinstance(other, XiRational):
            return self.scale(other)
        out = XiRational()
        for n1, a1, b1 in self.raw_terms():
            for n2, a2, b2 in other.raw_terms():
                num: dict = {}
                for p1, c1 in n1.items():
                    for p2, c2 in n2.items():
                        _add_into(num, p1 + p2, c1 * c2)
                out = out + XiRational.from_raw(num, a1 + a2, b1 + b2)
        return out

    def __rmul__(self, other):
        return self.lscale(other)

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        out = XiRational.const(ONE)
        for _ in range(k):
            out = out * self
        return out

    def map_coeffs(self, fn: Callable) -> "XiRational":
        return XiRational(
            {k: fn(v) for k, v in self.poly.items()},
            {k: fn(v) for k, v in self.at_i.items()},
            {k: fn(v) for k, v in self.at_mi.items()},
        )

    # calculus -------------------------------------------------------------
    def derivative(self, k: int = 1) -> "XiRational":
        """k-fold d/dxi_n."""
        f = self
        for _ in range(k):
            poly = {p - 1: v * _G(p) for p, v in f.poly.items() if p > 0}
            at_i = {m + 1: v * _G(-m) for m, v in f.at_i.items()}
            at_mi = {m + 1: v * _G(-m) for m, v in f.at_mi.items()}
            f = XiRational(poly, at_i, at_mi)
        return f

    def partial_fractions(self):
        """``(poly_part, principal_at_i, principal_at_minus_i)`` as dicts
        keyed by power / pole order."""
        return dict(self.poly), dict(self.at_i), dict(self.at_mi)

    def proper_part(self) -> "XiRational":
        """Drop the polynomial part, keeping both principal parts."""
        return XiRational(at_i=self.at_i, at_mi=self.at_mi)

    def pi_plus(self) -> "XiRational":
        """Principal part at the upper half-plane pole xi_n = i."""
        if self.poly:
            raise NonProperInput("pi_plus needs a proper rational function")
        return XiRational(at_i=self.at_i)

    def pi_minus(self) -> "XiRational":
        if self.poly:
            raise NonProperInput("pi_minus needs a proper rational function")
        return XiRational(at_mi=self.at_mi)

    def residue_at_i(self, zero=None):
        return self.at_i.get(1, zero)

    def contour_gamma_plus(self, zero=None):
        """Integral over a positively oriented contour around xi_n = i only.

        PI stays symbolic: the result is ``residue * (2i) * PI``.
        """
        if self.poly:
            raise NonProperInput("contour integral needs a proper rational function")
        r = self.at_i.get(1)
        if r is None:
            return CoeffPoly() if zero is None else zero
        return r * (CoeffPoly.symbol(PI) * (2 * I))

    # evaluation -----------------------------------------------------------
    def evaluate(self, point, coeff_value: Callable = lambda v: v):
        """Numeric value at a complex ``point`` (a float complex), with
        coefficients mapped to numbers by ``coeff_value``."""
        z = complex(point)
        total = 0j
        for p, v in self.poly.items():
            total += complex(coeff_value(v)) * z**p
        for k, v in self.at_i.items():
            total += complex(coeff_value(v)) / (z - 1j) ** k
        for k, v in self.at_mi.items():
            total += complex(coeff_value(v)) / (z + 1j) ** k
        return total

    def evaluate_exact(self, point: GaussianRational):
        """Exact value at a Gaussian-rational point (coefficients stay
        symbolic)."""
        total = None
        pieces = [(v, point ** p) for p, v in self.poly.items()]
        pieces += [(v, (point - I) ** (-k)) for k, v in self.at_i.items()]
        pieces += [(v, (point + I) ** (-k)) for k, v in self.at_mi.items()]
        for v, s in pieces:
            term = v * s
            total = term if total is None else total + term
        return total

    def canonical(self) -> str:
        parts = []
        for p in sorted(self.poly):
            parts.append(f"[{self.poly[p]}]*xi^{p}")
        for k in sorted(self.at_i):
            parts.append(f"[{self.at_i[k]}]/(xi-i)^{k}")
        for k in sorted(self.at_mi):
            parts.append(f"[{self.at_mi[k]}]/(xi+i)^{k}")
        return " + ".join(parts) if parts else "0"

    __str__ = canonical

    def __repr__(self):
        return f"XiRational({self.canonical()!r})"


def xi(coeff=ONE) -> XiRational:
    return XiRational(poly={1: coeff})


def pole_plus(k: int = 1, coeff=ONE) -> XiRational:
    """``coeff / (xi - i)^k``."""
    return XiRational(at_i={k: coeff}) if k else XiRational.const(coeff)


def pole_minus(k: int = 1, coeff=ONE) -> XiRational:
    """``coeff / (xi + i)^k``."""
    return XiRational(at_mi={k: coeff}) if k else XiRational.const(coeff)


def inv_norm2(k: int = 1, coeff=ONE) -> XiRational:
    """``coeff / (1 + xi^2)^k``."""
    return XiRational.from_raw({0: coeff}, k, k)


def cauchy_residue(numerator: Mapping[int, object], a: int, b: int):
    """Residue at xi = i of ``N(xi) / ((xi - i)^a (xi + i)^b)`` by the
    Cauchy derivative formula ``g^(a-1)(i) / (a-1)!``, ``g = N/(xi+i)^b``.

    Independent of the Laurent-series route used by :class:`XiRational`.
    """
    if a == 0:
        return None
    r = a - 1
    total = None
    for s in range(r + 1):
        # s-th derivative of N at i
        dn = None
        for p, coef in numerator.items():
            if p < s or not coef:
                continue
            falling = factorial(p) // factorial(p - s)
            term = coef * (_G(falling) * I ** (p - s))
            dn = term if dn is None else dn + term
        if dn is None:
            continue
        q = r - s
        # q-th derivative of (xi + i)^(-b) at i
        fall = 1
        for t in range(q):
            fall *= -b - t
        dd = _G(fall) * (2 * I) ** (-b - q)
        term = dn * (_G(comb(r, s)) * dd)
        total = term if total is None else total + term
    if total is None:
        return None
    return total * _G(Fraction(1, factorial(r)))

