"""Boundary-normalized symbols of the operators entering the boundary terms.

A symbol component is a :class:`SymbolExpr`: a map from tangential
:class:`~kkw.sphere.Pattern` to a :class:`Jet`. A jet is a finite sum

    coeff * xi_n^p * |xi|^(-2k)

with Clifford coefficients, kept in this form (rather than as a rational in
xi_n) so that the normal derivative can still act on |xi|^2: at the
boundary point |xi|^2(x_n) = h(x_n)|xi'|^2 + xi_n^2, h(0) = 1, and
d/dx_n |xi|^2 = h'(0) = HP. Only after differentiation is |xi'| = 1
substituted (:meth:`SymbolExpr.at_boundary`).
"""

from __future__ import annotations

import json
from enum import Enum
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .clifford import DXIP, DXN, XIP, CliffordExpr, OpaqueFactor, c
from .coeffs import HP, CoeffPoly, GaussianRational, I
from .sphere import Pattern
from .xi_rational import XiRational

__all__ = [
    "Jet",
    "SymbolExpr",
    "OperatorId",
    "UnknownSymbol",
    "UnsupportedDerivative",
    "get_symbol",
    "d_xn",
    "d_xprime",
    "symbol_table",
    "symbol_table_json",
]


class UnknownSymbol(KeyError):
    pass


class UnsupportedDerivative(ValueError):
    """A normal derivative would need data beyond first order at x_0
    (h''(0), d/dx_n of an opaque factor, or of d/dx_n c(xi'))."""


def _d_word(word: tuple) -> CliffordExpr:
    out = CliffordExpr()
    for pos, f in enumerate(word):
        if f == XIP:
            out = out + CliffordExpr.word(*word[:pos], DXIP, *word[pos + 1:])
        elif f == DXN:
            continue
        else:
            raise UnsupportedDerivative(f"no normal-derivative rule for factor {f}")
    return out


def _d_coeff(expr: CliffordExpr) -> CliffordExpr:
    out = CliffordExpr()
    for w, coef in expr.items():
        if not coef.is_constant():
            raise UnsupportedDerivative(f"coefficient {coef} depends on x_n beyond first order")
        out = out + _d_word(w) * coef
    return out


class Jet:
    """``{(p, k): coeff}`` meaning ``sum coeff * xi_n^p * |xi|^(-2k)``."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[tuple[int, int], CliffordExpr] | None = None):
        clean = {}
        for key, v in (terms or {}).items():
            v = CliffordExpr.coerce(v)
            if v:
                clean[key] = v
        self.terms = clean

    @classmethod
    def const(cls, coeff, p: int = 0, k: int = 0) -> "Jet":
        return cls({(p, k): CliffordExpr.coerce(coeff)})

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return isinstance(other, Jet) and self.terms == other.terms

    def __add__(self, other: "Jet") -> "Jet":
        out = dict(self.terms)
        for key, v in other.terms.items():
            out[key] = out[key] + v if key in out else v
        return Jet(out)

    def __neg__(self):
        return Jet({k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, Jet):
            return Jet({k: v * other for k, v in self.terms.items()})
        out: dict = {}
        for (p1, k1), v1 in self.terms.items():
            for (p2, k2), v2 in other.terms.items():
                key = (p1 + p2, k1 + k2)
                v = v1 * v2
                out[key] = out[key] + v if key in out else v
        return Jet(out)

    def __rmul__(self, other):
        return Jet({k: other * v for k, v in self.terms.items()})

    def d_xn(self) -> "Jet":
        out = Jet()
        hp = CoeffPoly.symbol(HP)
        for (p, k), v in self.terms.items():
            out = out + Jet({(p, k): _d_coeff(v)})
            if k:
                out = out + Jet({(p, k + 1): v * (hp * (-k))})
        return out

    def at_boundary(self) -> XiRational:
        """Substitute |xi'| = 1, i.e. |xi|^2 = 1 + xi_n^2."""
        out = XiRational()
        for (p, k), v in self.terms.items():
            if k >= 0:
                out = out + XiRational.from_raw({p: v}, k, k)
            else:
                # (1 + xi^2)^(-k) expanded
                from math import comb
                num = {p + 2 * s: v * GaussianRational(comb(-k, s)) for s in range(-k + 1)}
                out = out + XiRational(poly=num)
        return out

    def canonical(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for (p, k) in sorted(self.terms):
            parts.append(f"{{{self.terms[(p, k)]}}}*xi_n^{p}*|xi|^{-2 * k}")
        return " + ".join(parts)


def c_xi() -> Jet:
    """c(xi) = c(xi') + xi_n c(dx_n)."""
    return Jet({(0, 0): c(XIP), (1, 0): c(DXN)})


def inv_norm(k: int) -> Jet:
    """|xi|^(-2k)."""
    return Jet.const(1, 0, k)


def xi_n(p: int = 1) -> Jet:
    return Jet.const(1, p, 0)


class SymbolExpr:
    """Pattern-weighted jets for one homogeneous symbol component."""

    def __init__(self, parts: Mapping[Pattern, Jet] | None = None, degree: int | None = None):
        self.parts = {Pattern(p): j for p, j in (parts or {}).items() if j}
        self.degree = degree

    def __bool__(self):
        return bool(self.parts)

    def __eq__(self, other):
        return isinstance(other, SymbolExpr) and self.parts == other.parts

    def __add__(self, other: "SymbolExpr") -> "SymbolExpr":
        out = dict(self.parts)
        for p, j in other.parts.items():
            out[p] = out[p] + j if p in out else j
        return SymbolExpr(out, self.degree)

    def __neg__(self):
        return SymbolExpr({p: -j for p, j in self.parts.items()}, self.degree)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, SymbolExpr):
            return SymbolExpr({p: j * other for p, j in self.parts.items()}, self.degree)
        out: dict = {}
        for p1, j1 in self.parts.items():
            for p2, j2 in other.parts.items():
                p = p1.times(p2)
                j = j1 * j2
                out[p] = out[p] + j if p in out else j
        deg = None
        if self.degree is not None and other.degree is not None:
            deg = self.degree + other.degree
        return SymbolExpr(out, deg)

    def d_xn(self) -> "SymbolExpr":
        return d_xn(self)

    def at_boundary(self) -> dict[Pattern, XiRational]:
        return {p: j.at_boundary() for p, j in self.parts.items()}

    def instantiate(self, x: Sequence, y: Sequence, xi_t: Sequence) -> Jet:
        """Collapse patterns for concrete vectors X, Y (length n) and a
        tangential covector xi' (length n-1). Opaque ``ODD`` parts are
        rejected."""
        xt, xn_ = [Fraction(v) for v in x[:-1]], Fraction(x[-1])
        yt, yn_ = [Fraction(v) for v in y[:-1]], Fraction(y[-1])
        xs = [Fraction(v) for v in xi_t]
        xdot = sum(a * b for a, b in zip(xt, xs))
        ydot = sum(a * b for a, b in zip(yt, xs))
        weights = {
            Pattern.XY: xdot * ydot,
            Pattern.XN: xdot * yn_,
            Pattern.NY: xn_ * ydot,
            Pattern.NN: xn_ * yn_,
        }
        out = Jet()
        for p, j in self.parts.items():
            if p not in weights:
                raise ValueError(f"pattern {p} has no concrete weight")
            out = out + j * GaussianRational(weights[p])
        return out

    def canonical(self) -> str:
        if not self.parts:
            return "0"
        return " ; ".join(f"{p.value}: {self.parts[p].canonical()}"
                          for p in sorted(self.parts, key=lambda q: q.value))

    __str__ = canonical


def d_xn(e: SymbolExpr) -> SymbolExpr:
    """Normal derivative at x_0: c(xi') -> DXIP, |xi|^2 -> HP, constants -> 0."""
    return SymbolExpr({p: j.d_xn() for p, j in e.parts.items()}, e.degree)


def d_xprime(e: SymbolExpr, index: int | None = None) -> SymbolExpr:
    """Tangential x-derivative at x_0. In the collar coordinates every
    tangential derivative of the boundary data vanishes at x_0."""
    return SymbolExpr({}, e.degree)


def weight_all(j: Jet) -> SymbolExpr:
    """``sum_{j,l<=n} X_j Y_l xi_j xi_l * j`` split into tangential /
    normal patterns (xi_n multiplies the mixed and normal parts)."""
    return SymbolExpr({
        Pattern.XY: j,
        Pattern.XN: xi_n(1) * j,
        Pattern.NY: xi_n(1) * j,
        Pattern.NN: xi_n(2) * j,
    })


def _opaque(name: str, coeff=1) -> Jet:
    return Jet.const(CliffordExpr.word(OpaqueFactor(name), coeff=coeff))


class OperatorId(str, Enum):
    DINV1 = "DINV1"
    DINV3 = "DINV3"
    NABLA2 = "NABLA2"
    NABLA2_DINV1 = "NABLA2_DINV1"
    NABLA2_DINV3 = "NABLA2_DINV3"


_i = I
_hp = CoeffPoly.symbol(HP)


def _sigma_m2_dinv1() -> Jet:
    # c(xi)p0 c(xi)/|xi|^4 + c(xi)/|xi|^6 c(dx_n)(d_n c(xi)|xi|^2 - c(xi) d_n|xi|^2)
    p0 = Jet.const(CliffordExpr.word(OpaqueFactor("p0")))
    cx = c_xi()
    return (cx * p0 * cx * inv_norm(2)
            + cx * Jet.const(c(DXN)) * Jet.const(c(DXIP)) * inv_norm(2)
            - cx * Jet.const(c(DXN)) * cx * inv_norm(3) * _hp)


def _sigma_m4_dinv3_bracket() -> Jet:
    # numerator over (1 + xi_n^2)^4, with each (1 + xi_n^2) read as |xi|^2
    h = _hp
    xip, dxn = c(XIP), c(DXN)
    return (
        Jet({(1, 3): xip * (h * Fraction(11, 2)), (1, 4): xip * (h * (8 * _i))})
        + Jet({(0, 4): dxn * (h * (-2 * _i)), (2, 4): dxn * (h * (6 * _i)),
               (0, 3): dxn * (h * Fraction(-7, 4)), (2, 3): dxn * (h * Fraction(15, 4))})
        + Jet({(1, 3): c(DXIP, -3 * _i)})
        + Jet({(0, 3): CliffordExpr.word(XIP, DXN, DXIP, coeff=_i)})
    )


def _build_table() -> dict[tuple[OperatorId, int], SymbolExpr]:
    cx = c_xi()
    one = Pattern.ONE
    odd = Pattern.ODD
    t: dict = {}

    t[(OperatorId.DINV1, -1)] = SymbolExpr({one: cx * inv_norm(1) * _i})
    t[(OperatorId.DINV1, -2)] = SymbolExpr({one: _sigma_m2_dinv1()})
    # sign fixed by sigma_-3 = (sigma_-1(D^-1))^3 = i c(xi)/|xi|^4
    t[(OperatorId.DINV3, -3)] = SymbolExpr({one: cx * inv_norm(2) * _i})
    t[(OperatorId.DINV3, -4)] = SymbolExpr({one: _sigma_m4_dinv3_bracket()})

    t[(OperatorId.NABLA2, 2)] = weight_all(Jet.const(-1))
    t[(OperatorId.NABLA2, 1)] = SymbolExpr({odd: _opaque("X.dY.xi", _i)
                                            + _opaque("A(Y)*X.xi", _i)
                                            + _opaque("A(Y)*Y.xi", _i)})
    t[(OperatorId.NABLA2, 0)] = SymbolExpr({one: _opaque("X[A(Y)]")
                                           + Jet.const(CliffordExpr.word(OpaqueFactor("A(X)"),
                                                                         OpaqueFactor("A(Y)")))})

    t[(OperatorId.NABLA2_DINV1, 1)] = weight_all(cx * inv_norm(1) * (-_i))
    t[(OperatorId.NABLA2_DINV1, 0)] = (
        -weight_all(_sigma_m2_dinv1())
        + SymbolExpr({odd: (_opaque("X.dY.xi", -_i) + _opaque("A(Y)*X.xi", -1)
                            + _opaque("A(Y)*Y.xi", -1)) * cx * inv_norm(1)})
    )

    t[(OperatorId.NABLA2_DINV3, -1)] = weight_all(cx * inv_norm(2) * _i)
    t[(OperatorId.NABLA2_DINV3, -2)] = (
        SymbolExpr({odd: (_opaque("A(Y)*X.xi", -1) + _opaque("A(X)*Y.xi", -1)
                          + _opaque("X.dY/dX.xi", -1)) * cx * inv_norm(2)})
        + weight_all(_sigma_m4_dinv3_bracket())
    )
    for (op, deg), e in t.items():
        e.degree = deg
    return t


_TABLE = _build_table()


def get_symbol(op: OperatorId | str, degree: int) -> SymbolExpr:
    key = (OperatorId(op), degree)
    try:
        e = _TABLE[key]
    except KeyError:
        raise UnknownSymbol(f"no transcribed symbol for {key[0].value} at degree {degree}")
    return SymbolExpr(dict(e.parts), e.degree)


def available_symbols() -> list[tuple[OperatorId, int]]:
    return sorted(_TABLE, key=lambda k: (k[0].value, -k[1]))


def symbol_table() -> list[dict]:
    return [
        {"op": op.value, "degree": deg, "expr": _TABLE[(op, deg)].canonical()}
        for op, deg in available_symbols()
    ]


def symbol_table_json() -> str:
    return json.dumps(symbol_table(), indent=2, ensure_ascii=False)


def linear_combination(items: Iterable[tuple[object, SymbolExpr]]) -> SymbolExpr:
    out = SymbolExpr()
    for coef, e in items:
        out = out + e * coef
    return out
