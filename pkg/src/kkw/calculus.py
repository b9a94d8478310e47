"""Local symbol calculus with explicit 2x2 matrices.

Symbols are ``{degree: Mat}``. Entries are exact polynomials over the
Gaussian rationals in ``x1..x3, xi1..xi3`` and two auxiliary variables
``u = 1/|xi|^2`` and ``w = 1/f(x)``, where ``f`` is the model's conformal
factor; derivatives apply the chain rule to ``u`` and ``w``, so no
polynomial gcd is ever needed. Composition follows the Leibniz-Hoermander sum

    sigma(P Q) ~ sum_alpha 1/alpha! d_xi^alpha p . D_x^alpha q,  D_x = -i d_x,

and the inverse recursion solves ``sigma(P) o sigma(Q) = 1`` degree by
degree.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from math import factorial
from typing import Mapping

from sympy.polys.domains import QQ_I
from sympy.polys.rings import ring

__all__ = [
    "Mat",
    "LocalModel",
    "compose_symbols",
    "inverse_recursion",
    "model_n3",
    "composition_identity",
    "flat_leading_inverse",
    "is_zero",
]

RING, *_GENS = ring("x1,x2,x3,xi1,xi2,xi3,u,w", QQ_I)
X = tuple(_GENS[:3])
XI = tuple(_GENS[3:6])
U, W = _GENS[6], _GENS[7]
NORM2 = sum(v ** 2 for v in XI)
_I = RING(QQ_I(0, 1))


class NotInvertible(ValueError):
    pass


@dataclass(frozen=True)
class Mat:
    """2x2 matrix, row-major tuple of ring elements."""

    a: tuple

    @staticmethod
    def of(rows) -> "Mat":
        return Mat(tuple(RING(v) for row in rows for v in row))

    @staticmethod
    def zero() -> "Mat":
        return Mat((RING.zero,) * 4)

    @staticmethod
    def eye() -> "Mat":
        return Mat((RING.one, RING.zero, RING.zero, RING.one))

    def __add__(self, o: "Mat") -> "Mat":
        return Mat(tuple(p + q for p, q in zip(self.a, o.a)))

    def __sub__(self, o: "Mat") -> "Mat":
        return Mat(tuple(p - q for p, q in zip(self.a, o.a)))

    def __neg__(self) -> "Mat":
        return Mat(tuple(-p for p in self.a))

    def __mul__(self, o) -> "Mat":
        if not isinstance(o, Mat):
            s = RING(o)
            return Mat(tuple(p * s for p in self.a))
        a, b, c, d = self.a
        e, f, g, h = o.a
        return Mat((a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h))

    __rmul__ = __mul__

    def map(self, fn) -> "Mat":
        return Mat(tuple(fn(p) for p in self.a))


Symbol = Mapping[int, Mat]


@dataclass
class LocalModel:
    generators: tuple
    metric_factor: object  # polynomial in x only
    zeroth_order: Mat

    # derivations on the ring, with u and w differentiated by the chain rule
    def d_xi(self, e, j: int):
        return e.diff(XI[j]) + e.diff(U) * (-2 * XI[j] * U ** 2)

    def d_x(self, e, j: int):
        return e.diff(X[j]) + e.diff(W) * (-self.metric_factor.diff(X[j]) * W ** 2)

    def clifford(self, vec) -> Mat:
        out = Mat.zero()
        for g, v in zip(self.generators, vec):
            out = out + g * v
        return out

    @property
    def dirac(self) -> dict[int, Mat]:
        return {1: self.clifford(XI) * (_I * self.metric_factor), 0: self.zeroth_order}

    def power(self, k: int) -> dict[int, Mat]:
        """Full symbol of D^k, exact since D is differential."""
        d = self.dirac
        out = d
        for _ in range(k - 1):
            top = max(out) + max(d)
            out = {deg: compose_symbols(self, out, d, deg) for deg in range(top, -1, -1)}
            out = {deg: v for deg, v in out.items() if not is_zero(self, v)}
        return out

    def to_plain(self, e):
        """Clear ``u`` and ``w``: returns ``e * |xi|^(2B) * f^A`` as a
        polynomial free of the auxiliary variables."""
        if not e:
            return e
        bu = max(m[6] for m in e.monoms())
        bw = max(m[7] for m in e.monoms())
        out = RING.zero
        for m, c in e.terms():
            mono = RING({m[:6] + (0, 0): c})
            out += mono * NORM2 ** (bu - m[6]) * self.metric_factor ** (bw - m[7])
        return out

    def inv(self, m: Mat) -> Mat:
        """Inverse, when the determinant is ``c |xi|^(2b) f^a`` times a unit."""
        a, b, c, d = m.a
        raw = a * d - b * c
        det = self.to_plain(raw)
        if not det:
            raise NotInvertible("singular symbol")
        # raw = det * u^bu * w^bw, so 1/raw = (1/det) * |xi|^(2bu) * f^bw
        inv_det = self._aux_power(raw)
        for base, recip in ((NORM2, U), (self.metric_factor, W)):
            if base.is_ground:
                continue
            while True:
                q, r = divmod(det, base)
                if r:
                    break
                det, inv_det = q, inv_det * recip
        if not det.is_ground:
            raise NotInvertible(f"determinant has a factor other than |xi|^2 and f: {det}")
        return (Mat((d, -b, -c, a)) * (inv_det * RING(1 / det.LC))).map(self.normalize)

    def normalize(self, e):
        """Canonical form ``N u^B w^A`` with ``N`` free of ``u``, ``w`` and
        not divisible by ``|xi|^2`` or ``f``."""
        if not e:
            return e
        bu = max(m[6] for m in e.monoms())
        bw = max(m[7] for m in e.monoms())
        num = self.to_plain(e)
        if not num:
            return num
        num, bu = _strip(num, NORM2, bu)
        if not self.metric_factor.is_ground:
            num, bw = _strip(num, self.metric_factor, bw)
        out = num
        for base, recip, k in ((NORM2, U, bu), (self.metric_factor, W, bw)):
            out = out * (recip ** k if k >= 0 else base ** (-k))
        return out

    def _aux_power(self, e):
        bu = max(m[6] for m in e.monoms())
        bw = max(m[7] for m in e.monoms())
        return NORM2 ** bu * self.metric_factor ** bw


def _strip(num, base, power):
    while power > -64:
        q, r = divmod(num, base)
        if r:
            break
        num, power = q, power - 1
    return num, power


def is_zero(model: LocalModel, m: Mat) -> bool:
    return all(not model.to_plain(p) for p in m.a)


def _multi_indices(n: int, order: int):
    for a in product(range(order + 1), repeat=n):
        if sum(a) == order:
            yield a


def _apply(model: LocalModel, m: Mat, alpha, deriv) -> Mat:
    for j, k in enumerate(alpha):
        for _ in range(k):
            m = m.map(lambda e, j=j: deriv(e, j))
    return m


def compose_symbols(model: LocalModel, p: Symbol, q: Symbol, target_degree: int) -> Mat:
    """Degree-``target_degree`` part of ``sigma(P) o sigma(Q)``."""
    total = Mat.zero()
    for a, pa in p.items():
        for b, qb in q.items():
            order = a + b - target_degree
            if order < 0:
                continue
            for alpha in _multi_indices(3, order):
                denom = 1
                for k in alpha:
                    denom *= factorial(k)
                scale = (-_I) ** order * RING(QQ_I(1) / denom)
                total = total + _apply(model, pa, alpha, model.d_xi) * _apply(model, qb, alpha, model.d_x) * scale
    return total.map(model.normalize)


def inverse_recursion(model: LocalModel, p: Symbol, terms: int) -> dict[int, Mat]:
    """Parametrix symbols ``q_{-m}, ..., q_{-m-terms+1}`` of a symbol whose
    highest degree ``m`` is its order."""
    m = max(p)
    top_inv = model.inv(p[m])
    q = {-m: top_inv}
    for k in range(1, terms):
        q[-m - k] = (-(top_inv * compose_symbols(model, p, q, -k))).map(model.normalize)
    return q


def _pauli_generators() -> tuple:
    i = QQ_I(0, 1)
    sx = ((0, 1), (1, 0))
    sy = ((0, -i), (i, 0))
    sz = ((1, 0), (0, -1))
    return tuple(Mat.of(s) * _I for s in (sx, sy, sz))


def model_n3(flat: bool = False) -> LocalModel:
    """Three-dimensional model: generators ``i sigma_j`` scaled by a
    conformal factor ``f(x)`` plus an x-dependent zeroth-order term."""
    gens = _pauli_generators()
    if flat:
        return LocalModel(gens, RING.one, Mat.zero())
    x1, x2, x3 = X
    f = 1 + x1 ** 2 + x2 * x3
    zeroth = gens[0] * gens[1] * x3 + gens[2] * (x1 * x2)
    return LocalModel(gens, f, zeroth)


def composition_identity(model: LocalModel | None = None) -> dict[int, Mat]:
    """Degrees 0, -1, -2 of ``sigma(D^3) o q`` with ``q`` from the recursion."""
    model = model or model_n3()
    p = model.power(3)
    q = inverse_recursion(model, p, 3)
    return {deg: compose_symbols(model, p, q, deg) for deg in (0, -1, -2)}


def flat_leading_inverse() -> Mat:
    """``q_{-3}`` of the flat model."""
    model = model_n3(flat=True)
    return inverse_recursion(model, model.power(3), 1)[-3]
