"""Gaussian rationals and sparse multivariate polynomials over them.

Every final answer of the engine is a :class:`CoeffPoly`: a finite sum of
monomials in named scalar symbols (``HP`` for h'(0), ``PI``, ``OMEGAm``,
the contractions ``T`` and ``N``, the opaque ``C0``, and free-form
``OPAQUE{name}`` markers) with :class:`GaussianRational` coefficients.

The canonical string form doubles as the wire format of the JSON reports::

    (-592/3)*HP*PI*OMEGA3*T + (5/8i)*HP*PI*OMEGA3*N
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Mapping

__all__ = [
    "GaussianRational",
    "Sym",
    "HP",
    "PI",
    "T",
    "N",
    "C0",
    "OMEGA",
    "OPAQUE",
    "CoeffPoly",
    "parse_poly",
    "I",
    "ONE",
    "ZERO",
]


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot convert {type(x).__name__} to an exact rational")


def _fmt_frac(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


class GaussianRational:
    """Exact complex number ``re + im*i`` with rational parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", _frac(re))
        object.__setattr__(self, "im", _frac(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    @classmethod
    def coerce(cls, x) -> "GaussianRational":
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, complex):
            raise TypeError("floating complex values are not exact")
        return cls(x)

    # arithmetic -----------------------------------------------------------
    def __add__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return GaussianRational(
            self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re
        )

    __rmul__ = __mul__

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def norm2(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def inverse(self) -> "GaussianRational":
        d = self.norm2()
        if d == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        return GaussianRational(self.re / d, -self.im / d)

    def __truediv__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        return GaussianRational.coerce(other) * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        out, base = GaussianRational(1), self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # comparison / hashing -------------------------------------------------
    def __eq__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"GaussianRational({self.re!s}, {self.im!s})"

    def __str__(self):
        return self.canonical()

    def canonical(self) -> str:
        """Render as ``(re)``, ``(imi)`` or ``(re+imi)``; zero is ``(0)``."""
        if self.im == 0:
            return f"({_fmt_frac(self.re)})"
        im = f"{_fmt_frac(self.im)}i"
        if self.re == 0:
            return f"({im})"
        sign = "" if self.im < 0 else "+"
        return f"({_fmt_frac(self.re)}{sign}{im})"


I = GaussianRational(0, 1)


@dataclass(frozen=True, order=True)
class Sym:
    """A scalar symbol. Field order gives the canonical total order
    HP < PI < OMEGA(m) < T < N < C0 < OPAQUE(name)."""

    kind: int
    index: int = 0
    name: str = ""

    def __post_init__(self):
        if self.kind == 2 and self.index < 1:
            raise ValueError("OMEGA index must be >= 1")
        if self.kind == 6 and (not self.name or re.search(r"[{}\s]", self.name)):
            raise ValueError(f"invalid opaque symbol name {self.name!r}")

    def __str__(self):
        if self.kind == 2:
            return f"OMEGA{self.index}"
        if self.kind == 6:
            return f"OPAQUE{{{self.name}}}"
        return _KIND_NAMES[self.kind]


_KIND_NAMES = {0: "HP", 1: "PI", 3: "T", 4: "N", 5: "C0"}

HP = Sym(0)
PI = Sym(1)
T = Sym(3)
N = Sym(4)
C0 = Sym(5)


def OMEGA(m: int) -> Sym:
    return Sym(2, index=m)


def OPAQUE(name: str) -> Sym:
    return Sym(6, name=name)


Monomial = tuple  # tuple[tuple[Sym, int], ...], sorted by Sym, nonzero exponents


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    exps = dict(a)
    for s, e in b:
        exps[s] = exps.get(s, 0) + e
    return tuple(sorted((s, e) for s, e in exps.items() if e != 0))


class CoeffPoly:
    """Immutable sparse polynomial ``{monomial: GaussianRational}``.

    Zero coefficients are never stored, so equality of the term maps is
    equality of values.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, GaussianRational] | None = None):
        clean = {}
        if terms:
            for m, c in terms.items():
                c = GaussianRational.coerce(c)
                if c:
                    clean[tuple(m)] = c
        object.__setattr__(self, "_terms", clean)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("CoeffPoly is immutable")

    # constructors ---------------------------------------------------------
    @classmethod
    def const(cls, c) -> "CoeffPoly":
        return cls({(): GaussianRational.coerce(c)})

    @classmethod
    def symbol(cls, s: Sym, exp: int = 1, coeff=1) -> "CoeffPoly":
        if exp == 0:
            return cls.const(coeff)
        return cls({((s, exp),): GaussianRational.coerce(coeff)})

    @classmethod
    def monomial(cls, factors: Iterable[tuple[Sym, int]], coeff=1) -> "CoeffPoly":
        mono: Monomial = ()
        for s, e in factors:
            mono = _mono_mul(mono, ((s, e),) if e else ())
        return cls({mono: GaussianRational.coerce(coeff)})

    @classmethod
    def coerce(cls, x) -> "CoeffPoly":
        if isinstance(x, CoeffPoly):
            return x
        return cls.const(x)

    # accessors ------------------------------------------------------------
    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def is_constant(self) -> bool:
        return all(m == () for m in self._terms)

    def constant_value(self) -> GaussianRational:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self._terms.get((), GaussianRational(0))

    def symbols(self) -> set[Sym]:
        return {s for m in self._terms for s, _ in m}

    def has_symbol(self, s: Sym) -> bool:
        return any(s == t for m in self._terms for t, _ in m)

    def select(self, pred) -> "CoeffPoly":
        """Terms whose monomial (as a dict) satisfies ``pred``."""
        return CoeffPoly({m: c for m, c in self._terms.items() if pred(dict(m))})

    def with_symbol(self, s: Sym) -> "CoeffPoly":
        return self.select(lambda d: s in d)

    # arithmetic -----------------------------------------------------------
    def __add__(self, other):
        if isinstance(other, (CoeffPoly, GaussianRational, int, Fraction)):
            o = CoeffPoly.coerce(other)
        else:
            return NotImplemented
        out = dict(self._terms)
        for m, c in o._terms.items():
            out[m] = out.get(m, 0) + c
        return CoeffPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return CoeffPoly({m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        if isinstance(other, (CoeffPoly, GaussianRational, int, Fraction)):
            return self + (-CoeffPoly.coerce(other))
        return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (GaussianRational, int, Fraction)):
            g = GaussianRational.coerce(other)
            return CoeffPoly({m: c * g for m, c in self._terms.items()})
        if not isinstance(other, CoeffPoly):
            return NotImplemented
        out: dict = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = _mono_mul(m1, m2)
                out[m] = out.get(m, 0) + c1 * c2
        return CoeffPoly(out)

    def __rmul__(self, other):
        if isinstance(other, (GaussianRational, int, Fraction)):
            return self * other
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, CoeffPoly):
            other = other.constant_value()
        g = GaussianRational.coerce(other)
        return self * g.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        out = CoeffPoly.const(1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, (GaussianRational, int, Fraction)):
            other = CoeffPoly.const(other)
        if not isinstance(other, CoeffPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        h = self._hash
        if h is None:
            h = hash(frozenset(self._terms.items()))
            object.__setattr__(self, "_hash", h)
        return h

    def substitute(self, values: Mapping[Sym, object]) -> "CoeffPoly":
        """Replace symbols by CoeffPoly/Gaussian values (exact)."""
        out = CoeffPoly()
        for m, c in self._terms.items():
            term = CoeffPoly.const(c)
            for s, e in m:
                if s in values:
                    v = CoeffPoly.coerce(values[s])
                    if e < 0:
                        raise ValueError("cannot substitute into a negative power")
                    term = term * v**e
                else:
                    term = term * CoeffPoly.symbol(s, e)
            out = out + term
        return out

    def evaluate(self, values: Mapping[Sym, complex]) -> complex:
        """Numeric value; every symbol present must be given."""
        total = 0j
        for m, c in self._terms.items():
            v = complex(c)
            for s, e in m:
                v *= complex(values[s]) ** e
            total += v
        return total

    # rendering ------------------------------------------------------------
    def canonical(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for m in sorted(self._terms):
            piece = self._terms[m].canonical()
            for s, e in m:
                piece += f"*{s}" if e == 1 else f"*{s}^{e}"
            parts.append(piece)
        return " + ".join(parts)

    __str__ = canonical

    def __repr__(self):
        return f"CoeffPoly({self.canonical()!r})"


ONE = CoeffPoly.const(1)
ZERO = CoeffPoly()

_NUM = r"-?\d+(?:/\d+)?"
_COEF_RE = re.compile(
    rf"\((?:({_NUM})([+-])(\d+(?:/\d+)?)i|(-?)(\d+(?:/\d+)?)i|({_NUM}))\)"
)
_SYM_RE = re.compile(r"\*(HP|PI|T|N|C0|OMEGA(\d+)|OPAQUE\{([^{}\s]+)\})(?:\^(-?\d+))?")


def parse_poly(text: str) -> CoeffPoly:
    """Inverse of :meth:`CoeffPoly.canonical`."""
    text = text.strip()
    if text == "0":
        return CoeffPoly()
    out = CoeffPoly()
    pos = 0
    first = True
    while pos < len(text):
        if not first:
            if not text.startswith(" + ", pos):
                raise ValueError(f"expected ' + ' at offset {pos} in {text!r}")
            pos += 3
        first = False
        m = _COEF_RE.match(text, pos)
        if not m:
            raise ValueError(f"bad coefficient at offset {pos} in {text!r}")
        if m.group(1) is not None:
            re_part = Fraction(m.group(1))
            im_part = Fraction(m.group(3)) * (-1 if m.group(2) == "-" else 1)
        elif m.group(5) is not None:
            re_part = Fraction(0)
            im_part = Fraction(m.group(5)) * (-1 if m.group(4) == "-" else 1)
        else:
            re_part, im_part = Fraction(m.group(6)), Fraction(0)
        pos = m.end()
        factors = []
        while True:
            sm = _SYM_RE.match(text, pos)
            if not sm:
                break
            tok = sm.group(1)
            if sm.group(2):
                s = OMEGA(int(sm.group(2)))
            elif sm.group(3):
                s = OPAQUE(sm.group(3))
            else:
                s = {"HP": HP, "PI": PI, "T": T, "N": N, "C0": C0}[tok]
            factors.append((s, int(sm.group(4)) if sm.group(4) else 1))
            pos = sm.end()
        out = out + CoeffPoly.monomial(factors, GaussianRational(re_part, im_part))
    return out
