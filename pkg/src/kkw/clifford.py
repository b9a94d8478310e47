"""Clifford words and their trace by Wick pairing.

Vectors are plain strings: ``"XIP"`` (c(xi')), ``"DXN"`` (c(dx_n)),
``"DXIP"`` (the normal derivative of c(xi')), and ``"AUX<k>"`` for oracle
tests. Anything that is not a vector (connection terms, sigma_0(D)) is an
:class:`OpaqueFactor`; those never reach the Wick recursion.

Words are not normal-ordered on multiplication; only traces are needed
downstream, and the pairing recursion handles the relations
``c(v)c(w) + c(w)c(v) = -2<v, w>``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Union

from .coeffs import C0, OPAQUE, CoeffPoly, GaussianRational, HP

XIP = "XIP"
DXN = "DXN"
DXIP = "DXIP"

TRACE_ID = {3: 2, 4: 4, 6: 8}


class OpaqueTraceError(ValueError):
    """A word handed to :func:`cliff_trace` contains an opaque factor."""


@dataclass(frozen=True)
class OpaqueFactor:
    name: str

    def __str__(self):
        return self.name


Factor = Union[str, OpaqueFactor]
Word = tuple  # tuple[Factor, ...]


def _word_str(word: Word) -> str:
    return "[" + ",".join(str(f) for f in word) + "]"


class CliffordExpr:
    """Linear combination ``sum coeff * word`` with CoeffPoly coefficients."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[Word, CoeffPoly] | None = None):
        clean = {}
        if terms:
            for w, c in terms.items():
                c = CoeffPoly.coerce(c)
                if c:
                    clean[tuple(w)] = c
        object.__setattr__(self, "_terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("CliffordExpr is immutable")

    @classmethod
    def identity(cls, coeff=1) -> "CliffordExpr":
        return cls({(): CoeffPoly.coerce(coeff)})

    @classmethod
    def word(cls, *factors: Factor, coeff=1) -> "CliffordExpr":
        return cls({tuple(factors): CoeffPoly.coerce(coeff)})

    @classmethod
    def coerce(cls, x) -> "CliffordExpr":
        if isinstance(x, CliffordExpr):
            return x
        return cls.identity(x)

    def items(self):
        return self._terms.items()

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __eq__(self, other):
        if not isinstance(other, CliffordExpr):
            try:
                other = CliffordExpr.coerce(other)
            except TypeError:
                return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __add__(self, other):
        if not isinstance(other, CliffordExpr):
            if isinstance(other, (CoeffPoly, GaussianRational, int, Fraction)):
                other = CliffordExpr.identity(other)
            else:
                return NotImplemented
        out = dict(self._terms)
        for w, c in other._terms.items():
            out[w] = out[w] + c if w in out else c
        return CliffordExpr(out)

    __radd__ = __add__

    def __neg__(self):
        return CliffordExpr({w: -c for w, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-CliffordExpr.coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (CoeffPoly, GaussianRational, int, Fraction)):
            c = CoeffPoly.coerce(other)
            return CliffordExpr({w: v * c for w, v in self._terms.items()})
        if not isinstance(other, CliffordExpr):
            return NotImplemented
        out: dict = {}
        for w1, c1 in self._terms.items():
            for w2, c2 in other._terms.items():
                w = w1 + w2
                v = c1 * c2
                out[w] = out[w] + v if w in out else v
        return CliffordExpr(out)

    def __rmul__(self, other):
        if isinstance(other, (CoeffPoly, GaussianRational, int, Fraction)):
            return self * other
        return NotImplemented

    def map_words(self, fn: Callable[[Word], "CliffordExpr"]) -> "CliffordExpr":
        out = CliffordExpr()
        for w, c in self._terms.items():
            out = out + fn(w) * c
        return out

    def factors(self) -> set:
        return {f for w in self._terms for f in w}

    def canonical(self) -> str:
        if not self._terms:
            return "0"
        parts = sorted(f"({c.canonical()}){_word_str(w)}" for w, c in self._terms.items())
        return " + ".join(parts)

    __str__ = canonical

    def __repr__(self):
        return f"CliffordExpr({self.canonical()!r})"


def c(v: Factor, coeff=1) -> CliffordExpr:
    """Shorthand for the single-letter word ``coeff * c(v)``."""
    return CliffordExpr.word(v, coeff=coeff)


class PairingTable:
    """Symmetric inner products of vector symbols, valued in CoeffPoly."""

    def __init__(self, entries: Mapping[tuple[str, str], object], name: str = "custom"):
        self.name = name
        self._entries = {}
        for (a, b), v in entries.items():
            v = CoeffPoly.coerce(v)
            self._entries[(a, b)] = v
            self._entries[(b, a)] = v
        self._memo: dict = {}

    def __call__(self, a: str, b: str) -> CoeffPoly:
        try:
            return self._entries[(a, b)]
        except KeyError:
            raise KeyError(f"pairing <{a},{b}> is not defined in table {self.name!r}")

    def with_entry(self, a: str, b: str, value) -> "PairingTable":
        entries = dict(self._entries)
        entries[(a, b)] = value
        entries[(b, a)] = value
        return PairingTable(entries, name=f"{self.name}+<{a},{b}>")


def boundary_pairing() -> PairingTable:
    """Pairings at the boundary point with |xi'| = 1.

    <DXIP, DXIP> is left as the opaque symbol ``dd``; it must never
    survive into a boundary term.
    """
    return PairingTable(
        {
            (XIP, XIP): 1,
            (DXN, DXN): 1,
            (XIP, DXN): 0,
            (XIP, DXIP): CoeffPoly.symbol(HP, coeff=Fraction(1, 2)),
            (DXN, DXIP): 0,
            (DXIP, DXIP): CoeffPoly.symbol(OPAQUE("dd")),
        },
        name="boundary",
    )


BOUNDARY = boundary_pairing()


def _check_dim(dim: int) -> None:
    if dim not in TRACE_ID:
        raise ValueError(f"unsupported dimension {dim}; expected one of {sorted(TRACE_ID)}")


def trace_word(word: Word, dim: int, pairing: PairingTable = BOUNDARY) -> CoeffPoly:
    """Trace of ``c(v1)...c(vm)`` by recursive Wick contraction."""
    _check_dim(dim)
    for f in word:
        if isinstance(f, OpaqueFactor):
            raise OpaqueTraceError(f"opaque factor {f} in word {_word_str(word)}")
    return _trace_rec(tuple(word), pairing) * TRACE_ID[dim]


def _trace_rec(word: Word, pairing: PairingTable) -> CoeffPoly:
    # normalized trace (tr(id) = 1)
    m = len(word)
    if m == 0:
        return CoeffPoly.const(1)
    if m % 2:
        return CoeffPoly()
    memo = pairing._memo
    hit = memo.get(word)
    if hit is not None:
        return hit
    first, rest = word[0], word[1:]
    total = CoeffPoly()
    for j in range(1, m):
        p = pairing(first, word[j])
        if not p:
            continue
        # (-1)^(j+1) with 1-based position j+1, times -<v1, vj>
        sign = -1 if j % 2 == 0 else 1
        sub = _trace_rec(rest[: j - 1] + rest[j:], pairing)
        total = total + p * sub * (-sign)
    memo[word] = total
    return total


def cliff_trace(expr: CliffordExpr, dim: int, pairing: PairingTable = BOUNDARY) -> CoeffPoly:
    """Trace of a vector-only Clifford expression.

    Raises :class:`OpaqueTraceError` if any word carries an opaque factor;
    such words go through :func:`opaque_trace_rule`.
    """
    out = CoeffPoly()
    for w, coef in CliffordExpr.coerce(expr).items():
        tw = trace_word(w, dim, pairing)
        if tw:
            out = out + coef * tw
    return out


# Opaque factors with a known rewrite into vector words. sigma_0(D) at the
# boundary point is proportional to c(dx_n); the proportionality constant
# is carried as the opaque scalar C0.
DEFAULT_OPAQUE_RULES: dict[str, CliffordExpr] = {
    "p0": CliffordExpr.word(DXN, coeff=CoeffPoly.symbol(C0)),
}


def opaque_symbol_for(word: Word) -> CoeffPoly:
    name = "trace:" + ".".join(str(f) for f in word)
    return CoeffPoly.symbol(OPAQUE(name))


def opaque_trace_rule(
    expr: CliffordExpr,
    dim: int,
    pairing: PairingTable = BOUNDARY,
    rules: Mapping[str, CliffordExpr] | None = None,
) -> CoeffPoly:
    """Trace of words containing opaque factors.

    Registered opaque factors are rewritten and traced normally. A word with
    any unregistered factor becomes a flagged ``OPAQUE{trace:...}`` symbol,
    never a silent zero.
    """
    _check_dim(dim)
    rules = DEFAULT_OPAQUE_RULES if rules is None else rules
    out = CoeffPoly()
    for w, coef in CliffordExpr.coerce(expr).items():
        opaque = [f for f in w if isinstance(f, OpaqueFactor)]
        if opaque and all(f.name in rules for f in opaque):
            expanded = CliffordExpr.identity()
            for f in w:
                expanded = expanded * (rules[f.name] if isinstance(f, OpaqueFactor) else c(f))
            out = out + coef * cliff_trace(expanded, dim, pairing)
        elif opaque:
            out = out + coef * opaque_symbol_for(w)
        else:
            out = out + coef * trace_word(w, dim, pairing)
    return out


def trace(
    expr: CliffordExpr,
    dim: int,
    pairing: PairingTable = BOUNDARY,
    rules: Mapping[str, CliffordExpr] | None = None,
) -> CoeffPoly:
    """Route each word to the Wick recursion or the opaque rule table."""
    return opaque_trace_rule(expr, dim, pairing, rules)


def flagged_symbols(poly: CoeffPoly) -> list[str]:
    return sorted(s.name for s in poly.symbols() if s.kind == 6)


def as_vectors(names: Iterable[str]) -> Word:
    return tuple(names)
