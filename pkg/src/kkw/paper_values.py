"""Reference values to compare against, stored as canonical strings.

Values are kept as data, apart from the engine, so nothing in the
computation can read them. Each entry splits into its ``T`` and ``N``
components so per-component comparisons are possible.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction as F

from .coeffs import HP, OMEGA, PI, CoeffPoly, GaussianRational, N, T, parse_poly

__all__ = ["PaperValue", "PAPER_VALUES", "paper_value"]


@dataclass(frozen=True)
class PaperValue:
    dim: int
    key: str        # case label, "total" or "interior"
    t_part: str
    n_part: str
    source: str
    note: str = ""

    @property
    def t(self) -> CoeffPoly:
        return parse_poly(self.t_part)

    @property
    def n(self) -> CoeffPoly:
        return parse_poly(self.n_part)

    @property
    def value(self) -> CoeffPoly:
        return self.t + self.n

    def canonical(self) -> str:
        return self.value.canonical()


def _v(coef: tuple, pi_power: int, omega: int, sym, hp: bool = True) -> str:
    c = CoeffPoly.const(GaussianRational(F(coef[0]), F(coef[1])))
    mono = c * CoeffPoly.symbol(PI, pi_power) * CoeffPoly.symbol(OMEGA(omega)) * CoeffPoly.symbol(sym)
    if hp:
        mono = mono * CoeffPoly.symbol(HP)
    return mono.canonical()


def _entry(dim, key, t_coef, n_coef, omega, source, t_pi=2, n_pi=1, hp=True, note=""):
    return PaperValue(dim, key, _v(t_coef, t_pi, omega, T, hp), _v(n_coef, n_pi, omega, N, hp), source, note)


_ENTRIES = [
    _entry(3, "single", (0, F(1, 3)), (0, F(3, 4)), 2, "odd-dimensional theorem", hp=False),
    _entry(3, "total", (0, F(1, 3)), (0, F(3, 4)), 2, "odd-dimensional theorem", hp=False),

    _entry(4, "aI", (0, 0), (0, 0), 3, "case a I, four dimensions"),
    _entry(4, "aII", (F(-592, 3), 0), (F(-461, 4), F(-23, 4)), 3, "case a II, four dimensions"),
    _entry(4, "aIII", (0, F(5, 6)), (0, F(5, 8)), 3, "case a III, four dimensions"),
    _entry(4, "b", (F(55, 3), 0), (F(-3, 8), 0), 3, "case b, four dimensions"),
    _entry(4, "c", (F(-35, 3), F(50, 3)), (5, F(-137, 32)), 3, "case c, four dimensions",
           t_pi=3, n_pi=2, note="printed with an overall pi^2"),
    _entry(4, "total", (F(-572, 3), F(35, 2)), (F(-1411, 12), F(27, 32)), 3, "four-dimensional theorem"),

    _entry(6, "aI", (0, 0), (0, 0), 4, "case a I, six dimensions"),
    _entry(6, "aII", (F(-5925, 16), F(-877, 6)), (0, 311), 4, "case a II, six dimensions"),
    _entry(6, "aIII", (F(49, 3), 86), (F(-17, 4), 68), 4, "case a III, six dimensions",
           note="printed with OMEGA3; read as OMEGA4"),
    _entry(6, "b", (F(-53, 3), F(-41, 6)), (36, F(173, 4)), 4, "case b, six dimensions",
           note="printed with OMEGA3; read as OMEGA4"),
    _entry(6, "c", (F(-775, 6), 113), (F(171, 2), F(369, 8)), 4, "case c, six dimensions"),
    _entry(6, "total", (F(-8013, 16), 46), (F(475, 4), F(3747, 8)), 4, "six-dimensional theorem"),
]

PAPER_VALUES: dict[tuple[int, str], PaperValue] = {(e.dim, e.key): e for e in _ENTRIES}

# interior coefficients: (Einstein part, scalar part)
PAPER_INTERIOR = {
    4: ((PI, 2, F(4, 3)), (PI, 2, F(1))),
    6: ((PI, 3, F(4, 3)), (PI, 3, F(1))),
}


def paper_value(dim: int, key: str) -> PaperValue | None:
    return PAPER_VALUES.get((dim, key))


def paper_interior(dim: int) -> tuple[CoeffPoly, CoeffPoly] | None:
    spec = PAPER_INTERIOR.get(dim)
    if spec is None:
        return None
    return tuple(CoeffPoly.symbol(s, k) * c for s, k, c in spec)
