"""Boundary-term assembly.

Each case evaluates one summand of the boundary residue

    prefactor * int_{|xi'|=1} int_{Gamma+} tr[ F_r * G_l ] dxi_n dsigma(xi')

where ``F_r`` is a derivative of the pi+-projected symbol of the first
operator and ``G_l`` a derivative of the symbol of the second one. Two
paths are offered: the full symbolic chain (symbols, derivatives, pi+,
trace, contour, sphere) and the transcribed chain that starts from a stated
trace integrand and performs only contour, sphere and prefactor.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from math import factorial

from .clifford import TRACE_ID, trace
from .coeffs import OMEGA, OPAQUE, PI, CoeffPoly, GaussianRational, I, N, T
from .sphere import Pattern, contract_pattern
from .symbols import OperatorId, SymbolExpr, d_xn, d_xprime, get_symbol
from .xi_rational import XiRational

__all__ = [
    "UnsupportedDimension",
    "NoInteriorTerm",
    "Path",
    "BoundaryCase",
    "CaseResult",
    "enumerate_cases",
    "compute_case",
    "compute_phi",
    "interior_term",
    "master_prefactor",
    "SphereReading",
    "contract",
]

SUPPORTED_DIMS = (3, 4, 6)


class UnsupportedDimension(ValueError):
    pass


class NoInteriorTerm(ValueError):
    pass


class Path(str, Enum):
    FULL = "FULL_SYMBOLIC"
    TRANSCRIBED = "TRANSCRIBED_INTEGRAND"


def master_prefactor(alpha_norm: int, j: int, k: int) -> GaussianRational:
    """(-i)^(|alpha|+j+k+1) / (alpha! (j+k+1)!); alpha! = 1 for |alpha| <= 1."""
    if alpha_norm > 1:
        raise ValueError("only |alpha| <= 1 occurs")
    return (-I) ** (alpha_norm + j + k + 1) * GaussianRational(Fraction(1, factorial(j + k + 1)))


@dataclass(frozen=True)
class BoundaryCase:
    label: str
    r: int
    l: int
    k: int
    j: int
    alpha_norm: int
    first: OperatorId
    second: OperatorId

    @property
    def prefactor(self) -> GaussianRational:
        return master_prefactor(self.alpha_norm, self.j, self.k)

    @property
    def degree_sum(self) -> int:
        return self.r + self.l - self.k - self.j - self.alpha_norm


_CASES = {
    4: [
        ("aI", 1, -3, 0, 0, 1),
        ("aII", 1, -3, 0, 1, 0),
        ("aIII", 1, -3, 1, 0, 0),
        ("b", 0, -3, 0, 0, 0),
        ("c", 1, -4, 0, 0, 0),
    ],
    6: [
        ("aI", -1, -3, 0, 0, 1),
        ("aII", -1, -3, 0, 1, 0),
        ("aIII", -1, -3, 1, 0, 0),
        ("b", -1, -4, 0, 0, 0),
        ("c", -2, -3, 0, 0, 0),
    ],
    3: [("single", 1, -3, 0, 0, 0)],
}

_OPERATORS = {
    3: (OperatorId.NABLA2_DINV1, OperatorId.DINV3),
    4: (OperatorId.NABLA2_DINV1, OperatorId.DINV3),
    6: (OperatorId.NABLA2_DINV3, OperatorId.DINV3),
}


def _check_dim(n: int) -> None:
    if n not in SUPPORTED_DIMS:
        raise UnsupportedDimension(f"dimension {n} is not supported; expected one of {SUPPORTED_DIMS}")


def enumerate_cases(n: int) -> list[BoundaryCase]:
    _check_dim(n)
    first, second = _OPERATORS[n]
    return [BoundaryCase(lab, r, l, k, j, a, first, second) for lab, r, l, k, j, a in _CASES[n]]


def find_case(n: int, label: str) -> BoundaryCase:
    for case in enumerate_cases(n):
        if case.label == label:
            return case
    raise KeyError(f"no case {label!r} in dimension {n}")


class SphereReading(str, Enum):
    """How tangential weights integrate over the unit sphere.

    ``ENGINE``: exact moments on S^(n-2).
    ``REFERENCE``: the quadratic moment carries 4*pi/3 and the measure is
    OMEGA(n-1) (n = 4, 6) or OMEGA(2) (n = 3).
    """

    ENGINE = "engine"
    REFERENCE = "reference"


_REFERENCE_OMEGA = {3: 2, 4: 3, 6: 4}


def contract(p: Pattern, n: int, reading: SphereReading = SphereReading.ENGINE) -> CoeffPoly:
    if reading is SphereReading.ENGINE:
        return contract_pattern(p, n - 2)
    om = CoeffPoly.symbol(OMEGA(_REFERENCE_OMEGA[n]))
    if p is Pattern.XY:
        return om * CoeffPoly.symbol(PI) * CoeffPoly.symbol(T) * Fraction(4, 3)
    if p is Pattern.NN:
        return om * CoeffPoly.symbol(N)
    if p is Pattern.ONE:
        return om
    return CoeffPoly()


@dataclass
class CaseResult:
    label: str
    path: Path
    phi: CoeffPoly
    flags: list[str] = field(default_factory=list)
    # prefactor * contour integral per pattern, before sphere integration
    radial: dict = field(default_factory=dict)
    prefactor: GaussianRational | None = None
    dim: int = 0

    def sphere(self, reading: SphereReading) -> CoeffPoly:
        out = CoeffPoly()
        for p, v in self.radial.items():
            out = out + v * contract(p, self.dim, reading)
        return out

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "label": self.label,
            "path": self.path.value,
            "phi": self.phi.canonical(),
            "flags": list(self.flags),
        }


def _pattern_items(e: SymbolExpr):
    return sorted(e.at_boundary().items(), key=lambda kv: kv[0].value)


def _first_factor(case: BoundaryCase, n: int, flags: list[str]) -> dict[Pattern, XiRational]:
    e = get_symbol(case.first, case.r)
    for _ in range(case.j):
        e = d_xn(e)
    out = {}
    for p, f in _pattern_items(e):
        if f.poly:
            flags.append(f"pi+ discards the polynomial part of pattern {p.value}")
        g = f.proper_part().pi_plus().derivative(case.k)
        if g:
            out[p] = g
    return out


def _second_factor(case: BoundaryCase, n: int, flags: list[str]) -> dict[Pattern, XiRational]:
    e = get_symbol(case.second, case.l)
    if case.alpha_norm:
        e = d_xprime(e)
        flags.append("tangential x-derivative of the second symbol vanishes at x0")
    for _ in range(case.k):
        e = d_xn(e)
    out = {}
    for p, f in _pattern_items(e):
        g = f.derivative(case.j + 1)
        if g:
            out[p] = g
    return out


def _check_final(phi: CoeffPoly, flags: list[str]) -> None:
    for s in phi.symbols():
        if s.kind == OPAQUE("x").kind:
            raise AssertionError(f"opaque symbol {s.name} survived into a boundary term")


def _full_case(case: BoundaryCase, n: int) -> CaseResult:
    flags: list[str] = []
    first = _first_factor(case, n, flags)
    second = _second_factor(case, n, flags)
    radial: dict[Pattern, CoeffPoly] = {}
    pref = CoeffPoly.const(case.prefactor)
    for p1, f in first.items():
        for p2, g in second.items():
            p = p1.times(p2)
            traced = (f * g).map_coeffs(lambda e: trace(e, n))
            val = traced.contour_gamma_plus() * pref
            if p.odd:
                if val:
                    opaque = sorted(s.name for s in val.symbols() if s.kind == OPAQUE("x").kind)
                    what = f" (opaque: {', '.join(opaque)})" if opaque else ""
                    flags.append(f"pattern {p.value} is odd in xi' and integrates to 0{what}")
                continue
            radial[p] = radial[p] + val if p in radial else val
    radial = {p: v for p, v in radial.items() if v}
    res = CaseResult(case.label, Path.FULL, CoeffPoly(), flags, radial, case.prefactor, n)
    res.phi = res.sphere(SphereReading.ENGINE)
    _check_final(res.phi, flags)
    return res


def _transcribed_case(case: BoundaryCase, n: int) -> CaseResult:
    from .transcribed import get_transcription

    tr = get_transcription(n, case.label)
    flags = list(tr.notes)
    eff = case.prefactor * (-1 if tr.by_parts else 1)
    radial = {}
    for p, f in tr.integrands.items():
        val = f.contour_gamma_plus() * CoeffPoly.const(eff)
        if val and not p.odd:
            radial[p] = val
    res = CaseResult(case.label, Path.TRANSCRIBED, CoeffPoly(), flags, radial, eff, n)
    res.phi = res.sphere(SphereReading.ENGINE)
    return res


def compute_case(case: BoundaryCase, n: int, path: Path = Path.FULL) -> CaseResult:
    _check_dim(n)
    path = Path(path)
    if path is Path.FULL:
        return _full_case(case, n)
    return _transcribed_case(case, n)


@dataclass
class PhiResult:
    dim: int
    path: Path
    cases: list[CaseResult]

    @property
    def total(self) -> CoeffPoly:
        out = CoeffPoly()
        for c in self.cases:
            out = out + c.phi
        return out

    def total_under(self, reading: SphereReading) -> CoeffPoly:
        out = CoeffPoly()
        for c in self.cases:
            out = out + c.sphere(reading)
        return out


def compute_phi(n: int, path: Path = Path.FULL, jobs: int = 1, labels=None) -> PhiResult:
    """Evaluate every case; ``jobs > 1`` runs cases on a thread pool.
    Output order always follows the case list."""
    cases = enumerate_cases(n)
    if labels is not None:
        cases = [c for c in cases if c.label in labels]
    path = Path(path)
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as ex:
            results = list(ex.map(lambda c: compute_case(c, n, path), cases))
    else:
        results = [compute_case(c, n, path) for c in cases]
    return PhiResult(n, path, results)


@dataclass(frozen=True)
class InteriorTerm:
    dim: int
    einstein_coeff: CoeffPoly
    scalar_coeff: CoeffPoly
    tag: str = "TRANSCRIBED"

    def text(self) -> str:
        return (f"({self.einstein_coeff}) * int_M [Ric(X,Y) - s g(X,Y)/2] dVol"
                f" + ({self.scalar_coeff}) * int_M s g(X,Y) dVol")

    def to_json(self) -> dict:
        return {
            "tag": self.tag,
            "einstein_coeff": self.einstein_coeff.canonical(),
            "scalar_coeff": self.scalar_coeff.canonical(),
            "text": self.text(),
        }


def interior_term(n: int) -> InteriorTerm:
    _check_dim(n)
    if n == 3:
        raise NoInteriorTerm("odd dimension: the residue is a pure boundary term")
    p = n // 2
    pi_p = CoeffPoly.symbol(PI, p)
    return InteriorTerm(n, pi_p * Fraction(4, 3), pi_p)


def trace_identity(n: int) -> int:
    return TRACE_ID[n]
