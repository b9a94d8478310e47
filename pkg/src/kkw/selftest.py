"""Oracle-equivalence suites run by ``kkw selftest``.

Every suite is seeded and reports only deterministic facts (counts and
counterexamples), so two runs with one seed print the same report.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction

from . import calculus
from .clifford import PairingTable, trace_word
from .coeffs import OMEGA, PI, CoeffPoly, GaussianRational
from .oracle import build_rep, matrix_trace_word, mc_sphere_all, numeric_contour, omega_value
from .sphere import sphere_moment
from .xi_rational import XiRational

__all__ = ["SuiteResult", "SUITES", "run_all"]

DEFAULT_SEED = 20240601


@dataclass
class SuiteResult:
    name: str
    passed: bool
    checked: int
    failures: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return {"suite": self.name, "passed": self.passed, "checked": self.checked,
                "failures": list(self.failures)}


def _random_gr(rng: random.Random, span: int = 5) -> GaussianRational:
    return GaussianRational(Fraction(rng.randint(-span, span), rng.randint(1, 4)),
                            Fraction(rng.randint(-span, span), rng.randint(1, 4)))


def trace_suite(seed: int, words_per_dim: int = 200, corrupt_pairing: bool = False) -> SuiteResult:
    rng = random.Random(seed)
    failures = []
    checked = 0
    for dim in (3, 4, 6):
        rep = build_rep(dim)
        for _ in range(words_per_dim):
            length = rng.randint(0, 6)
            names = [f"AUX{k}" for k in range(length)]
            vecs = {nm: [rng.randint(-2, 2) for _ in range(dim)] for nm in names}
            entries = {(a, b): sum(x * y for x, y in zip(vecs[a], vecs[b])) for a in names for b in names}
            if corrupt_pairing and length >= 2:
                # off-diagonal: the recursion never pairs a letter with itself
                bad = entries[(names[0], names[1])] + 1
                entries[(names[0], names[1])] = entries[(names[1], names[0])] = bad
            table = PairingTable(entries, name="random")
            sym = trace_word(tuple(names), dim, table)
            mat = matrix_trace_word(rep, [vecs[nm] for nm in names])
            checked += 1
            if sym != CoeffPoly.const(mat):
                word = "[" + ",".join(f"{nm}={vecs[nm]}" for nm in names) + "]"
                failures.append(f"dim {dim} word {word}: symbolic {sym} vs matrix {mat}")
    return SuiteResult("trace", not failures, checked, failures[:5])


def _random_rational(rng: random.Random) -> tuple[dict, int, int]:
    a = rng.randint(0, 7)
    b = rng.randint(0 if a else 1, 7)
    deg = rng.randint(0, a + b - 1)
    num = {p: CoeffPoly.const(_random_gr(rng)) for p in range(deg + 1)}
    return num, a, b


def _numeric(poly: CoeffPoly) -> complex:
    return poly.evaluate({PI: math.pi})


def contour_suite(seed: int, count: int = 100) -> SuiteResult:
    rng = random.Random(seed)
    failures = []
    for t in range(count):
        num, a, b = _random_rational(rng)
        f = XiRational.from_raw(num, a, b)
        exact = _numeric(f.contour_gamma_plus())

        def g(z, num=num, a=a, b=b):
            top = sum(complex(c.evaluate({})) * z ** p for p, c in num.items())
            return top / ((z - 1j) ** a * (z + 1j) ** b)

        approx = numeric_contour(g)
        scale = max(abs(exact), 1e-12)
        if abs(approx - exact) > 1e-9 * scale and abs(approx - exact) > 1e-12:
            failures.append(f"#{t} a={a} b={b}: residue {exact} vs quadrature {approx}")
    return SuiteResult("contour", not failures, count, failures[:5])


def _alphas(m: int):
    from itertools import product
    for a in product(range(5), repeat=m + 1):
        if sum(a) <= 4:
            yield a


def moments_suite(seed: int, samples: int = 10**6) -> SuiteResult:
    failures = []
    checked = 0
    for m in range(1, 5):
        alphas = list(_alphas(m))
        est = mc_sphere_all(alphas, m, samples=samples, seed=seed + m)
        for a in alphas:
            exact_poly = sphere_moment(a, m)
            checked += 1
            if any(x % 2 for x in a):
                if exact_poly:
                    failures.append(f"m={m} alpha={a}: odd moment is not exactly zero")
                continue
            exact = float(exact_poly.evaluate({OMEGA(m): omega_value(m)}).real)
            mc, _ = est[a]
            if abs(mc - exact) > 1e-2 * abs(exact):
                failures.append(f"m={m} alpha={a}: exact {exact:.6f} vs Monte-Carlo {mc:.6f}")
    return SuiteResult("moments", not failures, checked, failures[:5])


def partial_fraction_suite(seed: int, count: int = 100) -> SuiteResult:
    rng = random.Random(seed)
    failures = []
    for t in range(count):
        num, a, b = _random_rational(rng)
        if rng.random() < 0.3:
            num[a + b + rng.randint(0, 2)] = CoeffPoly.const(_random_gr(rng))
        f = XiRational.from_raw(num, a, b)
        z = GaussianRational(Fraction(rng.randint(-9, 9), 7), Fraction(rng.randint(6, 14), 5))
        top = CoeffPoly()
        for p, c in num.items():
            top = top + c * (z ** p)
        den = (z - GaussianRational(0, 1)) ** a * (z + GaussianRational(0, 1)) ** b
        direct = top * (GaussianRational(1) / den)
        if f.evaluate_exact(z) != direct:
            failures.append(f"#{t}: partial fractions disagree with direct evaluation at {z}")
            continue
        if f.proper_part().pi_plus() + f.proper_part().pi_minus() + XiRational(poly=f.poly) != f:
            failures.append(f"#{t}: principal parts do not reconstruct the rational")
    return SuiteResult("partial_fractions", not failures, count, failures[:5])


def composition_suite(seed: int) -> SuiteResult:
    model = calculus.model_n3()
    res = calculus.composition_identity(model)
    failures = []
    if not calculus.is_zero(model, res[0] - calculus.Mat.eye()):
        failures.append("degree 0 part of the composition is not the identity")
    for deg in (-1, -2):
        if not calculus.is_zero(model, res[deg]):
            failures.append(f"degree {deg} part of the composition is not zero")
    return SuiteResult("composition", not failures, 3, failures)


SUITES = ("trace", "contour", "moments", "partial_fractions", "composition")


def run_all(seed: int = DEFAULT_SEED, corrupt_pairing: bool = False) -> list[SuiteResult]:
    return [
        trace_suite(seed, corrupt_pairing=corrupt_pairing),
        contour_suite(seed),
        moments_suite(seed),
        partial_fraction_suite(seed),
        composition_suite(seed),
    ]
